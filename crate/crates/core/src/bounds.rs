//! Lower and upper estimates for the first eigenvalue of `D^{tη}`, evaluated
//! from constant geometric data, and their comparison with exact spectra.
//!
//! Estimates come in three forms: bounds on `λ²`, bounds on `|λ|`, and
//! upper bounds on `λ²` from a test spinor. [`BoundForm`] records which one
//! a value refers to so comparisons never mix units.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::Spectrum;
use crate::torus::{self, SpinCData};

/// Volume of the unit 3-sphere, `2π²`.
pub fn omega3<T: Real>() -> T {
    T::lit(2.0) * T::PI() * T::PI()
}

/// Yamabe invariant of the round 3-sphere, `6 ω₃^{2/3}`.
pub fn yamabe_s3<T: Real>() -> T {
    T::lit(6.0) * omega3::<T>().powf(T::lit(2.0 / 3.0))
}

/// Tolerance for equality and violation flags.
pub const COMPARE_TOLERANCE: f64 = 1e-9;

/// Homogeneous geometric input. Norms of `η` refer to the potential as
/// given; use [`GeometricData::scaled`] for `tη`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricData<T: Real> {
    pub n: usize,
    pub scalar_curvature: T,
    /// Pointwise norm `|dη|` of the curvature two-form.
    pub d_eta_norm: T,
    pub yamabe: T,
    pub vol: T,
    pub eta_ln: T,
    pub eta_linf: T,
    /// Euler characteristic (surfaces only).
    pub chi: i64,
    pub area: T,
    pub int_d_eta: T,
    pub nodal_count: i64,
    /// O'Neill constant `b` of a three-dimensional flow.
    pub oneill_b: T,
    /// `|Ω|` of a flow in dimension above three.
    pub omega_norm: T,
}

impl<T: Real> GeometricData<T> {
    fn validate(self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::ZeroDimension);
        }
        for (name, x) in [("vol", self.vol), ("area", self.area)] {
            if !(x > T::zero()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {x}"
                )));
            }
        }
        for (name, x) in [
            ("|dη|", self.d_eta_norm),
            ("‖η‖_Ln", self.eta_ln),
            ("‖η‖_∞", self.eta_linf),
            ("∫|dη|", self.int_d_eta),
            ("|Ω|", self.omega_norm),
        ] {
            if x < T::zero() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be nonnegative, got {x}"
                )));
            }
        }
        if self.nodal_count < 0 {
            return Err(Error::InvalidParameter(format!(
                "nodal count must be nonnegative, got {}",
                self.nodal_count
            )));
        }
        Ok(self)
    }

    /// Checks the invariants of a hand-built value.
    pub fn checked(self) -> Result<Self> {
        self.validate()
    }

    /// Round `S³` of curvature one with `η` the unit Reeb field: `S = 6`,
    /// `|dη| = 2`, `b = 1`.
    pub fn round_s3() -> Self {
        let vol = omega3::<T>();
        Self {
            n: 3,
            scalar_curvature: T::lit(6.0),
            d_eta_norm: T::lit(2.0),
            yamabe: yamabe_s3(),
            vol,
            eta_ln: vol.cbrt(),
            eta_linf: T::one(),
            chi: 0,
            area: vol,
            int_d_eta: T::lit(2.0) * vol,
            nodal_count: 0,
            oneill_b: T::one(),
            omega_norm: T::one(),
        }
    }

    /// Round unit `S²` without potential.
    pub fn round_s2() -> Self {
        let area = T::lit(4.0) * T::PI();
        Self {
            n: 2,
            scalar_curvature: T::lit(2.0),
            d_eta_norm: T::zero(),
            yamabe: T::lit(8.0) * T::PI(),
            vol: area,
            eta_ln: T::zero(),
            eta_linf: T::zero(),
            chi: 2,
            area,
            int_d_eta: T::zero(),
            nodal_count: 0,
            oneill_b: T::zero(),
            omega_norm: T::zero(),
        }
    }

    /// Flat torus with the magnetic potential `η = A/2` of `data`; plane-wave
    /// eigenspinors have no zeros, so the nodal count is zero.
    pub fn flat_torus(data: &SpinCData<T>) -> Self {
        let n = data.dim();
        let vol = data.lattice().covolume();
        let eta = data
            .potential()
            .iter()
            .fold(T::zero(), |s, x| s + *x * *x)
            .sqrt()
            * T::lit(0.5);
        Self {
            n,
            scalar_curvature: T::zero(),
            d_eta_norm: T::zero(),
            yamabe: T::zero(),
            vol,
            eta_ln: eta * vol.powf(T::one() / T::from_usize(n).unwrap()),
            eta_linf: eta,
            chi: 0,
            area: vol,
            int_d_eta: T::zero(),
            nodal_count: 0,
            oneill_b: T::zero(),
            omega_norm: T::zero(),
        }
    }

    /// Data for the potential `tη`: every `η`-norm is multiplied by `|t|`.
    pub fn scaled(&self, t: T) -> Self {
        let s = t.abs();
        Self {
            d_eta_norm: self.d_eta_norm * s,
            eta_ln: self.eta_ln * s,
            eta_linf: self.eta_linf * s,
            int_d_eta: self.int_d_eta * s,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Friedrich,
    Hijazi,
    Baer,
    Nodal,
    Basic,
    Diamagnetic,
}

impl BoundKind {
    pub fn form(self) -> BoundForm {
        match self {
            Self::Friedrich | Self::Nodal => BoundForm::SquaredLower,
            Self::Hijazi | Self::Baer | Self::Basic => BoundForm::AbsoluteLower,
            Self::Diamagnetic => BoundForm::SquaredUpper,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Friedrich => "friedrich",
            Self::Hijazi => "hijazi",
            Self::Baer => "baer",
            Self::Nodal => "nodal",
            Self::Basic => "basic",
            Self::Diamagnetic => "diamagnetic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "friedrich" => Self::Friedrich,
            "hijazi" => Self::Hijazi,
            "baer" | "bar" => Self::Baer,
            "nodal" => Self::Nodal,
            "basic" => Self::Basic,
            "diamagnetic" => Self::Diamagnetic,
            other => return Err(Error::InvalidParameter(format!("unknown bound '{other}'"))),
        })
    }
}

/// What a bound value constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundForm {
    /// `λ² >= value`.
    SquaredLower,
    /// `|λ| >= value`.
    AbsoluteLower,
    /// `λ² <= value`.
    SquaredUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bound<T: Real> {
    pub kind: BoundKind,
    pub value: T,
    /// True when the value carries no information (e.g. a lower bound `<= 0`).
    pub vacuous: bool,
}

impl<T: Real> Bound<T> {
    fn lower(kind: BoundKind, value: T) -> Self {
        Self {
            kind,
            value,
            vacuous: !(value > T::zero()),
        }
    }

    pub fn form(&self) -> BoundForm {
        self.kind.form()
    }
}

fn floor_half_sqrt<T: Real>(n: usize) -> T {
    T::from_usize(n / 2).unwrap().sqrt()
}

/// `n/(4(n-1)) · (S - 4|t| ⌊n/2⌋^{1/2} |dη|)`, a lower bound for `λ²`.
pub fn friedrich_bound<T: Real>(g: &GeometricData<T>, t: T) -> Result<Bound<T>> {
    if g.n < 2 {
        return Err(Error::InvalidParameter(format!(
            "Friedrich bound needs n >= 2, got {}",
            g.n
        )));
    }
    let nf = T::from_usize(g.n).unwrap();
    let bracket =
        g.scalar_curvature - T::lit(4.0) * t.abs() * floor_half_sqrt::<T>(g.n) * g.d_eta_norm;
    Ok(Bound::lower(
        BoundKind::Friedrich,
        nf / (T::lit(4.0) * (nf - T::one())) * bracket,
    ))
}

/// `(sqrt(nY/(4(n-1))) - ‖η‖_Ln) / vol^{1/n}`, a lower bound for `|λ|`.
pub fn hijazi_bound<T: Real>(g: &GeometricData<T>) -> Result<Bound<T>> {
    if g.n < 3 {
        return Err(Error::InvalidParameter(format!(
            "Hijazi bound needs n >= 3, got {}",
            g.n
        )));
    }
    if g.yamabe < T::zero() {
        return Err(Error::Hypothesis(format!(
            "Yamabe invariant must be nonnegative, got {}",
            g.yamabe
        )));
    }
    let nf = T::from_usize(g.n).unwrap();
    let head = (nf * g.yamabe / (T::lit(4.0) * (nf - T::one()))).sqrt();
    Ok(Bound::lower(
        BoundKind::Hijazi,
        (head - g.eta_ln) / g.vol.powf(T::one() / nf),
    ))
}

/// Largest Yamabe invariant compatible with [`hijazi_bound`] given an
/// eigenvalue `λ`: `4(n-1)/n · (|λ| vol^{1/n} + ‖η‖_Ln)²`.
pub fn hijazi_yamabe_ceiling<T: Real>(n: usize, lambda: T, vol: T, eta_ln: T) -> T {
    let nf = T::from_usize(n).unwrap();
    let s = lambda.abs() * vol.powf(T::one() / nf) + eta_ln;
    T::lit(4.0) * (nf - T::one()) / nf * s * s
}

/// `sqrt(2πχ/area) - ‖η‖_∞`, a lower bound for `|λ|` on a surface; vacuous
/// (value `0`) when `χ < 0`.
pub fn baer_bound<T: Real>(g: &GeometricData<T>) -> Result<Bound<T>> {
    if g.n != 2 {
        return Err(Error::InvalidParameter(format!(
            "Bär bound needs n = 2, got {}",
            g.n
        )));
    }
    if g.chi < 0 {
        return Ok(Bound {
            kind: BoundKind::Baer,
            value: T::zero(),
            vacuous: true,
        });
    }
    let head = (T::lit(2.0) * T::PI() * T::from_int(g.chi) / g.area).sqrt();
    Ok(Bound::lower(BoundKind::Baer, head - g.eta_linf))
}

/// `(2πχ - ∫|dη| + 4πN_k) / vol`, a lower bound for `λ_k²` on a surface.
pub fn nodal_bound<T: Real>(g: &GeometricData<T>) -> Result<Bound<T>> {
    if g.n != 2 {
        return Err(Error::InvalidParameter(format!(
            "nodal bound needs n = 2, got {}",
            g.n
        )));
    }
    if g.nodal_count < 0 {
        return Err(Error::InvalidParameter(format!(
            "nodal count must be nonnegative, got {}",
            g.nodal_count
        )));
    }
    let two_pi = T::lit(2.0) * T::PI();
    let v = (two_pi * T::from_int(g.chi) - g.int_d_eta
        + T::lit(2.0) * two_pi * T::from_int(g.nodal_count))
        / g.vol;
    Ok(Bound::lower(BoundKind::Nodal, v))
}

/// Number of zeros of a harmonic spinor on a surface of Euler
/// characteristic `χ`: `-χ/2`.
pub fn kernel_nodal(chi: i64) -> Result<i64> {
    if chi % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "Euler characteristic of a closed surface is even, got {chi}"
        )));
    }
    Ok(-chi / 2)
}

/// Lower bound for `|λ|` on basic spinors of a Riemannian flow.
///
/// `n = 3`: `b/2 + sqrt(t² + (S + 2b²)/2)`.
/// `n > 3`: `-⌊(n-1)/2⌋^{1/2} |Ω|/2 + sqrt(t² + (n-1)/(4(n-2)) (S + 2|Ω|²))`.
pub fn basic_bound<T: Real>(g: &GeometricData<T>, t: T) -> Result<Bound<T>> {
    if g.n <= 2 {
        return Err(Error::InvalidParameter(format!(
            "basic bound needs n >= 3, got {}",
            g.n
        )));
    }
    if g.scalar_curvature < T::zero() {
        return Err(Error::Hypothesis(format!(
            "scalar curvature must be nonnegative, got {}",
            g.scalar_curvature
        )));
    }
    let two = T::lit(2.0);
    let v = if g.n == 3 {
        let b = g.oneill_b;
        b / two + (t * t + (g.scalar_curvature + two * b * b) / two).sqrt()
    } else {
        let nf = T::from_usize(g.n).unwrap();
        let w = g.omega_norm;
        let sq = g.scalar_curvature + two * w * w;
        let lead = T::from_usize((g.n - 1) / 2).unwrap().sqrt() * w / two;
        -lead + (t * t + (nf - T::one()) / (T::lit(4.0) * (nf - two)) * sq).sqrt()
    };
    Ok(Bound::lower(BoundKind::Basic, v))
}

/// Which invariant subspace a quasi-Killing test spinor lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sector {
    /// Top sector: `Q` enters with a plus sign.
    Top,
    /// Bottom sector: `Q` enters with a minus sign.
    Bottom,
}

impl Sector {
    fn sign<T: Real>(self) -> T {
        match self {
            Self::Top => T::one(),
            Self::Bottom => -T::one(),
        }
    }
}

/// `λ² - tQ/‖ψ‖² + t²‖η‖_∞²`, an upper bound for `(λ₁^{tη})²`.
pub fn diamagnetic_upper<T: Real>(
    lambda: T,
    q: T,
    psi_norm_sq: T,
    eta_linf: T,
    t: T,
) -> Result<Bound<T>> {
    if !(psi_norm_sq > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "‖ψ‖² must be positive, got {psi_norm_sq}"
        )));
    }
    let value = lambda * lambda - t * q / psi_norm_sq + t * t * eta_linf * eta_linf;
    Ok(Bound {
        kind: BoundKind::Diamagnetic,
        value,
        vacuous: false,
    })
}

/// `Q = ±(2m + 1 - 2b) ‖ψ‖²` for a quasi-Killing spinor on a Sasaki-type
/// manifold of dimension `2m + 1`.
pub fn sasaki_q<T: Real>(m: usize, b: T, psi_norm_sq: T, sector: Sector) -> T {
    sector.sign::<T>() * (T::from_usize(2 * m + 1).unwrap() - T::lit(2.0) * b) * psi_norm_sq
}

/// `Q = ±(3/2 + S/4) ‖ψ‖²` for the three-dimensional Berger-type test spinor.
pub fn berger_q<T: Real>(scalar_curvature: T, psi_norm_sq: T, sector: Sector) -> T {
    sector.sign::<T>() * (T::lit(1.5) + scalar_curvature / T::lit(4.0)) * psi_norm_sq
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport<T: Real> {
    pub kind: BoundKind,
    pub form: BoundForm,
    pub bound: T,
    /// The eigenvalue the bound is compared with (`|λ|`).
    pub lambda1: T,
    /// `λ² - bound`, `|λ| - bound` or `bound - λ²` according to the form;
    /// nonnegative when the estimate holds.
    pub gap: T,
    pub equality: bool,
    pub violation: bool,
    pub vacuous: bool,
}

/// Compares a bound with an eigenvalue in the bound's own form.
pub fn compare<T: Real>(bound: &Bound<T>, lambda1: T) -> BoundReport<T> {
    let l = lambda1.abs();
    let gap = match bound.form() {
        BoundForm::SquaredLower => l * l - bound.value,
        BoundForm::AbsoluteLower => l - bound.value,
        BoundForm::SquaredUpper => bound.value - l * l,
    };
    let tol = T::lit(COMPARE_TOLERANCE);
    BoundReport {
        kind: bound.kind,
        form: bound.form(),
        bound: bound.value,
        lambda1: l,
        gap,
        equality: gap.abs() <= tol,
        violation: gap < -tol,
        vacuous: bound.vacuous,
    }
}

/// [`compare`] against the smallest `|λ|` of a spectrum.
pub fn compare_spectrum<T: Real, L: Clone>(
    bound: &Bound<T>,
    spectrum: &Spectrum<T, L>,
) -> Result<BoundReport<T>> {
    let e = spectrum
        .smallest_abs()
        .ok_or_else(|| Error::InvalidParameter("cannot compare with an empty spectrum".into()))?;
    Ok(compare(bound, e.value))
}

/// Smallest eigenvalue of a basic spinor on the round `S³`: `1/2 + sqrt(t² + 4)`.
pub fn s3_basic_eigenvalue<T: Real>(t: T) -> T {
    T::lit(0.5) + crate::sphere::f0(1, 0, t).sqrt()
}

/// Every applicable estimate on the round `S³` at `tη`, compared with the
/// exact spectrum. The basic bound is compared with the smallest basic
/// eigenvalue, the diamagnetic upper bound uses the Killing spinor
/// (`λ = 3/2`, `m = 1`, `b = 0`, top sector).
pub fn sphere_reports<T: Real>(
    t: T,
    which: &[BoundKind],
) -> Vec<(BoundKind, Result<BoundReport<T>>)> {
    let g = GeometricData::<T>::round_s3();
    let gt = g.scaled(t);
    let lambda1 = crate::sphere::lambda1(t);
    which
        .iter()
        .map(|&kind| {
            let r = match kind {
                BoundKind::Friedrich => friedrich_bound(&g, t).map(|b| compare(&b, lambda1)),
                BoundKind::Hijazi => hijazi_bound(&gt).map(|b| compare(&b, lambda1)),
                BoundKind::Basic => basic_bound(&g, t).map(|b| compare(&b, s3_basic_eigenvalue(t))),
                BoundKind::Diamagnetic => {
                    let q = sasaki_q(1, T::zero(), T::one(), Sector::Top);
                    diamagnetic_upper(T::lit(1.5), q, T::one(), g.eta_linf, t)
                        .map(|b| compare(&b, lambda1))
                }
                BoundKind::Baer | BoundKind::Nodal => Err(Error::InvalidParameter(format!(
                    "{} bound applies to surfaces only",
                    kind.name()
                ))),
            };
            (kind, r)
        })
        .collect()
}

/// Smallest `|λ|` of a torus spectrum.
pub fn torus_lambda1<T: Real>(data: &SpinCData<T>) -> Result<T> {
    let tol = T::lit(crate::spectrum::DEFAULT_MERGE_TOLERANCE);
    let mut cutoff = T::lit(8.0);
    loop {
        let s = torus::spectrum(data, cutoff, tol)?;
        if let Some(e) = s.smallest_abs() {
            return Ok(e.value.abs());
        }
        cutoff *= T::lit(2.0);
    }
}

/// Every applicable lower bound on a flat torus, compared with the exact
/// first eigenvalue. Bounds whose hypotheses exclude the torus report why.
pub fn torus_reports<T: Real>(
    data: &SpinCData<T>,
    which: &[BoundKind],
) -> Result<Vec<(BoundKind, Result<BoundReport<T>>)>> {
    let g = GeometricData::flat_torus(data);
    let lambda1 = torus_lambda1(data)?;
    Ok(which
        .iter()
        .map(|&kind| {
            let r = match kind {
                BoundKind::Friedrich => friedrich_bound(&g, T::one()).map(|b| compare(&b, lambda1)),
                BoundKind::Hijazi => hijazi_bound(&g).map(|b| compare(&b, lambda1)),
                BoundKind::Baer => baer_bound(&g).map(|b| compare(&b, lambda1)),
                BoundKind::Nodal => nodal_bound(&g).map(|b| compare(&b, lambda1)),
                BoundKind::Basic => Err(Error::InvalidParameter(
                    "basic bound needs a Riemannian flow".into(),
                )),
                BoundKind::Diamagnetic => Err(Error::InvalidParameter(
                    "diamagnetic bound needs a quasi-Killing test spinor".into(),
                )),
            };
            (kind, r)
        })
        .collect())
}
