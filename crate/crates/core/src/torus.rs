//! Closed-form spectrum of the spin-c Dirac operator on a flat torus
//! `T^n = R^n / Γ` with parallel potential `A`.
//!
//! A spinor mode is indexed by a dual-lattice point `γ* ∈ Γ*`. Its shifted
//! frequency is
//!
//! ```text
//! θ'_{γ*} = γ* + ½ Σ_j (δ_j + θ_j) γ_j* + A/(4π)
//! ```
//!
//! and the mode contributes `±2π|θ'|`, each with multiplicity `N/2`
//! (`N = 2^⌊n/2⌋`), or `0` with multiplicity `N` when `θ' = 0`. In dimension
//! one the mode contributes the single signed value `2πθ'`.

use log::warn;
use serde::Serialize;

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::scalar::Real;
use crate::spectrum::{Contribution, Spectrum};

/// Tolerance on `|θ'|` below which a mode is treated as a zero mode.
pub const ZERO_MODE_TOLERANCE: f64 = 1e-10;

/// Spin structure signs, spin-c twists, and a parallel potential on a torus.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinCData<T: Real> {
    lattice: Lattice<T>,
    delta: Vec<u8>,
    theta: Vec<T>,
    a: Vec<T>,
}

impl<T: Real> SpinCData<T> {
    /// `delta` entries must be 0 or 1. `theta` entries outside `[0, 1)` are
    /// reduced mod 1 with a warning. `a` is the potential in standard
    /// covector components.
    pub fn new(lattice: Lattice<T>, delta: Vec<u8>, theta: Vec<T>, a: Vec<T>) -> Result<Self> {
        let n = lattice.dim();
        for (len, _what) in [
            (delta.len(), "delta"),
            (theta.len(), "theta"),
            (a.len(), "A"),
        ] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: len,
                });
            }
        }
        if let Some(bad) = delta.iter().find(|&&d| d > 1) {
            return Err(Error::InvalidParameter(format!(
                "delta entries must be 0 or 1, got {bad}"
            )));
        }
        let theta = theta
            .into_iter()
            .map(|x| {
                let r = x - x.floor();
                // `x - floor(x)` can round up to exactly 1 for tiny negative x.
                let r = if r >= T::one() { T::zero() } else { r };
                if r != x {
                    warn!("theta component {x} reduced mod 1 to {r}");
                }
                r
            })
            .collect();
        Ok(Self {
            lattice,
            delta,
            theta,
            a,
        })
    }

    /// Trivial spin structure, no twist, no potential.
    pub fn trivial(lattice: Lattice<T>) -> Self {
        let n = lattice.dim();
        Self {
            lattice,
            delta: vec![0; n],
            theta: vec![T::zero(); n],
            a: vec![T::zero(); n],
        }
    }

    pub fn lattice(&self) -> &Lattice<T> {
        &self.lattice
    }

    pub fn delta(&self) -> &[u8] {
        &self.delta
    }

    pub fn theta(&self) -> &[T] {
        &self.theta
    }

    pub fn potential(&self) -> &[T] {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Same structure with a different parallel potential.
    pub fn with_potential(&self, a: Vec<T>) -> Result<Self> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: a.len(),
            });
        }
        Ok(Self { a, ..self.clone() })
    }

    /// `½ Σ_j (δ_j + θ_j) γ_j*`.
    pub fn structure_shift(&self) -> Vec<T> {
        let half = T::lit(0.5);
        let coeffs: Vec<T> = self
            .delta
            .iter()
            .zip(&self.theta)
            .map(|(&d, &th)| half * (T::from_int(d as i64) + th))
            .collect();
        self.lattice.dual().apply(&coeffs)
    }

    /// `½ Σ_j (δ_j + θ_j) γ_j* + A/(4π)`, the ball centre offset used for
    /// enumeration.
    pub fn total_shift(&self) -> Vec<T> {
        let four_pi = T::lit(4.0) * T::PI();
        self.structure_shift()
            .into_iter()
            .zip(&self.a)
            .map(|(s, a)| s + *a / four_pi)
            .collect()
    }

    /// `θ_{γ*}` and `θ'_{γ*}` for the dual point with coordinates `m`.
    pub fn shift_covector(&self, m: &[i64]) -> ShiftCovector<T> {
        let base = self.lattice.dual_point(m);
        let s = self.structure_shift();
        let theta_gamma: Vec<T> = base.iter().zip(&s).map(|(b, s)| *b + *s).collect();
        let four_pi = T::lit(4.0) * T::PI();
        let theta_prime = theta_gamma
            .iter()
            .zip(&self.a)
            .map(|(x, a)| *x + *a / four_pi)
            .collect();
        ShiftCovector {
            theta_gamma,
            theta_prime,
        }
    }

    /// Converts fluxes `∮_{γ_j} A` into standard covector components.
    pub fn potential_from_fluxes(lattice: &Lattice<T>, fluxes: &[T]) -> Result<Vec<T>> {
        if fluxes.len() != lattice.dim() {
            return Err(Error::DimensionMismatch {
                expected: lattice.dim(),
                got: fluxes.len(),
            });
        }
        // A(γ_j) = flux_j  ⇒  A = Σ_j flux_j γ_j*.
        Ok(lattice.dual().apply(fluxes))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftCovector<T: Real> {
    pub theta_gamma: Vec<T>,
    pub theta_prime: Vec<T>,
}

fn norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, x| a + *x * *x).sqrt()
}

/// Mode label: dual-lattice coordinates plus the sign of the branch
/// (`0` for a zero mode, and for the signed one-dimensional value).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorusLabel {
    pub mode: Vec<i64>,
    pub sign: i8,
}

pub type TorusSpectrum<T> = Spectrum<T, TorusLabel>;

/// Eigenvalue of the `1×1` mode matrix `2iπ θ' g_1` in dimension one.
fn signed_value_1d<T: Real>(theta_prime: T) -> T {
    // With g_1 = -i the mode matrix is 2π θ'; read the sign off the rep so
    // the convention follows the generator choice.
    let rep = CliffordRep::<T>::new(1).expect("n = 1 is valid");
    let i_g1 = -rep.generator(0)[(0, 0)].im;
    T::lit(2.0) * T::PI() * theta_prime * i_g1
}

/// Merged spectrum on `|λ| <= cutoff`.
pub fn spectrum<T: Real>(
    data: &SpinCData<T>,
    cutoff: T,
    merge_tolerance: T,
) -> Result<TorusSpectrum<T>> {
    if !(cutoff > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "cutoff must be positive, got {cutoff}"
        )));
    }
    let n = data.dim();
    let nn = 1usize << (n / 2);
    let two_pi = T::lit(2.0) * T::PI();
    let shift = data.total_shift();
    let modes = data.lattice().enumerate_shifted(&shift, cutoff / two_pi)?;
    let zero_tol = T::lit(ZERO_MODE_TOLERANCE);
    let mut raw = Vec::with_capacity(modes.len() * 2);
    for m in modes {
        let sc = data.shift_covector(&m);
        let r = norm(&sc.theta_prime);
        if r <= zero_tol {
            raw.push(Contribution {
                value: T::zero(),
                multiplicity: nn,
                label: TorusLabel { mode: m, sign: 0 },
            });
        } else if n == 1 {
            let v = signed_value_1d(sc.theta_prime[0]);
            let sign = if v > T::zero() { 1 } else { -1 };
            raw.push(Contribution {
                value: v,
                multiplicity: 1,
                label: TorusLabel { mode: m, sign },
            });
        } else {
            let v = two_pi * r;
            raw.push(Contribution {
                value: v,
                multiplicity: nn / 2,
                label: TorusLabel {
                    mode: m.clone(),
                    sign: 1,
                },
            });
            raw.push(Contribution {
                value: -v,
                multiplicity: nn / 2,
                label: TorusLabel { mode: m, sign: -1 },
            });
        }
    }
    Ok(Spectrum::from_contributions(raw, cutoff, merge_tolerance))
}

/// The dual point `γ*` with `θ'_{γ*} = 0`, if any.
pub fn zero_mode<T: Real>(data: &SpinCData<T>) -> Option<Vec<i64>> {
    let shift = data.total_shift();
    // θ' = D m + shift = 0  ⇔  m = -Bᵀ shift.
    let coords = data.lattice().dual_coordinates(&shift);
    let m: Vec<i64> = coords
        .iter()
        .map(|x| (-*x).round().to_i64().unwrap_or(i64::MAX))
        .collect();
    if m.contains(&i64::MAX) {
        return None;
    }
    let r = norm(&data.shift_covector(&m).theta_prime);
    (r <= T::lit(ZERO_MODE_TOLERANCE)).then_some(m)
}

/// Parallel potential `A = -4π θ_{γ*}` that makes `γ*` a zero mode.
pub fn zero_mode_potential<T: Real>(data: &SpinCData<T>, m: &[i64]) -> Vec<T> {
    let four_pi = T::lit(4.0) * T::PI();
    data.shift_covector(m)
        .theta_gamma
        .into_iter()
        .map(|x| -four_pi * x)
        .collect()
}

/// Outcome of a `λ ↦ -λ` symmetry test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport<T: Real> {
    pub symmetric: bool,
    /// Values whose mirror is absent or carries a different multiplicity.
    pub witnesses: Vec<(T, usize, usize)>,
}

/// Checks invariance of the spectrum on `|λ| <= cutoff` under `λ ↦ -λ`.
pub fn symmetry_check<T: Real>(data: &SpinCData<T>, cutoff: T) -> Result<SymmetryReport<T>> {
    let tol = T::lit(crate::spectrum::DEFAULT_MERGE_TOLERANCE);
    let s = spectrum(data, cutoff, tol)?;
    // Values right at the cutoff may have a mirror that fell outside it by
    // rounding; only compare strictly inside.
    let inner = cutoff - T::lit(1e-7) * (T::one() + cutoff);
    let mut witnesses = Vec::new();
    for e in s.entries.iter().filter(|e| e.value.abs() <= inner) {
        let mirror = s.multiplicity_at(-e.value);
        if mirror != e.multiplicity {
            witnesses.push((e.value, e.multiplicity, mirror));
        }
    }
    Ok(SymmetryReport {
        symmetric: witnesses.is_empty(),
        witnesses,
    })
}

/// `γ*₀ + ½ Σ_j δ_j γ_j*` for the dual point minimising `|θ_{γ*}|` when the
/// twist vanishes, i.e. the lowest Dirac mode without potential.
pub fn lowest_mode<T: Real>(data: &SpinCData<T>) -> Result<(Vec<i64>, Vec<T>)> {
    let shift = data.structure_shift();
    let mut radius = T::lit(0.5);
    loop {
        let pts = data.lattice().enumerate_shifted(&shift, radius)?;
        if let Some(best) = pts
            .into_iter()
            .map(|m| {
                let tg = data.shift_covector(&m).theta_gamma;
                (norm(&tg), m, tg)
            })
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)))
        {
            return Ok((best.1, best.2));
        }
        radius *= T::lit(2.0);
    }
}

/// Parallel potential `A = 2s (γ*₀ + ½ Σ δ_j γ_j*)` along the lowest mode.
pub fn diamagnetic_potential<T: Real>(data: &SpinCData<T>, s: T) -> Result<Vec<T>> {
    let (_, dir) = lowest_mode(data)?;
    Ok(dir.into_iter().map(|x| T::lit(2.0) * s * x).collect())
}

/// `2π|θ'_{γ*}|` for one fixed mode, following it as the potential varies.
pub fn mode_value<T: Real>(data: &SpinCData<T>, m: &[i64]) -> T {
    T::lit(2.0) * T::PI() * norm(&data.shift_covector(m).theta_prime)
}
