//! Closed-form spectrum of the magnetic Dirac operator `D^{tη}` on the round
//! 3-sphere of curvature one, with `η` the Reeb (Hopf) field.
//!
//! Three families of eigenvalues, each member of multiplicity `k + 1`:
//!
//! * `PLUS`:   `3/2 + t + k`, `k ≥ 0`
//! * `MINUS`:  `3/2 - t + k`, `k ≥ 0`
//! * `BRANCH`: `1/2 ± sqrt(f0(k, p, t))`, `0 ≤ p < k`
//!
//! with `f0(k, p, t) = (1 + t + 2p - k)^2 + 4 (k - p)(p + 1)`.

use std::fmt;

use serde::Serialize;

use crate::scalar::{Field, Real};
use crate::spectrum::{Contribution, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Plus,
    Minus,
    Branch,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Plus => "PLUS",
            Family::Minus => "MINUS",
            Family::Branch => "BRANCH",
        })
    }
}

/// Quantum numbers of one family member. `p` and `sign` are only
/// meaningful for [`Family::Branch`]; they are `0` and `+1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SphereLabel {
    pub family: Family,
    pub k: i64,
    pub p: i64,
    pub sign: i8,
}

impl SphereLabel {
    pub fn plus(k: i64) -> Self {
        Self {
            family: Family::Plus,
            k,
            p: 0,
            sign: 1,
        }
    }

    pub fn minus(k: i64) -> Self {
        Self {
            family: Family::Minus,
            k,
            p: 0,
            sign: 1,
        }
    }

    pub fn branch(k: i64, p: i64, sign: i8) -> Self {
        Self {
            family: Family::Branch,
            k,
            p,
            sign,
        }
    }

    /// Raw multiplicity `k + 1` of the member.
    pub fn multiplicity(&self) -> usize {
        (self.k + 1) as usize
    }

    pub fn value<T: Real>(&self, t: T) -> T {
        let k = T::from_int(self.k);
        let three_halves = T::lit(1.5);
        match self.family {
            Family::Plus => three_halves + t + k,
            Family::Minus => three_halves - t + k,
            Family::Branch => {
                let r = f0(self.k, self.p, t).sqrt();
                T::lit(0.5) + if self.sign >= 0 { r } else { -r }
            }
        }
    }
}

impl fmt::Display for SphereLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Branch => write!(
                f,
                "BRANCH(k={},p={},{})",
                self.k,
                self.p,
                if self.sign >= 0 { '+' } else { '-' }
            ),
            fam => write!(f, "{fam}(k={})", self.k),
        }
    }
}

/// A single family member with its value at a fixed `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereEigenvalue<T: Real> {
    pub label: SphereLabel,
    pub value: T,
    pub multiplicity: usize,
}

pub type SphereSpectrum<T> = Spectrum<T, SphereLabel>;

/// `f0(k, p, t) = (1 + t + 2p - k)^2 + 4 (k - p)(p + 1)`.
///
/// Works over any field, so exact rationals give exact values.
/// `f0(k, k, t) = (1 + t + k)^2` and `f0(k, -1, t) = (1 - t + k)^2`.
pub fn f0<T: Field>(k: i64, p: i64, t: T) -> T {
    let a = T::int(1 + 2 * p - k) + t;
    a.clone() * a + T::int(4 * (k - p) * (p + 1))
}

/// Every family member with `|value| <= cutoff`.
///
/// The `k` range is exhaustive: `PLUS`/`MINUS` need `k <= cutoff + |t|`, and
/// `BRANCH` members satisfy `f0 >= 4k`, so `|1/2 ± sqrt(f0)| <= cutoff`
/// forces `k <= (cutoff + 1/2)^2 / 4`. Within that range each `(k, p)` is
/// tested individually.
pub fn members<T: Real>(t: T, cutoff: T) -> Vec<SphereEigenvalue<T>> {
    let mut out = Vec::new();
    let linear_max = (cutoff + t.abs()).ceil().to_i64().unwrap_or(0).max(0);
    for k in 0..=linear_max {
        for label in [SphereLabel::plus(k), SphereLabel::minus(k)] {
            let v = label.value(t);
            if v.abs() <= cutoff {
                out.push(SphereEigenvalue {
                    label,
                    value: v,
                    multiplicity: label.multiplicity(),
                });
            }
        }
    }
    let half = T::lit(0.5);
    let branch_max = ((cutoff + half) * (cutoff + half) / T::lit(4.0))
        .floor()
        .to_i64()
        .unwrap_or(0);
    let f_limit = (cutoff + half) * (cutoff + half);
    for k in 1..=branch_max.max(0) {
        for p in 0..k {
            let f = f0(k, p, t);
            if f > f_limit {
                continue;
            }
            let r = f.sqrt();
            for (sign, v) in [(1i8, half + r), (-1i8, half - r)] {
                if v.abs() <= cutoff {
                    let label = SphereLabel::branch(k, p, sign);
                    out.push(SphereEigenvalue {
                        label,
                        value: v,
                        multiplicity: label.multiplicity(),
                    });
                }
            }
        }
    }
    out
}

/// Merged spectrum of `D^{tη}` on `|λ| <= cutoff`.
///
/// Multiplicities are the merged sums of the per-member `k + 1`; they are
/// exact at generic `t` and lower bounds at isolated collision values.
pub fn spectrum<T: Real>(t: T, cutoff: T, merge_tolerance: T) -> SphereSpectrum<T> {
    let raw = members(t, cutoff)
        .into_iter()
        .map(|m| Contribution {
            value: m.value,
            multiplicity: m.multiplicity,
            label: m.label,
        })
        .collect();
    Spectrum::from_contributions(raw, cutoff, merge_tolerance)
}

/// Smallest `|λ|` of `D^{tη}`.
pub fn lambda1<T: Real>(t: T) -> T {
    lambda1_with_label(t).0
}

/// Smallest `|λ|` together with one member realising it.
pub fn lambda1_with_label<T: Real>(t: T) -> (T, SphereLabel) {
    let cutoff = T::lit(5.0) + t.abs();
    members(t, cutoff)
        .into_iter()
        .map(|m| (m.value.abs(), m.label))
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)))
        .expect("spectrum window is never empty")
}

/// The unique `t` at which the `BRANCH` curves of `(k, p)` and `(k', p')`
/// have equal `f0`, if it exists.
///
/// Returns `None` for identical pairs and when `p - p' = (k - k')/2`, where
/// `f0(k,p,·) - f0(k',p',·)` is a nonzero constant.
pub fn collision_t<T: Field>(k: i64, p: i64, k2: i64, p2: i64) -> Option<T> {
    if (k, p) == (k2, p2) {
        return None;
    }
    // Denominator doubled to stay in integers: 2(p - p') - (k - k').
    let den2 = 2 * (p - p2) - (k - k2);
    if den2 == 0 {
        return None;
    }
    let num = (k2 - p2) * (p2 + 1) - (k - p) * (p + 1);
    let frac = T::int(2 * num) / T::int(den2);
    let shift = T::int(k + k2) / T::int(2) - T::int(p + p2 + 1);
    Some(frac + shift)
}

/// One sampled point of an eigenvalue curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample<T: Real> {
    pub t: T,
    pub label: SphereLabel,
    pub value: T,
}

/// Samples every family member with `k <= k_max` on `steps` equispaced
/// values of `t` in `[t_min, t_max]`.
pub fn curve_samples<T: Real>(
    t_min: T,
    t_max: T,
    steps: usize,
    k_max: i64,
) -> crate::Result<Vec<CurveSample<T>>> {
    if !(t_min < t_max) {
        return Err(crate::Error::InvalidParameter(format!(
            "t range must be increasing, got {t_min}..{t_max}"
        )));
    }
    if steps < 2 {
        return Err(crate::Error::InvalidParameter(
            "curve needs at least 2 steps".into(),
        ));
    }
    let mut labels = Vec::new();
    for k in 0..=k_max.max(0) {
        labels.push(SphereLabel::plus(k));
        labels.push(SphereLabel::minus(k));
        for p in 0..k {
            labels.push(SphereLabel::branch(k, p, 1));
            labels.push(SphereLabel::branch(k, p, -1));
        }
    }
    let denom = T::from_usize(steps - 1).unwrap();
    let mut out = Vec::with_capacity(labels.len() * steps);
    for i in 0..steps {
        let t = t_min + (t_max - t_min) * T::from_usize(i).unwrap() / denom;
        for label in &labels {
            out.push(CurveSample {
                t,
                label: *label,
                value: label.value(t),
            });
        }
    }
    Ok(out)
}
