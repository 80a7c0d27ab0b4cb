//! Batch verification suites comparing matrix oracles with closed forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::scalar::{Real, C};
use crate::spectrum::DEFAULT_MERGE_TOLERANCE;
use crate::sphere::{self, f0, SphereLabel};
use crate::torus::{self, SpinCData};

use super::{
    hermitian_eigs, sphere_block, torus_fourier_operator, torus_mode_matrix, FourierPotential,
};

/// Default pass threshold for the block and mode suites.
pub const EXACT_TOLERANCE: f64 = 1e-12;

/// Default pass threshold for the gauge suite.
pub const GAUGE_TOLERANCE: f64 = 1e-6;

const MAX_REPORTED_FAILURES: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Quantum numbers of the worst check.
    pub worst: Option<String>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    fn new(suite: &str, tolerance: f64) -> Self {
        Self {
            suite: suite.into(),
            checks: 0,
            max_residual: 0.0,
            tolerance,
            pass: true,
            worst: None,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, residual: f64, what: impl FnOnce() -> String) {
        self.checks += 1;
        let bad = !(residual <= self.tolerance);
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
            self.worst = Some(what());
            if bad && self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(format!(
                    "{} (residual {residual:e})",
                    self.worst.as_ref().unwrap()
                ));
            }
        } else if bad && self.failures.len() < MAX_REPORTED_FAILURES {
            self.failures
                .push(format!("{} (residual {residual:e})", what()));
        }
        self.pass &= !bad;
    }

    fn fail(&mut self, what: String) {
        self.checks += 1;
        self.pass = false;
        if self.failures.len() < MAX_REPORTED_FAILURES {
            self.failures.push(what);
        }
    }
}

/// Diagonalises every block `0 <= p < k <= k_max` at every `t` and compares
/// with `±sqrt(f0)`, then checks the resulting `D`-eigenvalues against the
/// labelled closed-form spectrum. `PLUS`/`MINUS` members are `1×1` blocks
/// checked as scalar identities.
pub fn verify_sphere_blocks<T: Real>(k_max: i64, t_grid: &[T]) -> Result<VerifyReport> {
    if k_max < 1 {
        return Err(Error::InvalidParameter(format!(
            "k_max must be at least 1, got {k_max}"
        )));
    }
    let mut report = VerifyReport::new("sphere-blocks", EXACT_TOLERANCE);
    let half = T::lit(0.5);
    let tol = T::lit(DEFAULT_MERGE_TOLERANCE);
    for &t in t_grid {
        let top = T::lit(2.0) * (T::from_int(k_max + 1) + t.abs()) + T::one();
        let spectrum = sphere::spectrum(t, top, tol);
        let listed = |value: T, label: SphereLabel| {
            spectrum
                .find(value)
                .is_some_and(|e| e.contributors.contains(&label))
        };
        for k in 0..=k_max {
            let kf = T::from_int(k);
            for (label, block_value) in [
                (SphereLabel::plus(k), T::one() + t + kf),
                (SphereLabel::minus(k), T::one() - t + kf),
            ] {
                let d = half + block_value;
                let r = ((d - label.value(t)).abs() / (T::one() + d.abs())).to_f64_lossy();
                report.record(r, || format!("{label} t={t}"));
                if !listed(d, label) {
                    report.fail(format!("{label} t={t}: value {d} missing from spectrum"));
                }
            }
            for p in 0..k {
                let ev = hermitian_eigs(&sphere_block(k, p, t)?)?;
                let root = f0(k, p, t).sqrt();
                let scale = T::one().max(root);
                for (sign, x) in [(-1i8, ev[0]), (1i8, ev[1])] {
                    let want = if sign > 0 { root } else { -root };
                    let label = SphereLabel::branch(k, p, sign);
                    let r = ((x - want).abs() / scale).to_f64_lossy();
                    report.record(r, || format!("{label} t={t}"));
                    let d = half + x;
                    if !listed(d, label)
                        || (d - label.value(t)).abs()
                            > T::lit(EXACT_TOLERANCE) * (T::one() + d.abs())
                    {
                        report.fail(format!(
                            "{label} t={t}: D-eigenvalue {d} does not match the labelled spectrum"
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Compares `torus_mode_matrix` eigenvalues with `±2π|θ'|` (signed `2πθ'`
/// when `n = 1`) for random `θ'` with entries in `[-3, 3]`.
pub fn verify_torus_modes<T: Real>(n: usize, samples: usize, seed: u64) -> Result<VerifyReport> {
    let rep = CliffordRep::<T>::new(n)?;
    let nn = rep.spinor_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::new("torus-modes", EXACT_TOLERANCE);
    let two_pi = T::lit(2.0) * T::PI();
    for _ in 0..samples {
        let theta: Vec<T> = (0..n).map(|_| T::lit(rng.gen_range(-3.0..3.0))).collect();
        let ev = hermitian_eigs(&torus_mode_matrix(&rep, &theta)?)?;
        let r = theta.iter().fold(T::zero(), |s, x| s + *x * *x).sqrt();
        let want: Vec<T> = if n == 1 {
            vec![two_pi * theta[0]]
        } else {
            let mut w = vec![-two_pi * r; nn / 2];
            w.extend(std::iter::repeat_n(two_pi * r, nn / 2));
            w
        };
        let scale = T::one() + two_pi * r;
        let res = ev
            .iter()
            .zip(&want)
            .fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()))
            / scale;
        report.record(res.to_f64_lossy(), || format!("n={n} theta'={theta:?}"));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeReport {
    pub checks: usize,
    /// Residual at the largest cutoff.
    pub max_residual: f64,
    pub tolerance: f64,
    /// `(cutoff, residual)` in the order requested.
    pub residuals: Vec<(i64, f64)>,
    pub monotone: bool,
    pub pass: bool,
}

/// `count` smallest `|λ|` of the closed-form spectrum, ascending.
fn closed_form_smallest<T: Real>(data: &SpinCData<T>, count: usize) -> Result<Vec<T>> {
    let tol = T::lit(DEFAULT_MERGE_TOLERANCE);
    let mut cutoff = T::lit(8.0);
    loop {
        let s = torus::spectrum(data, cutoff, tol)?;
        let mut v: Vec<T> = s.expanded().into_iter().map(|x| x.abs()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Only trust values well inside the window.
        if v.len() > count && v[count] < cutoff * T::lit(0.9) {
            v.truncate(count);
            return Ok(v);
        }
        cutoff *= T::lit(2.0);
    }
}

fn oracle_smallest<T: Real>(
    data: &SpinCData<T>,
    potential: &FourierPotential<T>,
    cutoff: i64,
    count: usize,
) -> Result<Vec<T>> {
    let (_, m) = torus_fourier_operator(data, potential, cutoff)?;
    let mut v: Vec<T> = hermitian_eigs(&m)?.into_iter().map(|x| x.abs()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.truncate(count);
    Ok(v)
}

/// Residual of the `count` smallest `|λ|` of the truncated `D^{h + df}`
/// against the closed-form spectrum of `D^h`, where `h` is the parallel
/// potential in `data` and `df` is built from `f_terms` (each with its
/// conjugate partner added).
pub fn gauge_residual<T: Real>(
    data: &SpinCData<T>,
    f_terms: &[(Vec<i64>, C<T>)],
    mode_cutoff: i64,
    count: usize,
) -> Result<T> {
    let potential = FourierPotential::exact_real(data.lattice(), f_terms)?;
    let want = closed_form_smallest(data, count)?;
    let got = oracle_smallest(data, &potential, mode_cutoff, count)?;
    Ok(want
        .iter()
        .zip(&got)
        .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs())))
}

/// Gauge-invariance suite: residuals at each cutoff, monotone decrease (up
/// to `1e-12` rounding slack) and the final residual below tolerance.
pub fn verify_gauge<T: Real>(
    data: &SpinCData<T>,
    f_terms: &[(Vec<i64>, C<T>)],
    cutoffs: &[i64],
    count: usize,
) -> Result<GaugeReport> {
    if cutoffs.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one cutoff is required".into(),
        ));
    }
    let mut residuals = Vec::with_capacity(cutoffs.len());
    for &c in cutoffs {
        let r = gauge_residual(data, f_terms, c, count)?;
        residuals.push((c, r.to_f64_lossy()));
    }
    let monotone = residuals.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    let last = residuals.last().unwrap().1;
    let pass = monotone && last <= GAUGE_TOLERANCE;
    Ok(GaugeReport {
        checks: cutoffs.len() * count,
        max_residual: last,
        tolerance: GAUGE_TOLERANCE,
        residuals,
        monotone,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::scalar::c;

    #[test]
    fn small_sphere_suite_passes() {
        let grid: Vec<f64> = (0..9).map(|j| -2.0 + 0.5 * j as f64).collect();
        let r = verify_sphere_blocks(5, &grid).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.checks, 9 * (6 * 2 + 15 * 2));
        assert!(r.max_residual < 1e-12);
    }

    #[test]
    fn torus_mode_suite_passes() {
        for n in 1..=5 {
            let r = verify_torus_modes::<f64>(n, 30, 1).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn gauge_suite_converges() {
        let l = Lattice::integer(2).unwrap();
        let four_pi = 4.0 * std::f64::consts::PI;
        let data = SpinCData::new(
            l,
            vec![0, 0],
            vec![0.0, 0.0],
            vec![four_pi * 0.1, four_pi * 0.23],
        )
        .unwrap();
        let terms = vec![(vec![1, 0], c(0.2, 0.0)), (vec![0, 1], c(0.0, 0.15))];
        let r = verify_gauge(&data, &terms, &[2, 4, 6], 10).unwrap();
        assert!(r.monotone, "{r:?}");
        assert!(r.pass, "{r:?}");
    }
}
