//! Plane-wave truncation of `D^A` on a flat torus for closed, non-parallel `A`.
//!
//! A spinor mode `γ*` carries the plane wave `exp(2πi⟨θ_{γ*}, x⟩) ψ_ℓ`. The
//! parallel part `h` of `A` acts diagonally, and each oscillating Fourier term
//! `a_ν exp(2πi⟨ν*, x⟩)` couples mode `γ*` to `γ* + ν` through
//! `(i/2) Σ_j (a_ν)_j g_j`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{CMatrix, HermitianMatrix};
use crate::scalar::{c, Real, C};
use crate::torus::SpinCData;

use super::torus_mode_matrix;

/// Largest truncated basis the oracle will assemble.
pub const MAX_BASIS_DIM: usize = 4096;

/// One Fourier term of a one-form: frequency in dual-lattice coordinates and
/// a complex covector coefficient in standard components.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTerm<T: Real> {
    pub frequency: Vec<i64>,
    pub coefficient: Vec<C<T>>,
}

/// A trigonometric one-form `Σ_ν a_ν exp(2πi⟨ν*, x⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPotential<T: Real> {
    n: usize,
    terms: Vec<FourierTerm<T>>,
    real: bool,
}

impl<T: Real> FourierPotential<T> {
    /// Collects terms, summing repeated frequencies.
    pub fn new(n: usize, terms: Vec<FourierTerm<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut merged: BTreeMap<Vec<i64>, Vec<C<T>>> = BTreeMap::new();
        for term in terms {
            for len in [term.frequency.len(), term.coefficient.len()] {
                if len != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: len,
                    });
                }
            }
            let slot = merged
                .entry(term.frequency)
                .or_insert_with(|| vec![C::zero(); n]);
            for (s, a) in slot.iter_mut().zip(term.coefficient) {
                *s += a;
            }
        }
        let terms: Vec<FourierTerm<T>> = merged
            .into_iter()
            .filter(|(_, a)| a.iter().any(|x| !x.is_zero()))
            .map(|(frequency, coefficient)| FourierTerm {
                frequency,
                coefficient,
            })
            .collect();
        let real = realness_witness(&terms).is_none();
        Ok(Self { n, terms, real })
    }

    /// `d f` for `f = Σ_ν f_ν exp(2πi⟨ν*, x⟩)`, i.e. `a_ν = 2πi f_ν ν*`.
    /// The caller supplies conjugate partners for a real `f`.
    pub fn exact(lattice: &Lattice<T>, f_terms: &[(Vec<i64>, C<T>)]) -> Result<Self> {
        let n = lattice.dim();
        let two_pi_i = c(T::zero(), T::lit(2.0) * T::PI());
        let mut terms = Vec::with_capacity(f_terms.len());
        for (nu, f) in f_terms {
            if nu.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: nu.len(),
                });
            }
            let cov = lattice.dual_point(nu);
            let coefficient = cov.iter().map(|&x| two_pi_i * *f * x).collect();
            terms.push(FourierTerm {
                frequency: nu.clone(),
                coefficient,
            });
        }
        Self::new(n, terms)
    }

    /// `d f` for the real function `f = Σ (f_ν e_ν + conj(f_ν) e_{-ν})`.
    pub fn exact_real(lattice: &Lattice<T>, half_terms: &[(Vec<i64>, C<T>)]) -> Result<Self> {
        let mut all = Vec::with_capacity(2 * half_terms.len());
        for (nu, f) in half_terms {
            if nu.iter().all(|&x| x == 0) {
                continue;
            }
            all.push((nu.clone(), *f));
            all.push((nu.iter().map(|x| -x).collect(), f.conj()));
        }
        Self::exact(lattice, &all)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[FourierTerm<T>] {
        &self.terms
    }

    /// Coefficient at `-ν` is the conjugate of that at `ν` for every term.
    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Largest `|ν|_∞` over the terms: the band width of the operator.
    pub fn reach(&self) -> i64 {
        self.terms
            .iter()
            .flat_map(|t| t.frequency.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Zero-frequency (parallel) part, real by construction when `is_real`.
    pub fn constant_part(&self) -> Vec<T> {
        self.terms
            .iter()
            .find(|t| t.frequency.iter().all(|&x| x == 0))
            .map_or_else(
                || vec![T::zero(); self.n],
                |t| t.coefficient.iter().map(|z| z.re).collect(),
            )
    }

    /// Errors with the first frequency whose term has `ν* ∧ a_ν ≠ 0`.
    pub fn check_closed(&self, lattice: &Lattice<T>) -> Result<()> {
        for term in &self.terms {
            let nu = lattice.dual_point(&term.frequency);
            let a = &term.coefficient;
            let scale = T::one()
                + nu.iter().fold(T::zero(), |m, x| m.max(x.abs()))
                    * a.iter().fold(T::zero(), |m, z| m.max(z.norm()));
            for j in 0..self.n {
                for k in (j + 1)..self.n {
                    let w = a[k] * nu[j] - a[j] * nu[k];
                    if w.norm() > T::lit(1e-12) * scale {
                        return Err(Error::NotClosed(term.frequency.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Errors with the first frequency lacking a conjugate partner.
    pub fn check_real(&self) -> Result<()> {
        match realness_witness(&self.terms) {
            Some(nu) => Err(Error::NotReal(nu)),
            None => Ok(()),
        }
    }
}

fn realness_witness<T: Real>(terms: &[FourierTerm<T>]) -> Option<Vec<i64>> {
    for t in terms {
        let neg: Vec<i64> = t.frequency.iter().map(|x| -x).collect();
        let scale = T::one() + t.coefficient.iter().fold(T::zero(), |m, z| m.max(z.norm()));
        let ok = terms.iter().find(|u| u.frequency == neg).is_some_and(|u| {
            u.coefficient
                .iter()
                .zip(&t.coefficient)
                .all(|(x, y)| (*x - y.conj()).norm() <= T::lit(1e-12) * scale)
        });
        if !ok {
            return Some(t.frequency.clone());
        }
    }
    None
}

/// Centred hypercube `[-c, c]^n` of dual-lattice coordinates, ordered
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeWindow {
    n: usize,
    cutoff: i64,
    modes: Vec<Vec<i64>>,
}

impl ModeWindow {
    pub fn new(n: usize, cutoff: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if cutoff < 1 {
            return Err(Error::InvalidParameter(format!(
                "mode cutoff must be at least 1, got {cutoff}"
            )));
        }
        let side = (2 * cutoff + 1) as usize;
        let count = side.checked_pow(n as u32).unwrap_or(usize::MAX);
        if count > MAX_BASIS_DIM {
            return Err(Error::BasisTooLarge(count, MAX_BASIS_DIM));
        }
        let mut modes = Vec::with_capacity(count);
        let mut m = vec![-cutoff; n];
        loop {
            modes.push(m.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(Self { n, cutoff, modes });
                }
                i -= 1;
                if m[i] < cutoff {
                    m[i] += 1;
                    break;
                }
                m[i] = -cutoff;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[Vec<i64>] {
        &self.modes
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        if m.len() != self.n || m.iter().any(|x| x.abs() > self.cutoff) {
            return None;
        }
        let side = 2 * self.cutoff + 1;
        Some(m.iter().fold(0i64, |acc, x| acc * side + (x + self.cutoff)) as usize)
    }

    /// Modes at least `reach` away from the edge in every coordinate.
    pub fn is_interior(&self, m: &[i64], reach: i64) -> bool {
        m.iter().all(|x| x.abs() + reach <= self.cutoff)
    }
}

/// Truncated matrix of `D^A` for `A = h + (oscillating part of potential)`,
/// where `h` is the parallel potential stored in `data` plus the constant
/// term of `potential`. Rows and columns are indexed by
/// `window index · N + spinor index`.
pub fn torus_fourier_operator<T: Real>(
    data: &SpinCData<T>,
    potential: &FourierPotential<T>,
    mode_cutoff: i64,
) -> Result<(ModeWindow, HermitianMatrix<T>)> {
    let n = data.dim();
    if potential.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: potential.dim(),
        });
    }
    potential.check_real()?;
    potential.check_closed(data.lattice())?;
    let window = ModeWindow::new(n, mode_cutoff)?;
    let rep = crate::clifford::CliffordRep::<T>::new(n)?;
    let nn = rep.spinor_dim();
    let total = window.len() * nn;
    if total > MAX_BASIS_DIM {
        return Err(Error::BasisTooLarge(total, MAX_BASIS_DIM));
    }
    let h: Vec<T> = data
        .potential()
        .iter()
        .zip(potential.constant_part())
        .map(|(a, b)| *a + b)
        .collect();
    let base = data.with_potential(h)?;
    let mut m = CMatrix::zeros(total, total);
    for (i, mode) in window.modes().iter().enumerate() {
        let block = torus_mode_matrix(&rep, &base.shift_covector(mode).theta_prime)?;
        m.add_block(i * nn, i * nn, block.matrix());
    }
    let half_i = c(T::zero(), T::lit(0.5));
    for term in potential.terms() {
        if term.frequency.iter().all(|&x| x == 0) {
            continue;
        }
        let coupling = rep.complex_vector_action(&term.coefficient)?.scale(half_i);
        for (col, mode) in window.modes().iter().enumerate() {
            let target: Vec<i64> = mode
                .iter()
                .zip(&term.frequency)
                .map(|(a, b)| a + b)
                .collect();
            if let Some(row) = window.index_of(&target) {
                m.add_block(row * nn, col * nn, &coupling);
            }
        }
    }
    let tol = T::lit(HermitianMatrix::<T>::TOLERANCE) * (T::one() + m.max_abs());
    Ok((window, HermitianMatrix::with_tolerance(m, tol)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hermitian_eigs;
    use crate::torus;

    fn z2() -> Lattice<f64> {
        Lattice::integer(2).unwrap()
    }

    #[test]
    fn window_indexing_round_trips() {
        let w = ModeWindow::new(3, 2).unwrap();
        assert_eq!(w.len(), 125);
        for (i, m) in w.modes().iter().enumerate() {
            assert_eq!(w.index_of(m), Some(i));
        }
        assert_eq!(w.index_of(&[3, 0, 0]), None);
        assert!(w.is_interior(&[1, -1, 0], 1));
        assert!(!w.is_interior(&[2, 0, 0], 1));
        assert!(matches!(
            ModeWindow::new(2, 40),
            Err(Error::BasisTooLarge(..))
        ));
    }

    #[test]
    fn realness_and_closedness() {
        let l = z2();
        let ok = FourierPotential::exact_real(&l, &[(vec![1, 2], c(0.3, -0.1))]).unwrap();
        assert!(ok.is_real());
        ok.check_closed(&l).unwrap();
        let half = FourierPotential::exact(&l, &[(vec![1, 0], c(0.3, 0.0))]).unwrap();
        assert!(!half.is_real());
        assert_eq!(half.check_real(), Err(Error::NotReal(vec![1, 0])));
        let curl = FourierPotential::new(
            2,
            vec![FourierTerm {
                frequency: vec![1, 0],
                coefficient: vec![c(0.0, 0.0), c(1.0, 0.0)],
            }],
        )
        .unwrap();
        assert_eq!(curl.check_closed(&l), Err(Error::NotClosed(vec![1, 0])));
    }

    #[test]
    fn constant_potential_reproduces_closed_form() {
        let data = SpinCData::new(z2(), vec![1, 0], vec![0.0, 0.0], vec![0.3, -0.2]).unwrap();
        let empty = FourierPotential::new(2, vec![]).unwrap();
        let (_, m) = torus_fourier_operator(&data, &empty, 3).unwrap();
        let ev = hermitian_eigs(&m).unwrap();
        let mut want = Vec::new();
        for mode in ModeWindow::new(2, 3).unwrap().modes() {
            let v = torus::mode_value(&data, mode);
            want.push(v);
            want.push(-v);
        }
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, y) in ev.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn pure_exact_keeps_two_dimensional_kernel() {
        let data = SpinCData::trivial(z2());
        let f = FourierPotential::exact_real(
            &z2(),
            &[(vec![1, 0], c(0.2, 0.0)), (vec![1, 1], c(0.0, 0.1))],
        )
        .unwrap();
        for cutoff in [3, 5, 7] {
            let (_, m) = torus_fourier_operator(&data, &f, cutoff).unwrap();
            let ev = hermitian_eigs(&m).unwrap();
            let zeros = ev.iter().filter(|x| x.abs() < 1e-9).count();
            assert_eq!(zeros, 2, "cutoff {cutoff}");
        }
    }

    #[test]
    fn rejects_bad_potentials() {
        let data = SpinCData::trivial(z2());
        let half = FourierPotential::exact(&z2(), &[(vec![1, 0], c(0.3, 0.0))]).unwrap();
        assert!(matches!(
            torus_fourier_operator(&data, &half, 2),
            Err(Error::NotReal(_))
        ));
        let three = FourierPotential::new(3, vec![]).unwrap();
        assert!(torus_fourier_operator(&data, &three, 2).is_err());
    }
}
