//! Operator identities for `D^η`, `η = A/2`, checked on a truncated
//! plane-wave basis.
//!
//! * `(D^η)² = D² + i dη· + i(δη)· - 2i∇_η + |η|²`
//! * `(D^η)² = (∇^η)*∇^η + S/4 + i dη·` with `S = 0` on a flat torus
//! * in even dimension the chirality operator anticommutes with `D^η`
//!
//! Every right-hand-side term is assembled as its own matrix. Rows are
//! compared only for modes whose full coupling stencil lies in the window.

use serde::Serialize;

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{c, cre, Real, C};
use crate::torus::SpinCData;

use super::fourier::{torus_fourier_operator, FourierPotential, ModeWindow};

/// Relative tolerance for the identity residuals.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub window_cutoff: i64,
    pub reach: i64,
    pub interior_modes: usize,
    /// Scale used to relativise residuals: `1 + max |(D^η)²|` on interior rows.
    pub scale: f64,
    pub expansion_residual: f64,
    pub bochner_residual: f64,
    /// Present in even dimension only.
    pub chirality_residual: Option<f64>,
    pub pass: bool,
}

/// Fourier coefficients of the full potential, zero frequency included.
fn all_terms<T: Real>(
    data: &SpinCData<T>,
    potential: &FourierPotential<T>,
) -> Vec<(Vec<i64>, Vec<C<T>>)> {
    let n = data.dim();
    let mut h: Vec<C<T>> = data.potential().iter().map(|&x| cre(x)).collect();
    let mut out = Vec::new();
    for t in potential.terms() {
        if t.frequency.iter().all(|&x| x == 0) {
            for (hj, aj) in h.iter_mut().zip(&t.coefficient) {
                *hj += cre(aj.re);
            }
        } else {
            out.push((t.frequency.clone(), t.coefficient.clone()));
        }
    }
    out.push((vec![0; n], h));
    out
}

/// Places, for every column mode, the blocks returned by `blocks` at the row
/// of `mode + offset` (dropped when outside the window).
fn assemble<T: Real>(
    window: &ModeWindow,
    nn: usize,
    mut blocks: impl FnMut(&[i64]) -> Vec<(Vec<i64>, CMatrix<T>)>,
) -> CMatrix<T> {
    let total = window.len() * nn;
    let mut m = CMatrix::zeros(total, total);
    for (col, mode) in window.modes().iter().enumerate() {
        for (offset, block) in blocks(mode) {
            let target: Vec<i64> = mode.iter().zip(&offset).map(|(a, b)| a + b).collect();
            if let Some(row) = window.index_of(&target) {
                m.add_block(row * nn, col * nn, &block);
            }
        }
    }
    m
}

fn dot<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter()
        .zip(b)
        .fold(C::new(T::zero(), T::zero()), |s, (x, y)| s + *x * *y)
}

fn real_dot<T: Real>(a: &[C<T>], v: &[T]) -> C<T> {
    a.iter()
        .zip(v)
        .fold(C::new(T::zero(), T::zero()), |s, (x, y)| s + *x * *y)
}

fn interior_rows(window: &ModeWindow, nn: usize, reach: i64) -> Vec<usize> {
    window
        .modes()
        .iter()
        .enumerate()
        .filter(|(_, m)| window.is_interior(m, reach))
        .flat_map(|(i, _)| (i * nn)..((i + 1) * nn))
        .collect()
}

/// Checks the three identities on `[-mode_cutoff, mode_cutoff]^n`.
pub fn identity_checks<T: Real>(
    data: &SpinCData<T>,
    potential: &FourierPotential<T>,
    mode_cutoff: i64,
) -> Result<IdentityReport> {
    let (window, dmat) = torus_fourier_operator(data, potential, mode_cutoff)?;
    let n = data.dim();
    let rep = CliffordRep::<T>::new(n)?;
    let nn = rep.spinor_dim();
    let reach = potential.reach();
    let rows = interior_rows(&window, nn, reach);
    if rows.is_empty() {
        return Err(Error::NoInterior(reach));
    }
    let terms = all_terms(data, potential);
    let lattice = data.lattice();
    let pi = T::PI();
    let id = CMatrix::<T>::identity(nn);
    let zero = vec![0i64; n];

    let d = dmat.matrix();
    let lhs = d.select_rows(&rows).matmul(d);
    let scale = T::one() + lhs.max_abs();

    // D²: 4π²|θ_γ|² per mode.
    let d2 = assemble(&window, nn, |m| {
        let th = data.shift_covector(m).theta_gamma;
        let r2 = th.iter().fold(T::zero(), |s, x| s + *x * *x);
        vec![(zero.clone(), id.scale_real(T::lit(4.0) * pi * pi * r2))]
    });
    // i(δη): δη = -div η, so a term (ν, a) of A gives π ⟨ν*, a⟩.
    let codiff = assemble(&window, nn, |_| {
        terms
            .iter()
            .map(|(nu, a)| {
                let cov = lattice.dual_point(nu);
                (nu.clone(), id.scale(real_dot(a, &cov) * pi))
            })
            .collect()
    });
    // -2i∇_η on a plane wave: 4π ⟨η, θ_γ⟩ = 2π ⟨a, θ_γ⟩ per term.
    let transport = assemble(&window, nn, |m| {
        let th = data.shift_covector(m).theta_gamma;
        terms
            .iter()
            .map(|(nu, a)| (nu.clone(), id.scale(real_dot(a, &th) * (T::lit(2.0) * pi))))
            .collect()
    });
    // |η|² = ¼ Σ_{ν,μ} ⟨a_ν, a_μ⟩ e_{ν+μ}.
    let quadratic = assemble(&window, nn, |_| {
        let mut out = Vec::with_capacity(terms.len() * terms.len());
        for (nu, a) in &terms {
            for (mu, b) in &terms {
                let off: Vec<i64> = nu.iter().zip(mu).map(|(x, y)| x + y).collect();
                out.push((off, id.scale(dot(a, b) * T::lit(0.25))));
            }
        }
        out
    });
    // i dη· with dη = ½ dA; a term gives (dA)_{jk} = 2πi (ν_j a_k - ν_k a_j).
    let curvature_blocks: Vec<(Vec<i64>, CMatrix<T>)> = terms
        .iter()
        .map(|(nu, a)| {
            let cov = lattice.dual_point(nu);
            let mut re = vec![T::zero(); n * n];
            let mut im = vec![T::zero(); n * n];
            for j in 0..n {
                for k in 0..n {
                    let w = (a[k] * cov[j] - a[j] * cov[k]) * c(T::zero(), pi);
                    re[j * n + k] = w.re;
                    im[j * n + k] = w.im;
                }
            }
            let mut block = rep.two_form_action(&re)?;
            block.axpy(c(T::zero(), T::one()), &rep.two_form_action(&im)?);
            // Half-sum Clifford convention, times i.
            Ok((nu.clone(), block.scale(c(T::zero(), T::lit(0.5)))))
        })
        .collect::<Result<_>>()?;
    let curvature = assemble(&window, nn, |_| curvature_blocks.clone());

    let mut rhs = &(&d2 + &curvature) + &codiff;
    rhs = &(&rhs + &transport) + &quadratic;
    let expansion = (&lhs - &rhs.select_rows(&rows)).max_abs() / scale;

    // (∇^η)*∇^η = Σ_j N_jᴴ N_j with N_j = ∂_j + i η_j.
    let mut bochner = curvature.select_rows(&rows);
    for j in 0..n {
        let nj = assemble(&window, nn, |m| {
            let th = data.shift_covector(m).theta_gamma;
            terms
                .iter()
                .map(|(nu, a)| {
                    let mut v = a[j] * c(T::zero(), T::lit(0.5));
                    if nu.iter().all(|&x| x == 0) {
                        v += c(T::zero(), T::lit(2.0) * pi * th[j]);
                    }
                    (nu.clone(), id.scale(v))
                })
                .collect()
        });
        let term = nj.adjoint().select_rows(&rows).matmul(&nj);
        bochner = &bochner + &term;
    }
    let bochner_res = (&lhs - &bochner).max_abs() / scale;

    let chirality_res = if n.is_multiple_of(2) {
        let chi = rep.chirality();
        let big = assemble(&window, nn, |_| vec![(zero.clone(), chi.clone())]);
        let anti = &big.matmul(d) + &d.matmul(&big);
        Some(anti.select_rows(&rows).max_abs() / (T::one() + d.max_abs()))
    } else {
        None
    };

    let tol = T::lit(IDENTITY_TOLERANCE);
    let pass = expansion <= tol && bochner_res <= tol && chirality_res.is_none_or(|r| r <= tol);
    Ok(IdentityReport {
        window_cutoff: mode_cutoff,
        reach,
        interior_modes: rows.len() / nn,
        scale: scale.to_f64_lossy(),
        expansion_residual: expansion.to_f64_lossy(),
        bochner_residual: bochner_res.to_f64_lossy(),
        chirality_residual: chirality_res.map(|r| r.to_f64_lossy()),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    #[test]
    fn parallel_potential_identities() {
        let l = Lattice::integer(2).unwrap();
        let data = SpinCData::new(l, vec![1, 0], vec![0.0, 0.0], vec![0.7, -1.1]).unwrap();
        let empty = FourierPotential::new(2, vec![]).unwrap();
        let r = identity_checks(&data, &empty, 3).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.interior_modes, 49);
    }

    #[test]
    fn exact_potential_identities() {
        let l = Lattice::from_basis_vectors(&[vec![1.0, 0.0], vec![0.5, 0.9]]).unwrap();
        let f = FourierPotential::exact_real(
            &l,
            &[(vec![1, 0], c(0.3, 0.1)), (vec![1, -1], c(0.0, 0.2))],
        )
        .unwrap();
        let data = SpinCData::new(l, vec![0, 1], vec![0.0, 0.0], vec![0.4, 0.2]).unwrap();
        let r = identity_checks(&data, &f, 4).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.chirality_residual.unwrap() < 1e-14);
    }

    #[test]
    fn odd_dimension_has_no_chirality_check() {
        let l = Lattice::integer(3).unwrap();
        let f = FourierPotential::exact_real(&l, &[(vec![0, 1, 1], c(0.25, 0.0))]).unwrap();
        let data = SpinCData::new(l, vec![1, 0, 0], vec![0.5, 0.0, 0.0], vec![0.0; 3]).unwrap();
        let r = identity_checks(&data, &f, 2).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.chirality_residual.is_none());
    }

    #[test]
    fn window_without_interior_is_rejected() {
        let l = Lattice::integer(2).unwrap();
        let f = FourierPotential::exact_real(&l, &[(vec![2, 0], c(0.1, 0.0))]).unwrap();
        let data = SpinCData::trivial(l);
        assert_eq!(identity_checks(&data, &f, 1), Err(Error::NoInterior(2)));
    }
}
