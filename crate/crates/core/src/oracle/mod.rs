//! Matrix-level cross-checks for the closed-form spectra.
//!
//! Nothing in this module reuses the closed forms it is checking: each
//! operator is assembled from Clifford generators and plane waves, and
//! diagonalised with the self-contained solvers in [`eigen`].

pub mod eigen;
pub mod fourier;
pub mod identities;
pub mod verify;

pub use eigen::hermitian_eigs;
pub use fourier::{
    torus_fourier_operator, FourierPotential, FourierTerm, ModeWindow, MAX_BASIS_DIM,
};
pub use identities::{identity_checks, IdentityReport};
pub use verify::{
    verify_gauge, verify_sphere_blocks, verify_torus_modes, GaugeReport, VerifyReport,
};

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, HermitianMatrix};
use crate::scalar::{c, cre, Real};

/// `D^{tη} - 1/2` on `span{φ_{k,p} ψ_0, φ_{k,p+1} ψ_1}` for `0 <= p < k`.
///
/// In the unnormalised basis the block is
/// `[[1+t+2p-k, -2i(p+1)], [2i(k-p), k-t-2p-1]]`; the returned matrix is its
/// Hermitian diagonal rescaling, with the same trace and determinant.
pub fn sphere_block<T: Real>(k: i64, p: i64, t: T) -> Result<HermitianMatrix<T>> {
    if !(0 <= p && p < k) {
        return Err(Error::IndexOutOfRange(format!(
            "need 0 <= p < k, got k={k}, p={p}"
        )));
    }
    let kf = T::from_int(k);
    let pf = T::from_int(p);
    let one = T::one();
    let two = T::lit(2.0);
    let m = CMatrix::from_rows(&[
        vec![
            cre(one + t + two * pf - kf),
            c(T::zero(), -two * (pf + one)),
        ],
        vec![c(T::zero(), two * (kf - pf)), cre(kf - t - two * pf - one)],
    ]);
    // Rescale the second basis vector so both off-diagonal entries have
    // modulus 2·sqrt((k-p)(p+1)); the similarity keeps the spectrum.
    let scale = ((kf - pf) / (pf + one)).sqrt();
    let m = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => m[(0, 1)] * scale,
        (1, 0) => m[(1, 0)] / scale,
        _ => m[(i, j)],
    });
    HermitianMatrix::new(m)
}

/// `2iπ · Σ_j θ'_j g_j`.
pub fn torus_mode_matrix<T: Real>(
    rep: &CliffordRep<T>,
    theta_prime: &[T],
) -> Result<HermitianMatrix<T>> {
    let va = rep.vector_action(theta_prime)?;
    let two_pi_i = c(T::zero(), T::lit(2.0) * T::PI());
    HermitianMatrix::new(va.scale(two_pi_i))
}
