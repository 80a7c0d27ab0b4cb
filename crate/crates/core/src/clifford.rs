//! Irreducible complex Clifford modules for Euclidean `R^n`.
//!
//! Generators satisfy `g_i g_j + g_j g_i = -2 δ_ij` and are skew-Hermitian.
//! They are built as `g_k = -i γ_k` from Jordan-Wigner products of Pauli
//! matrices, so every entry is one of `0, ±1, ±i` and the relations hold
//! with no rounding at all.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{c, ci, cre, Real, C};

/// Largest ambient dimension accepted by [`CliffordRep::new`].
pub const MAX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRep<T: Real> {
    n: usize,
    generators: Vec<CMatrix<T>>,
    flipped_odd_class: bool,
}

fn pauli<T: Real>(which: u8) -> CMatrix<T> {
    let (z, o) = (T::zero(), T::one());
    match which {
        1 => CMatrix::from_rows(&[vec![c(z, z), c(o, z)], vec![c(o, z), c(z, z)]]),
        2 => CMatrix::from_rows(&[vec![c(z, z), c(z, -o)], vec![c(z, o), c(z, z)]]),
        3 => CMatrix::from_rows(&[vec![c(o, z), c(z, z)], vec![c(z, z), c(-o, z)]]),
        _ => CMatrix::identity(2),
    }
}

/// `σ3^{⊗ lead} ⊗ mid ⊗ I^{⊗ tail}`.
fn jordan_wigner<T: Real>(lead: usize, mid: &CMatrix<T>, tail: usize) -> CMatrix<T> {
    let mut out = CMatrix::identity(1);
    for _ in 0..lead {
        out = out.kron(&pauli(3));
    }
    out = out.kron(mid);
    for _ in 0..tail {
        out = out.kron(&CMatrix::identity(2));
    }
    out
}

impl<T: Real> CliffordRep<T> {
    /// Builds the representation for `R^n`, `1 <= n <= 12`.
    ///
    /// For odd `n` the two inequivalent irreducible classes differ by the sign
    /// of the volume element. The class is pinned so that for `n = 3`
    /// `-g_1 g_2 g_3 = I`, and more generally `i^{(n+1)/2} g_1⋯g_n = I`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge(n, MAX_DIM));
        }
        let m = n / 2;
        let minus_i = -ci::<T>();
        let mut generators = Vec::with_capacity(n);
        for j in 0..m {
            let tail = m - j - 1;
            generators.push(jordan_wigner(j, &pauli(1), tail).scale(minus_i));
            generators.push(jordan_wigner(j, &pauli(2), tail).scale(minus_i));
        }
        if n % 2 == 1 {
            let mut last = CMatrix::identity(1);
            for _ in 0..m {
                last = last.kron(&pauli(3));
            }
            generators.push(last.scale(minus_i));
        }
        let mut rep = Self {
            n,
            generators,
            flipped_odd_class: false,
        };
        if n % 2 == 1 {
            let omega = rep.chirality();
            if (omega[(0, 0)] + cre(T::one())).norm() < T::lit(0.5) {
                let last = rep.generators.len() - 1;
                rep.generators[last] = rep.generators[last].scale(cre(-T::one()));
                rep.flipped_odd_class = true;
            }
        }
        Ok(rep)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Spinor dimension `2^⌊n/2⌋`.
    #[inline]
    pub fn spinor_dim(&self) -> usize {
        1 << (self.n / 2)
    }

    pub fn generators(&self) -> &[CMatrix<T>] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &CMatrix<T> {
        &self.generators[i]
    }

    /// True when the last generator was negated to select the odd class.
    pub fn flipped_odd_class(&self) -> bool {
        self.flipped_odd_class
    }

    /// `Σ_j v_j g_j`.
    pub fn vector_action(&self, v: &[T]) -> Result<CMatrix<T>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let nn = self.spinor_dim();
        let mut out = CMatrix::zeros(nn, nn);
        for (g, &x) in self.generators.iter().zip(v) {
            if !x.is_zero() {
                out.axpy(cre(x), g);
            }
        }
        Ok(out)
    }

    /// `Σ_j a_j g_j` for a complex covector (Fourier coefficients of a real form).
    pub fn complex_vector_action(&self, a: &[C<T>]) -> Result<CMatrix<T>> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        let nn = self.spinor_dim();
        let mut out = CMatrix::zeros(nn, nn);
        for (g, &x) in self.generators.iter().zip(a) {
            if !x.is_zero() {
                out.axpy(x, g);
            }
        }
        Ok(out)
    }

    /// Full double sum `Σ_{i,j} ω_ij g_i g_j = 2 Σ_{i<j} ω_ij g_i g_j`.
    ///
    /// `omega` is row-major `n×n` and must be antisymmetric to within `1e-12`
    /// relative to its largest entry.
    pub fn two_form_action(&self, omega: &[T]) -> Result<CMatrix<T>> {
        let n = self.n;
        if omega.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: omega.len(),
            });
        }
        let scale = omega.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let mut defect = T::zero();
        for i in 0..n {
            for j in 0..n {
                defect = defect.max((omega[i * n + j] + omega[j * n + i]).abs());
            }
        }
        if defect > T::lit(1e-12) * (T::one() + scale) {
            return Err(Error::NotAntisymmetric(defect.to_f64_lossy()));
        }
        let nn = self.spinor_dim();
        let mut out = CMatrix::zeros(nn, nn);
        for i in 0..n {
            for j in (i + 1)..n {
                let w = omega[i * n + j] - omega[j * n + i];
                if !w.is_zero() {
                    let gg = &self.generators[i] * &self.generators[j];
                    out.axpy(cre(w), &gg);
                }
            }
        }
        Ok(out)
    }

    /// Product `g_1 g_2 ⋯ g_n`.
    pub fn volume_element(&self) -> CMatrix<T> {
        let mut out = CMatrix::identity(self.spinor_dim());
        for g in &self.generators {
            out = &out * g;
        }
        out
    }

    /// Volume element normalised by `i^{⌊(n+1)/2⌋}` so that it squares to `I`.
    pub fn chirality(&self) -> CMatrix<T> {
        let k = self.n.div_ceil(2);
        let mut phase = C::<T>::one();
        for _ in 0..k {
            phase *= ci::<T>();
        }
        self.volume_element().scale(phase)
    }
}
