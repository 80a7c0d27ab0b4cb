//! Full-rank lattices, their duals, and complete enumeration of shifted
//! dual-lattice points inside a ball.

use log::warn;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest lattice rank accepted.
pub const MAX_RANK: usize = 12;

/// Absolute slack added to the radius when deciding ball membership.
pub const BOUNDARY_SLACK: f64 = 1e-9;

/// Condition number above which a warning is logged.
pub const CONDITION_WARNING: f64 = 1e6;

/// Dense `n×n` real matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T: Real> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(T::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| (0..self.n).fold(T::zero(), |acc, k| acc + self.get(i, k) * v[k]))
            .collect()
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |a, x| a + *x * *x).sqrt()
    }

    /// Gauss-Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let scale = self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        if scale.is_zero() {
            return Err(Error::SingularBasis);
        }
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .abs()
                        .partial_cmp(&a[s * n + col].abs())
                        .unwrap()
                })
                .unwrap();
            if a[piv * n + col].abs() <= T::lit(1e-12) * scale {
                return Err(Error::SingularBasis);
            }
            if piv != col {
                for k in 0..n {
                    a.swap(piv * n + k, col * n + k);
                    inv.swap(piv * n + k, col * n + k);
                }
            }
            let d = a[col * n + col];
            for k in 0..n {
                a[col * n + k] /= d;
                inv[col * n + k] /= d;
            }
            for r in 0..n {
                if r != col {
                    let f = a[r * n + col];
                    if !f.is_zero() {
                        for k in 0..n {
                            let v = a[col * n + k];
                            a[r * n + k] -= f * v;
                            let w = inv[col * n + k];
                            inv[r * n + k] -= f * w;
                        }
                    }
                }
            }
        }
        Ok(Self { n, data: inv })
    }

    /// Upper-triangular `R` with `self = Rᵀ R`.
    pub fn cholesky_upper(&self) -> Result<Self> {
        let n = self.n;
        let mut r = vec![T::zero(); n * n];
        for j in 0..n {
            let mut d = self.get(j, j);
            for k in 0..j {
                d -= r[k * n + j] * r[k * n + j];
            }
            if d <= T::zero() {
                return Err(Error::NotPositiveDefinite);
            }
            let rjj = d.sqrt();
            r[j * n + j] = rjj;
            for i in (j + 1)..n {
                let mut s = self.get(j, i);
                for k in 0..j {
                    s -= r[k * n + j] * r[k * n + i];
                }
                r[j * n + i] = s / rjj;
            }
        }
        Ok(Self { n, data: r })
    }
}

/// A full-rank lattice `Γ ⊂ R^n` with cached dual basis and Gram matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice<T: Real> {
    /// Columns are the basis vectors `γ_1..γ_n`.
    basis: SquareMatrix<T>,
    gram: SquareMatrix<T>,
    /// Columns are the dual basis covectors `γ_1*..γ_n*`.
    dual_basis: SquareMatrix<T>,
    dual_gram: SquareMatrix<T>,
    dual_cholesky: SquareMatrix<T>,
}

impl<T: Real> Lattice<T> {
    /// Builds a lattice from basis vectors given one per entry (the JSON
    /// "row-major list of basis vectors" layout).
    pub fn from_basis_vectors(vectors: &[Vec<T>]) -> Result<Self> {
        let n = vectors.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if n > MAX_RANK {
            return Err(Error::DimensionTooLarge(n, MAX_RANK));
        }
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let basis = SquareMatrix::from_fn(n, |i, j| vectors[j][i]);
        let inv = basis.inverse()?;
        let cond = basis.frobenius() * inv.frobenius();
        if cond > T::lit(CONDITION_WARNING) {
            warn!(
                "lattice basis is poorly conditioned (condition number ~{:e})",
                cond.to_f64_lossy()
            );
        }
        let dual_basis = inv.transpose();
        let gram = basis.transpose().matmul(&basis);
        let dual_gram = dual_basis.transpose().matmul(&dual_basis);
        let dual_cholesky = dual_gram.cholesky_upper()?;
        Ok(Self {
            basis,
            gram,
            dual_basis,
            dual_gram,
            dual_cholesky,
        })
    }

    /// The standard lattice `Z^n`.
    pub fn integer(n: usize) -> Result<Self> {
        let vecs: Vec<Vec<T>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Self::from_basis_vectors(&vecs)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &SquareMatrix<T> {
        &self.basis
    }

    pub fn gram(&self) -> &SquareMatrix<T> {
        &self.gram
    }

    /// Dual basis matrix: columns are `γ_j*`, i.e. the inverse transpose of
    /// the basis matrix.
    pub fn dual(&self) -> &SquareMatrix<T> {
        &self.dual_basis
    }

    pub fn dual_gram(&self) -> &SquareMatrix<T> {
        &self.dual_gram
    }

    pub fn basis_vector(&self, j: usize) -> Vec<T> {
        self.basis.column(j)
    }

    pub fn dual_vector(&self, j: usize) -> Vec<T> {
        self.dual_basis.column(j)
    }

    /// Volume of the fundamental domain, `|det B|`.
    pub fn covolume(&self) -> T {
        let inv_det = self.dual_cholesky_diag_product();
        T::one() / inv_det
    }

    fn dual_cholesky_diag_product(&self) -> T {
        (0..self.dim()).fold(T::one(), |acc, i| acc * self.dual_cholesky.get(i, i))
    }

    /// `Σ_j m_j γ_j*` in standard coordinates.
    pub fn dual_point(&self, m: &[i64]) -> Vec<T> {
        let coords: Vec<T> = m.iter().map(|&x| T::from_int(x)).collect();
        self.dual_basis.apply(&coords)
    }

    /// Dual-lattice coordinates of a covector: `y ↦ Bᵀ y`.
    pub fn dual_coordinates(&self, y: &[T]) -> Vec<T> {
        self.basis.transpose().apply(y)
    }

    /// All `m ∈ Z^n` with `|Σ m_j γ_j* + shift| ≤ radius`, sorted
    /// lexicographically. Points on the sphere are kept up to an absolute
    /// slack of [`BOUNDARY_SLACK`].
    pub fn enumerate_shifted(&self, shift: &[T], radius: T) -> Result<Vec<Vec<i64>>> {
        let n = self.dim();
        if shift.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: shift.len(),
            });
        }
        if radius < T::zero() || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "radius must be finite and nonnegative, got {radius}"
            )));
        }
        let r_eff = radius + T::lit(BOUNDARY_SLACK);
        let r2 = r_eff * r_eff;
        // Real coordinates of the ball centre: D c = -shift  ⇒  c = -Bᵀ shift.
        let centre: Vec<T> = self
            .dual_coordinates(shift)
            .into_iter()
            .map(|x| -x)
            .collect();
        let r = &self.dual_cholesky;
        let mut out = Vec::new();
        let mut m = vec![0i64; n];
        // Widen the per-coordinate interval slightly so rounding cannot drop a
        // boundary point; the exact membership test below filters extras.
        let widen = T::lit(1e-9);
        self.fp_level(n - 1, r2, &centre, r, &mut m, widen, shift, r_eff, &mut out);
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn fp_level(
        &self,
        level: usize,
        budget: T,
        centre: &[T],
        r: &SquareMatrix<T>,
        m: &mut Vec<i64>,
        widen: T,
        shift: &[T],
        r_eff: T,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = self.dim();
        let rii = r.get(level, level);
        // Conditional centre for coordinate `level` given the higher ones.
        let mut ctr = centre[level];
        for j in (level + 1)..n {
            ctr -= r.get(level, j) / rii * (T::from_int(m[j]) - centre[j]);
        }
        let half = budget.max(T::zero()).sqrt() / rii + widen;
        let lo = (ctr - half).ceil().to_i64().unwrap_or(i64::MIN);
        let hi = (ctr + half).floor().to_i64().unwrap_or(i64::MAX);
        for v in lo..=hi {
            m[level] = v;
            let dev = rii * (T::from_int(v) - ctr);
            let rest = budget - dev * dev;
            if level == 0 {
                let p = self.dual_point(m);
                let norm2 = p.iter().zip(shift).fold(T::zero(), |a, (x, s)| {
                    let y = *x + *s;
                    a + y * y
                });
                if norm2.sqrt() <= r_eff {
                    out.push(m.clone());
                }
            } else if rest >= -widen {
                self.fp_level(level - 1, rest, centre, r, m, widen, shift, r_eff, out);
            }
        }
        m[level] = 0;
    }

    /// Per-coordinate bound `|m_j - c_j| ≤ R sqrt((G*)^{-1}_jj)` for a brute
    /// force box covering the ball; `G*` is the dual Gram matrix.
    pub fn box_half_widths(&self, radius: T) -> Result<Vec<T>> {
        let inv = self.dual_gram.inverse()?;
        Ok((0..self.dim())
            .map(|j| radius * inv.get(j, j).sqrt())
            .collect())
    }
}
