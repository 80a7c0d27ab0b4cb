//! Dense Hermitian eigenvalue solvers.
//!
//! Two independent algorithms live here. Cyclic Jacobi sweeps reduce the
//! off-diagonal Frobenius norm until it is certified below
//! `eps · ‖A‖_F`; they are used up to [`JACOBI_MAX_DIM`]. Larger matrices go
//! through Householder reduction to a real symmetric tridiagonal matrix
//! followed by implicit QL with Wilkinson-type shifts.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, HermitianMatrix};
use crate::scalar::{c, Real, C};

/// Dimension up to which [`hermitian_eigs`] uses Jacobi sweeps.
pub const JACOBI_MAX_DIM: usize = 96;

const MAX_SWEEPS: usize = 100;
const MAX_QL_ITERS: usize = 60;

/// All eigenvalues, ascending.
pub fn hermitian_eigs<T: Real>(m: &HermitianMatrix<T>) -> Result<Vec<T>> {
    if m.dim() <= JACOBI_MAX_DIM {
        jacobi_eigs(m)
    } else {
        tridiagonal_eigs(m)
    }
}

fn off_diagonal_norm2<T: Real>(a: &CMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Cyclic Jacobi eigenvalues, ascending.
pub fn jacobi_eigs<T: Real>(m: &HermitianMatrix<T>) -> Result<Vec<T>> {
    let n = m.dim();
    let mut a = m.matrix().clone();
    // Symmetrise exactly so the rotations see a Hermitian matrix.
    for i in 0..n {
        a[(i, i)] = c(a[(i, i)].re, T::zero());
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * T::lit(0.5);
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let total = a.frobenius_norm();
    if total.is_zero() {
        return Ok(vec![T::zero(); n]);
    }
    let threshold = T::eps() * total;
    let threshold2 = threshold * threshold;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm2(&a) <= threshold2 {
            let mut d: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
            d.sort_by(|x, y| x.partial_cmp(y).unwrap());
            return Ok(d);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate<T: Real>(a: &mut CMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r.is_zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip entries already negligible relative to their diagonal.
    if r <= T::eps() * T::lit(1e-3) * (app.abs() + aqq.abs()) {
        a[(p, q)] = C::zero();
        a[(q, p)] = C::zero();
        return;
    }
    let phase = apq / r; // e^{iφ}
    let theta = (aqq - app) / (T::lit(2.0) * r);
    let t = {
        let s = if theta >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
        s / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let cs = T::one() / (t * t + T::one()).sqrt();
    let sn = t * cs;
    let n = a.rows();
    // Column update: A ← A U with U = diag(1, e^{-iφ}) · [[c, s], [-s, c]].
    let ph_conj = phase.conj();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * cs - akq * ph_conj * sn;
        a[(k, q)] = akp * sn + akq * ph_conj * cs;
    }
    // Row update: A ← Uᴴ A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * cs - aqk * phase * sn;
        a[(q, k)] = apk * sn + aqk * phase * cs;
    }
    a[(p, q)] = C::zero();
    a[(q, p)] = C::zero();
    a[(p, p)] = c(app - t * r, T::zero());
    a[(q, q)] = c(aqq + t * r, T::zero());
}

/// Householder tridiagonalisation plus implicit QL, ascending.
pub fn tridiagonal_eigs<T: Real>(m: &HermitianMatrix<T>) -> Result<Vec<T>> {
    let (mut d, mut e) = householder_tridiagonal(m.matrix());
    tql(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// Reduces a Hermitian matrix to real symmetric tridiagonal form with the
/// same eigenvalues. Returns the diagonal and the moduli of the
/// sub-diagonal (`e[i]` couples `i` and `i + 1`; the last entry is zero).
pub fn householder_tridiagonal<T: Real>(m: &CMatrix<T>) -> (Vec<T>, Vec<T>) {
    let n = m.rows();
    // Work on a full dense copy; only the trailing block is touched.
    let mut a: Vec<C<T>> = m.as_slice().to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    let mut v = vec![C::<T>::zero(); n];
    let mut p = vec![C::<T>::zero(); n];
    for k in 0..n.saturating_sub(1) {
        let s = k + 1;
        let xnorm2 = (s..n).fold(T::zero(), |acc, i| acc + a[idx(i, k)].norm_sqr());
        let xnorm = xnorm2.sqrt();
        d[k] = a[idx(k, k)].re;
        if xnorm.is_zero() {
            e[k] = T::zero();
            continue;
        }
        let x0 = a[idx(s, k)];
        let x0n = x0.norm();
        let phase = if x0n.is_zero() {
            c(T::one(), T::zero())
        } else {
            x0 / x0n
        };
        let alpha = -phase * xnorm;
        // v = x - α e_1, normalised.
        for i in s..n {
            v[i] = a[idx(i, k)];
        }
        v[s] -= alpha;
        let vnorm = (s..n)
            .fold(T::zero(), |acc, i| acc + v[i].norm_sqr())
            .sqrt();
        if vnorm.is_zero() {
            e[k] = xnorm;
            continue;
        }
        for vi in v.iter_mut().take(n).skip(s) {
            *vi /= vnorm;
        }
        // p = A v on the trailing block.
        for i in s..n {
            let mut acc = C::zero();
            let row = &a[idx(i, s)..idx(i, n - 1) + 1];
            for (aij, vj) in row.iter().zip(&v[s..n]) {
                acc += *aij * *vj;
            }
            p[i] = acc;
        }
        // K = vᴴ p (real for Hermitian A), w = p - K v.
        let kk = (s..n)
            .fold(C::zero(), |acc: C<T>, i| acc + v[i].conj() * p[i])
            .re;
        for i in s..n {
            p[i] -= v[i] * kk;
        }
        // A ← A - 2 (v wᴴ + w vᴴ).
        let two = T::lit(2.0);
        for i in s..n {
            let vi = v[i] * two;
            let wi = p[i] * two;
            let row = &mut a[idx(i, s)..idx(i, n - 1) + 1];
            for (j, aij) in row.iter_mut().enumerate() {
                let jj = s + j;
                *aij -= vi * p[jj].conj() + wi * v[jj].conj();
            }
        }
        e[k] = xnorm;
    }
    if n > 0 {
        d[n - 1] = a[idx(n - 1, n - 1)].re;
    }
    (d, e)
}

/// Implicit QL on a real symmetric tridiagonal matrix (eigenvalues only).
/// `e[i]` couples `d[i]` and `d[i + 1]`; on return `d` holds the eigenvalues.
pub fn tql<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = T::zero();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::eps() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERS {
                return Err(Error::NoConvergence(MAX_QL_ITERS));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r.is_zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
