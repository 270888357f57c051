//! Dense LU with partial pivoting over f64 and Complex64, with transpose
//! solves (needed by the Hager 1-norm condition estimator) and one step of
//! iterative refinement.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub trait Field:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
    + std::ops::AddAssign
    + std::ops::SubAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn mag(self) -> f64;
    fn conj_(self) -> Self;
    fn re_part(self) -> f64;
    fn from_f64(v: f64) -> Self;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn mag(self) -> f64 {
        self.abs()
    }
    fn conj_(self) -> Self {
        self
    }
    fn re_part(self) -> f64 {
        self
    }
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn mag(self) -> f64 {
        self.norm()
    }
    fn conj_(self) -> Self {
        self.conj()
    }
    fn re_part(self) -> f64 {
        self.re
    }
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
}

/// Row-major dense matrix.
#[derive(Clone)]
pub struct Mat<T> {
    pub n_rows: usize,
    pub n_cols: usize,
    pub data: Vec<T>,
}

impl<T: Field> Mat<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Mat {
            n_rows,
            n_cols,
            data: vec![T::zero(); n_rows * n_cols],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[i * self.n_cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.n_cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.n_rows];
        for i in 0..self.n_rows {
            let row = self.row(i);
            let mut acc = T::zero();
            for (a, b) in row.iter().zip(x) {
                acc += *a * *b;
            }
            y[i] = acc;
        }
        y
    }

    pub fn norm_1(&self) -> f64 {
        let mut best: f64 = 0.0;
        for j in 0..self.n_cols {
            let mut s = 0.0;
            for i in 0..self.n_rows {
                s += self.at(i, j).mag();
            }
            best = best.max(s);
        }
        best
    }
}

pub struct Lu<T> {
    n: usize,
    lu: Vec<T>,
    piv: Vec<usize>,
}

impl<T: Field> Lu<T> {
    /// Factor a square matrix (consumed) with partial pivoting.
    pub fn factor(m: Mat<T>) -> Result<Self> {
        let n = m.n_rows;
        assert_eq!(n, m.n_cols);
        let mut a = m.data;
        let mut piv = vec![0usize; n];
        let scale: f64 = a.iter().map(|v| v.mag()).fold(0.0, f64::max).max(1e-300);
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].mag();
            for i in k + 1..n {
                let v = a[i * n + k].mag();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best < 1e-14 * scale {
                return Err(Error::LinearSolve(format!(
                    "singular to working precision at column {k} (pivot {best:.3e})"
                )));
            }
            piv[k] = p;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
            }
            let akk = a[k * n + k];
            for i in k + 1..n {
                let l = a[i * n + k] / akk;
                a[i * n + k] = l;
                if l.mag() != 0.0 {
                    let (head, tail) = a.split_at_mut((i) * n);
                    let rk = &head[k * n + k + 1..k * n + n];
                    let ri = &mut tail[k + 1..n];
                    for (x, y) in ri.iter_mut().zip(rk) {
                        *x -= l * *y;
                    }
                }
            }
        }
        Ok(Lu { n, lu: a, piv })
    }

    pub fn solve_in_place(&self, b: &mut [T]) {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.piv[k]);
        }
        for i in 1..n {
            let mut acc = b[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * b[j];
            }
            b[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in i + 1..n {
                acc -= self.lu[i * n + j] * b[j];
            }
            b[i] = acc / self.lu[i * n + i];
        }
    }

    /// Solve A^H x = b (conjugate-transpose solve), used by the condition
    /// estimator.
    pub fn solve_adjoint_in_place(&self, b: &mut [T]) {
        let n = self.n;
        // A = P^T L U  =>  A^H = U^H L^H P
        for i in 0..n {
            let mut acc = b[i];
            for j in 0..i {
                acc -= self.lu[j * n + i].conj_() * b[j];
            }
            b[i] = acc / self.lu[i * n + i].conj_();
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in i + 1..n {
                acc -= self.lu[j * n + i].conj_() * b[j];
            }
            b[i] = acc;
        }
        for k in (0..n).rev() {
            b.swap(k, self.piv[k]);
        }
    }

    /// Hager-style estimate of ||A^{-1}||_1.
    pub fn inverse_norm_1_estimate(&self) -> f64 {
        let n = self.n;
        let mut x = vec![T::from_f64(1.0 / n as f64); n];
        let mut est: f64 = 0.0;
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let mut y = x.clone();
            self.solve_in_place(&mut y);
            est = est.max(y.iter().map(|v| v.mag()).sum());
            let mut xi: Vec<T> = y
                .iter()
                .map(|v| {
                    let m = v.mag();
                    if m == 0.0 {
                        T::one()
                    } else {
                        *v / T::from_f64(m)
                    }
                })
                .collect();
            self.solve_adjoint_in_place(&mut xi);
            let (mut j_best, mut z_best) = (0usize, 0.0f64);
            for (j, z) in xi.iter().enumerate() {
                if z.mag() > z_best {
                    z_best = z.mag();
                    j_best = j;
                }
            }
            if j_best == last_j {
                break;
            }
            // stop when the new direction no longer improves
            let zx: f64 = xi
                .iter()
                .zip(&x)
                .map(|(a, b)| (a.conj_() * *b).re_part())
                .sum();
            if z_best <= zx {
                break;
            }
            last_j = j_best;
            x = vec![T::zero(); n];
            x[j_best] = T::one();
        }
        est
    }
}

/// Solve with one step of iterative refinement; returns (solution, condition
/// estimate in the 1-norm).
pub fn solve_refined<T: Field>(a: &Mat<T>, b: &[T]) -> Result<(Vec<T>, f64)> {
    let lu = Lu::factor(a.clone())?;
    let mut x = b.to_vec();
    lu.solve_in_place(&mut x);
    let ax = a.matvec(&x);
    let mut r: Vec<T> = b.iter().zip(&ax).map(|(bi, ai)| *bi - *ai).collect();
    lu.solve_in_place(&mut r);
    for (xi, ri) in x.iter_mut().zip(&r) {
        *xi += *ri;
    }
    let cond = a.norm_1() * lu.inverse_norm_1_estimate();
    Ok((x, cond))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng_next(s: &mut u64) -> f64 {
        // xorshift, good enough for test matrices
        *s ^= *s << 13;
        *s ^= *s >> 7;
        *s ^= *s << 17;
        (*s as f64 / u64::MAX as f64) * 2.0 - 1.0
    }

    #[test]
    fn complex_solve_roundtrip() {
        let n = 40;
        let mut s = 0x12345u64;
        let mut a = Mat::<Complex64>::zeros(n, n);
        for v in a.data.iter_mut() {
            *v = Complex64::new(rng_next(&mut s), rng_next(&mut s));
        }
        for i in 0..n {
            *a.at_mut(i, i) += Complex64::new(4.0, 0.0);
        }
        let xs: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(i as f64, -(i as f64) / 3.0))
            .collect();
        let b = a.matvec(&xs);
        let (x, cond) = solve_refined(&a, &b).unwrap();
        let err: f64 = x.iter().zip(&xs).map(|(u, v)| (u - v).norm()).sum();
        assert!(err < 1e-10, "err {err}");
        assert!(cond > 1.0 && cond < 1e6);
    }

    #[test]
    fn adjoint_solve_consistent() {
        let n = 15;
        let mut s = 0x9876u64;
        let mut a = Mat::<Complex64>::zeros(n, n);
        for v in a.data.iter_mut() {
            *v = Complex64::new(rng_next(&mut s), rng_next(&mut s));
        }
        for i in 0..n {
            *a.at_mut(i, i) += Complex64::new(3.0, 1.0);
        }
        // build A^H explicitly and compare solves
        let mut ah = Mat::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *ah.at_mut(i, j) = a.at(j, i).conj();
            }
        }
        let b: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + i as f64, 0.5)).collect();
        let lu = Lu::factor(a).unwrap();
        let mut x1 = b.clone();
        lu.solve_adjoint_in_place(&mut x1);
        let (x2, _) = solve_refined(&ah, &b).unwrap();
        let err: f64 = x1.iter().zip(&x2).map(|(u, v)| (u - v).norm()).sum();
        assert!(err < 1e-9, "err {err}");
    }

    #[test]
    fn singular_matrix_rejected() {
        let mut a = Mat::<f64>::zeros(3, 3);
        for j in 0..3 {
            *a.at_mut(0, j) = j as f64;
            *a.at_mut(1, j) = 2.0 * j as f64;
            *a.at_mut(2, j) = 1.0;
        }
        assert!(Lu::factor(a).is_err());
    }

    #[test]
    fn condition_estimate_tracks_ill_conditioning() {
        let n = 20;
        let mut a = Mat::<f64>::zeros(n, n);
        for i in 0..n {
            *a.at_mut(i, i) = if i == 0 { 1e-8 } else { 1.0 };
        }
        let lu = Lu::factor(a.clone()).unwrap();
        let cond = a.norm_1() * lu.inverse_norm_1_estimate();
        assert!(cond > 1e7, "cond {cond}");
    }
}
