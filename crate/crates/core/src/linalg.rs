//! Small dense complex linear algebra.
//!
//! Matrices here are tiny (the ambient dimension `d` of the row Schur
//! function, or a few hundred for Gram systems), so everything is plain
//! row-major storage with textbook algorithms.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalar::{cr, cz, Real, C};

#[derive(Clone, Debug, PartialEq)]
pub struct CMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![cz(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cr(T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C<T>>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must match shape");
        CMat { rows, cols, data }
    }

    /// Column vector.
    pub fn column(v: &[C<T>]) -> Self {
        CMat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// Row vector.
    pub fn row(v: &[C<T>]) -> Self {
        CMat { rows: 1, cols: v.len(), data: v.to_vec() }
    }

    /// Outer product `u v*`.
    pub fn outer(u: &[C<T>], v: &[C<T>]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn row_slice(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| *x * s).collect() }
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(cr(s))
    }

    pub fn matvec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row_slice(i).iter().zip(v).fold(cz(), |acc, (a, b)| acc + *a * *b))
            .collect()
    }

    /// `self* v`.
    pub fn adjoint_matvec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![cz(); self.cols];
        for i in 0..self.rows {
            let vi = v[i];
            for (o, a) in out.iter_mut().zip(self.row_slice(i)) {
                *o = *o + a.conj() * vi;
            }
        }
        out
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.norm()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).fold(cz(), |acc, i| acc + self[(i, i)])
    }

    /// Largest entry of `self - self*`.
    pub fn hermitian_defect(&self) -> T {
        let mut m = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m = m.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        m
    }

    /// `(self + self*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    pub fn lu(&self) -> Lu<T> {
        Lu::new(self)
    }

    /// Solves `self x = rhs`; `None` when a pivot vanishes.
    pub fn solve(&self, rhs: &CMat<T>) -> Option<CMat<T>> {
        let lu = self.lu();
        if lu.is_singular() {
            None
        } else {
            Some(lu.solve(rhs))
        }
    }

    pub fn solve_vec(&self, rhs: &[C<T>]) -> Option<Vec<C<T>>> {
        self.solve(&CMat::column(rhs)).map(|m| m.data)
    }

    pub fn inverse(&self) -> Option<CMat<T>> {
        self.solve(&CMat::identity(self.rows))
    }

    pub fn det(&self) -> C<T> {
        self.lu().det()
    }

    /// Lower-triangular `L` with `self = L L*`, for Hermitian positive definite input.
    pub fn cholesky(&self) -> Option<CMat<T>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut l = CMat::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)].re;
            for k in 0..j {
                d = d - l[(j, k)].norm_sqr();
            }
            if !(d > T::zero()) {
                return None;
            }
            let djj = d.sqrt();
            l[(j, j)] = cr(djj);
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s = s - l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / djj;
            }
        }
        Some(l)
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Eigenvalues ascend; eigenvectors are the matching columns.
    pub fn hermitian_eigen(&self) -> (Vec<T>, CMat<T>) {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.hermitian_part();
        let mut v = CMat::identity(n);
        let scale = a.frobenius().max(T::min_positive_value());
        let eps = T::epsilon();
        for _sweep in 0..100 {
            let mut off = T::zero();
            for p in 0..n {
                for q in p + 1..n {
                    off = off + a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= eps * scale * T::lit(1e-2) {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    let mag = apq.norm();
                    if mag <= eps * eps * scale {
                        continue;
                    }
                    let phase = apq / mag;
                    let theta = (a[(q, q)].re - a[(p, p)].re) / (T::lit(2.0) * mag);
                    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    let t = if theta == T::zero() { T::one() } else { t };
                    let cth = T::one() / (t * t + T::one()).sqrt();
                    let sth = t * cth;
                    // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
                    let g_pp = cr(cth);
                    let g_pq = cr(sth);
                    let g_qp = phase.conj() * (-sth);
                    let g_qq = phase.conj() * cth;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * g_pp + akq * g_qp;
                        a[(k, q)] = akp * g_pq + akq * g_qq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * g_pp + vkq * g_qp;
                        v[(k, q)] = vkp * g_pq + vkq * g_qq;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(std::cmp::Ordering::Equal));
        let vals = order.iter().map(|&i| a[(i, i)].re).collect();
        let vecs = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
        (vals, vecs)
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<T> {
        let (vals, _) = (&self.adjoint() * self).hermitian_eigen();
        let mut s: Vec<T> = vals.into_iter().rev().map(|x| x.max(T::zero()).sqrt()).collect();
        s.truncate(self.cols.min(self.rows));
        s
    }

    /// Spectral condition number; infinite for singular input.
    pub fn cond(&self) -> T {
        let s = self.singular_values();
        match (s.first(), s.last()) {
            (Some(&hi), Some(&lo)) if lo > T::zero() => hi / lo,
            _ => T::infinity(),
        }
    }

    /// Hermitian square root of a Hermitian positive semidefinite matrix.
    pub fn hermitian_sqrt(&self) -> CMat<T> {
        let (vals, vecs) = self.hermitian_eigen();
        let n = self.rows;
        CMat::from_fn(n, n, |i, j| {
            (0..n).fold(cz(), |acc, k| acc + vecs[(i, k)] * vecs[(j, k)].conj() * vals[k].max(T::zero()).sqrt())
        })
    }
}

impl<T> Index<(usize, usize)> for CMat<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMat<T> {
    type Output = CMat<T>;
    fn mul(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == cz() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] = out.data[i * rhs.cols + j] + aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMat<T> {
    type Output = CMat<T>;
    fn add(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect() }
    }
}

impl<T: Real> Sub for &CMat<T> {
    type Output = CMat<T>;
    fn sub(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect() }
    }
}

impl<T: Real> Neg for &CMat<T> {
    type Output = CMat<T>;
    fn neg(self) -> CMat<T> {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -*a).collect() }
    }
}

/// LU factorization with partial pivoting.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: CMat<T>,
    perm: Vec<usize>,
    sign: i8,
    singular: bool,
}

impl<T: Real> Lu<T> {
    fn new(m: &CMat<T>) -> Self {
        assert!(m.is_square());
        let n = m.rows;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1i8;
        let mut singular = false;
        let scale = m.max_abs();
        let tiny = scale * T::epsilon() * T::lit(n.max(1) as f64);
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= tiny || pmax == T::zero() {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] = lu[(i, j)] - f * u;
                }
            }
        }
        Lu { lu, perm, sign, singular }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> C<T> {
        let n = self.lu.rows;
        let mut d = cr(if self.sign > 0 { T::one() } else { -T::one() });
        for i in 0..n {
            d = d * self.lu[(i, i)];
        }
        d
    }

    pub fn solve(&self, rhs: &CMat<T>) -> CMat<T> {
        let n = self.lu.rows;
        assert_eq!(rhs.rows, n);
        let mut x = CMat::from_fn(n, rhs.cols, |i, j| rhs[(self.perm[i], j)]);
        for j in 0..rhs.cols {
            for i in 0..n {
                let mut s = x[(i, j)];
                for k in 0..i {
                    s = s - self.lu[(i, k)] * x[(k, j)];
                }
                x[(i, j)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, j)];
                for k in i + 1..n {
                    s = s - self.lu[(i, k)] * x[(k, j)];
                }
                x[(i, j)] = s / self.lu[(i, i)];
            }
        }
        x
    }

    pub fn solve_vec(&self, rhs: &[C<T>]) -> Vec<C<T>> {
        self.solve(&CMat::column(rhs)).data
    }
}

/// Least-squares solution of the real system `a x ≈ b` by Householder QR.
///
/// `a` is column-major with `rows >= cols`.
pub fn real_lstsq<T: Real>(a: &[T], rows: usize, cols: usize, b: &[T]) -> Vec<T> {
    assert!(rows >= cols && a.len() == rows * cols && b.len() == rows);
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut diag = vec![T::zero(); cols];
    for k in 0..cols {
        let col = &mut a[k * rows..(k + 1) * rows];
        let norm = col[k..].iter().map(|x| *x * *x).sum::<T>().sqrt();
        if norm == T::zero() {
            diag[k] = T::zero();
            continue;
        }
        let alpha = if col[k] > T::zero() { -norm } else { norm };
        col[k] = col[k] - alpha;
        let vnorm2 = col[k..].iter().map(|x| *x * *x).sum::<T>();
        diag[k] = alpha;
        if vnorm2 == T::zero() {
            continue;
        }
        let v: Vec<T> = col[k..].to_vec();
        for j in k + 1..cols {
            let cj = &mut a[j * rows..(j + 1) * rows];
            let s = v.iter().zip(&cj[k..]).map(|(x, y)| *x * *y).sum::<T>() * T::lit(2.0) / vnorm2;
            for (y, x) in cj[k..].iter_mut().zip(&v) {
                *y = *y - s * *x;
            }
        }
        let s = v.iter().zip(&b[k..]).map(|(x, y)| *x * *y).sum::<T>() * T::lit(2.0) / vnorm2;
        for (y, x) in b[k..].iter_mut().zip(&v) {
            *y = *y - s * *x;
        }
    }
    let rmax = diag.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let cutoff = rmax * T::epsilon() * T::lit((rows.max(cols)) as f64);
    let mut x = vec![T::zero(); cols];
    for k in (0..cols).rev() {
        if diag[k].abs() <= cutoff {
            x[k] = T::zero();
            continue;
        }
        let mut s = b[k];
        for j in k + 1..cols {
            s = s - a[j * rows + k] * x[j];
        }
        x[k] = s / diag[k];
    }
    x
}

/// Squared residual of the least-squares projection of `target` onto the
/// span of `columns` (complex, Euclidean inner product), via modified
/// Gram-Schmidt with one reorthogonalization pass.
pub fn projection_residual_sq<T: Real>(columns: &[Vec<C<T>>], target: &[C<T>]) -> T {
    let mut basis: Vec<Vec<C<T>>> = Vec::with_capacity(columns.len());
    let scale = columns.iter().map(|c| norm2(c)).fold(T::zero(), T::max);
    for col in columns {
        let mut v = col.clone();
        for _ in 0..2 {
            for q in &basis {
                let proj = inner(&v, q);
                for (x, y) in v.iter_mut().zip(q) {
                    *x = *x - proj * *y;
                }
            }
        }
        let n = norm2(&v);
        if n > scale * T::epsilon() * T::lit(1e3) {
            basis.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    let mut r = target.to_vec();
    for _ in 0..2 {
        for q in &basis {
            let proj = inner(&r, q);
            for (x, y) in r.iter_mut().zip(q) {
                *x = *x - proj * *y;
            }
        }
    }
    r.iter().map(|x| x.norm_sqr()).sum()
}

/// Euclidean `⟨x, y⟩ = Σ x_i conj(y_i)`.
pub fn inner<T: Real>(x: &[C<T>], y: &[C<T>]) -> C<T> {
    x.iter().zip(y).fold(cz(), |acc, (a, b)| acc + *a * b.conj())
}

pub fn norm2<T: Real>(x: &[C<T>]) -> T {
    x.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, rng: &mut ChaCha8Rng) -> CMat<f64> {
        CMat::from_fn(n, n, |_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn lu_solves_and_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random(5, &mut rng);
        let b = random(5, &mut rng);
        let x = a.solve(&b).unwrap();
        assert!((&(&a * &x) - &b).max_abs() < 1e-12);
        let d2 = CMat::<f64>::from_fn(2, 2, |i, j| [[c(1.0, 0.0), c(2.0, 0.0)], [c(3.0, 0.0), c(4.0, 0.0)]][i][j]);
        let diff: C<f64> = d2.det() - c::<f64>(-2.0, 0.0);
        assert!(diff.norm() < 1e-14);
    }

    #[test]
    fn singular_matrix_detected() {
        let m = CMat::<f64>::from_fn(2, 2, |_, _| c(1.0, 1.0));
        assert!(m.solve(&CMat::identity(2)).is_none());
    }

    #[test]
    fn jacobi_reconstructs_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..7 {
            let r = random(n, &mut rng);
            let h = (&r + &r.adjoint()).scale_re(0.5);
            let (vals, vecs) = h.hermitian_eigen();
            for w in vals.windows(2) {
                assert!(w[0] <= w[1]);
            }
            let d = CMat::from_fn(n, n, |i, j| if i == j { cr(vals[i]) } else { cz() });
            let rec = &(&vecs * &d) * &vecs.adjoint();
            assert!((&rec - &h).max_abs() < 1e-12, "n = {n}");
            assert!((&(&vecs.adjoint() * &vecs) - &CMat::identity(n)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn cholesky_and_sqrt() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = random(4, &mut rng);
        let h = &(&r.adjoint() * &r) + &CMat::identity(4);
        let l = h.cholesky().unwrap();
        assert!((&(&l * &l.adjoint()) - &h).max_abs() < 1e-12);
        let s = h.hermitian_sqrt();
        assert!((&(&s * &s) - &h).max_abs() < 1e-12);
        assert!((-&CMat::<f64>::identity(2)).cholesky().is_none());
    }

    #[test]
    fn lstsq_recovers_consistent_solution() {
        // 4x2 system with exact solution (1, -2)
        let a: Vec<f64> = vec![1.0, 0.0, 1.0, 2.0, 0.0, 1.0, 1.0, -1.0];
        let b: Vec<f64> = vec![1.0, -2.0, -1.0, 4.0];
        let x = real_lstsq(&a, 4, 2, &b);
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] + 2.0).abs() < 1e-14);
    }

    #[test]
    fn projection_residual_orthogonal_complement() {
        let cols: Vec<Vec<C<f64>>> = vec![vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]];
        let t: Vec<C<f64>> = vec![c(3.0, 0.0), c(-1.0, 2.0), c(0.0, 2.0)];
        assert!((projection_residual_sq(&cols, &t) - 4.0).abs() < 1e-14);
    }
}
