//! Small dense complex matrices with a Hermitian Jacobi eigensolver and a
//! one-sided Jacobi column orthogonalizer.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[&[Complex64]]) -> Self {
        let rows = columns.first().map_or(0, |c| c.len());
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(*v, 0.0);
        }
        m
    }

    /// The outer product `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
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

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry of `|A - A^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    /// `<v|A|v>`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> Complex64 {
        let av = self.mul_vec(v);
        v.iter().zip(&av).map(|(a, b)| a.conj() * b).sum()
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Eigenvalues are returned in ascending order with the
    /// matching eigenvectors as columns.
    pub fn eigh(&self) -> (Vec<f64>, CMatrix) {
        assert!(self.is_square(), "eigh needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        // Symmetrize so tiny asymmetries do not stall the sweep.
        for i in 0..n {
            a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
            for j in i + 1..n {
                let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
                a[(i, j)] = avg;
                a[(j, i)] = avg.conj();
            }
        }
        let mut v = CMatrix::identity(n);
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= 1e-16 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let Some(g) = rotation(a[(p, p)].re, a[(q, q)].re, a[(p, q)], 1e-300) else {
                        continue;
                    };
                    a.rotate_columns(p, q, &g);
                    a.rotate_rows_adjoint(p, q, &g);
                    v.rotate_columns(p, q, &g);
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
        (values, vectors)
    }

    /// Orthonormal basis of the column space, by one-sided Jacobi
    /// orthogonalization. Columns whose singular value falls at or below
    /// `threshold` are discarded. Returns the singular values (descending)
    /// alongside the kept basis vectors.
    pub fn column_space(&self, threshold: f64) -> (Vec<f64>, Vec<Vec<Complex64>>) {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        for _sweep in 0..80 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = ZERO;
                    for k in 0..m {
                        alpha += a[(k, p)].norm_sqr();
                        beta += a[(k, q)].norm_sqr();
                        gamma += a[(k, p)].conj() * a[(k, q)];
                    }
                    if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                        continue;
                    }
                    if let Some(g) = rotation(alpha, beta, gamma, 0.0) {
                        a.rotate_columns(p, q, &g);
                        rotated = true;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut cols: Vec<(f64, Vec<Complex64>)> = (0..n)
            .map(|j| {
                let c = a.column(j);
                let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                (norm, c)
            })
            .collect();
        cols.sort_by(|x, y| y.0.total_cmp(&x.0));
        let singular = cols.iter().map(|c| c.0).collect();
        let basis = cols
            .into_iter()
            .filter(|(s, _)| *s > threshold)
            .map(|(s, c)| c.into_iter().map(|z| z / s).collect())
            .collect();
        (singular, basis)
    }

    fn rotate_columns(&mut self, p: usize, q: usize, g: &[Complex64; 4]) {
        let [gpp, gpq, gqp, gqq] = *g;
        for k in 0..self.rows {
            let akp = self[(k, p)];
            let akq = self[(k, q)];
            self[(k, p)] = akp * gpp + akq * gqp;
            self[(k, q)] = akp * gpq + akq * gqq;
        }
    }

    fn rotate_rows_adjoint(&mut self, p: usize, q: usize, g: &[Complex64; 4]) {
        let [gpp, gpq, gqp, gqq] = *g;
        for k in 0..self.cols {
            let apk = self[(p, k)];
            let aqk = self[(q, k)];
            self[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
            self[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
        }
    }
}

/// Unitary 2x2 rotation `[g_pp, g_pq, g_qp, g_qq]` that diagonalizes the
/// Hermitian block `[[app, apq], [conj(apq), aqq]]`.
fn rotation(app: f64, aqq: f64, apq: Complex64, tiny: f64) -> Option<[Complex64; 4]> {
    let r = apq.norm();
    if r <= tiny {
        return None;
    }
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let e = phase.conj();
    Some([Complex64::new(c, 0.0), Complex64::new(s, 0.0), e * (-s), e * c])
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Euclidean inner product `<a|b>`, conjugate-linear in `a`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let g = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        &g + &g.adjoint()
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[1usize, 2, 3, 5, 8, 16, 33] {
            let a = random_hermitian(n, &mut rng);
            let (vals, vecs) = a.eigh();
            let recon = &(&vecs * &CMatrix::diagonal(&vals)) * &vecs.adjoint();
            assert!((&recon - &a).frobenius_norm() < 1e-12 * (n as f64), "n = {n}");
            let gram = &vecs.adjoint() * &vecs;
            assert!((&gram - &CMatrix::identity(n)).frobenius_norm() < 1e-12 * (n as f64));
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eigh_of_diagonal_is_exact() {
        let d = CMatrix::diagonal(&[0.75, 0.25]);
        let (vals, _) = d.eigh();
        assert_eq!(vals, vec![0.25, 0.75]);
    }

    #[test]
    fn column_space_detects_rank() {
        let e1 = [Complex64::new(1.0, 0.0), ZERO, ZERO];
        let e2 = [ZERO, Complex64::new(0.0, 1.0), ZERO];
        let mix: Vec<Complex64> = e1.iter().zip(&e2).map(|(a, b)| (a + b * 2.0) / 5f64.sqrt()).collect();
        let m = CMatrix::from_columns(&[&e1, &e2, &mix]);
        let (sv, basis) = m.column_space(1e-9);
        assert_eq!(basis.len(), 2);
        assert!(sv[2] < 1e-14);
        assert!((inner(&basis[0], &basis[1])).norm() < 1e-14);
    }
}
