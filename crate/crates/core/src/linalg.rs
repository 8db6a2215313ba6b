//! Small dense linear algebra for the samplers: real and complex matrices,
//! Gram-Schmidt orthonormalization, Cholesky solves, LU determinants, and
//! symmetric/Hermitian eigenvalues by cyclic Jacobi rotations.
//!
//! Sizes stay tiny (n <= a few dozen for samplers, <= a few hundred for
//! quadrature node computations), so O(n^3) with plain loops is plenty.

use num_complex::Complex64;

/// Dense row-major real matrix.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Maximum absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Orthonormalizes the columns of a square real matrix in place (modified
/// Gram-Schmidt with one reorthogonalization pass). Returns `None` when a
/// column collapses numerically.
pub fn orthonormalize(a: &mut Mat) -> Option<()> {
    let n = a.rows;
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = 0.0;
                for i in 0..n {
                    dot += a[(i, k)] * a[(i, j)];
                }
                for i in 0..n {
                    a[(i, j)] -= dot * a[(i, k)];
                }
            }
        }
        let norm: f64 = (0..n).map(|i| a[(i, j)] * a[(i, j)]).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for i in 0..n {
            a[(i, j)] /= norm;
        }
    }
    Some(())
}

/// Complex version of [`orthonormalize`].
pub fn orthonormalize_c(a: &mut CMat) -> Option<()> {
    let n = a.rows;
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    dot += a[(i, k)].conj() * a[(i, j)];
                }
                for i in 0..n {
                    let d = dot * a[(i, k)];
                    a[(i, j)] -= d;
                }
            }
        }
        let norm: f64 = (0..n).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for i in 0..n {
            a[(i, j)] /= norm;
        }
    }
    Some(())
}

/// Orthonormal basis of the column span of a thin `rows x cols` matrix
/// (`cols <= rows`); `None` on rank collapse.
pub fn thin_orthonormal_columns(a: &Mat) -> Option<Mat> {
    let mut q = a.clone();
    let (n, m) = (q.rows, q.cols);
    for j in 0..m {
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = 0.0;
                for i in 0..n {
                    dot += q[(i, k)] * q[(i, j)];
                }
                for i in 0..n {
                    q[(i, j)] -= dot * q[(i, k)];
                }
            }
        }
        let norm: f64 = (0..n).map(|i| q[(i, j)] * q[(i, j)]).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for i in 0..n {
            q[(i, j)] /= norm;
        }
    }
    Some(q)
}

/// Complex version of [`thin_orthonormal_columns`].
pub fn thin_orthonormal_columns_c(a: &CMat) -> Option<CMat> {
    let mut q = a.clone();
    let (n, m) = (q.rows, q.cols);
    for j in 0..m {
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    dot += q[(i, k)].conj() * q[(i, j)];
                }
                for i in 0..n {
                    let d = dot * q[(i, k)];
                    q[(i, j)] -= d;
                }
            }
        }
        let norm: f64 = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for i in 0..n {
            q[(i, j)] /= norm;
        }
    }
    Some(q)
}

/// Solves `A X = B` for symmetric positive definite `A` via Cholesky;
/// `None` when a pivot fails.
pub fn cholesky_solve(a: &Mat, b: &Mat) -> Option<Mat> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(b.rows, n);
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[(i, j)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    // Forward then back substitution, column by column.
    let mut x = b.clone();
    for c in 0..b.cols {
        for i in 0..n {
            let mut sum = x[(i, c)];
            for k in 0..i {
                sum -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = sum / l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut sum = x[(i, c)];
            for k in i + 1..n {
                sum -= l[(k, i)] * x[(k, c)];
            }
            x[(i, c)] = sum / l[(i, i)];
        }
    }
    Some(x)
}

/// Determinant by LU with partial pivoting.
pub fn det(a: &Mat) -> f64 {
    let n = a.rows;
    let mut m = a.clone();
    let mut sign = 1.0;
    let mut out = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if m[(r, col)].abs() > m[(pivot, col)].abs() {
                pivot = r;
            }
        }
        if m[(pivot, col)] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            sign = -sign;
        }
        out *= m[(col, col)];
        for r in col + 1..n {
            let f = m[(r, col)] / m[(col, col)];
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                let d = f * m[(col, j)];
                m[(r, j)] -= d;
            }
        }
    }
    sign * out
}

/// Complex determinant by LU with partial pivoting.
pub fn det_c(a: &CMat) -> Complex64 {
    let n = a.rows;
    let mut m = a.clone();
    let mut out = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if m[(r, col)].norm_sqr() > m[(pivot, col)].norm_sqr() {
                pivot = r;
            }
        }
        if m[(pivot, col)].norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            out = -out;
        }
        out *= m[(col, col)];
        for r in col + 1..n {
            let f = m[(r, col)] / m[(col, col)];
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for j in col..n {
                let d = f * m[(col, j)];
                m[(r, j)] -= d;
            }
        }
    }
    out
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a real symmetric
/// matrix by cyclic Jacobi rotations; off-diagonal norm threshold 1e-13
/// relative to the matrix scale.
pub fn jacobi_eigen(a: &Mat) -> (Vec<f64>, Mat) {
    let n = a.rows;
    let mut m = a.clone();
    let mut v = Mat::identity(n);
    let scale = a.data.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[(i, j)] * m[(i, j)];
            }
        }
        if off.sqrt() <= 1e-13 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Mat::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, new)] = v[(k, old)];
        }
    }
    (eigenvalues, vectors)
}

/// Eigenvalues of a Hermitian matrix via the real symmetric embedding
/// `[[Re, -Im], [Im, Re]]` (each eigenvalue appears twice).
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    let n = a.rows;
    let mut big = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            big[(i, j)] = z.re;
            big[(i + n, j + n)] = z.re;
            big[(i + n, j)] = z.im;
            big[(i, j + n)] = -z.im;
        }
    }
    let (ev, _) = jacobi_eigen(&big);
    // Keep every second one.
    ev.into_iter().step_by(2).collect()
}
