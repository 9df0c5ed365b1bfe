//! Dense real matrices and a cyclic Jacobi eigensolver.

use crate::error::{Error, Result};

pub const SYMMETRY_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 64;
/// Sweeps stop once the off-diagonal Frobenius norm falls below this
/// fraction of `‖M‖_F`.
pub const JACOBI_TARGET: f64 = 1e-13;
/// Convergence failure is reported only above this fraction.
pub const JACOBI_ACCEPT: f64 = 1e-10;

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch { expected: n, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &x) in values.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn check_symmetric(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let (a, b) = (self[(i, j)], self[(j, i)]);
                if (a - b).abs() > SYMMETRY_TOL * a.abs().max(1.0) {
                    return Err(Error::AsymmetricMatrix(i, j));
                }
            }
        }
        Ok(())
    }

    fn off_diagonal(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self[(i, j)] * self[(i, j)];
                }
            }
        }
        s.sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Eigenvalues sorted descending, with eigenvectors as columns in the same order.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

impl Eigen {
    /// `max_k ‖M v_k − λ_k v_k‖₂`.
    pub fn residual(&self, m: &DenseMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&l, v)| {
                let mv = m.mul_vec(v);
                norm(&mv.iter().zip(v).map(|(a, b)| a - l * b).collect::<Vec<_>>())
            })
            .fold(0.0, f64::max)
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Each returned eigenvector has its largest-magnitude coordinate positive
/// (the first such coordinate on ties).
pub fn symmetric_eigen(m: &DenseMatrix) -> Result<Eigen> {
    m.check_symmetric()?;
    let n = m.n();
    let mut a = m.clone();
    // Symmetrise exactly so rotations see a consistent matrix.
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v = DenseMatrix::identity(n);
    let scale = m.frobenius();
    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal();
        if off <= JACOBI_TARGET * scale || scale == 0.0 {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            if off <= JACOBI_ACCEPT * scale {
                break;
            }
            return Err(Error::NotConverged { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|i| v[(i, k)]).collect();
            fix_sign(&mut col);
            col
        })
        .collect();
    Ok(Eigen { values, vectors, sweeps })
}

fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.n();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Flips `x` so its largest-magnitude coordinate is positive.
pub fn fix_sign(x: &mut [f64]) {
    let mut best = 0;
    for i in 1..x.len() {
        if x[i].abs() > x[best].abs() {
            best = i;
        }
    }
    if x.get(best).is_some_and(|&b| b < 0.0) {
        x.iter_mut().for_each(|e| *e = -*e);
    }
}

/// Solves `M x = b` by Gaussian elimination with partial pivoting.
pub fn solve(m: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = m.n();
    if b.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: b.len() });
    }
    let mut a = m.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
            .unwrap_or(col);
        if a[(pivot, col)] == 0.0 {
            return Err(Error::Internal("singular linear system".into()));
        }
        if pivot != col {
            for k in 0..n {
                let tmp = a[(col, k)];
                a[(col, k)] = a[(pivot, k)];
                a[(pivot, k)] = tmp;
            }
            x.swap(col, pivot);
        }
        for r in col + 1..n {
            let f = a[(r, col)] / a[(col, col)];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[(r, k)] -= f * a[(col, k)];
            }
            x[r] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        let s: f64 = (col + 1..n).map(|k| a[(col, k)] * x[k]).sum();
        x[col] = (x[col] - s) / a[(col, col)];
    }
    Ok(x)
}
