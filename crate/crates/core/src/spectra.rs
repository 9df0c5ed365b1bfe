//! Normalized adjacency matrices, singular values through the symmetric lift,
//! and the stationary distribution.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Digraph, DEFAULT_EULERIAN_TOL};
use crate::linalg::{self, symmetric_eigen, DenseMatrix, Eigen};

/// Eigenvalues closer than this are treated as one cluster.
pub const CLUSTER_GAP: f64 = 1e-8;
pub const PAIRING_TOL: f64 = 1e-8;
/// Vertex count up to which the stationary distribution is found by a
/// direct linear solve.
pub const DIRECT_SOLVE_MAX_N: usize = 512;
pub const STATIONARY_RESIDUAL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub sigmas: Vec<f64>,
    /// Eigenvalues of the normalized adjacency, for undirected graphs only.
    pub mus: Option<Vec<f64>>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPair {
    pub sigma2: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

fn check_degrees(g: &Digraph) -> Result<()> {
    for v in 0..g.n() {
        if g.out_degrees()[v].is_zero() || g.in_degrees()[v].is_zero() {
            return Err(Error::ZeroDegree(v));
        }
    }
    if !g.is_eulerian(DEFAULT_EULERIAN_TOL) {
        return Err(Error::NotEulerian);
    }
    Ok(())
}

/// `A(u, v) = w(u, v) / √(d⁺(u) d⁻(v))`.
pub fn normalized_adjacency(g: &Digraph) -> Result<DenseMatrix> {
    check_degrees(g)?;
    let mut a = DenseMatrix::zeros(g.n());
    for (u, v, w) in g.edges() {
        let w = num_traits::ToPrimitive::to_f64(w).unwrap_or(f64::NAN);
        a[(u, v)] = w / (g.out_degree_f64(u) * g.in_degree_f64(v)).sqrt();
    }
    Ok(a)
}

/// `W(u, v) = w(u, v) / d⁺(u)`.
pub fn random_walk_matrix(g: &Digraph) -> Result<DenseMatrix> {
    if let Some(v) = (0..g.n()).find(|&v| g.out_degrees()[v].is_zero()) {
        return Err(Error::ZeroOutDegree(v));
    }
    let mut m = DenseMatrix::zeros(g.n());
    for (u, v, w) in g.edges() {
        m[(u, v)] = num_traits::ToPrimitive::to_f64(w).unwrap_or(f64::NAN) / g.out_degree_f64(u);
    }
    Ok(m)
}

pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(symmetric_eigen(m)?.values)
}

/// Normalized adjacency of `sl(G)` and its eigendecomposition.
pub fn lift_eigen(g: &Digraph) -> Result<(DenseMatrix, Eigen)> {
    check_degrees(g)?;
    let a = normalized_adjacency(&g.symmetric_lift())?;
    let eigen = symmetric_eigen(&a)?;
    let vals = &eigen.values;
    let m = vals.len();
    for i in 0..m {
        if (vals[i] + vals[m - 1 - i]).abs() > PAIRING_TOL {
            return Err(Error::SpectralCheck(format!(
                "lift eigenvalues not symmetric: {} vs {}",
                vals[i],
                vals[m - 1 - i]
            )));
        }
    }
    Ok((a, eigen))
}

/// Singular values of `A_G`, read off the non-negative half of the lift
/// spectrum. Undirected graphs also get `μ` from `A_G` directly.
pub fn singular_values(g: &Digraph) -> Result<Spectrum> {
    let (a_lift, eigen) = lift_eigen(g)?;
    let n = g.n();
    let sigmas: Vec<f64> = eigen.values[..n].iter().map(|&x| x.max(0.0)).collect();
    let mut residual = eigen.residual(&a_lift);
    let mus = if g.is_undirected() {
        let a = normalized_adjacency(g)?;
        let e = symmetric_eigen(&a)?;
        residual = residual.max(e.residual(&a));
        let mus = e.values;
        if n >= 2 {
            let expect = mus[1].max(mus[n - 1].abs());
            if (sigmas[1] - expect).abs() > PAIRING_TOL {
                return Err(Error::SpectralCheck(format!(
                    "σ₂ = {} but max(μ₂, |μₙ|) = {expect}",
                    sigmas[1]
                )));
            }
        }
        Some(mus)
    } else {
        None
    };
    Ok(Spectrum { sigmas, mus, residual })
}

/// Unit vector `(√d⁺, √d⁻) / √(2 vol)`, the top eigenvector of the lift.
fn lift_top_vector(g: &Digraph) -> Vec<f64> {
    let mut z: Vec<f64> = (0..g.n())
        .map(|v| g.out_degree_f64(v).sqrt())
        .chain((0..g.n()).map(|v| g.in_degree_f64(v).sqrt()))
        .collect();
    let nz = linalg::norm(&z);
    z.iter_mut().for_each(|x| *x /= nz);
    z
}

/// Orthonormal basis of the lift eigenspace for `σ₂`, with the known top
/// eigenvector projected out when `σ₂` coincides with `σ₁`.
pub fn second_eigen_cluster(g: &Digraph) -> Result<(f64, Vec<Vec<f64>>)> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter("second singular value needs n ≥ 2".into()));
    }
    let (_, eigen) = lift_eigen(g)?;
    let sigma2 = eigen.values[1].max(0.0);
    let top = lift_top_vector(g);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for (val, vec) in eigen.values.iter().zip(&eigen.vectors) {
        if (val - eigen.values[1]).abs() >= CLUSTER_GAP {
            continue;
        }
        // Gram–Schmidt against the top vector and the vectors already kept.
        let mut x = vec.clone();
        for b in std::iter::once(&top).chain(basis.iter()) {
            let c = linalg::dot(&x, b);
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= c * bi);
        }
        let nx = linalg::norm(&x);
        if nx > 1e-6 {
            x.iter_mut().for_each(|xi| *xi /= nx);
            linalg::fix_sign(&mut x);
            basis.push(x);
        }
    }
    if basis.is_empty() {
        return Err(Error::SpectralCheck("empty second eigenspace".into()));
    }
    Ok((sigma2, basis))
}

fn unit(mut x: Vec<f64>) -> Option<Vec<f64>> {
    let nx = linalg::norm(&x);
    if nx < 1e-9 {
        return None;
    }
    x.iter_mut().for_each(|e| *e /= nx);
    linalg::fix_sign(&mut x);
    Some(x)
}

/// `σ₂` with unit left/right singular vectors taken from the halves of a
/// lift eigenvector.
pub fn second_singular_pair(g: &Digraph) -> Result<SingularPair> {
    let (sigma2, basis) = second_eigen_cluster(g)?;
    let n = g.n();
    let heaviest = |range: std::ops::Range<usize>| {
        basis
            .iter()
            .map(|b| b[range.clone()].to_vec())
            .max_by(|a, b| linalg::norm(a).total_cmp(&linalg::norm(b)))
            .and_then(unit)
    };
    let (left, right) = if sigma2 > CLUSTER_GAP {
        // Both halves of any lift eigenvector for σ > 0 carry equal mass.
        let best = basis
            .iter()
            .max_by(|a, b| linalg::norm(&a[..n]).total_cmp(&linalg::norm(&b[..n])))
            .expect("non-empty basis");
        let (l, r) = best.split_at(n);
        let (nl, nr) = (linalg::norm(l), linalg::norm(r));
        if nl < 1e-9 || nr < 1e-9 {
            (None, None)
        } else {
            let mut l: Vec<f64> = l.iter().map(|x| x / nl).collect();
            let mut r: Vec<f64> = r.iter().map(|x| x / nr).collect();
            // Flip both halves together so A r = σ l keeps its sign.
            let before = l.clone();
            linalg::fix_sign(&mut l);
            if l != before {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            (Some(l), Some(r))
        }
    } else {
        (heaviest(0..n), heaviest(n..2 * n))
    };
    match (left, right) {
        (Some(left), Some(right)) => Ok(SingularPair { sigma2, left, right }),
        _ => Err(Error::SpectralCheck("could not split lift eigenvector".into())),
    }
}

/// Stationary distribution of the random walk on `g`.
pub fn stationary_distribution(g: &Digraph) -> Result<Vec<f64>> {
    g.check_markov()?;
    let n = g.n();
    let w = random_walk_matrix(g)?;
    let mut pi = if n <= DIRECT_SOLVE_MAX_N {
        let mut m = DenseMatrix::zeros(n);
        for u in 0..n {
            for v in 0..n {
                m[(v, u)] = w[(u, v)];
            }
        }
        for v in 0..n {
            m[(v, v)] -= 1.0;
        }
        for u in 0..n {
            m[(n - 1, u)] = 1.0;
        }
        let mut b = vec![0.0; n];
        b[n - 1] = 1.0;
        linalg::solve(&m, &b)?
    } else {
        power_iteration(&w)?
    };
    pi.iter_mut().for_each(|p| *p = p.max(0.0));
    let s: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|p| *p /= s);
    let res = walk_residual(&w, &pi);
    if res > 1e-10 {
        return Err(Error::SpectralCheck(format!("stationary residual {res:e}")));
    }
    Ok(pi)
}

fn step(w: &DenseMatrix, pi: &[f64]) -> Vec<f64> {
    let n = w.n();
    let mut next = vec![0.0; n];
    for (u, &p) in pi.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for (v, x) in next.iter_mut().enumerate() {
            *x += p * w[(u, v)];
        }
    }
    next
}

fn walk_residual(w: &DenseMatrix, pi: &[f64]) -> f64 {
    step(w, pi).iter().zip(pi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Lazy walk `π ← (π + πW)/2`, which converges on periodic chains too.
fn power_iteration(w: &DenseMatrix) -> Result<Vec<f64>> {
    let n = w.n();
    let mut pi = vec![1.0 / n as f64; n];
    for _ in 0..POWER_MAX_ITERS {
        let next = step(w, &pi);
        let res = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if res <= STATIONARY_RESIDUAL {
            return Ok(pi);
        }
        pi.iter_mut().zip(&next).for_each(|(p, q)| *p = 0.5 * (*p + q));
    }
    Err(Error::NotConverged { sweeps: POWER_MAX_ITERS, off: walk_residual(w, &pi) })
}
