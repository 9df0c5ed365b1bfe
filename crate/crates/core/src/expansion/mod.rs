//! Exact conductance-type quantities and their exhaustive minimisers.
//!
//! Minimisers enumerate subsets as increasing bitmasks (pairs with `S` as the
//! outer loop) and keep the first minimiser met, so witnesses are reproducible
//! and independent of the thread count.

mod kway;
mod vertex;

pub use kway::{min_phi_k_dir, min_rho_k_dir, rho_k, PartitionFamily, SetFamily};
pub use vertex::{magnifier_constant, vertex_expansion, ExpansionProfile, SizeMinimum};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{Ratio, ScaledWeights};
use crate::graph::{Digraph, Side, VertexSet, DEFAULT_EULERIAN_TOL};

/// Size caps for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Pair enumeration (`4ⁿ` and `3ⁿ` loops).
    pub pair_n: usize,
    /// Single-subset enumeration (`2ⁿ` loops).
    pub subset_n: usize,
    pub kway_n: usize,
    pub kway_k: usize,
    /// Vertex-expansion enumeration; needs `n ≤ 64`.
    pub vertex_n: usize,
    /// Maximum number of sets visited by one vertex-expansion run.
    pub vertex_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { pair_n: 12, subset_n: 16, kway_n: 9, kway_k: 3, vertex_n: 32, vertex_budget: 50_000_000 }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, n: usize, cap: usize) -> Result<()> {
        if n > cap {
            Err(Error::CapExceeded { what, n, cap })
        } else {
            Ok(())
        }
    }
}

/// A pair `(S, T)` with its directed conductance
/// `(e(S,Tᶜ) + e(Sᶜ,T)) / (vol⁺(S) + vol⁻(T))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutPair {
    pub s: VertexSet,
    pub t: VertexSet,
    pub numerator: BigRational,
    pub denominator: BigRational,
    pub value: BigRational,
}

/// A single set and its conductance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValue {
    pub set: VertexSet,
    pub value: BigRational,
}

/// `y ∈ {−1, 0, 1}ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|&e| !(-1..=1).contains(&e)) {
            return Err(Error::InvalidParameter("sign entries must be -1, 0 or 1".into()));
        }
        Ok(SignVector(entries))
    }

    /// `(A, B) = ({y = +1}, {y = −1})`.
    pub fn sets(&self) -> (VertexSet, VertexSet) {
        let n = self.0.len();
        let pick = |s: i8| VertexSet::from_indices(n, (0..n).filter(|&v| self.0[v] == s)).expect("in range");
        (pick(1), pick(-1))
    }
}

fn require_eulerian(g: &Digraph) -> Result<()> {
    if g.is_eulerian(DEFAULT_EULERIAN_TOL) {
        Ok(())
    } else {
        Err(Error::NotEulerian)
    }
}

pub fn phi(g: &Digraph, s: &VertexSet) -> Result<BigRational> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let vol = g.volume(s, Side::Out)?;
    if vol.is_zero() {
        return Err(Error::ZeroVolume);
    }
    Ok(g.edge_mass(s, &s.complement())? / vol)
}

pub fn phi_dir(g: &Digraph, s: &VertexSet, t: &VertexSet) -> Result<CutPair> {
    let numerator = g.edge_mass(s, &t.complement())? + g.edge_mass(&s.complement(), t)?;
    let denominator = g.volume(s, Side::Out)? + g.volume(t, Side::In)?;
    if denominator.is_zero() {
        return Err(Error::ZeroVolume);
    }
    let value = &numerator / &denominator;
    Ok(CutPair { s: s.clone(), t: t.clone(), numerator, denominator, value })
}

fn mask_set(n: usize, mask: usize) -> VertexSet {
    VertexSet::from_mask(n, mask as u64)
}

/// Keeps the smaller ratio, then the smaller key.
fn better<K: Ord>(a: Option<(Ratio, K)>, b: Option<(Ratio, K)>) -> Option<(Ratio, K)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if (b.0, &b.1) < (a.0, &a.1) { b } else { a }),
    }
}

/// `φ(G) = min φ(S)` over `0 < vol(S) ≤ vol(V)/2`.
pub fn min_phi(g: &Digraph, limits: &Limits) -> Result<SetValue> {
    require_eulerian(g)?;
    Limits::check("min_phi", g.n(), limits.subset_n)?;
    let sw = ScaledWeights::new(g)?;
    let n = sw.n();
    let vol = ScaledWeights::subset_sums(sw.out_deg());
    let internal = sw.internal_mass();
    let total = sw.total();
    let best = (1usize..1 << n)
        .into_par_iter()
        .filter(|&m| vol[m] > 0 && 2 * vol[m] <= total)
        .map(|m| Some((Ratio::new(vol[m] - internal[m], vol[m]), m)))
        .reduce(|| None, better);
    let (_, m) = best.ok_or(Error::ZeroVolume)?;
    let set = mask_set(n, m);
    Ok(SetValue { value: phi(g, &set)?, set })
}

/// Enumerates pairs `(S, T)` accepted by `keep(s, t, den)`, returning the
/// first minimiser of `φ_dir`.
fn min_pair<F>(sw: &ScaledWeights, keep: F) -> Option<(Ratio, (usize, usize))>
where
    F: Fn(usize, usize, i128) -> bool + Sync,
{
    let n = sw.n();
    let vol_out = ScaledWeights::subset_sums(sw.out_deg());
    let vol_in = ScaledWeights::subset_sums(sw.in_deg());
    (0usize..1 << n)
        .into_par_iter()
        .map(|s| {
            let row = sw.row_into(s);
            let mut e = vec![0i128; 1 << n];
            let mut best: Option<(Ratio, (usize, usize))> = None;
            for t in 0usize..1 << n {
                if t > 0 {
                    let low = t.trailing_zeros() as usize;
                    e[t] = e[t & (t - 1)] + row[low];
                }
                let den = vol_out[s] + vol_in[t];
                if den <= 0 || !keep(s, t, den) {
                    continue;
                }
                let r = Ratio::new(den - 2 * e[t], den);
                if best.as_ref().is_none_or(|b| r < b.0) {
                    best = Some((r, (s, t)));
                }
            }
            best
        })
        .reduce(|| None, better)
}

fn pair_result(g: &Digraph, best: Option<(Ratio, (usize, usize))>) -> Result<CutPair> {
    let (_, (s, t)) = best.ok_or(Error::ZeroVolume)?;
    phi_dir(g, &mask_set(g.n(), s), &mask_set(g.n(), t))
}

/// `φ_dir(G)` over all pairs with `0 < vol(S) + vol(T) ≤ vol(V)`.
pub fn min_phi_dir(g: &Digraph, limits: &Limits) -> Result<CutPair> {
    require_eulerian(g)?;
    Limits::check("min_phi_dir", g.n(), limits.pair_n)?;
    let sw = ScaledWeights::new(g)?;
    let total = sw.total();
    pair_result(g, min_pair(&sw, |_, _, den| den <= total))
}

/// Minimum of `φ_dir(S, T)` over `|S| = |T|` within the same volume window as
/// [`min_phi_dir`]. The window rules out `(V, V)` and every other pair whose
/// complement pair has the same numerator and a smaller denominator.
///
/// Regularity is required unless `allow_irregular` is set.
pub fn min_phi_dir_balanced(g: &Digraph, limits: &Limits, allow_irregular: bool) -> Result<CutPair> {
    require_eulerian(g)?;
    if !allow_irregular && g.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    Limits::check("min_phi_dir_balanced", g.n(), limits.pair_n)?;
    let sw = ScaledWeights::new(g)?;
    let total = sw.total();
    pair_result(g, min_pair(&sw, |s, t, den| den <= total && s.count_ones() == t.count_ones()))
}

/// `β_dir(G)`: `φ_dir` minimised over disjoint pairs, not both empty.
pub fn min_beta_dir(g: &Digraph, limits: &Limits) -> Result<CutPair> {
    require_eulerian(g)?;
    Limits::check("min_beta_dir", g.n(), limits.pair_n)?;
    let sw = ScaledWeights::new(g)?;
    pair_result(g, min_pair(&sw, |s, t, _| s & t == 0))
}

fn require_undirected(g: &Digraph) -> Result<()> {
    if g.is_undirected() {
        Ok(())
    } else {
        Err(Error::NotUndirected)
    }
}

/// `β(y)` by both the sign-vector formula and the set formula
/// `(e(A) + e(B) + e(S, Sᶜ)) / vol(S)`; they must agree exactly.
pub fn beta_sign(g: &Digraph, y: &SignVector) -> Result<BigRational> {
    require_undirected(g)?;
    if y.0.len() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), found: y.0.len() });
    }
    if y.0.iter().all(|&e| e == 0) {
        return Err(Error::ZeroSignVector);
    }
    let mut num = BigRational::zero();
    for (u, v, w) in g.edges() {
        let s = (y.0[u] + y.0[v]).unsigned_abs();
        num += w * BigRational::from_integer(s.into());
    }
    let two = BigRational::from_integer(2.into());
    let den: BigRational = (0..g.n()).filter(|&v| y.0[v] != 0).map(|v| &g.out_degrees()[v]).sum();
    if den.is_zero() {
        return Err(Error::ZeroVolume);
    }
    let by_signs = num / (den * &two);

    let (a, b) = y.sets();
    let s = a.union(&b);
    let by_sets = (g.edge_mass(&a, &a)? + g.edge_mass(&b, &b)? + g.edge_mass(&s, &s.complement())?)
        / g.volume(&s, Side::Out)?;
    if by_signs != by_sets {
        return Err(Error::Internal(format!("β formulas disagree: {by_signs} vs {by_sets}")));
    }
    Ok(by_signs)
}

/// `β(G)` over all non-zero sign vectors, enumerated as base-3 counters with
/// vertex 0 least significant and digits `0, 1, 2 ↦ 0, +1, −1`.
pub fn min_beta(g: &Digraph, limits: &Limits) -> Result<(BigRational, SignVector)> {
    require_undirected(g)?;
    Limits::check("min_beta", g.n(), limits.pair_n)?;
    let sw = ScaledWeights::new(g)?;
    let n = sw.n();
    let edges: Vec<(usize, usize, i128)> =
        (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).map(|(u, v)| (u, v, sw.w(u, v))).filter(|e| e.2 > 0).collect();
    let count = 3usize.pow(n as u32);
    let decode = |mut code: usize| -> Vec<i8> {
        (0..n)
            .map(|_| {
                let d = code % 3;
                code /= 3;
                [0, 1, -1][d]
            })
            .collect()
    };
    let best = (1..count)
        .into_par_iter()
        .map(|code| {
            let y = decode(code);
            let num: i128 = edges.iter().map(|&(u, v, w)| w * (y[u] + y[v]).unsigned_abs() as i128).sum();
            let den: i128 = (0..n).filter(|&v| y[v] != 0).map(|v| sw.out_deg()[v]).sum();
            (den > 0).then(|| (Ratio::new(num, 2 * den), code))
        })
        .reduce(|| None, better);
    let (_, code) = best.ok_or(Error::ZeroVolume)?;
    let y = SignVector(decode(code));
    Ok((beta_sign(g, &y)?, y))
}
