//! k-way minimisers.
//!
//! A family of pairs `(Sᵢ, Tᵢ)` with the `Sᵢ` pairwise disjoint and the `Tᵢ`
//! pairwise disjoint is the same thing as `k` pairwise disjoint subsets of the
//! lift vertices `L ∪ R`. So every k-way quantity here is a min–max partition
//! problem over subsets of a bit universe, solved by dynamic programming over
//! submasks: `g₁(M)` is the best single item inside `M` and
//! `gⱼ(M) = min_{X ⊆ M} max(val(X), gⱼ₋₁(M ∖ X))`.

use num_rational::BigRational;
use rayon::prelude::*;

use super::{phi, phi_dir, require_eulerian, require_undirected, Limits};
use crate::error::{Error, Result};
use crate::exact::{Ratio, ScaledWeights};
use crate::graph::{Digraph, VertexSet};

const NONE: u32 = u32::MAX;

/// Pairs `(Sᵢ, Tᵢ)` realising a k-way minimum, sorted by `(Sᵢ, Tᵢ)` bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionFamily {
    pub k: usize,
    pub s: Vec<VertexSet>,
    pub t: Vec<VertexSet>,
    pub values: Vec<BigRational>,
    pub value: BigRational,
}

/// Disjoint sets realising `ρ_k`, sorted by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    pub sets: Vec<VertexSet>,
    pub values: Vec<BigRational>,
    pub value: BigRational,
}

/// Replaces each ratio by its rank among the distinct values.
fn ranks(values: &[Option<Ratio>]) -> (Vec<u32>, Vec<Ratio>) {
    let mut present: Vec<(Ratio, usize)> =
        values.iter().enumerate().filter_map(|(i, v)| v.map(|r| (r, i))).collect();
    present.par_sort_by(|a, b| a.0.cmp(&b.0));
    let mut rank = vec![NONE; values.len()];
    let mut distinct: Vec<Ratio> = Vec::new();
    for (r, i) in present {
        if distinct.last().is_none_or(|&d| d < r) {
            distinct.push(r);
        }
        rank[i] = (distinct.len() - 1) as u32;
    }
    (rank, distinct)
}

/// Splits `full` into `k` disjoint items minimising the worst item value.
/// Returns the optimal rank and the chosen item masks.
fn min_max_partition(bits: usize, val: &[u32], k: usize) -> Option<(u32, Vec<usize>)> {
    let size = 1usize << bits;
    let full = size - 1;
    // g1[m]: best single item inside m; arg1[m]: that item.
    let mut g = val.to_vec();
    let mut arg: Vec<u32> = (0..size as u32).map(|x| if val[x as usize] == NONE { NONE } else { x }).collect();
    for b in 0..bits {
        for m in 0..size {
            if m >> b & 1 == 1 {
                let sub = m ^ (1 << b);
                if (g[sub], arg[sub]) < (g[m], arg[m]) {
                    g[m] = g[sub];
                    arg[m] = arg[sub];
                }
            }
        }
    }
    let mut levels: Vec<(Vec<u32>, Vec<u32>)> = vec![(g, arg)];
    for j in 2..=k {
        let (prev, _) = levels.last().expect("level");
        let targets: Vec<usize> = if j == k { vec![full] } else { (0..size).collect() };
        let mut cur = vec![NONE; size];
        let mut choice = vec![NONE; size];
        let computed: Vec<(usize, u32, u32)> = targets
            .par_iter()
            .map(|&m| {
                let mut best = NONE;
                let mut pick = NONE;
                // Submasks in increasing order.
                let mut x = 0usize;
                loop {
                    x = (x.wrapping_sub(m)) & m;
                    if x == 0 {
                        break;
                    }
                    let (a, b) = (val[x], prev[m ^ x]);
                    if a != NONE && b != NONE {
                        let v = a.max(b);
                        if v < best {
                            best = v;
                            pick = x as u32;
                        }
                    }
                }
                (m, best, pick)
            })
            .collect();
        for (m, best, pick) in computed {
            cur[m] = best;
            choice[m] = pick;
        }
        levels.push((cur, choice));
    }
    let best = levels[k - 1].0[full];
    if best == NONE {
        return None;
    }
    let mut items = Vec::with_capacity(k);
    let mut m = full;
    for j in (1..=k).rev() {
        let x = levels[j - 1].1[m] as usize;
        items.push(x);
        m ^= x;
    }
    items.sort_unstable();
    Some((best, items))
}

fn check_k(k: usize, limits: &Limits) -> Result<()> {
    if k == 0 || k > limits.kway_k {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={}", limits.kway_k)));
    }
    Ok(())
}

/// `φ_dir` of every lift mask `S | T << n` with both parts non-empty and
/// accepted by `keep`.
fn pair_values(sw: &ScaledWeights, keep: impl Fn(usize, usize) -> bool + Sync) -> Vec<Option<Ratio>> {
    let n = sw.n();
    let vol_out = ScaledWeights::subset_sums(sw.out_deg());
    let vol_in = ScaledWeights::subset_sums(sw.in_deg());
    let rows: Vec<Vec<Option<Ratio>>> = (0usize..1 << n)
        .into_par_iter()
        .map(|s| {
            let row = sw.row_into(s);
            let mut e = vec![0i128; 1 << n];
            let mut out = vec![None; 1 << n];
            for t in 1usize..1 << n {
                let low = t.trailing_zeros() as usize;
                e[t] = e[t & (t - 1)] + row[low];
                let den = vol_out[s] + vol_in[t];
                if s != 0 && den > 0 && keep(s, t) {
                    out[t] = Some(Ratio::new(den - 2 * e[t], den));
                }
            }
            out
        })
        .collect();
    // Index by lift mask s | t << n.
    let mut values = vec![None; 1 << (2 * n)];
    for (s, row) in rows.into_iter().enumerate() {
        for (t, v) in row.into_iter().enumerate() {
            values[s | t << n] = v;
        }
    }
    values
}

fn family_from(g: &Digraph, k: usize, items: Vec<usize>) -> Result<PartitionFamily> {
    let n = g.n();
    let mut s = Vec::new();
    let mut t = Vec::new();
    let mut values = Vec::new();
    for x in items {
        let (sm, tm) = (x & ((1 << n) - 1), x >> n);
        let si = VertexSet::from_mask(n, sm as u64);
        let ti = VertexSet::from_mask(n, tm as u64);
        values.push(phi_dir(g, &si, &ti)?.value);
        s.push(si);
        t.push(ti);
    }
    let value = values.iter().max().cloned().ok_or(Error::EmptySet)?;
    Ok(PartitionFamily { k, s, t, values, value })
}

fn pair_family(g: &Digraph, k: usize, limits: &Limits, keep: impl Fn(usize, usize) -> bool + Sync) -> Result<PartitionFamily> {
    require_eulerian(g)?;
    Limits::check("k-way enumeration", g.n(), limits.kway_n)?;
    check_k(k, limits)?;
    if k > g.n() {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {}", g.n())));
    }
    let sw = ScaledWeights::new(g)?;
    let (rank, _) = ranks(&pair_values(&sw, keep));
    let (_, items) = min_max_partition(2 * g.n(), &rank, k).ok_or(Error::ZeroVolume)?;
    family_from(g, k, items)
}

/// `φ_{k,dir}(G)`: `k` pairs of non-empty sets, `Sᵢ` disjoint and `Tᵢ`
/// disjoint, minimising the largest `φ_dir(Sᵢ, Tᵢ)`.
pub fn min_phi_k_dir(g: &Digraph, k: usize, limits: &Limits) -> Result<PartitionFamily> {
    pair_family(g, k, limits, |_, _| true)
}

/// `ρ_{k,dir}(G)`: as [`min_phi_k_dir`] with each pair equal or disjoint.
pub fn min_rho_k_dir(g: &Digraph, k: usize, limits: &Limits) -> Result<PartitionFamily> {
    pair_family(g, k, limits, |s, t| s == t || s & t == 0)
}

/// `ρ_k(G)`: `k` disjoint non-empty sets minimising the largest `φ(Sᵢ)`.
/// Undirected graphs only; the vertex cap applies to `G` itself, so a lift
/// of an `n`-vertex graph needs `2n` within twice the k-way cap.
pub fn rho_k(g: &Digraph, k: usize, limits: &Limits) -> Result<SetFamily> {
    require_undirected(g)?;
    let n = g.n();
    Limits::check("rho_k", n, 2 * limits.kway_n)?;
    check_k(k, limits)?;
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let sw = ScaledWeights::new(g)?;
    let vol = ScaledWeights::subset_sums(sw.out_deg());
    let internal = sw.internal_mass();
    let values: Vec<Option<Ratio>> =
        (0..1usize << n).map(|m| (m != 0 && vol[m] > 0).then(|| Ratio::new(vol[m] - internal[m], vol[m]))).collect();
    let (rank, _) = ranks(&values);
    let (_, items) = min_max_partition(n, &rank, k).ok_or(Error::ZeroVolume)?;
    let sets: Vec<VertexSet> = items.into_iter().map(|m| VertexSet::from_mask(n, m as u64)).collect();
    let values = sets.iter().map(|s| phi(g, s)).collect::<Result<Vec<_>>>()?;
    let value = values.iter().max().cloned().ok_or(Error::EmptySet)?;
    Ok(SetFamily { sets, values, value })
}
