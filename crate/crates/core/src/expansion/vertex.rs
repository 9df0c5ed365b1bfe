//! Vertex expansion and magnification of regular graphs.
//!
//! Two vertices conflict when their closed out-neighbourhoods `N⁺[v] = {v} ∪ N⁺(v)`
//! meet. If `S` splits into parts `S₁, S₂` with no conflict between them, then
//! `N⁺(S)` and `N⁺(S) ∖ S` are disjoint unions of the parts' counterparts, so
//! the ratio for `S` is a mediant of the parts' ratios and never beats both.
//! Minimising over sets that are connected in the conflict graph is therefore
//! exact, and for sparse graphs it visits far fewer than `2ⁿ` sets.

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::Limits;
use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexSet};

/// Minimum of a size-normalised count over sets of size at most some bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeMinimum {
    pub value: BigRational,
    pub set: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionProfile {
    pub bound: usize,
    /// Common weighted degree.
    pub degree: BigRational,
    /// `profile[j - 1]` minimises `|N⁺(S)| / |S|` over `0 < |S| ≤ j`.
    pub profile: Vec<SizeMinimum>,
    /// Largest `δ` with `|N⁺(S)| ≥ (1 + δ)|S|` for all `|S| ≤ bound`.
    pub delta: BigRational,
    /// Minimum of `|N⁺(S) ∖ S| / |S|` over `0 < |S| ≤ bound`.
    pub magnifier: SizeMinimum,
    pub sets_visited: u64,
}

struct Tables {
    n: usize,
    out: Vec<u64>,
    conflict: Vec<u64>,
}

impl Tables {
    fn new(g: &Digraph) -> Result<Self> {
        let out = g.out_neighbor_masks().ok_or(Error::CapExceeded { what: "vertex expansion", n: g.n(), cap: 64 })?;
        let n = g.n();
        let closed: Vec<u64> = (0..n).map(|v| out[v] | 1 << v).collect();
        let conflict = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && closed[u] & closed[v] != 0).fold(0u64, |m, v| m | 1 << v))
            .collect();
        Ok(Tables { n, out, conflict })
    }
}

/// Per-size minima of `|N⁺(S)|` and `|N⁺(S) ∖ S|` found under one root.
#[derive(Clone)]
struct Best {
    nbr: Vec<Option<(u32, u64)>>,
    outside: Vec<Option<(u32, u64)>>,
    visited: u64,
}

impl Best {
    fn new(bound: usize) -> Self {
        Best { nbr: vec![None; bound + 1], outside: vec![None; bound + 1], visited: 0 }
    }

    fn offer(slot: &mut Option<(u32, u64)>, count: u32, set: u64) {
        if slot.is_none_or(|(c, s)| (count, set) < (c, s)) {
            *slot = Some((count, set));
        }
    }

    fn merge(mut self, other: Best) -> Best {
        for (a, b) in self.nbr.iter_mut().zip(other.nbr) {
            if let Some((c, s)) = b {
                Best::offer(a, c, s);
            }
        }
        for (a, b) in self.outside.iter_mut().zip(other.outside) {
            if let Some((c, s)) = b {
                Best::offer(a, c, s);
            }
        }
        self.visited += other.visited;
        self
    }
}

/// Vertices strictly greater than `v`.
fn above(v: usize) -> u64 {
    u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

struct Search<'a> {
    t: &'a Tables,
    bound: usize,
    budget: u64,
    best: Best,
}

impl Search<'_> {
    /// ESU-style enumeration: every conflict-connected set whose smallest
    /// vertex is `root` is visited exactly once.
    fn extend(&mut self, set: u64, size: usize, ext: u64, near: u64, nbr: u64, root: usize) -> bool {
        self.best.visited += 1;
        if self.best.visited > self.budget {
            return false;
        }
        Best::offer(&mut self.best.nbr[size], nbr.count_ones(), set);
        Best::offer(&mut self.best.outside[size], (nbr & !set).count_ones(), set);
        if size == self.bound {
            return true;
        }
        let above = above(root);
        let mut rest = ext;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let fresh = self.t.conflict[w] & !near & !set & above;
            let next_ext = rest | fresh;
            let next_near = near | self.t.conflict[w] | 1 << w;
            if !self.extend(set | 1 << w, size + 1, next_ext, next_near, nbr | self.t.out[w], root) {
                return false;
            }
        }
        true
    }
}

fn search(t: &Tables, bound: usize, budget: u64) -> Result<Best> {
    let n = t.n;
    let merged = (0..n)
        .into_par_iter()
        .map(|root| {
            let mut s = Search { t, bound, budget, best: Best::new(bound) };
            let ok = s.extend(
                1 << root,
                1,
                t.conflict[root] & above(root),
                t.conflict[root] | 1 << root,
                t.out[root],
                root,
            );
            ok.then_some(s.best)
        })
        .collect::<Option<Vec<Best>>>()
        .ok_or(Error::CapExceeded { what: "vertex expansion set budget", n, cap: budget as usize })?;
    let best = merged.into_iter().fold(Best::new(bound), Best::merge);
    if best.visited > budget {
        return Err(Error::CapExceeded { what: "vertex expansion set budget", n, cap: budget as usize });
    }
    Ok(best)
}

fn ratio(count: u32, size: usize) -> BigRational {
    BigRational::new((count as i64).into(), (size as i64).into())
}

/// Running minimum over sizes `1..=j` of `count / size`.
fn prefix_minima(n: usize, per_size: &[Option<(u32, u64)>]) -> Vec<SizeMinimum> {
    let mut out: Vec<SizeMinimum> = Vec::new();
    for (size, entry) in per_size.iter().enumerate().skip(1) {
        let candidate = entry.map(|(c, s)| SizeMinimum { value: ratio(c, size), set: VertexSet::from_mask(n, s) });
        let next = match (out.last(), candidate) {
            (Some(prev), Some(c)) if c.value < prev.value => c,
            (Some(prev), _) => prev.clone(),
            (None, Some(c)) => c,
            (None, None) => break,
        };
        out.push(next);
    }
    out
}

fn prepare(g: &Digraph, bound: usize, limits: &Limits) -> Result<(BigRational, Tables)> {
    let degree = g.regular_degree().ok_or(Error::NotRegular)?;
    if degree.is_zero() {
        return Err(Error::ZeroDegree(0));
    }
    Limits::check("vertex_expansion", g.n(), limits.vertex_n.min(64))?;
    if bound == 0 || bound > g.n() {
        return Err(Error::InvalidParameter(format!("bound {bound} outside 1..={}", g.n())));
    }
    Ok((degree, Tables::new(g)?))
}

/// Vertex-expansion profile of a regular graph, reading edges from the
/// support of the weights.
pub fn vertex_expansion(g: &Digraph, bound: usize, limits: &Limits) -> Result<ExpansionProfile> {
    let (degree, tables) = prepare(g, bound, limits)?;
    let best = search(&tables, bound, limits.vertex_budget)?;
    let n = g.n();
    let profile = prefix_minima(n, &best.nbr);
    let magnifier = prefix_minima(n, &best.outside).pop().ok_or(Error::EmptySet)?;
    let last = profile.last().ok_or(Error::EmptySet)?;
    let delta = &last.value - BigRational::from_integer(1.into());
    Ok(ExpansionProfile { bound, degree, profile, delta, magnifier, sets_visited: best.visited })
}

/// `min |N⁺(S) ∖ S| / |S|` over `0 < |S| ≤ bound`.
pub fn magnifier_constant(g: &Digraph, bound: usize, limits: &Limits) -> Result<SizeMinimum> {
    Ok(vertex_expansion(g, bound, limits)?.magnifier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    /// All `2ⁿ` sets, straight from the definitions.
    fn naive(g: &Digraph, bound: usize) -> (Vec<BigRational>, BigRational) {
        let n = g.n();
        let out = g.out_neighbor_masks().unwrap();
        let mut prof = vec![None::<BigRational>; bound + 1];
        let mut mag: Option<BigRational> = None;
        for s in 1u64..1 << n {
            let size = s.count_ones() as usize;
            if size > bound {
                continue;
            }
            let nbr = (0..n).filter(|&v| s >> v & 1 == 1).fold(0, |m, v| m | out[v]);
            let a = ratio(nbr.count_ones(), size);
            let b = ratio((nbr & !s).count_ones(), size);
            for slot in prof.iter_mut().skip(size) {
                if slot.as_ref().is_none_or(|x| a < *x) {
                    *slot = Some(a.clone());
                }
            }
            if mag.as_ref().is_none_or(|x| b < *x) {
                mag = Some(b);
            }
        }
        (prof.into_iter().skip(1).map(Option::unwrap).collect(), mag.unwrap())
    }

    #[test]
    fn matches_naive() {
        let lim = Limits::default();
        let mut graphs = vec![
            families::hypercube(3, 0).unwrap(),
            families::cycle(9, 1, false).unwrap(),
            families::cycle(7, 0, true).unwrap(),
            families::complete_bipartite(4).unwrap(),
        ];
        for seed in 0..6 {
            graphs.push(families::random_regular_digraph(6 + seed as usize, 1 + seed as usize % 3, seed).unwrap());
        }
        for g in graphs {
            let lift = g.symmetric_lift();
            for h in [&g, &lift] {
                if h.n() > 16 {
                    continue;
                }
                for bound in [1, h.n() / 2, h.n()] {
                    let p = vertex_expansion(h, bound, &lim).unwrap();
                    let (prof, mag) = naive(h, bound);
                    let got: Vec<BigRational> = p.profile.iter().map(|m| m.value.clone()).collect();
                    assert_eq!(got, prof, "{h:?} bound {bound}");
                    assert_eq!(p.magnifier.value, mag);
                }
            }
        }
    }

    #[test]
    fn directed_cycle_has_zero_expansion() {
        let g = families::cycle(10, 0, true).unwrap();
        let p = vertex_expansion(&g, 5, &Limits::default()).unwrap();
        assert!(p.delta.is_zero());
    }

    #[test]
    fn complete_bipartite_is_unit_magnifier() {
        let g = families::complete_bipartite(3).unwrap();
        let p = vertex_expansion(&g, 3, &Limits::default()).unwrap();
        assert_eq!(p.magnifier.value, r(1, 1));
    }

    #[test]
    fn long_cycle_with_loops() {
        // Arcs of length k gain two new neighbours: δ = 2/(n/2) for n = 32.
        let g = families::cycle(32, 4, false).unwrap();
        let p = vertex_expansion(&g, 16, &Limits::default()).unwrap();
        assert_eq!(p.delta, r(1, 8));
        assert_eq!(p.degree, r(6, 1));
    }

    #[test]
    fn rejects_irregular() {
        assert_eq!(vertex_expansion(&families::fig5(), 2, &Limits::default()).unwrap_err(), Error::NotRegular);
    }
}
