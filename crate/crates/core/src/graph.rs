//! Weighted digraphs, vertex subsets and the symmetric lift.
//!
//! Weights are exact rationals. A graph flagged undirected stores both
//! orientations of every edge with equal weight, so all edge-mass and degree
//! queries treat it as a symmetric digraph. Self-loops are stored once.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Weight = BigRational;

/// Largest vertex count for which eulerianization solves for the stationary
/// distribution in exact rational arithmetic.
pub const EXACT_STATIONARY_MAX_N: usize = 32;

pub const DEFAULT_EULERIAN_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Out,
    In,
}

/// A subset of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Result<Self> {
        let mut set = Self::empty(n);
        for v in indices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    /// Bit `i` of `mask` is vertex `i`. Bits at or above `n` are ignored.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut set = Self::empty(n);
        for v in 0..n.min(64) {
            if mask >> v & 1 == 1 {
                set.bits.insert(v);
            }
        }
        set
    }

    /// The bitmask form; `None` when the universe is wider than 64.
    pub fn to_mask(&self) -> Option<u64> {
        if self.universe() > 64 {
            return None;
        }
        Some(self.iter().fold(0u64, |m, v| m | 1 << v))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSet { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSet { bits }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subset of the `2n` vertices of a symmetric lift, kept as its left and
/// right projections. Left vertex `v` is lift index `v`, right vertex `u` is
/// lift index `n + u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftSet {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl LiftSet {
    pub fn embed(left: VertexSet, right: VertexSet) -> Result<Self> {
        if left.universe() != right.universe() {
            return Err(Error::SizeMismatch { expected: left.universe(), found: right.universe() });
        }
        Ok(LiftSet { left, right })
    }

    pub fn project(&self) -> (VertexSet, VertexSet) {
        (self.left.clone(), self.right.clone())
    }

    pub fn base_n(&self) -> usize {
        self.left.universe()
    }

    /// The set as a subset of the lift's `2n` vertices.
    pub fn to_lift_vertices(&self) -> VertexSet {
        let n = self.base_n();
        let mut set = VertexSet::empty(2 * n);
        for v in self.left.iter() {
            set.insert(v);
        }
        for u in self.right.iter() {
            set.insert(n + u);
        }
        set
    }

    pub fn from_lift_vertices(set: &VertexSet) -> Result<Self> {
        let total = set.universe();
        if !total.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("lift vertex universe {total} is odd")));
        }
        let n = total / 2;
        let mut left = VertexSet::empty(n);
        let mut right = VertexSet::empty(n);
        for x in set.iter() {
            if x < n {
                left.insert(x);
            } else {
                right.insert(x - n);
            }
        }
        Ok(LiftSet { left, right })
    }
}

/// Weighted directed graph on vertices `0..n`.
///
/// Immutable after construction; parallel edges merge by weight addition.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    undirected: bool,
    out: Vec<BTreeMap<usize, Weight>>,
    inn: Vec<BTreeMap<usize, Weight>>,
    out_deg: Vec<Weight>,
    in_deg: Vec<Weight>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(u, v, w)| format!("{u}->{v}:{w}")).collect();
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("undirected", &self.undirected)
            .field("edges", &edges)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub struct DigraphBuilder {
    n: usize,
    undirected: bool,
    weights: BTreeMap<(usize, usize), Weight>,
}

impl DigraphBuilder {
    /// Adds `w` to the weight of `(u, v)`; for undirected builders also to
    /// `(v, u)` unless `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize, w: Weight) -> Result<&mut Self> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if !w.is_positive() {
            return Err(Error::InvalidWeight { u, v, weight: w.to_string() });
        }
        *self.weights.entry((u, v)).or_insert_with(Weight::zero) += &w;
        if self.undirected && u != v {
            *self.weights.entry((v, u)).or_insert_with(Weight::zero) += &w;
        }
        Ok(self)
    }

    pub fn add_unit_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.add_edge(u, v, Weight::one())
    }

    pub fn build(self) -> Digraph {
        Digraph::assemble(self.n, self.undirected, self.weights)
    }
}

impl Digraph {
    pub fn builder(n: usize, undirected: bool) -> DigraphBuilder {
        DigraphBuilder { n, undirected, weights: BTreeMap::new() }
    }

    pub fn directed(n: usize) -> DigraphBuilder {
        Self::builder(n, false)
    }

    pub fn undirected(n: usize) -> DigraphBuilder {
        Self::builder(n, true)
    }

    /// Builds from ordered-pair weights. An undirected graph must supply both
    /// orientations with equal weight.
    pub fn from_weights(
        n: usize,
        undirected: bool,
        weights: BTreeMap<(usize, usize), Weight>,
    ) -> Result<Self> {
        for (&(u, v), w) in &weights {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if !w.is_positive() {
                return Err(Error::InvalidWeight { u, v, weight: w.to_string() });
            }
            if undirected && weights.get(&(v, u)) != Some(w) {
                return Err(Error::AsymmetricWeights { u, v });
            }
        }
        Ok(Self::assemble(n, undirected, weights))
    }

    fn assemble(n: usize, undirected: bool, weights: BTreeMap<(usize, usize), Weight>) -> Self {
        let mut out = vec![BTreeMap::new(); n];
        let mut inn = vec![BTreeMap::new(); n];
        let mut out_deg = vec![Weight::zero(); n];
        let mut in_deg = vec![Weight::zero(); n];
        for ((u, v), w) in weights {
            out_deg[u] += &w;
            in_deg[v] += &w;
            inn[v].insert(u, w.clone());
            out[u].insert(v, w);
        }
        Digraph { n, undirected, out, inn, out_deg, in_deg }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Weight> {
        self.out.get(u).and_then(|row| row.get(&v))
    }

    /// All stored ordered pairs `(u, v, w)` sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Weight)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |(&v, w)| (u, v, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BTreeMap::len).sum()
    }

    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = (usize, &Weight)> + '_ {
        self.out[u].iter().map(|(&v, w)| (v, w))
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = (usize, &Weight)> + '_ {
        self.inn[v].iter().map(|(&u, w)| (u, w))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n {
            Err(Error::SizeMismatch { expected: self.n, found: s.universe() })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, v: usize, side: Side) -> Result<Weight> {
        self.check_vertex(v)?;
        Ok(match side {
            Side::Out => self.out_deg[v].clone(),
            Side::In => self.in_deg[v].clone(),
        })
    }

    pub fn out_degrees(&self) -> &[Weight] {
        &self.out_deg
    }

    pub fn in_degrees(&self) -> &[Weight] {
        &self.in_deg
    }

    pub fn volume(&self, s: &VertexSet, side: Side) -> Result<Weight> {
        self.check_set(s)?;
        let degs = match side {
            Side::Out => &self.out_deg,
            Side::In => &self.in_deg,
        };
        Ok(s.iter().map(|v| &degs[v]).sum())
    }

    pub fn total_mass(&self) -> Weight {
        self.out_deg.iter().sum()
    }

    /// `e(A, B)`: total weight of ordered pairs in `A × B`.
    pub fn edge_mass(&self, a: &VertexSet, b: &VertexSet) -> Result<Weight> {
        self.check_set(a)?;
        self.check_set(b)?;
        let mut total = Weight::zero();
        for u in a.iter() {
            for (v, w) in self.out_edges(u) {
                if b.contains(v) {
                    total += w;
                }
            }
        }
        Ok(total)
    }

    /// True iff `|d⁺(v) − d⁻(v)| ≤ tol·max(1, d⁺(v) + d⁻(v))` for every `v`.
    /// `tol = 0` is an exact check.
    pub fn is_eulerian(&self, tol: f64) -> bool {
        let tol = BigRational::from_f64(tol.max(0.0)).unwrap_or_else(Weight::zero);
        (0..self.n).all(|v| {
            let diff = (&self.out_deg[v] - &self.in_deg[v]).abs();
            let scale = (&self.out_deg[v] + &self.in_deg[v]).max(Weight::one());
            diff <= &tol * scale
        })
    }

    /// The common degree if every in- and out-degree is equal.
    pub fn regular_degree(&self) -> Option<Weight> {
        let d = self.out_deg.first()?.clone();
        let all = self.out_deg.iter().chain(&self.in_deg).all(|x| *x == d);
        all.then_some(d)
    }

    pub fn is_integral(&self) -> bool {
        self.edges().all(|(_, _, w)| w.is_integer())
    }

    fn reachable(&self, start: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            let next = if forward { &self.out[u] } else { &self.inn[u] };
            for &v in next.keys() {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.reachable(0, true).into_iter().all(|x| x) && self.reachable(0, false).into_iter().all(|x| x)
    }

    pub(crate) fn check_markov(&self) -> Result<()> {
        if let Some(v) = (0..self.n).find(|&v| self.out_deg[v].is_zero()) {
            return Err(Error::ZeroOutDegree(v));
        }
        if !self.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        Ok(())
    }

    /// Stationary distribution of the random walk, solved exactly.
    pub fn stationary_distribution_exact(&self) -> Result<Vec<Weight>> {
        self.check_markov()?;
        let n = self.n;
        // Rows 0..n-1: balance equations for vertices 0..n-2, last row: sum = 1.
        let mut m = vec![vec![Weight::zero(); n + 1]; n];
        for (u, v, w) in self.edges() {
            if v + 1 < n {
                m[v][u] += w / &self.out_deg[u];
            }
        }
        for (v, row) in m.iter_mut().enumerate().take(n - 1) {
            row[v] -= Weight::one();
        }
        for x in m[n - 1].iter_mut() {
            *x = Weight::one();
        }
        gauss_solve(m).ok_or_else(|| Error::Internal("singular stationary system".into()))
    }

    /// Reweights edges by the stationary distribution: `w'(u,v) = π(u)·w(u,v)/d⁺(u)`.
    pub fn eulerianize(&self) -> Result<Digraph> {
        self.check_markov()?;
        let pi: Vec<Weight> = if self.n <= EXACT_STATIONARY_MAX_N {
            self.stationary_distribution_exact()?
        } else {
            let pi = crate::spectra::stationary_distribution(self)?;
            pi.into_iter()
                .map(|p| BigRational::from_f64(p).ok_or_else(|| Error::Internal("non-finite π".into())))
                .collect::<Result<_>>()?
        };
        let weights = self
            .edges()
            .map(|(u, v, w)| ((u, v), &pi[u] * w / &self.out_deg[u]))
            .filter(|(_, w)| w.is_positive())
            .collect();
        Ok(Self::assemble(self.n, false, weights))
    }

    /// `w'(u,v) = (w(u,v) + w(v,u)) / 2`.
    pub fn undirectify(&self) -> Digraph {
        if self.undirected {
            return self.clone();
        }
        let two = Weight::from_integer(BigInt::from(2));
        let mut weights: BTreeMap<(usize, usize), Weight> = BTreeMap::new();
        for (u, v, w) in self.edges() {
            let half = w / &two;
            *weights.entry((u, v)).or_insert_with(Weight::zero) += &half;
            *weights.entry((v, u)).or_insert_with(Weight::zero) += half;
        }
        Self::assemble(self.n, true, weights)
    }

    /// The symmetric lift: undirected bipartite graph on `2n` vertices with
    /// left `v` joined to right `n + u` by weight `w(v, u)`.
    pub fn symmetric_lift(&self) -> Digraph {
        let n = self.n;
        let mut weights = BTreeMap::new();
        for (u, v, w) in self.edges() {
            weights.insert((u, n + v), w.clone());
            weights.insert((n + v, u), w.clone());
        }
        Self::assemble(2 * n, true, weights)
    }

    /// Lift-side cut `e_{sl}(X, X^c)` and volume of a lift set, evaluated through the
    /// base graph.
    pub fn lift_cut_and_volume(&self, s: &LiftSet) -> Result<(Weight, Weight)> {
        let (left, right) = s.project();
        let volume = self.volume(&left, Side::Out)? + self.volume(&right, Side::In)?;
        let cut = self.edge_mass(&left, &right.complement())? + self.edge_mass(&left.complement(), &right)?;
        Ok((cut, volume))
    }

    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let shift = self.n;
        let mut weights: BTreeMap<(usize, usize), Weight> =
            self.edges().map(|(u, v, w)| ((u, v), w.clone())).collect();
        weights.extend(other.edges().map(|(u, v, w)| ((u + shift, v + shift), w.clone())));
        Self::assemble(self.n + other.n, self.undirected && other.undirected, weights)
    }

    /// Dense out-neighbour bitmasks of the support, for `n ≤ 64`.
    pub fn out_neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(self.out.iter().map(|row| row.keys().fold(0u64, |m, &v| m | 1 << v)).collect())
    }

    pub fn out_degree_f64(&self, v: usize) -> f64 {
        self.out_deg[v].to_f64().unwrap_or(f64::NAN)
    }

    pub fn in_degree_f64(&self, v: usize) -> f64 {
        self.in_deg[v].to_f64().unwrap_or(f64::NAN)
    }
}

/// Solves the augmented system `m = [A | b]` exactly; `None` if singular.
fn gauss_solve(mut m: Vec<Vec<Weight>>) -> Option<Vec<Weight>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn r(p: i64, q: i64) -> Weight {
        BigRational::new(p.into(), q.into())
    }

    fn directed_cycle(n: usize) -> Digraph {
        let mut b = Digraph::directed(n);
        for v in 0..n {
            b.add_unit_edge(v, (v + 1) % n).unwrap();
        }
        b.build()
    }

    #[test]
    fn degrees() {
        let g = families::fig5();
        assert_eq!(g.degree(families::FIG5_U, Side::Out).unwrap(), r(2, 1));
        let single = Digraph::directed(1).build();
        assert_eq!(single.degree(0, Side::Out).unwrap(), r(0, 1));
        assert_eq!(directed_cycle(3).degree(1, Side::In).unwrap(), r(1, 1));
        assert!(matches!(single.degree(1, Side::In), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn eulerian_checks() {
        assert!(families::fig5().is_eulerian(0.0));
        let mut b = Digraph::directed(2);
        b.add_unit_edge(0, 1).unwrap();
        assert!(!b.build().is_eulerian(1e-9));
        assert!(families::cycle(5, 0, false).unwrap().is_eulerian(0.0));
    }

    #[test]
    fn eulerianize_cycle_is_uniform() {
        let h = directed_cycle(3).eulerianize().unwrap();
        for (_, _, w) in h.edges() {
            assert_eq!(*w, r(1, 3));
        }
    }

    #[test]
    fn eulerianize_three_vertex_example() {
        // 1→2, 2→1, 2→3, 3→1 relabelled to 0-based.
        let mut b = Digraph::directed(3);
        for (u, v) in [(0, 1), (1, 0), (1, 2), (2, 0)] {
            b.add_unit_edge(u, v).unwrap();
        }
        let g = b.build();
        // Oracle: πW = π with W rows (0,1,0), (1/2,0,1/2), (1,0,0) solved by hand:
        // π0 = π1/2 + π2, π1 = π0, π2 = π1/2, sum 1 → (2/5, 2/5, 1/5).
        assert_eq!(g.stationary_distribution_exact().unwrap(), vec![r(2, 5), r(2, 5), r(1, 5)]);
        let h = g.eulerianize().unwrap();
        assert_eq!(h.weight(0, 1), Some(&r(2, 5)));
        assert_eq!(h.weight(1, 0), Some(&r(1, 5)));
        assert_eq!(h.weight(1, 2), Some(&r(1, 5)));
        assert_eq!(h.weight(2, 0), Some(&r(1, 5)));
        assert!(h.is_eulerian(0.0));
    }

    #[test]
    fn eulerianize_rejects_disconnected() {
        let g = directed_cycle(3).disjoint_union(&directed_cycle(3));
        assert_eq!(g.eulerianize(), Err(Error::NotStronglyConnected));
        let mut b = Digraph::directed(2);
        b.add_unit_edge(0, 1).unwrap();
        assert_eq!(b.build().eulerianize(), Err(Error::ZeroOutDegree(1)));
    }

    #[test]
    fn eulerianize_idempotent_up_to_scale() {
        let g = families::random_eulerian(6, 0.5, 3).unwrap();
        let h = g.eulerianize().unwrap();
        let ratio = h.total_mass() / g.total_mass();
        for (u, v, w) in g.edges() {
            assert_eq!(h.weight(u, v).unwrap(), &(w * &ratio));
        }
    }

    #[test]
    fn undirectify_examples() {
        let tri = families::cycle(3, 0, false).unwrap();
        assert_eq!(tri.undirectify(), tri);
        let mut b = Digraph::directed(2);
        b.add_unit_edge(0, 1).unwrap().add_unit_edge(1, 0).unwrap();
        let u = b.build().undirectify();
        assert!(u.is_undirected());
        assert_eq!(u.weight(0, 1), Some(&r(1, 1)));
        let f = families::fig5().undirectify();
        use families::{FIG5_U as U, FIG5_V as V, FIG5_X as X};
        assert_eq!(f.weight(U, V), Some(&r(1, 1)));
        assert_eq!(f.weight(V, U), Some(&r(1, 1)));
        assert_eq!(f.weight(U, X), Some(&r(1, 2)));
        assert_eq!(f.out_degrees(), families::fig5().out_degrees());
    }

    #[test]
    fn lift_examples() {
        let mut b = Digraph::directed(1);
        b.add_unit_edge(0, 0).unwrap();
        let l = b.build().symmetric_lift();
        assert_eq!(l.n(), 2);
        assert_eq!(l.weight(0, 1), Some(&r(1, 1)));
        assert_eq!(l.weight(1, 0), Some(&r(1, 1)));
        assert_eq!(l.edge_count(), 2);

        let fl = families::fig5().symmetric_lift();
        assert_eq!(fl.edge_count(), 12);
        let left: Vec<Weight> = (0..4).map(|v| fl.degree(v, Side::Out).unwrap()).collect();
        assert_eq!(left, families::fig5().out_degrees());
        assert_eq!(fl.total_mass(), families::fig5().total_mass() * r(2, 1));
    }

    /// Degree sequence plus a walk around the unique cycle: a connected
    /// 2-regular graph on 6 vertices is C₆.
    #[test]
    fn lift_of_triangle_is_hexagon() {
        let l = families::cycle(3, 0, false).unwrap().symmetric_lift();
        assert_eq!(l.n(), 6);
        assert!((0..6).all(|v| l.out_edges(v).count() == 2));
        assert!(l.is_strongly_connected());
    }

    #[test]
    fn lift_of_directed_triangle_is_matching() {
        let l = directed_cycle(3).symmetric_lift();
        assert!((0..6).all(|v| l.out_edges(v).count() == 1));
        assert!(!l.is_strongly_connected());
    }

    #[test]
    fn edge_mass_examples() {
        let g = families::fig5();
        use families::{FIG5_U as U, FIG5_V as V, FIG5_X as X};
        let a = VertexSet::from_indices(4, [X, U]).unwrap();
        let b = VertexSet::from_indices(4, [X, V]).unwrap();
        assert!(g.edge_mass(&a, &b.complement()).unwrap().is_zero());
        assert!(g.edge_mass(&VertexSet::empty(4), &b).unwrap().is_zero());
        let tri = families::cycle(3, 0, false).unwrap();
        assert_eq!(tri.edge_mass(&VertexSet::full(3), &VertexSet::full(3)).unwrap(), r(6, 1));
    }

    #[test]
    fn lift_projection_examples() {
        let g = families::fig5();
        let empty = LiftSet::from_lift_vertices(&VertexSet::empty(8)).unwrap();
        assert_eq!(empty.project(), (VertexSet::empty(4), VertexSet::empty(4)));
        let full = LiftSet::from_lift_vertices(&VertexSet::full(8)).unwrap();
        assert_eq!(full.project(), (VertexSet::full(4), VertexSet::full(4)));
        assert!(g.lift_cut_and_volume(&full).unwrap().0.is_zero());

        use families::{FIG5_U as U, FIG5_V as V, FIG5_X as X};
        let s = LiftSet::embed(
            VertexSet::from_indices(4, [X, U]).unwrap(),
            VertexSet::from_indices(4, [X, V]).unwrap(),
        )
        .unwrap();
        let lift = g.symmetric_lift();
        let x = s.to_lift_vertices();
        let direct = lift.edge_mass(&x, &x.complement()).unwrap();
        assert!(direct.is_zero());
        assert_eq!(g.lift_cut_and_volume(&s).unwrap().0, direct);
        assert_eq!(LiftSet::from_lift_vertices(&x).unwrap(), s);
    }

    #[test]
    fn lift_identities_exhaustive() {
        for seed in 0..6 {
            let g = families::random_eulerian(4 + seed as usize % 2, 0.6, seed).unwrap();
            let n = g.n();
            let lift = g.symmetric_lift();
            for mask in 0..(1u64 << (2 * n)) {
                let x = VertexSet::from_mask(2 * n, mask);
                let s = LiftSet::from_lift_vertices(&x).unwrap();
                let (cut, vol) = g.lift_cut_and_volume(&s).unwrap();
                assert_eq!(vol, lift.volume(&x, Side::Out).unwrap());
                assert_eq!(cut, lift.edge_mass(&x, &x.complement()).unwrap());
            }
        }
    }

    #[test]
    fn builder_validation() {
        let mut b = Digraph::directed(2);
        assert!(b.add_edge(0, 2, r(1, 1)).is_err());
        assert!(b.add_edge(0, 1, r(-1, 1)).is_err());
        assert!(b.add_edge(0, 1, r(0, 1)).is_err());
        let mut w = BTreeMap::new();
        w.insert((0, 1), r(1, 1));
        assert_eq!(Digraph::from_weights(2, true, w).unwrap_err(), Error::AsymmetricWeights { u: 0, v: 1 });
    }

    #[test]
    fn vertex_set_ops() {
        let s = VertexSet::from_mask(5, 0b10110);
        assert_eq!(s.to_vec(), vec![1, 2, 4]);
        assert_eq!(s.complement().to_vec(), vec![0, 3]);
        assert_eq!(s.to_mask(), Some(0b10110));
        assert_eq!(s.len(), 3);
        assert!(VertexSet::from_indices(3, [3]).is_err());
    }
}
