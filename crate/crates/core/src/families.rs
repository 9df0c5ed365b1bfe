//! Named graph families and seeded random generators.
//!
//! Random generators draw from SplitMix64 (increment `0x9E3779B97F4A7C15`,
//! output mixers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`, shifts 30, 27,
//! 31) seeded directly with the user seed. Bounded integers use rejection
//! sampling on the full 64-bit output and uniform floats take the top 53 bits,
//! so a seed reproduces the same graph on any platform.

use std::fmt;

use num_rational::BigRational;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;

pub const FIG5_X: usize = 0;
pub const FIG5_Y: usize = 1;
pub const FIG5_U: usize = 2;
pub const FIG5_V: usize = 3;

pub const FIG6_X: usize = 0;
pub const FIG6_Y: usize = 1;
pub const FIG6_U1: usize = 2;
pub const FIG6_U2: usize = 3;
pub const FIG6_V1: usize = 4;
pub const FIG6_V2: usize = 5;

pub const RETRY_LIMIT: usize = 64;

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `Q_d` with `loops` unit self-loops per vertex.
pub fn hypercube(d: usize, loops: usize) -> Result<Digraph> {
    if d == 0 || d > 20 {
        return Err(Error::InvalidParameter(format!("hypercube dimension {d} outside 1..=20")));
    }
    let n = 1usize << d;
    let mut b = Digraph::undirected(n);
    for v in 0..n {
        for bit in 0..d {
            let u = v ^ 1 << bit;
            if v < u {
                b.add_unit_edge(v, u)?;
            }
        }
        if loops > 0 {
            b.add_edge(v, v, int(loops as i64))?;
        }
    }
    Ok(b.build())
}

/// `Cₙ` with `loops` unit self-loops per vertex; `directed` orients every
/// edge `v → v + 1`.
pub fn cycle(n: usize, loops: usize, directed: bool) -> Result<Digraph> {
    let min = if directed { 2 } else { 3 };
    if n < min {
        return Err(Error::InvalidParameter(format!("cycle length {n} below {min}")));
    }
    let mut b = Digraph::builder(n, !directed);
    for v in 0..n {
        b.add_unit_edge(v, (v + 1) % n)?;
        if loops > 0 {
            b.add_edge(v, v, int(loops as i64))?;
        }
    }
    Ok(b.build())
}

/// `K_{half,half}` with sides `0..half` and `half..2·half`.
pub fn complete_bipartite(half: usize) -> Result<Digraph> {
    if half == 0 {
        return Err(Error::InvalidParameter("complete_bipartite needs half ≥ 1".into()));
    }
    let mut b = Digraph::undirected(2 * half);
    for u in 0..half {
        for v in half..2 * half {
            b.add_unit_edge(u, v)?;
        }
    }
    Ok(b.build())
}

/// Four vertices `x, y, u, v` with edges `u→x, u→v, v→u, v→y, x→v, y→u`.
pub fn fig5() -> Digraph {
    let mut b = Digraph::directed(4);
    for (s, t) in [(FIG5_U, FIG5_X), (FIG5_U, FIG5_V), (FIG5_V, FIG5_U), (FIG5_V, FIG5_Y), (FIG5_X, FIG5_V), (FIG5_Y, FIG5_U)] {
        b.add_unit_edge(s, t).expect("valid edge");
    }
    b.build()
}

fn fig6(weight: BigRational) -> Digraph {
    let mut b = Digraph::directed(6);
    for (u, v) in [(FIG6_U1, FIG6_V1), (FIG6_U2, FIG6_V2)] {
        for (s, t) in [(u, FIG6_X), (u, v), (v, u), (v, FIG6_Y), (FIG6_X, v), (FIG6_Y, u)] {
            b.add_edge(s, t, weight.clone()).expect("valid edge");
        }
    }
    b.build()
}

/// The two-copy version of [`fig5`] with `u, v` duplicated, unit weights
/// (2-regular).
pub fn fig6_unit() -> Digraph {
    fig6(int(1))
}

/// [`fig6_unit`] with every weight halved (1-regular).
pub fn fig6_half() -> Digraph {
    fig6(BigRational::new(1.into(), 2.into()))
}

struct Rng(SplitMix64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(SplitMix64::seed_from_u64(seed))
    }

    /// Uniform in `0..bound` by rejection.
    fn below(&mut self, bound: u64) -> u64 {
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.0.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            p.swap(i, j);
        }
        p
    }
}

/// Samples each ordered pair `u ≠ v` with probability `density` and weight
/// uniform in `1..=2`, retrying until the sample is strongly connected, then
/// reweights by the stationary distribution.
pub fn random_eulerian(n: usize, density: f64, seed: u64) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("random_eulerian needs n ≥ 2, got {n}")));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidParameter(format!("density {density} outside (0, 1]")));
    }
    let mut rng = Rng::new(seed);
    for _ in 0..RETRY_LIMIT {
        let mut b = Digraph::directed(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.unit() < density {
                    b.add_edge(u, v, int(1 + rng.below(2) as i64))?;
                }
            }
        }
        let g = b.build();
        if g.is_strongly_connected() {
            return g.eulerianize();
        }
    }
    Err(Error::RetryLimit(RETRY_LIMIT))
}

/// Sum of `d` independent uniform permutation matrices.
pub fn random_regular_digraph(n: usize, d: usize, seed: u64) -> Result<Digraph> {
    if n < 2 || d == 0 || d > n {
        return Err(Error::InvalidParameter(format!("random_regular_digraph needs n ≥ 2 and 1 ≤ d ≤ n, got n={n}, d={d}")));
    }
    let mut rng = Rng::new(seed);
    let mut b = Digraph::directed(n);
    for _ in 0..d {
        for (u, v) in rng.permutation(n).into_iter().enumerate() {
            b.add_unit_edge(u, v)?;
        }
    }
    Ok(b.build())
}

/// Serializable description of a generated graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Hypercube {
        d: usize,
        #[serde(default)]
        loops: usize,
    },
    Cycle {
        n: usize,
        #[serde(default)]
        loops: usize,
        #[serde(default)]
        directed: bool,
    },
    CompleteBipartite {
        half: usize,
    },
    Fig5,
    Fig6Unit,
    Fig6Half,
    RandomEulerian {
        n: usize,
        density: f64,
        seed: u64,
    },
    RandomRegularDigraph {
        n: usize,
        d: usize,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Digraph> {
        match *self {
            GeneratorSpec::Hypercube { d, loops } => hypercube(d, loops),
            GeneratorSpec::Cycle { n, loops, directed } => cycle(n, loops, directed),
            GeneratorSpec::CompleteBipartite { half } => complete_bipartite(half),
            GeneratorSpec::Fig5 => Ok(fig5()),
            GeneratorSpec::Fig6Unit => Ok(fig6_unit()),
            GeneratorSpec::Fig6Half => Ok(fig6_half()),
            GeneratorSpec::RandomEulerian { n, density, seed } => random_eulerian(n, density, seed),
            GeneratorSpec::RandomRegularDigraph { n, d, seed } => random_regular_digraph(n, d, seed),
        }
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn is_fig(&self) -> bool {
        matches!(self, GeneratorSpec::Fig5 | GeneratorSpec::Fig6Unit | GeneratorSpec::Fig6Half)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Hypercube { d, loops } => write!(f, "hypercube(d={d},loops={loops})"),
            GeneratorSpec::Cycle { n, loops, directed } => {
                let kind = if *directed { "directed" } else { "undirected" };
                write!(f, "cycle(n={n},loops={loops},{kind})")
            }
            GeneratorSpec::CompleteBipartite { half } => write!(f, "complete_bipartite(half={half})"),
            GeneratorSpec::Fig5 => write!(f, "fig5"),
            GeneratorSpec::Fig6Unit => write!(f, "fig6_unit"),
            GeneratorSpec::Fig6Half => write!(f, "fig6_half"),
            GeneratorSpec::RandomEulerian { n, density, seed } => {
                write!(f, "random_eulerian(n={n},density={density},seed={seed})")
            }
            GeneratorSpec::RandomRegularDigraph { n, d, seed } => {
                write!(f, "random_regular_digraph(n={n},d={d},seed={seed})")
            }
        }
    }
}

/// Named families plus 25 random Eulerian and 25 random regular digraphs.
pub fn default_corpus() -> Vec<GeneratorSpec> {
    use GeneratorSpec::*;
    let mut corpus = vec![Fig5, Fig6Unit, Fig6Half];
    for (n, loops) in [(3, 0), (4, 0), (5, 1)] {
        corpus.push(Cycle { n, loops, directed: true });
    }
    for (n, loops) in [(3, 0), (4, 0), (5, 0), (6, 0), (7, 0), (8, 4)] {
        corpus.push(Cycle { n, loops, directed: false });
    }
    for (d, loops) in [(1, 0), (2, 0), (3, 0), (2, 1), (3, 1)] {
        corpus.push(Hypercube { d, loops });
    }
    for half in 1..=4 {
        corpus.push(CompleteBipartite { half });
    }
    for i in 0..25u64 {
        corpus.push(RandomEulerian { n: 3 + (i % 6) as usize, density: 0.5, seed: 1000 + i });
    }
    for i in 0..25u64 {
        corpus.push(RandomRegularDigraph { n: 4 + (i % 7) as usize, d: 1 + (i % 3) as usize, seed: 2000 + i });
    }
    corpus
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Side;

    #[test]
    fn named_family_shapes() {
        let q1 = hypercube(1, 0).unwrap();
        assert_eq!((q1.n(), q1.edge_count()), (2, 2));
        let q3 = hypercube(3, 0).unwrap();
        assert_eq!(q3.n(), 8);
        assert_eq!(q3.edge_count(), 24);
        assert_eq!(q3.regular_degree(), Some(int(3)));
        assert_eq!(hypercube(2, 1).unwrap().regular_degree(), Some(int(3)));
        assert_eq!(cycle(8, 4, false).unwrap().regular_degree(), Some(int(6)));
        let k22 = complete_bipartite(2).unwrap();
        assert_eq!((k22.edge_count(), k22.regular_degree()), (8, Some(int(2))));
        assert!(cycle(2, 0, false).is_err());
        assert!(cycle(2, 0, true).is_ok());
    }

    #[test]
    fn fig_graphs() {
        let g = fig5();
        assert!(g.is_eulerian(0.0));
        assert_eq!(g.degree(FIG5_U, Side::Out).unwrap(), int(2));
        assert_eq!(g.total_mass(), int(6));
        assert_eq!(fig6_unit().regular_degree(), Some(int(2)));
        assert_eq!(fig6_half().regular_degree(), Some(int(1)));
        assert_eq!(fig6_unit().edge_count(), 12);
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(random_eulerian(6, 0.5, 9).unwrap(), random_eulerian(6, 0.5, 9).unwrap());
        assert_eq!(random_regular_digraph(4, 2, 7).unwrap(), random_regular_digraph(4, 2, 7).unwrap());
        for seed in 0..20 {
            let g = random_regular_digraph(8, 3, seed).unwrap();
            assert_eq!(g.regular_degree(), Some(int(3)));
            let p = random_regular_digraph(5, 1, seed).unwrap();
            assert!((0..5).all(|v| p.out_edges(v).count() == 1));
            assert!(random_eulerian(7, 0.5, seed).unwrap().is_eulerian(0.0));
        }
        assert!(random_regular_digraph(3, 4, 0).is_err());
    }

    #[test]
    fn pinned_regular_sample() {
        let g = random_regular_digraph(4, 2, 7).unwrap();
        let edges: Vec<(usize, usize, i64)> =
            g.edges().map(|(u, v, w)| (u, v, w.to_integer().try_into().unwrap())).collect();
        assert_eq!(edges, PINNED_4_2_7);
    }

    const PINNED_4_2_7: &[(usize, usize, i64)] = &[(0, 0, 1), (0, 1, 1), (1, 2, 2), (2, 0, 1), (2, 1, 1), (3, 3, 2)];

    #[test]
    fn rng_is_splitmix() {
        // First outputs of SplitMix64 seeded with 0 (reference values).
        let mut r = Rng::new(0);
        assert_eq!(r.0.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(r.0.next_u64(), 0x6E789E6AA1B965F4);
    }

    #[test]
    fn spec_round_trip() {
        for spec in default_corpus() {
            let text = serde_json::to_string(&spec).unwrap();
            assert_eq!(serde_json::from_str::<GeneratorSpec>(&text).unwrap(), spec);
            spec.build().unwrap();
        }
        let spec: GeneratorSpec = serde_json::from_str(r#"{"family":"cycle","n":5}"#).unwrap();
        assert_eq!(spec.id(), "cycle(n=5,loops=0,undirected)");
    }
}
