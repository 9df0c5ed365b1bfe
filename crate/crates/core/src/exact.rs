//! Integer-scaled weights for exhaustive enumeration.
//!
//! Every ratio the enumerators minimise is invariant under scaling all weights
//! by a common factor, so rational weights are multiplied by the LCM of their
//! denominators and reduced by the GCD of the results. Volumes then fit in
//! `i128` with room for cross-multiplication.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Largest total scaled edge mass accepted; keeps products of two masses
/// below `2^124`.
pub const MAX_SCALED_MASS: i128 = 1 << 62;

/// A non-negative fraction with positive denominator, compared exactly.
#[derive(Clone, Copy, Debug)]
pub struct Ratio {
    pub num: i128,
    pub den: i128,
}

impl Ratio {
    pub fn new(num: i128, den: i128) -> Self {
        debug_assert!(den > 0);
        Ratio { num, den }
    }

    pub fn to_big(self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Dense integer copy of a digraph's weights, scaled to integers.
#[derive(Clone, Debug)]
pub struct ScaledWeights {
    n: usize,
    w: Vec<i128>,
    out_deg: Vec<i128>,
    in_deg: Vec<i128>,
    total: i128,
}

impl ScaledWeights {
    pub fn new(g: &Digraph) -> Result<Self> {
        let n = g.n();
        let lcm = g.edges().fold(BigInt::one(), |acc, (_, _, w)| acc.lcm(w.denom()));
        let scaled: Vec<(usize, usize, BigInt)> =
            g.edges().map(|(u, v, w)| (u, v, w.numer() * (&lcm / w.denom()))).collect();
        let gcd = scaled.iter().fold(BigInt::zero(), |acc, (_, _, x)| acc.gcd(x));
        let total: BigInt = scaled.iter().map(|(_, _, x)| x).sum();
        if !gcd.is_zero() && &total / &gcd > BigInt::from(MAX_SCALED_MASS) {
            return Err(Error::ExactOverflow);
        }
        let mut w = vec![0i128; n * n];
        let mut out_deg = vec![0i128; n];
        let mut in_deg = vec![0i128; n];
        for (u, v, x) in scaled {
            let x = (x / &gcd).to_i128().ok_or(Error::ExactOverflow)?;
            w[u * n + v] = x;
            out_deg[u] += x;
            in_deg[v] += x;
        }
        let total = out_deg.iter().sum();
        Ok(ScaledWeights { n, w, out_deg, in_deg, total })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn w(&self, u: usize, v: usize) -> i128 {
        self.w[u * self.n + v]
    }

    pub fn out_deg(&self) -> &[i128] {
        &self.out_deg
    }

    pub fn in_deg(&self) -> &[i128] {
        &self.in_deg
    }

    pub fn total(&self) -> i128 {
        self.total
    }

    /// `sums[mask] = Σ_{v ∈ mask} values[v]` for every mask over `values.len()` bits.
    pub fn subset_sums(values: &[i128]) -> Vec<i128> {
        let n = values.len();
        let mut sums = vec![0i128; 1 << n];
        for mask in 1usize..1 << n {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = sums[mask & (mask - 1)] + values[low];
        }
        sums
    }

    /// `e(S, S)` for every mask `S`.
    pub fn internal_mass(&self) -> Vec<i128> {
        let n = self.n;
        let mut e = vec![0i128; 1 << n];
        for mask in 1usize..1 << n {
            let v = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let mut add = self.w(v, v);
            let mut bits = rest;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                add += self.w(v, u) + self.w(u, v);
            }
            e[mask] = e[rest] + add;
        }
        e
    }

    /// Row sums `Σ_{s ∈ S} w(s, t)` for each `t`, for a fixed mask `S`.
    pub fn row_into(&self, s_mask: usize) -> Vec<i128> {
        let mut r = vec![0i128; self.n];
        let mut bits = s_mask;
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            for (t, x) in r.iter_mut().enumerate() {
                *x += self.w(s, t);
            }
        }
        r
    }
}

pub fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Renders a fraction as `"p/q"`, including integers (`"0/1"`).
pub fn fraction_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
