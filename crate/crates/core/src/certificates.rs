//! Constructive cuts: sweep rounding on the symmetric lift, pair balancing,
//! and the equal/disjoint case split.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expansion::{phi, phi_dir, CutPair};
use crate::graph::{Digraph, LiftSet, Side, VertexSet};
use crate::spectra;

/// Slack allowed between a sweep cut and `√(2(1 − σ₂))`.
pub const CERTIFICATE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub cut: CutPair,
    pub sigma2: f64,
    pub bound: f64,
    pub satisfied: bool,
}

/// Best sweep cut found on one ordering: lift vertex set and its float value.
struct Candidate {
    value: f64,
    set: Vec<bool>,
}

/// Sweeps one lift vector: sorts by `z / √d`, scores every prefix and every
/// prefix complement whose volume is at most half the lift volume.
fn sweep(lift: &Digraph, degrees: &[f64], exact_deg: &[BigRational], half: &BigRational, z: &[f64]) -> Option<Candidate> {
    let m = lift.n();
    let x: Vec<f64> = z.iter().zip(degrees).map(|(zi, d)| zi / d.sqrt()).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]).then(a.cmp(&b)));
    let total_vol: BigRational = exact_deg.iter().sum();
    let mut inside = vec![false; m];
    let mut cut = 0.0f64;
    let mut vol = BigRational::zero();
    let mut best: Option<(f64, usize, bool)> = None;
    for (step, &i) in order.iter().enumerate().take(m - 1) {
        let into_set: f64 = lift
            .out_edges(i)
            .filter(|&(j, _)| inside[j] && j != i)
            .map(|(_, w)| w.to_f64().unwrap_or(f64::NAN))
            .sum();
        let self_loop = lift.weight(i, i).map_or(0.0, |w| w.to_f64().unwrap_or(f64::NAN));
        cut += degrees[i] - self_loop - 2.0 * into_set;
        inside[i] = true;
        vol += &exact_deg[i];
        let cut_now = cut.max(0.0);
        let comp = &total_vol - &vol;
        for (side_vol, complement) in [(&vol, false), (&comp, true)] {
            if side_vol.is_zero() || side_vol > half {
                continue;
            }
            let value = cut_now / side_vol.to_f64().unwrap_or(f64::NAN);
            if best.is_none_or(|(b, _, _)| value < b) {
                best = Some((value, step, complement));
            }
        }
    }
    let (value, step, complement) = best?;
    let mut set = vec![complement; m];
    for &i in &order[..=step] {
        set[i] = !complement;
    }
    Some(Candidate { value, set })
}

/// Sweep rounding on `sl(G)` over every vector of the `σ₂` eigenspace; the
/// best lift cut is projected back to a pair `(S, T)`.
pub fn sweep_cut_pair(g: &Digraph) -> Result<Certificate> {
    let (sigma2, basis) = spectra::second_eigen_cluster(g)?;
    let lift = g.symmetric_lift();
    let exact_deg: Vec<BigRational> = (0..lift.n()).map(|v| lift.degree(v, Side::Out)).collect::<Result<_>>()?;
    let degrees: Vec<f64> = (0..lift.n()).map(|v| lift.out_degree_f64(v)).collect();
    let half = g.total_mass();
    let mut best: Option<Candidate> = None;
    for z in &basis {
        if let Some(c) = sweep(&lift, &degrees, &exact_deg, &half, z) {
            if best.as_ref().is_none_or(|b| c.value < b.value) {
                best = Some(c);
            }
        }
    }
    let best = best.ok_or(Error::SpectralCheck("sweep found no feasible cut".into()))?;
    let lift_set = VertexSet::from_indices(lift.n(), (0..lift.n()).filter(|&i| best.set[i]))?;
    let (s, t) = LiftSet::from_lift_vertices(&lift_set)?.project();
    let cut = phi_dir(g, &s, &t)?;
    let bound = (2.0 * (1.0 - sigma2)).max(0.0).sqrt();
    let satisfied = cut.value.to_f64().unwrap_or(f64::INFINITY) <= bound + CERTIFICATE_TOL;
    Ok(Certificate { cut, sigma2, bound, satisfied })
}

/// Removes the highest-index vertices from the larger of `S`, `T` until the
/// sizes match.
pub fn balance_pair(g: &Digraph, s: &VertexSet, t: &VertexSet) -> Result<CutPair> {
    if g.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    if !g.is_eulerian(crate::graph::DEFAULT_EULERIAN_TOL) {
        return Err(Error::NotEulerian);
    }
    let start = phi_dir(g, s, t)?;
    if start.value >= BigRational::from_integer(1.into()) {
        return Err(Error::DegenerateBound);
    }
    let (mut s, mut t) = (s.clone(), t.clone());
    while s.len() > t.len() {
        let v = s.iter().next_back().expect("non-empty");
        s.remove(v);
    }
    while t.len() > s.len() {
        let v = t.iter().next_back().expect("non-empty");
        t.remove(v);
    }
    phi_dir(g, &s, &t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitKind {
    Equal,
    Disjoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSplit {
    pub s: VertexSet,
    pub t: VertexSet,
    pub kind: SplitKind,
    /// `φ(S ∩ T)` or `φ_dir(S ∖ T, T ∖ S)`; `None` when the returned sets
    /// have zero volume.
    pub value: Option<BigRational>,
    pub s_empty: bool,
    pub t_empty: bool,
}

/// Keeps `S ∩ T` when it carries a third of `vol(S) + vol(T)`, otherwise the
/// two differences.
pub fn case_split(g: &Digraph, s: &VertexSet, t: &VertexSet) -> Result<CaseSplit> {
    if !g.is_undirected() {
        return Err(Error::NotUndirected);
    }
    let total = g.volume(s, Side::Out)? + g.volume(t, Side::Out)?;
    if total.is_zero() {
        return Err(Error::ZeroVolume);
    }
    let common = s.intersection(t);
    let three = BigRational::from_integer(3.into());
    let (s2, t2, kind, value) = if g.volume(&common, Side::Out)? * &three >= total {
        let value = phi(g, &common).ok();
        (common.clone(), common, SplitKind::Equal, value)
    } else {
        let (a, b) = (s.difference(t), t.difference(s));
        let value = phi_dir(g, &a, &b).ok().map(|c| c.value);
        (a, b, SplitKind::Disjoint, value)
    };
    Ok(CaseSplit { s_empty: s2.is_empty(), t_empty: t2.is_empty(), s: s2, t: t2, kind, value })
}
