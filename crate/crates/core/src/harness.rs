//! Inequality checks over graphs and corpora.
//!
//! Each check produces a [`VerificationRecord`] holding a chain
//! `lhs ≤ mid ≤ rhs` plus named side conditions. Comparisons between exact
//! quantities are exact; any comparison involving a floating-point side
//! allows [`SPECTRAL_TOL`].

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certificates::{balance_pair, case_split, sweep_cut_pair, Certificate, SplitKind};
use crate::error::{Error, Result};
use crate::exact::fraction_string;
use crate::expansion::{
    self, min_beta, min_beta_dir, min_phi, min_phi_dir, min_phi_dir_balanced, min_phi_k_dir, min_rho_k_dir,
    phi_dir, rho_k, vertex_expansion, CutPair, ExpansionProfile, Limits, SetValue,
};
use crate::families::{GeneratorSpec, FIG5_U, FIG5_V, FIG5_X};
use crate::graph::{Digraph, VertexSet};
use crate::spectra::{singular_values, Spectrum};

pub const SPECTRAL_TOL: f64 = 1e-9;
/// Lower floor for the dimensionless ratios standing in for `Ω(·)` claims.
pub const RATIO_FLOOR: f64 = 1.0 / 64.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Cheeger,
    DiCheeger,
    BipartiteCheeger,
    ConductanceBracket,
    BalancedPair,
    Separation,
    HigherOrder,
    SvHigherOrder,
    KWayChain,
    VertexSpectralD2,
    VertexSpectralD,
    Magnifier,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Cheeger,
        TheoremId::DiCheeger,
        TheoremId::BipartiteCheeger,
        TheoremId::ConductanceBracket,
        TheoremId::BalancedPair,
        TheoremId::Separation,
        TheoremId::HigherOrder,
        TheoremId::SvHigherOrder,
        TheoremId::KWayChain,
        TheoremId::VertexSpectralD2,
        TheoremId::VertexSpectralD,
        TheoremId::Magnifier,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Cheeger => "cheeger",
            TheoremId::DiCheeger => "di_cheeger",
            TheoremId::BipartiteCheeger => "bipartite_cheeger",
            TheoremId::ConductanceBracket => "relating_4_6",
            TheoremId::BalancedPair => "prop_3_7",
            TheoremId::Separation => "prop_4_7",
            TheoremId::HigherOrder => "higher_order_k",
            TheoremId::SvHigherOrder => "sv_higher_order_k",
            TheoremId::KWayChain => "thm_5_4",
            TheoremId::VertexSpectralD2 => "vertex_spectral_d2",
            TheoremId::VertexSpectralD => "vertex_spectral_d",
            TheoremId::Magnifier => "magnifier_lemma",
        }
    }

    fn per_k(self) -> bool {
        matches!(self, TheoremId::HigherOrder | TheoremId::SvHigherOrder | TheoremId::KWayChain)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Exact(BigRational),
    Float { value: f64, tol: f64 },
}

impl Quantity {
    fn float(value: f64) -> Self {
        Quantity::Float { value, tol: SPECTRAL_TOL }
    }

    pub fn approx(&self) -> f64 {
        match self {
            Quantity::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            Quantity::Float { value, .. } => *value,
        }
    }

    fn tol(&self) -> f64 {
        match self {
            Quantity::Exact(_) => 0.0,
            Quantity::Float { tol, .. } => *tol,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Quantity::Exact(x) => json!({"exact": fraction_string(x), "approx": x.to_f64()}),
            Quantity::Float { value, tol } => json!({"value": value, "tol": tol}),
        }
    }
}

/// `a ≤ b`, exactly when both sides are exact.
fn leq(a: &Quantity, b: &Quantity) -> bool {
    match (a, b) {
        (Quantity::Exact(x), Quantity::Exact(y)) => x <= y,
        _ => a.approx() <= b.approx() + a.tol().max(b.tol()),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRecord {
    pub theorem: TheoremId,
    pub graph: String,
    pub k: Option<usize>,
    pub status: Status,
    pub lhs: Option<Quantity>,
    pub mid: Option<Quantity>,
    pub rhs: Option<Quantity>,
    pub slack: Option<f64>,
    pub conditions: Vec<Condition>,
    pub ratios: BTreeMap<&'static str, Option<f64>>,
    pub witnesses: BTreeMap<&'static str, Value>,
    pub skip_reason: Option<String>,
}

impl VerificationRecord {
    fn new(theorem: TheoremId, graph: &str, k: Option<usize>) -> Self {
        VerificationRecord {
            theorem,
            graph: graph.to_string(),
            k,
            status: Status::Skip,
            lhs: None,
            mid: None,
            rhs: None,
            slack: None,
            conditions: Vec::new(),
            ratios: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            skip_reason: None,
        }
    }

    fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skip;
        self.skip_reason = Some(reason.into());
        self
    }

    fn condition(&mut self, name: &'static str, holds: bool) {
        self.conditions.push(Condition { name, holds });
    }

    /// Sets `status` from the chain and the conditions.
    fn finish(mut self) -> Self {
        let mut ok = true;
        let mut slack = f64::INFINITY;
        if let (Some(l), Some(m)) = (&self.lhs, &self.mid) {
            ok &= leq(l, m);
            slack = slack.min(m.approx() - l.approx());
        }
        if let (Some(m), Some(r)) = (&self.mid, &self.rhs) {
            ok &= leq(m, r);
            slack = slack.min(r.approx() - m.approx());
        }
        ok &= self.conditions.iter().all(|c| c.holds);
        self.slack = slack.is_finite().then_some(slack);
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> Value {
        let q = |x: &Option<Quantity>| x.as_ref().map_or(Value::Null, Quantity::to_json);
        json!({
            "theorem": self.theorem.as_str(),
            "graph": self.graph,
            "k": self.k,
            "status": self.status.as_str(),
            "lhs": q(&self.lhs),
            "mid": q(&self.mid),
            "rhs": q(&self.rhs),
            "slack": self.slack,
            "conditions": self.conditions.iter().map(|c| json!({"name": c.name, "holds": c.holds})).collect::<Vec<_>>(),
            "ratios": self.ratios.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "witnesses": self.witnesses.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<serde_json::Map<_, _>>(),
            "skip_reason": self.skip_reason,
        })
    }
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub limits: Limits,
    pub ks: Vec<usize>,
    /// Largest `n` for which k-way checks run.
    pub kway_max_n: usize,
    /// Largest `n` for the exhaustive case-split condition.
    pub case_split_max_n: usize,
    /// Added to `σ₂` and `μ₂` before they enter any bound (negative control).
    pub sigma2_offset: f64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { limits: Limits::default(), ks: vec![2, 3], kway_max_n: 7, case_split_max_n: 6, sigma2_offset: 0.0 }
    }
}

pub fn set_json(s: &VertexSet) -> Value {
    json!(s.to_vec())
}

pub fn pair_json(p: &CutPair) -> Value {
    json!({"S": set_json(&p.s), "T": set_json(&p.t), "value": fraction_string(&p.value)})
}

fn q(x: &BigRational) -> Quantity {
    Quantity::Exact(x.clone())
}

/// Lazily computed quantities for one graph.
pub struct GraphContext<'a> {
    pub id: String,
    pub graph: Digraph,
    config: &'a HarnessConfig,
    spectrum: OnceCell<Result<Spectrum>>,
    phi: OnceCell<Result<SetValue>>,
    phi_dir: OnceCell<Result<CutPair>>,
    beta_dir: OnceCell<Result<CutPair>>,
    profile: OnceCell<Result<ExpansionProfile>>,
}

impl<'a> GraphContext<'a> {
    pub fn new(id: String, graph: Digraph, config: &'a HarnessConfig) -> Self {
        GraphContext {
            id,
            graph,
            config,
            spectrum: OnceCell::new(),
            phi: OnceCell::new(),
            phi_dir: OnceCell::new(),
            beta_dir: OnceCell::new(),
            profile: OnceCell::new(),
        }
    }

    fn limits(&self) -> &Limits {
        &self.config.limits
    }

    fn spectrum(&self) -> Result<&Spectrum> {
        self.spectrum.get_or_init(|| singular_values(&self.graph)).as_ref().map_err(Clone::clone)
    }

    /// `σ_k` (1-based), with the configured offset applied to `σ₂`.
    fn sigma(&self, k: usize) -> Result<f64> {
        let s = self.spectrum()?.sigmas[k - 1];
        Ok(if k == 2 { s + self.config.sigma2_offset } else { s })
    }

    fn mu(&self, k: usize) -> Result<f64> {
        let mus = self.spectrum()?.mus.as_ref().ok_or(Error::NotUndirected)?;
        let m = mus[k - 1];
        Ok(if k == 2 { m + self.config.sigma2_offset } else { m })
    }

    fn min_phi(&self) -> Result<&SetValue> {
        self.phi.get_or_init(|| min_phi(&self.graph, self.limits())).as_ref().map_err(Clone::clone)
    }

    fn min_phi_dir(&self) -> Result<&CutPair> {
        self.phi_dir.get_or_init(|| min_phi_dir(&self.graph, self.limits())).as_ref().map_err(Clone::clone)
    }

    fn min_beta_dir(&self) -> Result<&CutPair> {
        self.beta_dir.get_or_init(|| min_beta_dir(&self.graph, self.limits())).as_ref().map_err(Clone::clone)
    }

    fn profile(&self) -> Result<&ExpansionProfile> {
        self.profile
            .get_or_init(|| vertex_expansion(&self.graph, (self.graph.n() / 2).max(1), self.limits()))
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Runs `body`, turning precondition errors into a skip record.
fn guarded(
    theorem: TheoremId,
    ctx: &GraphContext,
    k: Option<usize>,
    body: impl FnOnce(VerificationRecord) -> Result<VerificationRecord>,
) -> VerificationRecord {
    let base = VerificationRecord::new(theorem, &ctx.id, k);
    match body(base.clone()) {
        Ok(r) => r,
        Err(e) => base.skipped(e.to_string()),
    }
}

fn need(cond: bool, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(reason.to_string()))
    }
}

fn sqrt2(x: f64) -> f64 {
    (2.0 * x).max(0.0).sqrt()
}

fn check_cheeger(ctx: &GraphContext) -> VerificationRecord {
    guarded(TheoremId::Cheeger, ctx, None, |mut r| {
        need(ctx.graph.is_undirected(), "requires an undirected graph")?;
        need(ctx.graph.n() >= 2, "requires n ≥ 2")?;
        let mu2 = ctx.mu(2)?;
        let phi = ctx.min_phi()?;
        r.lhs = Some(Quantity::float((1.0 - mu2) / 2.0));
        r.mid = Some(q(&phi.value));
        r.rhs = Some(Quantity::float(sqrt2(1.0 - mu2)));
        r.witnesses.insert("S", set_json(&phi.set));
        Ok(r.finish())
    })
}

fn check_di_cheeger(ctx: &GraphContext) -> VerificationRecord {
    guarded(TheoremId::DiCheeger, ctx, None, |mut r| {
        need(ctx.graph.n() >= 2, "requires n ≥ 2")?;
        let sigma2 = ctx.sigma(2)?;
        let pd = ctx.min_phi_dir()?;
        r.lhs = Some(Quantity::float((1.0 - sigma2) / 2.0));
        r.mid = Some(q(&pd.value));
        r.rhs = Some(Quantity::float(sqrt2(1.0 - sigma2)));
        r.witnesses.insert("pair", pair_json(pd));
        let cert: Certificate = sweep_cut_pair(&ctx.graph)?;
        r.condition("sweep_certificate_satisfied", cert.satisfied);
        r.condition("sweep_cut_feasible", cert.cut.value >= pd.value);
        r.witnesses.insert("sweep", pair_json(&cert.cut));
        if 2 * ctx.graph.n() <= ctx.limits().subset_n {
            let lifted = min_phi(&ctx.graph.symmetric_lift(), ctx.limits())?;
            r.condition("lift_conductance_equal", lifted.value == pd.value);
            r.witnesses.insert("lift_set", set_json(&lifted.set));
        }
        Ok(r.finish())
    })
}

fn check_bipartite_cheeger(ctx: &GraphContext) -> VerificationRecord {
    guarded(TheoremId::BipartiteCheeger, ctx, None, |mut r| {
        need(ctx.graph.is_undirected(), "requires an undirected graph")?;
        need(ctx.graph.regular_degree().is_some(), "requires a regular graph")?;
        let n = ctx.graph.n();
        let mun = ctx.mu(n)?;
        let (beta, y) = min_beta(&ctx.graph, ctx.limits())?;
        r.lhs = Some(Quantity::float((1.0 + mun) / 2.0));
        r.mid = Some(q(&beta));
        r.rhs = Some(Quantity::float(sqrt2(1.0 + mun)));
        r.condition("beta_equals_beta_dir", ctx.min_beta_dir()?.value == beta);
        r.witnesses.insert("y", json!(y.0));
        Ok(r.finish())
    })
}

/// `min{φ(S∩T), φ_dir(S∖T, T∖S)} ≤ 3 φ_dir(S, T)` for the case chosen by
/// [`case_split`], over every pair with positive volume.
fn case_split_exhaustive(g: &Digraph) -> Result<bool> {
    let n = g.n();
    let three = BigRational::from_integer(3.into());
    for s in 0..1u64 << n {
        for t in 0..1u64 << n {
            let (s, t) = (VertexSet::from_mask(n, s), VertexSet::from_mask(n, t));
            let Ok(base) = phi_dir(g, &s, &t) else { continue };
            let split = case_split(g, &s, &t)?;
            if let Some(v) = split.value {
                if v > &three * &base.value {
                    return Ok(false);
                }
            } else if split.kind == SplitKind::Equal {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_relating(ctx: &GraphContext) -> VerificationRecord {
    guarded(TheoremId::ConductanceBracket, ctx, None, |mut r| {
        let pd = ctx.min_phi_dir()?;
        let phi = ctx.min_phi()?;
        let bd = ctx.min_beta_dir()?;
        let inner = (&phi.value).min(&bd.value).clone();
        r.lhs = Some(q(&pd.value));
        r.mid = Some(q(&inner));
        r.witnesses.insert("phi_dir_pair", pair_json(pd));
        r.witnesses.insert("phi_set", set_json(&phi.set));
        r.witnesses.insert("beta_dir_pair", pair_json(bd));
        if ctx.graph.is_undirected() {
            r.rhs = Some(q(&(&pd.value * BigRational::from_integer(3.into()))));
            let (beta, _) = min_beta(&ctx.graph, ctx.limits())?;
            r.condition("beta_equals_beta_dir", beta == bd.value);
            if ctx.graph.n() <= ctx.config.case_split_max_n {
                r.condition("case_split_bound", case_split_exhaustive(&ctx.graph)?);
            }
        }
        Ok(r.finish())
    })
}

fn check_balanced_pair(ctx: &GraphContext) -> VerificationRecord {
    guarded(TheoremId::BalancedPair, ctx, None, |mut r| {
        need(ctx.graph.regular_degree().is_some(), "requires a regular graph")?;
        let pd = ctx.min_phi_dir()?;
        need(pd.value < BigRational::one(), "bound is degenerate: directed conductance equals 1")?;
        let bal = min_phi_dir_balanced(&ctx.graph, ctx.limits(), false)?;
        let bound = &pd.value * BigRational::from_integer(2.into()) / (BigRational::one() - &pd.value);
        r.lhs = Some(q(&pd.value));
        r.mid = Some(q(&bal.value));
        r.rhs = Some(q(&bound));
        let balanced = balance_pair(&ctx.graph, &pd.s, &pd.t)?;
        r.condition("balanced_witness_within_bound", balanced.value <= bound && balanced.s.len() == balanced.t.len());
        r.witnesses.insert("balanced_pair", pair_json(&bal));
        r.witnesses.insert("rebalanced_witness", pair_json(&balanced));
        Ok(r.finish())
    })
}

fn check_separation(ctx: &GraphContext, spec: Option<&GeneratorSpec>) -> VerificationRecord {
    guarded(TheoremId::Separation, ctx, None, |mut r| {
        let spec = spec.filter(|s| s.is_fig()).ok_or_else(|| Error::Precondition("only defined for the counterexample graphs".into()))?;
        let pd = ctx.min_phi_dir()?;
        let zero = BigRational::zero();
        r.lhs = Some(q(&zero));
        r.mid = Some(q(&pd.value));
        r.rhs = Some(q(&zero));
        r.condition("phi_positive", ctx.min_phi()?.value.is_positive());
        r.condition("beta_dir_positive", ctx.min_beta_dir()?.value.is_positive());
        r.condition("sigma2_is_one", (ctx.sigma(2)? - 1.0).abs() <= SPECTRAL_TOL);
        if *spec != GeneratorSpec::Fig5 {
            r.condition("regular", ctx.graph.regular_degree().is_some());
        }
        r.witnesses.insert("computed_pair", pair_json(pd));
        if *spec == GeneratorSpec::Fig5 {
            let s = VertexSet::from_indices(4, [FIG5_X, FIG5_V])?;
            let t = VertexSet::from_indices(4, [FIG5_X, FIG5_U])?;
            r.witnesses.insert("stated_pair", pair_json(&phi_dir(&ctx.graph, &s, &t)?));
        }
        Ok(r.finish())
    })
}

fn kway_gate(ctx: &GraphContext, k: usize) -> Result<()> {
    need(ctx.graph.n() <= ctx.config.kway_max_n, "graph exceeds the k-way size limit")?;
    need(k <= ctx.graph.n(), "k exceeds n")
}

fn check_higher_order(ctx: &GraphContext, k: usize) -> VerificationRecord {
    guarded(TheoremId::HigherOrder, ctx, Some(k), |mut r| {
        need(ctx.graph.is_undirected(), "requires an undirected graph")?;
        kway_gate(ctx, k)?;
        let mu_k = ctx.mu(k)?;
        let fam = rho_k(&ctx.graph, k, ctx.limits())?;
        r.lhs = Some(Quantity::float((1.0 - mu_k) / 2.0));
        r.mid = Some(q(&fam.value));
        let gap = 1.0 - mu_k;
        r.ratios.insert("upper_ratio", (gap > SPECTRAL_TOL).then(|| fam.value.to_f64().unwrap_or(f64::NAN) / gap.sqrt()));
        r.witnesses.insert("sets", json!(fam.sets.iter().map(set_json).collect::<Vec<_>>()));
        Ok(r.finish())
    })
}

fn family_json(f: &expansion::PartitionFamily) -> Value {
    json!((0..f.k)
        .map(|i| json!({"S": set_json(&f.s[i]), "T": set_json(&f.t[i]), "value": fraction_string(&f.values[i])}))
        .collect::<Vec<_>>())
}

fn check_sv_higher_order(ctx: &GraphContext, k: usize) -> VerificationRecord {
    guarded(TheoremId::SvHigherOrder, ctx, Some(k), |mut r| {
        kway_gate(ctx, k)?;
        let sigma_k = ctx.sigma(k)?;
        let fam = min_phi_k_dir(&ctx.graph, k, ctx.limits())?;
        r.lhs = Some(Quantity::float((1.0 - sigma_k) / 2.0));
        r.mid = Some(q(&fam.value));
        let lifted = rho_k(&ctx.graph.symmetric_lift(), k, ctx.limits())?;
        r.condition("lift_k_way_equal", lifted.value == fam.value);
        let gap = 1.0 - sigma_k;
        r.ratios.insert("upper_ratio", (gap > SPECTRAL_TOL).then(|| fam.value.to_f64().unwrap_or(f64::NAN) / gap.sqrt()));
        r.witnesses.insert("family", family_json(&fam));
        Ok(r.finish())
    })
}

fn check_kway_chain(ctx: &GraphContext, k: usize) -> VerificationRecord {
    guarded(TheoremId::KWayChain, ctx, Some(k), |mut r| {
        need(ctx.graph.is_undirected(), "requires an undirected graph")?;
        kway_gate(ctx, k)?;
        let phi_k = min_phi_k_dir(&ctx.graph, k, ctx.limits())?;
        let rho = min_rho_k_dir(&ctx.graph, k, ctx.limits())?;
        r.lhs = Some(q(&phi_k.value));
        r.mid = Some(q(&rho.value));
        r.rhs = Some(q(&(&phi_k.value * BigRational::from_integer(3.into()))));
        r.witnesses.insert("family", family_json(&rho));
        Ok(r.finish())
    })
}

/// `(1 − σ₂) / (δ² / dᵖ)`, `None` when `δ = 0`.
fn expansion_ratio(gap: f64, delta: &BigRational, degree: &BigRational, power: i32) -> Option<f64> {
    if delta.is_zero() {
        return None;
    }
    let d = delta.to_f64()?;
    Some(gap / (d * d / degree.to_f64()?.powi(power)))
}

fn vertex_gate<'c>(ctx: &'c GraphContext<'_>) -> Result<&'c ExpansionProfile> {
    need(ctx.graph.n() >= 2, "requires n ≥ 2")?;
    ctx.profile()
}

fn check_vertex_spectral(ctx: &GraphContext, theorem: TheoremId) -> VerificationRecord {
    guarded(theorem, ctx, None, |mut r| {
        let p = vertex_gate(ctx)?;
        let gap = 1.0 - ctx.sigma(2)?;
        r.witnesses.insert("delta_set", set_json(&p.profile.last().ok_or(Error::EmptySet)?.set));
        r.witnesses.insert("degree", json!(fraction_string(&p.degree)));
        let power = if theorem == TheoremId::VertexSpectralD2 { 2 } else { 1 };
        if theorem == TheoremId::VertexSpectralD2 {
            // Spectral gap certifies vertex expansion: 1 − σ₂ ≤ δ.
            r.lhs = Some(Quantity::float(gap));
            r.mid = Some(q(&p.delta));
        } else {
            r.mid = Some(q(&p.delta));
        }
        let ratio = expansion_ratio(gap, &p.delta, &p.degree, power);
        let name = if power == 2 { "gap_over_delta_sq_over_d_sq" } else { "gap_over_delta_sq_over_d" };
        r.ratios.insert(name, ratio);
        if let Some(x) = ratio {
            r.condition("ratio_above_floor", x >= RATIO_FLOOR);
        }
        Ok(r.finish())
    })
}

fn check_magnifier(ctx: &GraphContext) -> VerificationRecord {
    guarded(TheoremId::Magnifier, ctx, None, |mut r| {
        let p = vertex_gate(ctx)?;
        let lift = ctx.graph.symmetric_lift();
        need(lift.n() <= ctx.limits().vertex_n, "lift exceeds the vertex-expansion size limit")?;
        let mag = vertex_expansion(&lift, ctx.graph.n(), ctx.limits())?.magnifier;
        r.lhs = Some(q(&(&p.delta / BigRational::from_integer(8.into()))));
        r.mid = Some(q(&mag.value));
        r.witnesses.insert("lift_set", set_json(&mag.set));
        Ok(r.finish())
    })
}

/// Runs `checks` (in [`TheoremId::ALL`] order, once per `k` for k-way checks)
/// on one graph.
pub fn verify_graph(
    id: &str,
    graph: Digraph,
    spec: Option<&GeneratorSpec>,
    checks: &[TheoremId],
    config: &HarnessConfig,
) -> Vec<VerificationRecord> {
    let ctx = GraphContext::new(id.to_string(), graph, config);
    let mut records = Vec::new();
    for theorem in TheoremId::ALL.into_iter().filter(|t| checks.contains(t)) {
        if theorem.per_k() {
            for &k in &config.ks {
                records.push(match theorem {
                    TheoremId::HigherOrder => check_higher_order(&ctx, k),
                    TheoremId::SvHigherOrder => check_sv_higher_order(&ctx, k),
                    _ => check_kway_chain(&ctx, k),
                });
            }
            continue;
        }
        records.push(match theorem {
            TheoremId::Cheeger => check_cheeger(&ctx),
            TheoremId::DiCheeger => check_di_cheeger(&ctx),
            TheoremId::BipartiteCheeger => check_bipartite_cheeger(&ctx),
            TheoremId::ConductanceBracket => check_relating(&ctx),
            TheoremId::BalancedPair => check_balanced_pair(&ctx),
            TheoremId::Separation => check_separation(&ctx, spec),
            TheoremId::VertexSpectralD2 | TheoremId::VertexSpectralD => check_vertex_spectral(&ctx, theorem),
            TheoremId::Magnifier => check_magnifier(&ctx),
            TheoremId::HigherOrder | TheoremId::SvHigherOrder | TheoremId::KWayChain => unreachable!(),
        });
    }
    records
}

/// Verifies every corpus entry in parallel; records come back in corpus
/// order. A generator failure becomes a failed record for that entry.
pub fn run_suite(corpus: &[GeneratorSpec], checks: &[TheoremId], config: &HarnessConfig) -> Vec<VerificationRecord> {
    corpus
        .par_iter()
        .map(|spec| match spec.build() {
            Ok(g) => verify_graph(&spec.id(), g, Some(spec), checks, config),
            Err(e) => {
                let mut r = VerificationRecord::new(TheoremId::DiCheeger, &spec.id(), None);
                r.status = Status::Fail;
                r.skip_reason = Some(format!("generator failed: {e}"));
                vec![r]
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
