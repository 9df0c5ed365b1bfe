//! End-to-end acceptance checks. Each test prints one `[PASS]`/`[FAIL]` line
//! straight to stderr so the lines show up even under captured output.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{ToPrimitive, Zero};
use svcheeger::certificates::{case_split, sweep_cut_pair};
use svcheeger::expansion::{
    min_beta, min_beta_dir, min_phi, min_phi_dir, min_phi_dir_balanced, phi_dir, vertex_expansion, Limits,
};
use svcheeger::families::{self, default_corpus, GeneratorSpec};
use svcheeger::harness::{run_suite, HarnessConfig, Status, TheoremId, VerificationRecord};
use svcheeger::spectra::{lift_eigen, singular_values};
use svcheeger::{Digraph, VertexSet, Weight};

fn report(id: u32, what: &str, ok: bool, detail: String) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let line = format!("[{tag}] AC-{id:02} {what}: {detail}\n");
    std::io::stderr().lock().write_all(line.as_bytes()).unwrap();
    assert!(ok, "{}", line.trim_end());
}

fn w(x: i64) -> Weight {
    Weight::from_integer(x.into())
}

fn f(x: &Weight) -> f64 {
    x.to_f64().unwrap()
}

/// `A = D_out^{-1/2} M D_in^{-1/2}` assembled from the edge list.
fn oracle_adjacency(g: &Digraph) -> DMatrix<f64> {
    let n = g.n();
    let mut m = DMatrix::zeros(n, n);
    for (u, v, x) in g.edges() {
        m[(u, v)] += f(x);
    }
    let dout: Vec<f64> = (0..n).map(|u| m.row(u).sum()).collect();
    let din: Vec<f64> = (0..n).map(|v| m.column(v).sum()).collect();
    DMatrix::from_fn(n, n, |u, v| m[(u, v)] / (dout[u] * din[v]).sqrt())
}

fn random_eulerian(count: u64, max_n: usize, seed0: u64) -> Vec<Digraph> {
    (0..count).map(|i| families::random_eulerian(3 + i as usize % (max_n - 2), 0.5, seed0 + i).unwrap()).collect()
}

fn random_undirected(count: u64, max_n: usize, seed0: u64) -> Vec<Digraph> {
    random_eulerian(count, max_n, seed0).iter().map(Digraph::undirectify).collect()
}

fn named() -> Vec<Digraph> {
    vec![
        families::fig5(),
        families::fig6_unit(),
        families::fig6_half(),
        families::cycle(3, 0, true).unwrap(),
        families::cycle(4, 1, true).unwrap(),
        families::cycle(5, 0, false).unwrap(),
        families::cycle(6, 2, false).unwrap(),
        families::hypercube(2, 0).unwrap(),
        families::hypercube(3, 0).unwrap(),
        families::hypercube(3, 1).unwrap(),
        families::complete_bipartite(3).unwrap(),
        families::complete_bipartite(4).unwrap(),
    ]
}

fn failures(records: &[VerificationRecord]) -> Vec<String> {
    records.iter().filter(|r| r.status == Status::Fail).map(|r| format!("{} on {}", r.theorem, r.graph)).collect()
}

#[test]
fn ac01_lift_spectrum_matches_singular_values() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for g in random_eulerian(100, 10, 10_000) {
        let a = oracle_adjacency(&g);
        let mut expected: Vec<f64> =
            SymmetricEigen::new(a.transpose() * &a).eigenvalues.iter().map(|x| x.max(0.0).sqrt()).collect();
        expected.sort_by(|x, y| y.total_cmp(x));
        let (_, eigen) = lift_eigen(&g).unwrap();
        for (got, want) in eigen.values.iter().zip(&expected) {
            worst = worst.max((got - want).abs());
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        "lift eigenvalues equal singular values",
        worst <= 1e-7 && elapsed <= Duration::from_secs(60),
        format!("max deviation {worst:.3e} over 100 graphs in {elapsed:.2?}"),
    );
}

#[test]
fn ac02_lift_conductance_is_directed_conductance() {
    let start = Instant::now();
    let lim = Limits::default();
    let mut graphs = random_eulerian(50, 6, 20_000);
    graphs.extend(named().into_iter().filter(|g| 2 * g.n() <= lim.subset_n));
    let mismatched: Vec<usize> = graphs
        .iter()
        .enumerate()
        .filter(|(_, g)| min_phi_dir(g, &lim).unwrap().value != min_phi(&g.symmetric_lift(), &lim).unwrap().value)
        .map(|(i, _)| i)
        .collect();
    let elapsed = start.elapsed();
    report(
        2,
        "directed conductance equals lift conductance exactly",
        mismatched.is_empty() && elapsed <= Duration::from_secs(120),
        format!("{} graphs, mismatches {mismatched:?}, {elapsed:.2?}", graphs.len()),
    );
}

#[test]
fn ac03_directed_cheeger_on_default_corpus() {
    let corpus = default_corpus();
    let records = run_suite(&corpus, &[TheoremId::DiCheeger], &HarnessConfig::default());
    let bad = failures(&records);
    let skipped = records.iter().filter(|r| r.status == Status::Skip).count();
    report(
        3,
        "(1-σ₂)/2 ≤ φ_dir ≤ √(2(1-σ₂)) on the default corpus",
        bad.is_empty() && skipped == 0 && records.len() == corpus.len(),
        format!("{} graphs, failures {bad:?}, skipped {skipped}", corpus.len()),
    );
}

#[test]
fn ac04_counterexamples_separate_the_quantities() {
    let lim = Limits::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, g) in [("fig5", families::fig5()), ("fig6_unit", families::fig6_unit()), ("fig6_half", families::fig6_half())] {
        let pd = min_phi_dir(&g, &lim).unwrap().value;
        let phi = min_phi(&g, &lim).unwrap().value;
        let bd = min_beta_dir(&g, &lim).unwrap().value;
        let sigma2 = singular_values(&g).unwrap().sigmas[1];
        let this = pd.is_zero() && phi > w(0) && bd > w(0) && (sigma2 - 1.0).abs() <= 1e-9;
        ok &= this;
        lines.push(format!("{name}: φ_dir={pd} φ={phi} β_dir={bd} σ₂={sigma2:.12}"));
    }
    let recs = run_suite(
        &[GeneratorSpec::Fig5, GeneratorSpec::Fig6Unit, GeneratorSpec::Fig6Half],
        &[TheoremId::Separation],
        &HarnessConfig::default(),
    );
    ok &= recs.iter().all(|r| r.status == Status::Pass);
    report(4, "φ_dir = 0 while φ, β_dir > 0 and σ₂ = 1", ok, lines.join("; "));
}

/// Every pair with positive volume on `g` keeps the case-split bound.
fn case_split_holds(g: &Digraph) -> bool {
    let n = g.n();
    for s in 0..1u64 << n {
        for t in 0..1u64 << n {
            let (s, t) = (VertexSet::from_mask(n, s), VertexSet::from_mask(n, t));
            let Ok(base) = phi_dir(g, &s, &t) else { continue };
            match case_split(g, &s, &t).unwrap().value {
                Some(v) if v <= &base.value * w(3) => {}
                _ => return false,
            }
        }
    }
    true
}

#[test]
fn ac05_conductance_and_bipartiteness_bracket_directed_conductance() {
    let lim = Limits::default();
    let graphs = random_undirected(50, 8, 30_000);
    let mut chain_bad = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let pd = min_phi_dir(g, &lim).unwrap().value;
        let phi = min_phi(g, &lim).unwrap().value;
        let (beta, _) = min_beta(g, &lim).unwrap();
        let m = phi.min(beta);
        if !(pd <= m && m <= &pd * w(3)) {
            chain_bad.push(i);
        }
    }
    let small: Vec<&Digraph> = graphs.iter().filter(|g| g.n() <= 6).collect();
    let split_bad: Vec<usize> = small.iter().enumerate().filter(|(_, g)| !case_split_holds(g)).map(|(i, _)| i).collect();
    report(
        5,
        "φ_dir ≤ min{φ, β} ≤ 3φ_dir and exhaustive case split",
        chain_bad.is_empty() && split_bad.is_empty() && !small.is_empty(),
        format!(
            "{} graphs, chain failures {chain_bad:?}; case split on {} graphs, failures {split_bad:?}",
            graphs.len(),
            small.len()
        ),
    );
}

#[test]
fn ac06_sign_vector_and_disjoint_pair_bipartiteness_agree() {
    let lim = Limits::default();
    let mut graphs = random_undirected(40, 7, 40_000);
    graphs.extend(named().into_iter().filter(|g| g.is_undirected() && g.n() <= 7));
    let bad: Vec<usize> = graphs
        .iter()
        .enumerate()
        .filter(|(_, g)| min_beta(g, &lim).unwrap().0 != min_beta_dir(g, &lim).unwrap().value)
        .map(|(i, _)| i)
        .collect();
    report(6, "β = β_dir on undirected graphs", bad.is_empty(), format!("{} graphs, mismatches {bad:?}", graphs.len()));
}

#[test]
fn ac07_k_way_bounds() {
    let mut corpus: Vec<GeneratorSpec> = default_corpus();
    corpus.extend((0..10).map(|i| GeneratorSpec::RandomEulerian { n: 4 + i % 4, density: 0.6, seed: 50_000 + i as u64 }));
    let checks = [TheoremId::SvHigherOrder, TheoremId::KWayChain];
    let records = run_suite(&corpus, &checks, &HarnessConfig::default());
    let bad = failures(&records);
    let ran = |t: TheoremId| records.iter().filter(|r| r.theorem == t && r.status == Status::Pass).count();
    let (sv, chain) = (ran(TheoremId::SvHigherOrder), ran(TheoremId::KWayChain));
    report(
        7,
        "(1-σ_k)/2 ≤ φ_{k,dir} = ρ_k(lift) and φ_{k,dir} ≤ ρ_{k,dir} ≤ 3φ_{k,dir}, k = 2, 3",
        bad.is_empty() && sv > 0 && chain > 0,
        format!("{sv} spectral records, {chain} chain records, failures {bad:?}"),
    );
}

#[test]
fn ac08_balanced_pairs() {
    let lim = Limits::default();
    let mut graphs: Vec<Digraph> =
        default_corpus().iter().map(|s| s.build().unwrap()).filter(|g| g.n() <= 6 && g.regular_degree().is_some()).collect();
    graphs.extend((0..20).map(|i| families::random_regular_digraph(3 + i % 4, 1 + i % 3, 60_000 + i as u64).unwrap()));
    let mut checked = 0;
    let mut bad = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let pd = min_phi_dir(g, &lim).unwrap().value;
        if pd >= w(1) {
            continue;
        }
        checked += 1;
        let bal = min_phi_dir_balanced(g, &lim, false).unwrap().value;
        let bound = &pd * w(2) / (w(1) - &pd);
        if !(pd <= bal && bal <= bound) {
            bad.push(i);
        }
    }
    report(
        8,
        "φ_dir ≤ balanced φ_dir ≤ 2φ_dir/(1-φ_dir) on regular graphs",
        bad.is_empty() && checked > 0,
        format!("{checked} graphs checked, failures {bad:?}"),
    );
}

#[test]
fn ac09_vertex_expansion() {
    let lim = Limits::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [8, 16, 32] {
        let g = families::cycle(n, 4, false).unwrap();
        let p = vertex_expansion(&g, n / 2, &lim).unwrap();
        let gap = 1.0 - singular_values(&g).unwrap().sigmas[1];
        let delta = f(&p.delta);
        let ratio = gap / (delta * delta / f(&p.degree));
        ok &= (1.0 / 64.0..=64.0).contains(&ratio);
        notes.push(format!("C{n}: δ={} ratio={ratio:.4}", p.delta));
    }
    let (mut magnifier_bad, mut tanner_bad) = (0, 0);
    for i in 0..30u64 {
        let n = 4 + (i % 7) as usize;
        let g = families::random_regular_digraph(n, 3, 70_000 + i).unwrap();
        let p = vertex_expansion(&g, n / 2, &lim).unwrap();
        let lift = vertex_expansion(&g.symmetric_lift(), n, &lim).unwrap();
        if lift.magnifier.value < &p.delta / w(8) {
            magnifier_bad += 1;
        }
        let gap = 1.0 - singular_values(&g).unwrap().sigmas[1];
        if f(&p.delta) < gap - 1e-9 {
            tanner_bad += 1;
        }
    }
    ok &= magnifier_bad == 0 && tanner_bad == 0;
    notes.push(format!("30 random 3-regular: magnifier failures {magnifier_bad}, 1-σ₂ ≤ δ failures {tanner_bad}"));
    for half in [2, 3, 4] {
        let g = families::complete_bipartite(half).unwrap();
        let mag = vertex_expansion(&g, half, &lim).unwrap().magnifier.value;
        let gap = 1.0 - singular_values(&g).unwrap().sigmas[1];
        ok &= mag == w(1) && gap.abs() <= 1e-9;
        notes.push(format!("K{half},{half}: δ'={mag} 1-σ₂={gap:.1e}"));
    }
    report(9, "vertex expansion against the spectral gap", ok, notes.join("; "));
}

fn max_deviation(mut got: Vec<f64>, mut want: Vec<f64>) -> f64 {
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    assert_eq!(got.len(), want.len());
    got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

#[test]
fn ac10_closed_form_spectra() {
    use std::f64::consts::PI;
    let mut worst = 0.0f64;
    for n in 3..=12 {
        for loops in [0, 2] {
            let s = singular_values(&families::cycle(n, loops, false).unwrap()).unwrap();
            let d = 2.0 + loops as f64;
            let want: Vec<f64> = (0..n).map(|j| (2.0 * (2.0 * PI * j as f64 / n as f64).cos() + loops as f64) / d).collect();
            worst = worst.max(max_deviation(s.mus.clone().unwrap(), want.clone()));
            worst = worst.max(max_deviation(s.sigmas.clone(), want.iter().map(|x| x.abs()).collect()));
        }
        let s = singular_values(&families::cycle(n, 0, true).unwrap()).unwrap();
        worst = worst.max(max_deviation(s.sigmas, vec![1.0; n]));
    }
    for dim in 1..=5usize {
        for loops in [0, 1] {
            let s = singular_values(&families::hypercube(dim, loops).unwrap()).unwrap();
            let mut want = Vec::new();
            for v in 0..1usize << dim {
                let j = v.count_ones() as f64;
                want.push((dim as f64 - 2.0 * j + loops as f64) / (dim + loops) as f64);
            }
            worst = worst.max(max_deviation(s.mus.unwrap(), want));
        }
    }
    report(10, "cycle and hypercube spectra match closed forms", worst <= 1e-8, format!("max deviation {worst:.3e}"));
}

#[test]
fn ac11_sweep_certificates() {
    let start = Instant::now();
    let unsatisfied = random_eulerian(200, 10, 80_000)
        .iter()
        .filter(|g| !sweep_cut_pair(g).unwrap().satisfied)
        .count();
    let mut zero_inputs = vec![families::fig5()];
    zero_inputs.extend((2..=5).map(|h| families::complete_bipartite(h).unwrap()));
    zero_inputs.extend((1..=4).map(|d| families::hypercube(d, 0).unwrap()));
    zero_inputs.extend([4, 6, 8].map(|n| families::cycle(n, 0, false).unwrap()));
    zero_inputs.extend((3..=8).map(|n| families::cycle(n, 0, true).unwrap()));
    zero_inputs.extend((0..10u64).map(|i| families::random_regular_digraph(3 + i as usize % 6, 1, 90_000 + i).unwrap()));
    let nonzero = zero_inputs.iter().filter(|g| !sweep_cut_pair(g).unwrap().cut.value.is_zero()).count();
    let elapsed = start.elapsed();
    report(
        11,
        "sweep cut within √(2(1-σ₂)) and zero on bipartite or permutation inputs",
        unsatisfied == 0 && nonzero == 0 && elapsed <= Duration::from_secs(120),
        format!("200 random: {unsatisfied} unsatisfied; {} zero-cut inputs: {nonzero} nonzero; {elapsed:.2?}", zero_inputs.len()),
    );
}

fn verify(extra: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_svcheeger"))
        .arg("verify")
        .arg("--default-corpus")
        .args(extra)
        .output()
        .expect("running svcheeger");
    (out.stdout, out.status.code())
}

#[test]
fn ac12_verify_is_deterministic() {
    let (a, code_a) = verify(&[]);
    let (b, code_b) = verify(&[]);
    let (_, negative) = verify(&["--sigma2-offset", "-0.5"]);
    let lines = a.iter().filter(|&&c| c == b'\n').count();
    report(
        12,
        "verify output is byte-stable and the perturbed control fails",
        a == b && !a.is_empty() && code_a == Some(0) && code_b == Some(0) && negative == Some(1),
        format!("{lines} lines, identical {}, exit codes {code_a:?}/{code_b:?}, control {negative:?}", a == b),
    );
}
