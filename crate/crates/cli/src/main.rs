use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use svcheeger::expansion::Limits;
use svcheeger::families::{default_corpus, GeneratorSpec};
use svcheeger::harness::{run_suite, HarnessConfig, Status, TheoremId};
use svcheeger::io::{parse_graph, serialize_graph};
use svcheeger::report::{analyze, canonical_json, certify};
use svcheeger::Digraph;

const THREADS_ENV: &str = "SVCHEEGER_THREADS";

/// Spectral and combinatorial expansion of Eulerian digraphs.
///
/// JSON goes to standard output, a readable summary to standard error.
/// Set SVCHEEGER_THREADS to bound the worker pool.
#[derive(Parser)]
#[command(name = "svcheeger", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it in TSV form.
    Gen(GenArgs),
    /// Report spectra, exact minimisers and expansion profiles for a graph file.
    Analyze(AnalyzeArgs),
    /// Sweep-cut certificate for a graph file.
    Certify { file: PathBuf },
    /// Run inequality checks over a corpus; JSON lines, one per record.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// hypercube, cycle, complete_bipartite, fig5, fig6_unit, fig6_half,
    /// random_eulerian or random_regular_digraph.
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    loops: Option<usize>,
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    half: Option<usize>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CapArgs {
    /// Largest n for pair enumeration.
    #[arg(long, default_value_t = Limits::default().pair_n)]
    max_exact_n: usize,
    /// Largest n for single-subset enumeration.
    #[arg(long, default_value_t = Limits::default().subset_n)]
    max_subset_n: usize,
    /// Largest n for k-way enumeration.
    #[arg(long, default_value_t = Limits::default().kway_n)]
    max_kway_n: usize,
}

impl CapArgs {
    fn limits(&self) -> Limits {
        Limits { pair_n: self.max_exact_n, subset_n: self.max_subset_n, kway_n: self.max_kway_n, ..Limits::default() }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Also compute the k-way directed conductance.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["default_corpus", "corpus"])))]
struct VerifyArgs {
    #[arg(long)]
    default_corpus: bool,
    /// JSON array of generator descriptions, e.g. [{"family":"cycle","n":5}].
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Comma-separated check names; all checks by default.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Added to σ₂ before it enters any bound.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    sigma2_offset: f64,
    /// Largest n for the k-way checks.
    #[arg(long, default_value_t = HarnessConfig::default().kway_max_n)]
    kway_max_n: usize,
}

/// Failure kinds mapped to exit codes.
enum Outcome {
    Ok,
    Failed,
}

fn read_graph(path: &Path) -> anyhow::Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(v: &Value) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", canonical_json(v))?;
    Ok(())
}

fn generator(args: &GenArgs) -> anyhow::Result<GeneratorSpec> {
    let mut fields = Map::new();
    fields.insert("family".into(), json!(args.family));
    let numeric = [("n", args.n), ("d", args.d), ("loops", args.loops), ("half", args.half)];
    for (name, value) in numeric {
        if let Some(v) = value {
            fields.insert(name.into(), json!(v));
        }
    }
    if args.directed {
        fields.insert("directed".into(), json!(true));
    }
    if let Some(x) = args.density {
        fields.insert("density".into(), json!(x));
    }
    if let Some(s) = args.seed {
        fields.insert("seed".into(), json!(s));
    }
    serde_json::from_value(Value::Object(fields)).context("invalid generator parameters")
}

fn gen(args: &GenArgs) -> anyhow::Result<Outcome> {
    let spec = generator(args)?;
    let text = serialize_graph(&spec.build()?);
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    eprintln!("generated {spec}");
    Ok(Outcome::Ok)
}

fn run_analyze(args: &AnalyzeArgs) -> anyhow::Result<Outcome> {
    let g = read_graph(&args.file)?;
    let report = analyze(&g, &args.caps.limits(), args.k);
    emit(&report)?;
    eprintln!("n = {}, directed = {}", g.n(), !g.is_undirected());
    for key in ["min_phi", "min_phi_dir", "min_beta_dir"] {
        let shown = report[key].as_str().map_or_else(|| format!("null ({})", report["null_reasons"][key]), str::to_string);
        eprintln!("{key:>14}  {shown}");
    }
    Ok(Outcome::Ok)
}

fn run_certify(file: &Path) -> anyhow::Result<Outcome> {
    let g = read_graph(file)?;
    let cert = certify(&g)?;
    emit(&cert)?;
    let ok = cert["satisfied"] == json!(true);
    eprintln!("cut value {} against bound {}: {}", cert["value"], cert["bound"], if ok { "satisfied" } else { "VIOLATED" });
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}

fn run_verify(args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let corpus = match &args.corpus {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<Vec<GeneratorSpec>>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => default_corpus(),
    };
    let checks = match &args.checks {
        Some(names) => names.iter().map(|s| s.trim().parse::<TheoremId>()).collect::<Result<Vec<_>, _>>()?,
        None => TheoremId::ALL.to_vec(),
    };
    if !args.sigma2_offset.is_finite() {
        bail!("--sigma2-offset must be finite");
    }
    let config = HarnessConfig { sigma2_offset: args.sigma2_offset, kway_max_n: args.kway_max_n, ..HarnessConfig::default() };
    let records = run_suite(&corpus, &checks, &config);
    for r in &records {
        emit(&r.to_json())?;
    }

    let mut tally: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for r in &records {
        let slot = match r.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Skip => 2,
        };
        tally.entry(r.theorem.as_str()).or_default()[slot] += 1;
    }
    eprintln!("{:<20} {:>6} {:>6} {:>6}", "check", "pass", "fail", "skip");
    for (name, [p, f, s]) in &tally {
        eprintln!("{name:<20} {p:>6} {f:>6} {s:>6}");
    }
    let failures: Vec<_> = records.iter().filter(|r| r.status == Status::Fail).collect();
    for r in &failures {
        let k = r.k.map(|k| format!(" k={k}")).unwrap_or_default();
        eprintln!("FAIL {}{k} on {}", r.theorem, r.graph);
    }
    eprintln!("{} graphs, {} records, {} failures", corpus.len(), records.len(), failures.len());
    Ok(if failures.is_empty() { Outcome::Ok } else { Outcome::Failed })
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().with_context(|| format!("{THREADS_ENV} must be a positive integer"))?;
        if n == 0 {
            bail!("{THREADS_ENV} must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Gen(args) => gen(args),
        Command::Analyze(args) => run_analyze(args),
        Command::Certify { file } => run_certify(file),
        Command::Verify(args) => run_verify(args),
    });
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
