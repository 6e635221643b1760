//! Subcommands of the `amas` binary. Each returns a [`Report`] holding both
//! the human-readable text and the JSON form; `main` picks one.

use std::collections::BTreeMap;
use std::path::PathBuf;

use amas::arith::scalar::{format_rational, parse_rational};
use amas::cc::{cc_bijection_check, CcError};
use amas::models::{
    all_triangulations, plucker_check, random_plucker_sample, total_positivity_oracle, total_positivity_test,
    ModelError,
};
use amas::potentials::{cyclic_derivative, NamedQuiver, PotentialError};
use amas::quiver::{detect_finite_type, is_dynkin, mutation_class, FiniteTypeVerdict, QuiverError};
use amas::seeds::{
    cluster_variables, denominator_vector, exchange_graph, parse_mutation_sequence, rank2_sequence, rank2_variable,
    SeedError,
};
use amas::ysystem::{default_max_steps, ysystem_period, YSystemError, YSystemMode};
use amas::{DynkinType, IceQuiver, Matrix, Rational, RootSystem, Seed, YSeed};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "amas", version, about = "Cluster algebra toolkit: seeds, mutation classes, Y-systems and models")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice; echoed in the output.
    #[arg(long, global = true, default_value_t = 42)]
    pub rng: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate the initial seed (or Y-seed) of a quiver along a sequence.
    Mutate(MutateArgs),
    /// Explore the exchange graph and list the cluster variables.
    Explore(QuiverBudgetArgs),
    /// Size of the mutation class of a quiver.
    Class(QuiverBudgetArgs),
    /// Decide whether the cluster algebra of a quiver has finite type.
    FiniteType(QuiverBudgetArgs),
    /// Period of the Y-system of a pair of Dynkin diagrams.
    Ysystem(YsystemArgs),
    /// Compare the Caldero-Chapoton map with the cluster variables.
    Cc(CcArgs),
    /// Triangulations of a polygon and their Plücker seeds.
    Grassmannian(GrassmannianArgs),
    /// Total positivity of a unitriangular matrix via a cluster.
    Tp(TpArgs),
    /// Cyclic derivative of a potential.
    Derive(DeriveArgs),
    /// A variable of the rank-two recurrence.
    Rank2(Rank2Args),
    /// Run the JSON session service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct QuiverArg {
    /// Quiver as a JSON file, inline JSON, or arrows such as "1>2,2*2>3".
    #[arg(short, long)]
    pub quiver: String,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    #[command(flatten)]
    pub quiver: QuiverArg,
    /// 1-based mutation sequence, e.g. "1,2,1".
    #[arg(short, long, default_value = "")]
    pub sequence: String,
    /// Mutate the Y-seed instead of the cluster seed.
    #[arg(long)]
    pub y: bool,
}

#[derive(Debug, Args)]
pub struct QuiverBudgetArgs {
    #[command(flatten)]
    pub quiver: QuiverArg,
    /// Stop after visiting this many seeds or quivers.
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Debug, Args)]
pub struct YsystemArgs {
    #[arg(long)]
    pub delta: DynkinType,
    #[arg(long)]
    pub delta_prime: DynkinType,
    /// Give every node an indeterminate at both initial times.
    #[arg(long)]
    pub full_init: bool,
    #[arg(long)]
    pub max_steps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CcArgs {
    /// Dynkin type, e.g. A3.
    #[arg(long = "type")]
    pub dynkin: DynkinType,
    /// Acyclic orientation as arrows, e.g. "1>2,2>3".
    #[arg(long)]
    pub orientation: String,
}

#[derive(Debug, Args)]
pub struct GrassmannianArgs {
    /// Rank: the polygon has n + 3 vertices.
    #[arg(long)]
    pub n: usize,
    /// Check Plücker relations and flip/mutation compatibility.
    #[arg(long)]
    pub check: bool,
    /// Seed for the sampled 2 x (n + 3) matrices (defaults to --rng).
    #[arg(long)]
    pub sample_seed: Option<u64>,
    /// Number of sampled matrices.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct TpArgs {
    /// Rank: the matrix is (n + 1) x (n + 1) upper unitriangular.
    #[arg(long)]
    pub n: usize,
    /// JSON file with {"entries": {"1,2": "3/2", ...}} (1-based, above the diagonal).
    #[arg(long)]
    pub matrix: PathBuf,
    /// 1-based mutation sequence selecting the cluster to test.
    #[arg(long, default_value = "")]
    pub mutations: String,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    /// Optional quiver the named arrows must match.
    #[arg(long)]
    pub quiver: Option<String>,
    /// Named arrows, e.g. "a:1>2,b:2>3,c:3>1".
    #[arg(long)]
    pub arrows: String,
    /// Potential, e.g. "c.b.a + 2*e.d" (rightmost arrow first).
    #[arg(long)]
    pub potential: String,
    /// Arrow to differentiate by.
    #[arg(long)]
    pub wrt: String,
}

#[derive(Debug, Args)]
pub struct Rank2Args {
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub c: u32,
    /// Index of the variable (any integer; x1, x2 are initial).
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i64>,
    /// List x1 .. x_count instead.
    #[arg(long, conflicts_with = "m")]
    pub count: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Directory for session snapshots, reloaded on startup.
    #[arg(long)]
    pub persist: Option<PathBuf>,
}

/// Usage and input errors (exit code 2).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Cc(#[from] CcError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    YSystem(#[from] YSystemError),
}

/// Output of a command. `ok == false` means a verification failed (exit code 1).
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn new(text: String, json: Value, ok: bool) -> Self {
        Report { text, json, ok }
    }
}

/// Runs every subcommand except `serve`.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Mutate(a) => mutate(a),
        Command::Explore(a) => explore(a),
        Command::Class(a) => class(a),
        Command::FiniteType(a) => finite_type(a),
        Command::Ysystem(a) => ysystem(a),
        Command::Cc(a) => cc(a, cli.rng),
        Command::Grassmannian(a) => grassmannian(a, cli.rng),
        Command::Tp(a) => tp(a),
        Command::Derive(a) => derive(a),
        Command::Rank2(a) => rank2(a),
        Command::Serve(_) => Err(CliError::Input("serve is handled by the binary".into())),
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// Reads a quiver from inline JSON, a JSON file, or 1-based arrow syntax.
pub fn load_quiver(arg: &str) -> Result<IceQuiver, CliError> {
    let text = arg.trim();
    let json = if text.starts_with('{') {
        text.to_string()
    } else if std::path::Path::new(text).is_file() {
        read_file(text)?
    } else if text.contains('>') {
        let n = max_vertex(text)?;
        return Ok(IceQuiver::parse_arrows(n, n, text)?);
    } else {
        return Err(CliError::Input(format!("{text}: not a file, JSON object, or arrow list")));
    };
    serde_json::from_str(&json).map_err(|e| CliError::Input(format!("invalid quiver JSON: {e}")))
}

/// Largest vertex number mentioned in an arrow list like `"2*1>2,2>3"`.
fn max_vertex(spec: &str) -> Result<usize, CliError> {
    let mut max = 0;
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let body = part.rsplit('*').next().unwrap_or(part);
        let body = body.split_once(':').map_or(body, |(_, b)| b);
        for v in body.split('>') {
            let v: usize = v.trim().parse().map_err(|_| CliError::Input(format!("bad arrow {part:?}")))?;
            max = max.max(v);
        }
    }
    Ok(max)
}

fn mutate(a: &MutateArgs) -> Result<Report, CliError> {
    let q = load_quiver(&a.quiver.quiver)?;
    let seq = parse_mutation_sequence(&a.sequence)?;
    let one_based: Vec<usize> = seq.iter().map(|k| k + 1).collect();
    let (text, seed) = if a.y {
        let s = YSeed::initial(q)?.mutate_sequence(&seq)?;
        (s.to_string(), s.to_json())
    } else {
        let s = Seed::initial(q).mutate_sequence(&seq)?;
        (s.to_string(), s.to_json())
    };
    Ok(Report::new(text, json!({"v": 1, "sequence": one_based, "seed": seed}), true))
}

fn explore(a: &QuiverBudgetArgs) -> Result<Report, CliError> {
    let q = load_quiver(&a.quiver.quiver)?;
    let budget = a.budget.unwrap_or(amas::seeds::DEFAULT_SEED_BUDGET);
    let graph = exchange_graph(&q, budget)?;
    let (vars, vars_complete) = cluster_variables(&q, budget)?;
    let n = q.n();
    let regular = graph.is_regular(n);
    let rows: Vec<(String, Vec<i32>)> = vars.iter().map(|v| (v.to_string(), denominator_vector(v, n))).collect();

    // For a Dynkin quiver the non-initial variables should match the positive roots.
    let roots_match = is_dynkin(&q.principal_part()).map(|t| {
        let mut want: Vec<Vec<i32>> = RootSystem::shared(t).positive_roots().to_vec();
        let mut got: Vec<Vec<i32>> =
            rows.iter().map(|(_, d)| d.clone()).filter(|d| d.iter().all(|&c| c >= 0)).collect();
        want.sort();
        got.sort();
        (t, want == got)
    });

    let complete = graph.complete && vars_complete;
    let mut text = format!(
        "seeds: {} ({})\nedges: {}\nregular of degree {n}: {}\ncluster variables: {}\n",
        graph.seeds.len(),
        if complete { "complete" } else { "incomplete" },
        graph.edges.len(),
        yes_no(regular),
        vars.len(),
    );
    for (v, d) in &rows {
        text.push_str(&format!("  {v}    denominator {}\n", tuple(d)));
    }
    if let Some((t, ok)) = roots_match {
        text.push_str(&format!("denominator vectors match the positive roots of {t}: {}\n", yes_no(ok)));
    }
    let ok = regular && roots_match.is_none_or(|(_, ok)| ok);
    let json = json!({
        "v": 1,
        "seeds": graph.seeds.len(),
        "edges": graph.edges.len(),
        "complete": complete,
        "regular": regular,
        "variables": rows.iter().map(|(v, d)| json!({"variable": v, "denominator_vector": d})).collect::<Vec<_>>(),
        "dynkin_type": roots_match.map(|(t, _)| t.to_string()),
        "roots_match": roots_match.map(|(_, ok)| ok),
    });
    Ok(Report::new(text.trim_end().to_string(), json, ok))
}

fn class(a: &QuiverBudgetArgs) -> Result<Report, CliError> {
    let q = load_quiver(&a.quiver.quiver)?;
    let budget = a.budget.unwrap_or(amas::quiver::DEFAULT_CLASS_BUDGET);
    let c = mutation_class(&q, budget);
    let text = format!("{} ({})", c.len(), if c.complete { "complete" } else { "incomplete" });
    Ok(Report::new(text, json!({"v": 1, "size": c.len(), "complete": c.complete}), true))
}

fn finite_type(a: &QuiverBudgetArgs) -> Result<Report, CliError> {
    let q = load_quiver(&a.quiver.quiver)?;
    let budget = a.budget.unwrap_or(amas::quiver::DEFAULT_CLASS_BUDGET);
    let (text, json) = match detect_finite_type(&q, budget)? {
        FiniteTypeVerdict::FiniteType(t) => {
            (format!("finite type {t}"), json!({"v": 1, "verdict": "finite", "type": t.to_string()}))
        }
        FiniteTypeVerdict::InfinitelyManyVariables => {
            ("infinitely many cluster variables".to_string(), json!({"v": 1, "verdict": "infinite"}))
        }
        FiniteTypeVerdict::Unknown => {
            (format!("unknown: no verdict within {budget} quivers"), json!({"v": 1, "verdict": "unknown"}))
        }
    };
    Ok(Report::new(text, json, true))
}

fn ysystem(a: &YsystemArgs) -> Result<Report, CliError> {
    let mode = if a.full_init { YSystemMode::Full } else { YSystemMode::Restricted };
    let max_steps = a.max_steps.unwrap_or_else(|| default_max_steps(a.delta, a.delta_prime));
    match ysystem_period(a.delta, a.delta_prime, mode, max_steps) {
        Ok(p) => {
            let ok = p.divides_bound();
            let text = format!("period {} divides {}: {}", p.period, p.bound, yes_no(ok));
            let json = json!({
                "v": 1, "delta": a.delta.to_string(), "delta_prime": a.delta_prime.to_string(),
                "full_init": a.full_init, "period": p.period, "bound": p.bound, "divides": ok,
            });
            Ok(Report::new(text, json, ok))
        }
        Err(YSystemError::NotFound { max_steps }) => Ok(Report::new(
            format!("no period within {max_steps} steps"),
            json!({"v": 1, "period": null, "max_steps": max_steps, "divides": false}),
            false,
        )),
        Err(e) => Err(e.into()),
    }
}

fn cc(a: &CcArgs, rng: u64) -> Result<Report, CliError> {
    let n = a.dynkin.rank();
    let q = IceQuiver::parse_arrows(n, n, &a.orientation)?;
    match is_dynkin(&q) {
        Some(t) if t == a.dynkin => {}
        _ => return Err(CliError::Input(format!("{:?} is not an orientation of {}", a.orientation, a.dynkin))),
    }
    let report = cc_bijection_check(&q, rng)?;
    let mut text = format!("rng seed: {}\n", report.rng_seed);
    let width = report.rows.iter().map(|r| tuple(&r.root).len()).max().unwrap_or(4).max(4);
    text.push_str(&format!("{:width$}  match  value\n", "root"));
    for r in &report.rows {
        text.push_str(&format!("{:width$}  {:5}  {}\n", tuple(&r.root), yes_no(r.matched), r.value));
    }
    for m in &report.missing {
        text.push_str(&format!("missing: {m}\n"));
    }
    let ok = report.ok();
    text.push_str(&format!("bijection onto non-initial cluster variables: {}", yes_no(ok)));
    let json = json!({
        "v": 1,
        "type": a.dynkin.to_string(),
        "rng": report.rng_seed,
        "rows": report.rows.iter().map(|r| json!({
            "root": r.root, "denominator_vector": r.denominator, "value": r.value.to_string(), "matched": r.matched,
        })).collect::<Vec<_>>(),
        "missing": report.missing.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "ok": ok,
    });
    Ok(Report::new(text, json, ok))
}

fn grassmannian(a: &GrassmannianArgs, rng: u64) -> Result<Report, CliError> {
    if a.n == 0 || a.n > 6 {
        return Err(CliError::Input(format!("--n {} outside 1..=6", a.n)));
    }
    let size = a.n + 3;
    let triangulations = all_triangulations(size);
    let mut text = format!("{}-gon: {} triangulations\n", size, triangulations.len());
    let mut json = json!({"v": 1, "n": a.n, "triangulations": triangulations.len()});
    if !a.check {
        let (q, edges) = amas::models::Triangulation::fan(size).to_icequiver();
        let labels: Vec<String> = edges.iter().map(|(i, j)| format!("{}{}", i + 1, j + 1)).collect();
        text.push_str(&format!("fan seed: {}\nquiver: {}", labels.join(" "), q));
        json["fan_labels"] = json!(labels);
        json["fan_quiver"] = q.to_json();
        return Ok(Report::new(text, json, true));
    }
    let sample_seed = a.sample_seed.unwrap_or(rng);
    let mut rng = amas::cc::seeded_rng(sample_seed);
    let mut ok = true;
    let mut samples = Vec::new();
    for s in 0..a.samples {
        let sample = random_plucker_sample(a.n, &mut rng);
        let r = plucker_check(a.n, &sample, amas::seeds::DEFAULT_SEED_BUDGET)?;
        ok &= r.ok();
        text.push_str(&format!(
            "sample {}: {} seeds of {}, {} diagonals, {} mismatches: {}\n",
            s + 1,
            r.seeds,
            r.expected_seeds,
            r.diagonals_reached,
            r.mismatches.len(),
            if r.ok() { "ok" } else { "FAILED" }
        ));
        for m in &r.mismatches {
            text.push_str(&format!("  {m}\n"));
        }
        samples.push(
            json!({"seeds": r.seeds, "expected_seeds": r.expected_seeds, "mismatches": r.mismatches, "ok": r.ok()}),
        );
    }
    let mut squares = 0;
    let mut bad_squares = Vec::new();
    for t in &triangulations {
        for &d in t.diagonals() {
            squares += 1;
            if !t.flip_commutes_with_mutation(d)? {
                bad_squares.push(format!("{:?} flip {}{}", t.diagonals(), d.0 + 1, d.1 + 1));
            }
        }
    }
    ok &= bad_squares.is_empty();
    text.push_str(&format!(
        "flip commutes with mutation: {} of {} flips\nsample seed: {sample_seed}\nresult: {}",
        squares - bad_squares.len(),
        squares,
        if ok { "ok" } else { "FAILED" }
    ));
    json["sample_seed"] = json!(sample_seed);
    json["samples"] = json!(samples);
    json["flips"] = json!(squares);
    json["flip_failures"] = json!(bad_squares);
    json["ok"] = json!(ok);
    Ok(Report::new(text, json, ok))
}

#[derive(Deserialize)]
struct MatrixFile {
    entries: BTreeMap<String, String>,
}

/// Upper unitriangular matrix of size `n + 1` from 1-based `"i,j"` keys.
pub fn parse_unitriangular(n: usize, text: &str) -> Result<Matrix<Rational>, CliError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid matrix JSON: {e}")))?;
    let size = n + 1;
    let mut g = Matrix::from_fn(size, size, |i, j| Rational::from_integer(BigInt::from(if i == j { 1 } else { 0 })));
    for (key, value) in &file.entries {
        let (i, j) = key
            .split_once(',')
            .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| CliError::Input(format!("bad entry key {key:?}")))?;
        if !(1 <= i && i < j && j <= size) {
            return Err(CliError::Input(format!("entry {key:?} is not above the diagonal of a {size}x{size} matrix")));
        }
        let v = parse_rational(value).ok_or_else(|| CliError::Input(format!("bad rational {value:?}")))?;
        g[(i - 1, j - 1)] = v;
    }
    Ok(g)
}

fn tp(a: &TpArgs) -> Result<Report, CliError> {
    if !(1..=3).contains(&a.n) {
        return Err(CliError::Input(format!("--n {} outside 1..=3", a.n)));
    }
    let path = a.matrix.display().to_string();
    let g = parse_unitriangular(a.n, &read_file(&path)?)?;
    let seq = parse_mutation_sequence(&a.mutations)?;
    let criterion = total_positivity_test(a.n, &g, &seq)?;
    let oracle = total_positivity_oracle(&g);
    let agree = criterion == oracle;
    let rows: Vec<String> =
        (0..=a.n).map(|i| (0..=a.n).map(|j| format_rational(&g[(i, j)])).collect::<Vec<_>>().join(" ")).collect();
    let text = format!(
        "{}\ncluster criterion: {}\nall minors: {}\nagree: {}",
        rows.join("\n"),
        positive(criterion),
        positive(oracle),
        yes_no(agree)
    );
    let json = json!({
        "v": 1, "n": a.n, "mutations": seq.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "cluster_criterion": criterion, "oracle": oracle, "agree": agree,
    });
    Ok(Report::new(text, json, agree))
}

fn derive(a: &DeriveArgs) -> Result<Report, CliError> {
    let vertices = match &a.quiver {
        Some(s) => load_quiver(s)?.m(),
        None => max_vertex(&a.arrows)?,
    };
    let nq = NamedQuiver::parse(vertices, &a.arrows)?;
    if let Some(s) = &a.quiver {
        if !nq.matches(&load_quiver(s)?) {
            return Err(CliError::Input("the named arrows do not match the quiver".into()));
        }
    }
    let w = nq.parse_potential(&a.potential)?;
    let arrow = nq.arrow_index(&a.wrt)?;
    let d = cyclic_derivative(&nq, &w, arrow);
    let rendered = d.render(&nq);
    let text = format!("d_{} W = {}", a.wrt, rendered);
    Ok(Report::new(text, json!({"v": 1, "wrt": a.wrt, "potential": w.render(&nq), "derivative": rendered}), true))
}

fn rank2(a: &Rank2Args) -> Result<Report, CliError> {
    if let Some(count) = a.count {
        let xs = rank2_sequence(a.b, a.c, count);
        let distinct = xs.iter().collect::<std::collections::BTreeSet<_>>().len();
        let mut text: String = xs.iter().enumerate().map(|(i, x)| format!("x{} = {}\n", i + 1, x)).collect();
        text.push_str(&format!("distinct: {distinct}"));
        let json = json!({"v": 1, "b": a.b, "c": a.c, "variables": xs.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "distinct": distinct});
        return Ok(Report::new(text, json, true));
    }
    let m = a.m.ok_or_else(|| CliError::Input("one of --m or --count is required".into()))?;
    let x = rank2_variable(a.b, a.c, m);
    let text = format!("x{m} = {x}");
    Ok(Report::new(text, json!({"v": 1, "b": a.b, "c": a.c, "m": m, "variable": x.to_string()}), true))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn positive(b: bool) -> &'static str {
    if b {
        "totally positive"
    } else {
        "not totally positive"
    }
}

fn tuple(v: &[i32]) -> String {
    format!("({})", v.iter().map(i32::to_string).collect::<Vec<_>>().join(","))
}
