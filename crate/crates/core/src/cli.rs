//! Command-line front end. Every command prints one JSON report on stdout;
//! exit code 0 means success or an affirmative verdict, 2 a negative verdict
//! (unstable, infeasible, not in the core) and 1 a usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::auxiliary::build_auxiliary;
use crate::games::{check_core_allocation, divergence_demo, verify_outcome, NbgOutcome};
use crate::graph::{CMatching, CapacitatedGraph, Instance, VertexId};
use crate::instance_gen::{
    build_mids_reduction, fixtures, gen_random, with_random_maximum_matching, MidsInstance, RandomParams,
};
use crate::io::{instance_to_json, load_instance, read_text, InstanceFile};
use crate::rational::{parse_rational, Frac, Rational};
use crate::solvers::{
    check_complementary_slackness, fractional_c_matching, fractional_value, is_stable_graph, max_weight_c_matching,
    verify_fractional_vertex_cover,
};
use crate::stabilizer::{
    m_vertex_stabilizer, m_vertex_stabilizer_relaxed, vertex_stabilizer_bruteforce, StabilizerOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "capmatch", version, about = "Stabilizers and solvers for capacitated matching games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InstanceArg {
    /// Instance JSON file, or `fixtures:<name>`.
    instance: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximum-weight c-matching.
    Solve {
        #[command(flatten)]
        input: InstanceArg,
        /// Include an optimal fractional vertex cover bounding the value.
        #[arg(long)]
        certificate: bool,
    },
    /// Optimal fractional c-matching with its dual cover.
    Fractional {
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Compares the integral and fractional optima.
    Stability {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        certificate: bool,
    },
    /// Minimum vertex-stabilizer preserving the instance's matching.
    StabilizeM {
        #[command(flatten)]
        input: InstanceArg,
        /// Accept a non-maximum matching (2-approximation).
        #[arg(long)]
        allow_nonmax: bool,
        /// Skip the maximum-weight check.
        #[arg(long)]
        trust_maximal: bool,
        /// Write the iteration trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the auxiliary unit-capacity graph here.
        #[arg(long)]
        emit_aux: Option<PathBuf>,
    },
    /// Minimum vertex-stabilizer by exhaustive search (small graphs only).
    Stabilize {
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Checks an allocation against every coalition constraint.
    CoreCheck {
        #[command(flatten)]
        input: InstanceArg,
        /// JSON array of values in vertex order, or an object keyed by vertex id.
        #[arg(long)]
        allocation: PathBuf,
    },
    /// Checks a bargaining outcome for consistency and stability.
    Verify {
        #[command(flatten)]
        input: InstanceArg,
        /// Outcome JSON `{"deals":[{"u","v","a_u","a_v"}]}`; defaults to
        /// the instance matching with every deal split evenly.
        #[arg(long)]
        outcome: Option<PathBuf>,
    },
    /// Emits an instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Worked demonstrations.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Hardness reduction from independent dominating set.
    Mids {
        /// Source graph in instance format (capacities and weights ignored).
        #[arg(long)]
        source: String,
    },
    /// Built-in fixture.
    Fixture { name: String },
    /// Seeded random instance.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        cap_min: u32,
        #[arg(long, default_value_t = 3)]
        cap_max: u32,
        /// Comma-separated weight set.
        #[arg(long, default_value = "1/2,1,2")]
        weights: String,
        /// Attach a maximum-weight c-matching.
        #[arg(long)]
        with_matching: bool,
    },
}

#[derive(Debug, Subcommand)]
enum DemoCommand {
    /// Non-empty core without a stable outcome.
    Divergence,
}

/// JSON report printed by every analysis command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandReport {
    pub command: String,
    /// SHA-256 of the instance in compact JSON form.
    pub instance_digest: String,
    pub results: Value,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

type CliResult = Result<(Value, i32), String>;

pub fn instance_digest(instance: &Instance) -> String {
    let compact = serde_json::to_string(&InstanceFile::from_instance(instance)).expect("instance serializes");
    hex::encode(Sha256::digest(compact.as_bytes()))
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(g) => return emit(out, err, generate(g)),
        Command::Demo(DemoCommand::Divergence) => report(out, "demo divergence", &fixtures::fig5(), demo),
        Command::Solve { input, certificate } => with_instance(out, "solve", &input, |i| solve(i, certificate)),
        Command::Fractional { input } => with_instance(out, "fractional", &input, fractional),
        Command::Stability { input, certificate } => {
            with_instance(out, "stability", &input, |i| stability(i, certificate))
        }
        Command::StabilizeM {
            input,
            allow_nonmax,
            trust_maximal,
            trace,
            emit_aux,
        } => with_instance(out, "stabilize-m", &input, |i| {
            stabilize_m(i, allow_nonmax, trust_maximal, trace.as_deref(), emit_aux.as_deref())
        }),
        Command::Stabilize { input } => with_instance(out, "stabilize", &input, stabilize),
        Command::CoreCheck { input, allocation } => {
            with_instance(out, "core-check", &input, |i| core_check(i, &allocation))
        }
        Command::Verify { input, outcome } => with_instance(out, "verify", &input, |i| verify(i, outcome.as_deref())),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn emit(out: &mut dyn Write, err: &mut dyn Write, text: Result<String, String>) -> i32 {
    match text {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn with_instance(
    out: &mut dyn Write,
    command: &str,
    input: &InstanceArg,
    body: impl FnOnce(&Instance) -> CliResult,
) -> Result<i32, String> {
    let instance = load_instance(&input.instance).map_err(|e| e.to_string())?;
    report(out, command, &instance, body)
}

fn report(
    out: &mut dyn Write,
    command: &str,
    instance: &Instance,
    body: impl FnOnce(&Instance) -> CliResult,
) -> Result<i32, String> {
    let start = Instant::now();
    let (results, code) = body(instance)?;
    let report = CommandReport {
        command: command.to_string(),
        instance_digest: instance_digest(instance),
        results,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    writeln!(out, "{text}").map_err(|e| e.to_string())?;
    Ok(code)
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn names(graph: &CapacitatedGraph, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|v| graph.name(*v).to_string()).collect()
}

/// Refuses to print a number that its witness does not reproduce.
fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("internal check failed: {what}"))
    }
}

fn solve(instance: &Instance, certificate: bool) -> CliResult {
    let g = &instance.graph;
    let (m, value) = max_weight_c_matching(g).map_err(s)?;
    let ids: Vec<_> = m.edges().iter().copied().collect();
    ensure(g.is_c_matching(&ids).map_err(s)? && m.weight(g) == value, "matching value")?;
    let mut results = json!({
        "value": Frac(value),
        "matching": m.named_pairs(g),
    });
    if certificate {
        let frac = fractional_c_matching(g).map_err(s)?;
        let check = verify_fractional_vertex_cover(g, &frac.cover).map_err(s)?;
        ensure(check.feasible && check.value >= value, "cover bound")?;
        results["cover"] = serde_json::to_value(&frac.cover).map_err(s)?;
        results["cover_value"] = json!(Frac(check.value));
    }
    Ok((results, EXIT_OK))
}

fn fractional_entries(graph: &CapacitatedGraph, values: &[Rational]) -> Vec<(String, String, Frac)> {
    graph
        .edges()
        .iter()
        .zip(values)
        .map(|(e, x)| (graph.name(e.u).to_string(), graph.name(e.v).to_string(), Frac(*x)))
        .collect()
}

fn fractional(instance: &Instance) -> CliResult {
    let g = &instance.graph;
    let sol = fractional_c_matching(g).map_err(s)?;
    ensure(
        check_complementary_slackness(g, &sol.x, &sol.cover).map_err(s)?
            && g.fractional_weight(&sol.x).map_err(s)? == sol.value,
        "fractional optimality",
    )?;
    Ok((
        json!({
            "value": Frac(sol.value),
            "x": fractional_entries(g, &sol.x.values),
            "half_integral": sol.x.is_half_integral(),
            "cover": sol.cover,
        }),
        EXIT_OK,
    ))
}

fn stability(instance: &Instance, certificate: bool) -> CliResult {
    let g = &instance.graph;
    let cert = is_stable_graph(g).map_err(s)?;
    ensure(cert.integral.weight(g) == cert.nu_c, "integral witness")?;
    ensure(
        check_complementary_slackness(g, &cert.fractional, &cert.cover).map_err(s)?,
        "fractional witness",
    )?;
    let mut results = json!({
        "nuC": Frac(cert.nu_c),
        "nuFC": Frac(cert.nu_fc),
        "stable": cert.stable,
    });
    if certificate {
        results["matching"] = json!(cert.integral.named_pairs(g));
        results["x"] = json!(fractional_entries(g, &cert.fractional.values));
        results["cover"] = serde_json::to_value(&cert.cover).map_err(s)?;
    }
    Ok((results, if cert.stable { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(s)?;
    std::fs::write(path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn stabilize_m(
    instance: &Instance,
    allow_nonmax: bool,
    trust_maximal: bool,
    trace: Option<&Path>,
    emit_aux: Option<&Path>,
) -> CliResult {
    let g = &instance.graph;
    if let Some(path) = emit_aux {
        let bundle = build_auxiliary(instance).map_err(s)?;
        write_json(path, &bundle.to_dump(g))?;
    }
    let result = if allow_nonmax {
        m_vertex_stabilizer_relaxed(instance)
    } else {
        m_vertex_stabilizer(instance, StabilizerOptions { trust_maximal })
    }
    .map_err(s)?;
    if let Some(path) = trace {
        write_json(path, &result.trace)?;
    }
    let code = if let Some(removed) = result.removed() {
        let ids: Vec<VertexId> = removed
            .iter()
            .map(|n| g.vertex_by_name(n))
            .collect::<Result<_, _>>()
            .map_err(s)?;
        let m = instance.matching_or_empty();
        ensure(ids.iter().all(|&v| !m.covers(g, v)), "stabilizer avoids the matching")?;
        let (reduced, _) = g.without_vertices(&ids).map_err(s)?;
        ensure(fractional_value(&reduced).map_err(s)? == m.weight(g), "reduced instance is stable")?;
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let mut results = json!({
        "algorithm": if allow_nonmax { "relaxed" } else { "exact" },
        "outcome": result.outcome,
        "certificate": result.certificate,
        "iterations": result.trace.len(),
    });
    if let Some(removed) = result.removed() {
        results["size"] = json!(removed.len());
    }
    Ok((results, code))
}

fn stabilize(instance: &Instance) -> CliResult {
    let g = &instance.graph;
    let set = vertex_stabilizer_bruteforce(g).map_err(s)?;
    let (reduced, _) = g.without_vertices(&set).map_err(s)?;
    let cert = is_stable_graph(&reduced).map_err(s)?;
    ensure(cert.stable, "reduced graph is stable")?;
    Ok((
        json!({
            "removed": names(g, &set),
            "size": set.len(),
            "nuC": Frac(cert.nu_c),
        }),
        EXIT_OK,
    ))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AllocationFile {
    List(Vec<Frac>),
    ById(std::collections::BTreeMap<String, Frac>),
}

fn read_allocation(graph: &CapacitatedGraph, path: &Path) -> Result<Vec<Rational>, String> {
    let text = read_text(path).map_err(s)?;
    let file: AllocationFile = serde_json::from_str(&text).map_err(|e| format!("malformed allocation: {e}"))?;
    match file {
        AllocationFile::List(values) => Ok(values.into_iter().map(|f| f.0).collect()),
        AllocationFile::ById(map) => {
            for id in map.keys() {
                graph.vertex_by_name(id).map_err(s)?;
            }
            Ok(graph
                .vertices()
                .iter()
                .map(|v| map.get(&v.id).map_or_else(|| Rational::from_integer(0), |f| f.0))
                .collect())
        }
    }
}

fn core_check(instance: &Instance, allocation: &Path) -> CliResult {
    let y = read_allocation(&instance.graph, allocation)?;
    let check = check_core_allocation(&instance.graph, &y).map_err(s)?;
    let code = if check.in_core { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((serde_json::to_value(&check).map_err(s)?, code))
}

#[derive(Deserialize)]
struct DealEntry {
    u: String,
    v: String,
    a_u: Frac,
    a_v: Frac,
}

#[derive(Deserialize)]
struct OutcomeFile {
    deals: Vec<DealEntry>,
}

fn read_outcome(graph: &CapacitatedGraph, path: &Path) -> Result<NbgOutcome, String> {
    let text = read_text(path).map_err(s)?;
    let file: OutcomeFile = serde_json::from_str(&text).map_err(|e| format!("malformed outcome: {e}"))?;
    let zero = Rational::from_integer(0);
    let mut split = vec![(zero, zero); graph.edge_count()];
    let mut ids = Vec::new();
    for d in &file.deals {
        let e = graph.edge_by_names(&d.u, &d.v).map_err(s)?;
        let forward = graph.name(graph.edge(e).u) == d.u;
        split[e.0] = if forward { (d.a_u.0, d.a_v.0) } else { (d.a_v.0, d.a_u.0) };
        ids.push(e);
    }
    Ok(NbgOutcome {
        matching: CMatching::from_set_unchecked(ids.into_iter().collect()),
        split,
    })
}

fn verify(instance: &Instance, outcome: Option<&Path>) -> CliResult {
    let g = &instance.graph;
    let outcome = match outcome {
        Some(path) => read_outcome(g, path)?,
        None => NbgOutcome::even_split(g, instance.matching_or_empty()),
    };
    let report = verify_outcome(g, &outcome).map_err(s)?;
    let code = if report.consistent && report.stable { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((serde_json::to_value(&report).map_err(s)?, code))
}

fn demo(_: &Instance) -> CliResult {
    let report = divergence_demo().map_err(s)?;
    Ok((serde_json::to_value(&report).map_err(s)?, EXIT_OK))
}

fn generate(command: GenCommand) -> Result<String, String> {
    let instance = match command {
        GenCommand::Fixture { name } => fixtures::fixture(&name).map_err(s)?,
        GenCommand::Mids { source } => {
            let src = load_instance(&source).map_err(s)?;
            Instance::new(build_mids_reduction(&MidsInstance::from_graph(&src.graph)).graph)
        }
        GenCommand::Random {
            seed,
            n,
            density,
            cap_min,
            cap_max,
            weights,
            with_matching,
        } => {
            let weights = weights
                .split(',')
                .map(|w| parse_rational(w.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("bad weight list: {e}"))?;
            let params = RandomParams::new(n, density, (cap_min, cap_max), weights, seed);
            let inst = gen_random(&params).map_err(s)?;
            if with_matching {
                with_random_maximum_matching(inst, seed).map_err(s)?
            } else {
                inst
            }
        }
    };
    Ok(instance_to_json(&instance))
}
