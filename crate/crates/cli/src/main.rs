//! `twlab`: generate instances, compute decompositions, apply reductions,
//! solve, and run verification sweeps.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use twlab::graph::{weighted_outdegrees, Graph, GraphJson, OrientationJson, PartitionedGraph};
use twlab::harness::{
    emit_report, gen_partitioned, gen_rho, gen_weighted, verify_reduction, ExperimentConfig, Pipeline, ReportFormat,
    SolverChoice,
};
use twlab::problems::check;
use twlab::problems::{self as pr, ChosenOutdegreeInstance, Instance};
use twlab::reductions::{self as rd, ReductionOutputJson};
use twlab::solvers;
use twlab::treewidth::{exact_treewidth, heuristic_decomposition, to_nice, Heuristic, TreeDecomposition, DEFAULT_EXACT_LIMIT};

#[derive(Parser)]
#[command(name = "twlab", version, about = "Treewidth reductions, oracles and solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Compute a tree decomposition of a graph or instance file.
    Tw(TwArgs),
    /// Apply a reduction to a source file.
    Reduce(ReduceArgs),
    /// Decide an instance (or the instance of a reduction output).
    Solve(SolveArgs),
    /// Run a seeded verification sweep and write a report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    /// Balanced k-partite graph (parts of size n).
    Kpartite,
    /// Weighted graph on n vertices.
    Weighted,
    /// Weighted graph plus budgets: a chosen-outdegree instance.
    Chosen,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(short, default_value_t = 2)]
    k: usize,
    #[arg(short, default_value_t = 2)]
    n: usize,
    #[arg(short, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    plant: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_weight: u64,
    #[arg(long, default_value_t = 6)]
    max_rho: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Minfill,
    Mindeg,
    Exact,
}

#[derive(clap::Args)]
struct TwArgs {
    #[arg(long, value_enum, default_value = "minfill")]
    method: Method,
    /// Vertex limit for the exact method.
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    limit: usize,
    /// Nonzero seeds add randomized tie-breaking restarts to the heuristics.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ReduceArgs {
    #[arg(long)]
    pipeline: Pipeline,
    file: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Also write the witness decomposition here.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Clique size for clique-gensat.
    #[arg(short)]
    k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Solver {
    Bf,
    Dp,
    Flow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verdict {
    Yes,
    No,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long, value_enum, default_value = "bf")]
    solver: Solver,
    file: PathBuf,
    /// Decomposition for the dp solver (default: the file's witness, else min-fill).
    #[arg(long)]
    td: Option<PathBuf>,
    /// Write the yes-witness here.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Exit with status 1 unless the verdict matches.
    #[arg(long, value_enum)]
    expect: Option<Verdict>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    pipeline: Pipeline,
    #[arg(short, default_value_t = 2)]
    k: usize,
    #[arg(short, default_value_t = 2)]
    n: usize,
    #[arg(short, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    plant: bool,
    #[arg(long, default_value_t = 10)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "bf")]
    solver: SolverChoice,
    #[arg(long, default_value_t = 4)]
    max_weight: u64,
    #[arg(long, default_value_t = 6)]
    max_rho: u64,
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Lift the size guards (same as TWLAB_GUARD_OVERRIDE=1).
    #[arg(long = "unsafe")]
    unsafe_sizes: bool,
    #[arg(long)]
    report: PathBuf,
    /// Report format; defaults to the report file's extension.
    #[arg(long)]
    format: Option<ReportFormat>,
}

/// Failure that maps to exit status 1 instead of 2.
#[derive(Debug)]
struct Disagreement(String);

impl std::fmt::Display for Disagreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Disagreement {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Tw(a) => tw(a),
        Command::Reduce(a) => reduce(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Disagreement>() => {
            eprintln!("twlab: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("twlab: error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

fn echo(command: &str, config: serde_json::Value) {
    eprintln!("twlab {command} {config}");
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_json<T: serde::Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn gen(a: GenArgs) -> Result<()> {
    echo(
        "gen",
        json!({"kind": format!("{:?}", a.kind).to_lowercase(), "k": a.k, "n": a.n, "p": a.p, "plant": a.plant,
               "seed": a.seed, "max_weight": a.max_weight, "max_rho": a.max_rho, "output": a.output}),
    );
    if !(0.0..=1.0).contains(&a.p) {
        bail!("p = {} is outside [0, 1]", a.p);
    }
    match a.kind {
        GenKind::Kpartite => write_json(&a.output, &gen_partitioned(a.k, a.n, a.p, a.plant, a.seed)),
        GenKind::Weighted => {
            let (g, w) = gen_weighted(a.n, a.p, a.max_weight, a.seed);
            write_json(&a.output, &GraphJson::from_graph(&g).with_weights(&w))
        }
        GenKind::Chosen => {
            let (g, w) = gen_weighted(a.n, a.p, a.max_weight, a.seed);
            let rho = gen_rho(&vec![a.max_rho; a.n], a.seed.wrapping_add(1));
            write_json(&a.output, &Instance::from(ChosenOutdegreeInstance::new(g, w, rho)?))
        }
    }
}

/// A graph from a graph file, a partitioned-graph file, an instance, or a
/// reduction output.
fn load_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    if let Ok(out) = serde_json::from_str::<ReductionOutputJson>(&text) {
        return Ok(out.instance.graph());
    }
    if let Ok(inst) = serde_json::from_str::<Instance>(&text) {
        return Ok(inst.graph());
    }
    serde_json::from_str::<Graph>(&text).with_context(|| format!("parsing {}", path.display()))
}

fn tw(a: TwArgs) -> Result<()> {
    echo(
        "tw",
        json!({"method": format!("{:?}", a.method).to_lowercase(), "limit": a.limit, "seed": a.seed,
               "file": a.file, "output": a.output}),
    );
    let g = load_graph(&a.file)?;
    let td = match a.method {
        Method::Minfill => heuristic_decomposition(&g, Heuristic::MinFill, a.seed),
        Method::Mindeg => heuristic_decomposition(&g, Heuristic::MinDegree, a.seed),
        Method::Exact => exact_treewidth(&g, a.limit)?.1,
    };
    td.validate(&g)?;
    println!("{}", td.width());
    if let Some(out) = &a.output {
        write_json(out, &td)?;
    }
    Ok(())
}

fn reduce(a: ReduceArgs) -> Result<()> {
    echo(
        "reduce",
        json!({"pipeline": a.pipeline, "file": a.file, "output": a.output, "witness": a.witness, "k": a.k}),
    );
    let json = match a.pipeline {
        Pipeline::PcLc => rd::pc_to_list_coloring(&parse::<PartitionedGraph>(&a.file)?).to_json(),
        Pipeline::LcPce => match parse::<Instance>(&a.file)? {
            Instance::ListColoring(inst) => rd::lc_to_precoloring(&inst, None)?.to_json(),
            other => bail!("lc-pce needs a list_coloring instance, got {}", other.kind()),
        },
        Pipeline::CliqueGensat => {
            let k = a.k.context("clique-gensat needs -k")?;
            rd::clique_to_gensat(&load_graph(&a.file)?, k)?.to_json()
        }
        Pipeline::PcChosen => rd::pc_to_chosen_outdegree(&parse::<PartitionedGraph>(&a.file)?)?.to_json(),
        Pipeline::ChosenMinmax => match parse::<Instance>(&a.file)? {
            Instance::ChosenOutdegree(inst) => rd::chosen_to_minmax(&inst, None)?.to_json(),
            other => bail!("chosen-minmax needs a chosen_outdegree instance, got {}", other.kind()),
        },
        Pipeline::PcMinmax => {
            let mid = rd::pc_to_chosen_outdegree(&parse::<PartitionedGraph>(&a.file)?)?;
            rd::chosen_to_minmax(&mid.instance, Some(&mid.witness))?.to_json()
        }
    };
    let g = json.instance.graph();
    json.witness.validate(&g)?;
    println!("type {}", json.instance.kind());
    println!("vertices {} edges {}", g.vertex_count(), g.edge_count());
    println!("witness width {} claimed bound {}", json.witness.width(), json.claimed_width_bound);
    if let Some(note) = &json.note {
        println!("note {note}");
    }
    write_json(&a.output, &json)?;
    if let Some(path) = &a.witness {
        write_json(path, &json.witness)?;
    }
    Ok(())
}

fn solve(a: SolveArgs) -> Result<()> {
    echo(
        "solve",
        json!({"solver": format!("{:?}", a.solver).to_lowercase(), "file": a.file, "td": a.td,
               "output": a.output, "expect": a.expect.map(|v| format!("{v:?}").to_lowercase())}),
    );
    let text = read(&a.file)?;
    let (inst, file_td) = match serde_json::from_str::<ReductionOutputJson>(&text) {
        Ok(out) => (out.instance, Some(out.witness)),
        Err(_) => (
            serde_json::from_str::<Instance>(&text).with_context(|| format!("parsing {}", a.file.display()))?,
            None,
        ),
    };
    let td = match &a.td {
        Some(path) => Some(parse::<TreeDecomposition>(path)?),
        None => file_td,
    };
    let (verdict, lines, witness) = match a.solver {
        Solver::Bf => solve_bf(&inst)?,
        Solver::Dp => solve_dp(&inst, td)?,
        Solver::Flow => solve_flow(&inst)?,
    };
    println!("{}", if verdict { "yes" } else { "no" });
    for line in lines {
        println!("{line}");
    }
    if let (Some(path), Some(w)) = (&a.output, &witness) {
        write_json(path, w)?;
    }
    match a.expect {
        Some(want) if (want == Verdict::Yes) != verdict => {
            Err(Disagreement(format!("expected {want:?}, solver answered {}", if verdict { "yes" } else { "no" })).into())
        }
        _ => Ok(()),
    }
}

type Solved = (bool, Vec<String>, Option<serde_json::Value>);

fn orientation_lines(inst: &ChosenOutdegreeInstance, lam: &twlab::graph::Orientation) -> (Vec<String>, serde_json::Value) {
    let ok = check::is_admissible(inst, lam);
    let outs = weighted_outdegrees(inst.graph(), inst.weights(), lam);
    let lines = vec![
        format!("rho-admissible {}", if ok { "ok" } else { "FAILED" }),
        format!("max outdegree {}", outs.iter().max().copied().unwrap_or(0)),
    ];
    (lines, serde_json::to_value(OrientationJson::from_orientation(inst.graph(), lam)).expect("serializable"))
}

fn coloring_lines(ok: bool, c: &[u32]) -> (Vec<String>, serde_json::Value) {
    (vec![format!("coloring {}", if ok { "ok" } else { "FAILED" })], json!({ "coloring": c }))
}

fn solve_bf(inst: &Instance) -> Result<Solved> {
    Ok(match inst {
        Instance::ListColoring(i) => match pr::bf_list_coloring(i) {
            Some(c) => {
                let (l, w) = coloring_lines(check::is_list_coloring(i, &c), &c);
                (true, l, Some(w))
            }
            None => (false, vec![], None),
        },
        Instance::Precoloring(i) => match pr::bf_precoloring(i) {
            Some(c) => {
                let (l, w) = coloring_lines(check::is_precoloring_extension(i, &c), &c);
                (true, l, Some(w))
            }
            None => (false, vec![], None),
        },
        Instance::Equitable(i) => match pr::bf_equitable(i) {
            Some(c) => {
                let (l, w) = coloring_lines(check::is_equitable_coloring(i, &c), &c);
                (true, l, Some(w))
            }
            None => (false, vec![], None),
        },
        Instance::GeneralFactor(i) => match pr::bf_general_factor(i) {
            Some(f) => {
                let ok = check::is_general_factor(i, &f);
                (true, vec![format!("factor {}", if ok { "ok" } else { "FAILED" })], Some(json!({ "edges": f })))
            }
            None => (false, vec![], None),
        },
        Instance::Gensat(i) => match pr::bf_gensat(i) {
            Some(a) => {
                let ok = check::satisfies(i, &a);
                let bits: Vec<u8> = a.iter().map(|&b| u8::from(b)).collect();
                (true, vec![format!("assignment {}", if ok { "ok" } else { "FAILED" })], Some(json!({ "assignment": bits })))
            }
            None => (false, vec![], None),
        },
        Instance::ChosenOutdegree(i) => match pr::bf_chosen_outdegree(i) {
            Some(lam) => {
                let (l, w) = orientation_lines(i, &lam);
                (true, l, Some(w))
            }
            None => (false, vec![], None),
        },
        Instance::MinMaxOutdegree(i) => match pr::bf_min_max_outdegree(i) {
            Some(lam) => {
                let (l, w) = orientation_lines(&i.as_chosen(), &lam);
                (true, l, Some(w))
            }
            None => (false, vec![], None),
        },
    })
}

fn solve_dp(inst: &Instance, td: Option<TreeDecomposition>) -> Result<Solved> {
    let g = inst.graph();
    let td = td.unwrap_or_else(|| heuristic_decomposition(&g, Heuristic::MinFill, 0));
    let ntd = to_nice(&td, &g)?;
    let width = format!("decomposition width {}", td.width());
    Ok(match inst {
        Instance::ListColoring(i) => match solvers::dp_list_coloring(i, &ntd)? {
            Some(c) => {
                let (mut l, w) = coloring_lines(check::is_list_coloring(i, &c), &c);
                l.push(width);
                (true, l, Some(w))
            }
            None => (false, vec![width], None),
        },
        Instance::Precoloring(i) => match solvers::dp_list_coloring(&i.as_list_coloring(), &ntd)? {
            Some(c) => {
                let (mut l, w) = coloring_lines(check::is_precoloring_extension(i, &c), &c);
                l.push(width);
                (true, l, Some(w))
            }
            None => (false, vec![width], None),
        },
        Instance::ChosenOutdegree(i) => match solvers::dp_chosen_outdegree(i, &ntd)? {
            Some(lam) => {
                let (mut l, w) = orientation_lines(i, &lam);
                l.push(width);
                (true, l, Some(w))
            }
            None => (false, vec![width], None),
        },
        Instance::MinMaxOutdegree(i) => match solvers::min_max_outdegree(i, &ntd)? {
            Some(lam) => {
                let (mut l, w) = orientation_lines(&i.as_chosen(), &lam);
                l.push(width);
                (true, l, Some(w))
            }
            None => (false, vec![width], None),
        },
        other => bail!("no decomposition solver for {} instances", other.kind()),
    })
}

fn solve_flow(inst: &Instance) -> Result<Solved> {
    let Instance::MinMaxOutdegree(i) = inst else {
        bail!("the flow solver handles minmax_outdegree instances only, got {}", inst.kind());
    };
    let best = solvers::flow_min_max_uniform(i.graph(), i.weights())?;
    let lines = vec![format!("min max outdegree {best}")];
    if best > i.r() {
        return Ok((false, lines, None));
    }
    let c = i.weights().is_uniform().unwrap_or(1);
    let lam = solvers::flow_orientation(i.graph(), best / c.max(1)).context("flow lost its orientation")?;
    let (mut more, w) = orientation_lines(&i.as_chosen(), &lam);
    more.insert(0, lines[0].clone());
    Ok((true, more, Some(w)))
}

fn verify(a: VerifyArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::new(a.pipeline, a.k, a.n, a.p, a.cases, a.seed)
        .with_plant(a.plant)
        .with_solver(a.solver)
        .with_jobs(a.jobs)
        .with_env_override();
    cfg.max_weight = a.max_weight;
    cfg.max_rho = a.max_rho;
    cfg.max_edges = a.max_edges;
    cfg.unsafe_sizes |= a.unsafe_sizes;
    let format = a.format.unwrap_or_else(|| ReportFormat::from_path(&a.report));
    echo("verify", json!({"config": cfg, "report": a.report, "format": format!("{format:?}").to_lowercase()}));
    let rep = verify_reduction(&cfg)?;
    emit_report(&rep, &a.report, format)?;
    let s = &rep.summary;
    println!(
        "cases {} agreements {} disagreements {} bound failures {} certificate failures {} max width {}",
        s.total, s.agreements, s.disagreements, s.bound_failures, s.certificate_failures, s.max_width_seen
    );
    if rep.passed() {
        println!("pass");
        Ok(())
    } else {
        println!("fail");
        Err(Disagreement(format!("verification failed on cases {:?}", s.failures)).into())
    }
}
