use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::gen::{gen_graph, gen_list_coloring, gen_partitioned, gen_rho, gen_weighted_capped, mix};
use super::{ExperimentConfig, HarnessError, Pipeline, SolverChoice};
use crate::graph::{Graph, Orientation};
use crate::problems::check::{
    is_admissible, is_k_clique, is_list_coloring, is_minmax_witness, is_precoloring_extension,
    is_transversal_clique, satisfies,
};
use crate::problems::{
    bf_chosen_outdegree, bf_clique, bf_gensat, bf_list_coloring, bf_min_max_outdegree, bf_partitioned_clique,
    bf_precoloring, ChosenOutdegreeInstance,
};
use crate::reductions::{
    chosen_to_minmax, clique_orientation, clique_to_gensat, extract_clique, lc_to_precoloring, pc_to_chosen_outdegree,
    pc_to_list_coloring, ReductionOutput, WitnessGraph,
};
use crate::solvers::{dp_chosen_outdegree, dp_list_coloring, min_max_outdegree, SolverError};
use crate::treewidth::to_nice;

/// Outcome of one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case: usize,
    pub case_seed: u64,
    pub source_answer: bool,
    /// Answer of the first configured target solver (brute force unless
    /// only `dp` was requested).
    pub target_answer: bool,
    /// Decomposition solver's answer when both solvers ran.
    pub dp_answer: Option<bool>,
    pub agree: bool,
    /// Every yes-witness passed its checker and every structural
    /// certificate held.
    pub certificates_ok: bool,
    pub witness_width: i64,
    pub claimed_bound: i64,
    pub bound_ok: bool,
    pub source_ms: f64,
    pub target_ms: f64,
    pub dp_ms: Option<f64>,
    /// Certificate and bound failures, `; `-separated.
    pub problems: Option<String>,
    /// Source and target serialized when anything went wrong.
    pub replay: Option<String>,
}

impl CaseRecord {
    pub fn ok(&self) -> bool {
        self.agree && self.bound_ok && self.certificates_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub bound_failures: usize,
    pub certificate_failures: usize,
    pub max_width_seen: i64,
    pub yes_cases: usize,
    /// Indices of cases that disagreed or failed a check.
    pub failures: Vec<usize>,
    pub passed: bool,
}

impl Summary {
    fn of(records: &[CaseRecord]) -> Self {
        let agreements = records.iter().filter(|r| r.agree).count();
        let bound_failures = records.iter().filter(|r| !r.bound_ok).count();
        let certificate_failures = records.iter().filter(|r| !r.certificates_ok).count();
        let failures: Vec<usize> = records.iter().filter(|r| !r.ok()).map(|r| r.case).collect();
        Summary {
            total: records.len(),
            agreements,
            disagreements: records.len() - agreements,
            bound_failures,
            certificate_failures,
            max_width_seen: records.iter().map(|r| r.witness_width).max().unwrap_or(-1),
            yes_cases: records.iter().filter(|r| r.source_answer).count(),
            passed: failures.is_empty(),
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: ExperimentConfig,
    pub records: Vec<CaseRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(config: ExperimentConfig, records: Vec<CaseRecord>) -> Self {
        let summary = Summary::of(&records);
        VerificationReport {
            config,
            records,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.passed
    }

    /// Copy with every timing zeroed, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        let mut rep = self.clone();
        for r in &mut rep.records {
            r.source_ms = 0.0;
            r.target_ms = 0.0;
            r.dp_ms = r.dp_ms.map(|_| 0.0);
        }
        rep
    }
}

/// Runs every case of `cfg`. Records come back in case order whatever the
/// number of jobs.
pub fn verify_reduction(cfg: &ExperimentConfig) -> Result<VerificationReport, HarnessError> {
    cfg.check()?;
    let records = if cfg.jobs == 1 {
        (0..cfg.cases).map(|i| run_case(cfg, i)).collect::<Result<Vec<_>, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        pool.install(|| {
            (0..cfg.cases)
                .into_par_iter()
                .map(|i| run_case(cfg, i))
                .collect::<Result<Vec<_>, _>>()
        })?
    };
    Ok(VerificationReport::new(cfg.clone(), records))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1000.0)
}

/// Everything a pipeline reports back before it becomes a record.
struct Outcome {
    source: bool,
    source_ms: f64,
    runs: Runs,
    width: i64,
    bound: i64,
    bound_ok: bool,
    problems: Vec<String>,
    replay: serde_json::Value,
}

struct Runs {
    target: bool,
    target_ms: f64,
    dp: Option<bool>,
    dp_ms: Option<f64>,
}

type DpRun<'a, W> = Box<dyn FnOnce() -> Result<Option<W>, SolverError> + 'a>;

fn solve_target<W>(
    solver: SolverChoice,
    bf: impl FnOnce() -> Option<W>,
    dp: Option<DpRun<'_, W>>,
    check: impl Fn(&W) -> Result<(), String>,
    problems: &mut Vec<String>,
) -> Result<Runs, HarnessError> {
    let run_dp = solver != SolverChoice::Bf && dp.is_some();
    let run_bf = solver != SolverChoice::Dp || !run_dp;
    let mut bf_result = None;
    if run_bf {
        let (ans, ms) = timed(bf);
        if let Some(Err(e)) = ans.as_ref().map(&check) {
            problems.push(format!("brute-force witness: {e}"));
        }
        bf_result = Some((ans.is_some(), ms));
    }
    let mut dp_result = None;
    if let Some(dp) = dp.filter(|_| run_dp) {
        let (ans, ms) = timed(dp);
        let ans = ans?;
        if let Some(Err(e)) = ans.as_ref().map(&check) {
            problems.push(format!("dp witness: {e}"));
        }
        dp_result = Some((ans.is_some(), ms));
    }
    Ok(match (bf_result, dp_result) {
        (Some((t, tms)), Some((d, dms))) => Runs {
            target: t,
            target_ms: tms,
            dp: Some(d),
            dp_ms: Some(dms),
        },
        (Some((t, ms)), None) | (None, Some((t, ms))) => Runs {
            target: t,
            target_ms: ms,
            dp: None,
            dp_ms: None,
        },
        (None, None) => unreachable!("at least one solver runs"),
    })
}

fn witness_status<I: WitnessGraph, D>(out: &ReductionOutput<I, D>, problems: &mut Vec<String>) -> bool {
    match out.check_witnesses() {
        Ok(()) => true,
        Err(e) => {
            problems.push(e);
            false
        }
    }
}

fn expect(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// The part of `lam` on the edges of `g`, where `g` sits inside `h` with
/// the same vertex ids.
fn restrict(h: &Graph, lam: &Orientation, g: &Graph) -> Orientation {
    let forward = g
        .edges()
        .iter()
        .map(|&(u, v)| lam.tail(h, h.edge_id(u, v).expect("subgraph edge")) == u)
        .collect();
    Orientation::new(g, forward).expect("one entry per edge")
}

/// Vertex count for pipelines where `n` is a maximum.
fn case_size(seed: u64, lo: usize, n: usize) -> usize {
    let lo = lo.clamp(1, n);
    lo + (mix(seed, u64::MAX) % (n - lo + 1) as u64) as usize
}

/// Generates, reduces, solves and checks case `index` of `cfg`.
pub fn run_case(cfg: &ExperimentConfig, index: usize) -> Result<CaseRecord, HarnessError> {
    let seed = mix(cfg.seed, index as u64);
    let out = match cfg.pipeline {
        Pipeline::PcLc => pc_lc(cfg, seed)?,
        Pipeline::LcPce => lc_pce(cfg, seed)?,
        Pipeline::CliqueGensat => clique_gensat(cfg, seed)?,
        Pipeline::PcChosen => pc_chosen(cfg, seed)?,
        Pipeline::ChosenMinmax => chosen_minmax(cfg, seed)?,
        Pipeline::PcMinmax => pc_minmax(cfg, seed)?,
    };
    let agree = out.runs.target == out.source && out.runs.dp.map_or(true, |d| d == out.source);
    let certificates_ok = out.problems.is_empty();
    let bound_ok = out.bound_ok && out.width <= out.bound;
    let replay = (!agree || !certificates_ok || !bound_ok).then(|| out.replay.to_string());
    Ok(CaseRecord {
        case: index,
        case_seed: seed,
        source_answer: out.source,
        target_answer: out.runs.target,
        dp_answer: out.runs.dp,
        agree,
        certificates_ok,
        witness_width: out.width,
        claimed_bound: out.bound,
        bound_ok,
        source_ms: out.source_ms,
        target_ms: out.runs.target_ms,
        dp_ms: out.runs.dp_ms,
        problems: (!out.problems.is_empty()).then(|| out.problems.join("; ")),
        replay,
    })
}

/// Solves a partitioned-clique source and checks its witness.
fn pc_source(cfg: &ExperimentConfig, seed: u64, problems: &mut Vec<String>) -> (crate::graph::PartitionedGraph, Option<Vec<usize>>, f64) {
    let pg = gen_partitioned(cfg.k, cfg.n, cfg.p, cfg.plant, seed);
    let (clique, ms) = timed(|| bf_partitioned_clique(&pg));
    match &clique {
        Some(c) if !is_transversal_clique(&pg, c) => problems.push("source witness is not a transversal clique".into()),
        None if cfg.plant => problems.push("planted source answered no".into()),
        _ => {}
    }
    (pg, clique, ms)
}

fn pc_lc(cfg: &ExperimentConfig, seed: u64) -> Result<Outcome, HarnessError> {
    let mut problems = Vec::new();
    let (pg, clique, source_ms) = pc_source(cfg, seed, &mut problems);
    let out = pc_to_list_coloring(&pg);
    let bound_ok = witness_status(&out, &mut problems);
    let inst = &out.instance;
    let runs = solve_target(
        cfg.solver,
        || bf_list_coloring(inst),
        Some(Box::new(|| dp_list_coloring(inst, &to_nice(&out.witness, inst.graph())?))),
        |c| expect(is_list_coloring(inst, c), "not a list coloring"),
        &mut problems,
    )?;
    Ok(Outcome {
        source: clique.is_some(),
        source_ms,
        runs,
        width: out.witness_width(),
        bound: out.claimed_width_bound,
        bound_ok,
        problems,
        replay: json!({"source": pg, "target": out.to_json()}),
    })
}

fn lc_pce(cfg: &ExperimentConfig, seed: u64) -> Result<Outcome, HarnessError> {
    let mut problems = Vec::new();
    let size = case_size(seed, 1, cfg.n);
    let src = gen_list_coloring(size, cfg.p, cfg.k as u32, seed);
    let (coloring, source_ms) = timed(|| bf_list_coloring(&src));
    if coloring.as_ref().is_some_and(|c| !is_list_coloring(&src, c)) {
        problems.push("source witness is not a list coloring".into());
    }
    let out = lc_to_precoloring(&src, None)?;
    let bound_ok = witness_status(&out, &mut problems);
    let inst = &out.instance;
    let runs = solve_target(
        cfg.solver,
        || bf_precoloring(inst),
        Some(Box::new(|| {
            dp_list_coloring(&inst.as_list_coloring(), &to_nice(&out.witness, inst.graph())?)
        })),
        |c| expect(is_precoloring_extension(inst, c), "not a precoloring extension"),
        &mut problems,
    )?;
    Ok(Outcome {
        source: coloring.is_some(),
        source_ms,
        runs,
        width: out.witness_width(),
        bound: out.claimed_width_bound,
        bound_ok,
        problems,
        replay: json!({"source": crate::problems::Instance::from(src.clone()), "target": out.to_json()}),
    })
}

fn clique_gensat(cfg: &ExperimentConfig, seed: u64) -> Result<Outcome, HarnessError> {
    let mut problems = Vec::new();
    let size = case_size(seed, if cfg.plant { cfg.k } else { 1 }, cfg.n);
    let g = gen_graph(size, cfg.p, cfg.k, cfg.plant, seed);
    let (clique, source_ms) = timed(|| bf_clique(&g, cfg.k));
    match &clique {
        Some(c) if !is_k_clique(&g, c, cfg.k) => problems.push("source witness is not a k-clique".into()),
        None if cfg.plant && size >= cfg.k => problems.push("planted source answered no".into()),
        _ => {}
    }
    let out = clique_to_gensat(&g, cfg.k)?;
    let bound_ok = witness_status(&out, &mut problems);
    let inst = &out.instance;
    let runs = solve_target(
        cfg.solver,
        || bf_gensat(inst),
        None,
        |a| expect(satisfies(inst, a), "assignment violates a constraint"),
        &mut problems,
    )?;
    Ok(Outcome {
        source: clique.is_some(),
        source_ms,
        runs,
        width: out.witness_width(),
        bound: out.claimed_width_bound,
        bound_ok,
        problems,
        replay: json!({"source": g, "k": cfg.k, "target": out.to_json()}),
    })
}

fn pc_chosen(cfg: &ExperimentConfig, seed: u64) -> Result<Outcome, HarnessError> {
    let mut problems = Vec::new();
    let (pg, clique, source_ms) = pc_source(cfg, seed, &mut problems);
    let out = pc_to_chosen_outdegree(&pg)?;
    let bound_ok = witness_status(&out, &mut problems);
    if let (Some(c), Some(_)) = (&clique, &out.detail) {
        let lam = clique_orientation(&out, c)?;
        if !is_admissible(&out.instance, &lam) {
            problems.push("constructive orientation is not admissible".into());
        }
    }
    let inst = &out.instance;
    let runs = solve_target(
        cfg.solver,
        || bf_chosen_outdegree(inst),
        Some(Box::new(|| dp_chosen_outdegree(inst, &to_nice(&out.witness, inst.graph())?))),
        |lam| {
            expect(is_admissible(inst, lam), "orientation is not admissible")?;
            extract_clique(&out, lam).map(|_| ()).map_err(|e| e.to_string())
        },
        &mut problems,
    )?;
    Ok(Outcome {
        source: clique.is_some(),
        source_ms,
        runs,
        width: out.witness_width(),
        bound: out.claimed_width_bound,
        bound_ok,
        problems,
        replay: json!({"source": pg, "target": out.to_json()}),
    })
}

fn chosen_minmax(cfg: &ExperimentConfig, seed: u64) -> Result<Outcome, HarnessError> {
    let mut problems = Vec::new();
    let size = case_size(seed, 1, cfg.n);
    let (g, w) = gen_weighted_capped(size, cfg.p, cfg.max_weight, cfg.max_edges, seed);
    let rho = gen_rho(&vec![cfg.max_rho; size], mix(seed, 1));
    let src = ChosenOutdegreeInstance::new(g, w, rho).map_err(crate::reductions::ReductionError::from)?;
    let (lam, source_ms) = timed(|| bf_chosen_outdegree(&src));
    if lam.as_ref().is_some_and(|l| !is_admissible(&src, l)) {
        problems.push("source orientation is not admissible".into());
    }
    let out = chosen_to_minmax(&src, None)?;
    let bound_ok = witness_status(&out, &mut problems);
    let inst = &out.instance;
    let canonical = out.note.is_some();
    let runs = solve_target(
        cfg.solver,
        || bf_min_max_outdegree(inst),
        Some(Box::new(|| min_max_outdegree(inst, &to_nice(&out.witness, inst.graph())?))),
        |lam| {
            expect(is_minmax_witness(inst, lam), "orientation exceeds r")?;
            let back = restrict(inst.graph(), lam, src.graph());
            expect(canonical || is_admissible(&src, &back), "restricted orientation is not admissible")
        },
        &mut problems,
    )?;
    Ok(Outcome {
        source: lam.is_some(),
        source_ms,
        runs,
        width: out.witness_width(),
        bound: out.claimed_width_bound,
        bound_ok,
        problems,
        replay: json!({"source": crate::problems::Instance::from(src.clone()), "target": out.to_json()}),
    })
}

fn pc_minmax(cfg: &ExperimentConfig, seed: u64) -> Result<Outcome, HarnessError> {
    let mut problems = Vec::new();
    let (pg, clique, source_ms) = pc_source(cfg, seed, &mut problems);
    let mid = pc_to_chosen_outdegree(&pg)?;
    let mut bound_ok = witness_status(&mid, &mut problems);
    let out = chosen_to_minmax(&mid.instance, Some(&mid.witness))?;
    bound_ok &= witness_status(&out, &mut problems);
    let inst = &out.instance;
    let canonical = out.note.is_some() || mid.detail.is_none();
    let runs = solve_target(
        cfg.solver,
        || bf_min_max_outdegree(inst),
        Some(Box::new(|| min_max_outdegree(inst, &to_nice(&out.witness, inst.graph())?))),
        |lam| {
            expect(is_minmax_witness(inst, lam), "orientation exceeds r")?;
            if canonical {
                return Ok(());
            }
            let back = restrict(inst.graph(), lam, mid.instance.graph());
            expect(is_admissible(&mid.instance, &back), "restricted orientation is not admissible")?;
            extract_clique(&mid, &back).map(|_| ()).map_err(|e| e.to_string())
        },
        &mut problems,
    )?;
    Ok(Outcome {
        source: clique.is_some(),
        source_ms,
        runs,
        width: out.witness_width(),
        bound: out.claimed_width_bound,
        bound_ok,
        problems,
        replay: json!({"source": pg, "target": out.to_json()}),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_multipartite_always_agrees() {
        let cfg = ExperimentConfig::new(Pipeline::PcLc, 3, 2, 1.0, 10, 1);
        let rep = verify_reduction(&cfg).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.summary.yes_cases, 10);
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let cfg = ExperimentConfig::new(Pipeline::ChosenMinmax, 0, 5, 0.5, 20, 3);
        let one = verify_reduction(&cfg).unwrap().without_timings();
        let four = verify_reduction(&cfg.clone().with_jobs(4)).unwrap().without_timings();
        assert_eq!(one.records, four.records);
        assert!(one.passed());
    }

    #[test]
    fn every_pipeline_runs_with_both_solvers() {
        for p in super::super::Pipeline::ALL {
            let (k, n) = match p {
                Pipeline::LcPce => (3, 5),
                Pipeline::ChosenMinmax => (0, 5),
                Pipeline::PcMinmax | Pipeline::PcChosen => (2, 1),
                _ => (3, 3),
            };
            let cfg = ExperimentConfig::new(p, k, n, 0.6, 6, 11).with_solver(SolverChoice::Both);
            let rep = verify_reduction(&cfg).unwrap();
            assert!(rep.passed(), "{p}: {:?}", rep.records.iter().find(|r| !r.ok()));
        }
    }
}
