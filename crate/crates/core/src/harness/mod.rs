//! Seeded instance generation, end-to-end verification of the reductions
//! against the brute-force oracles, and report files.

mod gen;
mod report;
mod verify;

pub use gen::{gen_graph, gen_list_coloring, gen_partitioned, gen_rho, gen_weighted, gen_weighted_capped, mix};
pub use report::{emit_report, render_report, ReportFormat};
pub use verify::{run_case, verify_reduction, CaseRecord, Summary, VerificationReport};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reductions::ReductionError;
use crate::solvers::SolverError;
use crate::treewidth::TdError;

/// Environment variable that lifts the size guards when set to `1`.
pub const GUARD_OVERRIDE_VAR: &str = "TWLAB_GUARD_OVERRIDE";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("size guard: {0} (set {GUARD_OVERRIDE_VAR}=1 to override)")]
    Guard(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Td(#[from] TdError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    PcLc,
    LcPce,
    CliqueGensat,
    PcChosen,
    ChosenMinmax,
    /// `pc-chosen` followed by `chosen-minmax`.
    PcMinmax,
}

impl Pipeline {
    pub const ALL: [Pipeline; 6] = [
        Pipeline::PcLc,
        Pipeline::LcPce,
        Pipeline::CliqueGensat,
        Pipeline::PcChosen,
        Pipeline::ChosenMinmax,
        Pipeline::PcMinmax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::PcLc => "pc-lc",
            Pipeline::LcPce => "lc-pce",
            Pipeline::CliqueGensat => "clique-gensat",
            Pipeline::PcChosen => "pc-chosen",
            Pipeline::ChosenMinmax => "chosen-minmax",
            Pipeline::PcMinmax => "pc-minmax",
        }
    }

    /// Largest `(k, n)` allowed without the override. The decomposition
    /// solver is the slow one on `pc-chosen` (width-7 bags with budgets near
    /// `M`); brute force is the slow one on `pc-minmax`, where every budget
    /// equals `r`.
    pub fn guard(self, solver: SolverChoice) -> (usize, usize) {
        let dp = solver != SolverChoice::Bf;
        let bf = solver != SolverChoice::Dp;
        match self {
            Pipeline::PcLc => (4, 4),
            Pipeline::LcPce => (4, 8),
            Pipeline::CliqueGensat => (4, 6),
            Pipeline::PcChosen if dp => (3, 2),
            Pipeline::PcChosen => (3, 3),
            Pipeline::ChosenMinmax => (usize::MAX, 7),
            Pipeline::PcMinmax if bf => (2, 1),
            Pipeline::PcMinmax => (2, 2),
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown pipeline `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Bf,
    Dp,
    Both,
}

impl SolverChoice {
    pub fn name(self) -> &'static str {
        match self {
            SolverChoice::Bf => "bf",
            SolverChoice::Dp => "dp",
            SolverChoice::Both => "both",
        }
    }
}

impl FromStr for SolverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bf" => Ok(SolverChoice::Bf),
            "dp" => Ok(SolverChoice::Dp),
            "both" => Ok(SolverChoice::Both),
            _ => Err(format!("unknown solver `{s}`")),
        }
    }
}

/// One verification run.
///
/// `k` and `n` depend on the pipeline:
///
/// | pipeline | `k` | `n` |
/// |---|---|---|
/// | `pc-lc`, `pc-chosen`, `pc-minmax` | parts | part size |
/// | `lc-pce` | colors | max vertices |
/// | `clique-gensat` | clique size | max vertices |
/// | `chosen-minmax` | unused | max vertices |
///
/// Where `n` is a maximum, each case draws its vertex count from `1..=n`.
/// `p` is the cross-edge or edge probability; `plant` forces a clique into
/// partitioned and clique sources.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub pipeline: Pipeline,
    pub k: usize,
    pub n: usize,
    pub p: f64,
    pub plant: bool,
    pub cases: usize,
    pub seed: u64,
    pub solver: SolverChoice,
    /// Edge weights of `chosen-minmax` sources are drawn from `1..=max_weight`.
    pub max_weight: u64,
    /// and budgets from `0..=max_rho`.
    pub max_rho: u64,
    /// Edge cap for `chosen-minmax` sources.
    pub max_edges: Option<usize>,
    /// Skip the size guards.
    pub unsafe_sizes: bool,
    /// Worker threads; 1 runs cases in order on the calling thread.
    pub jobs: usize,
}

impl ExperimentConfig {
    pub fn new(pipeline: Pipeline, k: usize, n: usize, p: f64, cases: usize, seed: u64) -> Self {
        ExperimentConfig {
            pipeline,
            k,
            n,
            p,
            plant: false,
            cases,
            seed,
            solver: SolverChoice::Bf,
            max_weight: 4,
            max_rho: 6,
            max_edges: None,
            unsafe_sizes: false,
            jobs: 1,
        }
    }

    pub fn with_plant(mut self, plant: bool) -> Self {
        self.plant = plant;
        self
    }

    pub fn with_solver(mut self, solver: SolverChoice) -> Self {
        self.solver = solver;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    /// Lifts the guards when the override variable is set to `1`.
    pub fn with_env_override(mut self) -> Self {
        if std::env::var(GUARD_OVERRIDE_VAR).as_deref() == Ok("1") {
            self.unsafe_sizes = true;
        }
        self
    }

    pub fn check(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.cases == 0 {
            return bad("cases must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.p) {
            return bad(format!("p = {} is outside [0, 1]", self.p));
        }
        if self.jobs == 0 {
            return bad("jobs must be at least 1".into());
        }
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        let min_k = match self.pipeline {
            Pipeline::CliqueGensat => 2,
            Pipeline::ChosenMinmax => 0,
            _ => 1,
        };
        if self.k < min_k {
            return bad(format!("{} needs k >= {min_k}", self.pipeline));
        }
        if self.pipeline == Pipeline::CliqueGensat && self.solver == SolverChoice::Dp {
            return bad("clique-gensat has no decomposition solver; use bf or both".into());
        }
        if self.pipeline == Pipeline::ChosenMinmax && self.max_weight == 0 {
            return bad("max_weight must be at least 1".into());
        }
        let (gk, gn) = self.pipeline.guard(self.solver);
        if !self.unsafe_sizes && (self.k > gk || self.n > gn) {
            return Err(HarnessError::Guard(format!(
                "{} with solver {} allows k <= {gk} and n <= {gn}, got k = {} and n = {}",
                self.pipeline,
                self.solver.name(),
                self.k,
                self.n
            )));
        }
        Ok(())
    }
}
