//! Run records, their JSON and CSV renderings, root gaps and sweep aggregation.
//!
//! JSON layout of a [`RunRecord`]:
//!
//! ```text
//! { "instance_hash": "9f2c…", "kind": "COV", "n": 3, "budget": 2.0,
//!   "scheme": "explicit", "seed": null,
//!   "config": { "bound": "rs", "branching": "dual", "epsilon": 1.0, ... },
//!   "status": "optimal", "optimum": 3.0, "solution": [0, 1],
//!   "root_bound": 3.0, "nodes": 1, "oracle_calls": 12, "wall_s": 0.0001 }
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{node_bounds, NodeBounds};
use crate::error::{Result, SkpError};
use crate::node::SearchNode;
use crate::oracle::ElementId;
use crate::problem::Instance;
use crate::solver::{BoundKind, SolveReport, SolveStatus, SolverConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_hash: String,
    pub kind: String,
    pub n: usize,
    pub budget: f64,
    pub scheme: String,
    pub seed: Option<u64>,
    pub config: SolverConfig,
    pub status: SolveStatus,
    pub optimum: f64,
    pub solution: Vec<ElementId>,
    pub root_bound: Option<f64>,
    pub nodes: u64,
    pub oracle_calls: u64,
    pub wall_s: f64,
}

impl RunRecord {
    /// Instances built in code (no source file) get kind `custom` and an empty hash.
    pub fn new(instance: &Instance, config: &SolverConfig, report: &SolveReport) -> Self {
        let (instance_hash, kind, scheme, seed) = match instance.source() {
            Some(file) => {
                let (scheme, seed) = file.weight_label();
                (file.fingerprint(), file.kind().to_string(), scheme, seed)
            }
            None => (
                String::new(),
                "custom".to_string(),
                "explicit".to_string(),
                None,
            ),
        };
        RunRecord {
            instance_hash,
            kind,
            n: instance.len(),
            budget: instance.budget(),
            scheme,
            seed,
            config: config.clone(),
            status: report.status,
            optimum: report.optimum,
            solution: report.solution.clone(),
            root_bound: report.root_bound,
            nodes: report.nodes_visited,
            oracle_calls: report.oracle_calls,
            wall_s: report.wall_time,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    CsvRow,
}

impl FromStr for Format {
    type Err = SkpError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv-row" => Ok(Format::CsvRow),
            _ => Err(SkpError::Config(format!("unknown format `{s}`"))),
        }
    }
}

pub const CSV_COLUMNS: [&str; 14] = [
    "instance_hash",
    "kind",
    "n",
    "W",
    "scheme",
    "seed",
    "bound",
    "branching",
    "status",
    "optimum",
    "root_bound",
    "nodes",
    "oracle_calls",
    "wall_s",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

/// One line of text, without a trailing newline.
pub fn emit_report(record: &RunRecord, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(record).expect("run record serializes"),
        Format::CsvRow => {
            let opt = |x: Option<String>| x.unwrap_or_default();
            [
                record.instance_hash.clone(),
                record.kind.clone(),
                record.n.to_string(),
                record.budget.to_string(),
                record.scheme.clone(),
                opt(record.seed.map(|s| s.to_string())),
                record.config.bound.to_string(),
                record.config.branching.to_string(),
                record.status.name().to_string(),
                record.optimum.to_string(),
                opt(record.root_bound.map(|b| b.to_string())),
                record.nodes.to_string(),
                record.oracle_calls.to_string(),
                format!("{:.6}", record.wall_s),
            ]
            .join(",")
        }
    }
}

pub fn parse_json_record(text: &str) -> Result<RunRecord> {
    serde_json::from_str(text).map_err(|e| SkpError::Config(e.to_string()))
}

/// Relative root gap `(ub - s*) / s*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gap {
    Value(f64),
    /// `s* = 0`.
    Undefined,
}

impl Gap {
    pub fn new(bound: f64, optimum: f64) -> Self {
        if optimum == 0.0 {
            Gap::Undefined
        } else {
            Gap::Value((bound - optimum) / optimum)
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Gap::Value(g) => Some(g),
            Gap::Undefined => None,
        }
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gap::Value(g) => write!(f, "{g}"),
            Gap::Undefined => f.write_str("undefined"),
        }
    }
}

impl NodeBounds {
    pub fn get(&self, kind: BoundKind) -> f64 {
        match kind {
            BoundKind::Knapsack => self.knapsack,
            BoundKind::FractionalKnapsack => self.fractional,
            BoundKind::Domination => self.domination,
            BoundKind::RefinedSubset => self.refined,
        }
    }
}

/// Root gaps of the requested bounds against a known optimum.
pub fn gap_stats(
    instance: &Instance,
    bounds: &[BoundKind],
    epsilon: f64,
    optimum: f64,
) -> Vec<(BoundKind, Gap)> {
    let root = node_bounds(instance, &SearchNode::root(instance), epsilon);
    bounds
        .iter()
        .map(|&b| (b, Gap::new(root.get(b), optimum)))
        .collect()
}

/// Counts and sums over a batch of runs, grouped by nothing; callers split
/// by config themselves.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Aggregate {
    pub runs: u64,
    pub optimal: u64,
    pub time_limit: u64,
    pub node_limit: u64,
    pub nodes: u64,
    pub oracle_calls: u64,
    pub wall_s: f64,
    /// Largest budget solved to optimality.
    pub max_solved_budget: Option<f64>,
}

impl Aggregate {
    pub fn add(&mut self, record: &RunRecord) {
        self.runs += 1;
        match record.status {
            SolveStatus::Optimal => {
                self.optimal += 1;
                self.max_solved_budget = Some(
                    self.max_solved_budget
                        .map_or(record.budget, |b| b.max(record.budget)),
                );
            }
            SolveStatus::TimeLimit => self.time_limit += 1,
            SolveStatus::NodeLimit => self.node_limit += 1,
        }
        self.nodes += record.nodes;
        self.oracle_calls += record.oracle_calls;
        self.wall_s += record.wall_s;
    }

    pub fn merge(&mut self, other: &Aggregate) {
        self.runs += other.runs;
        self.optimal += other.optimal;
        self.time_limit += other.time_limit;
        self.node_limit += other.node_limit;
        self.nodes += other.nodes;
        self.oracle_calls += other.oracle_calls;
        self.wall_s += other.wall_s;
        self.max_solved_budget = match (self.max_solved_budget, other.max_solved_budget) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
    }
}

impl<'a> FromIterator<&'a RunRecord> for Aggregate {
    fn from_iter<I: IntoIterator<Item = &'a RunRecord>>(iter: I) -> Self {
        let mut agg = Aggregate::default();
        iter.into_iter().for_each(|r| agg.add(r));
        agg
    }
}
