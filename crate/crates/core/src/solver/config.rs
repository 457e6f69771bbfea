use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SkpError};

/// Which upper bound a node is pruned with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    /// Rounding + DP knapsack bound (`ub_k`).
    #[serde(rename = "k")]
    Knapsack,
    /// Fractional knapsack bound (`ub_fk`).
    #[serde(rename = "fk")]
    FractionalKnapsack,
    /// Greedy value over the approximation ratio (`ub_dom`).
    #[serde(rename = "dom")]
    Domination,
    /// Minimum over greedy prefixes (`ub_rs`).
    #[serde(rename = "rs")]
    RefinedSubset,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [
        BoundKind::Knapsack,
        BoundKind::FractionalKnapsack,
        BoundKind::Domination,
        BoundKind::RefinedSubset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Knapsack => "k",
            BoundKind::FractionalKnapsack => "fk",
            BoundKind::Domination => "dom",
            BoundKind::RefinedSubset => "rs",
        }
    }

    /// Bounds that consume a greedy trace.
    pub fn needs_trace(self) -> bool {
        matches!(self, BoundKind::Domination | BoundKind::RefinedSubset)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = SkpError;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| {
                SkpError::Config(format!("unknown bound `{s}` (expected k, fk, dom or rs)"))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branching {
    /// One child per candidate in unit-gain order.
    Basic,
    /// Children along the greedy selection prefix.
    Dual,
}

impl Branching {
    pub const ALL: [Branching; 2] = [Branching::Basic, Branching::Dual];

    pub fn name(self) -> &'static str {
        match self {
            Branching::Basic => "basic",
            Branching::Dual => "dual",
        }
    }
}

impl fmt::Display for Branching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Branching {
    type Err = SkpError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(Branching::Basic),
            "dual" => Ok(Branching::Dual),
            _ => Err(SkpError::Config(format!(
                "unknown branching `{s}` (expected basic or dual)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub bound: BoundKind,
    pub branching: Branching,
    /// Accuracy of the knapsack bound; only read when `bound` is `k`.
    pub epsilon: f64,
    pub primal_heuristic: bool,
    pub lazy_update: bool,
    pub reductions: bool,
    #[serde(with = "opt_secs")]
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl SolverConfig {
    /// Defaults: `epsilon = 1`, lazy updates and reductions on, no limits, and
    /// the greedy primal heuristic on except for `k`/`fk` with basic branching.
    pub fn new(bound: BoundKind, branching: Branching) -> Self {
        let primal = branching == Branching::Dual
            || !matches!(bound, BoundKind::Knapsack | BoundKind::FractionalKnapsack);
        SolverConfig {
            bound,
            branching,
            epsilon: 1.0,
            primal_heuristic: primal,
            lazy_update: true,
            reductions: true,
            time_limit: None,
            node_limit: None,
        }
    }

    /// Short label such as `dual-rs`.
    pub fn label(&self) -> String {
        format!("{}-{}", self.branching, self.bound)
    }

    pub fn validate(&self) -> Result<()> {
        if self.branching == Branching::Dual && !self.primal_heuristic {
            return Err(SkpError::Config(
                "dual branching is driven by the greedy trace and needs the primal heuristic"
                    .into(),
            ));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(SkpError::Config(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig::new(BoundKind::RefinedSubset, Branching::Dual)
    }
}

mod opt_secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(d) => s.serialize_some(&d.as_secs_f64()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        let secs: Option<f64> = Option::deserialize(d)?;
        Ok(secs.map(Duration::from_secs_f64))
    }
}
