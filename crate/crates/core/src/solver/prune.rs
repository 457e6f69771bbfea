use crate::bounds::ProfileEntry;
use crate::bounds::SortedProfile;
use crate::oracle::{Anchor, ElementId, SubmodularOracle};

/// The `ub ≤ lb*` test. Integral objectives compare exactly; otherwise a
/// relative slack of `1e-9` absorbs rounding in bound arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pruning {
    pub integral: bool,
}

impl Pruning {
    pub const RELATIVE_SLACK: f64 = 1e-9;

    pub fn for_oracle(oracle: &dyn SubmodularOracle) -> Self {
        Pruning {
            integral: oracle.is_integral(),
        }
    }

    /// Largest upper bound that still prunes against `incumbent`.
    pub fn threshold(&self, incumbent: f64) -> f64 {
        if self.integral {
            incumbent
        } else {
            incumbent + Self::RELATIVE_SLACK * incumbent.abs().max(1.0)
        }
    }

    pub fn prunes(&self, upper_bound: f64, incumbent: f64) -> bool {
        upper_bound <= self.threshold(incumbent)
    }
}

/// Per-candidate gains at a node, aligned with the candidate list.
///
/// `gains[i]` is exact when `fresh[i]` and an upper bound otherwise.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeGains {
    pub gains: Vec<f64>,
    pub fresh: Vec<bool>,
}

impl NodeGains {
    /// Every gain evaluated at the anchor.
    pub fn exact(anchor: &dyn Anchor<'_>, candidates: &[ElementId]) -> Self {
        NodeGains {
            gains: candidates.iter().map(|&e| anchor.gain(e)).collect(),
            fresh: vec![true; candidates.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gains.is_empty()
    }

    pub fn refreshed(&self) -> usize {
        self.fresh.iter().filter(|&&f| f).count()
    }

    fn select(&self, keep: &[usize]) -> NodeGains {
        NodeGains {
            gains: keep.iter().map(|&i| self.gains[i]).collect(),
            fresh: keep.iter().map(|&i| self.fresh[i]).collect(),
        }
    }
}

/// Recomputes only gains whose inherited unit gain exceeds
/// `(lb* - f(S_T)) / W_T`; every other entry keeps its inherited value, which
/// still bounds the true gain from above.
pub fn lazy_refresh(
    anchor: &dyn Anchor<'_>,
    candidates: &[ElementId],
    weights: &[f64],
    inherited: &[f64],
    node_value: f64,
    remaining_budget: f64,
    incumbent: f64,
) -> NodeGains {
    let threshold = if remaining_budget > 0.0 {
        (incumbent - node_value) / remaining_budget
    } else {
        f64::INFINITY
    };
    let mut out = NodeGains {
        gains: inherited.to_vec(),
        fresh: vec![false; candidates.len()],
    };
    for (pos, &e) in candidates.iter().enumerate() {
        if inherited[pos] / weights[e] > threshold {
            out.gains[pos] = anchor.gain(e);
            out.fresh[pos] = true;
        }
    }
    out
}

/// Drops candidates that cannot be part of an improving solution.
///
/// Rule 1 removes elements that do not fit or have zero gain. Rule 2 removes
/// `e` when `f(S_T) + f(e | S_T) + ub_fk(C_T, W_T - w_e) ≤ lb*`. Both rules
/// accept upper-bound gains. Returns the surviving candidates and their gains.
#[allow(clippy::too_many_arguments)]
pub fn reduce(
    candidates: &[ElementId],
    gains: &NodeGains,
    weights: &[f64],
    node_value: f64,
    remaining_budget: f64,
    incumbent: f64,
    pruning: Pruning,
) -> (Vec<ElementId>, NodeGains) {
    let keep: Vec<usize> = (0..candidates.len())
        .filter(|&pos| weights[candidates[pos]] <= remaining_budget && gains.gains[pos] > 0.0)
        .collect();
    let profile = SortedProfile::new(
        keep.iter()
            .map(|&pos| ProfileEntry {
                element: candidates[pos],
                gain: gains.gains[pos],
                weight: weights[candidates[pos]],
            })
            .collect(),
    );
    let keep: Vec<usize> = keep
        .into_iter()
        .filter(|&pos| {
            let w = weights[candidates[pos]];
            let ub = node_value + gains.gains[pos] + profile.bound(0, remaining_budget - w);
            !pruning.prunes(ub, incumbent)
        })
        .collect();
    (
        keep.iter().map(|&pos| candidates[pos]).collect(),
        gains.select(&keep),
    )
}
