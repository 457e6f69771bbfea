//! Depth-first branch and bound.
//!
//! Each visited node offers `S_T` (and, with the primal heuristic, the greedy
//! completion) as an incumbent, refreshes marginal gains, applies reductions,
//! computes the configured upper bound and, unless pruned, branches.

mod branching;
mod brute;
mod config;
mod prune;
mod verify;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use branching::{branch_basic, branch_dual, BasicBrancher, DualBrancher};
pub use brute::{brute_force, brute_force_restricted, BRUTE_FORCE_LIMIT};
pub use config::{BoundKind, Branching, SolverConfig};
pub use prune::{lazy_refresh, reduce, NodeGains, Pruning};
pub use verify::{standard_configs, verify, Verification};

use crate::bounds::{
    best_feasible_singleton, greedy_ratio, knapsack_ptas_bound, refined_subset_gap, GainProfile,
    SortedProfile,
};
use crate::error::Result;
use crate::greedy::{run_greedy, GreedyMode, GreedyTrace};
use crate::node::SearchNode;
use crate::oracle::{CountingOracle, ElementId, SubmodularOracle};
use crate::problem::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    TimeLimit,
    NodeLimit,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::TimeLimit => "time_limit",
            SolveStatus::NodeLimit => "node_limit",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    /// Best objective found, `lb*`.
    pub optimum: f64,
    /// `S*`, sorted.
    pub solution: Vec<ElementId>,
    pub nodes_visited: u64,
    pub oracle_calls: u64,
    pub wall_time: f64,
    pub status: SolveStatus,
    /// Upper bound at the root; absent when a limit hit before it was computed.
    pub root_bound: Option<f64>,
}

/// What a node looked like when the search left it.
#[derive(Debug)]
pub struct NodeEvent<'n> {
    pub depth: usize,
    pub selected: &'n [ElementId],
    /// Candidate set as the node was created.
    pub candidates: &'n [ElementId],
    /// Candidate set after reductions.
    pub reduced: &'n [ElementId],
    pub remaining_budget: f64,
    /// `f(S_T)`.
    pub value: f64,
    /// Upper bound used for the pruning test; `None` for leaves.
    pub upper_bound: Option<f64>,
    /// `lb*` at the pruning test.
    pub incumbent: f64,
    pub pruned: bool,
    pub trace: Option<&'n GreedyTrace>,
}

/// Hook called once per visited node.
pub trait NodeObserver {
    fn on_node(&mut self, event: &NodeEvent<'_>);
}

impl<F: FnMut(&NodeEvent<'_>)> NodeObserver for F {
    fn on_node(&mut self, event: &NodeEvent<'_>) {
        self(event)
    }
}

/// Time limit is checked on every node whose count is `1 (mod 1024)`.
const CLOCK_INTERVAL: u64 = 1024;

pub fn solve(instance: &Instance, config: &SolverConfig) -> Result<SolveReport> {
    run(instance, config, None)
}

pub fn solve_with_observer(
    instance: &Instance,
    config: &SolverConfig,
    observer: &mut dyn NodeObserver,
) -> Result<SolveReport> {
    run(instance, config, Some(observer))
}

fn run(
    instance: &Instance,
    config: &SolverConfig,
    observer: Option<&mut dyn NodeObserver>,
) -> Result<SolveReport> {
    config.validate()?;
    let counting = CountingOracle::new(instance.oracle());
    let started = Instant::now();
    let mut search = Search {
        oracle: &counting,
        weights: instance.universe().weights(),
        config,
        pruning: Pruning::for_oracle(instance.oracle()),
        incumbent: 0.0,
        best: Vec::new(),
        nodes: 0,
        status: SolveStatus::Optimal,
        started,
        time_limit: config.time_limit,
        root_bound: None,
        observer,
    };
    search.visit(SearchNode::root(instance), 0);
    let mut solution = search.best;
    solution.sort_unstable();
    Ok(SolveReport {
        optimum: search.incumbent,
        solution,
        nodes_visited: search.nodes,
        oracle_calls: counting.calls(),
        wall_time: started.elapsed().as_secs_f64(),
        status: search.status,
        root_bound: search.root_bound,
    })
}

struct Search<'s, 'o> {
    oracle: &'s dyn SubmodularOracle,
    weights: &'s [f64],
    config: &'s SolverConfig,
    pruning: Pruning,
    incumbent: f64,
    best: Vec<ElementId>,
    nodes: u64,
    status: SolveStatus,
    started: Instant,
    time_limit: Option<Duration>,
    root_bound: Option<f64>,
    observer: Option<&'o mut (dyn NodeObserver + 'o)>,
}

impl Search<'_, '_> {
    fn stopped(&self) -> bool {
        self.status != SolveStatus::Optimal
    }

    fn offer(&mut self, value: f64, set: impl FnOnce() -> Vec<ElementId>) {
        if value > self.incumbent {
            self.incumbent = value;
            self.best = set();
        }
    }

    /// Counts the node; false when a limit forbids visiting it.
    fn enter(&mut self) -> bool {
        if self.stopped() {
            return false;
        }
        if let Some(limit) = self.config.node_limit {
            if self.nodes >= limit {
                self.status = SolveStatus::NodeLimit;
                return false;
            }
        }
        self.nodes += 1;
        if let Some(limit) = self.time_limit {
            if self.nodes % CLOCK_INTERVAL == 1 && self.started.elapsed() >= limit {
                self.status = SolveStatus::TimeLimit;
                return false;
            }
        }
        true
    }

    fn observe(&mut self, event: NodeEvent<'_>) {
        if let Some(obs) = self.observer.as_deref_mut() {
            obs.on_node(&event);
        }
    }

    fn visit(&mut self, node: SearchNode, depth: usize) {
        if !self.enter() {
            return;
        }
        let config = self.config;
        let weights = self.weights;
        let oracle = self.oracle;
        let budget = node.remaining_budget;

        let mut anchor = oracle.anchor(&node.selected);
        let value = anchor.value();
        self.offer(value, || node.selected.clone());

        let gains = match (&node.inherited_gains, config.lazy_update) {
            (Some(inherited), true) => lazy_refresh(
                anchor.as_ref(),
                &node.candidates,
                weights,
                inherited,
                value,
                budget,
                self.incumbent,
            ),
            _ => NodeGains::exact(anchor.as_ref(), &node.candidates),
        };
        let (candidates, gains) = if config.reductions {
            reduce(
                &node.candidates,
                &gains,
                weights,
                value,
                budget,
                self.incumbent,
                self.pruning,
            )
        } else {
            (node.candidates.clone(), gains)
        };

        if candidates.is_empty() {
            if depth == 0 {
                self.root_bound = Some(value);
            }
            let incumbent = self.incumbent;
            self.observe(NodeEvent {
                depth,
                selected: &node.selected,
                candidates: &node.candidates,
                reduced: &candidates,
                remaining_budget: budget,
                value,
                upper_bound: None,
                incumbent,
                pruned: false,
                trace: None,
            });
            return;
        }

        let needs_trace = config.primal_heuristic
            || config.bound.needs_trace()
            || config.branching == Branching::Dual;
        let base = if config.bound.needs_trace() {
            Some(anchor.fork())
        } else {
            None
        };
        let (trace, snapshots) = if needs_trace {
            let run = run_greedy(
                anchor.as_mut(),
                &candidates,
                weights,
                budget,
                gains.gains.clone(),
                &gains.fresh,
                GreedyMode::Lazy,
                config.branching == Branching::Dual,
            );
            if config.primal_heuristic {
                let completion = value + run.trace.value();
                self.offer(completion, || {
                    let mut s = node.selected.clone();
                    s.extend_from_slice(&run.trace.selected);
                    s
                });
            }
            (Some(run.trace), run.snapshots)
        } else {
            (None, Vec::new())
        };

        let cutoff = self.pruning.threshold(self.incumbent) - value;
        let gap = match config.bound {
            BoundKind::FractionalKnapsack => {
                fractional(&candidates, &gains.gains, weights).bound(0, budget)
            }
            BoundKind::Knapsack => knapsack_ptas_bound(
                &GainProfile::from_parts(&candidates, &gains.gains, weights, budget),
                config.epsilon,
            ),
            BoundKind::Domination => {
                let base = base.expect("anchor kept for the bound");
                let singleton = best_feasible_singleton(
                    base.as_ref(),
                    &candidates,
                    weights,
                    budget,
                    &gains.gains,
                    &gains.fresh,
                );
                let greedy = trace.as_ref().map_or(0.0, |t| t.value());
                greedy.max(singleton) / greedy_ratio()
            }
            BoundKind::RefinedSubset => refined_subset_gap(
                base.expect("anchor kept for the bound"),
                &candidates,
                weights,
                budget,
                trace.as_ref().expect("trace computed for the bound"),
                &mut gains.gains.clone(),
                Some(&gains.fresh),
                cutoff,
            ),
        };
        let upper_bound = value + gap;
        if depth == 0 {
            self.root_bound = Some(upper_bound);
        }
        let incumbent = self.incumbent;
        let pruned = self.pruning.prunes(upper_bound, incumbent);
        self.observe(NodeEvent {
            depth,
            selected: &node.selected,
            candidates: &node.candidates,
            reduced: &candidates,
            remaining_budget: budget,
            value,
            upper_bound: Some(upper_bound),
            incumbent,
            pruned,
            trace: trace.as_ref(),
        });
        if pruned {
            return;
        }

        let node = SearchNode {
            selected: node.selected,
            candidates,
            remaining_budget: budget,
            inherited_gains: None,
        };
        match config.branching {
            Branching::Basic => {
                let brancher = BasicBrancher::new(&node, value, &gains.gains, weights);
                for i in 0..brancher.len() {
                    if self.stopped() || brancher.cut_before(i, self.incumbent, self.pruning) {
                        break;
                    }
                    if let Some(child) = brancher.child(i) {
                        self.visit(child, depth + 1);
                    }
                }
            }
            Branching::Dual => {
                let trace = trace.expect("dual branching runs greedy");
                let brancher = DualBrancher::new(&node, value, &trace, &snapshots, weights);
                for i in 0..brancher.len() {
                    if self.stopped() || brancher.cut_before(i, self.incumbent, self.pruning) {
                        break;
                    }
                    self.visit(brancher.child(i), depth + 1);
                }
            }
        }
    }
}

fn fractional(candidates: &[ElementId], gains: &[f64], weights: &[f64]) -> SortedProfile {
    SortedProfile::new(GainProfile::from_parts(candidates, gains, weights, 0.0).entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{Coverage, Modular};
    use std::sync::Arc;

    fn e1() -> Instance {
        let f = Modular::new(vec![3.0, 1.0, 5.0]).unwrap();
        Instance::new(Arc::new(f), vec![1.0, 1.0, 2.0], 2.0).unwrap()
    }

    fn e2() -> Instance {
        let f = Coverage::new(vec![1.0; 3], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        Instance::new(Arc::new(f), vec![1.0; 3], 2.0).unwrap()
    }

    fn all_configs() -> Vec<SolverConfig> {
        let mut out = Vec::new();
        for bound in BoundKind::ALL {
            for branching in Branching::ALL {
                for lazy in [true, false] {
                    for reductions in [true, false] {
                        let mut c = SolverConfig::new(bound, branching);
                        c.lazy_update = lazy;
                        c.reductions = reductions;
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn e1_every_config() {
        let inst = e1();
        for c in all_configs() {
            let r = solve(&inst, &c).unwrap();
            assert_eq!(r.status, SolveStatus::Optimal, "{}", c.label());
            assert_eq!(r.optimum, 5.0, "{}", c.label());
            assert_eq!(r.solution, vec![2], "{}", c.label());
        }
    }

    #[test]
    fn e2_every_config() {
        let inst = e2();
        for c in all_configs() {
            let r = solve(&inst, &c).unwrap();
            assert_eq!(r.optimum, 3.0, "{}", c.label());
            assert_eq!(r.solution.len(), 2);
        }
    }

    #[test]
    fn nothing_fits() {
        let inst = e1().with_budget(0.5).unwrap();
        let r = solve(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(r.optimum, 0.0);
        assert!(r.solution.is_empty());
        assert_eq!(r.status, SolveStatus::Optimal);
    }

    #[test]
    fn node_limit_reports_incumbent() {
        let inst = e2();
        let c =
            SolverConfig::new(BoundKind::FractionalKnapsack, Branching::Basic).with_node_limit(1);
        let r = solve(&inst, &c).unwrap();
        assert_eq!(r.status, SolveStatus::NodeLimit);
        assert_eq!(r.nodes_visited, 1);
        assert!(r.optimum <= 3.0);
    }

    #[test]
    fn zero_time_limit_stops_at_root() {
        let inst = e2();
        let c = SolverConfig::default().with_time_limit(Duration::ZERO);
        let r = solve(&inst, &c).unwrap();
        assert_eq!(r.status, SolveStatus::TimeLimit);
        assert_eq!(r.root_bound, None);
    }

    #[test]
    fn dual_without_primal_is_rejected() {
        let c = SolverConfig {
            primal_heuristic: false,
            ..SolverConfig::default()
        };
        assert!(solve(&e1(), &c).is_err());
    }

    #[test]
    fn observer_sees_every_node() {
        let inst = e2();
        let mut seen = 0u64;
        let mut obs = |_: &NodeEvent<'_>| seen += 1;
        let r = solve_with_observer(
            &inst,
            &SolverConfig::new(BoundKind::FractionalKnapsack, Branching::Basic),
            &mut obs,
        )
        .unwrap();
        assert_eq!(seen, r.nodes_visited);
    }
}
