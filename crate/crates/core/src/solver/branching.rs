//! Child generation. Both schemes stop generating as soon as a fractional
//! knapsack bound over the remaining children drops to the incumbent.

use crate::bounds::{ProfileEntry, SortedProfile};
use crate::greedy::GreedyTrace;
use crate::node::SearchNode;
use crate::oracle::ElementId;
use crate::problem::Instance;

use super::prune::{NodeGains, Pruning};

fn entries(candidates: &[ElementId], gains: &[f64], weights: &[f64]) -> Vec<ProfileEntry> {
    candidates
        .iter()
        .zip(gains)
        .map(|(&element, &gain)| ProfileEntry {
            element,
            gain,
            weight: weights[element],
        })
        .collect()
}

/// Basic branching: candidates in non-increasing unit gain `c_1, …, c_n`,
/// child `i` is `(S_T ∪ {c_i}, C_T \ C_{≤i}, W_T - w_{c_i})`.
pub struct BasicBrancher<'a> {
    node: &'a SearchNode,
    node_value: f64,
    profile: SortedProfile,
}

impl<'a> BasicBrancher<'a> {
    pub fn new(node: &'a SearchNode, node_value: f64, gains: &[f64], weights: &[f64]) -> Self {
        BasicBrancher {
            node,
            node_value,
            profile: SortedProfile::new(entries(&node.candidates, gains, weights)),
        }
    }

    pub fn len(&self) -> usize {
        self.profile.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profile.is_empty()
    }

    /// Candidate order used for branching.
    pub fn order(&self) -> Vec<ElementId> {
        self.profile.entries().iter().map(|e| e.element).collect()
    }

    /// True when children `i+1..` (1-based) cannot beat `incumbent`:
    /// `f(S_T) + ub_fk(C_T \ C_{≤i}, W_T) ≤ lb*`.
    pub fn cut_before(&self, i: usize, incumbent: f64, pruning: Pruning) -> bool {
        pruning.prunes(
            self.node_value + self.profile.bound(i, self.node.remaining_budget),
            incumbent,
        )
    }

    /// Child for the candidate at 0-based position `i`, or `None` when it
    /// does not fit the remaining budget.
    pub fn child(&self, i: usize) -> Option<SearchNode> {
        let head = self.profile.entries()[i];
        if head.weight > self.node.remaining_budget {
            return None;
        }
        let tail = &self.profile.entries()[i + 1..];
        let mut selected = self.node.selected.clone();
        selected.push(head.element);
        Some(SearchNode {
            selected,
            candidates: tail.iter().map(|e| e.element).collect(),
            remaining_budget: self.node.remaining_budget - head.weight,
            inherited_gains: Some(tail.iter().map(|e| e.gain).collect()),
        })
    }
}

/// Dual branching: candidates ordered as `X̂` in selection order followed by
/// the rest; child `i` is `(S_T ∪ C_{≤i}, C_T \ C_{≤i+1}, W_T - w(C_{≤i}))`
/// for `i = 0..=|X̂|`. Children past `|X̂|` would have negative budget.
pub struct DualBrancher<'a> {
    node: &'a SearchNode,
    node_value: f64,
    /// Positions into `node.candidates`, in branching order.
    order: Vec<usize>,
    prefix_value: Vec<f64>,
    prefix_weight: Vec<f64>,
    snapshots: &'a [Vec<f64>],
    weights: &'a [f64],
}

impl<'a> DualBrancher<'a> {
    /// `snapshots[i]` holds gain upper bounds at `S_T ∪ X_i` indexed by
    /// candidate position, one per addition plus `X_0`.
    pub fn new(
        node: &'a SearchNode,
        node_value: f64,
        trace: &GreedyTrace,
        snapshots: &'a [Vec<f64>],
        weights: &'a [f64],
    ) -> Self {
        let position = |e: ElementId| {
            node.candidates
                .iter()
                .position(|&c| c == e)
                .expect("trace element is a candidate")
        };
        let order: Vec<usize> = trace
            .selected
            .iter()
            .copied()
            .chain(trace.skipped())
            .map(position)
            .collect();
        debug_assert_eq!(order.len(), node.candidates.len());
        let mut prefix_value = vec![0.0];
        let mut prefix_weight = vec![0.0];
        for s in trace.steps.iter().filter(|s| s.added) {
            prefix_value.push(s.value);
            prefix_weight.push(s.weight);
        }
        debug_assert_eq!(snapshots.len(), prefix_value.len());
        DualBrancher {
            node,
            node_value,
            order,
            prefix_value,
            prefix_weight,
            snapshots,
            weights,
        }
    }

    /// Number of materialised children, `|X̂| + 1`.
    pub fn len(&self) -> usize {
        self.prefix_value.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> Vec<ElementId> {
        self.order
            .iter()
            .map(|&p| self.node.candidates[p])
            .collect()
    }

    /// True when children `i..` cannot beat `incumbent`:
    /// `f(S_{T_i}) + ub_fk(C_T \ C_{≤i}, W_T - w(C_{≤i})) ≤ lb*`.
    pub fn cut_before(&self, i: usize, incumbent: f64, pruning: Pruning) -> bool {
        let snapshot = &self.snapshots[i];
        let tail: Vec<ProfileEntry> = self.order[i..]
            .iter()
            .map(|&p| {
                let element = self.node.candidates[p];
                ProfileEntry {
                    element,
                    gain: snapshot[p],
                    weight: self.weights[element],
                }
            })
            .collect();
        let budget = self.node.remaining_budget - self.prefix_weight[i];
        let ub = self.node_value + self.prefix_value[i] + SortedProfile::new(tail).bound(0, budget);
        pruning.prunes(ub, incumbent)
    }

    /// `f(S_{T_i}) - f(S_T)`.
    pub fn child_gain(&self, i: usize) -> f64 {
        self.prefix_value[i]
    }

    pub fn child(&self, i: usize) -> SearchNode {
        let n = self.order.len();
        let rest = if i < n { &self.order[i + 1..] } else { &[][..] };
        let snapshot = &self.snapshots[i];
        let mut selected = self.node.selected.clone();
        selected.extend(self.order[..i].iter().map(|&p| self.node.candidates[p]));
        SearchNode {
            selected,
            candidates: rest.iter().map(|&p| self.node.candidates[p]).collect(),
            remaining_budget: self.node.remaining_budget - self.prefix_weight[i],
            inherited_gains: Some(rest.iter().map(|&p| snapshot[p]).collect()),
        }
    }
}

/// Basic-branching children of `node` against a fixed incumbent.
pub fn branch_basic(
    instance: &Instance,
    node: &SearchNode,
    gains: &NodeGains,
    incumbent: f64,
) -> Vec<SearchNode> {
    let weights = instance.universe().weights();
    let value = instance.oracle().value(&node.selected);
    let pruning = Pruning::for_oracle(instance.oracle());
    let brancher = BasicBrancher::new(node, value, &gains.gains, weights);
    let mut children = Vec::new();
    for i in 0..brancher.len() {
        if brancher.cut_before(i, incumbent, pruning) {
            break;
        }
        children.extend(brancher.child(i));
    }
    children
}

/// Dual-branching children of `node` for its greedy `trace`, against a fixed
/// incumbent. Gains along the greedy prefixes are recomputed exactly.
pub fn branch_dual(
    instance: &Instance,
    node: &SearchNode,
    trace: &GreedyTrace,
    incumbent: f64,
) -> Vec<SearchNode> {
    let oracle = instance.oracle();
    let weights = instance.universe().weights();
    let mut anchor = oracle.anchor(&node.selected);
    let value = anchor.value();
    let mut snapshots = Vec::with_capacity(trace.selected.len() + 1);
    snapshots.push(NodeGains::exact(anchor.as_ref(), &node.candidates).gains);
    for &e in &trace.selected {
        anchor.insert(e);
        snapshots.push(NodeGains::exact(anchor.as_ref(), &node.candidates).gains);
    }
    let pruning = Pruning::for_oracle(oracle);
    let brancher = DualBrancher::new(node, value, trace, &snapshots, weights);
    let mut children = Vec::new();
    for i in 0..brancher.len() {
        if brancher.cut_before(i, incumbent, pruning) {
            break;
        }
        children.push(brancher.child(i));
    }
    children
}
