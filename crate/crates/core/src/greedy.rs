//! GreedyAdd: repeatedly take the candidate of highest unit gain, adding it
//! when it still fits and discarding it either way.

use std::collections::BinaryHeap;

use crate::node::SearchNode;
use crate::oracle::{Anchor, ElementId};
use crate::problem::Instance;
use crate::ranked::Ranked;

/// One loop iteration of GreedyAdd.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyStep {
    pub element: ElementId,
    /// `f(v | S_T ∪ X)` at the moment `v` was examined.
    pub gain: f64,
    pub added: bool,
    /// `g(X_i)` after this iteration.
    pub value: f64,
    /// `w(X_i)` after this iteration.
    pub weight: f64,
    /// Every iteration up to and including this one added its element.
    pub consecutive: bool,
}

/// The sequence `X_0 = ∅, X_1, …` observed during GreedyAdd. `X_i` is the set
/// after the `i`-th iteration, so skipped iterations repeat the previous set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
    /// `X̂` in selection order.
    pub selected: Vec<ElementId>,
    /// Largest `p` such that the first `p` iterations all added.
    pub prefix_consecutive: usize,
}

impl GreedyTrace {
    /// `g(X̂)`.
    pub fn value(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.value)
    }

    /// `w(X̂)`.
    pub fn weight(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.weight)
    }

    /// `(g(X_i), w(X_i))` for iteration `i`, with `i = 0` the empty set.
    pub fn prefix(&self, i: usize) -> (f64, f64) {
        if i == 0 {
            (0.0, 0.0)
        } else {
            let s = &self.steps[i - 1];
            (s.value, s.weight)
        }
    }

    /// Elements examined but not added, in examination order.
    pub fn skipped(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.steps.iter().filter(|s| !s.added).map(|s| s.element)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GreedyMode {
    /// Stale gains kept in a max-heap and recomputed only when they surface.
    #[default]
    Lazy,
    /// Every remaining gain recomputed each iteration.
    Eager,
}

const STALE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct PoolEntry {
    rank: Ranked,
    epoch: u32,
}

/// Candidate pool keyed by (possibly stale) unit gains.
///
/// Keys must upper-bound the true gains at the current base set; submodularity
/// keeps that true as the base grows, so an entry that surfaces with a fresh
/// key is the exact argmax.
pub struct LazyPool {
    heap: BinaryHeap<PoolEntry>,
    weights: Vec<f64>,
    keys: Vec<f64>,
    epoch: u32,
    recomputations: usize,
}

impl LazyPool {
    /// `keys[i]` bounds the gain of `elements[i]`; `fresh[i]` marks keys that
    /// are exact for the current base set.
    pub fn new(elements: &[ElementId], weights: &[f64], keys: Vec<f64>, fresh: &[bool]) -> Self {
        let heap = elements
            .iter()
            .enumerate()
            .map(|(pos, &e)| PoolEntry {
                rank: Ranked::new(keys[pos], weights[e], e, pos),
                epoch: if fresh[pos] { 0 } else { STALE },
            })
            .collect();
        LazyPool {
            heap,
            weights: elements.iter().map(|&e| weights[e]).collect(),
            keys,
            epoch: 0,
            recomputations: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Current gain upper bounds, indexed like the constructor's `elements`.
    pub fn keys(&self) -> &[f64] {
        &self.keys
    }

    pub fn into_keys(self) -> Vec<f64> {
        self.keys
    }

    /// Number of gain evaluations performed so far.
    pub fn recomputations(&self) -> usize {
        self.recomputations
    }

    /// The base set grew; every key is now only an upper bound.
    pub fn advance(&mut self) {
        self.epoch += 1;
    }

    /// Removes and returns `(element, exact gain, position)` of the candidate
    /// with the highest true unit gain, ties to the lowest id.
    pub fn pop_best(&mut self, anchor: &dyn Anchor<'_>) -> Option<(ElementId, f64, usize)> {
        while let Some(top) = self.heap.pop() {
            let pos = top.rank.pos;
            if top.epoch == self.epoch {
                return Some((top.rank.element, self.keys[pos], pos));
            }
            let g = anchor.gain(top.rank.element);
            self.recomputations += 1;
            self.keys[pos] = g;
            self.heap.push(PoolEntry {
                rank: Ranked::new(g, self.weights[pos], top.rank.element, pos),
                epoch: self.epoch,
            });
        }
        None
    }
}

/// The argmax of true unit gain over the pool at `anchor`'s base set.
pub fn lazy_best(pool: &mut LazyPool, anchor: &dyn Anchor<'_>) -> Option<(ElementId, f64)> {
    pool.pop_best(anchor).map(|(e, g, _)| (e, g))
}

/// Runs GreedyAdd at `node` with gains computed from scratch.
pub fn greedy_add(instance: &Instance, node: &SearchNode, mode: GreedyMode) -> GreedyTrace {
    let oracle = instance.oracle();
    let mut anchor = oracle.anchor(&node.selected);
    let n = node.candidates.len();
    let (keys, fresh) = match &node.inherited_gains {
        Some(g) => (g.clone(), vec![false; n]),
        None => (vec![f64::INFINITY; n], vec![false; n]),
    };
    run_greedy(
        anchor.as_mut(),
        &node.candidates,
        instance.universe().weights(),
        node.remaining_budget,
        keys,
        &fresh,
        mode,
        false,
    )
    .trace
}

pub(crate) struct GreedyRun {
    pub trace: GreedyTrace,
    /// `snapshots[i]`: gain upper bounds at `S_T ∪ X_i` for every candidate,
    /// indexed by candidate position; `i` counts additions.
    pub snapshots: Vec<Vec<f64>>,
}

/// GreedyAdd over an anchor positioned at `S_T`; the anchor ends at `S_T ∪ X̂`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn run_greedy(
    anchor: &mut dyn Anchor<'_>,
    candidates: &[ElementId],
    weights: &[f64],
    budget: f64,
    keys: Vec<f64>,
    fresh: &[bool],
    mode: GreedyMode,
    record_snapshots: bool,
) -> GreedyRun {
    let mut trace = GreedyTrace::default();
    let mut snapshots = Vec::new();
    if record_snapshots {
        snapshots.push(keys.clone());
    }
    let (mut value, mut weight) = (0.0, 0.0);
    let mut consecutive = true;

    let mut record = |trace: &mut GreedyTrace,
                      anchor: &mut dyn Anchor<'_>,
                      element: ElementId,
                      gain: f64|
     -> bool {
        let w = weights[element];
        let added = weight + w <= budget;
        if added {
            anchor.insert(element);
            value += gain;
            weight += w;
            trace.selected.push(element);
        }
        consecutive &= added;
        if consecutive {
            trace.prefix_consecutive += 1;
        }
        trace.steps.push(GreedyStep {
            element,
            gain,
            added,
            value,
            weight,
            consecutive,
        });
        added
    };

    match mode {
        GreedyMode::Lazy => {
            let mut pool = LazyPool::new(candidates, weights, keys, fresh);
            while let Some((element, gain, _)) = pool.pop_best(anchor) {
                if record(&mut trace, anchor, element, gain) {
                    pool.advance();
                    if record_snapshots {
                        snapshots.push(pool.keys().to_vec());
                    }
                }
            }
        }
        GreedyMode::Eager => {
            let mut keys = keys;
            let mut remaining: Vec<usize> = (0..candidates.len()).collect();
            while !remaining.is_empty() {
                let mut best: Option<(Ranked, usize)> = None;
                for (slot, &pos) in remaining.iter().enumerate() {
                    let e = candidates[pos];
                    let g = anchor.gain(e);
                    keys[pos] = g;
                    let r = Ranked::new(g, weights[e], e, pos);
                    if best.is_none_or(|(b, _)| r > b) {
                        best = Some((r, slot));
                    }
                }
                let (rank, slot) = best.expect("non-empty pool");
                remaining.swap_remove(slot);
                if record(&mut trace, anchor, rank.element, keys[rank.pos]) && record_snapshots {
                    snapshots.push(keys.clone());
                }
            }
        }
    }
    GreedyRun { trace, snapshots }
}
