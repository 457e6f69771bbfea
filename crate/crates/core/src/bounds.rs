//! Upper bounds on the restricted problem at a search node.
//!
//! All functions except [`domination_bound`] and [`refined_subset_bound`]
//! bound `max_{X ⊆ C_T, w(X) ≤ W_T} f(X | S_T)` only; callers add `f(S_T)`.

use std::collections::BinaryHeap;

use crate::greedy::{greedy_add, GreedyMode, GreedyTrace};
use crate::node::SearchNode;
use crate::oracle::{Anchor, BoxedAnchor, ElementId};
use crate::problem::Instance;
use crate::ranked::{unit_order, Ranked};

/// Approximation ratio `1 - e^{-1/2}` of greedy-plus-best-singleton.
pub fn greedy_ratio() -> f64 {
    1.0 - (-0.5f64).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileEntry {
    pub element: ElementId,
    pub gain: f64,
    pub weight: f64,
}

/// Modular surrogate of a node: per-candidate gains `f(e | S_T)`, weights and
/// the remaining budget `W_T`.
#[derive(Debug, Clone, PartialEq)]
pub struct GainProfile {
    pub entries: Vec<ProfileEntry>,
    pub budget: f64,
}

impl GainProfile {
    pub fn new(entries: Vec<ProfileEntry>, budget: f64) -> Self {
        GainProfile { entries, budget }
    }

    /// Zips parallel slices of ids and gains, looking weights up by id.
    pub fn from_parts(elements: &[ElementId], gains: &[f64], weights: &[f64], budget: f64) -> Self {
        let entries = elements
            .iter()
            .zip(gains)
            .map(|(&element, &gain)| ProfileEntry {
                element,
                gain,
                weight: weights[element],
            })
            .collect();
        GainProfile { entries, budget }
    }
}

/// Profile entries sorted by unit gain with prefix sums, so the fractional
/// bound of any suffix under any budget costs one binary search.
#[derive(Debug, Clone)]
pub struct SortedProfile {
    entries: Vec<ProfileEntry>,
    prefix_weight: Vec<f64>,
    prefix_gain: Vec<f64>,
}

impl SortedProfile {
    pub fn new(mut entries: Vec<ProfileEntry>) -> Self {
        entries.sort_by(|a, b| {
            unit_order((a.gain, a.weight, a.element), (b.gain, b.weight, b.element))
        });
        let mut prefix_weight = Vec::with_capacity(entries.len() + 1);
        let mut prefix_gain = Vec::with_capacity(entries.len() + 1);
        let (mut w, mut g) = (0.0, 0.0);
        prefix_weight.push(w);
        prefix_gain.push(g);
        for e in &entries {
            w += e.weight;
            g += e.gain;
            prefix_weight.push(w);
            prefix_gain.push(g);
        }
        SortedProfile {
            entries,
            prefix_weight,
            prefix_gain,
        }
    }

    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fractional knapsack optimum over `entries[start..]` with `budget`.
    pub fn bound(&self, start: usize, budget: f64) -> f64 {
        if budget <= 0.0 || start >= self.entries.len() {
            return 0.0;
        }
        let base_w = self.prefix_weight[start];
        let base_g = self.prefix_gain[start];
        // Number of whole entries that fit, counted from `start`.
        let whole = self.prefix_weight[start + 1..].partition_point(|&pw| pw - base_w <= budget);
        let end = start + whole;
        let mut value = self.prefix_gain[end] - base_g;
        if end < self.entries.len() {
            let next = &self.entries[end];
            let left = budget - (self.prefix_weight[end] - base_w);
            value += left * next.gain / next.weight;
        }
        value
    }
}

/// Optimum of the linear relaxation of the modular knapsack surrogate.
pub fn fractional_knapsack_bound(profile: &GainProfile) -> f64 {
    if profile.entries.is_empty() || profile.budget <= 0.0 {
        return 0.0;
    }
    SortedProfile::new(profile.entries.clone()).bound(0, profile.budget)
}

/// Rounding-plus-DP bound within `(1 + epsilon)` of the 0/1 knapsack optimum.
///
/// Gains are rounded up to multiples of `K = epsilon · max_gain / n` and a
/// minimum-weight table over rounded totals is filled. Items heavier than the
/// budget are dropped first. With all-integral gains `K` never goes below 1,
/// where rounding is already lossless. The result is capped by the fractional
/// bound, which is also a valid upper bound and exact for a single item.
pub fn knapsack_ptas_bound(profile: &GainProfile, epsilon: f64) -> f64 {
    assert!(epsilon > 0.0, "epsilon must be positive");
    let budget = profile.budget;
    let items: Vec<&ProfileEntry> = profile
        .entries
        .iter()
        .filter(|e| e.weight <= budget)
        .collect();
    let max_gain = items.iter().map(|e| e.gain).fold(0.0, f64::max);
    if items.is_empty() || max_gain <= 0.0 {
        return 0.0;
    }
    let n = items.len() as f64;
    let mut scale = epsilon * max_gain / n;
    if items.iter().all(|e| e.gain.fract() == 0.0) {
        scale = scale.max(1.0);
    }

    let rounded: Vec<(usize, f64)> = items
        .iter()
        .filter(|e| e.gain > 0.0)
        .map(|e| {
            let mut r = (e.gain / scale).ceil();
            if r * scale < e.gain {
                r += 1.0;
            }
            (r as usize, e.weight)
        })
        .collect();
    let total: usize = rounded.iter().map(|(r, _)| r).sum();

    // min_weight[v]: lightest subset with rounded value exactly v.
    let mut min_weight = vec![f64::INFINITY; total + 1];
    min_weight[0] = 0.0;
    let mut reach = 0;
    for &(r, w) in &rounded {
        for v in (r..=reach + r).rev() {
            let cand = min_weight[v - r] + w;
            if cand < min_weight[v] {
                min_weight[v] = cand;
            }
        }
        reach += r;
    }
    let slack = budget + 1e-12 * budget.max(1.0);
    let best = (0..=total)
        .rev()
        .find(|&v| min_weight[v] <= slack)
        .unwrap_or(0);

    let dp_bound = scale * best as f64;
    dp_bound.min(fractional_knapsack_bound(profile))
}

/// `f(S_T) + max(g(X̂), best singleton) / (1 - e^{-1/2})`.
pub fn domination_bound(node_value: f64, greedy_value: f64, best_singleton: f64) -> f64 {
    node_value + greedy_value.max(best_singleton) / greedy_ratio()
}

/// `f(S_T) + min_i [ g(X_i) + ub_fk(g(· | X_i), C_T, W_T) ]` over the
/// distinct prefixes `X_i` of the greedy trace, with exact gains.
pub fn refined_subset_bound(instance: &Instance, node: &SearchNode, trace: &GreedyTrace) -> f64 {
    let anchor = instance.oracle().anchor(&node.selected);
    let value = anchor.value();
    if node.candidates.is_empty() {
        return value;
    }
    let mut cache = match &node.inherited_gains {
        Some(g) => g.clone(),
        None => vec![f64::INFINITY; node.candidates.len()],
    };
    value
        + refined_subset_gap(
            anchor,
            &node.candidates,
            instance.universe().weights(),
            node.remaining_budget,
            trace,
            &mut cache,
            None,
            f64::NEG_INFINITY,
        )
}

/// The minimum term of the refined subset bound, without `f(S_T)`.
///
/// `cache` holds per-candidate gain upper bounds and is tightened in place;
/// `fresh` marks entries already exact at `S_T`. Stops as soon as a term drops
/// to `cutoff` or below.
#[allow(clippy::too_many_arguments)]
pub(crate) fn refined_subset_gap(
    mut anchor: BoxedAnchor<'_>,
    candidates: &[ElementId],
    weights: &[f64],
    budget: f64,
    trace: &GreedyTrace,
    cache: &mut [f64],
    fresh: Option<&[bool]>,
    cutoff: f64,
) -> f64 {
    const NEVER: u32 = u32::MAX;
    let mut stamp: Vec<u32> = match fresh {
        Some(f) => f.iter().map(|&x| if x { 0 } else { NEVER }).collect(),
        None => vec![NEVER; candidates.len()],
    };
    let mut epoch = 0u32;
    let mut best = exact_fractional(
        anchor.as_ref(),
        candidates,
        weights,
        budget,
        cache,
        &mut stamp,
        epoch,
    );
    if best <= cutoff {
        return best;
    }
    for step in trace.steps.iter().filter(|s| s.added) {
        anchor.insert(step.element);
        epoch += 1;
        let term = step.value
            + exact_fractional(
                anchor.as_ref(),
                candidates,
                weights,
                budget,
                cache,
                &mut stamp,
                epoch,
            );
        if term < best {
            best = term;
            if best <= cutoff {
                break;
            }
        }
    }
    best
}

/// Fractional knapsack bound over exact gains at the anchor, evaluating only
/// as many gains as needed: an entry whose cached upper bound cannot enter the
/// fractional solution is never recomputed.
fn exact_fractional(
    anchor: &dyn Anchor<'_>,
    candidates: &[ElementId],
    weights: &[f64],
    budget: f64,
    cache: &mut [f64],
    stamp: &mut [u32],
    epoch: u32,
) -> f64 {
    if budget <= 0.0 {
        return 0.0;
    }
    let mut heap: BinaryHeap<Ranked> = candidates
        .iter()
        .enumerate()
        .filter(|&(pos, _)| cache[pos] > 0.0)
        .map(|(pos, &e)| Ranked::new(cache[pos], weights[e], e, pos))
        .collect();
    let mut left = budget;
    let mut value = 0.0;
    while let Some(top) = heap.pop() {
        let pos = top.pos;
        if stamp[pos] != epoch {
            let g = anchor.gain(top.element);
            cache[pos] = g;
            stamp[pos] = epoch;
            if g > 0.0 {
                heap.push(Ranked::new(g, weights[top.element], top.element, pos));
            }
            continue;
        }
        let w = weights[top.element];
        if w <= left {
            value += cache[pos];
            left -= w;
        } else {
            value += left * top.unit;
            break;
        }
    }
    value
}

/// Exact `max_{e ∈ C_T, w_e ≤ W_T} f(e | S_T)`, evaluating lazily from
/// cached upper bounds.
pub(crate) fn best_feasible_singleton(
    anchor: &dyn Anchor<'_>,
    candidates: &[ElementId],
    weights: &[f64],
    budget: f64,
    upper: &[f64],
    fresh: &[bool],
) -> f64 {
    let mut order: Vec<usize> = (0..candidates.len())
        .filter(|&pos| weights[candidates[pos]] <= budget)
        .collect();
    order.sort_by(|&a, &b| upper[b].total_cmp(&upper[a]));
    let mut best = 0.0f64;
    for pos in order {
        if upper[pos] <= best {
            break;
        }
        let g = if fresh[pos] {
            upper[pos]
        } else {
            anchor.gain(candidates[pos])
        };
        best = best.max(g);
    }
    best
}

/// All four bounds at one node, computed from exact gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeBounds {
    pub value: f64,
    pub fractional: f64,
    pub knapsack: f64,
    pub domination: f64,
    pub refined: f64,
    pub greedy_value: f64,
    pub best_singleton: f64,
}

/// Evaluates every bound at `node` from scratch (exact gains, eager greedy).
pub fn node_bounds(instance: &Instance, node: &SearchNode, epsilon: f64) -> NodeBounds {
    let oracle = instance.oracle();
    let weights = instance.universe().weights();
    let anchor = oracle.anchor(&node.selected);
    let value = anchor.value();
    let gains: Vec<f64> = node.candidates.iter().map(|&e| anchor.gain(e)).collect();
    let profile = GainProfile::from_parts(&node.candidates, &gains, weights, node.remaining_budget);
    let trace = greedy_add(instance, node, GreedyMode::Eager);
    let best_singleton = node
        .candidates
        .iter()
        .zip(&gains)
        .filter(|(&e, _)| weights[e] <= node.remaining_budget)
        .map(|(_, &g)| g)
        .fold(0.0, f64::max);
    NodeBounds {
        value,
        fractional: value + fractional_knapsack_bound(&profile),
        knapsack: value + knapsack_ptas_bound(&profile, epsilon),
        domination: domination_bound(value, trace.value(), best_singleton),
        refined: refined_subset_bound(instance, node, &trace),
        greedy_value: trace.value(),
        best_singleton,
    }
}
