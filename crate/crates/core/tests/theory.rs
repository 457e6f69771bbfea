mod common;

use common::small_case;
use proptest::prelude::*;
use skp_core::bounds::{node_bounds, refined_subset_bound};
use skp_core::instances::ProblemKind;
use skp_core::solver::brute_force_restricted;
use skp_core::{greedy_add, GreedyMode, SearchNode};

/// Left side of the ratio bound: `Σρ / min_t (Σ_{i<t} ρ_i + D ρ_t)`.
fn wolsey_ratio(rho: &[f64], d: f64) -> Option<f64> {
    let mut prefix = 0.0;
    let mut min = f64::INFINITY;
    for &r in rho {
        min = min.min(prefix + d * r);
        prefix += r;
    }
    (min > 0.0).then(|| prefix / min)
}

fn kind() -> impl Strategy<Value = ProblemKind> {
    prop::sample::select(ProblemKind::ALL.to_vec())
}

proptest! {
    #[test]
    fn wolsey_ratio_bound(rho in prop::collection::vec(1e-3f64..10.0, 1..40), d in 1u32..60) {
        let d = d as f64;
        let p = rho.len() as i32;
        let ratio = wolsey_ratio(&rho, d).unwrap();
        let bound = 1.0 - (1.0 - 1.0 / d).powi(p);
        prop_assert!(ratio >= bound - 1e-12, "{} < {}", ratio, bound);
        prop_assert!(bound >= 1.0 - (-(p as f64) / d).exp() - 1e-12);
    }

    #[test]
    fn wolsey_ratio_with_signed_terms(rho in prop::collection::vec(-2.0f64..10.0, 1..20), d in 1u32..30) {
        let d = d as f64;
        if let Some(ratio) = wolsey_ratio(&rho, d) {
            let bound = 1.0 - (1.0 - 1.0 / d).powi(rho.len() as i32);
            prop_assert!(ratio >= bound - 1e-12);
        }
    }

    #[test]
    fn prefix_bound_and_relaxation_chain(kind in kind(), seed in 0u64..5000, mask in any::<u32>()) {
        let case = small_case(kind, seed);
        let inst = &case.instance;
        let n = inst.len();
        let mut selected: Vec<_> = (0..n).filter(|&i| mask >> i & 1 == 1).take(2).collect();
        while inst.universe().weight_of(&selected) >= inst.budget() {
            selected.pop();
        }
        let candidates: Vec<_> = (0..n).filter(|i| !selected.contains(i)).collect();
        let node = SearchNode::new(inst, selected.clone(), candidates.clone());
        let b = node_bounds(inst, &node, 1.0);
        let (best, _) = brute_force_restricted(inst, &selected, &candidates).unwrap();
        let tol = 1e-9 * best.max(1.0);

        prop_assert!(b.refined <= b.fractional + tol);
        prop_assert!(b.refined >= best - tol);
        prop_assert!(b.knapsack >= best - tol);
        prop_assert!(b.domination >= best - tol);
        prop_assert!(b.knapsack <= b.fractional + tol);

        let trace = greedy_add(inst, &node, GreedyMode::Eager);
        prop_assert_eq!(&trace, &greedy_add(inst, &node, GreedyMode::Lazy));
        let gap = refined_subset_bound(inst, &node, &trace) - b.value;
        for p in 1..=trace.prefix_consecutive {
            let (g, w) = trace.prefix(p);
            let rhs = g / (1.0 - (-w / node.remaining_budget).exp());
            prop_assert!(gap <= rhs + 1e-9 * rhs.max(1.0), "p={}: {} > {}", p, gap, rhs);
        }
    }
}
