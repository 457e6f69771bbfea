#![allow(dead_code)]

use skp_core::instances::{
    generate_random_instance, GeneratorParams, InstanceFile, ProblemKind, WeightScheme,
};
use skp_core::{BoundKind, Branching, Instance, SolverConfig};

pub struct Case {
    pub seed: u64,
    pub file: InstanceFile,
    pub instance: Instance,
}

/// Small random instance of `kind`; size, budget and scheme derive from `seed`.
pub fn small_case(kind: ProblemKind, seed: u64) -> Case {
    let n = 6 + (seed as usize * 7) % 13;
    let scheme = WeightScheme::ALL[seed as usize % 3];
    let budget = 2.0 + (seed % 4) as f64;
    let params = match kind {
        ProblemKind::Cov => GeneratorParams::new(kind, n, n + 4, 0.25, scheme, budget),
        ProblemKind::Inf => GeneratorParams::new(kind, n, n + 2, 0.3, scheme, budget),
        ProblemKind::Loc => GeneratorParams::new(kind, n, n / 2 + 2, 0.0, scheme, budget),
        ProblemKind::Dom => GeneratorParams::new(kind, n, 0, 0.25, scheme, budget),
    };
    let file = generate_random_instance(&params, seed);
    let instance = file.build().expect("generated instance is valid");
    Case {
        seed,
        file,
        instance,
    }
}

/// 50 instances per family with `|U|` in 6..=18 and every weight scheme.
pub fn exactness_suite() -> Vec<Case> {
    ProblemKind::ALL
        .into_iter()
        .flat_map(|kind| (0..50).map(move |seed| small_case(kind, seed)))
        .collect()
}

/// The eight bound × branching combinations with default toggles.
pub fn all_configs() -> Vec<SolverConfig> {
    BoundKind::ALL
        .into_iter()
        .flat_map(|b| [Branching::Basic, Branching::Dual].map(|br| SolverConfig::new(b, br)))
        .collect()
}

/// Agreement test: exact for integral oracles, 1e-9 relative otherwise.
pub fn same_value(instance: &Instance, a: f64, b: f64) -> bool {
    if instance.oracle().is_integral() {
        a == b
    } else {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
    }
}

/// Exact 0/1 knapsack optimum by depth-first enumeration of feasible subsets.
pub fn knapsack_exact(gains: &[f64], weights: &[f64], budget: f64) -> f64 {
    fn walk(i: usize, gains: &[f64], weights: &[f64], room: f64, acc: f64, best: &mut f64) {
        if i == gains.len() {
            *best = best.max(acc);
            return;
        }
        if weights[i] <= room {
            walk(
                i + 1,
                gains,
                weights,
                room - weights[i],
                acc + gains[i],
                best,
            );
        }
        walk(i + 1, gains, weights, room, acc, best);
    }
    let mut best = 0.0;
    walk(0, gains, weights, budget, 0.0, &mut best);
    best
}
