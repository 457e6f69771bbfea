use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skp_core::instances::{generate_random_instance, GeneratorParams, ProblemKind, WeightScheme};
use skp_core::{solve, BoundKind, Branching, SolverConfig};

fn configs(c: &mut Criterion) {
    let cases = [
        (
            "cov",
            GeneratorParams::new(ProblemKind::Cov, 40, 80, 0.1, WeightScheme::Normal, 5.0),
        ),
        (
            "loc",
            GeneratorParams::new(ProblemKind::Loc, 30, 30, 0.0, WeightScheme::Unit, 4.0),
        ),
        (
            "dom",
            GeneratorParams::new(ProblemKind::Dom, 100, 0, 0.03, WeightScheme::Uniform, 5.0),
        ),
    ];
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (name, params) in cases {
        let instance = generate_random_instance(&params, 0).build().unwrap();
        for bound in [BoundKind::FractionalKnapsack, BoundKind::RefinedSubset] {
            for branching in Branching::ALL {
                let config = SolverConfig::new(bound, branching);
                group.bench_with_input(
                    BenchmarkId::new(name, config.label()),
                    &config,
                    |b, config| b.iter(|| solve(&instance, config).unwrap()),
                );
            }
        }
    }
    group.finish();
}

criterion_group!(benches, configs);
criterion_main!(benches);
