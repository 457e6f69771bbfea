use super::{InstanceFile, ProblemData, ProblemKind, SplitMix64, WeightScheme, WeightSpec};
use crate::oracle::InfluenceEdge;

/// Weight vector for `scheme`, a pure function of `(n, scheme, seed)`.
pub fn generate_weights(n: usize, scheme: WeightScheme, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    (0..n)
        .map(|_| match scheme {
            WeightScheme::Normal => (1.0 + 0.2 * rng.normal()).clamp(0.1, 1.9),
            WeightScheme::Uniform => rng.uniform(0.4, 1.6),
            WeightScheme::Unit => 1.0,
        })
        .collect()
}

/// Size parameters for [`generate_random_instance`].
///
/// `m` is the item count (COV), target count (INF) or customer count (LOC)
/// and is ignored for DOM. `density` is the set membership probability (COV),
/// the edge probability (INF, DOM) and unused for LOC.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub kind: ProblemKind,
    pub n: usize,
    pub m: usize,
    pub density: f64,
    pub scheme: WeightScheme,
    pub budget: f64,
}

impl GeneratorParams {
    pub fn new(
        kind: ProblemKind,
        n: usize,
        m: usize,
        density: f64,
        scheme: WeightScheme,
        budget: f64,
    ) -> Self {
        GeneratorParams {
            kind,
            n,
            m,
            density,
            scheme,
            budget,
        }
    }
}

/// Random instance file. Structure and weights use independent streams
/// (`seed` and `seed ^ 0x5EED`), and the weights are stored as a scheme
/// directive so the file stays compact.
pub fn generate_random_instance(params: &GeneratorParams, seed: u64) -> InstanceFile {
    let mut rng = SplitMix64::new(seed);
    let GeneratorParams { n, m, density, .. } = *params;
    let data = match params.kind {
        ProblemKind::Cov => {
            let item_values = (0..m).map(|_| (1 + rng.below(10)) as f64).collect();
            let sets = (0..n)
                .map(|_| {
                    let mut set: Vec<usize> = (0..m).filter(|_| rng.chance(density)).collect();
                    if set.is_empty() && m > 0 {
                        set.push(rng.below(m as u64) as usize);
                    }
                    set
                })
                .collect();
            ProblemData::Cov { item_values, sets }
        }
        ProblemKind::Inf => {
            let mut edges = Vec::new();
            for source in 0..n {
                for target in 0..m {
                    if rng.chance(density) {
                        edges.push(InfluenceEdge {
                            source,
                            target,
                            p: rng.unit(),
                        });
                    }
                }
            }
            ProblemData::Inf {
                sources: n,
                targets: m,
                edges,
            }
        }
        ProblemKind::Loc => {
            let profits = (0..m)
                .map(|_| (0..n).map(|_| rng.below(100) as f64).collect())
                .collect();
            ProblemData::Loc {
                facilities: n,
                profits,
            }
        }
        ProblemKind::Dom => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.chance(density) {
                        edges.push((u, v));
                    }
                }
            }
            ProblemData::Dom { vertices: n, edges }
        }
    };
    InstanceFile {
        data,
        weights: WeightSpec::Scheme {
            scheme: params.scheme,
            seed: seed ^ 0x5EED,
        },
        budget: params.budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_weights_are_one() {
        assert_eq!(generate_weights(5, WeightScheme::Unit, 42), vec![1.0; 5]);
    }

    #[test]
    fn normal_weights_clamped() {
        let w = generate_weights(1_000_000, WeightScheme::Normal, 0);
        assert!(w.iter().all(|&x| (0.1..=1.9).contains(&x)));
        let mean = w.iter().sum::<f64>() / w.len() as f64;
        assert!((mean - 1.0).abs() < 0.002);
    }

    #[test]
    fn uniform_weights_in_range() {
        let w = generate_weights(10_000, WeightScheme::Uniform, 3);
        assert!(w.iter().all(|&x| (0.4..1.6).contains(&x)));
    }

    #[test]
    fn weights_deterministic() {
        for scheme in WeightScheme::ALL {
            assert_eq!(
                generate_weights(50, scheme, 9),
                generate_weights(50, scheme, 9)
            );
        }
        assert_ne!(
            generate_weights(50, WeightScheme::Uniform, 9),
            generate_weights(50, WeightScheme::Uniform, 10)
        );
    }

    #[test]
    fn cov_deterministic() {
        let p = GeneratorParams::new(ProblemKind::Cov, 10, 15, 0.3, WeightScheme::Normal, 3.0);
        let a = generate_random_instance(&p, 7);
        assert_eq!(a, generate_random_instance(&p, 7));
        assert_eq!(a.to_text(), generate_random_instance(&p, 7).to_text());
        a.build().unwrap();
    }

    #[test]
    fn dom_is_simple() {
        let p = GeneratorParams::new(ProblemKind::Dom, 12, 0, 0.3, WeightScheme::Unit, 3.0);
        let file = generate_random_instance(&p, 1);
        let ProblemData::Dom { edges, .. } = &file.data else {
            unreachable!()
        };
        assert!(edges.iter().all(|(u, v)| u < v));
        let mut sorted = edges.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), edges.len());
        file.build().unwrap();
    }

    #[test]
    fn inf_probabilities_valid() {
        let p = GeneratorParams::new(ProblemKind::Inf, 8, 10, 0.4, WeightScheme::Uniform, 2.0);
        let file = generate_random_instance(&p, 3);
        let ProblemData::Inf { edges, .. } = &file.data else {
            unreachable!()
        };
        assert!(!edges.is_empty());
        assert!(edges.iter().all(|e| (0.0..=1.0).contains(&e.p)));
        file.build().unwrap();
    }

    #[test]
    fn loc_round_trips() {
        let p = GeneratorParams::new(ProblemKind::Loc, 6, 4, 0.0, WeightScheme::Unit, 2.0);
        let file = generate_random_instance(&p, 11);
        assert_eq!(
            super::super::InstanceFile::parse(&file.to_text()).unwrap(),
            file
        );
    }
}
