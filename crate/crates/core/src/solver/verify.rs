use super::{brute_force, solve, BoundKind, Branching, SolveReport, SolveStatus, SolverConfig};
use crate::error::Result;
use crate::oracle::ElementId;
use crate::problem::Instance;

/// Brute force against a set of solver configurations.
#[derive(Debug, Clone)]
pub struct Verification {
    pub optimum: f64,
    pub solution: Vec<ElementId>,
    pub runs: Vec<(SolverConfig, SolveReport)>,
    integral: bool,
}

impl Verification {
    /// Whether an optimal-status run agrees with brute force: exactly for
    /// integral oracles, to 1e-9 relative otherwise.
    pub fn agrees(&self, report: &SolveReport) -> bool {
        if report.status != SolveStatus::Optimal {
            return true;
        }
        if self.integral {
            report.optimum == self.optimum
        } else {
            (report.optimum - self.optimum).abs() <= 1e-9 * self.optimum.abs().max(1.0)
        }
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &(SolverConfig, SolveReport)> {
        self.runs.iter().filter(|(_, r)| !self.agrees(r))
    }

    pub fn passed(&self) -> bool {
        self.disagreements().next().is_none()
    }
}

/// The eight bound × branching combinations with default toggles.
pub fn standard_configs(epsilon: f64) -> Vec<SolverConfig> {
    BoundKind::ALL
        .into_iter()
        .flat_map(|b| {
            Branching::ALL.map(|br| SolverConfig {
                epsilon,
                ..SolverConfig::new(b, br)
            })
        })
        .collect()
}

/// Runs brute force and every config in `configs` on `instance`.
pub fn verify(instance: &Instance, configs: &[SolverConfig]) -> Result<Verification> {
    let (optimum, solution) = brute_force(instance)?;
    let runs = configs
        .iter()
        .map(|c| Ok((c.clone(), solve(instance, c)?)))
        .collect::<Result<_>>()?;
    Ok(Verification {
        optimum,
        solution,
        runs,
        integral: instance.oracle().is_integral(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{Modular, SubmodularOracle};
    use std::sync::Arc;

    /// Not submodular: `{1, 2}` is worth far more than its singletons suggest.
    struct Broken;

    impl SubmodularOracle for Broken {
        fn ground_size(&self) -> usize {
            3
        }

        fn value(&self, set: &[ElementId]) -> f64 {
            let has = |e| set.contains(&e);
            let mut v = set.iter().map(|&e| [4.0, 1.0, 1.0][e]).sum();
            if has(1) && has(2) {
                v += 8.0;
            }
            v
        }
    }

    #[test]
    fn e1_all_agree() {
        let f = Modular::new(vec![3.0, 1.0, 5.0]).unwrap();
        let inst = Instance::new(Arc::new(f), vec![1.0, 1.0, 2.0], 2.0).unwrap();
        let v = verify(&inst, &standard_configs(1.0)).unwrap();
        assert_eq!(v.optimum, 5.0);
        assert_eq!(v.runs.len(), 8);
        assert!(v.passed());
    }

    #[test]
    fn broken_oracle_surfaces() {
        let inst = Instance::new(Arc::new(Broken), vec![1.0; 3], 2.0).unwrap();
        let v = verify(&inst, &standard_configs(1.0)).unwrap();
        assert_eq!(v.optimum, 10.0);
        assert!(
            !v.passed(),
            "{:?}",
            v.runs.iter().map(|r| r.1.optimum).collect::<Vec<_>>()
        );
    }
}
