use crate::error::{Result, SkpError};
use crate::oracle::ElementId;
use crate::problem::Instance;

/// Largest universe [`brute_force`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 25;

/// Exact optimum by enumerating every feasible subset.
///
/// Subsets are built depth-first with inclusion tried first and every
/// feasible one is evaluated through [`SubmodularOracle::value`]; the first
/// subset reaching the maximum wins ties.
///
/// [`SubmodularOracle::value`]: crate::oracle::SubmodularOracle::value
pub fn brute_force(instance: &Instance) -> Result<(f64, Vec<ElementId>)> {
    brute_force_restricted(instance, &[], &(0..instance.len()).collect::<Vec<_>>())
}

/// Exact optimum over `fixed ∪ X` for `X ⊆ free`.
pub fn brute_force_restricted(
    instance: &Instance,
    fixed: &[ElementId],
    free: &[ElementId],
) -> Result<(f64, Vec<ElementId>)> {
    if free.len() > BRUTE_FORCE_LIMIT {
        return Err(SkpError::TooLarge {
            size: free.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let weights = instance.universe().weights();
    let used: f64 = fixed.iter().map(|&e| weights[e]).sum();
    let mut search = Enumeration {
        instance,
        free,
        weights,
        budget: instance.budget(),
        current: fixed.to_vec(),
        best_value: f64::NEG_INFINITY,
        best: Vec::new(),
    };
    if used <= search.budget {
        search.walk(0, used);
    }
    let mut best = search.best;
    best.sort_unstable();
    Ok((search.best_value.max(0.0), best))
}

struct Enumeration<'a> {
    instance: &'a Instance,
    free: &'a [ElementId],
    weights: &'a [f64],
    budget: f64,
    current: Vec<ElementId>,
    best_value: f64,
    best: Vec<ElementId>,
}

impl Enumeration<'_> {
    fn walk(&mut self, index: usize, used: f64) {
        if index == self.free.len() {
            let value = self.instance.oracle().value(&self.current);
            if value > self.best_value {
                self.best_value = value;
                self.best = self.current.clone();
            }
            return;
        }
        let e = self.free[index];
        let with = used + self.weights[e];
        if with <= self.budget {
            self.current.push(e);
            self.walk(index + 1, with);
            self.current.pop();
        }
        self.walk(index + 1, used);
    }
}
