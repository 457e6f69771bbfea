use std::fmt;
use std::sync::Arc;

use crate::error::{Result, SkpError};
use crate::instances::InstanceFile;
use crate::oracle::{ElementId, SubmodularOracle};

/// Element weights and the knapsack budget.
#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    weights: Vec<f64>,
    budget: f64,
}

impl Universe {
    pub fn new(weights: Vec<f64>, budget: f64) -> Result<Self> {
        for (element, &weight) in weights.iter().enumerate() {
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(SkpError::InvalidWeight { element, weight });
            }
        }
        check_budget(budget)?;
        Ok(Universe { weights, budget })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, element: ElementId) -> f64 {
        self.weights[element]
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    /// `w(S)`, summed in the given order.
    pub fn weight_of(&self, set: &[ElementId]) -> f64 {
        set.iter().map(|&e| self.weights[e]).sum()
    }
}

fn check_budget(budget: f64) -> Result<()> {
    if budget > 0.0 && budget.is_finite() {
        Ok(())
    } else {
        Err(SkpError::InvalidBudget(budget))
    }
}

/// A submodular knapsack instance: objective oracle, weights and budget.
#[derive(Clone)]
pub struct Instance {
    universe: Universe,
    oracle: Arc<dyn SubmodularOracle>,
    source: Option<InstanceFile>,
}

impl Instance {
    pub fn new(oracle: Arc<dyn SubmodularOracle>, weights: Vec<f64>, budget: f64) -> Result<Self> {
        let n = oracle.ground_size();
        if weights.len() != n {
            return Err(SkpError::WeightCount {
                expected: n,
                got: weights.len(),
            });
        }
        Ok(Instance {
            universe: Universe::new(weights, budget)?,
            oracle,
            source: None,
        })
    }

    pub(crate) fn with_source(mut self, source: InstanceFile) -> Self {
        self.source = Some(source);
        self
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn oracle(&self) -> &dyn SubmodularOracle {
        self.oracle.as_ref()
    }

    pub fn shared_oracle(&self) -> Arc<dyn SubmodularOracle> {
        Arc::clone(&self.oracle)
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn budget(&self) -> f64 {
        self.universe.budget
    }

    /// The file this instance was loaded or generated from, if any.
    pub fn source(&self) -> Option<&InstanceFile> {
        self.source.as_ref()
    }

    /// Same objective and weights under a different budget.
    pub fn with_budget(&self, budget: f64) -> Result<Self> {
        check_budget(budget)?;
        let mut next = self.clone();
        next.universe.budget = budget;
        if let Some(source) = next.source.as_mut() {
            source.budget = budget;
        }
        Ok(next)
    }

    /// Whether `set` fits the budget.
    pub fn is_feasible(&self, set: &[ElementId]) -> bool {
        self.universe.weight_of(set) <= self.universe.budget
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("n", &self.len())
            .field("budget", &self.budget())
            .field("kind", &self.source.as_ref().map(|s| s.kind()))
            .finish()
    }
}
