use crate::oracle::ElementId;
use crate::problem::Instance;

/// A branch-and-bound node `T = (S_T, C_T, W_T)`.
///
/// `inherited_gains`, when present, is aligned with `candidates` and holds
/// marginal gains computed at an ancestor. By submodularity each entry is an
/// upper bound on the gain with respect to `selected`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchNode {
    pub selected: Vec<ElementId>,
    pub candidates: Vec<ElementId>,
    pub remaining_budget: f64,
    pub inherited_gains: Option<Vec<f64>>,
}

impl SearchNode {
    /// `(∅, U, W)`.
    pub fn root(instance: &Instance) -> Self {
        SearchNode {
            selected: Vec::new(),
            candidates: (0..instance.len()).collect(),
            remaining_budget: instance.budget(),
            inherited_gains: None,
        }
    }

    /// A node with `W_T = W - w(S_T)` and no gain cache.
    pub fn new(instance: &Instance, selected: Vec<ElementId>, candidates: Vec<ElementId>) -> Self {
        let used = instance.universe().weight_of(&selected);
        SearchNode {
            selected,
            candidates,
            remaining_budget: instance.budget() - used,
            inherited_gains: None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.candidates.is_empty()
    }
}
