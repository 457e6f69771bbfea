use std::cmp::Ordering;

use crate::oracle::ElementId;

/// Heap key ordering candidates by unit gain, highest first, ties to the
/// lowest element id.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ranked {
    pub unit: f64,
    pub element: ElementId,
    pub pos: usize,
}

impl Ranked {
    pub fn new(gain: f64, weight: f64, element: ElementId, pos: usize) -> Self {
        Ranked {
            unit: gain / weight,
            element,
            pos,
        }
    }
}

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked {}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.unit
            .total_cmp(&other.unit)
            .then_with(|| other.element.cmp(&self.element))
    }
}

/// Descending unit gain, ascending id; the order every sort in the crate uses.
pub(crate) fn unit_order(a: (f64, f64, ElementId), b: (f64, f64, ElementId)) -> Ordering {
    let (ga, wa, ea) = a;
    let (gb, wb, eb) = b;
    (gb / wb).total_cmp(&(ga / wa)).then_with(|| ea.cmp(&eb))
}
