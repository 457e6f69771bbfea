use super::{clamp_gain, Anchor, BoxedAnchor, ElementId, SubmodularOracle};
use crate::error::{Result, SkpError};

/// Weighted coverage: element `j` is the item set `C_j` and
/// `f(S) = Σ_{i ∈ ∪_{j∈S} C_j} v_i`.
///
/// Item ids are zero-based here; the text format shifts them by one.
#[derive(Debug, Clone, PartialEq)]
pub struct Coverage {
    item_values: Vec<f64>,
    sets: Vec<Vec<usize>>,
    integral: bool,
}

impl Coverage {
    pub fn new(item_values: Vec<f64>, sets: Vec<Vec<usize>>) -> Result<Self> {
        for (item, &value) in item_values.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(SkpError::InvalidValue {
                    element: item,
                    value,
                    reason: "item values must be finite and non-negative",
                });
            }
        }
        let m = item_values.len();
        let mut normalized = Vec::with_capacity(sets.len());
        for (set, mut items) in sets.into_iter().enumerate() {
            if let Some(&item) = items.iter().find(|&&i| i >= m) {
                return Err(SkpError::ItemOutOfRange {
                    set,
                    item,
                    items: m,
                });
            }
            items.sort_unstable();
            items.dedup();
            normalized.push(items);
        }
        let integral = item_values.iter().all(|v| v.fract() == 0.0);
        Ok(Coverage {
            item_values,
            sets: normalized,
            integral,
        })
    }

    pub fn item_count(&self) -> usize {
        self.item_values.len()
    }

    pub fn item_values(&self) -> &[f64] {
        &self.item_values
    }

    /// Sorted, deduplicated items of each set.
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }
}

impl SubmodularOracle for Coverage {
    fn ground_size(&self) -> usize {
        self.sets.len()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        let mut covered = vec![false; self.item_values.len()];
        for &j in set {
            for &i in &self.sets[j] {
                covered[i] = true;
            }
        }
        // Summed in item order so the result does not depend on how S was built.
        covered
            .iter()
            .zip(&self.item_values)
            .filter(|(c, _)| **c)
            .map(|(_, v)| v)
            .sum()
    }

    fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
        let mut anchor = CoverageAnchor {
            oracle: self,
            counts: vec![0; self.item_values.len()],
            members: vec![false; self.sets.len()],
            value: 0.0,
        };
        for &e in base {
            anchor.insert(e);
        }
        Box::new(anchor)
    }

    fn is_integral(&self) -> bool {
        self.integral
    }
}

#[derive(Clone)]
struct CoverageAnchor<'a> {
    oracle: &'a Coverage,
    counts: Vec<u32>,
    members: Vec<bool>,
    value: f64,
}

impl<'a> Anchor<'a> for CoverageAnchor<'a> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, element: ElementId) -> f64 {
        if self.members[element] {
            return 0.0;
        }
        let g: f64 = self.oracle.sets[element]
            .iter()
            .filter(|&&i| self.counts[i] == 0)
            .map(|&i| self.oracle.item_values[i])
            .sum();
        clamp_gain(g)
    }

    fn insert(&mut self, element: ElementId) {
        if self.members[element] {
            return;
        }
        self.value += self.gain(element);
        self.members[element] = true;
        for &i in &self.oracle.sets[element] {
            self.counts[i] += 1;
        }
    }

    fn fork(&self) -> BoxedAnchor<'a> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// C1={1,2}, C2={2,3}, C3={1,3} over unit-valued items (zero-based here).
    fn triangle() -> Coverage {
        Coverage::new(vec![1.0; 3], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn triangle_values() {
        let f = triangle();
        assert_eq!(f.evaluate(&[0, 1]).unwrap(), 3.0);
        assert_eq!(f.evaluate(&[0]).unwrap(), 2.0);
        assert_eq!(f.evaluate(&[]).unwrap(), 0.0);
        assert_eq!(f.evaluate(&[0, 1, 2]).unwrap(), 3.0);
        assert_eq!(f.marginal_gain(1, &[0]).unwrap(), 1.0);
        assert!(f.is_integral());
    }

    #[test]
    fn anchor_tracks_coverage() {
        let f = triangle();
        let mut a = f.anchor(&[]);
        assert_eq!(a.gain(1), 2.0);
        a.insert(0);
        assert_eq!(a.value(), 2.0);
        assert_eq!(a.gain(1), 1.0);
        assert_eq!(a.gain(0), 0.0);
        a.insert(1);
        assert_eq!(a.value(), 3.0);
        assert_eq!(a.gain(2), 0.0);
    }

    #[test]
    fn rejects_bad_items() {
        assert_eq!(
            Coverage::new(vec![1.0, 1.0], vec![vec![0, 2]]),
            Err(SkpError::ItemOutOfRange {
                set: 0,
                item: 2,
                items: 2
            })
        );
        assert!(Coverage::new(vec![-1.0], vec![vec![0]]).is_err());
    }
}
