use super::{BoxedAnchor, Coverage, ElementId, SubmodularOracle};
use crate::error::{Result, SkpError};

/// Partial dominating set: `f(S) = |∪_{v∈S} N[v]|` with `N[v] = N(v) ∪ {v}`.
///
/// Backed by a unit-valued [`Coverage`] over closed neighbourhoods.
#[derive(Debug, Clone, PartialEq)]
pub struct Domination {
    edges: Vec<(usize, usize)>,
    cover: Coverage,
}

impl Domination {
    /// Builds the oracle over vertices `0..n`. Self-loops and duplicate edges
    /// are dropped; the retained edge list is sorted with `u < v`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(SkpError::ElementOutOfRange {
                        element: x,
                        size: n,
                    });
                }
            }
            if u != v {
                normalized.push((u.min(v), u.max(v)));
            }
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut closed: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        for &(u, v) in &normalized {
            closed[u].push(v);
            closed[v].push(u);
        }
        let cover = Coverage::new(vec![1.0; n], closed)?;
        Ok(Domination {
            edges: normalized,
            cover,
        })
    }

    /// Normalized edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Closed neighbourhood `N[v]`, sorted.
    pub fn closed_neighbourhood(&self, v: usize) -> &[usize] {
        &self.cover.sets()[v]
    }
}

impl SubmodularOracle for Domination {
    fn ground_size(&self) -> usize {
        self.cover.ground_size()
    }
    fn value(&self, set: &[ElementId]) -> f64 {
        self.cover.value(set)
    }
    fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
        self.cover.anchor(base)
    }
    fn is_integral(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph() {
        let f = Domination::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(f.evaluate(&[1]).unwrap(), 3.0);
        assert_eq!(f.evaluate(&[0]).unwrap(), 2.0);
        assert_eq!(f.evaluate(&[]).unwrap(), 0.0);
    }

    #[test]
    fn isolated_vertex_dominates_itself() {
        let f = Domination::new(4, &[(0, 1)]).unwrap();
        assert_eq!(f.evaluate(&[3]).unwrap(), 1.0);
    }

    #[test]
    fn loops_and_duplicates_are_dropped() {
        let f = Domination::new(3, &[(0, 0), (1, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(f.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(f.closed_neighbourhood(1), &[0, 1, 2]);
        assert!(Domination::new(2, &[(0, 2)]).is_err());
    }
}
