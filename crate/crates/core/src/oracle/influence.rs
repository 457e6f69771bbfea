use super::{clamp_gain, Anchor, BoxedAnchor, ElementId, SubmodularOracle};
use crate::error::{Result, SkpError};

/// One bipartite edge: `source` activates `target` with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfluenceEdge {
    pub source: usize,
    pub target: usize,
    pub p: f64,
}

/// Bipartite influence: `f(S) = Σ_i (1 - Π_{j∈S} (1 - p_ij))`.
///
/// Missing edges have `p = 0`. Survival products are accumulated in ascending
/// source order, so `value` is independent of the order of `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Influence {
    sources: usize,
    targets: usize,
    /// Out-edges per source as `(target, p)`, sorted by target.
    out: Vec<Vec<(usize, f64)>>,
    /// In-edges per target as `(source, p)`, sorted by source.
    incoming: Vec<Vec<(usize, f64)>>,
}

impl Influence {
    pub fn new(sources: usize, targets: usize, edges: &[InfluenceEdge]) -> Result<Self> {
        let mut out = vec![Vec::new(); sources];
        let mut incoming = vec![Vec::new(); targets];
        for edge in edges {
            if edge.source >= sources {
                return Err(SkpError::ElementOutOfRange {
                    element: edge.source,
                    size: sources,
                });
            }
            if edge.target >= targets {
                return Err(SkpError::ItemOutOfRange {
                    set: edge.source,
                    item: edge.target,
                    items: targets,
                });
            }
            if !(0.0..=1.0).contains(&edge.p) {
                return Err(SkpError::InvalidProbability {
                    from: edge.source,
                    to: edge.target,
                    p: edge.p,
                });
            }
            out[edge.source].push((edge.target, edge.p));
            incoming[edge.target].push((edge.source, edge.p));
        }
        for (source, list) in out.iter_mut().enumerate() {
            list.sort_by_key(|&(t, _)| t);
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(SkpError::DuplicateEdge {
                    from: source,
                    to: w[0].0,
                });
            }
        }
        for list in &mut incoming {
            list.sort_by_key(|&(s, _)| s);
        }
        Ok(Influence {
            sources,
            targets,
            out,
            incoming,
        })
    }

    pub fn target_count(&self) -> usize {
        self.targets
    }

    /// All edges ordered by `(source, target)`.
    pub fn edges(&self) -> Vec<InfluenceEdge> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(source, list)| {
                list.iter()
                    .map(move |&(target, p)| InfluenceEdge { source, target, p })
            })
            .collect()
    }
}

impl SubmodularOracle for Influence {
    fn ground_size(&self) -> usize {
        self.sources
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        let mut chosen = vec![false; self.sources];
        for &j in set {
            chosen[j] = true;
        }
        self.incoming
            .iter()
            .map(|edges| {
                let survive: f64 = edges
                    .iter()
                    .filter(|(s, _)| chosen[*s])
                    .map(|(_, p)| 1.0 - p)
                    .product();
                1.0 - survive
            })
            .sum()
    }

    fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
        let mut sorted = base.to_vec();
        sorted.sort_unstable();
        let mut anchor = InfluenceAnchor {
            oracle: self,
            survive: vec![1.0; self.targets],
            members: vec![false; self.sources],
            value: 0.0,
        };
        for e in sorted {
            anchor.insert(e);
        }
        Box::new(anchor)
    }
}

#[derive(Clone)]
struct InfluenceAnchor<'a> {
    oracle: &'a Influence,
    survive: Vec<f64>,
    members: Vec<bool>,
    value: f64,
}

impl<'a> Anchor<'a> for InfluenceAnchor<'a> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, element: ElementId) -> f64 {
        if self.members[element] {
            return 0.0;
        }
        let g: f64 = self.oracle.out[element]
            .iter()
            .map(|&(t, p)| self.survive[t] * p)
            .sum();
        clamp_gain(g)
    }

    fn insert(&mut self, element: ElementId) {
        if self.members[element] {
            return;
        }
        self.value += self.gain(element);
        self.members[element] = true;
        for &(t, p) in &self.oracle.out[element] {
            self.survive[t] *= 1.0 - p;
        }
    }

    fn fork(&self) -> BoxedAnchor<'a> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(source: usize, target: usize, p: f64) -> InfluenceEdge {
        InfluenceEdge { source, target, p }
    }

    #[test]
    fn two_half_sources() {
        let f = Influence::new(2, 1, &[edge(0, 0, 0.5), edge(1, 0, 0.5)]).unwrap();
        assert_eq!(f.evaluate(&[0, 1]).unwrap(), 0.75);
        assert_eq!(f.evaluate(&[]).unwrap(), 0.0);
        let a = f.anchor(&[0]);
        assert_eq!(a.value(), 0.5);
        assert_eq!(a.gain(1), 0.25);
        assert_eq!(a.gain(0), 0.0);
    }

    #[test]
    fn certain_activation_absorbs() {
        let f = Influence::new(3, 1, &[edge(0, 0, 1.0), edge(1, 0, 0.3), edge(2, 0, 0.9)]).unwrap();
        assert_eq!(f.evaluate(&[0, 1, 2]).unwrap(), 1.0);
        assert_eq!(f.anchor(&[0]).gain(2), 0.0);
    }

    #[test]
    fn rejects_bad_probability_and_duplicates() {
        assert_eq!(
            Influence::new(1, 1, &[edge(0, 0, 1.5)]),
            Err(SkpError::InvalidProbability {
                from: 0,
                to: 0,
                p: 1.5
            })
        );
        assert!(Influence::new(1, 1, &[edge(0, 0, -0.1)]).is_err());
        assert!(Influence::new(1, 1, &[edge(0, 0, 0.1), edge(0, 0, 0.2)]).is_err());
        assert!(Influence::new(1, 1, &[edge(1, 0, 0.1)]).is_err());
    }
}
