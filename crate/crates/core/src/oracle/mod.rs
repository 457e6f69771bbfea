//! Set-function oracles.
//!
//! Every objective implements [`SubmodularOracle`]. Besides plain evaluation an
//! oracle hands out [`Anchor`]s: incremental evaluators pinned to a base set `B`
//! that answer `f(e | B)` queries cheaply and can grow `B` one element at a time.
//! The solver works almost exclusively through anchors.

mod coverage;
mod domination;
mod influence;
mod location;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use coverage::Coverage;
pub use domination::Domination;
pub use influence::{Influence, InfluenceEdge};
pub use location::FacilityLocation;

use crate::error::{Result, SkpError};

/// Dense element index in `0..n`.
pub type ElementId = usize;

/// Boxed incremental evaluator borrowed from an oracle.
pub type BoxedAnchor<'a> = Box<dyn Anchor<'a> + 'a>;

/// Evaluation contract for a normalized, monotone, submodular set function.
///
/// Implementors provide [`value`](SubmodularOracle::value) and should override
/// [`anchor`](SubmodularOracle::anchor) with a specialised incremental state;
/// the default anchor falls back to two evaluations per gain query.
pub trait SubmodularOracle: Send + Sync {
    /// Number of elements in the universe.
    fn ground_size(&self) -> usize;

    /// `f(S)`. Ids must be in range; duplicates are ignored.
    fn value(&self, set: &[ElementId]) -> f64;

    /// Incremental evaluator anchored at `base`.
    fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
        Box::new(GenericAnchor::new(self, base))
    }

    /// True when every value this oracle can return is an integer, which lets
    /// the solver compare bounds without tolerance.
    fn is_integral(&self) -> bool {
        false
    }

    /// Checked `f(S)`.
    fn evaluate(&self, set: &[ElementId]) -> Result<f64> {
        check_ids(self.ground_size(), set.iter().copied())?;
        Ok(self.value(set))
    }

    /// Checked `f(e | S) = f(S ∪ {e}) - f(S)`, clamped at zero.
    fn marginal_gain(&self, element: ElementId, set: &[ElementId]) -> Result<f64> {
        let n = self.ground_size();
        check_ids(n, set.iter().copied().chain(std::iter::once(element)))?;
        if set.contains(&element) {
            return Ok(0.0);
        }
        let mut extended = set.to_vec();
        extended.push(element);
        Ok(clamp_gain(self.value(&extended) - self.value(set)))
    }
}

/// Incremental evaluator for `f(· | B)` over a growing base set `B`.
pub trait Anchor<'a> {
    /// `f(B)`.
    fn value(&self) -> f64;

    /// `f(e | B)`; zero when `e ∈ B`.
    fn gain(&self, element: ElementId) -> f64;

    /// `B ← B ∪ {e}`.
    fn insert(&mut self, element: ElementId);

    /// Independent copy of the current state.
    fn fork(&self) -> BoxedAnchor<'a>;
}

pub(crate) fn check_ids(n: usize, ids: impl IntoIterator<Item = ElementId>) -> Result<()> {
    for e in ids {
        if e >= n {
            return Err(SkpError::ElementOutOfRange {
                element: e,
                size: n,
            });
        }
    }
    Ok(())
}

/// Floating-point noise can push a difference of two evaluations slightly
/// below zero; gains are never negative for a monotone function.
#[inline]
pub(crate) fn clamp_gain(g: f64) -> f64 {
    if g > 0.0 {
        g
    } else {
        0.0
    }
}

/// Fallback anchor: one cached `f(B)` plus one evaluation per gain query.
pub struct GenericAnchor<'a, O: ?Sized> {
    oracle: &'a O,
    base: Vec<ElementId>,
    members: Vec<bool>,
    value: f64,
}

impl<'a, O: SubmodularOracle + ?Sized> GenericAnchor<'a, O> {
    pub fn new(oracle: &'a O, base: &[ElementId]) -> Self {
        let mut members = vec![false; oracle.ground_size()];
        let mut set = Vec::with_capacity(base.len());
        for &e in base {
            if !members[e] {
                members[e] = true;
                set.push(e);
            }
        }
        let value = oracle.value(&set);
        GenericAnchor {
            oracle,
            base: set,
            members,
            value,
        }
    }
}

impl<'a, O: SubmodularOracle + ?Sized> Anchor<'a> for GenericAnchor<'a, O> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, element: ElementId) -> f64 {
        if self.members[element] {
            return 0.0;
        }
        let mut extended = self.base.clone();
        extended.push(element);
        clamp_gain(self.oracle.value(&extended) - self.value)
    }

    fn insert(&mut self, element: ElementId) {
        if !self.members[element] {
            self.members[element] = true;
            self.base.push(element);
            self.value = self.oracle.value(&self.base);
        }
    }

    fn fork(&self) -> BoxedAnchor<'a> {
        Box::new(GenericAnchor {
            oracle: self.oracle,
            base: self.base.clone(),
            members: self.members.clone(),
            value: self.value,
        })
    }
}

macro_rules! forward_oracle {
    ($($ty:ty),*) => {$(
        impl<O: SubmodularOracle + ?Sized> SubmodularOracle for $ty {
            fn ground_size(&self) -> usize {
                (**self).ground_size()
            }
            fn value(&self, set: &[ElementId]) -> f64 {
                (**self).value(set)
            }
            fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
                (**self).anchor(base)
            }
            fn is_integral(&self) -> bool {
                (**self).is_integral()
            }
        }
    )*};
}

forward_oracle!(&O, Box<O>, Arc<O>);

/// Additive function `f(S) = Σ_{e∈S} v_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct Modular {
    values: Vec<f64>,
}

impl Modular {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (element, &value) in values.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(SkpError::InvalidValue {
                    element,
                    value,
                    reason: "modular values must be finite and non-negative",
                });
            }
        }
        Ok(Modular { values })
    }
}

impl SubmodularOracle for Modular {
    fn ground_size(&self) -> usize {
        self.values.len()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        let mut seen = vec![false; self.values.len()];
        for &e in set {
            seen[e] = true;
        }
        seen.iter()
            .zip(&self.values)
            .filter(|(s, _)| **s)
            .map(|(_, v)| v)
            .sum()
    }

    fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
        let mut anchor = ModularAnchor {
            values: &self.values,
            members: vec![false; self.values.len()],
            value: 0.0,
        };
        for &e in base {
            anchor.insert(e);
        }
        Box::new(anchor)
    }

    fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.fract() == 0.0)
    }
}

#[derive(Clone)]
struct ModularAnchor<'a> {
    values: &'a [f64],
    members: Vec<bool>,
    value: f64,
}

impl<'a> Anchor<'a> for ModularAnchor<'a> {
    fn value(&self) -> f64 {
        self.value
    }
    fn gain(&self, element: ElementId) -> f64 {
        if self.members[element] {
            0.0
        } else {
            self.values[element]
        }
    }
    fn insert(&mut self, element: ElementId) {
        if !self.members[element] {
            self.members[element] = true;
            self.value += self.values[element];
        }
    }
    fn fork(&self) -> BoxedAnchor<'a> {
        Box::new(self.clone())
    }
}

/// Wraps an oracle with `f(∅) ≠ 0` so that it reports `f(S) - f(∅)`.
pub struct Normalized<O> {
    inner: O,
    offset: f64,
}

impl<O: SubmodularOracle> Normalized<O> {
    pub fn new(inner: O) -> Self {
        let offset = inner.value(&[]);
        Normalized { inner, offset }
    }

    /// The subtracted `f(∅)`.
    pub fn offset(&self) -> f64 {
        self.offset
    }
}

impl<O: SubmodularOracle> SubmodularOracle for Normalized<O> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn value(&self, set: &[ElementId]) -> f64 {
        self.inner.value(set) - self.offset
    }
    fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
        Box::new(OffsetAnchor {
            inner: self.inner.anchor(base),
            offset: self.offset,
        })
    }
    fn is_integral(&self) -> bool {
        self.inner.is_integral() && self.offset.fract() == 0.0
    }
}

struct OffsetAnchor<'a> {
    inner: BoxedAnchor<'a>,
    offset: f64,
}

impl<'a> Anchor<'a> for OffsetAnchor<'a> {
    fn value(&self) -> f64 {
        self.inner.value() - self.offset
    }
    fn gain(&self, element: ElementId) -> f64 {
        self.inner.gain(element)
    }
    fn insert(&mut self, element: ElementId) {
        self.inner.insert(element)
    }
    fn fork(&self) -> BoxedAnchor<'a> {
        Box::new(OffsetAnchor {
            inner: self.inner.fork(),
            offset: self.offset,
        })
    }
}

/// Counts oracle work without changing any returned value.
///
/// One call is recorded per `value`, per anchor construction (which evaluates
/// the base set) and per anchored gain query. Growing an anchor is not counted.
pub struct CountingOracle<O> {
    inner: O,
    calls: AtomicU64,
}

impl<O: SubmodularOracle> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: SubmodularOracle> SubmodularOracle for CountingOracle<O> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn value(&self, set: &[ElementId]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.value(set)
    }
    fn anchor<'a>(&'a self, base: &[ElementId]) -> BoxedAnchor<'a> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        Box::new(CountingAnchor {
            inner: self.inner.anchor(base),
            calls: &self.calls,
        })
    }
    fn is_integral(&self) -> bool {
        self.inner.is_integral()
    }
}

struct CountingAnchor<'a> {
    inner: BoxedAnchor<'a>,
    calls: &'a AtomicU64,
}

impl<'a> Anchor<'a> for CountingAnchor<'a> {
    fn value(&self) -> f64 {
        self.inner.value()
    }
    fn gain(&self, element: ElementId) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.gain(element)
    }
    fn insert(&mut self, element: ElementId) {
        self.inner.insert(element)
    }
    fn fork(&self) -> BoxedAnchor<'a> {
        Box::new(CountingAnchor {
            inner: self.inner.fork(),
            calls: self.calls,
        })
    }
}
