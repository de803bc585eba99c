//! Poset-indexed diagrams of posets and their Grothendieck total poset.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{is_monotone, Poset};
use crate::id::Id;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("expected {expected} fibers, got {found}")]
    FiberCount { expected: usize, found: usize },
    #[error("transition {from} -> {to} is not between comparable base elements")]
    NotComparable { from: Id, to: Id },
    #[error("missing transition for base cover {from} -> {to}")]
    MissingTransition { from: Id, to: Id },
    #[error("transition {from} -> {to} has {found} entries, fiber has {expected}")]
    TransitionLength {
        from: Id,
        to: Id,
        expected: usize,
        found: usize,
    },
    #[error("transition {from} -> {to} sends an element outside the target fiber")]
    TransitionRange { from: Id, to: Id },
    #[error("transition {from} -> {to} is not monotone: {x} <= {y} not preserved")]
    NonMonotone { from: Id, to: Id, x: Id, y: Id },
    #[error("functoriality violated along {chain:?} at fiber element {element}")]
    Functoriality { chain: Vec<Id>, element: Id },
}

/// A functor from a base poset to posets, stored with transitions for every
/// comparable pair `p <= q`.
#[derive(Clone, Debug)]
pub struct PosetDiagram {
    base: Poset,
    fibers: Vec<Poset>,
    transitions: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PosetDiagram {
    /// Builds a diagram from transition maps on base pairs.
    ///
    /// Every base cover needs a transition. Transitions for other comparable
    /// pairs are derived by composition along covers; any that are supplied
    /// anyway are cross-checked against the derived ones, as are all the
    /// different cover paths between two elements.
    pub fn new(
        base: Poset,
        fibers: Vec<Poset>,
        given: Vec<((usize, usize), Vec<usize>)>,
    ) -> Result<Self, DiagramError> {
        if fibers.len() != base.len() {
            return Err(DiagramError::FiberCount {
                expected: base.len(),
                found: fibers.len(),
            });
        }
        let mut supplied: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for ((p, q), map) in given {
            let (from, to) = (base.id(p).clone(), base.id(q).clone());
            if !base.le(p, q) {
                return Err(DiagramError::NotComparable { from, to });
            }
            if map.len() != fibers[p].len() {
                return Err(DiagramError::TransitionLength {
                    from,
                    to,
                    expected: fibers[p].len(),
                    found: map.len(),
                });
            }
            if map.iter().any(|&v| v >= fibers[q].len()) {
                return Err(DiagramError::TransitionRange { from, to });
            }
            if let Err((x, y)) = is_monotone(&fibers[p], &fibers[q], &map) {
                return Err(DiagramError::NonMonotone {
                    from,
                    to,
                    x: fibers[p].id(x).clone(),
                    y: fibers[p].id(y).clone(),
                });
            }
            supplied.insert((p, q), map);
        }
        for &(p, q) in base.covers() {
            if !supplied.contains_key(&(p, q)) {
                return Err(DiagramError::MissingTransition {
                    from: base.id(p).clone(),
                    to: base.id(q).clone(),
                });
            }
        }

        let mut transitions: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let order = base.linear_extension();
        for &p in &order {
            if let Some(map) = supplied.get(&(p, p)) {
                if let Some(x) = (0..fibers[p].len()).find(|&x| map[x] != x) {
                    return Err(DiagramError::Functoriality {
                        chain: vec![base.id(p).clone(), base.id(p).clone()],
                        element: fibers[p].id(x).clone(),
                    });
                }
            }
            transitions.insert((p, p), (0..fibers[p].len()).collect());
            for &q in &order {
                if !base.lt(p, q) {
                    continue;
                }
                // Every cover r -> q with p <= r gives a candidate composite.
                let mut derived: Option<(usize, Vec<usize>)> = None;
                for &(r, top) in base.covers() {
                    if top != q || !base.le(p, r) {
                        continue;
                    }
                    let first = &transitions[&(p, r)];
                    let last = &supplied[&(r, q)];
                    let composite: Vec<usize> = first.iter().map(|&x| last[x]).collect();
                    match &derived {
                        None => derived = Some((r, composite)),
                        Some((r0, prev)) => {
                            if let Some(x) = (0..composite.len()).find(|&x| composite[x] != prev[x])
                            {
                                return Err(DiagramError::Functoriality {
                                    chain: vec![
                                        base.id(p).clone(),
                                        base.id(*r0).clone(),
                                        base.id(r).clone(),
                                        base.id(q).clone(),
                                    ],
                                    element: fibers[p].id(x).clone(),
                                });
                            }
                        }
                    }
                }
                let (r, composite) = derived.expect("p < q implies a cover below q above p");
                if let Some(given) = supplied.get(&(p, q)) {
                    if let Some(x) = (0..composite.len()).find(|&x| composite[x] != given[x]) {
                        return Err(DiagramError::Functoriality {
                            chain: vec![base.id(p).clone(), base.id(r).clone(), base.id(q).clone()],
                            element: fibers[p].id(x).clone(),
                        });
                    }
                }
                transitions.insert((p, q), composite);
            }
        }
        Ok(PosetDiagram {
            base,
            fibers,
            transitions,
        })
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn fiber(&self, p: usize) -> &Poset {
        &self.fibers[p]
    }

    pub fn fibers(&self) -> &[Poset] {
        &self.fibers
    }

    /// Transition for `p <= q`, or `None` if incomparable.
    pub fn transition(&self, p: usize, q: usize) -> Option<&[usize]> {
        self.transitions.get(&(p, q)).map(Vec::as_slice)
    }

    /// Transitions on base covers only.
    pub fn cover_transitions(&self) -> Vec<((usize, usize), Vec<usize>)> {
        self.base
            .covers()
            .iter()
            .map(|&(p, q)| ((p, q), self.transitions[&(p, q)].clone()))
            .collect()
    }

    /// The Grothendieck construction: pairs `(p, x)` with
    /// `(p, x) <= (q, y)` iff `p <= q` and `T(p<=q)(x) <= y`.
    ///
    /// Elements are named `(p|x)` and ordered by base index, then fiber index.
    pub fn grothendieck_total(&self) -> Poset {
        let mut pairs = Vec::new();
        let mut ids = Vec::new();
        for (p, fiber) in self.fibers.iter().enumerate() {
            for x in 0..fiber.len() {
                pairs.push((p, x));
                ids.push(Id::Str(format!("({}|{})", self.base.id(p), fiber.id(x))));
            }
        }
        Poset::from_order(ids, |a, b| {
            let ((p, x), (q, y)) = (pairs[a], pairs[b]);
            match self.transitions.get(&(p, q)) {
                Some(t) => self.fibers[q].le(t[x], y),
                None => false,
            }
        })
        .expect("functorial diagrams have partially ordered totals")
    }
}
