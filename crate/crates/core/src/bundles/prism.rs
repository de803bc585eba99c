use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::Assembly;
use crate::ballcomplex::{BallComplex, BallComplexError};
use crate::fixtures;
use crate::id::Id;
use crate::poset::{is_monotone, Poset};
use crate::recognition::{is_ball, Status, Verdict};
use crate::settings::Settings;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrismError {
    #[error("a chain needs at least one complex")]
    Empty,
    #[error("chain of {complexes} complexes needs {} steps, got {steps}", .complexes - 1)]
    StepCount { complexes: usize, steps: usize },
    #[error("step {0} does not run between consecutive complexes")]
    Endpoints(usize),
    #[error("step {step} is not verified ({status:?})")]
    StepStatus { step: usize, status: Status },
    #[error("prism complex failed validation: {0}")]
    Validation(#[from] BallComplexError),
    #[error("projection is not monotone at {x} <= {y}")]
    Projection { x: Id, y: Id },
}

/// `Q_0 -> Q_1 -> ... -> Q_m` with verified assemblies as steps.
#[derive(Clone, Debug)]
pub struct PrismChain {
    complexes: Vec<BallComplex>,
    steps: Vec<Assembly>,
}

impl PrismChain {
    pub fn new(complexes: Vec<BallComplex>, steps: Vec<Assembly>) -> Result<Self, PrismError> {
        if complexes.is_empty() {
            return Err(PrismError::Empty);
        }
        if steps.len() + 1 != complexes.len() {
            return Err(PrismError::StepCount {
                complexes: complexes.len(),
                steps: steps.len(),
            });
        }
        for (i, a) in steps.iter().enumerate() {
            if a.source().poset() != complexes[i].poset()
                || a.target().poset() != complexes[i + 1].poset()
            {
                return Err(PrismError::Endpoints(i));
            }
            if a.status() != Status::Verified {
                return Err(PrismError::StepStatus {
                    step: i,
                    status: a.status(),
                });
            }
        }
        Ok(PrismChain { complexes, steps })
    }

    /// Chain with complexes read off the steps.
    pub fn from_steps(start: BallComplex, steps: Vec<Assembly>) -> Result<Self, PrismError> {
        let mut complexes = vec![start];
        complexes.extend(steps.iter().map(|a| a.target().clone()));
        Self::new(complexes, steps)
    }

    pub fn complexes(&self) -> &[BallComplex] {
        &self.complexes
    }

    pub fn steps(&self) -> &[Assembly] {
        &self.steps
    }

    /// Length `m` of the chain.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `|T(Q)| = Σ |Q_{max k}|` over nonempty `k ⊆ {0..m}`; `max k = j` for
    /// `2^j` subsets.
    pub fn expected_cells(&self) -> usize {
        self.complexes
            .iter()
            .enumerate()
            .map(|(j, q)| q.len() << j)
            .sum()
    }

    /// Composite `Q_i -> Q_j` as an index map, `i <= j`.
    fn composite(&self, i: usize, j: usize) -> Vec<usize> {
        let mut map: Vec<usize> = (0..self.complexes[i].len()).collect();
        for step in &self.steps[i..j] {
            for x in map.iter_mut() {
                *x = step.map()[*x];
            }
        }
        map
    }
}

/// Prismatic decomposition with its projection onto the face poset of `Δ^m`.
#[derive(Clone, Debug)]
pub struct PrismComplex {
    pub complex: BallComplex,
    /// `(k, B) ↦ k`, as indices into `base`.
    pub projection: Vec<usize>,
    pub base: Poset,
    /// Ball verdict for the whole order complex.
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismReport {
    pub cells: usize,
    pub expected_cells: usize,
    pub f_vector: Vec<usize>,
    pub status: Status,
}

impl PrismComplex {
    pub fn report(&self, chain: &PrismChain) -> PrismReport {
        PrismReport {
            cells: self.complex.len(),
            expected_cells: chain.expected_cells(),
            f_vector: self.complex.f_vector(),
            status: self.complex.status().meet(self.verdict.status),
        }
    }
}

/// `T(Q)`: cells `(k, B)` with `∅ ≠ k ⊆ {0..m}` and `B ∈ Q_{max k}`, where
/// `(k0, B0) <= (k1, B1)` iff `k0 ⊆ k1` and `μ(B0) <= B1` for the composite
/// `μ: Q_{max k0} -> Q_{max k1}`.
///
/// Cells are ordered like the faces of `Δ^m` and then by fiber index, and
/// are named `(k|B)`.
pub fn prism_complex(chain: &PrismChain, settings: &Settings) -> Result<PrismComplex, PrismError> {
    let m = chain.len();
    let base = fixtures::simplex(m).face_poset();
    let faces: Vec<Vec<usize>> = (1..=m + 1)
        .flat_map(|size| (0..=m).combinations(size))
        .collect();
    debug_assert_eq!(faces.len(), base.len());
    let composites: Vec<Vec<Vec<usize>>> = (0..=m)
        .map(|i| {
            (0..=m)
                .map(|j| {
                    if i <= j {
                        chain.composite(i, j)
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect();

    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut ids = Vec::new();
    for (f, k) in faces.iter().enumerate() {
        let q = chain.complexes[*k.last().expect("nonempty")].poset();
        for b in 0..q.len() {
            cells.push((f, b));
            ids.push(Id::Str(format!("({}|{})", k.iter().join(","), q.id(b))));
        }
    }
    let poset = Poset::from_order(ids, |x, y| {
        let ((f0, b0), (f1, b1)) = (cells[x], cells[y]);
        if !base.le(f0, f1) {
            return false;
        }
        let (j0, j1) = (*faces[f0].last().unwrap(), *faces[f1].last().unwrap());
        chain.complexes[j1].poset().le(composites[j0][j1][b0], b1)
    })
    .expect("the prism order is a partial order");
    let complex = BallComplex::validate(poset, settings)?;
    let projection: Vec<usize> = cells.iter().map(|&(f, _)| f).collect();
    if let Err((x, y)) = is_monotone(complex.poset(), &base, &projection) {
        return Err(PrismError::Projection {
            x: complex.poset().id(x).clone(),
            y: complex.poset().id(y).clone(),
        });
    }
    let verdict = is_ball(&complex.poset().order_complex(), complex.dim(), settings)
        .expect("order complex has the top rank");
    Ok(PrismComplex {
        complex,
        projection,
        base,
        verdict,
    })
}
