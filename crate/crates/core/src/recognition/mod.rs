//! PL sphere and ball recognition with tri-state, certificate-carrying
//! verdicts.
//!
//! Dimensions up to 2 are decided exactly. From dimension 3 on, necessary
//! conditions (closed pseudomanifold, Euler number, vertex links, homology)
//! can refute, and a bistellar flip reduction to the boundary of a simplex
//! can verify; anything else is `Unknown`.

mod flips;
mod homology;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::settings::Settings;
use crate::simplicial::{Simplex, SimplicialComplex, Vertex};

pub use flips::{apply_move, replay, BistellarMove, FlipCertificate, FlipError};
pub use homology::{homology, invariant_factors, HomologyGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognitionError {
    #[error("expected dimension {expected}, complex has dimension {found}")]
    DimensionMismatch { expected: isize, found: isize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    Verified,
    Refuted,
    Unknown,
}

impl Status {
    /// Exit code of the command line contract.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Refuted => 1,
            Status::Unknown => 2,
        }
    }

    /// Whether this status passes; `Unknown` passes only when not strict.
    pub fn accepts(self, strict: bool) -> bool {
        match self {
            Status::Verified => true,
            Status::Refuted => false,
            Status::Unknown => !strict,
        }
    }

    /// Worst of two statuses: `Refuted` over `Unknown` over `Verified`.
    pub fn meet(self, other: Status) -> Status {
        match (self, other) {
            (Status::Refuted, _) | (_, Status::Refuted) => Status::Refuted,
            (Status::Unknown, _) | (_, Status::Unknown) => Status::Unknown,
            _ => Status::Verified,
        }
    }
}

/// A falsified necessary condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Refutation {
    WrongVertexCount { expected: usize, found: usize },
    NotPure { facet: Simplex },
    Disconnected { components: usize },
    VertexDegree { vertex: Vertex, degree: usize },
    RidgeDegree { ridge: Simplex, degree: usize },
    LinkNotSphere { face: Simplex, link: Box<Verdict> },
    Euler { expected: i64, found: i64 },
    Homology { found: Vec<HomologyGroup> },
    EmptyBoundary,
    BoundaryNotSphere { boundary: Box<Verdict> },
    ConeNotSphere { closure: Box<Verdict> },
    WrongDimension { expected: isize, found: isize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Decided by the exact criterion for its dimension.
    Exact {
        dimension: isize,
        orientable: Option<bool>,
    },
    /// Bistellar moves reducing the complex to the boundary of a simplex.
    Flips {
        certificate: FlipCertificate,
    },
    Refutation(Refutation),
    /// Necessary conditions hold but no reduction was found.
    Inconclusive {
        flips_tried: usize,
        final_f_vector: Vec<usize>,
        unknown_links: Vec<Vertex>,
    },
    /// Ball test: boundary sphere verdict and verdict for the coned-off
    /// closure.
    Ball {
        boundary: Box<Verdict>,
        closure: Box<Verdict>,
    },
    /// Per-vertex link verdicts of a manifold test.
    Links {
        links: BTreeMap<Vertex, Verdict>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Witness,
    /// Bistellar moves performed, including nested searches.
    pub budget_used: usize,
}

impl Verdict {
    fn exact(dimension: isize, orientable: Option<bool>) -> Self {
        Verdict {
            status: Status::Verified,
            witness: Witness::Exact {
                dimension,
                orientable,
            },
            budget_used: 0,
        }
    }

    fn refuted(r: Refutation) -> Self {
        Self::refuted_after(r, 0)
    }

    fn refuted_after(r: Refutation, budget_used: usize) -> Self {
        Verdict {
            status: Status::Refuted,
            witness: Witness::Refutation(r),
            budget_used,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match &self.witness {
            Witness::Refutation(r) => Some(r),
            _ => None,
        }
    }
}

fn check_dimension(k: &SimplicialComplex, d: isize) -> Result<(), RecognitionError> {
    if k.dimension() != d {
        return Err(RecognitionError::DimensionMismatch {
            expected: d,
            found: k.dimension(),
        });
    }
    Ok(())
}

fn sphere_homology(d: usize) -> Vec<HomologyGroup> {
    (0..=d)
        .map(|i| HomologyGroup::free(usize::from(i == 0 || i == d)))
        .collect()
}

/// Decides whether `k` is a PL `d`-sphere. `d = -1` accepts only the empty
/// complex.
pub fn is_sphere(
    k: &SimplicialComplex,
    d: isize,
    settings: &Settings,
) -> Result<Verdict, RecognitionError> {
    check_dimension(k, d)?;
    if d < 0 {
        return Ok(Verdict::exact(-1, None));
    }
    if let Some(f) = k.facets().iter().find(|f| f.dim() != d) {
        return Ok(Verdict::refuted(Refutation::NotPure { facet: f.clone() }));
    }
    let du = d as usize;
    if du == 0 {
        let n = k.facets().len();
        return Ok(if n == 2 {
            Verdict::exact(0, None)
        } else {
            Verdict::refuted(Refutation::WrongVertexCount {
                expected: 2,
                found: n,
            })
        });
    }
    if du == 1 {
        let mut degree: BTreeMap<Vertex, usize> = BTreeMap::new();
        for e in k.facets() {
            for &v in e.vertices() {
                *degree.entry(v).or_insert(0) += 1;
            }
        }
        if let Some((&vertex, &deg)) = degree.iter().find(|(_, &n)| n != 2) {
            return Ok(Verdict::refuted(Refutation::VertexDegree {
                vertex,
                degree: deg,
            }));
        }
        let components = k.components().len();
        if components != 1 {
            return Ok(Verdict::refuted(Refutation::Disconnected { components }));
        }
        return Ok(Verdict::exact(1, None));
    }

    if let Some((ridge, degree)) = k.ridge_degrees().into_iter().find(|&(_, n)| n != 2) {
        return Ok(Verdict::refuted(Refutation::RidgeDegree { ridge, degree }));
    }
    let components = k.components().len();
    if components != 1 {
        return Ok(Verdict::refuted(Refutation::Disconnected { components }));
    }
    let expected = if du.is_multiple_of(2) { 2 } else { 0 };
    let chi = k.euler_characteristic();
    if chi != expected {
        return Ok(Verdict::refuted(Refutation::Euler {
            expected,
            found: chi,
        }));
    }

    let mut used = 0;
    let mut unknown_links = Vec::new();
    for v in k.vertices() {
        let face = Simplex::from_sorted(vec![v]);
        let link = k.link(&face).expect("vertex of the complex");
        let verdict = is_sphere(&link, d - 1, settings).expect("links of a pure complex are pure");
        used += verdict.budget_used;
        match verdict.status {
            Status::Refuted => {
                return Ok(Verdict::refuted_after(
                    Refutation::LinkNotSphere {
                        face,
                        link: Box::new(verdict),
                    },
                    used,
                ));
            }
            Status::Unknown => unknown_links.push(v),
            Status::Verified => {}
        }
    }
    if du == 2 {
        // A connected closed surface with Euler number 2.
        return Ok(Verdict::exact(2, k.orientable()));
    }

    let h = homology(k);
    if h != sphere_homology(du) {
        return Ok(Verdict::refuted_after(
            Refutation::Homology { found: h },
            used,
        ));
    }

    let outcome = flips::reduce(k, du, settings.flip_budget);
    used += outcome.moves.len();
    Ok(match outcome.reached {
        true => Verdict {
            status: Status::Verified,
            witness: Witness::Flips {
                certificate: FlipCertificate {
                    dimension: du,
                    moves: outcome.moves,
                },
            },
            budget_used: used,
        },
        false => Verdict {
            status: Status::Unknown,
            witness: Witness::Inconclusive {
                flips_tried: outcome.moves.len(),
                final_f_vector: outcome.final_f_vector,
                unknown_links,
            },
            budget_used: used,
        },
    })
}

/// Decides whether `k` is a PL `d`-ball: its boundary must be a
/// `(d-1)`-sphere and the complex with the boundary coned off a `d`-sphere.
pub fn is_ball(
    k: &SimplicialComplex,
    d: usize,
    settings: &Settings,
) -> Result<Verdict, RecognitionError> {
    check_dimension(k, d as isize)?;
    if let Some(f) = k.facets().iter().find(|f| f.dim() != d as isize) {
        return Ok(Verdict::refuted(Refutation::NotPure { facet: f.clone() }));
    }
    if d == 0 {
        let n = k.facets().len();
        return Ok(if n == 1 {
            Verdict::exact(0, None)
        } else {
            Verdict::refuted(Refutation::WrongVertexCount {
                expected: 1,
                found: n,
            })
        });
    }
    if let Some((ridge, degree)) = k.ridge_degrees().into_iter().find(|&(_, n)| n > 2) {
        return Ok(Verdict::refuted(Refutation::RidgeDegree { ridge, degree }));
    }
    let boundary = k.boundary();
    if boundary.is_empty() {
        return Ok(Verdict::refuted(Refutation::EmptyBoundary));
    }
    let b = is_sphere(&boundary, d as isize - 1, settings)
        .expect("boundary ridges share one dimension");
    if b.status == Status::Refuted {
        let used = b.budget_used;
        return Ok(Verdict::refuted_after(
            Refutation::BoundaryNotSphere {
                boundary: Box::new(b),
            },
            used,
        ));
    }
    let apex = k.max_vertex().expect("nonempty") + 1;
    let closure = k.union(&boundary.cone(apex));
    let c = is_sphere(&closure, d as isize, settings).expect("cone closure keeps the dimension");
    let used = b.budget_used + c.budget_used;
    if c.status == Status::Refuted {
        return Ok(Verdict::refuted_after(
            Refutation::ConeNotSphere {
                closure: Box::new(c),
            },
            used,
        ));
    }
    Ok(Verdict {
        status: b.status.meet(c.status),
        witness: Witness::Ball {
            boundary: Box::new(b),
            closure: Box::new(c),
        },
        budget_used: used,
    })
}
