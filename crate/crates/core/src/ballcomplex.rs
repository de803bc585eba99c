//! Abstract ball complexes: finite posets in which the order complex of
//! every strict lower ideal `p_<` is a PL sphere of dimension `rank(p) - 1`.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{verify_assembly, Assembly, AssemblyError};
use crate::id::Id;
use crate::poset::{Poset, PosetError};
use crate::recognition::{is_ball, is_sphere, Status, Verdict};
use crate::settings::Settings;
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BallComplexError {
    #[error("the empty poset is not a ball complex")]
    Empty,
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("strict lower ideal of {element} is not a sphere of dimension {}", *.rank as isize - 1)]
    Refuted {
        element: Id,
        rank: usize,
        ideal: Vec<Id>,
        verdict: Box<Verdict>,
    },
    #[error("sphere test for the strict lower ideal of {element} was inconclusive")]
    Unknown {
        element: Id,
        rank: usize,
        ideal: Vec<Id>,
        verdict: Box<Verdict>,
    },
    #[error("marked element {element} has rank {rank}, complex has dimension {dim}")]
    MarkedRank {
        element: Id,
        rank: usize,
        dim: usize,
    },
    #[error("{element} lies below {above} but not in the ball")]
    NotLowerClosed { element: Id, above: Id },
    #[error("the ball is not pure: maximal element {element} has rank {rank} < {dim}")]
    NotPureBall {
        element: Id,
        rank: usize,
        dim: usize,
    },
    #[error("the ball's order complex is not a ball")]
    NotABall { verdict: Box<Verdict> },
    #[error("supplied boundary differs from the computed boundary {expected:?}")]
    BoundaryMismatch { expected: Vec<Id>, found: Vec<Id> },
    #[error("the boundary's order complex is not a sphere")]
    BoundaryNotSphere { verdict: Box<Verdict> },
    #[error("new element name {0} is already taken")]
    NameTaken(Id),
    #[error("quotient failed validation: {0}")]
    Quotient(Box<BallComplexError>),
    #[error("quotient assembly failed: {0}")]
    Assembly(Box<AssemblyError>),
}

/// Sphere verdict for one element's strict lower ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCertificate {
    pub element: Id,
    pub rank: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallComplex {
    poset: Poset,
    ranks: Vec<usize>,
    dim: usize,
    certificate: Vec<CellCertificate>,
    marked: Option<usize>,
}

impl BallComplex {
    /// Checks the sphere condition for every element.
    ///
    /// `Unknown` verdicts are kept in the certificate unless
    /// `settings.strict`, in which case they are errors. With more than one
    /// thread the elements are checked in parallel; the result is the same.
    pub fn validate(poset: Poset, settings: &Settings) -> Result<BallComplex, BallComplexError> {
        if poset.is_empty() {
            return Err(BallComplexError::Empty);
        }
        let ranks = poset.ranks();
        let check = |p: usize| -> Verdict {
            let ideal = poset.lower_ideal_index(p, true);
            is_sphere(&ideal.order_complex(), ranks[p] as isize - 1, settings)
                .expect("order complex of p_< has dimension rank(p) - 1")
        };
        let verdicts = parallel_map(poset.len(), settings.threads, check);
        let mut certificate = Vec::with_capacity(poset.len());
        for (p, verdict) in verdicts.into_iter().enumerate() {
            let element = poset.id(p).clone();
            let rank = ranks[p];
            let failure = match verdict.status {
                Status::Refuted => Some(true),
                Status::Unknown if settings.strict => Some(false),
                _ => None,
            };
            if let Some(refuted) = failure {
                let mut below = poset.down_set(p).clone();
                below.set(p, false);
                let ideal = below.ones().map(|i| poset.id(i).clone()).collect();
                let verdict = Box::new(verdict);
                return Err(if refuted {
                    BallComplexError::Refuted {
                        element,
                        rank,
                        ideal,
                        verdict,
                    }
                } else {
                    BallComplexError::Unknown {
                        element,
                        rank,
                        ideal,
                        verdict,
                    }
                });
            }
            certificate.push(CellCertificate {
                element,
                rank,
                verdict,
            });
        }
        let dim = ranks.iter().copied().max().unwrap_or(0);
        Ok(BallComplex {
            poset,
            ranks,
            dim,
            certificate,
            marked: None,
        })
    }

    /// The face poset of a simplicial complex.
    pub fn from_simplicial(
        k: &SimplicialComplex,
        settings: &Settings,
    ) -> Result<BallComplex, BallComplexError> {
        Self::validate(k.face_poset(), settings)
    }

    /// Marks a top-dimensional element.
    pub fn with_marked(mut self, id: &Id) -> Result<BallComplex, BallComplexError> {
        let p = self.poset.require(id)?;
        if self.ranks[p] != self.dim {
            return Err(BallComplexError::MarkedRank {
                element: id.clone(),
                rank: self.ranks[p],
                dim: self.dim,
            });
        }
        self.marked = Some(p);
        Ok(self)
    }

    /// Restriction to a lower set of elements; certificates carry over since
    /// strict ideals do not change.
    pub(crate) fn restrict(&self, members: &FixedBitSet) -> BallComplex {
        debug_assert!(self.poset.is_lower_set(members));
        let poset = self.poset.induced(members);
        let keep: Vec<usize> = members.ones().collect();
        let ranks: Vec<usize> = keep.iter().map(|&i| self.ranks[i]).collect();
        let certificate = keep.iter().map(|&i| self.certificate[i].clone()).collect();
        let dim = ranks.iter().copied().max().unwrap_or(0);
        BallComplex {
            poset,
            ranks,
            dim,
            certificate,
            marked: None,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, p: usize) -> usize {
        self.ranks[p]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn certificate(&self) -> &[CellCertificate] {
        &self.certificate
    }

    pub fn marked(&self) -> Option<usize> {
        self.marked
    }

    pub fn marked_id(&self) -> Option<&Id> {
        self.marked.map(|p| self.poset.id(p))
    }

    /// Worst status over all cells.
    pub fn status(&self) -> Status {
        self.certificate
            .iter()
            .fold(Status::Verified, |s, c| s.meet(c.verdict.status))
    }

    /// Number of cells of each rank.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim + 1];
        for &r in &self.ranks {
            f[r] += 1;
        }
        f
    }
}

/// Runs `f` on `0..n` using up to `threads` scoped workers; output is in
/// index order.
pub(crate) fn parallel_map<T: Send>(
    n: usize,
    threads: usize,
    f: impl Fn(usize) -> T + Sync,
) -> Vec<T> {
    if threads <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(threads);
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|start| {
                scope.spawn(move || (start..(start + chunk).min(n)).map(f).collect::<Vec<T>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Replaces the interior of an embedded ball by a single cell.
///
/// `ball` must be a lower set of `l` whose order complex is a `d`-ball, and
/// `boundary` must equal its computed boundary: the lower closure of the
/// rank `d - 1` cells lying below exactly one rank `d` cell of the ball.
/// The cells of `ball` outside `boundary` are removed and one new cell of
/// rank `d` is added over `boundary`. It takes the id of the removed cell if
/// there is only one, otherwise `name` or a name built from the removed ids.
///
/// Returns the quotient and the assembly `l -> quotient` sending the removed
/// cells to the new one.
pub fn assemble_ball(
    l: &BallComplex,
    ball: &[Id],
    boundary: &[Id],
    name: Option<Id>,
    settings: &Settings,
) -> Result<(BallComplex, Assembly), BallComplexError> {
    let p = &l.poset;
    let n = p.len();
    let to_set = |ids: &[Id]| -> Result<FixedBitSet, BallComplexError> {
        let mut s = FixedBitSet::with_capacity(n);
        for id in ids {
            s.insert(p.require(id)?);
        }
        Ok(s)
    };
    let b = to_set(ball)?;
    let given_boundary = to_set(boundary)?;
    for y in b.ones() {
        if let Some(x) = p.down_set(y).difference(&b).next() {
            return Err(BallComplexError::NotLowerClosed {
                element: p.id(x).clone(),
                above: p.id(y).clone(),
            });
        }
    }
    if b.is_clear() {
        return Err(BallComplexError::Empty);
    }
    let d = b.ones().map(|i| l.ranks[i]).max().expect("nonempty");
    if let Some(top) = b
        .ones()
        .find(|&y| l.ranks[y] < d && p.up_set(y).intersection(&b).count() == 1)
    {
        return Err(BallComplexError::NotPureBall {
            element: p.id(top).clone(),
            rank: l.ranks[top],
            dim: d,
        });
    }

    let ball_poset = p.induced(&b);
    let verdict =
        is_ball(&ball_poset.order_complex(), d, settings).expect("order complex of a rank d set");
    if !verdict.status.accepts(settings.strict) {
        return Err(BallComplexError::NotABall {
            verdict: Box::new(verdict),
        });
    }

    // Computed boundary: lower closure of the free rank d-1 cells.
    let mut computed = FixedBitSet::with_capacity(n);
    if d >= 1 {
        for q in b.ones().filter(|&q| l.ranks[q] == d - 1) {
            let tops = p
                .up_set(q)
                .ones()
                .filter(|&y| b.contains(y) && l.ranks[y] == d)
                .count();
            if tops == 1 {
                computed.union_with(p.down_set(q));
            }
        }
    }
    if computed != given_boundary {
        let ids = |s: &FixedBitSet| s.ones().map(|i| p.id(i).clone()).collect::<Vec<_>>();
        return Err(BallComplexError::BoundaryMismatch {
            expected: ids(&computed),
            found: ids(&given_boundary),
        });
    }
    let boundary_complex = p.induced(&computed).order_complex();
    let bverdict = is_sphere(&boundary_complex, d as isize - 1, settings)
        .expect("boundary has dimension d - 1");
    if !bverdict.status.accepts(settings.strict) {
        return Err(BallComplexError::BoundaryNotSphere {
            verdict: Box::new(bverdict),
        });
    }

    let interior: Vec<usize> = b.difference(&computed).collect();
    let new_id = match (interior.len(), name) {
        (1, _) => p.id(interior[0]).clone(),
        (_, Some(id)) => id,
        (_, None) => Id::Str(format!(
            "[{}]",
            interior
                .iter()
                .map(|&i| p.id(i).to_string())
                .collect::<Vec<_>>()
                .join("+")
        )),
    };
    if interior.len() != 1 && p.index_of(&new_id).is_some() {
        return Err(BallComplexError::NameTaken(new_id));
    }

    // New element list: L's order with the interior collapsed to the slot
    // of its first element.
    let first = interior[0];
    let mut old_of_new: Vec<Option<usize>> = Vec::new();
    let mut new_of_old = vec![0usize; n];
    let mut ids = Vec::new();
    for x in 0..n {
        if x == first {
            new_of_old[x] = ids.len();
            old_of_new.push(None);
            ids.push(new_id.clone());
        } else if b.contains(x) && !computed.contains(x) {
            continue;
        } else {
            new_of_old[x] = ids.len();
            old_of_new.push(Some(x));
            ids.push(p.id(x).clone());
        }
    }
    let slot = new_of_old[first];
    for &x in &interior {
        new_of_old[x] = slot;
    }
    let quotient_poset = Poset::from_order(ids, |i, j| match (old_of_new[i], old_of_new[j]) {
        (Some(x), Some(y)) => p.le(x, y),
        (Some(x), None) => computed.contains(x),
        (None, Some(y)) => interior.iter().any(|&z| p.le(z, y)),
        (None, None) => true,
    })?;
    let mut quotient = BallComplex::validate(quotient_poset, settings)
        .map_err(|e| BallComplexError::Quotient(Box::new(e)))?;
    if let Some(m) = l.marked {
        let id = quotient.poset.id(new_of_old[m]).clone();
        quotient = quotient
            .with_marked(&id)
            .map_err(|e| BallComplexError::Quotient(Box::new(e)))?;
    }
    let assembly = verify_assembly(&new_of_old, l, &quotient, settings)
        .map_err(|e| BallComplexError::Assembly(Box::new(e)))?;
    Ok((quotient, assembly))
}
