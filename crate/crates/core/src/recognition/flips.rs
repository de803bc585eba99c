//! Bistellar moves and a deterministic reduction search.
//!
//! A move `(A, B)` on a closed `d`-pseudomanifold with `|A| + |B| = d + 2`
//! requires `link(A) = ∂B` and `B ∉ K` (or, when `A` is a facet, `B` a fresh
//! vertex). It replaces `A * ∂B` by `∂A * B`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simplicial::{Simplex, SimplicialComplex, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BistellarMove {
    /// The face whose star is removed.
    pub remove: Simplex,
    /// The face inserted in its place.
    pub insert: Simplex,
}

impl BistellarMove {
    pub fn inverse(&self) -> BistellarMove {
        BistellarMove {
            remove: self.insert.clone(),
            insert: self.remove.clone(),
        }
    }
}

/// Moves that take the input complex to the boundary of a simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipCertificate {
    pub dimension: usize,
    pub moves: Vec<BistellarMove>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlipError {
    #[error("move {index}: sizes {remove} + {insert} do not add up to dimension + 2 = {expected}")]
    Sizes {
        index: usize,
        remove: usize,
        insert: usize,
        expected: usize,
    },
    #[error("move {index}: the two faces share a vertex")]
    Overlap { index: usize },
    #[error("move {index}: link of {face} is not the boundary of {insert}")]
    Link {
        index: usize,
        face: Simplex,
        insert: Simplex,
    },
    #[error("move {index}: {insert} is already a face")]
    Present { index: usize, insert: Simplex },
    #[error(
        "replay ended with {vertices} vertices and {facets} facets, not the boundary of a simplex"
    )]
    NotSimplexBoundary { vertices: usize, facets: usize },
}

/// Applies one move, checking admissibility.
pub fn apply_move(
    k: &SimplicialComplex,
    m: &BistellarMove,
) -> Result<SimplicialComplex, FlipError> {
    let d = k.dimension().max(0) as usize;
    let mut state = State::new(k, d);
    state.check(m, 0)?;
    state.apply(m);
    Ok(state.complex())
}

/// Replays a certificate and checks that it ends at the boundary of a
/// `(dimension + 1)`-simplex.
pub fn replay(
    k: &SimplicialComplex,
    cert: &FlipCertificate,
) -> Result<SimplicialComplex, FlipError> {
    let mut state = State::new(k, cert.dimension);
    for (index, m) in cert.moves.iter().enumerate() {
        state.check(m, index)?;
        state.apply(m);
    }
    if !state.is_simplex_boundary() {
        return Err(FlipError::NotSimplexBoundary {
            vertices: state.f[0],
            facets: state.facets.len(),
        });
    }
    Ok(state.complex())
}

pub(crate) struct Outcome {
    pub moves: Vec<BistellarMove>,
    pub reached: bool,
    pub final_f_vector: Vec<usize>,
}

/// Moves forbidden after their inverse was applied.
const TABU_TENURE: usize = 12;

/// Searches for a move sequence to the boundary of a `(d+1)`-simplex.
///
/// Each step takes the admissible move whose result has the
/// lexicographically smallest f-vector, provided it improves on the current
/// one. Otherwise it takes the non-improving move with the best one-step
/// lookahead, rotating through ties. The inverse of each applied move stays
/// forbidden for a few steps.
pub(crate) fn reduce(k: &SimplicialComplex, d: usize, budget: usize) -> Outcome {
    let mut state = State::new(k, d);
    let mut moves: Vec<BistellarMove> = Vec::new();
    let mut tabu: HashMap<BistellarMove, usize> = HashMap::new();
    let mut escapes = 0usize;
    while !state.is_simplex_boundary() && moves.len() < budget {
        let step = moves.len();
        let allowed = |m: &BistellarMove, tabu: &HashMap<BistellarMove, usize>| {
            tabu.get(m).is_none_or(|&until| until <= step)
        };
        let mut candidates: Vec<(Vec<usize>, BistellarMove)> = state
            .admissible_moves()
            .into_iter()
            .filter(|m| allowed(m, &tabu))
            .map(|m| (state.f_after(&m), m))
            .collect();
        if candidates.is_empty() {
            // Only facet subdivisions remain; take the first one.
            let facet = state.facets.iter().next().expect("nonempty").clone();
            let m = BistellarMove {
                remove: facet,
                insert: Simplex::from_sorted(vec![state.next_vertex]),
            };
            candidates.push((state.f_after(&m), m));
        }
        candidates.sort();
        let chosen = if candidates[0].0 < state.f {
            candidates.swap_remove(0).1
        } else {
            let n = candidates.len();
            let offset = escapes % n;
            escapes += 1;
            let mut best: Option<((Vec<usize>, Vec<usize>, usize), usize)> = None;
            for (i, (after, m)) in candidates.iter().enumerate() {
                let score = state.lookahead(m);
                let key = (score, after.clone(), (i + n - offset) % n);
                if best.as_ref().is_none_or(|(b, _)| key < *b) {
                    best = Some((key, i));
                }
            }
            let (_, i) = best.expect("candidates nonempty");
            candidates.swap_remove(i).1
        };
        state.apply(&chosen);
        tabu.insert(chosen.inverse(), step + 1 + TABU_TENURE);
        moves.push(chosen);
    }
    Outcome {
        reached: state.is_simplex_boundary(),
        final_f_vector: state.f.clone(),
        moves,
    }
}

fn binomial(n: usize, k: isize) -> usize {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = k as usize;
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

struct State {
    d: usize,
    facets: BTreeSet<Simplex>,
    /// Number of facets containing each nonempty face.
    degree: HashMap<Simplex, usize>,
    star: HashMap<Vertex, BTreeSet<Simplex>>,
    f: Vec<usize>,
    next_vertex: Vertex,
}

impl State {
    fn new(k: &SimplicialComplex, d: usize) -> Self {
        let mut s = State {
            d,
            facets: BTreeSet::new(),
            degree: HashMap::new(),
            star: HashMap::new(),
            f: vec![0; d + 1],
            next_vertex: k.max_vertex().map_or(0, |v| v + 1),
        };
        for f in k.facets() {
            s.add_facet(f.clone());
        }
        s
    }

    fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_simplices(self.facets.iter().cloned())
    }

    fn is_simplex_boundary(&self) -> bool {
        self.f[0] == self.d + 2 && self.facets.len() == self.d + 2
    }

    fn add_facet(&mut self, facet: Simplex) {
        for face in facet.faces() {
            let len = face.len();
            let e = self.degree.entry(face).or_insert(0);
            *e += 1;
            if *e == 1 {
                self.f[len - 1] += 1;
            }
        }
        for &v in facet.vertices() {
            self.star.entry(v).or_default().insert(facet.clone());
            self.next_vertex = self.next_vertex.max(v + 1);
        }
        self.facets.insert(facet);
    }

    fn remove_facet(&mut self, facet: &Simplex) {
        for face in facet.faces() {
            let e = self.degree.get_mut(&face).expect("face of a present facet");
            *e -= 1;
            if *e == 0 {
                self.f[face.len() - 1] -= 1;
                self.degree.remove(&face);
            }
        }
        for v in facet.vertices() {
            let star = self.star.get_mut(v).expect("vertex of a present facet");
            star.remove(facet);
            if star.is_empty() {
                self.star.remove(v);
            }
        }
        self.facets.remove(facet);
    }

    fn cofacets(&self, a: &Simplex) -> Vec<Simplex> {
        match self.star.get(&a.vertices()[0]) {
            Some(star) => star.iter().filter(|f| a.is_face_of(f)).cloned().collect(),
            None => Vec::new(),
        }
    }

    /// The move removing the star of `a`, if admissible and `|a| <= d`.
    fn move_at(&self, a: &Simplex) -> Option<BistellarMove> {
        let want = self.d + 2 - a.len();
        if self.degree.get(a).copied() != Some(want) {
            return None;
        }
        let mut b = Simplex::from_sorted(Vec::new());
        for f in self.cofacets(a) {
            b = b.union(&f.minus(a));
        }
        if b.len() != want || self.degree.contains_key(&b) {
            return None;
        }
        Some(BistellarMove {
            remove: a.clone(),
            insert: b,
        })
    }

    fn admissible_moves(&self) -> Vec<BistellarMove> {
        let mut out: Vec<BistellarMove> = self
            .degree
            .keys()
            .filter(|a| a.len() <= self.d)
            .filter_map(|a| self.move_at(a))
            .collect();
        out.sort();
        out
    }

    fn f_after(&self, m: &BistellarMove) -> Vec<usize> {
        let (a, b) = (m.remove.len(), m.insert.len());
        self.f
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let k = k as isize + 1;
                n + binomial(a, k - b as isize) - binomial(b, k - a as isize)
            })
            .collect()
    }

    fn check(&self, m: &BistellarMove, index: usize) -> Result<(), FlipError> {
        let (a, b) = (&m.remove, &m.insert);
        if a.is_empty() || b.is_empty() || a.len() + b.len() != self.d + 2 {
            return Err(FlipError::Sizes {
                index,
                remove: a.len(),
                insert: b.len(),
                expected: self.d + 2,
            });
        }
        if !a.is_disjoint(b) {
            return Err(FlipError::Overlap { index });
        }
        let link_err = || FlipError::Link {
            index,
            face: a.clone(),
            insert: b.clone(),
        };
        if a.len() == self.d + 1 {
            if !self.facets.contains(a) {
                return Err(link_err());
            }
            if self.star.contains_key(&b.vertices()[0]) {
                return Err(FlipError::Present {
                    index,
                    insert: b.clone(),
                });
            }
            return Ok(());
        }
        let cofacets = self.cofacets(a);
        if cofacets.len() != b.len() || cofacets.iter().any(|f| !f.minus(a).is_face_of(b)) {
            return Err(link_err());
        }
        if self.degree.contains_key(b) {
            return Err(FlipError::Present {
                index,
                insert: b.clone(),
            });
        }
        Ok(())
    }

    fn apply(&mut self, m: &BistellarMove) {
        let (a, b) = (&m.remove, &m.insert);
        for &v in b.vertices() {
            self.remove_facet(&a.union(&b.without(v)));
        }
        for &v in a.vertices() {
            self.add_facet(a.without(v).union(b));
        }
    }

    /// Best f-vector reachable by one further move near `m`, other than
    /// undoing it.
    fn lookahead(&mut self, m: &BistellarMove) -> Vec<usize> {
        self.apply(m);
        let inverse = m.inverse();
        let mut near: BTreeSet<Simplex> = BTreeSet::new();
        for &v in m.remove.vertices() {
            for face in m.remove.without(v).union(&m.insert).faces() {
                if face.len() <= self.d {
                    near.insert(face);
                }
            }
        }
        let best = near
            .iter()
            .filter_map(|a| self.move_at(a))
            .filter(|n| *n != inverse)
            .map(|n| self.f_after(&n))
            .min()
            .unwrap_or_else(|| vec![usize::MAX; self.d + 1]);
        self.apply(&inverse);
        best
    }
}
