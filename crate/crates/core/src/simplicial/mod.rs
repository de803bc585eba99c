//! Abstract simplicial complexes over integer vertex ids.
//!
//! A complex is stored by its facets. Simplices are sorted vertex sets; the
//! canonical face order used for naming (face posets, subdivisions) is by
//! dimension first and lexicographic second.

mod manifold;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::Id;
use crate::poset::Poset;

pub use manifold::PseudomanifoldReport;

pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("empty facet in input")]
    EmptyFacet,
    #[error("facet {0:?} repeats a vertex")]
    RepeatedVertex(Vec<Vertex>),
    #[error("facet {inner} is contained in facet {outer}")]
    FacetContained { inner: Simplex, outer: Simplex },
    #[error("{0} is not a simplex of the complex")]
    NotAFace(Simplex),
    #[error("stellar subdivision needs a simplex of dimension at least 1, got vertex {0}")]
    VertexSubdivision(Simplex),
    #[error("local order is cyclic")]
    CyclicLocalOrder,
    #[error("local order does not totally order simplex {0}")]
    NotLocallyOrdered(Simplex),
    #[error("local order mentions vertex {0} outside the complex")]
    UnknownVertex(Vertex),
    #[error("complex is not pure: facet {0} has the wrong dimension")]
    NotPure(Simplex),
    #[error("expected dimension {expected}, complex has dimension {found}")]
    DimensionMismatch { expected: isize, found: isize },
}

/// A simplex as a sorted, duplicate-free vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = SimplicialError;

    fn try_from(v: Vec<Vertex>) -> Result<Self, Self::Error> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl Simplex {
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, SimplicialError> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(SimplicialError::RepeatedVertex(vertices));
        }
        Ok(Simplex(vertices))
    }

    /// Caller guarantees the input is sorted and duplicate-free.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self` is a (not necessarily proper) face of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn minus(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains_vertex(*v))
                .collect(),
        )
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    pub fn without(&self, v: Vertex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: Vertex) -> Simplex {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Simplex(out)
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    /// Codimension-one faces.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().map(move |&v| self.without(v))
    }

    /// Key for the canonical (dimension, lexicographic) order.
    pub fn canonical_key(&self) -> (usize, &[Vertex]) {
        (self.0.len(), &self.0)
    }

    pub fn name(&self) -> Id {
        Id::Str(self.to_string())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

fn canonical_sort(simplices: &mut Vec<Simplex>) {
    simplices.sort_unstable_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    simplices.dedup();
}

/// A finite abstract simplicial complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
    local_order: Option<Vec<(Vertex, Vertex)>>,
}

impl SimplicialComplex {
    /// Builds a complex from a facet list.
    ///
    /// Repeated facets are dropped; a facet contained in another is an error.
    pub fn new(facets: Vec<Vec<Vertex>>) -> Result<Self, SimplicialError> {
        let mut simplices = Vec::with_capacity(facets.len());
        for f in facets {
            if f.is_empty() {
                return Err(SimplicialError::EmptyFacet);
            }
            simplices.push(Simplex::new(f)?);
        }
        canonical_sort(&mut simplices);
        for (i, a) in simplices.iter().enumerate() {
            if let Some(b) = simplices[i + 1..]
                .iter()
                .find(|b| b.len() > a.len() && a.is_face_of(b))
            {
                return Err(SimplicialError::FacetContained {
                    inner: a.clone(),
                    outer: b.clone(),
                });
            }
        }
        Ok(SimplicialComplex {
            facets: simplices,
            local_order: None,
        })
    }

    /// The complex with no simplices (the (-1)-sphere).
    pub fn empty() -> Self {
        SimplicialComplex {
            facets: Vec::new(),
            local_order: None,
        }
    }

    /// Caller guarantees the simplices are pairwise non-nested.
    pub(crate) fn from_facets_unchecked(mut facets: Vec<Simplex>) -> Self {
        facets.retain(|f| !f.is_empty());
        canonical_sort(&mut facets);
        SimplicialComplex {
            facets,
            local_order: None,
        }
    }

    /// Closure of an arbitrary simplex family; keeps only the maximal ones.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all: Vec<Simplex> = simplices.into_iter().filter(|s| !s.is_empty()).collect();
        canonical_sort(&mut all);
        let mut kept: Vec<Simplex> = Vec::new();
        for s in all.into_iter().rev() {
            if !kept.iter().any(|k| k.len() > s.len() && s.is_face_of(k)) {
                kept.push(s);
            }
        }
        Self::from_facets_unchecked(kept)
    }

    pub(crate) fn from_maximal_chains(
        chains: Vec<Vec<Vertex>>,
        order: Vec<(Vertex, Vertex)>,
    ) -> Self {
        let facets = chains
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                Simplex::from_sorted(c)
            })
            .collect();
        let mut k = Self::from_facets_unchecked(facets);
        k.local_order = Some(order);
        k
    }

    /// Attaches a local order given by relation pairs `u < v`, checking that
    /// every simplex is totally ordered.
    pub fn with_local_order(
        mut self,
        pairs: Vec<(Vertex, Vertex)>,
    ) -> Result<Self, SimplicialError> {
        let verts = self.vertices();
        for &(u, v) in &pairs {
            for w in [u, v] {
                if verts.binary_search(&w).is_err() {
                    return Err(SimplicialError::UnknownVertex(w));
                }
            }
        }
        self.local_order = Some(pairs);
        let order = self
            .local_order_poset()
            .ok_or(SimplicialError::CyclicLocalOrder)?;
        for f in &self.facets {
            let idx: Vec<usize> = f
                .vertices()
                .iter()
                .map(|v| verts.binary_search(v).unwrap())
                .collect();
            if idx
                .iter()
                .tuple_combinations()
                .any(|(&a, &b)| !order.comparable(a, b))
            {
                return Err(SimplicialError::NotLocallyOrdered(f.clone()));
            }
        }
        Ok(self)
    }

    pub fn local_order(&self) -> Option<&[(Vertex, Vertex)]> {
        self.local_order.as_deref()
    }

    /// The local order as a poset on [`Self::vertices`] (same index order).
    pub fn local_order_poset(&self) -> Option<Poset> {
        let pairs = self.local_order.as_ref()?;
        let verts = self.vertices();
        let ids: Vec<Id> = verts.iter().map(|&v| Id::from(v)).collect();
        let idx: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(u, v)| {
                (
                    verts.binary_search(u).unwrap(),
                    verts.binary_search(v).unwrap(),
                )
            })
            .collect();
        Poset::from_index_pairs(ids, &idx).ok()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; -1 for the empty complex.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// Sorted vertex list.
    pub fn vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self
            .facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        set.into_iter().collect()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().last().copied())
            .max()
    }

    /// All nonempty simplices in canonical order.
    pub fn faces(&self) -> Vec<Simplex> {
        let set: BTreeSet<Simplex> = self
            .facets
            .iter()
            .flat_map(|f| f.faces().collect::<Vec<_>>())
            .collect();
        let mut out: Vec<Simplex> = set.into_iter().collect();
        canonical_sort(&mut out);
        out
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<Simplex> {
        let set: BTreeSet<Simplex> = self
            .facets
            .iter()
            .filter(|f| f.len() > k)
            .flat_map(|f| {
                f.vertices()
                    .iter()
                    .copied()
                    .combinations(k + 1)
                    .map(Simplex::from_sorted)
                    .collect::<Vec<_>>()
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        !s.is_empty() && self.facets.iter().any(|f| s.is_face_of(f))
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dimension();
        if d < 0 {
            return Vec::new();
        }
        let mut counts = vec![0usize; d as usize + 1];
        for s in self.faces() {
            counts[s.len() - 1] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn require_face(&self, s: &Simplex) -> Result<(), SimplicialError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(SimplicialError::NotAFace(s.clone()))
        }
    }

    /// Closed star: the facets containing `s`, with all their faces.
    pub fn star(&self, s: &Simplex) -> Result<SimplicialComplex, SimplicialError> {
        self.require_face(s)?;
        Ok(Self::from_facets_unchecked(
            self.facets
                .iter()
                .filter(|f| s.is_face_of(f))
                .cloned()
                .collect(),
        ))
    }

    /// `{t : t ∪ s ∈ K, t ∩ s = ∅}`. Empty when `s` is a facet.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex, SimplicialError> {
        self.require_face(s)?;
        Ok(Self::from_facets_unchecked(
            self.facets
                .iter()
                .filter(|f| s.is_face_of(f))
                .map(|f| f.minus(s))
                .collect(),
        ))
    }

    /// Join with a complex on a disjoint vertex set.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let facets = self
            .facets
            .iter()
            .cartesian_product(&other.facets)
            .map(|(a, b)| a.union(b))
            .collect();
        Self::from_facets_unchecked(facets)
    }

    /// Cone with the given apex (the apex alone for the empty complex).
    pub fn cone(&self, apex: Vertex) -> SimplicialComplex {
        if self.is_empty() {
            return Self::from_facets_unchecked(vec![Simplex::from_sorted(vec![apex])]);
        }
        Self::from_facets_unchecked(self.facets.iter().map(|f| f.with(apex)).collect())
    }

    /// Union of two complexes.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_simplices(self.facets.iter().chain(&other.facets).cloned())
    }

    /// Number of facets containing each codimension-one face.
    pub fn ridge_degrees(&self) -> BTreeMap<Simplex, usize> {
        let mut deg = BTreeMap::new();
        let d = self.dimension();
        for f in self.facets.iter().filter(|f| f.dim() == d && d >= 1) {
            for r in f.boundary_faces() {
                *deg.entry(r).or_insert(0) += 1;
            }
        }
        deg
    }

    /// Subcomplex generated by the ridges that lie in exactly one facet.
    pub fn boundary(&self) -> SimplicialComplex {
        Self::from_facets_unchecked(
            self.ridge_degrees()
                .into_iter()
                .filter(|&(_, n)| n == 1)
                .map(|(r, _)| r)
                .collect(),
        )
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let verts = self.vertices();
        let pos: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for f in &self.facets {
            let first = pos[&f.vertices()[0]];
            for v in &f.vertices()[1..] {
                let (a, b) = (find(&mut parent, first), find(&mut parent, pos[v]));
                parent[a] = b;
            }
        }
        let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for (i, &v) in verts.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<Vertex>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Face poset ordered by inclusion; element `i` is the `i`-th face in
    /// canonical order and is named like `0,1,2`.
    pub fn face_poset(&self) -> Poset {
        let faces = self.faces();
        let index: HashMap<&Simplex, usize> =
            faces.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut pairs = Vec::new();
        for (i, s) in faces.iter().enumerate() {
            if s.len() > 1 {
                for r in s.boundary_faces() {
                    pairs.push((index[&r], i));
                }
            }
        }
        let ids = faces.iter().map(Simplex::name).collect();
        Poset::from_index_pairs(ids, &pairs).expect("inclusion is a partial order")
    }

    /// `n`-th barycentric subdivision.
    ///
    /// Vertices of each step are numbered by the canonical face index of the
    /// previous complex, and the local order is containment of faces.
    pub fn barycentric_subdivision(&self, n: usize) -> SimplicialComplex {
        let mut k = self.clone();
        for _ in 0..n {
            k = k.subdivide_once();
        }
        k
    }

    fn subdivide_once(&self) -> SimplicialComplex {
        let faces = self.faces();
        let index: HashMap<&Simplex, Vertex> = faces
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i as Vertex))
            .collect();
        let mut facets = Vec::new();
        for f in &self.facets {
            for perm in f.vertices().iter().copied().permutations(f.len()) {
                let mut chain = Vec::with_capacity(perm.len());
                let mut prefix: Vec<Vertex> = Vec::with_capacity(perm.len());
                for v in perm {
                    prefix.push(v);
                    let mut s = prefix.clone();
                    s.sort_unstable();
                    chain.push(index[&Simplex::from_sorted(s)]);
                }
                chain.sort_unstable();
                facets.push(Simplex::from_sorted(chain));
            }
        }
        let mut order = Vec::new();
        for (i, s) in faces.iter().enumerate() {
            if s.len() > 1 {
                for r in s.boundary_faces() {
                    order.push((index[&r], i as Vertex));
                }
            }
        }
        order.sort_unstable();
        let mut out = Self::from_facets_unchecked(facets);
        out.local_order = Some(order);
        out
    }

    /// Replaces the star of `s` by the cone from a new vertex over
    /// `∂s * link(s)`. The new vertex is one more than the largest id.
    pub fn stellar_subdivide(&self, s: &Simplex) -> Result<SimplicialComplex, SimplicialError> {
        self.require_face(s)?;
        if s.len() < 2 {
            return Err(SimplicialError::VertexSubdivision(s.clone()));
        }
        let apex = self.max_vertex().unwrap() + 1;
        let mut facets = Vec::new();
        for f in &self.facets {
            if s.is_face_of(f) {
                let rest = f.minus(s);
                for v in s.vertices() {
                    facets.push(s.without(*v).union(&rest).with(apex));
                }
            } else {
                facets.push(f.clone());
            }
        }
        Ok(Self::from_facets_unchecked(facets))
    }

    /// Renames vertices; `map` must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut v: Vec<Vertex> = f.vertices().iter().map(|&x| map(x)).collect();
                v.sort_unstable();
                Simplex::from_sorted(v)
            })
            .collect();
        let mut out = Self::from_facets_unchecked(facets);
        out.local_order = self
            .local_order
            .as_ref()
            .map(|o| o.iter().map(|&(a, b)| (map(a), map(b))).collect());
        out
    }

    /// Facet lists as plain vectors, canonical order.
    pub fn facet_lists(&self) -> Vec<Vec<Vertex>> {
        self.facets.iter().map(|f| f.vertices().to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates_facets() {
        assert!(matches!(
            SimplicialComplex::new(vec![vec![0, 1], vec![0]]),
            Err(SimplicialError::FacetContained { .. })
        ));
        assert!(matches!(
            SimplicialComplex::new(vec![vec![0, 0]]),
            Err(SimplicialError::RepeatedVertex(_))
        ));
        let k = SimplicialComplex::new(vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(k.facets().len(), 1);
    }

    #[test]
    fn star_and_link_examples() {
        let circle = fixtures::simplex_boundary(2);
        assert_eq!(circle.star(&s(&[0])).unwrap().f_vector(), vec![3, 2]);
        assert_eq!(circle.link(&s(&[0])).unwrap().f_vector(), vec![2]);

        let sphere = fixtures::simplex_boundary(3);
        assert_eq!(
            sphere.link(&s(&[0, 1])).unwrap().facet_lists(),
            vec![vec![2], vec![3]]
        );

        let tri = fixtures::simplex(2);
        assert_eq!(tri.star(&s(&[0, 1, 2])).unwrap(), tri);
        assert!(tri.link(&s(&[0, 1, 2])).unwrap().is_empty());
        assert!(matches!(
            tri.link(&s(&[0, 5])),
            Err(SimplicialError::NotAFace(_))
        ));
    }

    #[test]
    fn barycentric_examples() {
        let circle = fixtures::simplex_boundary(2);
        assert_eq!(circle.barycentric_subdivision(0), circle);
        assert_eq!(circle.barycentric_subdivision(1).f_vector(), vec![6, 6]);
        assert_eq!(
            fixtures::simplex(2).barycentric_subdivision(1).f_vector(),
            vec![7, 12, 6]
        );
        assert_eq!(
            fixtures::simplex_boundary(4)
                .barycentric_subdivision(1)
                .facets()
                .len(),
            120
        );
    }

    #[test]
    fn stellar_examples() {
        let circle = fixtures::simplex_boundary(2);
        let square = circle.stellar_subdivide(&s(&[0, 1])).unwrap();
        assert_eq!(square.f_vector(), vec![4, 4]);
        let fan = fixtures::simplex(2)
            .stellar_subdivide(&s(&[0, 1, 2]))
            .unwrap();
        assert_eq!(
            fan.facet_lists(),
            vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        let sphere = fixtures::simplex_boundary(3)
            .stellar_subdivide(&s(&[0, 1, 2]))
            .unwrap();
        assert_eq!(sphere.euler_characteristic(), 2);
        assert!(matches!(
            circle.stellar_subdivide(&s(&[0])),
            Err(SimplicialError::VertexSubdivision(_))
        ));
    }

    #[test]
    fn euler_and_f_vectors() {
        let sphere = fixtures::simplex_boundary(3);
        assert_eq!(sphere.f_vector(), vec![4, 6, 4]);
        assert_eq!(sphere.euler_characteristic(), 2);
        assert_eq!(fixtures::torus().euler_characteristic(), 0);
        assert_eq!(fixtures::torus().f_vector(), vec![7, 21, 14]);
        assert_eq!(fixtures::point().euler_characteristic(), 1);
    }

    #[test]
    fn face_poset_sizes() {
        assert_eq!(fixtures::simplex(1).face_poset().len(), 3);
        assert_eq!(fixtures::simplex_boundary(2).face_poset().len(), 6);
        assert_eq!(fixtures::simplex_boundary(3).face_poset().len(), 14);
    }

    #[test]
    fn local_orders_are_checked() {
        let tri = fixtures::simplex(2);
        assert!(tri.clone().with_local_order(vec![(0, 1), (1, 2)]).is_ok());
        assert!(matches!(
            tri.clone().with_local_order(vec![(0, 1), (0, 2)]),
            Err(SimplicialError::NotLocallyOrdered(_))
        ));
        assert!(matches!(
            tri.with_local_order(vec![(0, 1), (1, 2), (2, 0)]),
            Err(SimplicialError::CyclicLocalOrder)
        ));
    }

    #[test]
    fn boundary_and_components() {
        let path = fixtures::path(2);
        assert_eq!(path.boundary().facet_lists(), vec![vec![0], vec![2]]);
        assert!(fixtures::simplex_boundary(3).boundary().is_empty());
        let two = SimplicialComplex::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
    }
}
