use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::coloring::Coloring;
use crate::assembly::{verify_assembly, Assembly, AssemblyError};
use crate::ballcomplex::{BallComplex, BallComplexError};
use crate::id::Id;
use crate::poset::{DiagramError, Poset, PosetDiagram};
use crate::recognition::{homology, HomologyGroup, Status, Verdict};
use crate::settings::Settings;
use crate::simplicial::{
    PseudomanifoldReport, Simplex, SimplicialComplex, SimplicialError, Vertex,
};

/// Id of the marked cell in every Gauss object.
pub const MARK: &str = "M";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("manifold must have dimension at least 1, got {0}")]
    Dimension(isize),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error("complex is not a verified closed combinatorial manifold ({0:?})")]
    NotManifold(Status),
    #[error("{0} is not a face of {1}")]
    NotNested(Simplex, Simplex),
    #[error("Gauss object of {simplex} failed validation: {source}")]
    Object {
        simplex: Simplex,
        source: Box<BallComplexError>,
    },
    #[error("Gauss morphism {from} -> {to} failed verification: {source}")]
    Morphism {
        from: Simplex,
        to: Simplex,
        source: Box<AssemblyError>,
    },
    #[error("Gauss morphism {from} -> {to} does not preserve the mark")]
    Mark { from: Simplex, to: Simplex },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A closed combinatorial manifold of dimension at least 1 whose vertex
/// links are verified spheres.
#[derive(Clone, Debug)]
pub struct CombinatorialManifold {
    complex: SimplicialComplex,
    dim: usize,
    verdict: Verdict,
}

impl CombinatorialManifold {
    pub fn new(complex: SimplicialComplex, settings: &Settings) -> Result<Self, GaussError> {
        let d = complex.dimension();
        if d < 1 {
            return Err(GaussError::Dimension(d));
        }
        let verdict = complex.is_combinatorial_manifold(d as usize, settings)?;
        if verdict.status != Status::Verified {
            return Err(GaussError::NotManifold(verdict.status));
        }
        Ok(CombinatorialManifold {
            complex,
            dim: d as usize,
            verdict,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }
}

/// Face poset of the closed star of `s` plus a marked cell `M` of rank `n`
/// over the faces of the star not containing `s` (that is, `∂s * lk(s)`).
pub fn gauss_object(
    m: &CombinatorialManifold,
    s: &Simplex,
    settings: &Settings,
) -> Result<BallComplex, GaussError> {
    let poset = gauss_poset(m, s)?;
    let wrap = |e| GaussError::Object {
        simplex: s.clone(),
        source: Box::new(e),
    };
    BallComplex::validate(poset, settings)
        .map_err(wrap)?
        .with_marked(&Id::from(MARK))
        .map_err(wrap)
}

fn gauss_poset(m: &CombinatorialManifold, s: &Simplex) -> Result<Poset, GaussError> {
    let star = m.complex.star(s)?;
    let faces = star.faces();
    let index: HashMap<&Simplex, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mark = faces.len();
    let mut pairs = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        if f.len() > 1 {
            pairs.extend(f.boundary_faces().map(|r| (index[&r], i)));
        }
        if !s.is_face_of(f) {
            pairs.push((i, mark));
        }
    }
    let mut ids: Vec<Id> = faces.iter().map(Simplex::name).collect();
    ids.push(Id::from(MARK));
    Ok(
        Poset::from_index_pairs(ids, &pairs)
            .expect("star faces and the mark are partially ordered"),
    )
}

/// `G(s0 ⊆ s1)`: faces of `star(s0)` lying in `star(s1)` are fixed, every
/// other cell goes to the mark.
pub fn gauss_morphism(
    m: &CombinatorialManifold,
    s0: &Simplex,
    s1: &Simplex,
    settings: &Settings,
) -> Result<Assembly, GaussError> {
    let source = gauss_object(m, s0, settings)?;
    let target = gauss_object(m, s1, settings)?;
    gauss_morphism_between(s0, s1, &source, &target, settings)
}

fn gauss_map(
    s0: &Simplex,
    s1: &Simplex,
    source: &Poset,
    target: &Poset,
) -> Result<Vec<usize>, GaussError> {
    if !s0.is_face_of(s1) {
        return Err(GaussError::NotNested(s0.clone(), s1.clone()));
    }
    let mark = target
        .index_of(&Id::from(MARK))
        .expect("target is a Gauss object");
    Ok(source
        .ids()
        .iter()
        .map(|id| target.index_of(id).unwrap_or(mark))
        .collect())
}

fn gauss_morphism_between(
    s0: &Simplex,
    s1: &Simplex,
    source: &BallComplex,
    target: &BallComplex,
    settings: &Settings,
) -> Result<Assembly, GaussError> {
    let map = gauss_map(s0, s1, source.poset(), target.poset())?;
    let a = verify_assembly(&map, source, target, settings).map_err(|e| GaussError::Morphism {
        from: s0.clone(),
        to: s1.clone(),
        source: Box::new(e),
    })?;
    if a.verify_marked() != Ok(true) {
        return Err(GaussError::Mark {
            from: s0.clone(),
            to: s1.clone(),
        });
    }
    Ok(a)
}

/// Gauss objects for every face of `m`, in canonical face order.
pub fn gauss_objects(
    m: &CombinatorialManifold,
    settings: &Settings,
) -> Result<Vec<(Simplex, BallComplex)>, GaussError> {
    m.complex
        .faces()
        .into_iter()
        .map(|s| gauss_object(m, &s, settings).map(|g| (s, g)))
        .collect()
}

/// The coloring of `sd(m)` by Gauss objects: vertex `i` of the subdivision
/// is the `i`-th face of `m`, and the edge `s0 < s1` (face containment) is
/// labelled by `G(s0 ⊆ s1)`.
pub fn gauss_coloring(
    m: &CombinatorialManifold,
    settings: &Settings,
) -> Result<Coloring, GaussError> {
    let objects = gauss_objects(m, settings)?;
    let base = m.complex.barycentric_subdivision(1);
    let mut edge_labels = BTreeMap::new();
    for e in base.faces_of_dim(1) {
        let (u, v) = (e.vertices()[0], e.vertices()[1]);
        // Subdivision vertices are canonical face indices, so the smaller
        // index is the smaller face.
        let (s0, g0) = &objects[u as usize];
        let (s1, g1) = &objects[v as usize];
        edge_labels.insert((u, v), gauss_morphism_between(s0, s1, g0, g1, settings)?);
    }
    let vertex_labels = objects
        .into_iter()
        .enumerate()
        .map(|(i, (_, g))| (i as Vertex, g))
        .collect();
    Ok(Coloring {
        base,
        vertex_labels,
        edge_labels,
    })
}

/// The diagram `s ↦ G(s)` over the face poset of `m`, with the Gauss
/// morphisms on covers.
pub fn tangent_diagram(
    m: &CombinatorialManifold,
    settings: &Settings,
) -> Result<PosetDiagram, GaussError> {
    let objects = gauss_objects(m, settings)?;
    let base = m.complex.face_poset();
    let mut transitions = Vec::new();
    for &(p, q) in base.covers() {
        let (s0, g0) = &objects[p];
        let (s1, g1) = &objects[q];
        transitions.push(((p, q), gauss_map(s0, s1, g0.poset(), g1.poset())?));
    }
    let fibers = objects
        .into_iter()
        .map(|(_, g)| g.poset().clone())
        .collect();
    Ok(PosetDiagram::new(base, fibers, transitions)?)
}

/// Invariants of the tangent total space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub elements: usize,
    pub dimension: isize,
    pub f_vector: Vec<usize>,
    pub euler: i64,
    /// `χ(M) · χ(S^n)`.
    pub expected_euler: i64,
    pub pseudomanifold: PseudomanifoldReport,
    pub homology: Option<Vec<HomologyGroup>>,
    pub manifold: Option<Verdict>,
}

#[derive(Clone, Debug)]
pub struct TangentTotal {
    pub poset: Poset,
    pub complex: SimplicialComplex,
    pub report: TangentReport,
}

/// Order complex of the Grothendieck total of [`tangent_diagram`].
///
/// Homology and the vertex-link manifold test are optional since both grow
/// quickly with the dimension.
pub fn tangent_total(
    m: &CombinatorialManifold,
    settings: &Settings,
    with_homology: bool,
    with_manifold: bool,
) -> Result<TangentTotal, GaussError> {
    let diagram = tangent_diagram(m, settings)?;
    let poset = diagram.grothendieck_total();
    let complex = poset.order_complex();
    let n = m.dim;
    let chi_sphere = if n.is_multiple_of(2) { 2 } else { 0 };
    let manifold = if with_manifold {
        Some(complex.is_combinatorial_manifold(2 * n, settings)?)
    } else {
        None
    };
    let report = TangentReport {
        elements: poset.len(),
        dimension: complex.dimension(),
        f_vector: complex.f_vector(),
        euler: complex.euler_characteristic(),
        expected_euler: m.complex.euler_characteristic() * chi_sphere,
        pseudomanifold: complex.pseudomanifold_report(),
        homology: with_homology.then(|| homology(&complex)),
        manifold,
    };
    Ok(TangentTotal {
        poset,
        complex,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::validate_coloring;
    use crate::fixtures;
    use crate::settings::DEFAULT_FLIP_BUDGET;

    fn settings() -> Settings {
        Settings::new(DEFAULT_FLIP_BUDGET, true)
    }

    fn manifold(k: SimplicialComplex) -> CombinatorialManifold {
        CombinatorialManifold::new(k, &settings()).unwrap()
    }

    fn simplex(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn objects_on_triangle_boundary() {
        let m = manifold(fixtures::simplex_boundary(2));
        let gv = gauss_object(&m, &simplex(&[0]), &settings()).unwrap();
        assert_eq!(gv.f_vector(), vec![3, 3]);
        assert_eq!(gv.marked_id(), Some(&Id::from(MARK)));
        let ge = gauss_object(&m, &simplex(&[0, 1]), &settings()).unwrap();
        assert_eq!(ge.f_vector(), vec![2, 2]);
    }

    #[test]
    fn object_of_a_vertex_of_the_tetrahedron_boundary() {
        let m = manifold(fixtures::simplex_boundary(3));
        let g = gauss_object(&m, &simplex(&[0]), &settings()).unwrap();
        assert_eq!(g.len(), 14);
        assert_eq!(g.f_vector(), vec![4, 6, 4]);
        assert_eq!(g.status(), Status::Verified);
    }

    #[test]
    fn morphisms() {
        let m = manifold(fixtures::simplex_boundary(2));
        let id = gauss_morphism(&m, &simplex(&[0]), &simplex(&[0]), &settings()).unwrap();
        assert_eq!(id.map(), (0..6).collect::<Vec<_>>().as_slice());
        let f = gauss_morphism(&m, &simplex(&[0]), &simplex(&[0, 1]), &settings()).unwrap();
        assert_eq!(f.verify_marked(), Ok(true));
        let sent_to_mark: Vec<String> = f
            .map_ids()
            .into_iter()
            .filter(|(_, y)| *y == Id::from(MARK))
            .map(|(x, _)| x.to_string())
            .collect();
        assert_eq!(sent_to_mark, vec!["2", "0,2", "M"]);
        let err = gauss_morphism(&m, &simplex(&[0, 1]), &simplex(&[0]), &settings()).unwrap_err();
        assert!(matches!(err, GaussError::NotNested(..)));
    }

    #[test]
    fn point_and_non_manifolds_are_rejected() {
        assert!(matches!(
            CombinatorialManifold::new(fixtures::point(), &settings()),
            Err(GaussError::Dimension(0))
        ));
        assert!(matches!(
            CombinatorialManifold::new(fixtures::theta_graph(), &settings()),
            Err(GaussError::NotManifold(Status::Refuted))
        ));
    }

    #[test]
    fn coloring_of_triangle_boundary() {
        let m = manifold(fixtures::simplex_boundary(2));
        let c = gauss_coloring(&m, &settings()).unwrap();
        assert_eq!(c.base.f_vector(), vec![6, 6]);
        assert_eq!(c.vertex_labels.len(), 6);
        assert_eq!(c.edge_labels.len(), 6);
        assert!(validate_coloring(&c, true).is_ok());
    }

    #[test]
    fn tangent_total_of_triangle_boundary_is_a_torus() {
        let m = manifold(fixtures::simplex_boundary(2));
        let t = tangent_total(&m, &settings(), true, true).unwrap();
        assert_eq!(t.report.elements, 30);
        assert!(t.report.pseudomanifold.is_closed_pseudomanifold());
        assert_eq!(t.report.euler, 0);
        assert_eq!(
            t.report.homology.as_ref().unwrap()[1],
            HomologyGroup::free(2)
        );
        assert_eq!(t.report.manifold.as_ref().unwrap().status, Status::Verified);
    }

    #[test]
    fn functorial_on_full_flags_of_the_tetrahedron_boundary() {
        let m = manifold(fixtures::simplex_boundary(3));
        let mut flags = 0;
        for t in m.complex().facets() {
            for e in t.boundary_faces() {
                for v in e.boundary_faces() {
                    let ve = gauss_morphism(&m, &v, &e, &settings()).unwrap();
                    let et = gauss_morphism(&m, &e, t, &settings()).unwrap();
                    let vt = gauss_morphism(&m, &v, t, &settings()).unwrap();
                    let composite: Vec<usize> = ve.map().iter().map(|&y| et.map()[y]).collect();
                    assert_eq!(composite, vt.map());
                    flags += 1;
                }
            }
        }
        assert_eq!(flags, 24);
    }

    #[test]
    fn coloring_of_tetrahedron_boundary() {
        let m = manifold(fixtures::simplex_boundary(3));
        let c = gauss_coloring(&m, &settings()).unwrap();
        let report = validate_coloring(&c, true).unwrap();
        assert_eq!(report.vertices, 14);
        assert_eq!(report.triangles, 24);
    }

    #[test]
    fn tangent_total_of_tetrahedron_boundary() {
        let m = manifold(fixtures::simplex_boundary(3));
        let t = tangent_total(&m, &settings(), false, false).unwrap();
        assert_eq!(t.report.dimension, 4);
        assert!(t.report.pseudomanifold.is_closed_pseudomanifold());
        assert_eq!(t.report.euler, 4);
        assert_eq!(t.report.expected_euler, 4);
    }
}
