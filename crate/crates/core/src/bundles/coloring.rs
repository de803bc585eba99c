use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::Assembly;
use crate::ballcomplex::BallComplex;
use crate::id::Id;
use crate::recognition::Status;
use crate::simplicial::{SimplicialComplex, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("base complex carries no local order")]
    NoLocalOrder,
    #[error("vertex {0} has no label")]
    MissingVertexLabel(Vertex),
    #[error("edge {0} -> {1} has no label")]
    MissingEdgeLabel(Vertex, Vertex),
    #[error("label of edge {0} -> {1} does not run between the vertex labels")]
    EndpointMismatch(Vertex, Vertex),
    #[error("label of edge {0} -> {1} is not accepted ({2:?})")]
    EdgeStatus(Vertex, Vertex, Status),
    #[error("triangle {triangle:?} does not commute at {element}")]
    NonCommuting { triangle: [Vertex; 3], element: Id },
}

/// Labels on a locally ordered complex: ball complexes on vertices and
/// assemblies on edges, oriented by the local order.
#[derive(Clone, Debug)]
pub struct Coloring {
    pub base: SimplicialComplex,
    pub vertex_labels: BTreeMap<Vertex, BallComplex>,
    /// Keyed by `(u, v)` with `u < v` in the local order.
    pub edge_labels: BTreeMap<(Vertex, Vertex), Assembly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
}

/// Checks labels and endpoints on every edge, then commutativity
/// `e(v,w) ∘ e(u,v) = e(u,w)` on every triangle `u < v < w`, in canonical
/// simplex order.
pub fn validate_coloring(c: &Coloring, strict: bool) -> Result<ColoringReport, ColoringError> {
    let order = c
        .base
        .local_order_poset()
        .ok_or(ColoringError::NoLocalOrder)?;
    let verts = c.base.vertices();
    let pos = |v: Vertex| verts.binary_search(&v).expect("vertex of the base");
    let sorted = |simplex: &[Vertex]| -> Vec<Vertex> {
        let mut s = simplex.to_vec();
        s.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if order.le(pos(a), pos(b)) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        s
    };
    for &v in &verts {
        if !c.vertex_labels.contains_key(&v) {
            return Err(ColoringError::MissingVertexLabel(v));
        }
    }
    let edges = c.base.faces_of_dim(1);
    for e in &edges {
        let s = sorted(e.vertices());
        let (u, v) = (s[0], s[1]);
        let label = c
            .edge_labels
            .get(&(u, v))
            .ok_or(ColoringError::MissingEdgeLabel(u, v))?;
        if label.source().poset() != c.vertex_labels[&u].poset()
            || label.target().poset() != c.vertex_labels[&v].poset()
        {
            return Err(ColoringError::EndpointMismatch(u, v));
        }
        if !label.status().accepts(strict) {
            return Err(ColoringError::EdgeStatus(u, v, label.status()));
        }
    }
    let triangles = c.base.faces_of_dim(2);
    for t in &triangles {
        let s = sorted(t.vertices());
        let (u, v, w) = (s[0], s[1], s[2]);
        let (uv, vw, uw) = (
            &c.edge_labels[&(u, v)],
            &c.edge_labels[&(v, w)],
            &c.edge_labels[&(u, w)],
        );
        for (x, &y) in uv.map().iter().enumerate() {
            if vw.map()[y] != uw.map()[x] {
                return Err(ColoringError::NonCommuting {
                    triangle: [u, v, w],
                    element: uv.source().poset().id(x).clone(),
                });
            }
        }
    }
    Ok(ColoringReport {
        vertices: verts.len(),
        edges: edges.len(),
        triangles: triangles.len(),
    })
}
