//! JSON documents for every input and output type.
//!
//! Top-level documents may carry `"schema": "combifold/1"`; any other value
//! is rejected. Unknown fields are rejected everywhere.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::alexandroff::{AlexandroffError, Preorder, SetCover};
use crate::assembly::{verify_assembly_ids, Assembly, AssemblyError};
use crate::ballcomplex::{BallComplex, BallComplexError};
use crate::bundles::{Coloring, PrismChain, PrismError};
use crate::id::Id;
use crate::poset::{Poset, PosetError};
use crate::settings::Settings;
use crate::simplicial::{SimplicialComplex, SimplicialError, Vertex};

pub const SCHEMA: &str = "combifold/1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("field `{path}`: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    BallComplex(#[from] BallComplexError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Alexandroff(#[from] AlexandroffError),
    #[error(transparent)]
    Prism(#[from] PrismError),
    #[error("label of vertex {0} is given twice")]
    DuplicateVertexLabel(Vertex),
    #[error("label of edge {0} -> {1} is given twice")]
    DuplicateEdgeLabel(Vertex, Vertex),
    #[error("edge {0} -> {1} joins unlabelled vertices")]
    UnlabelledEdge(Vertex, Vertex),
}

/// Parses a document, with line and column for syntax errors and a field
/// path for shape errors.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if let Some(obj) = value.as_object_mut() {
        if let Some(schema) = obj.remove("schema") {
            if schema.as_str() != Some(SCHEMA) {
                return Err(IoError::Schema(schema.to_string()));
            }
        }
    }
    serde_path_to_error::deserialize(value).map_err(|e| IoError::Field {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// Serializes a document and stamps it with the schema tag.
pub fn to_value<T: Serialize>(doc: &T) -> Value {
    let mut value = serde_json::to_value(doc).expect("documents serialize");
    if let Some(obj) = value.as_object_mut() {
        obj.insert("schema".into(), Value::from(SCHEMA));
    }
    value
}

/// A poset given by its covers; any generating relations `x <= y` are
/// accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<Id>,
    #[serde(default)]
    pub covers: Vec<(Id, Id)>,
}

impl PosetDoc {
    pub fn from_poset(p: &Poset) -> Self {
        PosetDoc {
            elements: p.ids().to_vec(),
            covers: p.cover_ids(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset, IoError> {
        Ok(Poset::new(self.elements.clone(), &self.covers)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallComplexDoc {
    pub elements: Vec<Id>,
    #[serde(default)]
    pub covers: Vec<(Id, Id)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Id>,
}

impl BallComplexDoc {
    pub fn from_complex(c: &BallComplex) -> Self {
        let p = c.poset();
        BallComplexDoc {
            elements: p.ids().to_vec(),
            covers: p.cover_ids(),
            marked: c.marked_id().cloned(),
        }
    }

    pub fn poset(&self) -> Result<Poset, IoError> {
        Ok(Poset::new(self.elements.clone(), &self.covers)?)
    }

    pub fn load(&self, settings: &Settings) -> Result<BallComplex, IoError> {
        let c = BallComplex::validate(self.poset()?, settings)?;
        Ok(match &self.marked {
            Some(id) => c.with_marked(id)?,
            None => c,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDoc {
    pub facets: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_order: Option<Vec<(Vertex, Vertex)>>,
}

impl SimplicialDoc {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        SimplicialDoc {
            facets: k.facet_lists(),
            local_order: k.local_order().map(<[_]>::to_vec),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, IoError> {
        let k = SimplicialComplex::new(self.facets.clone())?;
        Ok(match &self.local_order {
            Some(order) => k.with_local_order(order.clone())?,
            None => k,
        })
    }
}

/// An assembly with both endpoints inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssemblyDoc {
    pub source: BallComplexDoc,
    pub target: BallComplexDoc,
    pub map: Vec<(Id, Id)>,
}

impl AssemblyDoc {
    pub fn from_assembly(a: &Assembly) -> Self {
        AssemblyDoc {
            source: BallComplexDoc::from_complex(a.source()),
            target: BallComplexDoc::from_complex(a.target()),
            map: a.map_ids(),
        }
    }

    pub fn load(&self, settings: &Settings) -> Result<Assembly, IoError> {
        let source = self.source.load(settings)?;
        let target = self.target.load(settings)?;
        Ok(verify_assembly_ids(&self.map, &source, &target, settings)?)
    }
}

/// The map of an assembly whose endpoints are stored separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub map: Vec<(Id, Id)>,
}

impl MapDoc {
    pub fn load(
        &self,
        source: &BallComplex,
        target: &BallComplex,
        settings: &Settings,
    ) -> Result<Assembly, IoError> {
        Ok(verify_assembly_ids(&self.map, source, target, settings)?)
    }
}

/// A preorder given by generating pairs `x <= y`, meaning `x ∈ o(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreorderDoc {
    pub points: Vec<Id>,
    #[serde(default)]
    pub leq: Vec<(Id, Id)>,
}

impl PreorderDoc {
    pub fn from_preorder(t: &Preorder) -> Self {
        PreorderDoc {
            points: t.points().to_vec(),
            leq: t.relation_pairs(),
        }
    }

    pub fn to_preorder(&self) -> Result<Preorder, IoError> {
        Ok(Preorder::new(self.points.clone(), &self.leq)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetCoverDoc {
    pub ground: Vec<Id>,
    pub members: Vec<Vec<Id>>,
}

impl SetCoverDoc {
    pub fn from_cover(c: &SetCover) -> Self {
        SetCoverDoc {
            ground: c.ground().to_vec(),
            members: c.member_ids(),
        }
    }

    pub fn to_cover(&self) -> Result<SetCover, IoError> {
        Ok(SetCover::new(self.ground.clone(), &self.members)?)
    }
}

/// Two topologies on the same points, for joins and inscriptions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreorderPairDoc {
    pub r: PreorderDoc,
    pub t: PreorderDoc,
}

/// A monotone map `phi: A -> B` for the directed cylinders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderDoc {
    pub a: PreorderDoc,
    pub b: PreorderDoc,
    pub phi: Vec<(Id, Id)>,
}

impl CylinderDoc {
    pub fn load(&self) -> Result<(Preorder, Preorder, Vec<usize>), IoError> {
        let a = self.a.to_preorder()?;
        let b = self.b.to_preorder()?;
        let phi = map_indices(&self.phi, a.len(), |id| a.index_of(id), |id| b.index_of(id))?;
        Ok((a, b, phi))
    }
}

/// A point set `S` and a subset `A` for the topology `D_A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DTopologyDoc {
    pub ground: Vec<Id>,
    pub subset: Vec<Id>,
}

/// Resolves id pairs to a total index map.
fn map_indices(
    pairs: &[(Id, Id)],
    len: usize,
    source: impl Fn(&Id) -> Option<usize>,
    target: impl Fn(&Id) -> Option<usize>,
) -> Result<Vec<usize>, AlexandroffError> {
    let mut map = vec![None; len];
    for (x, y) in pairs {
        let xi = source(x).ok_or_else(|| AlexandroffError::UnknownPoint(x.clone()))?;
        let yi = target(y).ok_or_else(|| AlexandroffError::UnknownPoint(y.clone()))?;
        if map[xi].replace(yi).is_some() {
            return Err(AlexandroffError::MapLength {
                expected: len,
                found: pairs.len(),
            });
        }
    }
    map.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(AlexandroffError::MapLength {
            expected: len,
            found: pairs.len(),
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexLabelDoc {
    pub vertex: Vertex,
    pub complex: BallComplexDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeLabelDoc {
    /// `(u, v)` with `u < v` in the local order.
    pub edge: (Vertex, Vertex),
    pub map: Vec<(Id, Id)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDoc {
    pub base: SimplicialDoc,
    pub vertex_labels: Vec<VertexLabelDoc>,
    pub edge_labels: Vec<EdgeLabelDoc>,
}

impl ColoringDoc {
    pub fn from_coloring(c: &Coloring) -> Self {
        ColoringDoc {
            base: SimplicialDoc::from_complex(&c.base),
            vertex_labels: c
                .vertex_labels
                .iter()
                .map(|(&vertex, q)| VertexLabelDoc {
                    vertex,
                    complex: BallComplexDoc::from_complex(q),
                })
                .collect(),
            edge_labels: c
                .edge_labels
                .iter()
                .map(|(&edge, a)| EdgeLabelDoc {
                    edge,
                    map: a.map_ids(),
                })
                .collect(),
        }
    }

    /// Edge labels are verified as assemblies between the vertex labels;
    /// the coloring conditions are left to `validate_coloring`.
    pub fn load(&self, settings: &Settings) -> Result<Coloring, IoError> {
        let base = self.base.to_complex()?;
        let mut vertex_labels = BTreeMap::new();
        for l in &self.vertex_labels {
            if vertex_labels
                .insert(l.vertex, l.complex.load(settings)?)
                .is_some()
            {
                return Err(IoError::DuplicateVertexLabel(l.vertex));
            }
        }
        let mut edge_labels = BTreeMap::new();
        for l in &self.edge_labels {
            let (u, v) = l.edge;
            let (Some(s), Some(t)) = (vertex_labels.get(&u), vertex_labels.get(&v)) else {
                return Err(IoError::UnlabelledEdge(u, v));
            };
            let a = verify_assembly_ids(&l.map, s, t, settings)?;
            if edge_labels.insert((u, v), a).is_some() {
                return Err(IoError::DuplicateEdgeLabel(u, v));
            }
        }
        Ok(Coloring {
            base,
            vertex_labels,
            edge_labels,
        })
    }
}

/// `Q_0 -> ... -> Q_m`; step `i` maps complex `i` to complex `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrismChainDoc {
    pub complexes: Vec<BallComplexDoc>,
    #[serde(default)]
    pub steps: Vec<Vec<(Id, Id)>>,
}

impl PrismChainDoc {
    pub fn from_chain(c: &PrismChain) -> Self {
        PrismChainDoc {
            complexes: c
                .complexes()
                .iter()
                .map(BallComplexDoc::from_complex)
                .collect(),
            steps: c.steps().iter().map(Assembly::map_ids).collect(),
        }
    }

    pub fn load(&self, settings: &Settings) -> Result<PrismChain, IoError> {
        let complexes = self
            .complexes
            .iter()
            .map(|q| q.load(settings))
            .collect::<Result<Vec<_>, _>>()?;
        if self.steps.len() + 1 != complexes.len() {
            return Err(PrismError::StepCount {
                complexes: complexes.len(),
                steps: self.steps.len(),
            }
            .into());
        }
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, m)| verify_assembly_ids(m, &complexes[i], &complexes[i + 1], settings))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PrismChain::new(complexes, steps)?)
    }
}
