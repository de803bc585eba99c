//! Bundle constructions: colorings of locally ordered complexes, prismatic
//! decompositions of assembly chains, and the Gauss tangent functor.

mod coloring;
mod gauss;
mod prism;

pub use coloring::{validate_coloring, Coloring, ColoringError, ColoringReport};
pub use gauss::{
    gauss_coloring, gauss_morphism, gauss_object, gauss_objects, tangent_diagram, tangent_total,
    CombinatorialManifold, GaussError, TangentReport, TangentTotal, MARK,
};
pub use prism::{prism_complex, PrismChain, PrismComplex, PrismError, PrismReport};
