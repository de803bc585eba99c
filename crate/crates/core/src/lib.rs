//! Combinatorial topology of ball complexes, assemblies, finite Alexandroff
//! spaces and tangent bundles of combinatorial manifolds, with checkable
//! certificates.

pub mod alexandroff;
pub mod assembly;
pub mod ballcomplex;
pub mod bundles;
pub mod fixtures;
pub mod id;
pub mod io;
pub mod poset;
pub mod recognition;
pub mod settings;
pub mod simplicial;

pub use assembly::{compose, verify_assembly, verify_assembly_ids, Assembly, AssemblyError};
pub use ballcomplex::{assemble_ball, BallComplex, BallComplexError};
pub use bundles::{
    gauss_coloring, prism_complex, tangent_total, validate_coloring, Coloring,
    CombinatorialManifold, PrismChain,
};
pub use id::Id;
pub use poset::{Poset, PosetDiagram, PosetError};
pub use recognition::{is_ball, is_sphere, Status, Verdict};
pub use settings::{Settings, DEFAULT_FLIP_BUDGET};
pub use simplicial::{Simplex, SimplicialComplex, SimplicialError, Vertex};
