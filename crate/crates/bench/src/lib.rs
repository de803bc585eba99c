//! Shared inputs for the benchmarks.

use combifold::fixtures;
use combifold::SimplicialComplex;

/// `sd^n` of the boundary of the `(d+1)`-simplex.
pub fn subdivided_sphere(d: usize, n: usize) -> SimplicialComplex {
    fixtures::simplex_boundary(d + 1).barycentric_subdivision(n)
}
