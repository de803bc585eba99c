//! Small named complexes used by tests, benches and the CLI examples.

use crate::id::Id;
use crate::poset::Poset;
use crate::simplicial::{SimplicialComplex, Vertex};

/// The full simplex on vertices `0..=d`.
pub fn simplex(d: usize) -> SimplicialComplex {
    SimplicialComplex::new(vec![(0..=d as Vertex).collect()]).unwrap()
}

/// The boundary of the `d`-simplex, a `(d-1)`-sphere on `d + 1` vertices.
pub fn simplex_boundary(d: usize) -> SimplicialComplex {
    let all: Vec<Vertex> = (0..=d as Vertex).collect();
    let facets = (0..=d)
        .map(|i| all.iter().copied().filter(|&v| v != i as Vertex).collect())
        .collect();
    SimplicialComplex::new(facets).unwrap()
}

pub fn point() -> SimplicialComplex {
    simplex(0)
}

/// Path `0 - 1 - ... - n` with `n` edges.
pub fn path(n: usize) -> SimplicialComplex {
    SimplicialComplex::new((0..n as Vertex).map(|i| vec![i, i + 1]).collect()).unwrap()
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> SimplicialComplex {
    let n = n as Vertex;
    SimplicialComplex::new((0..n).map(|i| vec![i, (i + 1) % n]).collect()).unwrap()
}

/// The 7-vertex Möbius torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> SimplicialComplex {
    let facets = (0..7u32)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    SimplicialComplex::new(facets).unwrap()
}

/// Two vertices joined by three edges, subdivided so it is simplicial:
/// vertex 0 and vertex 1 both have degree 3.
pub fn theta_graph() -> SimplicialComplex {
    SimplicialComplex::new(vec![
        vec![0, 2],
        vec![2, 1],
        vec![0, 3],
        vec![3, 1],
        vec![0, 4],
        vec![4, 1],
    ])
    .unwrap()
}

fn ids(names: &[&str]) -> Vec<Id> {
    names.iter().map(|&s| Id::from(s)).collect()
}

fn pairs(p: &[(&str, &str)]) -> Vec<(Id, Id)> {
    p.iter().map(|&(a, b)| (Id::from(a), Id::from(b))).collect()
}

/// Square cell: vertices `a b c d`, edges `ab bc cd da`, one 2-cell `F`.
pub fn square_poset() -> Poset {
    Poset::new(
        ids(&["a", "b", "c", "d", "ab", "bc", "cd", "da", "F"]),
        &pairs(&[
            ("a", "ab"),
            ("b", "ab"),
            ("b", "bc"),
            ("c", "bc"),
            ("c", "cd"),
            ("d", "cd"),
            ("d", "da"),
            ("a", "da"),
            ("ab", "F"),
            ("bc", "F"),
            ("cd", "F"),
            ("da", "F"),
        ]),
    )
    .unwrap()
}

/// A 2-cell glued over a path of two edges; not a ball complex.
pub fn broken_cell_poset() -> Poset {
    Poset::new(
        ids(&["a", "b", "c", "ab", "bc", "F"]),
        &pairs(&[
            ("a", "ab"),
            ("b", "ab"),
            ("b", "bc"),
            ("c", "bc"),
            ("ab", "F"),
            ("bc", "F"),
        ]),
    )
    .unwrap()
}

/// Path `a - b - c` as a cell poset.
pub fn path_poset() -> Poset {
    Poset::new(
        ids(&["a", "b", "c", "ab", "bc"]),
        &pairs(&[("a", "ab"), ("b", "ab"), ("b", "bc"), ("c", "bc")]),
    )
    .unwrap()
}

/// Single edge `a - c` as a cell poset.
pub fn edge_poset() -> Poset {
    Poset::new(ids(&["a", "c", "ac"]), &pairs(&[("a", "ac"), ("c", "ac")])).unwrap()
}
