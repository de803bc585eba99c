//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use combifold::alexandroff::Preorder;
use combifold::assembly::Assembly;
use combifold::ballcomplex::BallComplex;
use combifold::bundles::PrismChain;
use combifold::{
    assemble_ball, fixtures, Id, Poset, Settings, SimplicialComplex, Vertex, DEFAULT_FLIP_BUDGET,
};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn settings() -> Settings {
    Settings::new(DEFAULT_FLIP_BUDGET, true)
}

/// Dense relation matrix: `rel[x][y]` iff `x <= y`.
pub type Relation = Vec<Vec<bool>>;

pub fn points(n: usize) -> Vec<Id> {
    (0..n as i64).map(Id::Int).collect()
}

fn is_transitive(rel: &Relation) -> bool {
    let n = rel.len();
    (0..n).all(|x| (0..n).all(|y| !rel[x][y] || (0..n).all(|z| !rel[y][z] || rel[x][z])))
}

/// All labelled preorders on `n` points by filtering every reflexive
/// relation for transitivity.
pub fn all_preorders(n: usize) -> Vec<Relation> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << off.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(x, y)) in off.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[x][y] = true;
            }
        }
        if is_transitive(&rel) {
            out.push(rel);
        }
    }
    out
}

fn canonical(rel: &Relation) -> Relation {
    let n = rel.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            (0..n)
                .map(|x| (0..n).map(|y| rel[p[x]][p[y]]).collect())
                .collect::<Relation>()
        })
        .min()
        .unwrap_or_default()
}

/// One representative per isomorphism class.
pub fn preorders_up_to_iso(n: usize) -> Vec<Relation> {
    let mut seen = BTreeSet::new();
    all_preorders(n)
        .into_iter()
        .filter(|r| seen.insert(canonical(r)))
        .collect()
}

pub fn to_preorder(rel: &Relation) -> Preorder {
    let n = rel.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| rel[x][y])
        .collect();
    Preorder::from_index_pairs(points(n), &pairs).unwrap()
}

pub fn relation_of(t: &Preorder) -> Relation {
    (0..t.len())
        .map(|x| (0..t.len()).map(|y| t.le(x, y)).collect())
        .collect()
}

/// Random preorder: random relation, then transitive closure.
pub fn random_preorder(rng: &mut impl Rng, n: usize) -> Relation {
    let density = rng.gen_range(0.05..0.5);
    let mut rel: Relation = (0..n)
        .map(|x| (0..n).map(|y| x == y || rng.gen_bool(density)).collect())
        .collect();
    for k in 0..n {
        for x in 0..n {
            if rel[x][k] {
                for y in 0..n {
                    if rel[k][y] {
                        rel[x][y] = true;
                    }
                }
            }
        }
    }
    rel
}

/// `S` is a strengthening of `T` (more opens) iff `x <=_S y` implies
/// `x <=_T y`.
pub fn refines(s: &Relation, t: &Relation) -> bool {
    s.iter()
        .zip(t)
        .all(|(rs, rt)| rs.iter().zip(rt).all(|(&a, &b)| !a || b))
}

/// Least common strengthening by search over every preorder on the points:
/// the unique common strengthening refined by all others.
pub fn brute_join(r: &Relation, t: &Relation, universe: &[Relation]) -> Relation {
    let common: Vec<&Relation> = universe
        .iter()
        .filter(|s| refines(s, r) && refines(s, t))
        .collect();
    let tops: Vec<&Relation> = common
        .iter()
        .copied()
        .filter(|j| common.iter().all(|s| refines(s, j)))
        .collect();
    assert_eq!(tops.len(), 1, "least common strengthening is unique");
    tops[0].clone()
}

/// Direct check that a lower set of a cell poset of dimension at most one
/// is a `d`-ball: a single vertex for `d = 0`; a path graph with at least
/// one edge for `d = 1`.
pub fn is_low_dim_ball(p: &Poset, members: &[usize], d: usize) -> bool {
    let ranks = p.ranks();
    let vertices: Vec<usize> = members.iter().copied().filter(|&x| ranks[x] == 0).collect();
    let edges: Vec<usize> = members.iter().copied().filter(|&x| ranks[x] == 1).collect();
    if members.iter().any(|&x| ranks[x] > 1) {
        return false;
    }
    match d {
        0 => edges.is_empty() && vertices.len() == 1,
        1 => {
            if edges.is_empty() {
                return false;
            }
            let mut degree = vec![0usize; p.len()];
            let mut parent: Vec<usize> = (0..p.len()).collect();
            fn find(parent: &mut [usize], x: usize) -> usize {
                if parent[x] != x {
                    let r = find(parent, parent[x]);
                    parent[x] = r;
                }
                parent[x]
            }
            for &e in &edges {
                let ends: Vec<usize> = vertices.iter().copied().filter(|&v| p.lt(v, e)).collect();
                if ends.len() != 2 {
                    return false;
                }
                degree[ends[0]] += 1;
                degree[ends[1]] += 1;
                let (a, b) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
            let root = find(&mut parent, vertices[0]);
            vertices
                .iter()
                .all(|&v| degree[v] <= 2 && find(&mut parent, v) == root)
        }
        _ => false,
    }
}

/// The assembly conditions checked directly: monotone, onto, and every
/// ideal preimage a ball of the right dimension.
pub fn brute_force_assembly(source: &Poset, target: &Poset, map: &[usize]) -> bool {
    let monotone = (0..source.len())
        .all(|x| (0..source.len()).all(|y| !source.le(x, y) || target.le(map[x], map[y])));
    let onto = (0..target.len()).all(|b| map.contains(&b));
    let ranks = target.ranks();
    monotone
        && onto
        && (0..target.len()).all(|b| {
            let pre: Vec<usize> = (0..source.len())
                .filter(|&x| target.le(map[x], b))
                .collect();
            is_low_dim_ball(source, &pre, ranks[b])
        })
}

/// Every map `from -> to` (index vectors), `to^from` of them.
pub fn all_maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut maps = vec![Vec::new()];
    for _ in 0..from {
        maps = maps
            .into_iter()
            .flat_map(|m: Vec<usize>| (0..to).map(move |v| [m.clone(), vec![v]].concat()))
            .collect();
    }
    maps
}

pub fn preorder_monotone(a: &Preorder, b: &Preorder, map: &[usize]) -> bool {
    (0..a.len()).all(|x| (0..a.len()).all(|y| !a.le(x, y) || b.le(map[x], map[y])))
}

/// Subsets of `{0..m}` enumerated by bit masks, summing `|Q_{max k}|`.
pub fn prism_count_by_subsets(chain: &PrismChain) -> usize {
    let m = chain.len();
    (1u32..1 << (m + 1))
        .map(|mask| chain.complexes()[31 - mask.leading_zeros() as usize].len())
        .sum()
}

/// Boundary of a union of top cells: closure of the codimension-one cells
/// lying under exactly one of them.
fn ball_boundary(c: &BallComplex, tops: &[usize]) -> (Vec<Id>, Vec<Id>) {
    let p = c.poset();
    let d = c.rank(tops[0]);
    let mut ball = BTreeSet::new();
    for &t in tops {
        ball.extend(p.down_set(t).ones());
    }
    let mut boundary = BTreeSet::new();
    for &q in ball.iter().filter(|&&q| c.rank(q) + 1 == d) {
        if tops.iter().filter(|&&t| p.lt(q, t)).count() == 1 {
            boundary.extend(p.down_set(q).ones());
        }
    }
    let ids = |s: &BTreeSet<usize>| s.iter().map(|&i| p.id(i).clone()).collect();
    (ids(&ball), ids(&boundary))
}

/// One random merge of two top cells meeting in a codimension-one cell, or
/// `None` if no merge verifies.
pub fn random_merge(
    rng: &mut impl Rng,
    c: &BallComplex,
    settings: &Settings,
) -> Option<(BallComplex, Assembly)> {
    let p = c.poset();
    let d = c.dim();
    if d == 0 {
        return None;
    }
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for q in (0..p.len()).filter(|&q| c.rank(q) + 1 == d) {
        let above: Vec<usize> = p.up_set(q).ones().filter(|&t| c.rank(t) == d).collect();
        if above.len() == 2 {
            candidates.push((above[0], above[1]));
        }
    }
    candidates.shuffle(rng);
    for (a, b) in candidates {
        let (ball, boundary) = ball_boundary(c, &[a, b]);
        if let Ok(out) = assemble_ball(c, &ball, &boundary, None, settings) {
            return Some(out);
        }
    }
    None
}

/// Starting complexes for random chains.
pub fn chain_seeds(settings: &Settings) -> Vec<BallComplex> {
    let simplicial: Vec<SimplicialComplex> = vec![
        fixtures::path(4),
        fixtures::cycle(5),
        fixtures::simplex(2).barycentric_subdivision(1),
        fixtures::simplex_boundary(3),
        fixtures::simplex(1),
    ];
    let mut out: Vec<BallComplex> = simplicial
        .iter()
        .map(|k| BallComplex::from_simplicial(k, settings).unwrap())
        .collect();
    out.push(BallComplex::validate(fixtures::square_poset(), settings).unwrap());
    out
}

/// A random chain of length `1..=max_len`, each step a merge or identity.
/// The length is capped so that prisms have dimension at most 3.
pub fn random_chain(rng: &mut impl Rng, max_len: usize, settings: &Settings) -> PrismChain {
    let seeds = chain_seeds(settings);
    let mut current = seeds.choose(rng).unwrap().clone();
    let len = rng.gen_range(1..=max_len.min(3 - current.dim()));
    let mut steps = Vec::new();
    for _ in 0..len {
        let step = match rng
            .gen_bool(0.75)
            .then(|| random_merge(rng, &current, settings))
            .flatten()
        {
            Some((q, a)) => {
                current = q;
                a
            }
            None => Assembly::identity(&current, settings).unwrap(),
        };
        steps.push(step);
    }
    let start = steps[0].source().clone();
    PrismChain::from_steps(start, steps).unwrap()
}

/// All maximal chains of a poset by depth-first search over covers,
/// as sorted vertex lists.
pub fn maximal_chains_by_search(p: &Poset) -> BTreeSet<Vec<Vertex>> {
    let mut up = vec![Vec::new(); p.len()];
    for &(x, y) in p.covers() {
        up[x].push(y);
    }
    let mut out = BTreeSet::new();
    fn go(x: usize, up: &[Vec<usize>], chain: &mut Vec<Vertex>, out: &mut BTreeSet<Vec<Vertex>>) {
        chain.push(x as Vertex);
        if up[x].is_empty() {
            let mut c = chain.clone();
            c.sort_unstable();
            out.insert(c);
        }
        for &y in &up[x] {
            go(y, up, chain, out);
        }
        chain.pop();
    }
    for m in p.minimal() {
        go(m, &up, &mut Vec::new(), &mut out);
    }
    out
}
