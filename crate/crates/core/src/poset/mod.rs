//! Finite posets with an eagerly computed order relation.
//!
//! Elements carry opaque [`Id`]s and are re-indexed densely in input order.
//! The order is stored twice, as down-sets and up-sets, so that both
//! `x <= y` queries and ideal extraction are bitset operations.

mod diagram;
mod maps;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::id::Id;
use crate::simplicial::{SimplicialComplex, Vertex};

pub use diagram::{DiagramError, PosetDiagram};
pub use maps::{is_monotone, monotone_maps};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("unknown element id {0}")]
    UnknownElement(Id),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("duplicate element id {0}")]
    DuplicateElement(Id),
    #[error("order relation has a cycle through {0}")]
    Cycle(Id),
    #[error("relation is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(Id, Id, Id),
    #[error("enumeration budget of {0} search nodes exceeded")]
    BudgetExceeded(usize),
}

/// A finite partially ordered set.
#[derive(Clone, Debug)]
pub struct Poset {
    ids: Vec<Id>,
    index: HashMap<Id, usize>,
    /// Transitive reduction, sorted.
    covers: Vec<(usize, usize)>,
    /// `down[y]` contains `x` iff `x <= y`.
    down: Vec<FixedBitSet>,
    /// `up[x]` contains `y` iff `x <= y`.
    up: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    /// Same ids in the same order and the same relation.
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.down == other.down
    }
}

impl Eq for Poset {}

fn build_index(ids: &[Id]) -> Result<HashMap<Id, usize>, PosetError> {
    let mut index = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(PosetError::DuplicateElement(id.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds a poset from relation pairs `(a, b)` meaning `a < b`.
    ///
    /// The pairs need not be covers; the order is their reflexive-transitive
    /// closure and the stored covers are its transitive reduction.
    pub fn new(ids: Vec<Id>, relations: &[(Id, Id)]) -> Result<Self, PosetError> {
        let index = build_index(&ids)?;
        let mut pairs = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            let ia = *index
                .get(a)
                .ok_or_else(|| PosetError::UnknownElement(a.clone()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| PosetError::UnknownElement(b.clone()))?;
            pairs.push((ia, ib));
        }
        Self::with_index(ids, index, &pairs)
    }

    /// Same as [`Poset::new`] with relation pairs given as dense indices.
    pub fn from_index_pairs(ids: Vec<Id>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let index = build_index(&ids)?;
        if let Some(&(a, b)) = pairs
            .iter()
            .find(|&&(a, b)| a >= ids.len() || b >= ids.len())
        {
            return Err(PosetError::IndexOutOfRange(a.max(b)));
        }
        Self::with_index(ids, index, pairs)
    }

    /// Builds a poset from a full order predicate `le(i, j)`.
    ///
    /// The predicate is checked for antisymmetry and transitivity.
    pub fn from_order(ids: Vec<Id>, le: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let index = build_index(&ids)?;
        let n = ids.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for y in 0..n {
            for x in 0..n {
                if x == y || le(x, y) {
                    down[y].insert(x);
                }
            }
        }
        for y in 0..n {
            for x in down[y].ones() {
                if x != y && down[x].contains(y) {
                    return Err(PosetError::Cycle(ids[x].clone()));
                }
                if !down[x].is_subset(&down[y]) {
                    let w = down[x].difference(&down[y]).next().unwrap();
                    return Err(PosetError::NotTransitive(
                        ids[w].clone(),
                        ids[x].clone(),
                        ids[y].clone(),
                    ));
                }
            }
        }
        Ok(Self::from_down_sets(ids, index, down))
    }

    fn with_index(
        ids: Vec<Id>,
        index: HashMap<Id, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = ids.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in pairs {
            if a == b {
                return Err(PosetError::Cycle(ids[a].clone()));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn's algorithm; leftovers sit on a cycle.
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(PosetError::Cycle(ids[stuck].clone()));
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for &v in &order {
            down[v].insert(v);
            let below = down[v].clone();
            for &w in &succ[v] {
                down[w].union_with(&below);
            }
        }
        Ok(Self::from_down_sets(ids, index, down))
    }

    fn from_down_sets(ids: Vec<Id>, index: HashMap<Id, usize>, down: Vec<FixedBitSet>) -> Self {
        let n = ids.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (y, d) in down.iter().enumerate() {
            for x in d.ones() {
                up[x].insert(y);
            }
        }
        let mut covers = Vec::new();
        for y in 0..n {
            let mut strict = down[y].clone();
            strict.set(y, false);
            let mut shadowed = FixedBitSet::with_capacity(n);
            for w in strict.ones() {
                let mut below_w = down[w].clone();
                below_w.set(w, false);
                shadowed.union_with(&below_w);
            }
            for x in strict.difference(&shadowed) {
                covers.push((x, y));
            }
        }
        covers.sort_unstable();
        Poset {
            ids,
            index,
            covers,
            down,
            up,
        }
    }

    pub fn empty() -> Self {
        Poset {
            ids: Vec::new(),
            index: HashMap::new(),
            covers: Vec::new(),
            down: Vec::new(),
            up: Vec::new(),
        }
    }

    /// A chain `ids[0] < ids[1] < ...`.
    pub fn chain(ids: Vec<Id>) -> Self {
        let pairs: Vec<_> = (1..ids.len()).map(|i| (i - 1, i)).collect();
        Self::from_index_pairs(ids, &pairs).expect("chain ids must be distinct")
    }

    /// An antichain on the given ids.
    pub fn antichain(ids: Vec<Id>) -> Self {
        Self::from_index_pairs(ids, &[]).expect("antichain ids must be distinct")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[Id] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &Id {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &Id) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &Id) -> Result<usize, PosetError> {
        self.index_of(id)
            .ok_or_else(|| PosetError::UnknownElement(id.clone()))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_ids(&self) -> Vec<(Id, Id)> {
        self.covers
            .iter()
            .map(|&(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
            .collect()
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// `{x : x <= y}` as a bitset over element indices.
    pub fn down_set(&self, y: usize) -> &FixedBitSet {
        &self.down[y]
    }

    /// `{y : x <= y}` as a bitset over element indices.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.down[x].count_ones(..) == 1)
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.up[x].count_ones(..) == 1)
            .collect()
    }

    /// Indices of a linear extension (every element after everything below it).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].count_ones(..), x));
        order
    }

    /// Rank of every element: the length of the longest chain ending there.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.len()];
        for y in self.linear_extension() {
            for x in self.down[y].ones() {
                if x != y {
                    rank[y] = rank[y].max(rank[x] + 1);
                }
            }
        }
        rank
    }

    /// Rank of a single element; minimal elements have rank 0.
    pub fn rank(&self, id: &Id) -> Result<usize, PosetError> {
        let p = self.require(id)?;
        Ok(self.ranks()[p])
    }

    /// Number of elements in the longest chain (0 for the empty poset).
    pub fn height(&self) -> usize {
        self.ranks().into_iter().max().map_or(0, |r| r + 1)
    }

    /// Induced subposet on `members`, keeping the original relative order.
    pub fn induced(&self, members: &FixedBitSet) -> Poset {
        let keep: Vec<usize> = members.ones().collect();
        let ids = keep.iter().map(|&i| self.ids[i].clone()).collect();
        Poset::from_order(ids, |a, b| self.le(keep[a], keep[b]))
            .expect("induced order is a partial order")
    }

    pub fn lower_ideal_index(&self, p: usize, strict: bool) -> Poset {
        let mut members = self.down[p].clone();
        if strict {
            members.set(p, false);
        }
        self.induced(&members)
    }

    /// Induced subposet on `{x : x <= p}` or `{x : x < p}` when `strict`.
    pub fn lower_ideal(&self, id: &Id, strict: bool) -> Result<Poset, PosetError> {
        let p = self.require(id)?;
        Ok(self.lower_ideal_index(p, strict))
    }

    pub fn is_lower_set(&self, members: &FixedBitSet) -> bool {
        members.ones().all(|y| self.down[y].is_subset(members))
    }

    /// Order-reversed poset on the same ids.
    pub fn opposite(&self) -> Poset {
        Poset::from_down_sets(self.ids.clone(), self.index.clone(), self.up.clone())
    }

    /// Maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.len()];
        for &(a, b) in &self.covers {
            succ[a].push(b);
        }
        let mut chains = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn walk(v: usize, succ: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            stack.push(v);
            if succ[v].is_empty() {
                out.push(stack.clone());
            } else {
                for &w in &succ[v] {
                    walk(w, succ, stack, out);
                }
            }
            stack.pop();
        }
        for m in self.minimal() {
            walk(m, &succ, &mut stack, &mut chains);
        }
        chains
    }

    /// The simplicial complex of chains.
    ///
    /// Vertex `i` is element `i`. The complex carries the chain order as its
    /// local order.
    pub fn order_complex(&self) -> SimplicialComplex {
        let facets: Vec<Vec<Vertex>> = self
            .maximal_chains()
            .into_iter()
            .map(|c| c.into_iter().map(|v| v as Vertex).collect())
            .collect();
        let order: Vec<(Vertex, Vertex)> = self
            .covers
            .iter()
            .map(|&(a, b)| (a as Vertex, b as Vertex))
            .collect();
        SimplicialComplex::from_maximal_chains(facets, order)
    }

    /// Checks whether the two posets are isomorphic, ignoring ids.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Finds an order isomorphism `self -> other` by backtracking on
    /// rank/degree signatures.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.covers.len() != other.covers.len() {
            return None;
        }
        let sig = |p: &Poset| -> Vec<(usize, usize, usize)> {
            let ranks = p.ranks();
            (0..p.len())
                .map(|x| (ranks[x], p.down[x].count_ones(..), p.up[x].count_ones(..)))
                .collect()
        };
        let (sa, sb) = (sig(self), sig(other));
        let mut ka = sa.clone();
        let mut kb = sb.clone();
        ka.sort_unstable();
        kb.sort_unstable();
        if ka != kb {
            return None;
        }
        let order = self.linear_extension();
        let mut assign = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        fn go(
            k: usize,
            order: &[usize],
            a: &Poset,
            b: &Poset,
            sa: &[(usize, usize, usize)],
            sb: &[(usize, usize, usize)],
            assign: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let x = order[k];
            for y in 0..b.len() {
                if used[y] || sa[x] != sb[y] {
                    continue;
                }
                let consistent = order[..k].iter().all(|&z| {
                    let w = assign[z];
                    a.le(z, x) == b.le(w, y) && a.le(x, z) == b.le(y, w)
                });
                if consistent {
                    assign[x] = y;
                    used[y] = true;
                    if go(k + 1, order, a, b, sa, sb, assign, used) {
                        return true;
                    }
                    used[y] = false;
                }
            }
            assign[x] = usize::MAX;
            false
        }
        go(0, &order, self, other, &sa, &sb, &mut assign, &mut used).then_some(assign)
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, id) in self.ids.iter().enumerate() {
            out.push_str(&format!(
                "  n{i} [label=\"{}\"];\n",
                id.to_string().replace('"', "\\\"")
            ));
        }
        for &(a, b) in &self.covers {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}
