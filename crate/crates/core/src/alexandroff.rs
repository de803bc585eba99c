//! Finite Alexandroff spaces, stored as preorders.
//!
//! The minimal open neighbourhood of `y` is `o(y) = {x : x <= y}` and the
//! closed one is `c(y) = {x : y <= x}`. The minimal base of the topology is
//! the family of distinct `o(y)`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::Id;
use crate::poset::Poset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexandroffError {
    #[error("unknown point {0}")]
    UnknownPoint(Id),
    #[error("duplicate point {0}")]
    DuplicatePoint(Id),
    #[error("the two spaces have different point sets")]
    PointSetMismatch,
    #[error("cover misses point {0}")]
    NotACover(Id),
    #[error("map has {found} entries, domain has {expected} points")]
    MapLength { expected: usize, found: usize },
    #[error("map sends a point outside the codomain")]
    MapRange,
    #[error("map is not monotone: {x} <= {y} is not preserved")]
    NotMonotone { x: Id, y: Id },
    #[error("topology is not dense: {left:?} and {right:?} meet outside the base")]
    NotDense { left: Vec<Id>, right: Vec<Id> },
    #[error("base member {member:?} lies in no member of the other base")]
    NotInscribed { member: Vec<Id> },
    #[error("maps do not satisfy the required inequality at {point}")]
    Inequality { point: Id },
}

/// A reflexive, transitive relation on a finite point set.
#[derive(Clone, Debug)]
pub struct Preorder {
    points: Vec<Id>,
    index: HashMap<Id, usize>,
    /// `down[y] = o(y)`.
    down: Vec<FixedBitSet>,
}

impl PartialEq for Preorder {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.down == other.down
    }
}

impl Eq for Preorder {}

fn index_points(points: &[Id]) -> Result<HashMap<Id, usize>, AlexandroffError> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(AlexandroffError::DuplicatePoint(p.clone()));
        }
    }
    Ok(index)
}

impl Preorder {
    /// The reflexive-transitive closure of the given pairs `x <= y`.
    pub fn new(points: Vec<Id>, leq: &[(Id, Id)]) -> Result<Self, AlexandroffError> {
        let index = index_points(&points)?;
        let mut pairs = Vec::with_capacity(leq.len());
        for (x, y) in leq {
            let xi = *index
                .get(x)
                .ok_or_else(|| AlexandroffError::UnknownPoint(x.clone()))?;
            let yi = *index
                .get(y)
                .ok_or_else(|| AlexandroffError::UnknownPoint(y.clone()))?;
            pairs.push((xi, yi));
        }
        Ok(Self::closure(points, index, &pairs))
    }

    /// The reflexive-transitive closure of index pairs; points must be
    /// distinct.
    pub fn from_index_pairs(
        points: Vec<Id>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, AlexandroffError> {
        let index = index_points(&points)?;
        Ok(Self::closure(points, index, pairs))
    }

    fn closure(points: Vec<Id>, index: HashMap<Id, usize>, pairs: &[(usize, usize)]) -> Self {
        let n = points.len();
        let mut down: Vec<FixedBitSet> = (0..n)
            .map(|y| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(y);
                s
            })
            .collect();
        for &(x, y) in pairs {
            down[y].insert(x);
        }
        // Warshall: if k <= y then everything below k is below y.
        for k in 0..n {
            let below_k = down[k].clone();
            for set in down.iter_mut() {
                if set.contains(k) {
                    set.union_with(&below_k);
                }
            }
        }
        Preorder {
            points,
            index,
            down,
        }
    }

    fn from_down(points: Vec<Id>, index: HashMap<Id, usize>, down: Vec<FixedBitSet>) -> Self {
        Preorder {
            points,
            index,
            down,
        }
    }

    pub fn discrete(points: Vec<Id>) -> Result<Self, AlexandroffError> {
        Self::from_index_pairs(points, &[])
    }

    /// Every point below every other.
    pub fn trivial(points: Vec<Id>) -> Result<Self, AlexandroffError> {
        let n = points.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        Self::from_index_pairs(points, &pairs)
    }

    pub fn from_poset(p: &Poset) -> Self {
        let down = (0..p.len()).map(|y| p.down_set(y).clone()).collect();
        let index = p
            .ids()
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        Self::from_down(p.ids().to_vec(), index, down)
    }

    /// The poset, if the preorder is antisymmetric.
    pub fn to_poset(&self) -> Option<Poset> {
        if !self.is_partial_order() {
            return None;
        }
        Poset::from_order(self.points.clone(), |x, y| self.le(x, y)).ok()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Id] {
        &self.points
    }

    pub fn index_of(&self, id: &Id) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// Minimal open neighbourhood `o(y)`.
    pub fn open(&self, y: usize) -> &FixedBitSet {
        &self.down[y]
    }

    /// Minimal closed neighbourhood `c(y)`.
    pub fn closed(&self, y: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.extend((0..self.len()).filter(|&x| self.le(y, x)));
        s
    }

    pub fn is_partial_order(&self) -> bool {
        (0..self.len()).all(|y| self.down[y].ones().all(|x| x == y || !self.le(y, x)))
    }

    /// Non-reflexive pairs `x <= y`, in index order.
    pub fn relation_pairs(&self) -> Vec<(Id, Id)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in 0..self.len() {
                if x != y && self.le(x, y) {
                    out.push((self.points[x].clone(), self.points[y].clone()));
                }
            }
        }
        out
    }

    pub fn ids_of(&self, set: &FixedBitSet) -> Vec<Id> {
        set.ones().map(|i| self.points[i].clone()).collect()
    }

    /// Reversed preorder.
    pub fn dual(&self) -> Preorder {
        let down = (0..self.len()).map(|y| self.closed(y)).collect();
        Self::from_down(self.points.clone(), self.index.clone(), down)
    }

    /// Whether `map` is monotone into `target`; returns a violating pair.
    pub fn check_monotone(&self, target: &Preorder, map: &[usize]) -> Result<(), AlexandroffError> {
        if map.len() != self.len() {
            return Err(AlexandroffError::MapLength {
                expected: self.len(),
                found: map.len(),
            });
        }
        if map.iter().any(|&v| v >= target.len()) {
            return Err(AlexandroffError::MapRange);
        }
        for y in 0..self.len() {
            for x in self.down[y].ones() {
                if !target.le(map[x], map[y]) {
                    return Err(AlexandroffError::NotMonotone {
                        x: self.points[x].clone(),
                        y: self.points[y].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn require_same_points(&self, other: &Preorder) -> Result<(), AlexandroffError> {
        if self.points != other.points {
            return Err(AlexandroffError::PointSetMismatch);
        }
        Ok(())
    }
}

/// A family of subsets covering a ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCover {
    ground: Vec<Id>,
    members: Vec<FixedBitSet>,
}

impl SetCover {
    pub fn new(ground: Vec<Id>, members: &[Vec<Id>]) -> Result<Self, AlexandroffError> {
        let index = index_points(&ground)?;
        let mut sets = Vec::with_capacity(members.len());
        for m in members {
            let mut s = FixedBitSet::with_capacity(ground.len());
            for id in m {
                s.insert(
                    *index
                        .get(id)
                        .ok_or_else(|| AlexandroffError::UnknownPoint(id.clone()))?,
                );
            }
            sets.push(s);
        }
        let mut union = FixedBitSet::with_capacity(ground.len());
        for s in &sets {
            union.union_with(s);
        }
        if let Some(missing) = (0..ground.len()).find(|&i| !union.contains(i)) {
            return Err(AlexandroffError::NotACover(ground[missing].clone()));
        }
        Ok(SetCover {
            ground,
            members: sets,
        })
    }

    pub fn ground(&self) -> &[Id] {
        &self.ground
    }

    pub fn members(&self) -> &[FixedBitSet] {
        &self.members
    }

    pub fn member_ids(&self) -> Vec<Vec<Id>> {
        self.members
            .iter()
            .map(|m| m.ones().map(|i| self.ground[i].clone()).collect())
            .collect()
    }

    fn ids(&self, set: &FixedBitSet) -> Vec<Id> {
        set.ones().map(|i| self.ground[i].clone()).collect()
    }

    /// Union of the members contained in `set`, other than member `skip`.
    fn union_inside(&self, set: &FixedBitSet, skip: Option<usize>) -> FixedBitSet {
        let mut u = FixedBitSet::with_capacity(self.ground.len());
        for (i, m) in self.members.iter().enumerate() {
            if Some(i) != skip && m.is_subset(set) {
                u.union_with(m);
            }
        }
        u
    }
}

/// The distinct `o(y)`, in order of first occurrence.
pub fn minimal_base(t: &Preorder) -> SetCover {
    let mut members: Vec<FixedBitSet> = Vec::new();
    for y in 0..t.len() {
        if !members.contains(&t.down[y]) {
            members.push(t.down[y].clone());
        }
    }
    SetCover {
        ground: t.points.clone(),
        members,
    }
}

/// Why a cover fails to be the minimal base of a topology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum BaseViolation {
    /// The intersection of two members is not a union of members.
    Intersection {
        left: Vec<Id>,
        right: Vec<Id>,
        intersection: Vec<Id>,
    },
    /// A member is the union of the other members it contains.
    Redundant {
        member: Vec<Id>,
        parts: Vec<Vec<Id>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseCheck {
    Accepted(Preorder),
    Rejected(BaseViolation),
}

/// Checks the two conditions characterising minimal bases: pairwise
/// intersections are unions of members (the empty union included), and no
/// member is a union of other members.
pub fn check_minimal_base(c: &SetCover) -> BaseCheck {
    let m = &c.members;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let mut meet = m[i].clone();
            meet.intersect_with(&m[j]);
            if c.union_inside(&meet, None) != meet {
                return BaseCheck::Rejected(BaseViolation::Intersection {
                    left: c.ids(&m[i]),
                    right: c.ids(&m[j]),
                    intersection: c.ids(&meet),
                });
            }
        }
    }
    for (i, member) in m.iter().enumerate() {
        if c.union_inside(member, Some(i)) == *member {
            let parts = m
                .iter()
                .enumerate()
                .filter(|&(j, w)| j != i && w.is_subset(member))
                .map(|(_, w)| c.ids(w))
                .collect();
            return BaseCheck::Rejected(BaseViolation::Redundant {
                member: c.ids(member),
                parts,
            });
        }
    }
    BaseCheck::Accepted(topology_from_cover(c))
}

/// The weakest topology in which every member is open:
/// `o(y)` is the intersection of the members containing `y`.
pub fn topology_from_cover(c: &SetCover) -> Preorder {
    let n = c.ground.len();
    let down = (0..n)
        .map(|y| {
            let mut o = FixedBitSet::with_capacity(n);
            o.insert_range(..);
            for m in c.members.iter().filter(|m| m.contains(y)) {
                o.intersect_with(m);
            }
            o
        })
        .collect();
    let index = index_points(&c.ground).expect("cover ground is duplicate-free");
    Preorder::from_down(c.ground.clone(), index, down)
}

/// Classes of mutually comparable points, and the bijection from base
/// members `o(y)` to classes `s(y) = o(y) ∩ c(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaClasses {
    pub classes: Vec<Vec<Id>>,
    /// `(o(y), s(y))` for each base member.
    pub ns: Vec<(Vec<Id>, Vec<Id>)>,
}

pub fn sigma_classes(t: &Preorder) -> SigmaClasses {
    let mut classes: Vec<FixedBitSet> = Vec::new();
    let mut ns = Vec::new();
    for y in 0..t.len() {
        let mut s = t.down[y].clone();
        s.intersect_with(&t.closed(y));
        if !classes.contains(&s) {
            ns.push((t.ids_of(&t.down[y]), t.ids_of(&s)));
            classes.push(s);
        }
    }
    SigmaClasses {
        classes: classes.iter().map(|s| t.ids_of(s)).collect(),
        ns,
    }
}

/// `T` is weaker than `R`: `o_R(y) ⊆ o_T(y)` for every `y`, i.e. the
/// identity `(Y, R) -> (Y, T)` is continuous.
pub fn is_weaker(t: &Preorder, r: &Preorder) -> Result<bool, AlexandroffError> {
    t.require_same_points(r)?;
    Ok((0..t.len()).all(|y| r.down[y].is_subset(&t.down[y])))
}

/// One row of the join pairing: `member = r_member ∩ t_member`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinPair {
    pub member: Vec<Id>,
    pub r_member: Vec<Id>,
    pub t_member: Vec<Id>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join {
    pub preorder: Preorder,
    /// Every pair of base members `(U, W)` of `R` and `T` whose Σ-classes
    /// meet, with `U ∩ W`, ordered by the base order of the join.
    pub pairing: Vec<JoinPair>,
}

/// The weakest common strengthening: `o(y) = o_R(y) ∩ o_T(y)`.
pub fn join(r: &Preorder, t: &Preorder) -> Result<Join, AlexandroffError> {
    r.require_same_points(t)?;
    let n = r.len();
    let down: Vec<FixedBitSet> = (0..n)
        .map(|y| {
            let mut o = r.down[y].clone();
            o.intersect_with(&t.down[y]);
            o
        })
        .collect();
    let preorder = Preorder::from_down(r.points.clone(), r.index.clone(), down);

    let base_r = minimal_base(r);
    let base_t = minimal_base(t);
    let base_j = minimal_base(&preorder);
    let sigma = |p: &Preorder, y: usize| {
        let mut s = p.down[y].clone();
        s.intersect_with(&p.closed(y));
        s
    };
    let ns = |p: &Preorder, u: &FixedBitSet| -> FixedBitSet {
        let y = (0..n)
            .find(|&y| p.down[y] == *u)
            .expect("base member is some o(y)");
        sigma(p, y)
    };
    let mut rows: Vec<(usize, JoinPair)> = Vec::new();
    for u in base_r.members() {
        let su = ns(r, u);
        for w in base_t.members() {
            if su.is_disjoint(&ns(t, w)) {
                continue;
            }
            let mut v = u.clone();
            v.intersect_with(w);
            let pos = base_j
                .members()
                .iter()
                .position(|m| *m == v)
                .unwrap_or(usize::MAX);
            rows.push((
                pos,
                JoinPair {
                    member: r.ids_of(&v),
                    r_member: r.ids_of(u),
                    t_member: r.ids_of(w),
                },
            ));
        }
    }
    rows.sort_by_key(|(pos, _)| *pos);
    Ok(Join {
        preorder,
        pairing: rows.into_iter().map(|(_, p)| p).collect(),
    })
}

/// A directed mapping cylinder with its two embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub preorder: Preorder,
    /// Embedding of the domain `A`.
    pub i0: Vec<usize>,
    /// Embedding of the codomain `B`.
    pub i1: Vec<usize>,
    /// `true` for the upward cylinder (`i0 >= i1 ∘ φ`).
    pub upward: bool,
}

/// Cylinder on `A ⊔ B` with the orders of `A` and `B` and
/// `(y,1) <= (x,0)` iff `y <= φ(x)`; so `i0 >= i1 ∘ φ`.
///
/// Points are named `(x|0)` and `(y|1)`, domain first.
pub fn cyl_up(a: &Preorder, b: &Preorder, phi: &[usize]) -> Result<Cylinder, AlexandroffError> {
    a.check_monotone(b, phi)?;
    let (na, nb) = (a.len(), b.len());
    let mut points: Vec<Id> = a
        .points
        .iter()
        .map(|x| Id::Str(format!("({x}|0)")))
        .collect();
    points.extend(b.points.iter().map(|y| Id::Str(format!("({y}|1)"))));
    let mut down: Vec<FixedBitSet> = Vec::with_capacity(na + nb);
    for x in 0..na {
        let mut s = FixedBitSet::with_capacity(na + nb);
        s.extend(a.down[x].ones());
        s.extend(b.down[phi[x]].ones().map(|y| na + y));
        down.push(s);
    }
    for y in 0..nb {
        let mut s = FixedBitSet::with_capacity(na + nb);
        s.extend(b.down[y].ones().map(|z| na + z));
        down.push(s);
    }
    let index = index_points(&points)?;
    Ok(Cylinder {
        preorder: Preorder::from_down(points, index, down),
        i0: (0..na).collect(),
        i1: (na..na + nb).collect(),
        upward: true,
    })
}

/// `dual(cyl_up(φ^op))`: `(x,0) <= (y,1)` iff `φ(x) <= y`; so
/// `i0 <= i1 ∘ φ`.
pub fn cyl_down(a: &Preorder, b: &Preorder, phi: &[usize]) -> Result<Cylinder, AlexandroffError> {
    let up = cyl_up(&a.dual(), &b.dual(), phi)?;
    Ok(Cylinder {
        preorder: up.preorder.dual(),
        i0: up.i0,
        i1: up.i1,
        upward: false,
    })
}

impl Cylinder {
    /// The unique map `m` with `m ∘ i0 = α` and `m ∘ i1 = β`, provided the
    /// pair satisfies the cylinder's inequality and both maps are monotone.
    pub fn mediate(
        &self,
        a: &Preorder,
        b: &Preorder,
        phi: &[usize],
        target: &Preorder,
        alpha: &[usize],
        beta: &[usize],
    ) -> Result<Vec<usize>, AlexandroffError> {
        a.check_monotone(target, alpha)?;
        b.check_monotone(target, beta)?;
        for x in 0..a.len() {
            let ok = if self.upward {
                target.le(beta[phi[x]], alpha[x])
            } else {
                target.le(alpha[x], beta[phi[x]])
            };
            if !ok {
                return Err(AlexandroffError::Inequality {
                    point: a.points[x].clone(),
                });
            }
        }
        let mut m = vec![0; self.preorder.len()];
        for (x, &p) in self.i0.iter().enumerate() {
            m[p] = alpha[x];
        }
        for (y, &p) in self.i1.iter().enumerate() {
            m[p] = beta[y];
        }
        self.preorder.check_monotone(target, &m)?;
        Ok(m)
    }
}

/// Base members of `T` pairwise meet in a member or in the empty set.
pub fn is_dense(t: &Preorder) -> bool {
    density_violation(t).is_none()
}

/// Two base members whose nonempty intersection is not a member.
pub fn density_violation(t: &Preorder) -> Option<(Vec<Id>, Vec<Id>)> {
    let base = minimal_base(t);
    let m = base.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let mut meet = m[i].clone();
            meet.intersect_with(&m[j]);
            if !meet.is_clear() && !m.contains(&meet) {
                return Some((t.ids_of(&m[i]), t.ids_of(&m[j])));
            }
        }
    }
    None
}

/// `φ(U)` for each base member `U` of `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inscription {
    pub pairs: Vec<(Vec<Id>, Vec<Id>)>,
}

/// Sends each base member of `R` to the intersection of the base members of
/// the dense topology `T` containing it. Points are matched by id.
pub fn inscribe(r: &Preorder, t: &Preorder) -> Result<Inscription, AlexandroffError> {
    if let Some((left, right)) = density_violation(t) {
        return Err(AlexandroffError::NotDense { left, right });
    }
    let base_t = minimal_base(t);
    let mut pairs = Vec::new();
    for u in minimal_base(r).members() {
        let ids = r.ids_of(u);
        let mut image = FixedBitSet::with_capacity(t.len());
        for id in &ids {
            match t.index_of(id) {
                Some(i) => image.insert(i),
                None => return Err(AlexandroffError::NotInscribed { member: ids }),
            }
        }
        let mut phi = FixedBitSet::with_capacity(t.len());
        phi.insert_range(..);
        let mut found = false;
        for w in base_t.members().iter().filter(|w| image.is_subset(w)) {
            phi.intersect_with(w);
            found = true;
        }
        if !found {
            return Err(AlexandroffError::NotInscribed { member: ids });
        }
        pairs.push((ids, t.ids_of(&phi)));
    }
    Ok(Inscription { pairs })
}

/// The topology on `S` with minimal base `{A} ∪ {{s} : s ∉ A}`.
pub fn d_topology(s: &[Id], a: &[Id]) -> Result<Preorder, AlexandroffError> {
    let index = index_points(s)?;
    let mut members: Vec<usize> = Vec::with_capacity(a.len());
    for id in a {
        members.push(
            *index
                .get(id)
                .ok_or_else(|| AlexandroffError::UnknownPoint(id.clone()))?,
        );
    }
    let pairs: Vec<(usize, usize)> = members
        .iter()
        .flat_map(|&x| members.iter().map(move |&y| (x, y)))
        .collect();
    Preorder::from_index_pairs(s.to_vec(), &pairs)
}
