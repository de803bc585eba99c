//! Abstract assemblies: monotone maps of ball complexes under which the
//! preimage of every principal ideal `b_<=` is a ball of dimension
//! `rank(b)`.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ballcomplex::{parallel_map, BallComplex};
use crate::id::Id;
use crate::recognition::{is_ball, Status, Verdict};
use crate::settings::Settings;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("map has {found} entries, source has {expected} elements")]
    MapLength { expected: usize, found: usize },
    #[error("map sends an element outside the target")]
    MapRange,
    #[error("unknown element {0}")]
    UnknownElement(Id),
    #[error("source element {0} is not mapped")]
    Unmapped(Id),
    #[error("source element {0} is mapped twice")]
    MappedTwice(Id),
    #[error("map is not monotone: {x} <= {y} but images {fx} and {fy} are not ordered")]
    NotMonotone { x: Id, y: Id, fx: Id, fy: Id },
    #[error("target element {0} has an empty preimage")]
    NotSurjective(Id),
    #[error("preimage of the ideal of {element} has dimension {found}, expected {expected}")]
    WrongDimension {
        element: Id,
        expected: usize,
        found: usize,
        preimage: Vec<Id>,
    },
    #[error("preimage of the ideal of {element} is not a ball")]
    NotBall {
        element: Id,
        preimage: Vec<Id>,
        verdict: Box<Verdict>,
    },
    #[error("ball test for the preimage of {element} was inconclusive")]
    Unknown {
        element: Id,
        preimage: Vec<Id>,
        verdict: Box<Verdict>,
    },
    #[error("target of the first assembly differs from the source of the second")]
    EndpointMismatch,
    #[error("composite of two assemblies failed verification: {0}")]
    CompositionAlarm(Box<AssemblyError>),
    #[error("assembly endpoints are not both marked")]
    MissingMark,
}

/// Ball verdict for the preimage of one target ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageCertificate {
    pub element: Id,
    pub rank: usize,
    pub preimage: Vec<Id>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    source: BallComplex,
    target: BallComplex,
    map: Vec<usize>,
    certificate: Vec<PreimageCertificate>,
}

/// Checks a map given by element indices.
///
/// Preimages of ideals are lower sets of the source, so their cells keep
/// the source's sphere certificates; each is then tested as a ball of the
/// target element's rank.
pub fn verify_assembly(
    map: &[usize],
    source: &BallComplex,
    target: &BallComplex,
    settings: &Settings,
) -> Result<Assembly, AssemblyError> {
    let (s, t) = (source.poset(), target.poset());
    if map.len() != s.len() {
        return Err(AssemblyError::MapLength {
            expected: s.len(),
            found: map.len(),
        });
    }
    if map.iter().any(|&v| v >= t.len()) {
        return Err(AssemblyError::MapRange);
    }
    for &(x, y) in s.covers() {
        if !t.le(map[x], map[y]) {
            return Err(AssemblyError::NotMonotone {
                x: s.id(x).clone(),
                y: s.id(y).clone(),
                fx: t.id(map[x]).clone(),
                fy: t.id(map[y]).clone(),
            });
        }
    }
    let mut hit = FixedBitSet::with_capacity(t.len());
    hit.extend(map.iter().copied());
    if let Some(b) = (0..t.len()).find(|&b| !hit.contains(b)) {
        return Err(AssemblyError::NotSurjective(t.id(b).clone()));
    }

    let check = |b: usize| -> Result<PreimageCertificate, AssemblyError> {
        let element = t.id(b).clone();
        let rank = target.rank(b);
        let mut pre = FixedBitSet::with_capacity(s.len());
        pre.extend((0..s.len()).filter(|&x| t.le(map[x], b)));
        let preimage: Vec<Id> = pre.ones().map(|x| s.id(x).clone()).collect();
        let found = pre
            .ones()
            .map(|x| source.rank(x))
            .max()
            .expect("surjective map");
        if found != rank {
            return Err(AssemblyError::WrongDimension {
                element,
                expected: rank,
                found,
                preimage,
            });
        }
        let ball = source.restrict(&pre);
        let verdict = is_ball(&ball.poset().order_complex(), rank, settings)
            .expect("order complex has the preimage's rank");
        match verdict.status {
            Status::Refuted => Err(AssemblyError::NotBall {
                element,
                preimage,
                verdict: Box::new(verdict),
            }),
            Status::Unknown if settings.strict => Err(AssemblyError::Unknown {
                element,
                preimage,
                verdict: Box::new(verdict),
            }),
            _ => Ok(PreimageCertificate {
                element,
                rank,
                preimage,
                verdict,
            }),
        }
    };
    let results = parallel_map(t.len(), settings.threads, check);
    let certificate = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Assembly {
        source: source.clone(),
        target: target.clone(),
        map: map.to_vec(),
        certificate,
    })
}

/// Checks a map given as `(source id, target id)` pairs covering the source
/// exactly once.
pub fn verify_assembly_ids(
    pairs: &[(Id, Id)],
    source: &BallComplex,
    target: &BallComplex,
    settings: &Settings,
) -> Result<Assembly, AssemblyError> {
    let (s, t) = (source.poset(), target.poset());
    let mut map = vec![usize::MAX; s.len()];
    for (x, y) in pairs {
        let xi = s
            .index_of(x)
            .ok_or_else(|| AssemblyError::UnknownElement(x.clone()))?;
        let yi = t
            .index_of(y)
            .ok_or_else(|| AssemblyError::UnknownElement(y.clone()))?;
        if map[xi] != usize::MAX {
            return Err(AssemblyError::MappedTwice(x.clone()));
        }
        map[xi] = yi;
    }
    if let Some(x) = map.iter().position(|&v| v == usize::MAX) {
        return Err(AssemblyError::Unmapped(s.id(x).clone()));
    }
    verify_assembly(&map, source, target, settings)
}

impl Assembly {
    pub fn identity(c: &BallComplex, settings: &Settings) -> Result<Assembly, AssemblyError> {
        let map: Vec<usize> = (0..c.len()).collect();
        verify_assembly(&map, c, c, settings)
    }

    pub fn source(&self) -> &BallComplex {
        &self.source
    }

    pub fn target(&self) -> &BallComplex {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// The map as `(source id, target id)` pairs in source order.
    pub fn map_ids(&self) -> Vec<(Id, Id)> {
        let (s, t) = (self.source.poset(), self.target.poset());
        self.map
            .iter()
            .enumerate()
            .map(|(x, &y)| (s.id(x).clone(), t.id(y).clone()))
            .collect()
    }

    pub fn certificate(&self) -> &[PreimageCertificate] {
        &self.certificate
    }

    /// Worst status over all preimage verdicts.
    pub fn status(&self) -> Status {
        self.certificate
            .iter()
            .fold(Status::Verified, |s, c| s.meet(c.verdict.status))
    }

    /// Whether the marked source cell goes to the marked target cell.
    pub fn verify_marked(&self) -> Result<bool, AssemblyError> {
        match (self.source.marked(), self.target.marked()) {
            (Some(a), Some(b)) => Ok(self.map[a] == b),
            _ => Err(AssemblyError::MissingMark),
        }
    }
}

/// `g ∘ f`, verified from scratch. A verification failure of the composite
/// of two assemblies is reported as [`AssemblyError::CompositionAlarm`].
pub fn compose(g: &Assembly, f: &Assembly, settings: &Settings) -> Result<Assembly, AssemblyError> {
    if f.target.poset() != g.source.poset() {
        return Err(AssemblyError::EndpointMismatch);
    }
    let map: Vec<usize> = f.map.iter().map(|&y| g.map[y]).collect();
    verify_assembly(&map, &f.source, &g.target, settings)
        .map_err(|e| AssemblyError::CompositionAlarm(Box::new(e)))
}
