//! Pseudomanifold structure and vertex-link manifold tests.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Simplex, SimplicialComplex, SimplicialError, Vertex};
use crate::recognition::{self, Refutation, Status, Verdict, Witness};
use crate::settings::Settings;

/// Facts about a pure complex read off from its ridges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudomanifoldReport {
    pub dimension: isize,
    pub pure: bool,
    /// Ridges lying in a number of facets other than two.
    pub ridge_defects: Vec<(Simplex, usize)>,
    /// Facets are connected through shared ridges.
    pub strongly_connected: bool,
}

impl PseudomanifoldReport {
    /// Pure, every ridge in exactly two facets, strongly connected.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.pure && self.ridge_defects.is_empty() && self.strongly_connected
    }
}

impl SimplicialComplex {
    pub fn pseudomanifold_report(&self) -> PseudomanifoldReport {
        let degrees = self.ridge_degrees();
        PseudomanifoldReport {
            dimension: self.dimension(),
            pure: self.is_pure(),
            ridge_defects: degrees.into_iter().filter(|&(_, n)| n != 2).collect(),
            strongly_connected: self.is_strongly_connected(),
        }
    }

    /// Facet graph through ridges is connected. The empty complex counts as
    /// connected.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.facets.len();
        if n <= 1 {
            return true;
        }
        let mut by_ridge: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.boundary_faces() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for r in self.facets[i].boundary_faces() {
                for &j in &by_ridge[&r] {
                    if !seen[j] {
                        seen[j] = true;
                        count += 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        count == n
    }

    /// Whether the facets admit coherent orientations.
    ///
    /// `None` unless the complex is a closed pseudomanifold of dimension at
    /// least 1.
    pub fn orientable(&self) -> Option<bool> {
        if self.dimension() < 1 || !self.pseudomanifold_report().is_closed_pseudomanifold() {
            return None;
        }
        let mut by_ridge: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.boundary_faces() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        // Sign of the ridge missing vertex position p in the boundary of a
        // facet with orientation o is o * (-1)^p; neighbours must disagree.
        let induced = |f: &Simplex, r: &Simplex, o: i8| -> i8 {
            let p = f
                .vertices()
                .iter()
                .position(|v| !r.contains_vertex(*v))
                .unwrap();
            if p % 2 == 0 {
                o
            } else {
                -o
            }
        };
        let mut orient = vec![0i8; self.facets.len()];
        orient[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let f = &self.facets[i];
            for r in f.boundary_faces() {
                let s = induced(f, &r, orient[i]);
                for &j in &by_ridge[&r] {
                    if j == i {
                        continue;
                    }
                    let want = if induced(&self.facets[j], &r, 1) == s {
                        -1
                    } else {
                        1
                    };
                    if orient[j] == 0 {
                        orient[j] = want;
                        queue.push_back(j);
                    } else if orient[j] != want {
                        return Some(false);
                    }
                }
            }
        }
        Some(true)
    }

    fn require_pure_dimension(&self, d: usize) -> Result<(), SimplicialError> {
        if self.dimension() != d as isize {
            return Err(SimplicialError::DimensionMismatch {
                expected: d as isize,
                found: self.dimension(),
            });
        }
        if let Some(f) = self.facets.iter().find(|f| f.dim() != d as isize) {
            return Err(SimplicialError::NotPure(f.clone()));
        }
        Ok(())
    }

    /// Closed combinatorial `d`-manifold test: every vertex link must be a
    /// PL `(d-1)`-sphere.
    pub fn is_combinatorial_manifold(
        &self,
        d: usize,
        settings: &Settings,
    ) -> Result<Verdict, SimplicialError> {
        self.require_pure_dimension(d)?;
        Ok(self.link_verdict(d, settings, false))
    }

    /// Like [`Self::is_combinatorial_manifold`], but a vertex link may also
    /// be a PL `(d-1)`-ball.
    pub fn is_combinatorial_manifold_with_boundary(
        &self,
        d: usize,
        settings: &Settings,
    ) -> Result<Verdict, SimplicialError> {
        self.require_pure_dimension(d)?;
        Ok(self.link_verdict(d, settings, true))
    }

    fn link_verdict(&self, d: usize, settings: &Settings, allow_ball: bool) -> Verdict {
        let mut links: BTreeMap<Vertex, Verdict> = BTreeMap::new();
        let mut used = 0;
        let mut unknown = false;
        for v in self.vertices() {
            let vs = Simplex::from_sorted(vec![v]);
            let link = self.link(&vs).expect("vertex of the complex");
            let sphere = recognition::is_sphere(&link, d as isize - 1, settings)
                .expect("links of a pure complex are pure");
            used += sphere.budget_used;
            let verdict = if allow_ball && sphere.status != Status::Verified && d >= 1 {
                let ball = recognition::is_ball(&link, d - 1, settings)
                    .expect("links of a pure complex are pure");
                used += ball.budget_used;
                match (sphere.status, ball.status) {
                    (_, Status::Verified) => ball,
                    (Status::Unknown, _) | (_, Status::Unknown) => {
                        if sphere.status == Status::Unknown {
                            sphere
                        } else {
                            ball
                        }
                    }
                    _ => sphere,
                }
            } else {
                sphere
            };
            match verdict.status {
                Status::Refuted => {
                    return Verdict {
                        status: Status::Refuted,
                        witness: Witness::Refutation(Refutation::LinkNotSphere {
                            face: vs,
                            link: Box::new(verdict),
                        }),
                        budget_used: used,
                    };
                }
                Status::Unknown => unknown = true,
                Status::Verified => {}
            }
            links.insert(v, verdict);
        }
        Verdict {
            status: if unknown {
                Status::Unknown
            } else {
                Status::Verified
            },
            witness: Witness::Links { links },
            budget_used: used,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::settings::DEFAULT_FLIP_BUDGET;

    fn settings() -> Settings {
        Settings::new(DEFAULT_FLIP_BUDGET, false)
    }

    #[test]
    fn simplex_boundaries_are_manifolds() {
        for d in 1..=3 {
            let v = fixtures::simplex_boundary(d + 1)
                .is_combinatorial_manifold(d, &settings())
                .unwrap();
            assert_eq!(v.status, Status::Verified, "d = {d}");
        }
    }

    #[test]
    fn cone_over_torus_is_refuted_at_the_apex() {
        let cone = fixtures::torus().cone(100);
        let v = cone.is_combinatorial_manifold(3, &settings()).unwrap();
        assert_eq!(v.status, Status::Refuted);
        match v.witness {
            Witness::Refutation(Refutation::LinkNotSphere { face, .. }) => {
                // Vertex links of the torus vertices are discs, so the first
                // failing link is at vertex 0 (a 2-ball, not a sphere).
                assert!(
                    face == Simplex::from_sorted(vec![0])
                        || face == Simplex::from_sorted(vec![100])
                );
            }
            other => panic!("unexpected witness {other:?}"),
        }
        // The apex link itself is the torus, refuted by its Euler number.
        let apex = cone.link(&Simplex::from_sorted(vec![100])).unwrap();
        let verdict = recognition::is_sphere(&apex, 2, &settings()).unwrap();
        assert!(matches!(
            verdict.witness,
            Witness::Refutation(Refutation::Euler {
                expected: 2,
                found: 0
            })
        ));
    }

    #[test]
    fn non_pure_input_is_an_error() {
        let k = SimplicialComplex::new(vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(matches!(
            k.is_combinatorial_manifold(2, &settings()),
            Err(SimplicialError::NotPure(_))
        ));
        assert!(matches!(
            fixtures::simplex(2).is_combinatorial_manifold(1, &settings()),
            Err(SimplicialError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ball_with_boundary_links() {
        let disc = fixtures::simplex(2);
        assert_eq!(
            disc.is_combinatorial_manifold(2, &settings())
                .unwrap()
                .status,
            Status::Refuted
        );
        assert_eq!(
            disc.is_combinatorial_manifold_with_boundary(2, &settings())
                .unwrap()
                .status,
            Status::Verified
        );
    }

    #[test]
    fn pseudomanifold_and_orientation() {
        let r = fixtures::torus().pseudomanifold_report();
        assert!(r.is_closed_pseudomanifold());
        assert_eq!(fixtures::torus().orientable(), Some(true));
        assert_eq!(fixtures::simplex_boundary(3).orientable(), Some(true));
        assert_eq!(fixtures::simplex(2).orientable(), None);
        let rp2 = SimplicialComplex::new(vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
        ])
        .unwrap();
        assert_eq!(rp2.orientable(), Some(false));
        let theta = fixtures::theta_graph().pseudomanifold_report();
        assert!(!theta.is_closed_pseudomanifold());
    }
}
