//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process fails if any criterion fails or exceeds its time limit.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use combifold::alexandroff::{
    check_minimal_base, cyl_down, cyl_up, join, minimal_base, BaseCheck, Cylinder, Preorder,
};
use combifold::assembly::{compose, verify_assembly, Assembly};
use combifold::ballcomplex::{BallComplex, BallComplexError};
use combifold::bundles::{
    gauss_coloring, gauss_morphism, gauss_object, prism_complex, tangent_total, validate_coloring,
    ColoringError, CombinatorialManifold, PrismChain,
};
use combifold::poset::{is_monotone, monotone_maps};
use combifold::recognition::{homology, replay, HomologyGroup, Witness};
use combifold::{fixtures, is_sphere, Id, Settings, Simplex, SimplicialComplex, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn manifold(k: SimplicialComplex) -> CombinatorialManifold {
    CombinatorialManifold::new(k, &settings()).expect("fixture is a combinatorial manifold")
}

fn simplex(v: &[u32]) -> Simplex {
    Simplex::new(v.to_vec()).unwrap()
}

fn criterion_1() -> Outcome {
    let s = settings();
    let mut sizes = Vec::new();
    for d in 1..=3 {
        let p = fixtures::simplex_boundary(d + 1).face_poset();
        let c = BallComplex::validate(p, &s)
            .map_err(|e| format!("boundary of simplex, d = {d}: {e}"))?;
        ensure(c.status() == Status::Verified, || {
            format!("d = {d} not verified")
        })?;
        sizes.push(c.len());
    }
    ensure(sizes == [6, 14, 30], || format!("element counts {sizes:?}"))?;
    for (name, p) in [
        ("square", fixtures::square_poset()),
        ("path", fixtures::path_poset()),
    ] {
        let c = BallComplex::validate(p, &s).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.status() == Status::Verified, || {
            format!("{name} not verified")
        })?;
    }
    let witness = match BallComplex::validate(fixtures::broken_cell_poset(), &s) {
        Err(BallComplexError::Refuted {
            element, verdict, ..
        }) => {
            ensure(verdict.refutation().is_some(), || {
                "refutation carries no witness".into()
            })?;
            element
        }
        other => return Err(format!("broken cell: {other:?}")),
    };
    Ok(format!(
        "sizes {sizes:?} verified, square and path verified, broken cell refuted at {witness}"
    ))
}

fn criterion_2() -> Outcome {
    let s = settings();
    let source = BallComplex::validate(fixtures::path_poset(), &s).unwrap();
    let target = BallComplex::validate(fixtures::edge_poset(), &s).unwrap();
    let maps =
        monotone_maps(source.poset(), target.poset(), 1_000_000).map_err(|e| e.to_string())?;
    let accepted: BTreeSet<Vec<usize>> = maps
        .iter()
        .filter(|m| verify_assembly(m, &source, &target, &s).is_ok())
        .cloned()
        .collect();
    let oracle: BTreeSet<Vec<usize>> = maps
        .iter()
        .filter(|m| brute_force_assembly(source.poset(), target.poset(), m))
        .cloned()
        .collect();
    ensure(accepted == oracle, || {
        format!("accepted {accepted:?}, oracle {oracle:?}")
    })?;
    ensure(!accepted.is_empty(), || "no map accepted".into())?;
    Ok(format!(
        "{} monotone maps, {} accepted by both",
        maps.len(),
        accepted.len()
    ))
}

/// Composable pairs `(g, f)` of verified assemblies.
fn composable_pairs(s: &Settings) -> Vec<(Assembly, Assembly)> {
    let mut pairs = Vec::new();
    for m in [
        manifold(fixtures::simplex_boundary(2)),
        manifold(fixtures::simplex_boundary(3)),
    ] {
        let faces = m.complex().faces();
        for s2 in &faces {
            for s1 in faces.iter().filter(|f| f.is_face_of(s2)) {
                for s0 in faces
                    .iter()
                    .filter(|f| f.is_face_of(s1) && (*f != s1 || s1 != s2))
                {
                    let f = gauss_morphism(&m, s0, s1, s).unwrap();
                    let g = gauss_morphism(&m, s1, s2, s).unwrap();
                    pairs.push((g, f));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in chain_seeds(s) {
        for _ in 0..4 {
            let Some((q1, f)) = random_merge(&mut rng, &seed, s) else {
                break;
            };
            match random_merge(&mut rng, &q1, s) {
                Some((_, g)) => pairs.push((g, f)),
                None => pairs.push((Assembly::identity(&q1, s).unwrap(), f)),
            }
        }
    }
    let path = BallComplex::validate(fixtures::path_poset(), s).unwrap();
    let edge = BallComplex::validate(fixtures::edge_poset(), s).unwrap();
    let merge = verify_assembly(&[0, 2, 1, 2, 2], &path, &edge, s).unwrap();
    pairs.push((Assembly::identity(&edge, s).unwrap(), merge.clone()));
    pairs.push((merge, Assembly::identity(&path, s).unwrap()));
    pairs
}

fn criterion_3() -> Outcome {
    let s = settings();
    let pairs = composable_pairs(&s);
    ensure(pairs.len() >= 50, || format!("only {} pairs", pairs.len()))?;
    let alarms: Vec<String> = pairs
        .iter()
        .filter_map(|(g, f)| compose(g, f, &s).err())
        .map(|e| e.to_string())
        .collect();
    ensure(alarms.is_empty(), || {
        format!("{} alarms, first: {}", alarms.len(), alarms[0])
    })?;
    Ok(format!("{} composites re-verified, 0 alarms", pairs.len()))
}

fn check_gauss(k: SimplicialComplex, expected_flags: usize) -> Result<usize, String> {
    let s = settings();
    let m = manifold(k);
    let n = m.dim();
    let faces = m.complex().faces();
    for f in &faces {
        let g = gauss_object(&m, f, &s).map_err(|e| e.to_string())?;
        let whole =
            is_sphere(&g.poset().order_complex(), n as isize, &s).map_err(|e| e.to_string())?;
        ensure(whole.is_verified(), || {
            format!("G({f}) is not an {n}-sphere")
        })?;
        let tops = g.ranks().iter().filter(|&&r| r == n).count();
        ensure(g.marked().is_some_and(|p| g.rank(p) == n), || {
            format!("G({f}) lacks a marked top cell")
        })?;
        ensure(tops >= 2, || format!("G({f}) has {tops} top cells"))?;
    }
    let mut flags = 0;
    for top in m.complex().facets() {
        // Full flags v0 < v0v1 < ... < top, one per vertex ordering.
        for order in itertools::Itertools::permutations(top.vertices().iter().copied(), top.len()) {
            let chain: Vec<Simplex> = (1..=order.len())
                .map(|i| Simplex::new(order[..i].to_vec()).unwrap())
                .collect();
            for w in chain.windows(2) {
                let a = gauss_morphism(&m, &w[0], &w[1], &s).map_err(|e| e.to_string())?;
                ensure(a.verify_marked() == Ok(true), || {
                    format!("G({} < {}) moves the mark", w[0], w[1])
                })?;
            }
            for i in 0..chain.len() {
                for j in i..chain.len() {
                    for k in j..chain.len() {
                        let f = gauss_morphism(&m, &chain[i], &chain[j], &s).unwrap();
                        let g = gauss_morphism(&m, &chain[j], &chain[k], &s).unwrap();
                        let h = gauss_morphism(&m, &chain[i], &chain[k], &s).unwrap();
                        let gf: Vec<usize> = f.map().iter().map(|&y| g.map()[y]).collect();
                        ensure(gf == h.map(), || {
                            format!(
                                "functoriality fails on {} {} {}",
                                chain[i], chain[j], chain[k]
                            )
                        })?;
                    }
                }
            }
            flags += 1;
        }
    }
    ensure(flags == expected_flags, || {
        format!("{flags} flags, expected {expected_flags}")
    })?;
    Ok(faces.len())
}

fn criterion_4() -> Outcome {
    let a = check_gauss(fixtures::simplex_boundary(2), 6)?;
    let b = check_gauss(fixtures::simplex_boundary(3), 24)?;
    Ok(format!(
        "{a} + {b} objects are marked spheres; functorial on 6 and 24 full flags"
    ))
}

fn criterion_5() -> Outcome {
    let s = settings();
    let t2 = tangent_total(&manifold(fixtures::simplex_boundary(2)), &s, true, true)
        .map_err(|e| e.to_string())?;
    let r = &t2.report;
    ensure(
        r.dimension == 2 && r.pseudomanifold.is_closed_pseudomanifold(),
        || "not a closed surface".into(),
    )?;
    ensure(r.euler == 0, || format!("Euler number {}", r.euler))?;
    let h = r.homology.as_ref().unwrap();
    ensure(
        h.len() == 3 && h[1] == HomologyGroup::free(2) && h[2] == HomologyGroup::free(1),
        || {
            format!(
                "homology {}",
                h.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        },
    )?;
    let verdict = r.manifold.as_ref().unwrap();
    ensure(verdict.status == Status::Verified, || {
        format!("manifold verdict {:?}", verdict.status)
    })?;
    let t3 = tangent_total(&manifold(fixtures::simplex_boundary(3)), &s, false, false)
        .map_err(|e| e.to_string())?;
    let r3 = &t3.report;
    ensure(
        r3.dimension == 4 && r3.pseudomanifold.is_closed_pseudomanifold(),
        || "not a closed 4-pseudomanifold".into(),
    )?;
    ensure(r3.euler == 4, || format!("Euler number {}", r3.euler))?;
    Ok(format!(
        "torus with {} elements, chi 0, H1 = Z^2, manifold verified; 4-pseudomanifold with {} elements, chi 4",
        r.elements, r3.elements
    ))
}

fn criterion_6() -> Outcome {
    let s = settings();
    let path = BallComplex::validate(fixtures::path_poset(), &s).unwrap();
    let edge = BallComplex::validate(fixtures::edge_poset(), &s).unwrap();
    let merge = verify_assembly(&[0, 2, 1, 2, 2], &path, &edge, &s).unwrap();
    let chain = PrismChain::from_steps(path, vec![merge]).unwrap();
    let t = prism_complex(&chain, &s).map_err(|e| e.to_string())?;
    ensure(t.complex.len() == 11, || {
        format!("{} prisms", t.complex.len())
    })?;
    ensure(t.complex.f_vector() == [5, 5, 1], || {
        format!("f-vector {:?}", t.complex.f_vector())
    })?;
    ensure(t.verdict.status == Status::Verified, || {
        "order complex is not a 2-ball".into()
    })?;
    ensure(
        is_monotone(t.complex.poset(), &t.base, &t.projection).is_ok(),
        || "projection not monotone".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..10 {
        let chain = random_chain(&mut rng, 3, &s);
        let t = prism_complex(&chain, &s).map_err(|e| format!("random chain {i}: {e}"))?;
        let expected = prism_count_by_subsets(&chain);
        ensure(t.complex.len() == expected, || {
            format!(
                "random chain {i}: {} cells, formula {expected}",
                t.complex.len()
            )
        })?;
    }
    Ok(
        "11 prisms, f = (5,5,1), 2-ball, monotone projection; 10 random chains match the count"
            .into(),
    )
}

fn join_matches(r: &Relation, t: &Relation, universe: Option<&[Relation]>) -> Result<(), String> {
    let (rp, tp) = (to_preorder(r), to_preorder(t));
    let j = join(&rp, &tp).map_err(|e| e.to_string())?;
    let got = relation_of(&j.preorder);
    let expected = match universe {
        Some(u) => brute_join(r, t, u),
        None => {
            let n = r.len();
            (0..n)
                .map(|x| (0..n).map(|y| r[x][y] && t[x][y]).collect())
                .collect()
        }
    };
    ensure(got == expected, || format!("join of {r:?} and {t:?}"))?;
    // The pairing hits every base member of the join exactly once.
    let base: BTreeSet<Vec<Id>> = minimal_base(&j.preorder).member_ids().into_iter().collect();
    let paired: Vec<Vec<Id>> = j.pairing.iter().map(|p| p.member.clone()).collect();
    let distinct: BTreeSet<Vec<Id>> = paired.iter().cloned().collect();
    ensure(distinct.len() == paired.len() && distinct == base, || {
        format!("pairing of {r:?} and {t:?} is not a bijection")
    })
}

fn round_trip(rel: &Relation) -> Result<(), String> {
    let t = to_preorder(rel);
    match check_minimal_base(&minimal_base(&t)) {
        BaseCheck::Accepted(back) if relation_of(&back) == *rel => Ok(()),
        other => Err(format!("minimal base of {rel:?} gives {other:?}")),
    }
}

/// Maps out of the cylinder, restricted to the two ends, against pairs
/// `(alpha, beta)` satisfying the inequality.
fn universality(
    cyl: &Cylinder,
    a: &Preorder,
    b: &Preorder,
    phi: &[usize],
    x: &Preorder,
) -> Result<(), String> {
    let mut restrictions: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for m in all_maps(cyl.preorder.len(), x.len()) {
        if preorder_monotone(&cyl.preorder, x, &m) {
            restrictions.push((
                cyl.i0.iter().map(|&p| m[p]).collect(),
                cyl.i1.iter().map(|&p| m[p]).collect(),
            ));
        }
    }
    let distinct: BTreeSet<_> = restrictions.iter().cloned().collect();
    ensure(distinct.len() == restrictions.len(), || {
        "mediating map not unique".into()
    })?;
    for alpha in all_maps(a.len(), x.len())
        .into_iter()
        .filter(|m| preorder_monotone(a, x, m))
    {
        for beta in all_maps(b.len(), x.len())
            .into_iter()
            .filter(|m| preorder_monotone(b, x, m))
        {
            let holds = (0..a.len()).all(|p| {
                if cyl.upward {
                    x.le(beta[phi[p]], alpha[p])
                } else {
                    x.le(alpha[p], beta[phi[p]])
                }
            });
            let exists = distinct.contains(&(alpha.clone(), beta.clone()));
            ensure(holds == exists, || {
                format!("alpha {alpha:?}, beta {beta:?}: inequality {holds}, map {exists}")
            })?;
            let mediated = cyl.mediate(a, b, phi, x, &alpha, &beta);
            ensure(mediated.is_ok() == holds, || {
                "mediate disagrees with enumeration".into()
            })?;
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut checked = 0usize;
    let by_size: Vec<Vec<Relation>> = (0..=5).map(all_preorders).collect();
    let counts: Vec<usize> = by_size.iter().map(Vec::len).collect();
    ensure(counts == [1, 1, 4, 29, 355, 6942], || {
        format!("preorder counts {counts:?}")
    })?;
    for rels in &by_size {
        for rel in rels {
            round_trip(rel)?;
            checked += 1;
        }
    }
    let mut joins = 0usize;
    for n in 0..=3 {
        for r in &by_size[n] {
            for t in &by_size[n] {
                join_matches(r, t, Some(&by_size[n]))?;
                joins += 1;
            }
        }
    }
    for r in preorders_up_to_iso(4) {
        for t in &by_size[4] {
            join_matches(&r, t, Some(&by_size[4]))?;
            joins += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let r = random_preorder(&mut rng, n);
        let t = random_preorder(&mut rng, n);
        round_trip(&r)?;
        join_matches(&r, &t, None)?;
        checked += 1;
        joins += 1;
    }
    let small: Vec<Preorder> = by_size[..=2].iter().flatten().map(to_preorder).collect();
    let targets: Vec<Preorder> = by_size[..=3].iter().flatten().map(to_preorder).collect();
    let mut cylinders = 0usize;
    for a in &small {
        for b in &small {
            for phi in all_maps(a.len(), b.len())
                .into_iter()
                .filter(|m| preorder_monotone(a, b, m))
            {
                let up = cyl_up(a, b, &phi).map_err(|e| e.to_string())?;
                let down = cyl_down(a, b, &phi).map_err(|e| e.to_string())?;
                for x in &targets {
                    universality(&up, a, b, &phi, x)?;
                    universality(&down, a, b, &phi, x)?;
                }
                cylinders += 2;
            }
        }
    }
    Ok(format!("{checked} base round trips, {joins} joins with bijective pairing, {cylinders} cylinders universal"))
}

fn criterion_8() -> Outcome {
    let s = settings();
    for d in 0..=3usize {
        let h = homology(&fixtures::simplex_boundary(d + 1));
        let expected: Vec<HomologyGroup> = if d == 0 {
            vec![HomologyGroup::free(2)]
        } else {
            (0..=d)
                .map(|i| HomologyGroup::free(usize::from(i == 0 || i == d)))
                .collect()
        };
        ensure(h == expected, || format!("homology of the {d}-sphere"))?;
    }
    let k = fixtures::simplex_boundary(4).barycentric_subdivision(1);
    let v = is_sphere(&k, 3, &s).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Verified, || {
        format!("sd(boundary of 4-simplex): {:?}", v.status)
    })?;
    let cert = match &v.witness {
        Witness::Flips { certificate } => certificate,
        other => return Err(format!("unexpected witness {other:?}")),
    };
    ensure(v.budget_used <= s.flip_budget, || "budget exceeded".into())?;
    let end = replay(&k, cert).map_err(|e| e.to_string())?;
    let verts: Vec<u32> = end.vertices();
    let target = fixtures::simplex_boundary(4).relabel(|i| verts[i as usize]);
    ensure(end.facets() == target.facets(), || {
        "replay does not end at the boundary of a 4-simplex".into()
    })?;
    let theta = is_sphere(&fixtures::theta_graph(), 1, &s).map_err(|e| e.to_string())?;
    ensure(theta.status == Status::Refuted, || {
        "theta graph not refuted".into()
    })?;
    Ok(format!(
        "sphere homology for d <= 3; {} facets reduced in {} moves and replayed; theta refuted",
        k.facets().len(),
        cert.moves.len()
    ))
}

fn criterion_9() -> Outcome {
    let s = settings();
    let m = manifold(fixtures::simplex_boundary(3));
    let mut c = gauss_coloring(&m, &s).map_err(|e| e.to_string())?;
    let report = validate_coloring(&c, true).map_err(|e| e.to_string())?;
    // Retarget the edge from vertex 0 to triangle 0,1,2 through the swap of
    // the triangle and the mark, an automorphism of the triangle's object.
    let faces = m.complex().faces();
    let u = faces.iter().position(|f| *f == simplex(&[0])).unwrap() as u32;
    let v = faces
        .iter()
        .position(|f| *f == simplex(&[0, 1, 2]))
        .unwrap() as u32;
    let label = c.edge_labels[&(u, v)].clone();
    let target = label.target().clone();
    let tp = target.poset();
    let (t, mark) = (
        tp.index_of(&simplex(&[0, 1, 2]).name()).unwrap(),
        tp.index_of(&Id::from("M")).unwrap(),
    );
    let swap: Vec<usize> = (0..tp.len())
        .map(|x| {
            if x == t {
                mark
            } else if x == mark {
                t
            } else {
                x
            }
        })
        .collect();
    let swap = verify_assembly(&swap, &target, &target, &s).map_err(|e| e.to_string())?;
    let tampered = compose(&swap, &label, &s).map_err(|e| e.to_string())?;
    ensure(
        tampered.status() == Status::Verified && tampered.map() != label.map(),
        || "tamper is not a new assembly".into(),
    )?;
    c.edge_labels.insert((u, v), tampered);
    match validate_coloring(&c, true) {
        Err(ColoringError::NonCommuting { triangle, element }) => {
            ensure(triangle.contains(&u) && triangle.contains(&v), || {
                format!("witness {triangle:?} misses the edge")
            })?;
            Ok(format!(
                "{} vertices, {} edges, {} triangles commute; tamper caught at triangle {triangle:?}, element {element}",
                report.vertices, report.edges, report.triangles
            ))
        }
        other => Err(format!("tampered coloring: {other:?}")),
    }
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("ball-complex validation", 1, criterion_1),
        ("assembly oracle equivalence", 5, criterion_2),
        ("composition closure", 60, criterion_3),
        ("Gauss functor", 10, criterion_4),
        ("tangent total space", 60, criterion_5),
        ("prism complex", 5, criterion_6),
        ("Alexandroff calculus", 60, criterion_7),
        ("recognition engine", 120, criterion_8),
        ("coloring validation", 10, criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {} ({name}): {tag} in {:.2} s (limit {} s): {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        failed += usize::from(outcome.is_err());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
