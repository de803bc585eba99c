use std::path::Path;

use combifold::alexandroff::{
    check_minimal_base, cyl_down, cyl_up, d_topology, inscribe, join, minimal_base, sigma_classes,
    topology_from_cover, AlexandroffError, BaseCheck, Cylinder, Preorder,
};
use combifold::bundles::{gauss_morphism, gauss_object, ColoringError, GaussError, PrismError};
use combifold::io::{
    parse, AssemblyDoc, BallComplexDoc, ColoringDoc, CylinderDoc, DTopologyDoc, IoError, MapDoc,
    PreorderDoc, PreorderPairDoc, PrismChainDoc, SetCoverDoc, SimplicialDoc,
};
use combifold::recognition::homology;
use combifold::{
    compose, gauss_coloring, is_ball, is_sphere, prism_complex, tangent_total, validate_coloring,
    Assembly, CombinatorialManifold, Id, Settings, Simplex, SimplicialComplex, Status, Vertex,
};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::envelope::{
    assembly_failure, ball_complex_failure, io_failure, to_json, Failure, Input, Outcome, Source,
};
use crate::{AlexandroffCommand, Command};

/// Name of the command as written on the command line.
pub fn name(cmd: &Command) -> String {
    let alex = |s: &str| format!("alexandroff {s}");
    match cmd {
        Command::ValidateBallComplex { .. } => "validate-ball-complex".into(),
        Command::CheckAssembly { .. } => "check-assembly".into(),
        Command::Compose { .. } => "compose".into(),
        Command::Gauss { .. } => "gauss".into(),
        Command::TangentTotal { .. } => "tangent-total".into(),
        Command::Prism { .. } => "prism".into(),
        Command::IsSphere { .. } => "is-sphere".into(),
        Command::IsBall { .. } => "is-ball".into(),
        Command::Homology { .. } => "homology".into(),
        Command::ValidateColoring { .. } => "validate-coloring".into(),
        Command::Alexandroff(a) => match a {
            AlexandroffCommand::Base { .. } => alex("base"),
            AlexandroffCommand::CheckBase { .. } => alex("check-base"),
            AlexandroffCommand::Join { .. } => alex("join"),
            AlexandroffCommand::CylUp { .. } => alex("cyl-up"),
            AlexandroffCommand::CylDown { .. } => alex("cyl-down"),
            AlexandroffCommand::Inscribe { .. } => alex("inscribe"),
            AlexandroffCommand::FromCover { .. } => alex("from-cover"),
            AlexandroffCommand::DTop { .. } => alex("d-top"),
        },
    }
}

/// Input files read so far, in command line order.
struct Context<'a> {
    settings: &'a Settings,
    inputs: Vec<Input>,
}

impl Context<'_> {
    fn load<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, Failure> {
        let source = Source::read(path)?;
        self.inputs.push(source.input);
        parse(&source.text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }

    fn complex(&mut self, path: &Path) -> Result<SimplicialComplex, Failure> {
        self.load::<SimplicialDoc>(path)?
            .to_complex()
            .map_err(io_failure)
    }

    fn manifold(&mut self, path: &Path) -> Result<CombinatorialManifold, Failure> {
        let k = self.complex(path)?;
        CombinatorialManifold::new(k, self.settings).map_err(gauss_failure)
    }
}

pub fn run(cmd: &Command, settings: &Settings) -> (Vec<Input>, Result<Outcome, Failure>) {
    let mut cx = Context {
        settings,
        inputs: Vec::new(),
    };
    let out = dispatch(cmd, &mut cx);
    (cx.inputs, out)
}

fn dispatch(cmd: &Command, cx: &mut Context) -> Result<Outcome, Failure> {
    let s = cx.settings;
    match cmd {
        Command::ValidateBallComplex { file } => {
            let c = cx
                .load::<BallComplexDoc>(file)?
                .load(s)
                .map_err(io_failure)?;
            let result = json!({
                "elements": c.len(),
                "dimension": c.dim(),
                "f_vector": c.f_vector(),
                "marked": c.marked_id(),
            });
            Ok(Outcome::new(c.status(), c.certificate(), result).with_dot(c.poset().to_dot()))
        }
        Command::CheckAssembly {
            file,
            source,
            target,
        } => {
            let a = match (source, target) {
                (Some(source), Some(target)) => {
                    let source = cx
                        .load::<BallComplexDoc>(source)?
                        .load(s)
                        .map_err(io_failure)?;
                    let target = cx
                        .load::<BallComplexDoc>(target)?
                        .load(s)
                        .map_err(io_failure)?;
                    cx.load::<MapDoc>(file)?
                        .load(&source, &target, s)
                        .map_err(io_failure)?
                }
                _ => cx.load::<AssemblyDoc>(file)?.load(s).map_err(io_failure)?,
            };
            Ok(assembly_outcome(&a))
        }
        Command::Compose { first, second } => {
            let f = cx.load::<AssemblyDoc>(first)?.load(s).map_err(io_failure)?;
            let g = cx
                .load::<AssemblyDoc>(second)?
                .load(s)
                .map_err(io_failure)?;
            let c = compose(&g, &f, s).map_err(|e| assembly_failure(&e))?;
            Ok(assembly_outcome(&c))
        }
        Command::Gauss {
            manifold,
            simplex,
            to,
        } => {
            let m = cx.manifold(manifold)?;
            match (simplex, to) {
                (None, _) => {
                    let c = gauss_coloring(&m, s).map_err(gauss_failure)?;
                    let report = validate_coloring(&c, s.strict).map_err(coloring_failure)?;
                    Ok(Outcome::new(
                        Status::Verified,
                        report,
                        ColoringDoc::from_coloring(&c),
                    ))
                }
                (Some(s0), None) => {
                    let s0 = face_of(&m, s0)?;
                    let g = gauss_object(&m, &s0, s).map_err(gauss_failure)?;
                    let result = BallComplexDoc::from_complex(&g);
                    Ok(Outcome::new(g.status(), g.certificate(), result)
                        .with_dot(g.poset().to_dot()))
                }
                (Some(s0), Some(s1)) => {
                    let (s0, s1) = (face_of(&m, s0)?, face_of(&m, s1)?);
                    if !s0.is_face_of(&s1) {
                        return Err(Failure::usage(format!("{s0} is not a face of {s1}")));
                    }
                    let a = gauss_morphism(&m, &s0, &s1, s).map_err(gauss_failure)?;
                    Ok(assembly_outcome(&a))
                }
            }
        }
        Command::TangentTotal {
            manifold,
            homology,
            manifold_test,
        } => {
            let m = cx.manifold(manifold)?;
            let t = tangent_total(&m, s, *homology, *manifold_test).map_err(gauss_failure)?;
            let r = &t.report;
            let status = match &r.manifold {
                Some(v) => v.status,
                None => {
                    let closed = r.pseudomanifold.ridge_defects.is_empty()
                        && r.pseudomanifold.strongly_connected;
                    if closed && r.euler == r.expected_euler {
                        Status::Verified
                    } else {
                        Status::Refuted
                    }
                }
            };
            let certificate = json!({ "pseudomanifold": r.pseudomanifold, "manifold": r.manifold });
            Ok(Outcome::new(status, certificate, r).with_dot(t.poset.to_dot()))
        }
        Command::Prism { chain } => {
            let chain = cx
                .load::<PrismChainDoc>(chain)?
                .load(s)
                .map_err(io_failure)?;
            let p = prism_complex(&chain, s).map_err(prism_failure)?;
            let report = p.report(&chain);
            let poset = p.complex.poset();
            let projection: Vec<(Id, Id)> = (0..poset.len())
                .map(|x| (poset.id(x).clone(), p.base.id(p.projection[x]).clone()))
                .collect();
            let result = json!({
                "report": report,
                "complex": BallComplexDoc::from_complex(&p.complex),
                "projection": projection,
            });
            let certificate = json!({ "verdict": p.verdict, "cells": p.complex.certificate() });
            Ok(Outcome::new(report.status, certificate, result).with_dot(poset.to_dot()))
        }
        Command::IsSphere { file, dim } => {
            let k = cx.complex(file)?;
            let d = dim.unwrap_or(k.dimension());
            let v = is_sphere(&k, d, s).map_err(|e| Failure::refuted(e, Value::Null))?;
            Ok(Outcome::new(v.status, &v, recognition_result(&k, d, &v)))
        }
        Command::IsBall { file, dim } => {
            let k = cx.complex(file)?;
            let d = match dim {
                Some(d) => *d,
                None => usize::try_from(k.dimension()).map_err(|_| {
                    Failure::refuted("the empty complex is not a ball", Value::Null)
                })?,
            };
            let v = is_ball(&k, d, s).map_err(|e| Failure::refuted(e, Value::Null))?;
            Ok(Outcome::new(
                v.status,
                &v,
                recognition_result(&k, d as isize, &v),
            ))
        }
        Command::Homology { file } => {
            let k = cx.complex(file)?;
            let groups = homology(&k);
            let certificate =
                json!({ "f_vector": k.f_vector(), "euler": k.euler_characteristic() });
            Ok(Outcome::new(
                Status::Verified,
                certificate,
                json!({ "groups": groups }),
            ))
        }
        Command::ValidateColoring { file } => {
            let c = cx.load::<ColoringDoc>(file)?.load(s).map_err(io_failure)?;
            let report = validate_coloring(&c, s.strict).map_err(coloring_failure)?;
            Ok(Outcome::new(Status::Verified, &report, &report))
        }
        Command::Alexandroff(a) => alexandroff(a, cx),
    }
}

fn alexandroff(cmd: &AlexandroffCommand, cx: &mut Context) -> Result<Outcome, Failure> {
    let alex = |e: AlexandroffError| alexandroff_failure(&e);
    let preorder = |cx: &mut Context, p: &Path| -> Result<Preorder, Failure> {
        cx.load::<PreorderDoc>(p)?.to_preorder().map_err(io_failure)
    };
    let pair = |cx: &mut Context, p: &Path| -> Result<(Preorder, Preorder), Failure> {
        let doc = cx.load::<PreorderPairDoc>(p)?;
        Ok((
            doc.r.to_preorder().map_err(io_failure)?,
            doc.t.to_preorder().map_err(io_failure)?,
        ))
    };
    match cmd {
        AlexandroffCommand::Base { file } => {
            let t = preorder(cx, file)?;
            let base = minimal_base(&t);
            Ok(Outcome::new(
                Status::Verified,
                sigma_classes(&t),
                SetCoverDoc::from_cover(&base),
            )
            .with_poset(&t))
        }
        AlexandroffCommand::CheckBase { file } => {
            let cover = cx
                .load::<SetCoverDoc>(file)?
                .to_cover()
                .map_err(io_failure)?;
            match check_minimal_base(&cover) {
                BaseCheck::Accepted(t) => Ok(Outcome::new(
                    Status::Verified,
                    Value::Null,
                    PreorderDoc::from_preorder(&t),
                )
                .with_poset(&t)),
                BaseCheck::Rejected(v) => {
                    Err(Failure::refuted("cover is not a minimal base", to_json(&v)))
                }
            }
        }
        AlexandroffCommand::Join { file } => {
            let (r, t) = pair(cx, file)?;
            let j = join(&r, &t).map_err(alex)?;
            let result = json!({ "preorder": PreorderDoc::from_preorder(&j.preorder) });
            Ok(
                Outcome::new(Status::Verified, json!({ "pairing": j.pairing }), result)
                    .with_poset(&j.preorder),
            )
        }
        AlexandroffCommand::CylUp { file } | AlexandroffCommand::CylDown { file } => {
            let (a, b, phi) = cx.load::<CylinderDoc>(file)?.load().map_err(io_failure)?;
            let build = if matches!(cmd, AlexandroffCommand::CylUp { .. }) {
                cyl_up
            } else {
                cyl_down
            };
            let c = build(&a, &b, &phi).map_err(alex)?;
            Ok(cylinder_outcome(&a, &b, &c))
        }
        AlexandroffCommand::Inscribe { file } => {
            let (r, t) = pair(cx, file)?;
            let i = inscribe(&r, &t).map_err(alex)?;
            Ok(Outcome::new(Status::Verified, Value::Null, i))
        }
        AlexandroffCommand::FromCover { file } => {
            let cover = cx
                .load::<SetCoverDoc>(file)?
                .to_cover()
                .map_err(io_failure)?;
            let t = topology_from_cover(&cover);
            Ok(Outcome::new(
                Status::Verified,
                Value::Null,
                PreorderDoc::from_preorder(&t),
            )
            .with_poset(&t))
        }
        AlexandroffCommand::DTop { file } => {
            let doc = cx.load::<DTopologyDoc>(file)?;
            let t = d_topology(&doc.ground, &doc.subset).map_err(alex)?;
            Ok(Outcome::new(
                Status::Verified,
                Value::Null,
                PreorderDoc::from_preorder(&t),
            )
            .with_poset(&t))
        }
    }
}

impl Outcome {
    /// Dot output for preorders that are partial orders.
    fn with_poset(self, t: &Preorder) -> Self {
        match t.to_poset() {
            Some(p) => self.with_dot(p.to_dot()),
            None => self,
        }
    }
}

fn cylinder_outcome(a: &Preorder, b: &Preorder, c: &Cylinder) -> Outcome {
    let embed = |from: &Preorder, map: &[usize]| -> Vec<(Id, Id)> {
        from.points()
            .iter()
            .zip(map)
            .map(|(x, &i)| (x.clone(), c.preorder.points()[i].clone()))
            .collect()
    };
    let result = json!({
        "preorder": PreorderDoc::from_preorder(&c.preorder),
        "i0": embed(a, &c.i0),
        "i1": embed(b, &c.i1),
    });
    Outcome::new(Status::Verified, json!({ "upward": c.upward }), result).with_poset(&c.preorder)
}

fn assembly_outcome(a: &Assembly) -> Outcome {
    Outcome::new(a.status(), a.certificate(), AssemblyDoc::from_assembly(a))
}

fn recognition_result(k: &SimplicialComplex, d: isize, v: &combifold::Verdict) -> Value {
    json!({ "dimension": d, "f_vector": k.f_vector(), "budget_used": v.budget_used })
}

fn face_of(m: &CombinatorialManifold, text: &str) -> Result<Simplex, Failure> {
    let vertices = text
        .split(',')
        .map(|v| v.trim().parse::<Vertex>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| {
            Failure::usage(format!(
                "cannot read simplex {text:?}, expected vertices like 0,1,2"
            ))
        })?;
    let s = Simplex::new(vertices).map_err(|e| Failure::usage(e.to_string()))?;
    if !m.complex().contains(&s) {
        return Err(Failure::usage(format!("{s} is not a face of the manifold")));
    }
    Ok(s)
}

fn gauss_failure(e: GaussError) -> Failure {
    match &e {
        GaussError::NotManifold(status) => Failure::Verdict {
            status: *status,
            message: e.to_string(),
            witness: Value::Null,
        },
        GaussError::Object { source, .. } => ball_complex_failure(source),
        GaussError::Morphism { source, .. } => assembly_failure(source),
        GaussError::NotNested(..) => Failure::usage(e.to_string()),
        _ => Failure::refuted(e, Value::Null),
    }
}

fn coloring_failure(e: ColoringError) -> Failure {
    match &e {
        ColoringError::NonCommuting { triangle, element } => {
            Failure::refuted(&e, json!({ "triangle": triangle, "element": element }))
        }
        ColoringError::EdgeStatus(u, v, status) => Failure::Verdict {
            status: *status,
            message: e.to_string(),
            witness: json!({ "edge": [u, v] }),
        },
        ColoringError::MissingVertexLabel(v) => Failure::refuted(&e, json!({ "vertex": v })),
        ColoringError::MissingEdgeLabel(u, v) | ColoringError::EndpointMismatch(u, v) => {
            Failure::refuted(&e, json!({ "edge": [u, v] }))
        }
        ColoringError::NoLocalOrder => Failure::refuted(&e, Value::Null),
    }
}

fn prism_failure(e: PrismError) -> Failure {
    match &e {
        PrismError::Validation(inner) => ball_complex_failure(inner),
        _ => io_failure(IoError::Prism(e)),
    }
}

fn alexandroff_failure(e: &AlexandroffError) -> Failure {
    let witness = match e {
        AlexandroffError::NotDense { left, right } => json!({ "left": left, "right": right }),
        AlexandroffError::NotInscribed { member } => json!({ "member": member }),
        AlexandroffError::NotMonotone { x, y } => json!({ "x": x, "y": y }),
        AlexandroffError::UnknownPoint(p) | AlexandroffError::DuplicatePoint(p) => {
            json!({ "point": p })
        }
        _ => Value::Null,
    };
    Failure::refuted(e, witness)
}
