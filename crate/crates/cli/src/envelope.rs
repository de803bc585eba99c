use std::path::Path;

use combifold::io::{IoError, SCHEMA};
use combifold::{AssemblyError, BallComplexError, Status};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Exit code for malformed command lines.
pub const EXIT_USAGE: i32 = 3;
/// Exit code for unreadable or unparsable input files.
pub const EXIT_INPUT: i32 = 4;

/// An input file with its digest.
#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

/// A read input file.
pub struct Source {
    pub input: Input,
    pub text: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Self, Failure> {
        let bytes = std::fs::read(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Failure::input(format!("{} is not valid UTF-8", path.display())))?;
        let input = Input {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        };
        Ok(Source { input, text })
    }
}

/// What a successful command reports.
pub struct Outcome {
    pub status: Status,
    pub certificate: Value,
    pub result: Value,
    /// Hasse diagram for `--format dot`, when the command produces a poset.
    pub dot: Option<String>,
}

impl Outcome {
    pub fn new(status: Status, certificate: impl Serialize, result: impl Serialize) -> Self {
        Outcome {
            status,
            certificate: to_json(&certificate),
            result: to_json(&result),
            dot: None,
        }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

/// A command that could not produce a verdict, or whose input was refuted
/// while loading.
#[derive(Debug)]
pub enum Failure {
    /// The input parsed but is not a valid object: a verdict with a witness.
    Verdict {
        status: Status,
        message: String,
        witness: Value,
    },
    /// Unreadable file, bad JSON, wrong schema or wrong field.
    Input(String),
    /// Flags that do not fit the command.
    Usage(String),
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure::Input(message.into())
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::Usage(message.into())
    }

    pub fn refuted(message: impl ToString, witness: Value) -> Self {
        Failure::Verdict {
            status: Status::Refuted,
            message: message.to_string(),
            witness,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Verdict { status, .. } => status.exit_code(),
            Failure::Input(_) => EXIT_INPUT,
            Failure::Usage(_) => EXIT_USAGE,
        }
    }
}

pub fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("result types serialize")
}

pub fn ball_complex_failure(e: &BallComplexError) -> Failure {
    let message = e.to_string();
    match e {
        BallComplexError::Refuted {
            element,
            rank,
            ideal,
            verdict,
        } => Failure::Verdict {
            status: Status::Refuted,
            message,
            witness: json!({ "element": element, "rank": rank, "ideal": ideal, "verdict": verdict }),
        },
        BallComplexError::Unknown {
            element,
            rank,
            ideal,
            verdict,
        } => Failure::Verdict {
            status: Status::Unknown,
            message,
            witness: json!({ "element": element, "rank": rank, "ideal": ideal, "verdict": verdict }),
        },
        BallComplexError::NotABall { verdict }
        | BallComplexError::BoundaryNotSphere { verdict } => Failure::Verdict {
            status: verdict.status,
            message,
            witness: json!({ "verdict": verdict }),
        },
        BallComplexError::Quotient(inner) => ball_complex_failure(inner),
        BallComplexError::Assembly(inner) => assembly_failure(inner),
        BallComplexError::MarkedRank { element, .. } => {
            Failure::refuted(message, json!({ "element": element }))
        }
        BallComplexError::NotLowerClosed { element, above } => {
            Failure::refuted(message, json!({ "element": element, "above": above }))
        }
        BallComplexError::NotPureBall { element, .. } => {
            Failure::refuted(message, json!({ "element": element }))
        }
        _ => Failure::refuted(message, Value::Null),
    }
}

pub fn assembly_failure(e: &AssemblyError) -> Failure {
    let message = e.to_string();
    match e {
        AssemblyError::NotBall {
            element,
            preimage,
            verdict,
        } => Failure::refuted(
            message,
            json!({ "element": element, "preimage": preimage, "verdict": verdict }),
        ),
        AssemblyError::Unknown {
            element,
            preimage,
            verdict,
        } => Failure::Verdict {
            status: Status::Unknown,
            message,
            witness: json!({ "element": element, "preimage": preimage, "verdict": verdict }),
        },
        AssemblyError::WrongDimension {
            element,
            expected,
            found,
            preimage,
        } => Failure::refuted(
            message,
            json!({ "element": element, "expected": expected, "found": found, "preimage": preimage }),
        ),
        AssemblyError::NotMonotone { x, y, fx, fy } => {
            Failure::refuted(message, json!({ "x": x, "y": y, "fx": fx, "fy": fy }))
        }
        AssemblyError::NotSurjective(element)
        | AssemblyError::Unmapped(element)
        | AssemblyError::MappedTwice(element)
        | AssemblyError::UnknownElement(element) => {
            Failure::refuted(message, json!({ "element": element }))
        }
        AssemblyError::CompositionAlarm(inner) => match assembly_failure(inner) {
            Failure::Verdict {
                status, witness, ..
            } => Failure::Verdict {
                status,
                message,
                witness: json!({ "alarm": witness }),
            },
            other => other,
        },
        _ => Failure::refuted(message, Value::Null),
    }
}

/// Loading errors: syntax, schema and field errors are input errors, the
/// rest are refutations of the loaded object.
pub fn io_failure(e: IoError) -> Failure {
    match &e {
        IoError::Syntax { .. } | IoError::Schema(_) | IoError::Field { .. } => {
            Failure::Input(e.to_string())
        }
        IoError::BallComplex(inner) => ball_complex_failure(inner),
        IoError::Assembly(inner) => assembly_failure(inner),
        IoError::Prism(combifold::bundles::PrismError::Validation(inner)) => {
            ball_complex_failure(inner)
        }
        _ => Failure::refuted(e.to_string(), Value::Null),
    }
}

/// The result document shared by every command.
#[derive(Serialize)]
pub struct Envelope<'a> {
    pub schema: &'static str,
    pub command: &'a str,
    pub status: Value,
    pub certificate: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub inputs: &'a [Input],
}

impl<'a> Envelope<'a> {
    pub fn success(command: &'a str, inputs: &'a [Input], outcome: &Outcome) -> Self {
        Envelope {
            schema: SCHEMA,
            command,
            status: to_json(&outcome.status),
            certificate: outcome.certificate.clone(),
            result: outcome.result.clone(),
            error: None,
            inputs,
        }
    }

    pub fn failure(command: &'a str, inputs: &'a [Input], failure: &Failure) -> Self {
        let (status, certificate, error) = match failure {
            Failure::Verdict {
                status,
                message,
                witness,
            } => (to_json(status), witness.clone(), message.clone()),
            Failure::Input(m) => (json!("InputError"), Value::Null, m.clone()),
            Failure::Usage(m) => (json!("UsageError"), Value::Null, m.clone()),
        };
        Envelope {
            schema: SCHEMA,
            command,
            status,
            certificate,
            result: Value::Null,
            error: Some(error),
            inputs,
        }
    }
}
