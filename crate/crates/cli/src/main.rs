mod commands;
mod envelope;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use combifold::{Settings, DEFAULT_FLIP_BUDGET};

use envelope::{Envelope, Failure, EXIT_INPUT, EXIT_USAGE};

/// Certified constructions on ball complexes, assemblies and Alexandroff
/// spaces.
#[derive(Parser, Debug)]
#[command(name = "combifold", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug)]
pub struct Options {
    /// Treat inconclusive recognition as failure.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Bistellar flip budget per sphere search.
    #[arg(long, global = true, default_value_t = DEFAULT_FLIP_BUDGET)]
    pub budget: usize,
    /// Write the result document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for per-element validation.
    #[arg(long, global = true, env = "COMBIFOLD_THREADS", default_value_t = 1)]
    pub threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// Graphviz Hasse diagram of the produced poset.
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Checks that a poset is a ball complex.
    ValidateBallComplex { file: PathBuf },
    /// Checks that a map of ball complexes is an assembly.
    ///
    /// FILE holds source, target and map, or only the map when `--source`
    /// and `--target` are given.
    CheckAssembly {
        file: PathBuf,
        #[arg(long, requires = "target")]
        source: Option<PathBuf>,
        #[arg(long, requires = "source")]
        target: Option<PathBuf>,
    },
    /// Composes `first: A -> B` with `second: B -> C` and re-verifies.
    Compose { first: PathBuf, second: PathBuf },
    /// Gauss objects, morphisms or the whole Gauss coloring of a manifold.
    Gauss {
        manifold: PathBuf,
        /// Face as comma-separated vertices, e.g. `0,2`.
        #[arg(long)]
        simplex: Option<String>,
        /// Larger face for the morphism from `--simplex`.
        #[arg(long, requires = "simplex")]
        to: Option<String>,
    },
    /// Order complex of the tangent total space of a manifold.
    TangentTotal {
        manifold: PathBuf,
        /// Also compute integral homology.
        #[arg(long)]
        homology: bool,
        /// Also run the vertex-link manifold test.
        #[arg(long)]
        manifold_test: bool,
    },
    /// Prismatic decomposition of a chain of assemblies.
    Prism { chain: PathBuf },
    /// PL sphere recognition.
    IsSphere {
        file: PathBuf,
        /// Defaults to the dimension of the complex.
        #[arg(long, allow_negative_numbers = true)]
        dim: Option<isize>,
    },
    /// PL ball recognition.
    IsBall {
        file: PathBuf,
        /// Defaults to the dimension of the complex.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Integral simplicial homology.
    Homology { file: PathBuf },
    /// Finite topologies given as preorders.
    #[command(subcommand)]
    Alexandroff(AlexandroffCommand),
    /// Checks labels and commutativity of a coloring.
    ValidateColoring { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum AlexandroffCommand {
    /// Minimal base of a preorder.
    Base { file: PathBuf },
    /// Checks that a cover is the minimal base of a topology.
    CheckBase { file: PathBuf },
    /// Weakest common strengthening of two preorders, with its pairing.
    Join { file: PathBuf },
    /// Upward mapping cylinder of a monotone map.
    CylUp { file: PathBuf },
    /// Downward mapping cylinder of a monotone map.
    CylDown { file: PathBuf },
    /// Inscribes the base of `r` into the base of the dense topology `t`.
    Inscribe { file: PathBuf },
    /// Topology generated by a cover.
    FromCover { file: PathBuf },
    /// The topology with minimal base `{A}` plus singletons off `A`.
    DTop { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            let f = Failure::usage(e.kind().to_string());
            print!("{}", render(&Envelope::failure("combifold", &[], &f)));
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    ExitCode::from(run(cli) as u8)
}

fn run(cli: Cli) -> i32 {
    let o = &cli.options;
    let settings = Settings::new(o.budget, o.strict).with_threads(o.threads);
    let name = commands::name(&cli.command);
    let (inputs, outcome) = commands::run(&cli.command, &settings);
    let (text, code) = match &outcome {
        Ok(out) => match (o.format, &out.dot) {
            (Format::Json, _) => (
                render(&Envelope::success(&name, &inputs, out)),
                out.status.exit_code(),
            ),
            (Format::Dot, Some(dot)) => (dot.clone(), out.status.exit_code()),
            (Format::Dot, None) => {
                let f = Failure::usage(format!("{name} produces no poset for --format dot"));
                (
                    render(&Envelope::failure(&name, &inputs, &f)),
                    f.exit_code(),
                )
            }
        },
        Err(f) => (render(&Envelope::failure(&name, &inputs, f)), f.exit_code()),
    };
    if let Err(Failure::Input(m) | Failure::Usage(m)) = &outcome {
        eprintln!("error: {m}");
    }
    match &o.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return EXIT_INPUT;
            }
        }
    }
    code
}

fn render(e: &Envelope) -> String {
    let mut s = serde_json::to_string_pretty(e).expect("envelope serializes");
    s.push('\n');
    s
}
