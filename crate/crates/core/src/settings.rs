/// Flip budget used by the CLI when `--budget` is not given.
pub const DEFAULT_FLIP_BUDGET: usize = 10_000;

/// Knobs shared by every certifying operation.
///
/// There is no `Default` impl: callers state the budget and
/// strictness they want so certificates stay reproducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Maximum number of bistellar moves per flip search.
    pub flip_budget: usize,
    /// Treat `Unknown` recognition verdicts as failures.
    pub strict: bool,
    /// Worker threads for per-element validation. `1` is fully sequential.
    pub threads: usize,
}

impl Settings {
    pub fn new(flip_budget: usize, strict: bool) -> Self {
        Settings {
            flip_budget,
            strict,
            threads: 1,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}
