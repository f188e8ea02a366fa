//! Objective functions: benchmark suite, search-space wrappers and the
//! score-based adversarial objective.
//!
//! Every objective is a pure map `R^n -> R` plus an evaluation counter.
//! Budgets throughout the crate are expressed in function evaluations, so
//! counting lives here rather than in the optimizers.

mod adversarial;
mod benchmarks;
mod transforms;

pub use adversarial::{adversarial_objective, BoxRegion, BoxStubClassifier, ClassifierOracle};
pub use benchmarks::{make_benchmark, BenchmarkId};
pub use transforms::{make_rotation, monotone_wrap, rotate_wrap, translate_wrap, RotationMatrix};

use std::sync::atomic::{AtomicU64, Ordering};

/// A dimension-tagged scalar field over `R^n` with an evaluation counter.
///
/// The wrapped closure must be pure (same input, same output). The counter
/// is the only mutable element and is updated atomically, so immutable
/// objectives may be shared across threads.
pub struct Objective {
    id: String,
    dim: usize,
    eval_fn: Box<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    evals: AtomicU64,
}

impl Objective {
    pub fn new(
        id: impl Into<String>,
        dim: usize,
        eval_fn: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Objective {
            id: id.into(),
            dim,
            eval_fn: Box::new(eval_fn),
            evals: AtomicU64::new(0),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates the objective, incrementing the counter by exactly one.
    ///
    /// Panics if `x` has the wrong length.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "objective `{}` expects n = {}", self.id, self.dim);
        self.evals.fetch_add(1, Ordering::Relaxed);
        (self.eval_fn)(x)
    }

    /// Number of `evaluate` calls so far.
    pub fn eval_count(&self) -> u64 {
        self.evals.load(Ordering::Relaxed)
    }
}

impl std::fmt::Debug for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Objective")
            .field("id", &self.id)
            .field("dim", &self.dim)
            .field("evals", &self.eval_count())
            .finish()
    }
}
