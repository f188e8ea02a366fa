//! Derivative-free optimization with limited-memory matrix adaptation.
//!
//! The crate provides four evolution-strategy variants behind a common
//! sampling/update interface:
//!
//! * [`strategies::LmMaEs`] — limited-memory matrix adaptation, O(n log n)
//!   cost per sampled candidate,
//! * [`strategies::MaEs`] — full transformation-matrix adaptation with the
//!   additive O(n²) update,
//! * [`strategies::SigmaOnlyEs`] — isotropic control strategy adapting only
//!   the global step size,
//! * [`strategies::StorageLmMaEs`] — limited-memory variant that stores past
//!   evolution-path vectors in temporally spaced slots.
//!
//! [`objectives`] carries the standard benchmark functions together with
//! rotation/translation/monotone wrappers and a score-based adversarial
//! objective; [`harness`] runs seeded experiment grids and writes plot-ready
//! CSV logs. Everything is deterministic: a run is fully reproduced by its
//! seed.

pub mod error;
pub mod harness;
pub mod objectives;
pub mod rng;
pub mod strategies;

#[cfg(any(test, feature = "test-oracles"))]
pub mod oracles;

pub use error::Error;
