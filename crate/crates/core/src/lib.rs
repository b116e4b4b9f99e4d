//! Ground states of a two-body system confined to a hard-wall sphere.
//!
//! The variational side uses the trial family `ψ = N (r - z) e^{-a r^b}`, which
//! vanishes at the wall `r = z`, and minimizes `⟨H⟩` over `a`. The [`exact`]
//! module solves the same radial problem by finite differences and serves as
//! the lower reference for every variational energy.
//!
//! ```
//! use confine::{minimize_energy, ExpectationMode, PotentialModel, SolveOptions};
//!
//! let cornell = PotentialModel::cornell(0.5, 2.0).unwrap();
//! let opts = SolveOptions::with_mode(ExpectationMode::Normalized);
//! let sol = minimize_energy(&cornell, 1.0, 1.0, 1.0, &opts).unwrap();
//! assert!(sol.energy < 4.75);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod exact;
pub mod exec;
pub mod expectation;
pub mod numfmt;
pub mod potential;
pub mod quad;
pub mod trial;
pub mod varsolve;

pub use error::{Error, Result};
pub use exact::{convergence_order, ground_state, ExactConfig, ExactSolution};
pub use exec::Exec;
pub use expectation::{
    hamiltonian_expect, kinetic_expect, potential_expect, ExpectationBreakdown, ExpectationMode,
};
pub use potential::PotentialModel;
pub use quad::{integrate, Integral, QuadratureConfig};
pub use trial::{NormalizedTrial, TrialSpec};
pub use varsolve::{minimize_energy, stationarity_check, SolveOptions, VariationalSolution};
