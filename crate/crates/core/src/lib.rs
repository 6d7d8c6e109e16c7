//! Quantum discord and logarithmic negativity for the generalized n-qubit
//! Werner family ρ_W(n, p) = p·|GHZ⟩⟨GHZ| + (1 − p)·I/2ⁿ, measured across
//! the last qubit.
//!
//! Every quantity is computed two independent ways:
//!
//! * **Structured route** — closed forms over the family's few distinct
//!   eigenvalues, carried in log-domain scaled form
//!   ([`werner::StructuredSpectrum`]) so that n = 1024 works even though the
//!   raw eigenvalues underflow f64 and the multiplicities overflow u128.
//! * **Dense route** — a from-scratch pipeline (Kronecker products, partial
//!   trace/transpose, a cyclic Jacobi eigensolver, grid minimization over
//!   measurement angles) that materializes the actual matrices up to n = 12
//!   and knows nothing about the closed forms.
//!
//! The integration tests hold the two routes against each other; the
//! `wernerq` CLI batch-produces curves, cross-verification reports, and
//! timing comparisons on top of them.
//!
//! With the default `parallel` feature, measurement-grid sweeps and batch
//! evaluations fan out through rayon; disabling it gives a dependency-free
//! sequential build with bit-identical results.

pub mod discord;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod negativity;
pub mod werner;

pub use discord::{
    discord_closed, discord_limit, discord_limit_gap, discord_numeric,
    discord_second_derivative, DiscordBreakdown, MeasurementAngles, SweepGrid,
};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use negativity::{
    log_negativity, log_negativity_limit, separability_threshold, NegativityResult,
};
pub use werner::{StructuredSpectrum, WernerParams};

/// Step for the central finite-difference derivative checks.
pub const FD_STEP: f64 = 1e-4;
