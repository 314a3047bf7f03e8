//! Integrability checks for the time-dependent anisotropic Kondo model.
//!
//! The crate builds the XXZ S-matrices on small spin chains, verifies the
//! Yang-Baxter and transport-commutation constraints, propagates the
//! one-particle matrix difference equation, and compares integrable coupling
//! trajectories with the one-loop RG flow.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod couplings;
pub mod error;
pub mod report;
pub mod rgflow;
pub mod smatrix;
pub mod suites;
pub mod tensor;
pub mod traj;
pub mod transport;
pub mod wavefunction;

pub use couplings::{Branch, CouplingPair, SpectralParams, SpectralProfile};
pub use error::{Error, Result};
pub use tensor::{ChainSpec, ComplexMatrix, TwoSiteOperator};
