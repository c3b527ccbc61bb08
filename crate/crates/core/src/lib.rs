//! Resistance distances on weighted resistor networks.
//!
//! - [`network`], [`format`], [`builders`]: networks, Laplacians, the
//!   edge-list format and the named graph families.
//! - [`exact`]: rational grounded-Laplacian solver, the ground truth.
//! - [`spectra`]: closed-form and numeric Laplacian eigensystems.
//! - [`reduction`]: series, parallel, Δ-Y, block elimination and bipartite
//!   star substitution, with replayable traces.
//! - [`closed_forms`]: direct evaluators for known resistance formulas.
//! - [`analysis`]: product resistances, resistance diameters and the
//!   `P_n □ Q_k` convergence scans.

pub mod analysis;
pub mod builders;
pub mod closed_forms;
pub mod error;
pub mod exact;
pub mod format;
pub mod network;
pub mod reduction;
pub mod spectra;

pub use error::{Error, Result};
pub use network::{build_laplacian, Edge, Laplacian, Rational, ResistorNetwork, VertexId};
