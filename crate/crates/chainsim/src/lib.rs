//! Simulation of polarization transport in linear spin-1/2 chains.
//!
//! Two engines compute the same physics at very different cost:
//!
//! - [`analytic`] — closed-form free-fermion engine for nearest-neighbor
//!   flip-flop (XY) and double-quantum (DQ) dynamics. Cost per time point is
//!   polynomial in the chain length, so thousand-spin chains are cheap.
//! - [`oracle`] — brute-force dense engine on the full 2^N Hilbert space.
//!   Exact for arbitrary coupling tables, exponentially expensive, capped at
//!   small N. Its role is to validate the analytic engine and to cover models
//!   the fermion picture cannot reach (long-range couplings, dipolar).
//!
//! [`chain`] holds the shared model description (coupling tables, initial
//! deviation states, mode grids); [`experiments`] drives scripted runs that
//! emit [`series::TimeSeries`] artifacts as CSV/JSON.

pub mod analytic;
pub mod chain;
pub mod experiments;
pub mod oracle;
pub mod series;

pub use chain::{CouplingTable, DeviationState, HamiltonianKind, ModeGrid};
