//! Genuine tripartite nonlocality and entanglement of a GHZ-like Dirac state
//! degraded by Schwarzschild Hawking radiation.
//!
//! - [`quantum`]: state vectors, density operators, partial traces, Pauli
//!   correlation tensors.
//! - [`measures`]: X-state Svetlichny value, genuine tripartite concurrence,
//!   maximal Bell signal and two-qubit concurrence.
//! - [`svetlichny`]: multi-start brute-force Svetlichny maximization.
//! - [`schwarzschild`]: Hawking temperature, mode amplitudes, the five-mode
//!   state and all its reductions.
//! - [`analysis`]: critical temperatures, sweeps and monogamy checks.
//! - [`cli`]: the `gtn` command-line front end.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod measures;
pub mod quantum;
pub mod schwarzschild;
pub mod svetlichny;

pub use error::{Error, Result};
