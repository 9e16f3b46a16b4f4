//! Experiment runner for `dlfec-core`.
//!
//! Each [`experiments::Command`] sweeps one parameter, runs the replications
//! of every point in parallel and aggregates them into [`report::ResultRow`]s
//! with normal-approximation 95% intervals. Output is deterministic for a
//! given seed.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;
pub mod stats;

pub use dlfec_core as core;
pub use error::LabError;
