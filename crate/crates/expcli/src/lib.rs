//! Experiment orchestration on top of `sealab`: gradient-variance scans,
//! Haar-block variances, VQE comparisons, frame potentials and exact SEA
//! constructions, each emitted as JSON Lines.

pub mod ansatz_spec;
pub mod cli;
pub mod config;
pub mod experiments;
pub mod fit;
pub mod report;
