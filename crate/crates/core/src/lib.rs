//! Core library for computing distortion–equivocation tradeoffs of secure
//! joint source-channel transmission schemes, and for simulating the hybrid
//! random-coding construction at desk scale.
//!
//! Modules:
//! - [`info`]: exact finite-alphabet probability and information measures.
//! - [`gaussian`]: Gaussian source over a Gaussian wiretap channel
//!   (closed forms plus a covariance/log-det evaluator).
//! - [`binary`]: binary source over a type-II wiretap channel
//!   (exact scheme evaluation and parameter search).
//! - [`sim`]: seeded Monte Carlo simulation of the hybrid codebook
//!   construction (covering, packing, eavesdropper decodability).
//! - [`curve`]: swept region curves shared by the sweep drivers and the CLI.

pub mod binary;
pub mod curve;
pub mod gaussian;
pub mod info;
pub mod sim;
