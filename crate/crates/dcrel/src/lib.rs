//! End-to-end reliability of 5G dual-connectivity architectures under
//! correlated radio-link failures.
//!
//! A device connected to two base stations can push duplicate packets over
//! two radio legs. How much that redundancy actually buys depends on where
//! the duplication happens (in the radio access network at the master
//! node, or end-to-end across two disjoint core-network paths) and on how
//! correlated the two radio legs are. This crate provides:
//!
//! - [`gauss`]: Q-function machinery and the mapping from measured
//!   shadowing cross-correlation to failure-event correlation, via the
//!   bivariate normal tail.
//! - [`model`]: the closed-form reliability algebra: joint leg outcomes,
//!   core-network path composition, and end-to-end error rates for both
//!   split architectures.
//! - [`mcsim`]: a deterministic Monte Carlo estimator that validates the
//!   closed forms by sampling correlated shadowing and component failures.
//! - [`sweeps`]: the experiment harness: correlation sweeps, node-count
//!   sweeps, optimal-architecture region maps, and max-feasible-node
//!   search under an error-rate requirement.
//!
//! ```
//! use dcrel::model::{self, Architecture};
//!
//! let scenario = dcrel::defaults::scenario(Architecture::RanSplit);
//! let result = model::evaluate(&scenario).unwrap();
//! assert!(result.error_rate > 1e-8 && result.error_rate < 1e-7);
//! ```

pub mod defaults;
pub mod gauss;
pub mod mcsim;
pub mod model;
mod quad;
pub mod sweeps;

// The chapters of the guide in book/ are compiled as doc-tests so their
// code samples stay in sync with the crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/gaussian-tails.md")]
    mod gaussian_tails {}
    #[doc = include_str!("../../../book/src/reliability-model.md")]
    mod reliability_model {}
    #[doc = include_str!("../../../book/src/monte-carlo.md")]
    mod monte_carlo {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
