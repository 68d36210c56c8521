//! Baseline parameter set shared by the bundled experiments and the CLI
//! `paper-defaults` preset: equal radio legs at 1e-4, one intermediate
//! node per core path, 1e-7/4e-6 node/link error rates, 1e-10 endpoint
//! failures and a 1e-4 backhaul interface.

use crate::model::{
    Architecture, CnPathSpec, Correlation, PointFailures, RanPairSpec, Scenario,
};

/// Radio-leg error rate.
pub const RAN_ERROR: f64 = 1e-4;
/// Intermediate-node error rate.
pub const NODE_ERROR: f64 = 1e-7;
/// Core-network link error rate.
pub const LINK_ERROR: f64 = 4e-6;
/// Device, anchor, and gNB error rates.
pub const ENDPOINT_ERROR: f64 = 1e-10;
/// Inter-gNB backhaul interface error rate.
pub const XN_ERROR: f64 = 1e-4;
/// Intermediate nodes per core path.
pub const INTERMEDIATE_NODES: usize = 1;
/// Number of parallel core paths.
pub const CN_PATHS: usize = 2;
/// Event correlation used for "correlated links" reference curves: the
/// mapping of a 0.05 shadowing cross-correlation at the baseline leg rate,
/// the smallest value reported between far-apart receivers.
pub const LOW_EVENT_CORRELATION: f64 = 1e-4;

pub fn ran_pair() -> RanPairSpec {
    RanPairSpec::new(RAN_ERROR, RAN_ERROR, Correlation::Event(0.0))
        .expect("baseline pair is valid")
}

pub fn cn_paths() -> Vec<CnPathSpec> {
    let path = CnPathSpec::homogeneous(INTERMEDIATE_NODES, NODE_ERROR, LINK_ERROR)
        .expect("baseline path is valid");
    vec![path; CN_PATHS]
}

pub fn point_failures() -> PointFailures {
    PointFailures::new(
        ENDPOINT_ERROR,
        ENDPOINT_ERROR,
        ENDPOINT_ERROR,
        vec![ENDPOINT_ERROR; CN_PATHS],
        ENDPOINT_ERROR,
        XN_ERROR,
    )
    .expect("baseline point failures are valid")
}

/// The full baseline scenario under the requested architecture.
pub fn scenario(architecture: Architecture) -> Scenario {
    Scenario::new(architecture, ran_pair(), cn_paths(), point_failures())
        .expect("baseline scenario is valid")
}
