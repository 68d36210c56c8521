//! Analytical reliability model for dual-connectivity architectures.
//!
//! Packets are duplicated over two radio legs. In the *RAN split* the
//! master node joins the legs (the secondary leg reaches it over the Sg/Xn
//! backhaul) and forwards one copy across `n` parallel core-network paths.
//! In the *CN split* duplication happens at the network edges, giving two
//! fully disjoint leg + core-path chains. The two legs' failure indicators
//! may be correlated; everything else fails independently.
//!
//! Error rates compose in complement form throughout: a serial chain of
//! small failure probabilities is accumulated as
//! `e <- e + a - e * a` rather than `1 - prod(1 - a_i)`, so results near
//! 1e-10 keep full relative precision.

use crate::gauss::{self, GaussError, ShadowingCorrelation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error("{field} must be a probability in [0, 1], got {value}")]
    InvalidProbability { field: String, value: f64 },
    #[error("event correlation must be finite, got {0}")]
    NonFiniteCorrelation(f64),
    #[error(
        "event correlation {rho} is infeasible for marginals ({eps1}, {eps2}): joint failure \
         probability {p_ff:e} violates the Frechet bounds [{lower:e}, {upper:e}]"
    )]
    InfeasibleCorrelation {
        rho: f64,
        eps1: f64,
        eps2: f64,
        p_ff: f64,
        lower: f64,
        upper: f64,
    },
    #[error("a core-network path with {nodes} nodes needs {} links, got {links}", nodes + 1)]
    PathShape { nodes: usize, links: usize },
    #[error("scenario uses the {found:?} architecture but {expected:?} was requested")]
    WrongArchitecture {
        expected: Architecture,
        found: Architecture,
    },
    #[error("the {architecture:?} architecture needs {expected} core-network path(s), got {found}")]
    PathCount {
        architecture: Architecture,
        expected: &'static str,
        found: usize,
    },
    #[error("expected one gNB error rate per core-network path ({paths}), got {gnbs}")]
    GnbCount { paths: usize, gnbs: usize },
    #[error("{field} must be at least 1")]
    ZeroCount { field: &'static str },
}

fn check_probability(field: &str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(ModelError::InvalidProbability { field: field.to_owned(), value })
    }
}

/// Where the packet duplication happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Architecture {
    /// Duplication at the master node; legs joined over the Sg/Xn backhaul,
    /// then `n` parallel core-network paths.
    RanSplit,
    /// Duplication at the edges; two disjoint leg + core-path chains.
    CnSplit,
}

/// Correlation between the two radio legs, given either directly as the
/// failure-event correlation or as a measured shadowing cross-correlation
/// (mapped through [`gauss::event_correlation`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Correlation {
    Event(f64),
    Shadowing(ShadowingCorrelation),
}

/// The two radio-leg error rates and their correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RanPairSpec {
    pub eps_ran_1: f64,
    pub eps_ran_2: f64,
    pub correlation: Correlation,
}

impl RanPairSpec {
    /// Leg error rates are validated here; feasibility of the correlation
    /// is deliberately deferred to [`joint_outcomes`] so that parameter
    /// sweeps can probe infeasible corners and report them explicitly.
    pub fn new(eps_ran_1: f64, eps_ran_2: f64, correlation: Correlation) -> Result<Self, ModelError> {
        check_probability("eps_ran_1", eps_ran_1)?;
        check_probability("eps_ran_2", eps_ran_2)?;
        Ok(Self { eps_ran_1, eps_ran_2, correlation })
    }

    fn is_degenerate(&self) -> bool {
        let degenerate = |e: f64| e == 0.0 || e == 1.0;
        degenerate(self.eps_ran_1) || degenerate(self.eps_ran_2)
    }

    /// The event correlation, mapping a shadowing correlation if needed.
    pub fn resolved_event_correlation(&self) -> Result<f64, ModelError> {
        match self.correlation {
            Correlation::Event(rho) => {
                if rho.is_finite() {
                    Ok(rho)
                } else {
                    Err(ModelError::NonFiniteCorrelation(rho))
                }
            }
            Correlation::Shadowing(rho_h) => {
                Ok(gauss::event_correlation(self.eps_ran_1, self.eps_ran_2, rho_h)?)
            }
        }
    }
}

/// Joint failure/success probabilities of the two radio legs.
/// `p_fs` is leg 1 failing while leg 2 succeeds, and so on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointOutcomeProbs {
    pub p_ff: f64,
    pub p_fs: f64,
    pub p_sf: f64,
    pub p_ss: f64,
}

/// A serial core-network path: `N` intermediate nodes and `N + 1` links.
#[derive(Debug, Clone, PartialEq)]
pub struct CnPathSpec {
    pub node_errors: Vec<f64>,
    pub link_errors: Vec<f64>,
}

impl CnPathSpec {
    pub fn new(node_errors: Vec<f64>, link_errors: Vec<f64>) -> Result<Self, ModelError> {
        if link_errors.len() != node_errors.len() + 1 {
            return Err(ModelError::PathShape {
                nodes: node_errors.len(),
                links: link_errors.len(),
            });
        }
        for (i, &e) in node_errors.iter().enumerate() {
            check_probability(&format!("node_errors[{i}]"), e)?;
        }
        for (i, &e) in link_errors.iter().enumerate() {
            check_probability(&format!("link_errors[{i}]"), e)?;
        }
        Ok(Self { node_errors, link_errors })
    }

    /// A path whose nodes all share `eps_node` and links all share `eps_link`.
    pub fn homogeneous(n_nodes: usize, eps_node: f64, eps_link: f64) -> Result<Self, ModelError> {
        Self::new(vec![eps_node; n_nodes], vec![eps_link; n_nodes + 1])
    }

    pub fn n_nodes(&self) -> usize {
        self.node_errors.len()
    }
}

/// Error rates of the single points of failure around the two legs.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFailures {
    pub eps_ue: f64,
    pub eps_upf: f64,
    /// Master node (single point of failure of the RAN split).
    pub eps_mgnb: f64,
    /// Per-core-path gNB error rates (used by the CN split).
    pub eps_gnb_per_path: Vec<f64>,
    /// Secondary node, feeding the Sg/Xn backhaul term of the RAN split.
    pub eps_sgnb: f64,
    /// Inter-gNB backhaul interface.
    pub eps_xn: f64,
}

impl PointFailures {
    pub fn new(
        eps_ue: f64,
        eps_upf: f64,
        eps_mgnb: f64,
        eps_gnb_per_path: Vec<f64>,
        eps_sgnb: f64,
        eps_xn: f64,
    ) -> Result<Self, ModelError> {
        check_probability("eps_ue", eps_ue)?;
        check_probability("eps_upf", eps_upf)?;
        check_probability("eps_mgnb", eps_mgnb)?;
        for (i, &e) in eps_gnb_per_path.iter().enumerate() {
            check_probability(&format!("eps_gnb_per_path[{i}]"), e)?;
        }
        check_probability("eps_sgnb", eps_sgnb)?;
        check_probability("eps_xn", eps_xn)?;
        Ok(Self { eps_ue, eps_upf, eps_mgnb, eps_gnb_per_path, eps_sgnb, eps_xn })
    }
}

/// A complete evaluation unit: architecture, radio legs, core paths and
/// point failures.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub architecture: Architecture,
    pub ran: RanPairSpec,
    pub cn_paths: Vec<CnPathSpec>,
    pub points: PointFailures,
}

impl Scenario {
    pub fn new(
        architecture: Architecture,
        ran: RanPairSpec,
        cn_paths: Vec<CnPathSpec>,
        points: PointFailures,
    ) -> Result<Self, ModelError> {
        let scenario = Self { architecture, ran, cn_paths, points };
        scenario.validate_shape()?;
        Ok(scenario)
    }

    pub(crate) fn validate_shape(&self) -> Result<(), ModelError> {
        match self.architecture {
            Architecture::CnSplit => {
                if self.cn_paths.len() != 2 {
                    return Err(ModelError::PathCount {
                        architecture: self.architecture,
                        expected: "exactly 2",
                        found: self.cn_paths.len(),
                    });
                }
                if self.points.eps_gnb_per_path.len() != self.cn_paths.len() {
                    return Err(ModelError::GnbCount {
                        paths: self.cn_paths.len(),
                        gnbs: self.points.eps_gnb_per_path.len(),
                    });
                }
            }
            Architecture::RanSplit => {
                if self.cn_paths.is_empty() {
                    return Err(ModelError::PathCount {
                        architecture: self.architecture,
                        expected: "at least 1",
                        found: 0,
                    });
                }
            }
        }
        Ok(())
    }

    /// The same scenario evaluated under a different split.
    pub fn with_architecture(&self, architecture: Architecture) -> Result<Self, ModelError> {
        let mut scenario = self.clone();
        scenario.architecture = architecture;
        scenario.validate_shape()?;
        Ok(scenario)
    }
}

/// Reliability and error rate of one end-to-end evaluation; the two always
/// sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndToEnd {
    pub reliability: f64,
    pub error_rate: f64,
}

impl EndToEnd {
    fn from_error_rate(error_rate: f64) -> Self {
        Self { reliability: 1.0 - error_rate, error_rate }
    }
}

/// Standard deviation of a Bernoulli failure indicator with rate `eps`.
pub fn indicator_sigma(eps: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&eps), "eps out of range: {eps}");
    (eps * (1.0 - eps)).sqrt()
}

/// Failure probability of a serial chain of independently failing parts,
/// accumulated without forming near-one products.
fn serial_error(parts: impl IntoIterator<Item = f64>) -> f64 {
    parts.into_iter().fold(0.0, |acc, e| acc + e - acc * e)
}

// Outcome probabilities may land a hair outside [0, 1] from quadrature
// noise in the shadowing mapping (relative ~1e-9 of the joint tail) or
// from square-root round-off at the comonotone boundary. Violations within
// this allowance are clamped; anything larger is a genuine Frechet
// violation.
fn feasibility_slack(eps1: f64, eps2: f64) -> f64 {
    1e-14_f64.max(4e-9 * eps1.min(eps2))
}

struct ResolvedPair {
    outcomes: JointOutcomeProbs,
    /// The shared cross term `rho * sigma1 * sigma2` (zero when either
    /// indicator is deterministic).
    rho_sigma: f64,
}

fn resolve_pair(pair: &RanPairSpec) -> Result<ResolvedPair, ModelError> {
    let e1 = check_probability("eps_ran_1", pair.eps_ran_1)?;
    let e2 = check_probability("eps_ran_2", pair.eps_ran_2)?;

    if pair.is_degenerate() {
        // sigma = 0 on a deterministic leg: correlation carries no
        // information and the joint law factorizes.
        log::warn!(
            "leg error rate in {{0, 1}}: correlation ignored for deterministic indicator \
             (eps_ran_1={e1}, eps_ran_2={e2})"
        );
        return Ok(ResolvedPair {
            outcomes: JointOutcomeProbs {
                p_ff: e1 * e2,
                p_fs: e1 * (1.0 - e2),
                p_sf: e2 * (1.0 - e1),
                p_ss: (1.0 - e1) * (1.0 - e2),
            },
            rho_sigma: 0.0,
        });
    }

    let rho = pair.resolved_event_correlation()?;
    let rho_sigma = rho * indicator_sigma(e1) * indicator_sigma(e2);
    let p_ff = e1 * e2 + rho_sigma;
    let p_fs = e1 * (1.0 - e2) - rho_sigma;
    let p_sf = e2 * (1.0 - e1) - rho_sigma;
    let p_ss = (1.0 - e1) * (1.0 - e2) + rho_sigma;

    let slack = feasibility_slack(e1, e2);
    let feasible = [p_ff, p_fs, p_sf, p_ss]
        .iter()
        .all(|p| (-slack..=1.0 + slack).contains(p));
    if !feasible {
        let lower = (e1 + e2 - 1.0).max(0.0);
        let upper = e1.min(e2);
        return Err(ModelError::InfeasibleCorrelation {
            rho,
            eps1: e1,
            eps2: e2,
            p_ff,
            lower,
            upper,
        });
    }

    let clamp = |p: f64| p.clamp(0.0, 1.0);
    Ok(ResolvedPair {
        outcomes: JointOutcomeProbs {
            p_ff: clamp(p_ff),
            p_fs: clamp(p_fs),
            p_sf: clamp(p_sf),
            p_ss: clamp(p_ss),
        },
        rho_sigma,
    })
}

/// The four joint leg outcomes: `p_ff = eps1 eps2 + rho sigma1 sigma2`,
/// with the cross term flipping sign on the mixed outcomes.
///
/// A correlation that pushes any outcome outside [0, 1] is rejected with
/// the violated Frechet bounds; a deterministic leg (rate 0 or 1) ignores
/// the correlation and factorizes.
pub fn joint_outcomes(pair: &RanPairSpec) -> Result<JointOutcomeProbs, ModelError> {
    resolve_pair(pair).map(|r| r.outcomes)
}

/// Error rate of one serial core-network path.
pub fn cn_path_error(path: &CnPathSpec) -> f64 {
    serial_error(path.node_errors.iter().chain(&path.link_errors).copied())
}

/// Core path error with the attached gNB folded in.
pub fn cg_error(path: &CnPathSpec, eps_gnb: f64) -> f64 {
    serial_error([cn_path_error(path), eps_gnb])
}

/// Combined failure probability of the secondary-node/backhaul pair,
/// `P(Sg_f or Xn_f)`, assuming the two fail independently.
pub fn sx_error(points: &PointFailures) -> f64 {
    serial_error([points.eps_sgnb, points.eps_xn])
}

/// Error rate observed between the device and the master node: the device
/// itself, the joint leg outcomes, and the backhaul needed when only the
/// secondary leg got through.
pub fn mgnb_leg_error(pair: &RanPairSpec, eps_ue: f64, eps_sx: f64) -> Result<f64, ModelError> {
    check_probability("eps_ue", eps_ue)?;
    check_probability("eps_sx", eps_sx)?;
    let jo = joint_outcomes(pair)?;
    Ok(eps_ue + (1.0 - eps_ue) * (jo.p_ff + jo.p_fs * eps_sx))
}

fn cn_product(paths: &[CnPathSpec]) -> f64 {
    paths.iter().map(cn_path_error).product()
}

/// End-to-end error rate of the RAN split: master-leg bracket, master
/// node, the product of all parallel core paths, and the endpoints, all
/// composed in complement form.
pub fn e2e_ran_split(scenario: &Scenario) -> Result<EndToEnd, ModelError> {
    expect_architecture(scenario, Architecture::RanSplit)?;
    let resolved = resolve_pair(&scenario.ran)?;
    let e1 = scenario.ran.eps_ran_1;
    let e2 = scenario.ran.eps_ran_2;
    let eps_sx = sx_error(&scenario.points);
    // Closed-form radio bracket: both legs down, or leg 1 down with the
    // backhaul eating the surviving secondary copy.
    let bracket = e1 * e2 + e1 * (1.0 - e2) * eps_sx + resolved.rho_sigma * (1.0 - eps_sx);
    let error = serial_error([
        scenario.points.eps_ue,
        bracket,
        scenario.points.eps_mgnb,
        cn_product(&scenario.cn_paths),
        scenario.points.eps_upf,
    ]);
    Ok(EndToEnd::from_error_rate(error))
}

/// Same quantity as [`e2e_ran_split`], composed through the intermediate
/// master-leg error instead of the closed-form bracket. The two routes
/// agree to floating-point accuracy and cross-check each other.
pub fn e2e_ran_split_via_legs(scenario: &Scenario) -> Result<EndToEnd, ModelError> {
    expect_architecture(scenario, Architecture::RanSplit)?;
    let eps_sx = sx_error(&scenario.points);
    let eps_m = mgnb_leg_error(&scenario.ran, scenario.points.eps_ue, eps_sx)?;
    let error = serial_error([
        eps_m,
        scenario.points.eps_mgnb,
        cn_product(&scenario.cn_paths),
        scenario.points.eps_upf,
    ]);
    Ok(EndToEnd::from_error_rate(error))
}

fn cn_split_cg(scenario: &Scenario) -> (f64, f64) {
    let cg1 = cg_error(&scenario.cn_paths[0], scenario.points.eps_gnb_per_path[0]);
    let cg2 = cg_error(&scenario.cn_paths[1], scenario.points.eps_gnb_per_path[1]);
    (cg1, cg2)
}

/// End-to-end error rate of the CN split, composed from the four joint
/// leg outcomes: both chains must fail, where chain `i` fails on a leg
/// failure or on its own core-path/gNB failure.
pub fn e2e_cn_split(scenario: &Scenario) -> Result<EndToEnd, ModelError> {
    expect_architecture(scenario, Architecture::CnSplit)?;
    let jo = joint_outcomes(&scenario.ran)?;
    let (cg1, cg2) = cn_split_cg(scenario);
    let both_chains_fail =
        jo.p_ff + cg1 * jo.p_sf + cg2 * jo.p_fs + cg1 * cg2 * jo.p_ss;
    let error = serial_error([
        scenario.points.eps_ue,
        scenario.points.eps_upf,
        both_chains_fail,
    ]);
    Ok(EndToEnd::from_error_rate(error))
}

/// Same quantity as [`e2e_cn_split`] through the expanded polynomial in
/// the marginals and the cross term, rather than the stored joint
/// outcomes. Cross-check route.
pub fn e2e_cn_split_expanded(scenario: &Scenario) -> Result<EndToEnd, ModelError> {
    expect_architecture(scenario, Architecture::CnSplit)?;
    let resolved = resolve_pair(&scenario.ran)?;
    let rs = resolved.rho_sigma;
    let e1 = scenario.ran.eps_ran_1;
    let e2 = scenario.ran.eps_ran_2;
    let (cg1, cg2) = cn_split_cg(scenario);
    let both_chains_fail = e1 * e2
        + rs
        + cg1 * (e2 * (1.0 - e1) - rs)
        + cg2 * (e1 * (1.0 - e2) - rs)
        + cg1 * cg2 * ((1.0 - e1) * (1.0 - e2) + rs);
    let error = serial_error([
        scenario.points.eps_ue,
        scenario.points.eps_upf,
        both_chains_fail,
    ]);
    Ok(EndToEnd::from_error_rate(error))
}

/// Evaluate a scenario under its own architecture.
pub fn evaluate(scenario: &Scenario) -> Result<EndToEnd, ModelError> {
    scenario.validate_shape()?;
    match scenario.architecture {
        Architecture::RanSplit => e2e_ran_split(scenario),
        Architecture::CnSplit => e2e_cn_split(scenario),
    }
}

fn expect_architecture(scenario: &Scenario, expected: Architecture) -> Result<(), ModelError> {
    if scenario.architecture != expected {
        return Err(ModelError::WrongArchitecture {
            expected,
            found: scenario.architecture,
        });
    }
    scenario.validate_shape()
}
