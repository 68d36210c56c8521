//! Experiment harness: regenerates the correlation-mapping table and the
//! data behind the correlation sweeps, node-count sweeps, optimal-
//! architecture region maps, and max-feasible-node searches.
//!
//! Every cell is an independent pure evaluation of a rebuilt scenario;
//! cells run in parallel but the output ordering follows the declared
//! axis order. Infeasible correlation cells are carried as explicit
//! entries, never dropped.

use crate::defaults;
use crate::gauss::{self, GaussError, ShadowingCorrelation};
use crate::model::{self, Architecture, CnPathSpec, EndToEnd, ModelError, Correlation, Scenario};
use rayon::prelude::*;

/// A parameter that a sweep axis can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    /// Event correlation of the two legs.
    Rho,
    /// Shadowing cross-correlation of the two legs.
    RhoH,
    /// Both legs' error rate.
    EpsRan,
    /// Intermediate node count of every core path.
    NIntermediateNodes,
    /// Error rate of every core link.
    EpsLink,
    /// Error rate of every core node.
    EpsNode,
    /// Combined secondary/backhaul error rate.
    EpsSx,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Rho => "rho",
            Self::RhoH => "rho_h",
            Self::EpsRan => "eps_ran",
            Self::NIntermediateNodes => "n_intermediate_nodes",
            Self::EpsLink => "eps_link",
            Self::EpsNode => "eps_node",
            Self::EpsSx => "eps_sx",
        }
    }
}

/// An ordered, explicit list of values for one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

impl SweepAxis {
    pub fn new(parameter: SweepParameter, values: Vec<f64>) -> Result<Self, ModelError> {
        if values.is_empty() {
            return Err(ModelError::ZeroCount { field: "axis values" });
        }
        let monotone = values.windows(2).all(|w| w[0] < w[1])
            || values.windows(2).all(|w| w[0] > w[1]);
        if !monotone || values.iter().any(|v| !v.is_finite()) {
            return Err(ModelError::InvalidProbability {
                field: format!("axis {} values (must be finite and strictly monotone)", parameter.name()),
                value: f64::NAN,
            });
        }
        Ok(Self { parameter, values })
    }
}

/// Rebuild `base` with one parameter replaced.
///
/// `NIntermediateNodes` rebuilds each path homogeneously, keeping the
/// path's own per-element rates (falling back to the baseline rates for a
/// path with no nodes); the other parameters overwrite fields in place.
/// `EpsSx` folds the whole backhaul budget into the interface term.
pub fn apply_parameter(
    base: &Scenario,
    parameter: SweepParameter,
    value: f64,
) -> Result<Scenario, ModelError> {
    let mut scenario = base.clone();
    match parameter {
        SweepParameter::Rho => {
            if !value.is_finite() {
                return Err(ModelError::NonFiniteCorrelation(value));
            }
            scenario.ran.correlation = Correlation::Event(value);
        }
        SweepParameter::RhoH => {
            scenario.ran.correlation =
                Correlation::Shadowing(ShadowingCorrelation::new(value)?);
        }
        SweepParameter::EpsRan => {
            check_unit("eps_ran", value)?;
            scenario.ran.eps_ran_1 = value;
            scenario.ran.eps_ran_2 = value;
        }
        SweepParameter::NIntermediateNodes => {
            if value < 0.0 || value.fract() != 0.0 || value > u32::MAX as f64 {
                return Err(ModelError::InvalidProbability {
                    field: "n_intermediate_nodes (must be a non-negative integer)".to_owned(),
                    value,
                });
            }
            let n = value as usize;
            scenario.cn_paths = scenario
                .cn_paths
                .iter()
                .map(|p| {
                    let eps_node =
                        p.node_errors.first().copied().unwrap_or(defaults::NODE_ERROR);
                    let eps_link =
                        p.link_errors.first().copied().unwrap_or(defaults::LINK_ERROR);
                    CnPathSpec::homogeneous(n, eps_node, eps_link)
                })
                .collect::<Result<_, _>>()?;
        }
        SweepParameter::EpsLink => {
            check_unit("eps_link", value)?;
            for path in &mut scenario.cn_paths {
                path.link_errors.iter_mut().for_each(|e| *e = value);
            }
        }
        SweepParameter::EpsNode => {
            check_unit("eps_node", value)?;
            for path in &mut scenario.cn_paths {
                path.node_errors.iter_mut().for_each(|e| *e = value);
            }
        }
        SweepParameter::EpsSx => {
            check_unit("eps_sx", value)?;
            scenario.points.eps_sgnb = 0.0;
            scenario.points.eps_xn = value;
        }
    }
    Ok(scenario)
}

fn check_unit(field: &str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ModelError::InvalidProbability { field: field.to_owned(), value })
    }
}

/// One evaluated grid cell: its axis coordinates (in declared axis order),
/// the architecture, and the outcome. Infeasible correlations stay in the
/// grid as errors.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    pub architecture: Architecture,
    pub outcome: Result<EndToEnd, ModelError>,
}

/// Evaluate the cartesian product of the axes for each architecture.
///
/// Row ordering: the first axis varies slowest, architectures alternate
/// innermost.
pub fn sweep_grid(
    base: &Scenario,
    axes: &[SweepAxis],
    architectures: &[Architecture],
) -> Result<Vec<SweepRow>, ModelError> {
    if axes.is_empty() {
        return Err(ModelError::ZeroCount { field: "axes" });
    }
    if architectures.is_empty() {
        return Err(ModelError::ZeroCount { field: "architectures" });
    }
    for arch in architectures {
        base.with_architecture(*arch)?;
    }

    let mut coords = vec![Vec::new()];
    for axis in axes {
        let mut next = Vec::with_capacity(coords.len() * axis.values.len());
        for prefix in &coords {
            for &v in &axis.values {
                let mut c = prefix.clone();
                c.push(v);
                next.push(c);
            }
        }
        coords = next;
    }

    let cells: Vec<(Vec<f64>, Architecture)> = coords
        .into_iter()
        .flat_map(|c| architectures.iter().map(move |&a| (c.clone(), a)))
        .collect();

    Ok(cells
        .into_par_iter()
        .map(|(coords, architecture)| {
            let outcome = evaluate_cell(base, axes, &coords, architecture);
            SweepRow { coords, architecture, outcome }
        })
        .collect())
}

fn evaluate_cell(
    base: &Scenario,
    axes: &[SweepAxis],
    coords: &[f64],
    architecture: Architecture,
) -> Result<EndToEnd, ModelError> {
    let mut scenario = base.with_architecture(architecture)?;
    for (axis, &value) in axes.iter().zip(coords) {
        scenario = apply_parameter(&scenario, axis.parameter, value)?;
    }
    model::evaluate(&scenario)
}

/// Shadowing-to-event correlation mapping at a common leg error rate:
/// one `(rho_h, rho)` pair per input value.
pub fn table1(eps_ran: f64, rho_h_values: &[f64]) -> Result<Vec<(f64, f64)>, GaussError> {
    rho_h_values
        .iter()
        .map(|&rho_h| {
            let mapped =
                gauss::event_correlation(eps_ran, eps_ran, ShadowingCorrelation::new(rho_h)?)?;
            Ok((rho_h, mapped))
        })
        .collect()
}

/// Error-rate grid over (event correlation, leg error rate) for the base
/// scenario's architecture.
pub fn sweep_correlation(
    base: &Scenario,
    rho_values: &[f64],
    eps_ran_values: &[f64],
) -> Result<Vec<SweepRow>, ModelError> {
    let axes = [
        SweepAxis::new(SweepParameter::EpsRan, eps_ran_values.to_vec())?,
        SweepAxis::new(SweepParameter::Rho, rho_values.to_vec())?,
    ];
    sweep_grid(base, &axes, &[base.architecture])
}

/// Error-rate grid over (node count, event correlation), evaluated for
/// both architectures.
pub fn sweep_nodes(
    base: &Scenario,
    n_values: &[u32],
    rho_values: &[f64],
) -> Result<Vec<SweepRow>, ModelError> {
    let axes = [
        SweepAxis::new(
            SweepParameter::NIntermediateNodes,
            n_values.iter().map(|&n| n as f64).collect(),
        )?,
        SweepAxis::new(SweepParameter::Rho, rho_values.to_vec())?,
    ];
    sweep_grid(base, &axes, &[Architecture::RanSplit, Architecture::CnSplit])
}

/// Which architecture wins a region-map cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    RanSplit,
    CnSplit,
    Tie,
}

/// One region-map cell: both architectures' error rates and the winner
/// under the tie tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionCell {
    pub axis1_value: f64,
    pub axis2_value: f64,
    pub winner: Winner,
    pub error_rate_ran_split: f64,
    pub error_rate_cn_split: f64,
}

/// A region-map entry; cells whose evaluation fails (infeasible
/// correlation) are reported, not dropped.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionEntry {
    Decided(RegionCell),
    Infeasible {
        axis1_value: f64,
        axis2_value: f64,
        error: ModelError,
    },
}

/// Compare the two architectures over a two-axis grid. The winner has the
/// lower error rate; differences within `tie_rel_tol` (relative to the
/// larger error rate) are ties.
pub fn region_map(
    base: &Scenario,
    axis1: &SweepAxis,
    axis2: &SweepAxis,
    tie_rel_tol: f64,
) -> Result<Vec<RegionEntry>, ModelError> {
    if tie_rel_tol.is_nan() || tie_rel_tol < 0.0 {
        return Err(ModelError::InvalidProbability {
            field: "tie_rel_tol".to_owned(),
            value: tie_rel_tol,
        });
    }
    base.with_architecture(Architecture::RanSplit)?;
    base.with_architecture(Architecture::CnSplit)?;

    let cells: Vec<(f64, f64)> = axis1
        .values
        .iter()
        .flat_map(|&v1| axis2.values.iter().map(move |&v2| (v1, v2)))
        .collect();

    let entries: Vec<RegionEntry> = cells
        .into_par_iter()
        .map(|(v1, v2)| {
            let axes = [axis1.clone(), axis2.clone()];
            let coords = [v1, v2];
            let ran = evaluate_cell(base, &axes, &coords, Architecture::RanSplit);
            let cn = evaluate_cell(base, &axes, &coords, Architecture::CnSplit);
            match (ran, cn) {
                (Ok(r), Ok(c)) => {
                    let scale = r.error_rate.max(c.error_rate);
                    let winner = if (r.error_rate - c.error_rate).abs() <= tie_rel_tol * scale {
                        Winner::Tie
                    } else if r.error_rate < c.error_rate {
                        Winner::RanSplit
                    } else {
                        Winner::CnSplit
                    };
                    RegionEntry::Decided(RegionCell {
                        axis1_value: v1,
                        axis2_value: v2,
                        winner,
                        error_rate_ran_split: r.error_rate,
                        error_rate_cn_split: c.error_rate,
                    })
                }
                (Err(e), _) | (_, Err(e)) => {
                    RegionEntry::Infeasible { axis1_value: v1, axis2_value: v2, error: e }
                }
            }
        })
        .collect();

    warn_on_multiple_crossovers(axis1, axis2, &entries);
    Ok(entries)
}

// A single winner flip along the node-count axis is the expected shape;
// more than one is not impossible, so it is surfaced rather than hidden.
fn warn_on_multiple_crossovers(axis1: &SweepAxis, axis2: &SweepAxis, entries: &[RegionEntry]) {
    let (node_axis_is_first, other_len) = match (axis1.parameter, axis2.parameter) {
        (SweepParameter::NIntermediateNodes, _) => (true, axis2.values.len()),
        (_, SweepParameter::NIntermediateNodes) => (false, axis1.values.len()),
        _ => return,
    };
    let n_len = if node_axis_is_first { axis1.values.len() } else { axis2.values.len() };
    for other_idx in 0..other_len {
        let winners: Vec<Winner> = (0..n_len)
            .filter_map(|n_idx| {
                let idx = if node_axis_is_first {
                    n_idx * other_len + other_idx
                } else {
                    other_idx * axis2.values.len() + n_idx
                };
                match &entries[idx] {
                    RegionEntry::Decided(cell) if cell.winner != Winner::Tie => {
                        Some(cell.winner)
                    }
                    _ => None,
                }
            })
            .collect();
        let flips = winners.windows(2).filter(|w| w[0] != w[1]).count();
        if flips > 1 {
            log::warn!(
                "region map: {flips} winner crossovers along the node axis (line {other_idx}); \
                 expected at most one"
            );
        }
    }
}

/// Outcome of the max-feasible-node search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxNodesResult {
    /// Largest node count meeting the requirement (capped at `n_cap`).
    Nodes(u64),
    /// Even a direct link (zero intermediate nodes) misses the requirement.
    Infeasible,
}

/// Largest intermediate-node count whose end-to-end error rate stays
/// within `requirement`, searched by bisection over the monotone error
/// curve; `Infeasible` when zero nodes already violate it.
pub fn max_feasible_nodes(
    base: &Scenario,
    requirement: f64,
    n_cap: u64,
) -> Result<MaxNodesResult, ModelError> {
    if !requirement.is_finite() || requirement <= 0.0 || requirement > 1.0 {
        return Err(ModelError::InvalidProbability {
            field: "requirement".to_owned(),
            value: requirement,
        });
    }
    let satisfied = |n: u64| -> Result<bool, ModelError> {
        let scenario = apply_parameter(base, SweepParameter::NIntermediateNodes, n as f64)?;
        Ok(model::evaluate(&scenario)?.error_rate <= requirement)
    };

    if !satisfied(0)? {
        return Ok(MaxNodesResult::Infeasible);
    }
    if satisfied(n_cap)? {
        return Ok(MaxNodesResult::Nodes(n_cap));
    }
    // Invariant: satisfied(lo) && !satisfied(hi).
    let (mut lo, mut hi) = (0u64, n_cap);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if satisfied(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(MaxNodesResult::Nodes(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base(arch: Architecture) -> Scenario {
        defaults::scenario(arch)
    }

    #[test]
    fn table1_matches_printed_mapping() {
        let rows = table1(1e-4, &[0.05, 0.1, 0.3, 0.7, 1.0]).unwrap();
        let printed = [1e-4, 3e-4, 4e-3, 0.1, 1.0];
        let unit_in_last_digit = [1e-4, 1e-4, 1e-3, 0.1, 1e-12];
        for ((&(_, rho), &expect), &tol) in
            rows.iter().zip(&printed).zip(&unit_in_last_digit)
        {
            assert!(
                (rho - expect).abs() <= tol,
                "mapped {rho} vs printed {expect} (tol {tol})"
            );
        }
        assert_eq!(table1(1e-4, &[0.0]).unwrap()[0].1, 0.0);
        assert_relative_eq!(table1(1e-4, &[1.0]).unwrap()[0].1, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn table1_rejects_degenerate_rate() {
        assert!(matches!(
            table1(0.0, &[0.3]),
            Err(GaussError::DegenerateIndicator(_))
        ));
    }

    #[test]
    fn axis_validation() {
        assert!(SweepAxis::new(SweepParameter::Rho, vec![]).is_err());
        assert!(SweepAxis::new(SweepParameter::Rho, vec![0.1, 0.1]).is_err());
        assert!(SweepAxis::new(SweepParameter::Rho, vec![0.1, 0.05, 0.2]).is_err());
        assert!(SweepAxis::new(SweepParameter::Rho, vec![0.2, 0.1, 0.05]).is_ok());
    }

    #[test]
    fn correlation_sweep_shape_and_baseline_column() {
        let rows = sweep_correlation(
            &base(Architecture::RanSplit),
            &[0.0, 0.004],
            &[1e-3, 1e-4],
        )
        .unwrap();
        assert_eq!(rows.len(), 4);
        // rho = 0 column equals the independent evaluation.
        let cell = &rows[2]; // eps=1e-4, rho=0
        assert_eq!(cell.coords, vec![1e-4, 0.0]);
        let direct = model::evaluate(&base(Architecture::RanSplit)).unwrap();
        assert_eq!(cell.outcome.as_ref().unwrap().error_rate, direct.error_rate);
        // Error rate grows along each rho row.
        for pair in rows.chunks(2) {
            let e0 = pair[0].outcome.as_ref().unwrap().error_rate;
            let e1 = pair[1].outcome.as_ref().unwrap().error_rate;
            assert!(e1 > e0);
        }
    }

    #[test]
    fn infeasible_cells_are_reported_not_dropped() {
        let rows = sweep_correlation(
            &base(Architecture::RanSplit),
            &[0.0, 0.9],
            &[1e-4],
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].outcome.is_ok());
        // rho = 0.9 with eps = 1e-4 on both legs is feasible (equal
        // marginals admit any rho in [~-1e-4, 1]), so force a mismatch.
        let mut unequal = base(Architecture::RanSplit);
        unequal.ran.eps_ran_2 = 0.5;
        let rows = sweep_correlation(&unequal, &[0.0, 0.9], &[1e-4]).unwrap();
        // eps_ran axis overwrites both legs, so re-apply via rho axis only.
        assert!(rows.iter().all(|r| r.outcome.is_ok()));
        let axes = [SweepAxis::new(SweepParameter::Rho, vec![0.0, 0.9]).unwrap()];
        let rows = sweep_grid(&unequal, &axes, &[Architecture::RanSplit]).unwrap();
        assert!(rows[0].outcome.is_ok());
        assert!(matches!(
            rows[1].outcome,
            Err(ModelError::InfeasibleCorrelation { .. })
        ));
    }

    #[test]
    fn node_sweep_monotone_and_direct_link_column() {
        let rows = sweep_nodes(&base(Architecture::RanSplit), &[0, 1, 2, 5], &[0.0]).unwrap();
        // Both architectures, four node counts.
        assert_eq!(rows.len(), 8);
        let ran: Vec<f64> = rows
            .iter()
            .filter(|r| r.architecture == Architecture::RanSplit)
            .map(|r| r.outcome.as_ref().unwrap().error_rate)
            .collect();
        assert!(ran.windows(2).all(|w| w[1] > w[0]), "strictly increasing in N");

        // N = 0 equals a single-link path evaluation.
        let direct = apply_parameter(
            &base(Architecture::RanSplit),
            SweepParameter::NIntermediateNodes,
            0.0,
        )
        .unwrap();
        assert_eq!(direct.cn_paths[0].n_nodes(), 0);
        assert_eq!(
            ran[0],
            model::evaluate(&direct).unwrap().error_rate
        );
    }

    #[test]
    fn node_rebuild_keeps_per_path_rates() {
        let mut scenario = base(Architecture::RanSplit);
        scenario.cn_paths[1] = CnPathSpec::homogeneous(1, 2e-7, 8e-6).unwrap();
        let rebuilt =
            apply_parameter(&scenario, SweepParameter::NIntermediateNodes, 3.0).unwrap();
        assert_eq!(rebuilt.cn_paths[0].node_errors, vec![defaults::NODE_ERROR; 3]);
        assert_eq!(rebuilt.cn_paths[1].node_errors, vec![2e-7; 3]);
        assert_eq!(rebuilt.cn_paths[1].link_errors, vec![8e-6; 4]);
    }

    #[test]
    fn eps_sx_axis_sets_exact_backhaul_budget() {
        let s = apply_parameter(&base(Architecture::RanSplit), SweepParameter::EpsSx, 3e-3)
            .unwrap();
        assert_eq!(model::sx_error(&s.points), 3e-3);
    }

    #[test]
    fn region_map_winners() {
        let b = base(Architecture::RanSplit);
        let nodes = SweepAxis::new(
            SweepParameter::NIntermediateNodes,
            (0..=30).map(f64::from).collect(),
        )
        .unwrap();
        let sx = SweepAxis::new(SweepParameter::EpsSx, vec![1e-4, 1e-2]).unwrap();
        let entries = region_map(&b, &nodes, &sx, 1e-12).unwrap();
        assert_eq!(entries.len(), 62);

        // Large backhaul budget, short path: end-to-end duplication wins.
        let short_large_sx = entries
            .iter()
            .find_map(|e| match e {
                RegionEntry::Decided(c) if c.axis1_value == 0.0 && c.axis2_value == 1e-2 => {
                    Some(c)
                }
                _ => None,
            })
            .unwrap();
        assert_eq!(short_large_sx.winner, Winner::CnSplit);

        // Very long path: duplication at the master node wins.
        let long_path = entries
            .iter()
            .find_map(|e| match e {
                RegionEntry::Decided(c) if c.axis1_value == 30.0 && c.axis2_value == 1e-4 => {
                    Some(c)
                }
                _ => None,
            })
            .unwrap();
        assert_eq!(long_path.winner, Winner::RanSplit);
    }

    #[test]
    fn region_cells_match_standalone_evaluation() {
        let b = base(Architecture::RanSplit);
        let a1 = SweepAxis::new(SweepParameter::NIntermediateNodes, vec![0.0, 4.0]).unwrap();
        let a2 = SweepAxis::new(SweepParameter::Rho, vec![0.0, 1e-3]).unwrap();
        for entry in region_map(&b, &a1, &a2, 1e-12).unwrap() {
            let RegionEntry::Decided(cell) = entry else {
                panic!("all cells feasible here")
            };
            let mut s = apply_parameter(
                &b,
                SweepParameter::NIntermediateNodes,
                cell.axis1_value,
            )
            .unwrap();
            s = apply_parameter(&s, SweepParameter::Rho, cell.axis2_value).unwrap();
            let ran = model::evaluate(&s.with_architecture(Architecture::RanSplit).unwrap())
                .unwrap();
            let cn = model::evaluate(&s.with_architecture(Architecture::CnSplit).unwrap())
                .unwrap();
            assert_eq!(cell.error_rate_ran_split, ran.error_rate);
            assert_eq!(cell.error_rate_cn_split, cn.error_rate);
        }
    }

    #[test]
    fn near_symmetric_configurations_nearly_tie() {
        // No backhaul penalty and matched master/gNB rates: the two splits
        // differ only in second-order cross terms.
        let mut b = base(Architecture::RanSplit);
        b.points.eps_sgnb = 0.0;
        b.points.eps_xn = 0.0;
        let ran = model::evaluate(&b).unwrap().error_rate;
        let cn = model::evaluate(&b.with_architecture(Architecture::CnSplit).unwrap())
            .unwrap()
            .error_rate;
        let rel = (ran - cn).abs() / ran.max(cn);
        assert!(rel < 0.15, "splits should nearly tie, got rel diff {rel}");
    }

    #[test]
    fn max_nodes_baseline_and_trivial_requirement() {
        let b = base(Architecture::CnSplit);
        assert_eq!(
            max_feasible_nodes(&b, 1.0, 10_000).unwrap(),
            MaxNodesResult::Nodes(10_000)
        );
        // Frozen from the reference evaluation: eps_l = 1e-6, rho = 1e-4,
        // requirement 3e-8 admits 36 intermediate nodes on the CN split.
        let mut tight = apply_parameter(&b, SweepParameter::EpsLink, 1e-6).unwrap();
        tight.ran.correlation = Correlation::Event(defaults::LOW_EVENT_CORRELATION);
        assert_eq!(
            max_feasible_nodes(&tight, 3e-8, 10_000).unwrap(),
            MaxNodesResult::Nodes(36)
        );
        let ran = tight.with_architecture(Architecture::RanSplit).unwrap();
        assert_eq!(
            max_feasible_nodes(&ran, 3e-8, 10_000).unwrap(),
            MaxNodesResult::Infeasible
        );
    }

    #[test]
    fn max_nodes_monotone_in_requirement() {
        let b = base(Architecture::CnSplit);
        let b = apply_parameter(&b, SweepParameter::EpsLink, 1e-6).unwrap();
        let mut last = 0u64;
        for req in [2.5e-8, 3e-8, 1e-7, 1e-6] {
            match max_feasible_nodes(&b, req, 10_000).unwrap() {
                MaxNodesResult::Nodes(n) => {
                    assert!(n >= last, "looser requirement admits at least as many nodes");
                    last = n;
                }
                MaxNodesResult::Infeasible => assert_eq!(last, 0),
            }
        }
    }

    #[test]
    fn max_nodes_zero_element_errors() {
        // Constant error curve: either everything satisfies or nothing.
        let mut b = base(Architecture::CnSplit);
        b = apply_parameter(&b, SweepParameter::EpsLink, 0.0).unwrap();
        b = apply_parameter(&b, SweepParameter::EpsNode, 0.0).unwrap();
        assert_eq!(
            max_feasible_nodes(&b, 0.5, 100).unwrap(),
            MaxNodesResult::Nodes(100)
        );
        assert_eq!(
            max_feasible_nodes(&b, 1e-12, 100).unwrap(),
            MaxNodesResult::Infeasible
        );
    }

    #[test]
    fn max_nodes_requirement_validation() {
        let b = base(Architecture::CnSplit);
        assert!(max_feasible_nodes(&b, 0.0, 100).is_err());
        assert!(max_feasible_nodes(&b, 1.5, 100).is_err());
        assert!(max_feasible_nodes(&b, f64::NAN, 100).is_err());
    }
}
