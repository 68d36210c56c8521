//! Test-only oracles, kept independent of the library's implementation
//! paths: an erfc built from series/continued-fraction expansions, a
//! tensor-product Gauss-Legendre cubature for the raw double-integral
//! form of the bivariate tail, an exhaustive state-enumeration oracle for
//! end-to-end error rates, and random scenario generators.
#![allow(dead_code)] // each test target pulls in the subset it needs

use dcrel::model::{
    Architecture, CnPathSpec, Correlation, PointFailures, RanPairSpec, Scenario,
};
use rand::Rng;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// erf by Maclaurin series; accurate to ~1e-15 relative for |t| <= 2.
fn erf_series(t: f64) -> f64 {
    let t2 = t * t;
    let mut term = t;
    let mut sum = t;
    for n in 1..200 {
        let n = n as f64;
        term *= -t2 / n;
        let contribution = term / (2.0 * n + 1.0);
        sum += contribution;
        if contribution.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum * 2.0 / SQRT_PI
}

/// erfc as the defining integral `(2/sqrt(pi)) int_t^inf e^{-s^2} ds`,
/// by composite Gauss-Legendre panels; no cancellation, so the relative
/// error stays at the 1e-15 level for all t >= 0.
fn erfc_integral(t: f64) -> f64 {
    let rule = gauss_legendre(20);
    let panels = 24usize;
    let width = 9.0 / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = t + p as f64 * width;
        let half = 0.5 * width;
        for &(x, w) in &rule {
            let s = a + half * (x + 1.0);
            total += w * half * (-s * s).exp();
        }
    }
    total * 2.0 / SQRT_PI
}

/// Reference complementary error function.
pub fn oracle_erfc(t: f64) -> f64 {
    if t < 0.0 {
        2.0 - oracle_erfc(-t)
    } else if t < 0.5 {
        1.0 - erf_series(t)
    } else {
        erfc_integral(t)
    }
}

/// Reference Gaussian upper-tail probability.
pub fn oracle_q(x: f64) -> f64 {
    0.5 * oracle_erfc(x / std::f64::consts::SQRT_2)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// from Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like initial guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Evaluate P_n and P_n' by upward recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let k = k as f64;
            let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

/// Brute-force `P(X1 > b1, X2 > b2)` by composite Gauss-Legendre cubature
/// of the raw bivariate density over [b1, b1+12] x [b2, b2+12].
pub fn oracle_bivariate_tail(b1: f64, b2: f64, rho: f64) -> f64 {
    assert!(rho.abs() < 1.0, "closed forms cover the degenerate cases");
    let rule = gauss_legendre(20);
    let panels = 24usize;
    let span = 12.0;
    let width = span / panels as f64;
    let norm = 1.0 / (2.0 * std::f64::consts::PI * (1.0 - rho * rho).sqrt());
    let expo = -0.5 / (1.0 - rho * rho);

    let mut nodes_x = Vec::with_capacity(panels * rule.len());
    let mut nodes_y = Vec::with_capacity(panels * rule.len());
    for p in 0..panels {
        let (ax, ay) = (b1 + p as f64 * width, b2 + p as f64 * width);
        for &(t, w) in &rule {
            let half = 0.5 * width;
            nodes_x.push((ax + half * (t + 1.0), w * half));
            nodes_y.push((ay + half * (t + 1.0), w * half));
        }
    }

    let mut total = 0.0;
    for &(x, wx) in &nodes_x {
        let mut row = 0.0;
        for &(y, wy) in &nodes_y {
            row += wy * (expo * (x * x + y * y - 2.0 * rho * x * y)).exp();
        }
        total += wx * row;
    }
    total * norm
}

/// The joint law of two correlated Bernoulli failure indicators, written
/// from the definition of the Pearson correlation.
fn bernoulli_joint_law(e1: f64, e2: f64, rho: f64) -> [(f64, bool, bool); 4] {
    let cross = rho * (e1 * (1.0 - e1)).sqrt() * (e2 * (1.0 - e2)).sqrt();
    [
        (e1 * e2 + cross, true, true),
        (e1 * (1.0 - e2) - cross, true, false),
        (e2 * (1.0 - e1) - cross, false, true),
        ((1.0 - e1) * (1.0 - e2) + cross, false, false),
    ]
}

/// Exhaustive enumeration of every joint component state, applying the
/// duplication/forwarding semantics of the architecture directly. The
/// radio pair must carry an event correlation.
pub fn enumeration_error_rate(scenario: &Scenario) -> f64 {
    let Correlation::Event(rho) = scenario.ran.correlation else {
        panic!("enumeration oracle expects an event correlation");
    };
    let ran_law = bernoulli_joint_law(scenario.ran.eps_ran_1, scenario.ran.eps_ran_2, rho);

    // Independent components, in a fixed order. Path elements are grouped
    // per path so the predicate can test "path i fully works".
    let points = &scenario.points;
    let mut probs: Vec<f64> = match scenario.architecture {
        Architecture::RanSplit => vec![
            points.eps_ue,
            points.eps_mgnb,
            points.eps_upf,
            points.eps_sgnb,
            points.eps_xn,
        ],
        Architecture::CnSplit => vec![
            points.eps_ue,
            points.eps_upf,
            points.eps_gnb_per_path[0],
            points.eps_gnb_per_path[1],
        ],
    };
    let mut path_ranges = Vec::new();
    for path in &scenario.cn_paths {
        let start = probs.len();
        probs.extend_from_slice(&path.node_errors);
        probs.extend_from_slice(&path.link_errors);
        path_ranges.push(start..probs.len());
    }
    assert!(probs.len() <= 24, "enumeration oracle is for small scenarios");

    let mut error = 0.0;
    for state in 0u32..(1 << probs.len()) {
        let failed = |idx: usize| state & (1 << idx) != 0;
        let mut p_state = 1.0;
        for (idx, &e) in probs.iter().enumerate() {
            p_state *= if failed(idx) { e } else { 1.0 - e };
        }
        if p_state == 0.0 {
            continue;
        }
        let path_ok: Vec<bool> = path_ranges
            .iter()
            .map(|r| r.clone().all(|idx| !failed(idx)))
            .collect();

        for &(p_ran, leg1_failed, leg2_failed) in &ran_law {
            let delivered = match scenario.architecture {
                Architecture::RanSplit => {
                    let (ue, mgnb, upf, sg, xn) =
                        (failed(0), failed(1), failed(2), failed(3), failed(4));
                    let reaches_master =
                        !leg1_failed || (!leg2_failed && !sg && !xn);
                    !ue && reaches_master && !mgnb && path_ok.iter().any(|&ok| ok) && !upf
                }
                Architecture::CnSplit => {
                    let (ue, upf, gnb1, gnb2) =
                        (failed(0), failed(1), failed(2), failed(3));
                    let chain1 = !leg1_failed && !gnb1 && path_ok[0];
                    let chain2 = !leg2_failed && !gnb2 && path_ok[1];
                    !ue && !upf && (chain1 || chain2)
                }
            };
            if !delivered {
                error += p_state * p_ran;
            }
        }
    }
    error
}

/// Feasible event-correlation interval for the given marginals.
pub fn feasible_rho_interval(e1: f64, e2: f64) -> (f64, f64) {
    let ss = (e1 * (1.0 - e1)).sqrt() * (e2 * (1.0 - e2)).sqrt();
    let lower = (-e1 * e2).max(-(1.0 - e1) * (1.0 - e2)) / ss;
    let upper = (e1.min(e2) - e1 * e2) / ss;
    (lower, upper)
}

/// A random scenario with every probability drawn from `range` and a
/// correlation drawn strictly inside the feasible interval.
pub fn random_scenario<R: Rng>(
    rng: &mut R,
    architecture: Architecture,
    range: std::ops::Range<f64>,
    max_nodes: usize,
) -> Scenario {
    let mut draw = |rng: &mut R| rng.random_range(range.clone());
    let e1 = draw(rng);
    let e2 = draw(rng);
    let (lo, hi) = feasible_rho_interval(e1, e2);
    let rho = 0.95 * rng.random_range(lo..hi);
    let ran = RanPairSpec::new(e1, e2, Correlation::Event(rho)).unwrap();

    let n_paths = 2;
    let paths: Vec<CnPathSpec> = (0..n_paths)
        .map(|_| {
            let nodes = rng.random_range(0..=max_nodes);
            CnPathSpec::new(
                (0..nodes).map(|_| draw(rng)).collect(),
                (0..=nodes).map(|_| draw(rng)).collect(),
            )
            .unwrap()
        })
        .collect();

    let points = PointFailures::new(
        draw(rng),
        draw(rng),
        draw(rng),
        vec![draw(rng), draw(rng)],
        draw(rng),
        draw(rng),
    )
    .unwrap();

    Scenario::new(architecture, ran, paths, points).unwrap()
}

#[cfg(test)]
mod oracle_self_checks {
    use super::*;

    #[test]
    fn erfc_splice_is_seamless() {
        // Series and integral agree where the oracle switches regimes.
        let lo = 1.0 - erf_series(0.5);
        let hi = erfc_integral(0.5);
        assert!((lo - hi).abs() / hi < 1e-14, "series {lo} vs integral {hi}");
    }

    #[test]
    fn erfc_matches_external_references() {
        // erfc(1) and Q(3.7190), frozen from 50-digit arithmetic.
        assert!((oracle_erfc(1.0) - 1.5729920705028513e-1).abs() < 1e-16);
        assert!((oracle_q(3.7190) - 1.0000652593416139e-4).abs() < 1e-18);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre(20);
        let sum: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((sum - 2.0).abs() < 1e-13);
        let x6: f64 = rule.iter().map(|(x, w)| w * x.powi(6)).sum();
        assert!((x6 - 2.0 / 7.0).abs() < 1e-13);
    }

    #[test]
    fn cubature_matches_independence() {
        let got = oracle_bivariate_tail(1.0, 2.0, 0.0);
        let expect = oracle_q(1.0) * oracle_q(2.0);
        assert!((got - expect).abs() / expect < 1e-12, "{got} vs {expect}");
    }
}
