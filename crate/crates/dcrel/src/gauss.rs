//! Gaussian tail statistics for radio links under lognormal shadowing.
//!
//! A link with transmit power `P_t`, path loss `P_l`, decoding threshold
//! `P_th` (all in dB) and shadowing deviation `sigma_dB` fails when the
//! shadowing excursion exceeds the normalized margin
//! `beta = (P_t - P_l - P_th) / sigma_dB`, so its error rate is `Q(beta)`.
//! Two links sharing a propagation environment see correlated shadowing
//! with coefficient `rho_h`; their *joint* failure probability is the
//! standard bivariate normal tail `P(X1 > beta1, X2 > beta2)` at that
//! correlation, and [`event_correlation`] converts `rho_h` into the Pearson
//! correlation of the two failure indicators.

use crate::quad;
use thiserror::Error;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

// Integration controls for the bivariate tail. The Gaussian factor decays
// below 1e-32 twelve deviations past the lower limit, and the tolerances
// keep three significant digits at probabilities down to ~1e-9.
const TAIL_SPAN: f64 = 12.0;
const QUAD_ABS_TOL: f64 = 1e-16;
const QUAD_REL_TOL: f64 = 1e-9;
const QUAD_MAX_SEGMENTS: usize = 256;

/// Errors from the Gaussian-statistics layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaussError {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("probability must lie strictly inside (0, 1), got {0}")]
    ProbabilityOutOfRange(f64),
    #[error("shadowing correlation must lie in [-1, 1], got {0}")]
    CorrelationOutOfRange(f64),
    #[error("shadowing standard deviation must be positive, got {0} dB")]
    NonPositiveStddev(f64),
    #[error("error rate {0} makes the failure indicator deterministic (sigma = 0), so event correlation is undefined")]
    DegenerateIndicator(f64),
}

/// Radio-link power parameters, all in dB scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub transmit_power_dbm: f64,
    pub path_loss_db: f64,
    pub threshold_dbm: f64,
    pub shadowing_stddev_db: f64,
}

impl LinkBudget {
    pub fn new(
        transmit_power_dbm: f64,
        path_loss_db: f64,
        threshold_dbm: f64,
        shadowing_stddev_db: f64,
    ) -> Result<Self, GaussError> {
        if shadowing_stddev_db.is_nan() || shadowing_stddev_db <= 0.0 {
            return Err(GaussError::NonPositiveStddev(shadowing_stddev_db));
        }
        let budget = Self {
            transmit_power_dbm,
            path_loss_db,
            threshold_dbm,
            shadowing_stddev_db,
        };
        if !budget.margin().is_finite() {
            return Err(GaussError::NonFinite {
                name: "link budget margin",
                value: budget.margin(),
            });
        }
        Ok(budget)
    }

    /// Normalized margin `beta`: mean received power above threshold in
    /// units of the shadowing standard deviation.
    pub fn margin(&self) -> f64 {
        (self.transmit_power_dbm - self.path_loss_db - self.threshold_dbm)
            / self.shadowing_stddev_db
    }
}

/// Cross-correlation of the shadowing processes on two links, in [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowingCorrelation(f64);

impl ShadowingCorrelation {
    pub fn new(rho_h: f64) -> Result<Self, GaussError> {
        if !rho_h.is_finite() || !(-1.0..=1.0).contains(&rho_h) {
            return Err(GaussError::CorrelationOutOfRange(rho_h));
        }
        Ok(Self(rho_h))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Upper-tail probability of the standard normal, `P(X > x)`.
pub fn q_function(x: f64) -> Result<f64, GaussError> {
    if !x.is_finite() {
        return Err(GaussError::NonFinite { name: "x", value: x });
    }
    Ok(q_raw(x))
}

#[inline]
pub(crate) fn q_raw(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Standard normal density.
#[inline]
fn phi(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

// Rational approximation for the standard normal quantile (Acklam); about
// nine correct digits, used only to seed the Newton polish below.
#[allow(clippy::excessive_precision)]
fn quantile_seed(p: f64) -> f64 {
    const A: [f64; 6] = [
        -39.696830286653757,
        220.9460984245205,
        -275.92851044696869,
        138.357751867269,
        -30.66479806614716,
        2.5066282774592392,
    ];
    const B: [f64; 5] = [
        -54.476098798224058,
        161.58583685804089,
        -155.69897985988661,
        66.80131188771972,
        -13.280681552885721,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-3,
        -0.32239645804113648,
        -2.4007582771618381,
        -2.5497325393437338,
        4.3746641414649678,
        2.9381639826987831,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-3,
        0.32246712907003983,
        2.445134137142996,
        3.754408661907416,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Inverse of [`q_function`]: the `x` with `Q(x) = p`, for `p` in (0, 1).
///
/// Newton iteration on the complementary error function, seeded by a
/// rational approximation and kept inside a bisection bracket; the result
/// satisfies `Q(x) = p` to well under 1e-12 relative error.
pub fn inverse_q(p: f64) -> Result<f64, GaussError> {
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(GaussError::ProbabilityOutOfRange(p));
    }

    // Q(x) = p  <=>  Phi(x) = 1 - p, and Phi^-1(1 - p) = -Phi^-1(p).
    let mut x = -quantile_seed(p);
    // Q is decreasing: Q(lo) > p > Q(hi) brackets the root.
    let (mut lo, mut hi) = (-40.0_f64, 40.0_f64);

    for _ in 0..200 {
        let fx = q_raw(x) - p;
        if fx > 0.0 {
            lo = x;
        } else if fx < 0.0 {
            hi = x;
        } else {
            return Ok(x);
        }
        if fx.abs() <= 4.0 * f64::EPSILON * p {
            return Ok(x);
        }
        // dQ/dx = -phi, so the Newton update is x + (Q(x) - p) / phi(x).
        let step = fx / phi(x);
        let next = x + step;
        // Every accepted iterate lies strictly inside the bracket, so the
        // bracket shrinks each round even when Newton stalls.
        x = if step.is_finite() && next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if (hi - lo).abs() <= f64::EPSILON * lo.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}

/// Link error rate implied by a budget: `Q(beta)`.
pub fn ran_error_from_budget(budget: &LinkBudget) -> f64 {
    q_raw(budget.margin())
}

/// Joint upper-tail probability `P(X1 > beta1, X2 > beta2)` for standard
/// bivariate normal variables with correlation `rho_h`.
///
/// `rho_h = +/-1` use the exact degenerate laws; `rho_h = 0` factorizes.
/// Otherwise the tail is reduced to a single integral over the larger
/// threshold's variable,
/// `(1/sqrt(2 pi)) int_b2^inf Q((b1 - rho x)/sqrt(1-rho^2)) e^{-x^2/2} dx`,
/// evaluated by adaptive quadrature with the upper limit truncated at
/// `max(b2, 0) + 12`.
pub fn bivariate_tail(
    beta1: f64,
    beta2: f64,
    rho_h: ShadowingCorrelation,
) -> Result<f64, GaussError> {
    if !beta1.is_finite() {
        return Err(GaussError::NonFinite { name: "beta1", value: beta1 });
    }
    if !beta2.is_finite() {
        return Err(GaussError::NonFinite { name: "beta2", value: beta2 });
    }

    // Integrating over the variable with the larger threshold keeps the
    // range short and makes the result exactly symmetric in (beta1, beta2).
    let low = beta1.min(beta2);
    let high = beta1.max(beta2);
    let rho = rho_h.value();

    if rho == 1.0 {
        // X1 = X2: the joint tail is the tail of the stricter threshold.
        return Ok(q_raw(high));
    }
    if rho == -1.0 {
        // X2 = -X1: requires low < X < -high.
        return Ok((q_raw(low) - q_raw(-high)).max(0.0));
    }
    if rho == 0.0 {
        return Ok(q_raw(low) * q_raw(high));
    }

    let ortho = (1.0 - rho * rho).sqrt();
    let upper = high.max(0.0) + TAIL_SPAN;
    let result = quad::integrate(
        |x| q_raw((low - rho * x) / ortho) * (-0.5 * x * x).exp(),
        high,
        upper,
        QUAD_ABS_TOL,
        QUAD_REL_TOL,
        QUAD_MAX_SEGMENTS,
    );
    if !result.converged {
        log::warn!(
            "bivariate tail quadrature stopped at error {:.3e} for beta=({beta1}, {beta2}), rho_h={rho}",
            result.abs_error
        );
    }
    // Clamp quadrature round-off into the feasible interval
    // [0, min(Q(beta1), Q(beta2))].
    Ok((result.value / SQRT_2PI).clamp(0.0, q_raw(high)))
}

/// Pearson correlation of the failure indicators of two links with error
/// rates `eps1`, `eps2` and shadowing cross-correlation `rho_h`.
///
/// Thresholds are recovered as `beta_i = inverse_q(eps_i)`; the joint
/// failure probability comes from [`bivariate_tail`]; the indicator
/// standard deviations are `sqrt(eps_i (1 - eps_i))`.
pub fn event_correlation(
    eps1: f64,
    eps2: f64,
    rho_h: ShadowingCorrelation,
) -> Result<f64, GaussError> {
    for eps in [eps1, eps2] {
        if !eps.is_finite() || !(0.0..=1.0).contains(&eps) {
            return Err(GaussError::ProbabilityOutOfRange(eps));
        }
        if eps == 0.0 || eps == 1.0 {
            return Err(GaussError::DegenerateIndicator(eps));
        }
    }
    if rho_h.value() == 0.0 {
        // Independent shadowing makes the indicators independent.
        return Ok(0.0);
    }
    let beta1 = inverse_q(eps1)?;
    let beta2 = inverse_q(eps2)?;
    let joint = bivariate_tail(beta1, beta2, rho_h)?;
    let sigma1 = (eps1 * (1.0 - eps1)).sqrt();
    let sigma2 = (eps2 * (1.0 - eps2)).sqrt();
    Ok(((joint - eps1 * eps2) / (sigma1 * sigma2)).clamp(-1.0, 1.0))
}
