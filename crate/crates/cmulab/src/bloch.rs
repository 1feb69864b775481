//! Bloch-type seminorms of truncated series, and coefficient-side criteria.
//!
//! The `alpha`-Bloch seminorm of `f` is `sup_z (1-|z|^2)^alpha |f'(z)|` over
//! the unit disk. For a truncation of order `N` the sup is estimated on the
//! dyadic radii `r_j = 1 - 2^{-j}` *honestly*: radii are capped at
//! `1 - 8/N`, because beyond that the truncated tail of `f'` can carry most
//! of the mass and the estimate would silently report the truncation, not
//! the function. Estimates therefore come with the grid depth actually used
//! and a flag saying whether the requested depth was cut by the truncation.
//!
//! Companion diagnostics:
//!
//! * `coefficient_criterion` — for nonnegative coefficients, membership in
//!   the `alpha`-Bloch space is equivalent to boundedness of
//!   `n^{-alpha} sum_{k<=n} k a_k`; the report carries its sup and a dyadic
//!   trace.
//! * `partial_sum_growth` — `sup_n |S_n| / log(n+1)`, the growth rate that
//!   separates logarithmic from faster escalation of partial sums.
//! * `growth_bound_check` — compares `|f(r)|` against the pointwise growth
//!   ceiling implied by a seminorm bound.
//! * `escalation_verdict` — labels a sequence of estimates at doubling
//!   resolution as stable or still growing.

use serde::Serialize;

use crate::series::PowerSeries;
use crate::{Error, Result};

/// Radii are capped at `1 - HONESTY_FACTOR / N` for truncation order `N`.
pub const HONESTY_FACTOR: f64 = 8.0;
/// Default angle count for series with sign-changing coefficients.
pub const DEFAULT_ANGLES: usize = 64;
/// An estimate sequence is `Growing` when the last value exceeds the
/// mid-sequence value by this factor.
pub const ESCALATION_FACTOR: f64 = 1.25;

/// Seminorm estimate on the honest dyadic grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeminormEstimate {
    pub alpha: f64,
    /// `max_j max_theta (1-r_j^2)^alpha |f'(r_j e^{i theta})|`.
    pub value: f64,
    pub argmax_radius: f64,
    /// Deepest grid level actually evaluated.
    pub grid_depth: usize,
    /// True when the requested depth was cut down by the truncation cap.
    pub truncation_limited: bool,
}

/// Report of the nonnegative-coefficient criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub alpha: f64,
    /// `sup_n n^{-alpha} sum_{k<=n} k a_k`.
    pub sup: f64,
    pub argmax_n: usize,
    /// Criterion values at dyadic `n`.
    pub trace: Vec<(usize, f64)>,
}

/// Report of partial-sum growth against `log(n+1)`.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub sup: f64,
    pub argmax_n: usize,
    pub trace: Vec<(usize, f64)>,
}

/// One radius of the pointwise growth-bound comparison.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrowthSample {
    pub r: f64,
    pub value: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// Result of `growth_bound_check`.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthBoundReport {
    pub alpha: f64,
    pub norm_bound: f64,
    pub sup_ratio: f64,
    pub argmax_radius: f64,
    pub samples: Vec<GrowthSample>,
}

/// Trend of a sequence of estimates at doubling resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendVerdict {
    Stable,
    Growing,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "weight exponent must satisfy alpha > 0, got {alpha}"
        )));
    }
    Ok(())
}

/// Deepest honest grid level for truncation order `n`: `2^{-j} >= 8/n`.
fn honest_depth(n: usize) -> usize {
    if (n as f64) <= HONESTY_FACTOR {
        return 0;
    }
    (n as f64 / HONESTY_FACTOR).log2().floor() as usize
}

/// Estimates `sup (1-|z|^2)^alpha |f'(z)|` on dyadic radii and equispaced
/// angles.
///
/// When every coefficient of `f'` is nonnegative the maximum modulus lies
/// on the positive axis and a single angle suffices, whatever `angles` says.
pub fn bloch_seminorm(
    f: &PowerSeries,
    alpha: f64,
    depth: usize,
    angles: usize,
) -> Result<SeminormEstimate> {
    check_alpha(alpha)?;
    if angles == 0 {
        return Err(Error::Domain("angle count must be at least 1".into()));
    }
    let derivative = f.derivative();
    let cap = honest_depth(f.truncation());
    let grid_depth = depth.min(cap);
    let truncation_limited = cap < depth;
    let angles = if derivative.coefficients().iter().all(|&c| c >= 0.0) {
        1
    } else {
        angles
    };
    let mut value = f64::NEG_INFINITY;
    let mut argmax_radius = 0.0;
    for j in 0..=grid_depth {
        let u = 0.5f64.powi(j as i32);
        let r = 1.0 - u;
        // (1 - r^2) = u (2 - u), exact in u.
        let weight = (u * (2.0 - u)).powf(alpha);
        let mut modulus: f64 = 0.0;
        for i in 0..angles {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / angles as f64;
            let (re, im) = derivative.evaluate(r * theta.cos(), r * theta.sin())?;
            modulus = modulus.max(re.hypot(im));
        }
        let weighted = weight * modulus;
        if weighted > value {
            value = weighted;
            argmax_radius = r;
        }
    }
    Ok(SeminormEstimate {
        alpha,
        value,
        argmax_radius,
        grid_depth,
        truncation_limited,
    })
}

/// Evaluates `sup_n n^{-alpha} sum_{k<=n} k a_k` for nonnegative
/// coefficients (for such series this is comparable to the seminorm).
pub fn coefficient_criterion(f: &PowerSeries, alpha: f64) -> Result<CriterionReport> {
    check_alpha(alpha)?;
    if let Some((index, &value)) = f
        .coefficients()
        .iter()
        .enumerate()
        .find(|(_, &c)| c < 0.0)
    {
        return Err(Error::NegativeCoefficient { index, value });
    }
    let mut weighted_sum = 0.0;
    let mut sup = 0.0;
    let mut argmax_n = 0;
    let mut trace = Vec::new();
    for (n, &a) in f.coefficients().iter().enumerate().skip(1) {
        weighted_sum += n as f64 * a;
        let value = weighted_sum / (n as f64).powf(alpha);
        if value > sup {
            sup = value;
            argmax_n = n;
        }
        if n.is_power_of_two() {
            trace.push((n, value));
        }
    }
    Ok(CriterionReport {
        alpha,
        sup,
        argmax_n,
        trace,
    })
}

/// Evaluates `sup_{n>=1} |S_n| / log(n+1)` with a dyadic trace.
pub fn partial_sum_growth(f: &PowerSeries) -> GrowthReport {
    let sums = f.partial_sums();
    let mut sup = 0.0;
    let mut argmax_n = 0;
    let mut trace = Vec::new();
    for (n, &s) in sums.iter().enumerate().skip(1) {
        let value = s.abs() / (n as f64 + 1.0).ln();
        if value > sup {
            sup = value;
            argmax_n = n;
        }
        if n.is_power_of_two() {
            trace.push((n, value));
        }
    }
    GrowthReport {
        sup,
        argmax_n,
        trace,
    }
}

/// Pointwise growth ceiling of a function with seminorm at most `b`:
/// bounded for `alpha < 1`, logarithmic at `alpha = 1`, a power of
/// `1/(1-r)` above.
fn growth_envelope(alpha: f64, r: f64) -> f64 {
    if alpha < 1.0 {
        1.0
    } else if alpha == 1.0 {
        (2.0 / (1.0 - r)).ln()
    } else {
        (1.0 - r).powf(1.0 - alpha)
    }
}

/// Compares `|f(r_j)|` with `|f(0)| + norm_bound * envelope(r_j)` on the
/// honest grid; ratios well above 1 falsify the claimed bound.
pub fn growth_bound_check(
    f: &PowerSeries,
    alpha: f64,
    norm_bound: f64,
    depth: usize,
) -> Result<GrowthBoundReport> {
    check_alpha(alpha)?;
    if !norm_bound.is_finite() || norm_bound <= 0.0 {
        return Err(Error::Domain(format!(
            "norm bound must be positive and finite, got {norm_bound}"
        )));
    }
    let base = f.coefficients()[0].abs();
    let grid_depth = depth.min(honest_depth(f.truncation()));
    let mut samples = Vec::with_capacity(grid_depth + 1);
    let mut sup_ratio = 0.0;
    let mut argmax_radius = 0.0;
    for j in 0..=grid_depth {
        let r = 1.0 - 0.5f64.powi(j as i32);
        let (re, im) = f.evaluate(r, 0.0)?;
        let value = re.hypot(im);
        let bound = base + norm_bound * growth_envelope(alpha, r);
        let ratio = value / bound;
        if ratio > sup_ratio {
            sup_ratio = ratio;
            argmax_radius = r;
        }
        samples.push(GrowthSample {
            r,
            value,
            bound,
            ratio,
        });
    }
    Ok(GrowthBoundReport {
        alpha,
        norm_bound,
        sup_ratio,
        argmax_radius,
        samples,
    })
}

/// Labels estimates taken at doubling resolution: `Growing` when the final
/// estimate exceeds the mid-sequence one by more than the escalation
/// factor, `Stable` otherwise.
pub fn escalation_verdict(estimates: &[f64]) -> Result<TrendVerdict> {
    if estimates.len() < 2 {
        return Err(Error::Domain(
            "escalation verdict needs at least two estimates".into(),
        ));
    }
    if let Some(bad) = estimates.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::Domain(format!(
            "estimates must be finite and nonnegative, got {bad}"
        )));
    }
    let mid = estimates[estimates.len() / 2];
    let last = estimates[estimates.len() - 1];
    if last > ESCALATION_FACTOR * mid {
        Ok(TrendVerdict::Growing)
    } else {
        Ok(TrendVerdict::Stable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(n: usize) -> PowerSeries {
        PowerSeries::new(vec![1.0; n + 1]).unwrap()
    }

    /// `a_0 = 0`, `a_k = 1/k`: truncation of `log(1/(1-z))`.
    fn log_series(n: usize) -> PowerSeries {
        let mut c = vec![0.0];
        c.extend((1..=n).map(|k| 1.0 / k as f64));
        PowerSeries::new(c).unwrap()
    }

    #[test]
    fn identity_map_has_unit_seminorm() {
        let mut c = vec![0.0, 1.0];
        c.resize(129, 0.0);
        let f = PowerSeries::new(c).unwrap();
        for alpha in [0.5, 1.0, 2.0] {
            let est = bloch_seminorm(&f, alpha, 30, 1).unwrap();
            // (1 - r^2)^alpha * 1 is maximal at r = 0.
            assert_eq!(est.value, 1.0);
            assert_eq!(est.argmax_radius, 0.0);
            assert!(est.truncation_limited);
        }
    }

    #[test]
    fn geometric_series_approaches_weight_four() {
        // f = 1/(1-z): (1-r^2)^2 |f'(r)| = (1+r)^2 -> 4; the honest grid at
        // N = 2^16 stops at r = 1 - 2^{-13}, losing only the truncated tail.
        let est = bloch_seminorm(&geometric(1 << 16), 2.0, 30, 1).unwrap();
        assert!(est.value > 3.9 && est.value < 4.0, "value {}", est.value);
        assert_eq!(est.grid_depth, 13);
        assert!(est.truncation_limited);
        // The argmax sits at the deep end of the grid (the final honest
        // radius may lose to its neighbor through the truncated tail).
        assert!(est.argmax_radius >= 1.0 - 0.5f64.powi(12));
    }

    #[test]
    fn honest_grid_respects_requested_depth() {
        let est = bloch_seminorm(&geometric(1 << 16), 2.0, 5, 1).unwrap();
        assert_eq!(est.grid_depth, 5);
        assert!(!est.truncation_limited);
    }

    #[test]
    fn sign_changing_series_needs_angles() {
        // f' = 1 - z has |f'| maximal on the negative axis.
        let mut c = vec![0.0, 1.0, -0.5];
        c.resize(65, 0.0);
        let f = PowerSeries::new(c).unwrap();
        let one_angle = bloch_seminorm(&f, 1.0, 10, 1).unwrap();
        let two_angles = bloch_seminorm(&f, 1.0, 10, 2).unwrap();
        assert_eq!(one_angle.value, 1.0);
        assert!((two_angles.value - 1.125).abs() < 1e-12);
        assert_eq!(two_angles.argmax_radius, 0.5);
    }

    #[test]
    fn criterion_plateau_for_quadratic_weight() {
        // a_k = 1: sum k a_k = n(n+1)/2, so n^{-2}-criterion tends to 1/2.
        let report = coefficient_criterion(&geometric(1 << 16), 2.0).unwrap();
        assert_eq!(report.sup, 1.0);
        assert_eq!(report.argmax_n, 1);
        let &(n, last) = report.trace.last().unwrap();
        assert_eq!(n, 1 << 16);
        assert!((last - 0.5).abs() < 1e-4);
    }

    #[test]
    fn criterion_rejects_negative_coefficients() {
        let f = PowerSeries::new(vec![1.0, -2.0]).unwrap();
        let err = coefficient_criterion(&f, 1.0).unwrap_err();
        assert!(matches!(err, Error::NegativeCoefficient { index: 1, .. }));
    }

    #[test]
    fn log_series_partial_sums_grow_logarithmically() {
        let report = partial_sum_growth(&log_series(1 << 12));
        // H_1 / log 2 is the sup; deeper harmonic sums fall below it.
        assert!((report.sup - 1.0 / std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(report.argmax_n, 1);
        // H_n / log(n+1) -> 1 from above.
        let &(_, last) = report.trace.last().unwrap();
        assert!(last > 1.0 && last < 1.1);
    }

    #[test]
    fn log_series_sits_inside_its_growth_envelope() {
        // |log(1/(1-r))| <= 2 log(2/(1-r)) with seminorm bound 2.
        let report = growth_bound_check(&log_series(1 << 16), 1.0, 2.0, 30).unwrap();
        assert!(report.sup_ratio < 0.5, "ratio {}", report.sup_ratio);
        assert!(report.sup_ratio > 0.3);
    }

    #[test]
    fn alpha_above_one_envelope_absorbs_geometric_growth() {
        // f = 1/(1-z) has |f(r)| = (1-r)^{-1}, the alpha = 2 envelope shape.
        let report = growth_bound_check(&geometric(1 << 12), 2.0, 1.0, 30).unwrap();
        assert!(report.sup_ratio < 1.0 + 1e-9, "ratio {}", report.sup_ratio);
        assert!(report.sup_ratio > 0.9);
    }

    #[test]
    fn escalation_thresholds() {
        assert_eq!(
            escalation_verdict(&[1.0, 1.01, 1.02, 1.02]).unwrap(),
            TrendVerdict::Stable
        );
        assert_eq!(
            escalation_verdict(&[1.0, 2.0, 4.0, 8.0]).unwrap(),
            TrendVerdict::Growing
        );
        assert!(escalation_verdict(&[1.0]).is_err());
        assert!(escalation_verdict(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn domain_errors() {
        let f = geometric(16);
        assert!(bloch_seminorm(&f, 0.0, 10, 1).is_err());
        assert!(bloch_seminorm(&f, 1.0, 10, 0).is_err());
        assert!(growth_bound_check(&f, 1.0, 0.0, 10).is_err());
    }
}
