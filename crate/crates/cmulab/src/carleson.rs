//! Carleson-type tail conditions on a dyadic grid.
//!
//! For exponents `s >= 0` and `gamma` the quotient
//!
//! ```text
//!     q(t) = mu([t,1)) * log^gamma(e/(1-t)) / (1-t)^s
//! ```
//!
//! is sampled at `t_j = 1 - 2^{-j}`; the measure satisfies the `(s, gamma)`
//! condition when `q` stays bounded, the vanishing variant when `q -> 0`.
//! `classify` turns the finite sample into a verdict by fitting the slope of
//! `log2 q` against `j` over the deeper half of the grid: on this grid a
//! factor `(1-t)^eps` moves the slope by `-eps` bits per level, while
//! logarithmic factors contribute slopes decaying like `1/j`, so thresholds
//! are calibrated to separate "plateau" from "still drifting" at desk
//! depths rather than to detect arbitrarily slow drifts — borderline decays
//! (for example a single inverse log) deliberately come out `Inconclusive`.
//!
//! `moment_carleson_test` probes the equivalent moment-side decay
//! `mu_n = O(n^{-s} log^{-gamma} n)` on dyadic `n`, reporting the sup of the
//! weighted moments and the fitted decay exponent of `mu_n` itself.

use serde::Serialize;

use crate::fit::{least_squares_slope, relative_variation};
use crate::measure::MeasureSpec;
use crate::{Error, Result};

/// Default dyadic grid depth (`t` up to `1 - 2^-30`).
pub const DEFAULT_DEPTH: usize = 30;
/// Minimum depth for which the slope fit has any meaning.
pub const MIN_DEPTH: usize = 8;
/// Fitted slope (bits per grid level) at or above which the quotient is
/// declared unbounded.
pub const QUOTIENT_GROWTH_SLOPE: f64 = 0.05;
/// Fitted slope at or below which decay is credited toward `Vanishing`.
pub const QUOTIENT_DECAY_SLOPE: f64 = -0.05;
/// `Vanishing` additionally requires the quotient to at least halve between
/// mid-depth and full depth.
pub const QUOTIENT_HALVING: f64 = 0.5;
/// Relative variation over the deeper half below which the quotient is
/// declared a plateau.
pub const QUOTIENT_PLATEAU_VARIATION: f64 = 0.20;
/// Dyadic moment grid never exceeds `2^MOMENT_GRID_MAX_LOG`.
pub const MOMENT_GRID_MAX_LOG: usize = 20;

/// Outcome of the grid classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CarlesonVerdict {
    /// Quotient plateaus at a positive level.
    CarlesonBounded,
    /// Quotient decays to zero.
    Vanishing,
    /// Quotient grows beyond any plateau.
    NotCarleson,
    /// The grid is too shallow to separate the hypotheses.
    Inconclusive,
}

impl std::fmt::Display for CarlesonVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            CarlesonVerdict::CarlesonBounded => "carleson_bounded",
            CarlesonVerdict::Vanishing => "vanishing",
            CarlesonVerdict::NotCarleson => "not_carleson",
            CarlesonVerdict::Inconclusive => "inconclusive",
        };
        f.write_str(token)
    }
}

/// One grid sample `t_j = 1 - 2^{-j}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridPoint {
    pub j: usize,
    pub t: f64,
    pub quotient: f64,
}

/// One dyadic moment sample.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentSample {
    pub n: usize,
    pub moment: f64,
    /// `n^s log^gamma(e n) * mu_n`.
    pub weighted: f64,
}

/// Result of the moment-side decay probe.
#[derive(Debug, Clone, Serialize)]
pub struct MomentDecay {
    pub samples: Vec<MomentSample>,
    /// Supremum of the weighted moments over the grid.
    pub sup: f64,
    /// Fitted decay exponent of `mu_n` itself (`mu_n ~ n^{-e}` gives `e`);
    /// infinite when moments vanish exactly inside the fit window.
    pub fitted_exponent: f64,
}

/// Full grid classification report.
#[derive(Debug, Clone, Serialize)]
pub struct CarlesonReport {
    pub s: f64,
    pub gamma: f64,
    pub depth: usize,
    pub grid: Vec<GridPoint>,
    pub sup_estimate: f64,
    /// Plateau level (mean of the deepest samples) for `CarlesonBounded`,
    /// zero for `Vanishing`, absent otherwise.
    pub limit_estimate: Option<f64>,
    pub moment_decay: MomentDecay,
    pub verdict: CarlesonVerdict,
}

fn check_exponents(s: f64, gamma: f64) -> Result<()> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::Domain(format!(
            "condition exponent must satisfy s >= 0, got s = {s}"
        )));
    }
    if !gamma.is_finite() {
        return Err(Error::Domain(format!(
            "log exponent gamma must be finite, got {gamma}"
        )));
    }
    Ok(())
}

/// The quotient `mu([t,1)) log^gamma(e/(1-t)) / (1-t)^s` at a single `t`.
pub fn carleson_quotient(measure: &MeasureSpec, t: f64, s: f64, gamma: f64) -> Result<f64> {
    check_exponents(s, gamma)?;
    if !t.is_finite() || !(0.0..1.0).contains(&t) {
        return Err(Error::Domain(format!(
            "carleson_quotient requires 0 <= t < 1, got t = {t}"
        )));
    }
    Ok(quotient_u(measure, 1.0 - t, s, gamma))
}

/// Quotient in the exact variable `u = 1 - t`.
fn quotient_u(measure: &MeasureSpec, u: f64, s: f64, gamma: f64) -> f64 {
    let log_term = 1.0 - u.ln(); // log(e/u) >= 1
    measure.tail_mass_u(u) * log_term.powf(gamma) / u.powf(s)
}

/// Classifies the `(s, gamma)` condition on the dyadic grid `t_j = 1-2^{-j}`,
/// `j = 0 ..= depth`, and attaches the moment-side probe.
pub fn classify(
    measure: &MeasureSpec,
    s: f64,
    gamma: f64,
    depth: usize,
) -> Result<CarlesonReport> {
    check_exponents(s, gamma)?;
    if depth < MIN_DEPTH {
        return Err(Error::Domain(format!(
            "classification depth must be at least {MIN_DEPTH}, got {depth}"
        )));
    }
    let grid: Vec<GridPoint> = (0..=depth)
        .map(|j| {
            let u = 0.5f64.powi(j as i32);
            GridPoint {
                j,
                t: 1.0 - u,
                quotient: quotient_u(measure, u, s, gamma),
            }
        })
        .collect();
    let sup_estimate = grid.iter().map(|p| p.quotient).fold(0.0, f64::max);
    let moment_decay = moment_carleson_test(measure, s, gamma, depth)?;

    let half = depth / 2;
    let window: Vec<f64> = grid[half..].iter().map(|p| p.quotient).collect();
    let deepest = grid[depth].quotient;

    // Tail mass is monotone, so a zero sample stays zero ever deeper.
    let (verdict, limit_estimate) = if deepest == 0.0 {
        (CarlesonVerdict::Vanishing, Some(0.0))
    } else {
        let slope = least_squares_slope(
            &grid[half..]
                .iter()
                .map(|p| (p.j as f64, p.quotient.log2()))
                .collect::<Vec<_>>(),
        );
        if slope >= QUOTIENT_GROWTH_SLOPE {
            (CarlesonVerdict::NotCarleson, None)
        } else if deepest < QUOTIENT_HALVING * grid[half].quotient
            && slope <= QUOTIENT_DECAY_SLOPE
        {
            (CarlesonVerdict::Vanishing, Some(0.0))
        } else if relative_variation(&window) < QUOTIENT_PLATEAU_VARIATION {
            let tail3 = &window[window.len().saturating_sub(3)..];
            let level = tail3.iter().sum::<f64>() / tail3.len() as f64;
            (CarlesonVerdict::CarlesonBounded, Some(level))
        } else {
            (CarlesonVerdict::Inconclusive, None)
        }
    };

    Ok(CarlesonReport {
        s,
        gamma,
        depth,
        grid,
        sup_estimate,
        limit_estimate,
        moment_decay,
        verdict,
    })
}

/// Probes the equivalent moment decay on dyadic `n = 2^k`.
///
/// Reports `sup_n n^s log^gamma(e n) mu_n` over the grid and the fitted
/// decay exponent of the raw moments over the deeper half.
pub fn moment_carleson_test(
    measure: &MeasureSpec,
    s: f64,
    gamma: f64,
    depth: usize,
) -> Result<MomentDecay> {
    check_exponents(s, gamma)?;
    let k_max = depth.min(MOMENT_GRID_MAX_LOG);
    let mut samples = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let n = 1usize << k;
        let moment = measure.moment(n)?;
        let nf = n as f64;
        let weighted = nf.powf(s) * (1.0 + nf.ln()).powf(gamma) * moment;
        samples.push(MomentSample {
            n,
            moment,
            weighted,
        });
    }
    let sup = samples.iter().map(|p| p.weighted).fold(0.0, f64::max);
    let half = k_max / 2;
    let fitted_exponent = if samples[half..].iter().any(|p| p.moment == 0.0) {
        f64::INFINITY
    } else {
        -least_squares_slope(
            &samples[half..]
                .iter()
                .enumerate()
                .map(|(i, p)| ((half + i) as f64, p.moment.log2()))
                .collect::<Vec<_>>(),
        )
    };
    Ok(MomentDecay {
        samples,
        sup,
        fitted_exponent,
    })
}
