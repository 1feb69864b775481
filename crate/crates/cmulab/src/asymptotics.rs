//! Growth regimes of the endpoint-weighted kernel integral
//!
//! ```text
//!     I(delta, c, k; r) = int_0^1 (1-t)^delta log^k(e/(1-t))
//!                                  / (1 - t r)^{1 + delta + c} dt .
//! ```
//!
//! As `r -> 1` the integral settles into one of four regimes decided by
//! `(c, k)` alone: it converges (`c < 0`, or `c = 0` with `k < -1`), grows
//! like an iterated logarithm (`c = 0`, `k = -1`), like a power of the
//! logarithm (`c = 0`, `k > -1`), or like `(1-r)^{-c} log^k(e/(1-r))`
//! (`c > 0`). `regime_scan` samples the integral on the dyadic radii
//! `r_j = 1 - 2^{-j}` and reports the ratio against the predicted shape,
//! flagging whether the ratios have stabilized at the scanned depth.
//!
//! Numerically the integral is split at `u = 1 - t = 1 - r`: the endpoint
//! piece `u < 1-r` is integrated in `v = -log u`, which turns the algebraic
//! and logarithmic endpoint weights into smooth exponential decay, and the
//! remaining piece is integrated directly with split points on the
//! geometric progression `u = (1-r) 2^m`, one per scale of the kernel.

use serde::Serialize;

use crate::fit::relative_variation;
use crate::quad;
use crate::{Error, Result};

/// Internal quadrature tolerance for kernel integrals.
const KERNEL_REL_TOL: f64 = 1e-10;
/// Ratio variation over the last scan samples below which the scan is
/// declared stabilized.
pub const SCAN_PLATEAU_VARIATION: f64 = 0.15;
/// Shallowest radius level included in a scan.
pub const SCAN_START_LEVEL: usize = 5;
/// Minimum scan depth.
pub const MIN_SCAN_DEPTH: usize = 10;

/// Limiting behavior of the kernel integral as `r -> 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Converges to a finite limit.
    Constant,
    /// Grows like `log log` of `1/(1-r)`.
    LogLog,
    /// Grows like `log^{k+1}(e/(1-r))`.
    LogPower,
    /// Grows like `(1-r)^{-c} log^k(e/(1-r))`.
    PowerLog,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            Regime::Constant => "constant",
            Regime::LogLog => "log_log",
            Regime::LogPower => "log_power",
            Regime::PowerLog => "power_log",
        };
        f.write_str(token)
    }
}

/// Regime dispatch on `(c, k)`; total and mutually exclusive.
pub fn regime_of(c: f64, k: f64) -> Regime {
    if c > 0.0 {
        Regime::PowerLog
    } else if c < 0.0 {
        Regime::Constant
    } else if k > -1.0 {
        Regime::LogPower
    } else if k == -1.0 {
        Regime::LogLog
    } else {
        Regime::Constant
    }
}

/// One scanned radius.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanSample {
    pub j: usize,
    pub r: f64,
    pub integral: f64,
    /// Predicted growth shape of the active regime, normalized to O(1)
    /// ratios.
    pub predicted: f64,
    pub ratio: f64,
}

/// Result of scanning the kernel integral along dyadic radii.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticScan {
    pub delta: f64,
    pub c: f64,
    pub k: f64,
    pub regime: Regime,
    pub samples: Vec<ScanSample>,
    /// True when the trailing ratios vary by less than the plateau
    /// threshold.
    pub stabilized: bool,
}

fn check_parameters(delta: f64, c: f64, k: f64) -> Result<()> {
    if !delta.is_finite() || delta <= -1.0 {
        return Err(Error::Domain(format!(
            "endpoint exponent must satisfy delta > -1, got {delta}"
        )));
    }
    if !c.is_finite() || !k.is_finite() {
        return Err(Error::Domain(format!(
            "kernel exponents must be finite, got c = {c}, k = {k}"
        )));
    }
    Ok(())
}

/// Evaluates the kernel integral at one radius `r in [0, 1)`.
pub fn kernel_integral(delta: f64, c: f64, k: f64, r: f64) -> Result<f64> {
    check_parameters(delta, c, k)?;
    if !r.is_finite() || !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!(
            "kernel radius must satisfy 0 <= r < 1, got {r}"
        )));
    }
    let d = 1.0 - r;
    let power = 1.0 + delta + c;

    // Endpoint piece u in (0, d), in v = -log u: the kernel is essentially
    // frozen at d there while the endpoint weights decay like e^{-(1+delta)v}.
    let v1 = -d.ln();
    let v_max = v1 + (50.0 + 10.0 * k.max(0.0)) / (delta + 1.0);
    let endpoint = |v: f64| {
        let u = (-v).exp();
        (-(delta + 1.0) * v).exp() * (1.0 + v).powf(k) / (d + r * u).powf(power)
    };
    let a_piece = quad::adaptive(
        &endpoint,
        v1,
        v_max,
        &[v1 + 2.0, v1 + 6.0],
        KERNEL_REL_TOL,
        quad::DEFAULT_MAX_SEGMENTS,
    )
    .into_value(KERNEL_REL_TOL)?;

    // Bulk piece u in (d, 1), one geometric seed per scale of the kernel.
    let b_piece = if d < 1.0 {
        let mut seeds = Vec::new();
        let mut edge = 2.0 * d;
        while edge < 1.0 {
            seeds.push(edge);
            edge *= 2.0;
        }
        let bulk = |u: f64| u.powf(delta) * (1.0 - u.ln()).powf(k) / (d + r * u).powf(power);
        quad::adaptive(
            &bulk,
            d,
            1.0,
            &seeds,
            KERNEL_REL_TOL,
            quad::DEFAULT_MAX_SEGMENTS,
        )
        .into_value(KERNEL_REL_TOL)?
    } else {
        0.0
    };

    Ok(a_piece + b_piece)
}

/// Predicted growth shape at level `j` (with `L = log(e/(1-r_j))`).
fn predicted_shape(regime: Regime, c: f64, k: f64, j: usize) -> f64 {
    let l = 1.0 + j as f64 * std::f64::consts::LN_2;
    match regime {
        Regime::Constant => 1.0,
        Regime::LogLog => (1.0 + l).ln(),
        Regime::LogPower => l.powf(k + 1.0),
        Regime::PowerLog => 2f64.powf(j as f64 * c) * l.powf(k),
    }
}

/// Scans the kernel integral on `r_j = 1 - 2^{-j}`, `j = 5 ..= depth`, and
/// compares against the predicted regime shape.
pub fn regime_scan(delta: f64, c: f64, k: f64, depth: usize) -> Result<AsymptoticScan> {
    check_parameters(delta, c, k)?;
    if depth < MIN_SCAN_DEPTH {
        return Err(Error::Domain(format!(
            "scan depth must be at least {MIN_SCAN_DEPTH}, got {depth}"
        )));
    }
    let regime = regime_of(c, k);
    let mut samples = Vec::with_capacity(depth - SCAN_START_LEVEL + 1);
    for j in SCAN_START_LEVEL..=depth {
        let u = 0.5f64.powi(j as i32);
        let r = 1.0 - u;
        let integral = kernel_integral(delta, c, k, r)?;
        let predicted = predicted_shape(regime, c, k, j);
        samples.push(ScanSample {
            j,
            r,
            integral,
            predicted,
            ratio: integral / predicted,
        });
    }
    let tail: Vec<f64> = samples
        .iter()
        .rev()
        .take(3)
        .map(|sample| sample.ratio)
        .collect();
    let stabilized = relative_variation(&tail) < SCAN_PLATEAU_VARIATION;
    Ok(AsymptoticScan {
        delta,
        c,
        k,
        regime,
        samples,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs()
    }

    #[test]
    fn closed_form_anchors() {
        // int_0^1 (1-tr)^{-2} dt = 1/(1-r).
        assert!(rel_err(kernel_integral(0.0, 1.0, 0.0, 0.9).unwrap(), 10.0) < 1e-9);
        // int_0^1 (1-tr)^{-1} dt = -log(1-r)/r.
        let want = std::f64::consts::LN_2 / 0.5;
        assert!(rel_err(kernel_integral(0.0, 0.0, 0.0, 0.5).unwrap(), want) < 1e-9);
        // int_0^1 (1-t)(1-tr)^{-2} dt = -log(1-r)/r^2 - 1/r at r = 1/2.
        let want = 4.0 * std::f64::consts::LN_2 - 2.0;
        assert!(rel_err(kernel_integral(1.0, 0.0, 0.0, 0.5).unwrap(), want) < 1e-9);
    }

    #[test]
    fn zero_radius_reduces_to_endpoint_weights() {
        // int_0^1 log(e/(1-t)) dt = 2.
        assert!(rel_err(kernel_integral(0.0, 0.0, 1.0, 0.0).unwrap(), 2.0) < 1e-9);
        // int_0^1 (1-t)^{3/2} dt = 0.4.
        assert!(rel_err(kernel_integral(1.5, 0.0, 0.0, 0.0).unwrap(), 0.4) < 1e-9);
    }

    #[test]
    fn deep_radius_against_closed_form() {
        let r = 1.0 - 0.5f64.powi(25);
        let got = kernel_integral(0.0, 1.0, 0.0, r).unwrap();
        assert!(rel_err(got, 0.5f64.powi(-25)) < 1e-8, "got {got}");
    }

    #[test]
    fn regime_dispatch_is_total() {
        assert_eq!(regime_of(-0.5, 3.0), Regime::Constant);
        assert_eq!(regime_of(0.0, -2.0), Regime::Constant);
        assert_eq!(regime_of(0.0, -1.0), Regime::LogLog);
        assert_eq!(regime_of(0.0, -0.5), Regime::LogPower);
        assert_eq!(regime_of(0.0, 0.0), Regime::LogPower);
        assert_eq!(regime_of(0.5, -3.0), Regime::PowerLog);
    }

    #[test]
    fn power_regime_ratio_is_exactly_flat() {
        // I = (1-r)^{-1} exactly, so every ratio is 1.
        let scan = regime_scan(0.0, 1.0, 0.0, 20).unwrap();
        assert_eq!(scan.regime, Regime::PowerLog);
        assert!(scan.stabilized);
        for sample in &scan.samples {
            assert!((sample.ratio - 1.0).abs() < 1e-8, "j = {}", sample.j);
        }
    }

    #[test]
    fn log_regime_ratio_stabilizes_near_one() {
        let scan = regime_scan(0.0, 0.0, 0.0, 20).unwrap();
        assert_eq!(scan.regime, Regime::LogPower);
        assert!(scan.stabilized);
        let last = scan.samples.last().unwrap();
        assert!((last.ratio - 1.0).abs() < 0.1, "ratio {}", last.ratio);
    }

    #[test]
    fn constant_regime_plateaus_at_the_limit() {
        // c = -1/2: I = 2(1 - sqrt(1-r))/r -> 2, approached at rate sqrt(1-r).
        let scan = regime_scan(0.0, -0.5, 0.0, 15).unwrap();
        assert_eq!(scan.regime, Regime::Constant);
        assert!(scan.stabilized);
        let last = scan.samples.last().unwrap();
        assert!((last.ratio - 2.0).abs() < 0.02, "ratio {}", last.ratio);
    }

    #[test]
    fn log_log_regime_grows_but_slowly() {
        let scan = regime_scan(0.0, 0.0, -1.0, 20).unwrap();
        assert_eq!(scan.regime, Regime::LogLog);
        let ratios: Vec<f64> = scan.samples.iter().map(|s| s.ratio).collect();
        for pair in scan.samples.windows(2) {
            assert!(pair[1].integral > pair[0].integral);
        }
        let last = *ratios.last().unwrap();
        assert!(last > 0.3 && last < 3.0, "ratio {last}");
    }

    #[test]
    fn domain_errors() {
        assert!(kernel_integral(-1.0, 0.0, 0.0, 0.5).is_err());
        assert!(kernel_integral(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(regime_scan(0.0, 0.0, 0.0, 5).is_err());
    }
}
