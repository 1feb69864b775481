//! Deterministic test-function families with known seminorm behavior.
//!
//! * `make_geometric` — `1/(1-z)`, coefficients all ones.
//! * `make_log` — `log(1/(1-z))`, coefficients `1/k`.
//! * `make_power_alpha` — `sum k^{alpha-2} z^k`, the classical function
//!   lying in the `alpha`-Bloch space with a plateauing coefficient
//!   criterion.
//! * `make_fa` — `(1-a) (1-az)^{-alpha}`, the normalized family whose
//!   `alpha`-seminorms stay in a fixed band as `a -> 1`; binomial
//!   coefficients come from log-gamma differences.
//! * `make_log_squared` — `log^2(2/(1-az)) / log(2/(1-a))`, the normalized
//!   family used at `alpha = 1` where powers of `1/(1-az)` lose their
//!   discriminating power.
//! * `make_basis` — the monomial `z^j`.
//!
//! The squared-log coefficients satisfy the exact first-order recurrence
//! `(n+1) f_{n+1} = a n f_n + 2 a g_n` (from `(1-az) (g^2)' = 2a g` with
//! `g = log(2/(1-az))`), which is what the builder uses; the definitional
//! self-convolution is kept in the tests as an independent oracle.
//!
//! Families indexed by a radius `a` are only honest when the truncation
//! resolves the scale `1/(1-a)`; `min_truncation` returns the smallest
//! order accepted for ladder use.

use crate::series::PowerSeries;
use crate::{Error, Result};

/// Smallest truncation order considered honest for radius parameter `a`:
/// `ceil(64 / (1-a))` keeps the honest evaluation grid of the seminorm
/// deeper than the scale `1/(1-a)` the family lives on.
pub fn min_truncation(a: f64) -> usize {
    (64.0 / (1.0 - a)).ceil() as usize
}

fn check_radius(a: f64) -> Result<()> {
    if !a.is_finite() || !(0.0 < a && a < 1.0) {
        return Err(Error::Domain(format!(
            "family radius must satisfy 0 < a < 1, got {a}"
        )));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "family exponent must satisfy alpha > 0, got {alpha}"
        )));
    }
    Ok(())
}

/// `1/(1-z)` truncated at order `n`.
pub fn make_geometric(n: usize) -> PowerSeries {
    PowerSeries::new(vec![1.0; n + 1]).expect("constant ones are a valid series")
}

/// `log(1/(1-z))` truncated at order `n`.
pub fn make_log(n: usize) -> PowerSeries {
    let mut c = vec![0.0];
    c.extend((1..=n).map(|k| 1.0 / k as f64));
    PowerSeries::new(c).expect("harmonic coefficients are a valid series")
}

/// `sum_{k>=1} k^{alpha-2} z^k` truncated at order `n`.
pub fn make_power_alpha(alpha: f64, n: usize) -> Result<PowerSeries> {
    check_alpha(alpha)?;
    let mut c = vec![0.0];
    c.extend((1..=n).map(|k| (k as f64).powf(alpha - 2.0)));
    PowerSeries::new(c)
}

/// `(1-a) (1-az)^{-alpha}` truncated at order `n`.
pub fn make_fa(alpha: f64, a: f64, n: usize) -> Result<PowerSeries> {
    check_alpha(alpha)?;
    check_radius(a)?;
    let lg_alpha = libm::lgamma(alpha);
    let ln_a = a.ln();
    let c = (0..=n)
        .map(|k| {
            let kf = k as f64;
            (1.0 - a)
                * (kf * ln_a + libm::lgamma(kf + alpha) - lg_alpha - libm::lgamma(kf + 1.0)).exp()
        })
        .collect();
    PowerSeries::new(c)
}

/// `log^2(2/(1-az)) / log(2/(1-a))` truncated at order `n`.
pub fn make_log_squared(a: f64, n: usize) -> Result<PowerSeries> {
    check_radius(a)?;
    let scale = 1.0 / (2.0 / (1.0 - a)).ln();
    let ln2 = std::f64::consts::LN_2;
    let mut c = Vec::with_capacity(n + 1);
    // f = g^2 with g_0 = log 2, g_k = a^k / k; the recurrence below is the
    // coefficient form of (1 - az) f' = 2 a g.
    let mut f = ln2 * ln2;
    let mut a_pow = 1.0; // a^n
    c.push(scale * f);
    for m in 1..=n {
        let nf = (m - 1) as f64;
        let g = if m == 1 { ln2 } else { a_pow / nf };
        f = (a * nf * f + 2.0 * a * g) / (nf + 1.0);
        a_pow *= a;
        c.push(scale * f);
    }
    PowerSeries::new(c)
}

/// The monomial `z^index`, truncated at order `n >= index`.
pub fn make_basis(index: usize, n: usize) -> Result<PowerSeries> {
    if n < index {
        return Err(Error::Domain(format!(
            "basis monomial z^{index} needs truncation order >= {index}, got {n}"
        )));
    }
    let mut c = vec![0.0; n + 1];
    c[index] = 1.0;
    PowerSeries::new(c)
}

/// A named builtin family, parsed from the `builtin:` namespace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFamily {
    Geometric,
    Log,
    PowerAlpha { alpha: f64 },
    Fa { alpha: f64, a: f64 },
    LogSquared { a: f64 },
    Basis { index: usize },
}

impl TestFamily {
    /// Parses `builtin:geometric`, `builtin:log`,
    /// `builtin:power_alpha:<alpha>`, `builtin:fa:<alpha>:<a>`,
    /// `builtin:log_squared:<a>` or `builtin:basis:<j>`.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.strip_prefix("builtin:").ok_or_else(|| {
            Error::Domain(format!("builtin family must start with `builtin:`, got `{text}`"))
        })?;
        let mut parts = body.split(':');
        let name = parts.next().unwrap_or("");
        let args: Vec<&str> = parts.collect();
        let float = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::Domain(format!("`{s}` is not a number in `{text}`")))
        };
        let family = match (name, args.as_slice()) {
            ("geometric", []) => TestFamily::Geometric,
            ("log", []) => TestFamily::Log,
            ("power_alpha", [alpha]) => TestFamily::PowerAlpha {
                alpha: float(alpha)?,
            },
            ("fa", [alpha, a]) => TestFamily::Fa {
                alpha: float(alpha)?,
                a: float(a)?,
            },
            ("log_squared", [a]) => TestFamily::LogSquared { a: float(a)? },
            ("basis", [index]) => TestFamily::Basis {
                index: index.parse().map_err(|_| {
                    Error::Domain(format!("`{index}` is not a valid index in `{text}`"))
                })?,
            },
            _ => {
                return Err(Error::Domain(format!(
                    "unknown builtin family `{body}`; expected geometric, log, \
                     power_alpha:<alpha>, fa:<alpha>:<a>, log_squared:<a> or basis:<j>"
                )))
            }
        };
        // Surface parameter problems at parse time, not first use.
        family.generate(family.min_order().max(1))?;
        Ok(family)
    }

    /// Smallest truncation order the family should be generated at.
    pub fn min_order(&self) -> usize {
        match self {
            TestFamily::Geometric | TestFamily::Log | TestFamily::PowerAlpha { .. } => 1,
            TestFamily::Fa { a, .. } | TestFamily::LogSquared { a } => min_truncation(*a),
            TestFamily::Basis { index } => *index,
        }
    }

    /// Builds the family at truncation order `n`.
    pub fn generate(&self, n: usize) -> Result<PowerSeries> {
        match *self {
            TestFamily::Geometric => Ok(make_geometric(n)),
            TestFamily::Log => Ok(make_log(n)),
            TestFamily::PowerAlpha { alpha } => make_power_alpha(alpha, n),
            TestFamily::Fa { alpha, a } => make_fa(alpha, a, n),
            TestFamily::LogSquared { a } => make_log_squared(a, n),
            TestFamily::Basis { index } => make_basis(index, n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::bloch_seminorm;

    #[test]
    fn simple_family_shapes() {
        assert_eq!(make_geometric(3).coefficients(), &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(make_log(3).coefficients(), &[0.0, 1.0, 0.5, 1.0 / 3.0]);
        assert_eq!(
            make_power_alpha(2.0, 3).unwrap().coefficients(),
            &[0.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(
            make_basis(2, 3).unwrap().coefficients(),
            &[0.0, 0.0, 1.0, 0.0]
        );
        assert!(make_basis(4, 3).is_err());
    }

    #[test]
    fn power_alpha_decays_for_small_alpha() {
        let f = make_power_alpha(1.0, 4).unwrap();
        assert_eq!(f.coefficients()[2], 0.5);
        assert_eq!(f.coefficients()[4], 0.25);
    }

    #[test]
    fn fa_at_alpha_one_is_scaled_geometric() {
        // (1-a)/(1-az): c_k = (1-a) a^k exactly.
        let f = make_fa(1.0, 0.75, 64).unwrap();
        let mut want = 0.25;
        for (k, &c) in f.coefficients().iter().enumerate() {
            assert!(
                (c - want).abs() < 1e-13 * want,
                "k = {k}: {c} vs {want}"
            );
            want *= 0.75;
        }
    }

    #[test]
    fn fa_binomial_coefficients_at_alpha_two() {
        // (1-az)^{-2}: c_k = (1-a)(k+1) a^k.
        let f = make_fa(2.0, 0.5, 16).unwrap();
        for (k, &c) in f.coefficients().iter().enumerate() {
            let want = 0.5 * (k as f64 + 1.0) * 0.5f64.powi(k as i32);
            assert!((c - want).abs() < 1e-13 * want.max(1e-10));
        }
    }

    #[test]
    fn fa_seminorms_stay_in_a_band_as_a_rises() {
        // (1-a)(1-az)^{-alpha} has alpha-seminorm ~ alpha a/(1+a) at r = a.
        let alpha = 0.5;
        let mut values = Vec::new();
        for j in [4, 6, 8] {
            let a = 1.0 - 0.5f64.powi(j);
            let f = make_fa(alpha, a, min_truncation(a)).unwrap();
            values.push(bloch_seminorm(&f, alpha, 40, 1).unwrap().value);
        }
        for v in &values {
            assert!(*v > 0.15 && *v < 0.45, "seminorm {v}");
        }
        let spread = values.iter().cloned().fold(f64::MIN, f64::max)
            / values.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1.5, "seminorm spread {spread}");
    }

    #[test]
    fn log_squared_recurrence_matches_definitional_convolution() {
        let a = 0.9;
        let n = 2048;
        let f = make_log_squared(a, n).unwrap();
        // Oracle: square g = log(2/(1-az)) by direct self-convolution.
        let ln2 = std::f64::consts::LN_2;
        let mut g = vec![ln2];
        let mut a_pow = 1.0;
        for k in 1..=n {
            a_pow *= a;
            g.push(a_pow / k as f64);
        }
        let scale = 1.0 / (2.0 / (1.0 - a)).ln();
        for m in [0usize, 1, 2, 3, 10, 100, 1000, 2048] {
            let mut conv = 0.0;
            for i in 0..=m {
                conv += g[i] * g[m - i];
            }
            let want = scale * conv;
            let got = f.coefficients()[m];
            assert!(
                (got - want).abs() < 1e-12 * want.abs().max(1e-12),
                "m = {m}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn log_squared_seminorms_stay_in_a_band_as_a_rises() {
        let mut values = Vec::new();
        for j in [4, 6, 8] {
            let a = 1.0 - 0.5f64.powi(j);
            let f = make_log_squared(a, min_truncation(a)).unwrap();
            values.push(bloch_seminorm(&f, 1.0, 40, 1).unwrap().value);
        }
        for v in &values {
            assert!(*v > 1.0 && *v < 4.0, "seminorm {v}");
        }
    }

    #[test]
    fn builtin_parser_round_trips() {
        assert_eq!(
            TestFamily::parse("builtin:geometric").unwrap(),
            TestFamily::Geometric
        );
        assert_eq!(TestFamily::parse("builtin:log").unwrap(), TestFamily::Log);
        assert_eq!(
            TestFamily::parse("builtin:power_alpha:0.5").unwrap(),
            TestFamily::PowerAlpha { alpha: 0.5 }
        );
        assert_eq!(
            TestFamily::parse("builtin:fa:1.5:0.9").unwrap(),
            TestFamily::Fa { alpha: 1.5, a: 0.9 }
        );
        assert_eq!(
            TestFamily::parse("builtin:log_squared:0.96875").unwrap(),
            TestFamily::LogSquared { a: 0.96875 }
        );
        assert_eq!(
            TestFamily::parse("builtin:basis:7").unwrap(),
            TestFamily::Basis { index: 7 }
        );
    }

    #[test]
    fn builtin_parser_rejects_malformed_names() {
        assert!(TestFamily::parse("geometric").is_err());
        assert!(TestFamily::parse("builtin:gaussian").is_err());
        assert!(TestFamily::parse("builtin:fa:0.5").is_err());
        assert!(TestFamily::parse("builtin:fa:x:0.5").is_err());
        assert!(TestFamily::parse("builtin:fa:0.5:1.5").is_err());
        assert!(TestFamily::parse("builtin:log_squared:0").is_err());
    }

    #[test]
    fn min_truncation_matches_ladder_geometry() {
        assert_eq!(min_truncation(1.0 - 0.5f64.powi(4)), 1024);
        assert_eq!(min_truncation(0.5), 128);
        assert_eq!(
            TestFamily::Fa { alpha: 1.0, a: 0.5 }.min_order(),
            128
        );
    }
}
