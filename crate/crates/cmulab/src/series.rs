//! Truncated power series and the averaging operator acting on them.
//!
//! A `PowerSeries` holds real coefficients `a_0 ..= a_N` of
//! `f(z) = sum_k a_k z^k`. The operator associated with a measure `mu` maps
//!
//! ```text
//!     f  |->  sum_n ( mu_n * (a_0 + ... + a_n) ) z^n,
//! ```
//!
//! i.e. coefficient `b_n = mu_n * S_n` with `S_n` the `n`-th partial sum of
//! the coefficients and `mu_n` the `n`-th moment of `mu`. Two independent
//! implementations are provided: the O(N) prefix-sum form used everywhere,
//! and an O(N^2) lower-triangular matrix product (`row n` constant equal to
//! `mu_n`) kept as a cross-checking oracle for moderate sizes.
//!
//! The text exchange format is a header line `# truncation N` followed by
//! the `N + 1` coefficients, one per line.

use num_complex::Complex64;

use crate::kahan::KahanSum;
use crate::measure::MeasureSpec;
use crate::{Error, Result};

/// Largest truncation accepted by the quadratic matrix oracle.
pub const MATRIX_ORACLE_MAX: usize = 4096;

/// A truncated power series with real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coefficients: Vec<f64>,
}

impl PowerSeries {
    /// Wraps a nonempty, all-finite coefficient vector `a_0 ..= a_N`.
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidSeries(
                "coefficient list must be nonempty".into(),
            ));
        }
        if let Some((k, bad)) = coefficients
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_finite())
        {
            return Err(Error::InvalidSeries(format!(
                "coefficient a_{k} must be finite, got {bad}"
            )));
        }
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Truncation order `N` (highest retained index).
    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Partial sums `S_n = a_0 + ... + a_n`, compensated.
    pub fn partial_sums(&self) -> Vec<f64> {
        let mut acc = KahanSum::new();
        self.coefficients
            .iter()
            .map(|&a| {
                acc.add(a);
                acc.value()
            })
            .collect()
    }

    /// Termwise derivative; the derivative of a constant is the zero series.
    pub fn derivative(&self) -> PowerSeries {
        if self.coefficients.len() == 1 {
            return PowerSeries {
                coefficients: vec![0.0],
            };
        }
        PowerSeries {
            coefficients: self
                .coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| k as f64 * a)
                .collect(),
        }
    }

    /// Evaluates the truncated series at `z = re + i im`, `|z| < 1`, by
    /// Horner's scheme; returns `(Re f(z), Im f(z))`.
    pub fn evaluate(&self, re: f64, im: f64) -> Result<(f64, f64)> {
        if !(re.is_finite() && im.is_finite()) || re * re + im * im >= 1.0 {
            return Err(Error::Domain(format!(
                "evaluation point must satisfy |z| < 1, got z = {re} + {im}i"
            )));
        }
        let z = Complex64::new(re, im);
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coefficients.iter().rev() {
            acc = acc * z + a;
        }
        Ok((acc.re, acc.im))
    }

    /// Applies the averaging operator of `measure`: `b_n = mu_n * S_n`.
    pub fn cesaro_apply(&self, measure: &MeasureSpec) -> Result<PowerSeries> {
        let moments = measure.moment_sequence(self.truncation())?;
        Ok(self.cesaro_apply_with_moments(&moments))
    }

    /// Prefix-sum application against precomputed moments (callers that
    /// evaluate many truncations of the same measure slice one sequence).
    pub(crate) fn cesaro_apply_with_moments(&self, moments: &[f64]) -> PowerSeries {
        assert!(
            moments.len() > self.truncation(),
            "need moments up to the truncation order"
        );
        let coefficients = self
            .partial_sums()
            .iter()
            .zip(moments)
            .map(|(s, mu)| mu * s)
            .collect();
        PowerSeries { coefficients }
    }

    /// Matrix-oracle application: row `n` of the lower-triangular operator
    /// matrix is `(mu_n, ..., mu_n, 0, ...)`, summed explicitly per row.
    ///
    /// Quadratic in the truncation and guarded accordingly; exists to
    /// cross-check `cesaro_apply`, not to replace it.
    pub fn cesaro_matrix_apply(&self, measure: &MeasureSpec) -> Result<PowerSeries> {
        let n = self.truncation();
        if n > MATRIX_ORACLE_MAX {
            return Err(Error::SizeGuard {
                n,
                max: MATRIX_ORACLE_MAX,
            });
        }
        let moments = measure.moment_sequence(n)?;
        let coefficients = (0..=n)
            .map(|row| {
                let mut acc = KahanSum::new();
                for &a in &self.coefficients[..=row] {
                    acc.add(moments[row] * a);
                }
                acc.value()
            })
            .collect();
        Ok(PowerSeries { coefficients })
    }

    /// Renders the text exchange format (`# truncation N`, then one
    /// coefficient per line, shortest round-trip decimal).
    pub fn to_text(&self) -> String {
        let mut out = format!("# truncation {}\n", self.truncation());
        for a in &self.coefficients {
            out.push_str(&format!("{a}\n"));
        }
        out
    }

    /// Parses the text exchange format produced by `to_text`.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidSeries("input is empty".into()))?;
        let n: usize = header
            .strip_prefix("# truncation")
            .map(str::trim)
            .and_then(|rest| rest.parse().ok())
            .ok_or_else(|| {
                Error::InvalidSeries(format!(
                    "first line must be `# truncation N`, got `{header}`"
                ))
            })?;
        let mut coefficients = Vec::with_capacity(n + 1);
        for (k, line) in lines.enumerate() {
            let value: f64 = line.parse().map_err(|_| {
                Error::InvalidSeries(format!("coefficient a_{k} is not a number: `{line}`"))
            })?;
            coefficients.push(value);
        }
        if coefficients.len() != n + 1 {
            return Err(Error::InvalidSeries(format!(
                "header promises {} coefficients, found {}",
                n + 1,
                coefficients.len()
            )));
        }
        Self::new(coefficients)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_sums_of_ones_count_terms() {
        let f = PowerSeries::new(vec![1.0; 8]).unwrap();
        let sums = f.partial_sums();
        for (n, s) in sums.iter().enumerate() {
            assert_eq!(*s, (n + 1) as f64);
        }
    }

    #[test]
    fn derivative_shifts_and_scales() {
        let f = PowerSeries::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(f.derivative().coefficients(), &[2.0, 6.0]);
        let c = PowerSeries::new(vec![5.0]).unwrap();
        assert_eq!(c.derivative().coefficients(), &[0.0]);
    }

    #[test]
    fn evaluate_geometric_series() {
        // sum z^k truncated at N = 60 is 1/(1-z) up to |z|^61.
        let f = PowerSeries::new(vec![1.0; 61]).unwrap();
        let (re, im) = f.evaluate(0.5, 0.0).unwrap();
        assert!((re - 2.0).abs() < 1e-15);
        assert_eq!(im, 0.0);
        // z = i/2: 1/(1 - i/2) = 0.8 + 0.4 i.
        let (re, im) = f.evaluate(0.0, 0.5).unwrap();
        assert!((re - 0.8).abs() < 1e-15);
        assert!((im - 0.4).abs() < 1e-15);
    }

    #[test]
    fn evaluate_rejects_points_outside_disk() {
        let f = PowerSeries::new(vec![1.0]).unwrap();
        assert!(f.evaluate(1.0, 0.0).is_err());
        assert!(f.evaluate(0.8, 0.7).is_err());
        assert!(f.evaluate(0.9, 0.0).is_ok());
    }

    #[test]
    fn lebesgue_turns_geometric_into_itself() {
        // S_n = n + 1 and mu_n = 1/(n+1), so every output coefficient is 1.
        let f = PowerSeries::new(vec![1.0; 32]).unwrap();
        let g = f.cesaro_apply(&MeasureSpec::lebesgue()).unwrap();
        for &b in g.coefficients() {
            assert_eq!(b, 1.0);
        }
    }

    #[test]
    fn point_mass_at_origin_keeps_only_constant_term() {
        let m = MeasureSpec::point_mass(0.0, 2.0).unwrap();
        let f = PowerSeries::new(vec![3.0, 1.0, 4.0, 1.0]).unwrap();
        let g = f.cesaro_apply(&m).unwrap();
        assert_eq!(g.coefficients(), &[6.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn matrix_oracle_matches_prefix_sums() {
        let m = MeasureSpec::power_log_tail(1.0, 1.0, 1.0).unwrap();
        // Deterministic sign-varying coefficients.
        let coeffs: Vec<f64> = (0..=512)
            .map(|k| ((k * 2654435761u64 % 1000) as f64 / 500.0) - 1.0)
            .collect();
        let f = PowerSeries::new(coeffs).unwrap();
        let fast = f.cesaro_apply(&m).unwrap();
        let oracle = f.cesaro_matrix_apply(&m).unwrap();
        for (n, (a, b)) in fast
            .coefficients()
            .iter()
            .zip(oracle.coefficients())
            .enumerate()
        {
            assert!((a - b).abs() < 1e-10, "n = {n}: {a} vs {b}");
        }
    }

    #[test]
    fn matrix_oracle_is_size_guarded() {
        let f = PowerSeries::new(vec![0.0; MATRIX_ORACLE_MAX + 2]).unwrap();
        let err = f.cesaro_matrix_apply(&MeasureSpec::lebesgue()).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { .. }));
    }

    #[test]
    fn text_format_round_trips() {
        let f = PowerSeries::new(vec![1.0, -0.5, 0.3333333333333333, 1e-300]).unwrap();
        let text = f.to_text();
        assert!(text.starts_with("# truncation 3\n"));
        let g = PowerSeries::from_text(&text).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn text_parse_rejects_malformed_input() {
        assert!(PowerSeries::from_text("").is_err());
        assert!(PowerSeries::from_text("1.0\n2.0\n").is_err());
        assert!(PowerSeries::from_text("# truncation 2\n1.0\n2.0\n").is_err());
        assert!(PowerSeries::from_text("# truncation 1\n1.0\nxyz\n").is_err());
        let ok = PowerSeries::from_text("# truncation 1\n 1.0 \n\n2.5\n").unwrap();
        assert_eq!(ok.coefficients(), &[1.0, 2.5]);
    }

    #[test]
    fn construction_rejects_bad_coefficients() {
        assert!(PowerSeries::new(vec![]).is_err());
        assert!(PowerSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(PowerSeries::new(vec![f64::INFINITY]).is_err());
    }
}
