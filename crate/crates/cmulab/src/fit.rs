//! Tiny least-squares helpers used by the classifiers and probes.

/// Ordinary least-squares slope of `y` against `x`.
///
/// Returns 0 for fewer than two points or a degenerate (constant) abscissa.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Relative spread `(max - min) / max` over a slice of positive values.
///
/// Returns +inf when the slice contains a nonpositive value (so that callers
/// treating "small spread" as a plateau never mistake a sign flip or a zero
/// for one), and 0 for slices with fewer than two entries.
pub fn relative_variation(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in values {
        if v <= 0.0 {
            return f64::INFINITY;
        }
        min = min.min(v);
        max = max.max(v);
    }
    (max - min) / max
}
