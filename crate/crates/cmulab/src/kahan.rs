//! Compensated (Kahan) summation.

/// Running compensated sum. The classic trick: carry the rounding error of
/// each addition in a separate compensation term so that long prefix sums
/// stay accurate to O(eps) instead of O(n * eps).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
