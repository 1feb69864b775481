//! Finite positive measures on `[0, 1)` and their moment sequences.
//!
//! A measure is a finite sum of components:
//!
//! * `Atomic` — point masses `w_i` at locations `t_i in [0, 1)`,
//! * `Lebesgue` — arc-length on `[0, 1)`,
//! * `PowerLogTail` — the measure whose tail function is
//!   `h(t) = mu([t,1)) = c (1-t)^s log^{-gamma}(e/(1-t))`.
//!
//! Moments `mu_n = int t^n dmu(t)` are nonincreasing in `n`, additive across
//! components, and computed by closed form wherever one exists (atoms,
//! Lebesgue, `PowerLogTail` with `gamma = 0` via log-gamma differences).
//! The remaining case integrates the tail-function identity
//!
//! ```text
//!     mu_n = n * int_0^1 t^{n-1} h(t) dt        (n >= 1),  mu_0 = h(0),
//! ```
//!
//! in the variable `v = -log(1-t)`, which removes the algebraic endpoint
//! singularity: with `t = 1 - e^{-v}` the `PowerLogTail` integrand becomes
//! `n c (1-e^{-v})^{n-1} e^{-(s+1)v} (1+v)^{-gamma}`, an analytic bump of
//! width O(1) near `v = log n`. Single moments use adaptive quadrature
//! seeded at the bump; moment sequences share one composite Kronrod grid
//! across all `n` and update `(1-e^{-v})^{n-1}` by a running product.

use serde::{Deserialize, Serialize};

use crate::quad;
use crate::{Error, Result};

/// Relative tolerance for moment quadrature.
const MOMENT_REL_TOL: f64 = 1e-10;
/// Decay margin past the integrand bump, in units of `v`; the integrand
/// carries a factor `e^{-(s+1)v}` with `s > 0`, so 60 units suppress the
/// truncated tail far below every tolerance used here.
const V_MARGIN: f64 = 60.0;
/// Panel width of the shared composite grid (the integrands are analytic on
/// a strip of half-width > 1 around the real axis, so half-unit panels are
/// already spectrally accurate).
const PANEL_WIDTH: f64 = 0.5;

/// A single point mass.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Atom {
    /// Location in `[0, 1)`.
    pub t: f64,
    /// Weight, strictly positive.
    pub w: f64,
}

/// One summand of a measure.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureComponent {
    /// Finitely many point masses in `[0, 1)`.
    Atomic { atoms: Vec<Atom> },
    /// Lebesgue measure on `[0, 1)`.
    Lebesgue,
    /// Tail function `h(t) = c (1-t)^s log^{-gamma}(e/(1-t))`.
    PowerLogTail { s: f64, gamma: f64, c: f64 },
}

/// A finite positive measure on `[0, 1)`: a nonempty sum of components.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawMeasureSpec")]
pub struct MeasureSpec {
    components: Vec<MeasureComponent>,
}

#[derive(Deserialize)]
struct RawMeasureSpec {
    components: Vec<MeasureComponent>,
}

impl TryFrom<RawMeasureSpec> for MeasureSpec {
    type Error = Error;

    fn try_from(raw: RawMeasureSpec) -> Result<Self> {
        MeasureSpec::new(raw.components)
    }
}

fn validate_component(component: &MeasureComponent) -> Result<()> {
    match component {
        MeasureComponent::Atomic { atoms } => {
            if atoms.is_empty() {
                return Err(Error::InvalidMeasure(
                    "atomic component must contain at least one atom".into(),
                ));
            }
            for atom in atoms {
                if !atom.t.is_finite() || !(0.0..1.0).contains(&atom.t) {
                    return Err(Error::InvalidMeasure(format!(
                        "atom location must satisfy 0 <= t < 1, got t = {}",
                        atom.t
                    )));
                }
                if !atom.w.is_finite() || atom.w <= 0.0 {
                    return Err(Error::InvalidMeasure(format!(
                        "atom weight must be strictly positive and finite, got w = {}",
                        atom.w
                    )));
                }
            }
            Ok(())
        }
        MeasureComponent::Lebesgue => Ok(()),
        MeasureComponent::PowerLogTail { s, gamma, c } => {
            if !s.is_finite() || *s <= 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "power_log_tail requires s > 0, got s = {s}"
                )));
            }
            if !gamma.is_finite() || *gamma < -*s {
                return Err(Error::InvalidMeasure(format!(
                    "power_log_tail requires gamma >= -s (tail must be nonincreasing), \
                     got gamma = {gamma}, s = {s}"
                )));
            }
            if !c.is_finite() || *c <= 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "power_log_tail requires c > 0, got c = {c}"
                )));
            }
            Ok(())
        }
    }
}

/// `log(1 - e^{-v})` for `v > 0`, accurate across both regimes.
fn log1m_exp(v: f64) -> f64 {
    if v < std::f64::consts::LN_2 {
        (-(-v).exp_m1()).ln()
    } else {
        (-(-v).exp()).ln_1p()
    }
}

/// Tail of one component expressed in `u = 1 - t` (exact where `u` is).
fn component_tail_u(component: &MeasureComponent, u: f64) -> f64 {
    match component {
        MeasureComponent::Atomic { atoms } => {
            let t = 1.0 - u;
            atoms
                .iter()
                .filter(|atom| atom.t >= t)
                .map(|atom| atom.w)
                .sum()
        }
        MeasureComponent::Lebesgue => u,
        MeasureComponent::PowerLogTail { s, gamma, c } => {
            // log(e/u) = 1 - ln u >= 1 on (0, 1], so the gamma power is benign.
            let log_term = 1.0 - u.ln();
            c * u.powf(*s) * log_term.powf(-*gamma)
        }
    }
}

impl MeasureSpec {
    /// Builds a measure from components, rejecting anything that is not a
    /// finite positive measure.
    pub fn new(components: Vec<MeasureComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidMeasure(
                "component list must be nonempty".into(),
            ));
        }
        for component in &components {
            validate_component(component)?;
        }
        Ok(Self { components })
    }

    /// Lebesgue measure on `[0, 1)`.
    pub fn lebesgue() -> Self {
        Self {
            components: vec![MeasureComponent::Lebesgue],
        }
    }

    /// A single point mass `w` at `t`.
    pub fn point_mass(t: f64, w: f64) -> Result<Self> {
        Self::new(vec![MeasureComponent::Atomic {
            atoms: vec![Atom { t, w }],
        }])
    }

    /// Point masses from `(t, w)` pairs.
    pub fn atomic(atoms: &[(f64, f64)]) -> Result<Self> {
        Self::new(vec![MeasureComponent::Atomic {
            atoms: atoms.iter().map(|&(t, w)| Atom { t, w }).collect(),
        }])
    }

    /// The measure with tail `c (1-t)^s log^{-gamma}(e/(1-t))`.
    pub fn power_log_tail(s: f64, gamma: f64, c: f64) -> Result<Self> {
        Self::new(vec![MeasureComponent::PowerLogTail { s, gamma, c }])
    }

    pub fn components(&self) -> &[MeasureComponent] {
        &self.components
    }

    /// Parses the JSON exchange format:
    /// `{"components": [{"kind": "lebesgue"}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidMeasure(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure serialization cannot fail")
    }

    /// Tail mass `mu([t, 1))` for `t in [0, 1)`.
    pub fn tail_mass(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || !(0.0..1.0).contains(&t) {
            return Err(Error::Domain(format!(
                "tail_mass requires 0 <= t < 1, got t = {t}"
            )));
        }
        Ok(self.tail_mass_u(1.0 - t))
    }

    /// Tail mass in the variable `u = 1 - t`; exact where `u` is (callers on
    /// dyadic grids pass `u = 2^-j` directly).
    pub(crate) fn tail_mass_u(&self, u: f64) -> f64 {
        self.components
            .iter()
            .map(|component| component_tail_u(component, u))
            .sum()
    }

    /// Total mass `mu_0 = mu([0, 1))`.
    pub fn total_mass(&self) -> f64 {
        self.tail_mass_u(1.0)
    }

    /// The `n`-th moment `mu_n = int t^n dmu`.
    ///
    /// Closed form for atoms, Lebesgue and `PowerLogTail` with `gamma = 0`
    /// (Beta function via log-gamma differences, never Gamma ratios);
    /// adaptive quadrature of the tail identity otherwise.
    pub fn moment(&self, n: usize) -> Result<f64> {
        let mut sum = 0.0;
        for component in &self.components {
            sum += component_moment(component, n)?;
        }
        Ok(sum)
    }

    /// Moments `mu_0 ..= mu_{n_max}` in one pass.
    ///
    /// Matches `moment` on every entry; quadrature-backed components share
    /// one composite node set across all `n` instead of re-integrating.
    pub fn moment_sequence(&self, n_max: usize) -> Result<Vec<f64>> {
        let mut out = vec![0.0; n_max + 1];
        for component in &self.components {
            match component {
                MeasureComponent::Atomic { atoms } => {
                    for atom in atoms {
                        let mut power = 1.0;
                        for slot in out.iter_mut() {
                            *slot += atom.w * power;
                            power *= atom.t;
                        }
                    }
                }
                MeasureComponent::Lebesgue => {
                    for (n, slot) in out.iter_mut().enumerate() {
                        *slot += 1.0 / (n as f64 + 1.0);
                    }
                }
                MeasureComponent::PowerLogTail { s, gamma, c } => {
                    if *gamma == 0.0 {
                        for (n, slot) in out.iter_mut().enumerate() {
                            *slot += beta_moment(*s, *c, n);
                        }
                    } else {
                        power_log_sequence(*s, *gamma, *c, &mut out);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reference moment path: integrates `n t^{n-1} h(t)` for the whole
    /// measure by quadrature, regardless of available closed forms.
    ///
    /// Deliberately independent of the closed-form branches so the two can
    /// be cross-checked; atoms contribute tail jumps which are seeded as
    /// split points.
    pub fn moment_quadrature(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Ok(self.total_mass());
        }
        let nf = n as f64;
        let mut seeds = bump_seeds(nf, 0.0);
        let mut v_max = (nf + 1.0).ln() + V_MARGIN;
        for component in &self.components {
            if let MeasureComponent::Atomic { atoms } = component {
                for atom in atoms {
                    let v_atom = -(-atom.t).ln_1p(); // -log(1 - t)
                    seeds.push(v_atom);
                    v_max = v_max.max(v_atom + 5.0);
                }
            }
        }
        let integrand = |v: f64| {
            let u = (-v).exp();
            nf * ((nf - 1.0) * log1m_exp(v)).exp() * self.tail_mass_u(u) * u
        };
        let result = quad::adaptive(
            &integrand,
            0.0,
            v_max,
            &seeds,
            MOMENT_REL_TOL,
            quad::DEFAULT_MAX_SEGMENTS,
        );
        result.into_value(MOMENT_REL_TOL)
    }
}

/// Seeds bracketing the bump of `(1-e^{-v})^{n-1} e^{-(s+1)v}` at
/// `v = log(n/(s+1))`.
fn bump_seeds(n: f64, s: f64) -> Vec<f64> {
    let v_star = (n / (s + 1.0)).ln().max(0.0);
    [-6.0, -3.0, 0.0, 3.0, 6.0, 12.0]
        .iter()
        .map(|d| v_star + d)
        .filter(|&v| v > 0.0)
        .collect()
}

/// Closed-form `PowerLogTail` moment for `gamma = 0`:
/// `c * Gamma(n+1) Gamma(s+1) / Gamma(n+s+1)`.
fn beta_moment(s: f64, c: f64, n: usize) -> f64 {
    let nf = n as f64;
    c * (libm::lgamma(nf + 1.0) + libm::lgamma(s + 1.0) - libm::lgamma(nf + 1.0 + s)).exp()
}

fn component_moment(component: &MeasureComponent, n: usize) -> Result<f64> {
    match component {
        MeasureComponent::Atomic { atoms } => Ok(atoms
            .iter()
            .map(|atom| atom.w * atom.t.powi(n as i32))
            .sum()),
        MeasureComponent::Lebesgue => Ok(1.0 / (n as f64 + 1.0)),
        MeasureComponent::PowerLogTail { s, gamma, c } => {
            if *gamma == 0.0 {
                Ok(beta_moment(*s, *c, n))
            } else if n == 0 {
                // mu_0 = h(0) = c * log^{-gamma}(e) = c.
                Ok(*c)
            } else {
                power_log_moment(*s, *gamma, *c, n)
            }
        }
    }
}

/// Quadrature moment of a single `PowerLogTail` component (`n >= 1`).
fn power_log_moment(s: f64, gamma: f64, c: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    let v_max = (nf + 1.0).ln() + V_MARGIN;
    let seeds = bump_seeds(nf, s);
    let integrand = |v: f64| {
        nf * c * ((nf - 1.0) * log1m_exp(v) - (s + 1.0) * v).exp() * (1.0 + v).powf(-gamma)
    };
    let result = quad::adaptive(
        &integrand,
        0.0,
        v_max,
        &seeds,
        MOMENT_REL_TOL,
        quad::DEFAULT_MAX_SEGMENTS,
    );
    result.into_value(MOMENT_REL_TOL)
}

/// Shared-node moment sequence for one `PowerLogTail` component with
/// `gamma != 0`, accumulated into `out`.
///
/// One composite Kronrod grid covers `v in [0, log(n_max+1) + margin]`; for
/// each node the factor `(1-e^{-v})^{n-1}` is maintained as a running
/// product across `n`, so the whole sequence costs one multiply-add per
/// node per moment.
fn power_log_sequence(s: f64, gamma: f64, c: f64, out: &mut [f64]) {
    let n_max = out.len() - 1;
    out[0] += c; // mu_0 = h(0)
    if n_max == 0 {
        return;
    }
    let v_max = (n_max as f64 + 1.0).ln() + V_MARGIN;
    let nodes = quad::composite_k15_nodes(0.0, v_max, PANEL_WIDTH);
    // Per node: base = w * c * e^{-(s+1)v} (1+v)^{-gamma}, t-power factor.
    let mut bases: Vec<f64> = Vec::with_capacity(nodes.len());
    let mut powers: Vec<f64> = Vec::with_capacity(nodes.len());
    let mut t_values: Vec<f64> = Vec::with_capacity(nodes.len());
    for &(v, w) in &nodes {
        bases.push(w * c * (-(s + 1.0) * v).exp() * (1.0 + v).powf(-gamma));
        powers.push(1.0);
        t_values.push(-(-v).exp_m1()); // 1 - e^{-v}, full precision
    }
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let mut acc = 0.0;
        for i in 0..bases.len() {
            acc += bases[i] * powers[i];
            powers[i] *= t_values[i];
        }
        *slot += n as f64 * acc;
    }
}
