//! Empirical boundedness and compactness probes for the averaging operator
//! `C` of a measure, acting between weighted Bloch-type spaces
//! `B^alpha -> B^beta`, compared against the tail-condition predictions.
//!
//! The `(alpha, beta)` quadrant splits into four parameter regimes, each
//! with its own required tail condition:
//!
//! * `0 < alpha < 1`, `beta < 2` — plain `(2-beta)`-Carleson; boundedness
//!   and compactness are equivalent here.
//! * `alpha = 1`, `beta <= 2` — logarithmic `(2-beta)`-Carleson (one power
//!   of `log(e/(1-t))`); compact iff the quotient vanishes.
//! * `alpha > 1`, `beta < alpha + 1` — `(alpha+1-beta)`-Carleson; compact
//!   iff vanishing.
//! * everything else — bounded unconditionally.
//!
//! Empirics run two independent sub-probes against a ladder of normalized
//! test functions at radii `a_j = 1 - 2^{-j}` with honest truncations
//! `N_j = 64 * 2^j`: the exponent family `(1-a)(1-az)^{-alpha}` away from
//! `alpha = 1`, and `log^2(2/(1-az)) / log(2/(1-a))` at `alpha = 1`, where
//! powers of `1/(1-az)` lose their discriminating power.
//!
//! * The *ladder* tracks `|C f_j|_beta / |f_j|_alpha`; its slope in bits
//!   per level over the deeper half separates growth from plateau. The
//!   honest truncation cap makes genuinely unbounded cells look like
//!   plateaus rather than growth, so a flat ladder alone never certifies
//!   boundedness of a suspicious cell —
//! * the *obstruction trace* `n^s log^gamma(e n) mu_n` (the moment-side
//!   quantity forced to stay bounded whenever the operator is) carries the
//!   growth signal through the cap. Its slope is fitted over the deeper
//!   half of the dyadic samples, where algebraic transients have died out.
//!
//! A cell is unbounded-like if either sub-probe grows; bounded-like only
//! when no sub-probe objects. Compactness reads the decay shape of the
//! same ladder: ratios that halve from mid-depth to full depth, or decay
//! monotonically by a definite factor, are compact-like; a plateau is
//! noncompact-like. Log-shaped decays lose under halving at desk depths,
//! which is exactly what the monotone slow-decay rule is for. Because a
//! compact operator is in particular bounded, an unbounded-like verdict
//! from the boundedness sub-probes overrides the decay shape: a ladder
//! can decay under the truncation cap (a log factor fading) while the
//! obstruction trace proves the operator unbounded.

use serde::Serialize;

use crate::carleson::{self, CarlesonReport, CarlesonVerdict};
use crate::fit::{least_squares_slope, relative_variation};
use crate::measure::MeasureSpec;
use crate::testfns;
use crate::{Error, Result};

/// Default ladder depth (`a` up to `1 - 2^-10`, truncations up to `2^16`).
pub const DEFAULT_PROBE_DEPTH: usize = 10;
/// Shallowest meaningful ladder.
pub const MIN_PROBE_DEPTH: usize = 4;
/// Deepest supported ladder (truncations up to `64 * 2^14 = 2^20`).
pub const MAX_PROBE_DEPTH: usize = 14;
/// First ladder level; below `j = 2` the families barely differ.
pub const LADDER_START: usize = 2;
/// Truncation order per level is `LADDER_BASE << j`.
pub const LADDER_BASE: usize = 64;
/// Ladder / trace slope at or below which the sub-probe reads bounded.
pub const SLOPE_BOUNDED_MAX: f64 = 0.05;
/// Ladder / trace slope at or above which the sub-probe reads unbounded.
pub const SLOPE_UNBOUNDED_MIN: f64 = 0.15;
/// Compact-like when the deepest ratio is below this fraction of the
/// mid-depth ratio.
pub const COMPACT_HALVING: f64 = 0.5;
/// Compact-like when ratios decay monotonically to below this fraction of
/// the first rung (catches inverse-log decays that never halve at desk
/// depth).
pub const COMPACT_SLOW_DECAY: f64 = 0.65;
/// Tolerated uptick between consecutive rungs in the monotone test.
pub const COMPACT_UPTICK: f64 = 1.02;
/// Relative variation of the deeper half below which the ladder is a
/// plateau.
pub const PLATEAU_VARIATION: f64 = 0.20;
/// Plateaus at or below this ratio level count as vanished, not plateaued.
pub const PLATEAU_FLOOR: f64 = 1e-9;
/// Ratios below this are numerical silence.
pub const NOISE_FLOOR: f64 = 1e-12;
/// Grid depth passed to the seminorm (always deeper than the honest cap).
const SEMINORM_DEPTH: usize = 40;
/// Tail-condition classification depth used for predictions.
pub const PREDICTION_DEPTH: usize = carleson::DEFAULT_DEPTH;

/// Parameter regime of the pair `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterRegime {
    AlphaBelowOne,
    AlphaOne,
    AlphaAboveOne,
    AlwaysBounded,
}

impl std::fmt::Display for ParameterRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            ParameterRegime::AlphaBelowOne => "alpha_below_one",
            ParameterRegime::AlphaOne => "alpha_one",
            ParameterRegime::AlphaAboveOne => "alpha_above_one",
            ParameterRegime::AlwaysBounded => "always_bounded",
        };
        f.write_str(token)
    }
}

/// Tail condition equivalent to boundedness in the active regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RequiredCondition {
    Carleson { s: f64 },
    LogCarleson { s: f64, gamma: f64 },
    Unconditional,
}

/// Predicted boundedness from the tail condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundedPrediction {
    Yes,
    No,
    /// Bounded for free: the regime imposes no condition.
    UnconditionalYes,
    Inconclusive,
}

impl std::fmt::Display for BoundedPrediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            BoundedPrediction::Yes => "yes",
            BoundedPrediction::No => "no",
            BoundedPrediction::UnconditionalYes => "unconditional_yes",
            BoundedPrediction::Inconclusive => "inconclusive",
        };
        f.write_str(token)
    }
}

/// Predicted compactness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompactPrediction {
    Yes,
    No,
    /// The regime's compactness side is not characterized here.
    Unknown,
    Inconclusive,
}

impl std::fmt::Display for CompactPrediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            CompactPrediction::Yes => "yes",
            CompactPrediction::No => "no",
            CompactPrediction::Unknown => "unknown",
            CompactPrediction::Inconclusive => "inconclusive",
        };
        f.write_str(token)
    }
}

/// Empirical verdict of a boundedness sub-probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    BoundedLike,
    UnboundedLike,
    Inconclusive,
}

impl std::fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            ProbeVerdict::BoundedLike => "bounded_like",
            ProbeVerdict::UnboundedLike => "unbounded_like",
            ProbeVerdict::Inconclusive => "inconclusive",
        };
        f.write_str(token)
    }
}

/// Empirical verdict of the compactness probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompactVerdict {
    CompactLike,
    NoncompactLike,
    Inconclusive,
}

impl std::fmt::Display for CompactVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            CompactVerdict::CompactLike => "compact_like",
            CompactVerdict::NoncompactLike => "noncompact_like",
            CompactVerdict::Inconclusive => "inconclusive",
        };
        f.write_str(token)
    }
}

/// Agreement between prediction and empirics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    Inconclusive,
    Contradiction,
}

impl std::fmt::Display for Agreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let token = match self {
            Agreement::Agree => "agree",
            Agreement::Inconclusive => "inconclusive",
            Agreement::Contradiction => "contradiction",
        };
        f.write_str(token)
    }
}

/// One ladder level.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LadderRung {
    pub j: usize,
    pub a: f64,
    pub truncation: usize,
    pub in_norm: f64,
    pub out_norm: f64,
    pub ratio: f64,
}

/// One sample of the moment-side obstruction.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceSample {
    pub n: usize,
    pub moment: f64,
    /// `n^s log^gamma(e n) mu_n` for the regime's condition exponents.
    pub weighted: f64,
}

/// The moment-side obstruction sub-probe.
#[derive(Debug, Clone, Serialize)]
pub struct CoefficientTrace {
    pub s: f64,
    pub gamma: f64,
    pub samples: Vec<TraceSample>,
    /// Fitted slope of `log2(weighted)` per level over the deeper half.
    pub slope: f64,
    pub verdict: ProbeVerdict,
}

/// Tail-condition prediction for a cell.
#[derive(Debug, Clone, Serialize)]
pub struct RegimeVerdict {
    pub alpha: f64,
    pub beta: f64,
    pub regime: ParameterRegime,
    pub condition: RequiredCondition,
    /// Grid classification of the required condition (absent when the
    /// regime is unconditional).
    pub carleson: Option<CarlesonReport>,
    pub bounded: BoundedPrediction,
    pub compact: CompactPrediction,
}

/// Result of the boundedness probe.
#[derive(Debug, Clone, Serialize)]
pub struct BoundednessReport {
    pub alpha: f64,
    pub beta: f64,
    pub family: &'static str,
    pub rungs: Vec<LadderRung>,
    pub ladder_slope: f64,
    pub ladder_verdict: ProbeVerdict,
    pub trace: Option<CoefficientTrace>,
    pub verdict: ProbeVerdict,
    /// Slope of the sub-probe that carried the verdict (the trace when it
    /// ran): the empirical growth exponent per level.
    pub fitted_exponent: f64,
}

/// Result of the compactness probe.
#[derive(Debug, Clone, Serialize)]
pub struct CompactnessReport {
    pub alpha: f64,
    pub beta: f64,
    pub family: &'static str,
    pub rungs: Vec<LadderRung>,
    pub ratio_first: f64,
    pub ratio_mid: f64,
    pub ratio_last: f64,
    /// Boundedness verdict over the same ladder; `UnboundedLike` forces
    /// `NoncompactLike` whatever the decay shape says.
    pub bounded_gate: ProbeVerdict,
    pub verdict: CompactVerdict,
}

/// Prediction, both probes (sharing one ladder), and their agreement.
#[derive(Debug, Clone, Serialize)]
pub struct FullReport {
    pub alpha: f64,
    pub beta: f64,
    pub prediction: RegimeVerdict,
    pub boundedness: BoundednessReport,
    pub compactness: CompactnessReport,
    pub bounded_agreement: Agreement,
    pub compact_agreement: Agreement,
    pub agreement: Agreement,
}

fn check_pair(alpha: f64, beta: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 || !beta.is_finite() || beta <= 0.0 {
        return Err(Error::Domain(format!(
            "space exponents must be positive and finite, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(())
}

/// Regime dispatch with the condition equivalent to boundedness there.
pub fn parameter_regime(alpha: f64, beta: f64) -> Result<(ParameterRegime, RequiredCondition)> {
    check_pair(alpha, beta)?;
    let pair = if alpha < 1.0 {
        if beta < 2.0 {
            (
                ParameterRegime::AlphaBelowOne,
                RequiredCondition::Carleson { s: 2.0 - beta },
            )
        } else {
            (ParameterRegime::AlwaysBounded, RequiredCondition::Unconditional)
        }
    } else if alpha == 1.0 {
        if beta <= 2.0 {
            (
                ParameterRegime::AlphaOne,
                RequiredCondition::LogCarleson {
                    s: 2.0 - beta,
                    gamma: 1.0,
                },
            )
        } else {
            (ParameterRegime::AlwaysBounded, RequiredCondition::Unconditional)
        }
    } else if beta < alpha + 1.0 {
        (
            ParameterRegime::AlphaAboveOne,
            RequiredCondition::Carleson {
                s: alpha + 1.0 - beta,
            },
        )
    } else {
        (ParameterRegime::AlwaysBounded, RequiredCondition::Unconditional)
    };
    Ok(pair)
}

/// Classifies the regime's tail condition and converts the verdict into
/// boundedness / compactness predictions.
pub fn regime_verdict(
    measure: &MeasureSpec,
    alpha: f64,
    beta: f64,
    depth: usize,
) -> Result<RegimeVerdict> {
    let (regime, condition) = parameter_regime(alpha, beta)?;
    let carleson = match condition {
        RequiredCondition::Carleson { s } => Some(carleson::classify(measure, s, 0.0, depth)?),
        RequiredCondition::LogCarleson { s, gamma } => {
            Some(carleson::classify(measure, s, gamma, depth)?)
        }
        RequiredCondition::Unconditional => None,
    };
    let bounded = match &carleson {
        None => BoundedPrediction::UnconditionalYes,
        Some(report) => match report.verdict {
            // Vanishing quotients are in particular bounded.
            CarlesonVerdict::CarlesonBounded | CarlesonVerdict::Vanishing => BoundedPrediction::Yes,
            CarlesonVerdict::NotCarleson => BoundedPrediction::No,
            CarlesonVerdict::Inconclusive => BoundedPrediction::Inconclusive,
        },
    };
    let compact = match regime {
        // Below alpha = 1 boundedness and compactness coincide.
        ParameterRegime::AlphaBelowOne => match bounded {
            BoundedPrediction::Yes => CompactPrediction::Yes,
            BoundedPrediction::No => CompactPrediction::No,
            _ => CompactPrediction::Inconclusive,
        },
        // In the other characterized regimes compactness is the vanishing
        // variant of the same condition.
        ParameterRegime::AlphaOne | ParameterRegime::AlphaAboveOne => {
            match carleson.as_ref().map(|r| r.verdict) {
                Some(CarlesonVerdict::Vanishing) => CompactPrediction::Yes,
                Some(CarlesonVerdict::CarlesonBounded) | Some(CarlesonVerdict::NotCarleson) => {
                    CompactPrediction::No
                }
                _ => CompactPrediction::Inconclusive,
            }
        }
        ParameterRegime::AlwaysBounded => CompactPrediction::Unknown,
    };
    Ok(RegimeVerdict {
        alpha,
        beta,
        regime,
        condition,
        carleson,
        bounded,
        compact,
    })
}

struct LadderData {
    rungs: Vec<LadderRung>,
    moments: Vec<f64>,
    family: &'static str,
}

fn check_depth(depth: usize) -> Result<()> {
    if depth < MIN_PROBE_DEPTH {
        return Err(Error::Domain(format!(
            "probe depth must be at least {MIN_PROBE_DEPTH}, got {depth}"
        )));
    }
    if depth > MAX_PROBE_DEPTH {
        return Err(Error::SizeGuard {
            n: depth,
            max: MAX_PROBE_DEPTH,
        });
    }
    Ok(())
}

/// Runs the shared test-function ladder once.
fn ladder_data(
    measure: &MeasureSpec,
    alpha: f64,
    beta: f64,
    depth: usize,
) -> Result<LadderData> {
    check_pair(alpha, beta)?;
    check_depth(depth)?;
    let n_max = LADDER_BASE << depth;
    let moments = measure.moment_sequence(n_max)?;
    let family = if alpha == 1.0 { "log_squared" } else { "fa" };
    let mut rungs = Vec::with_capacity(depth - LADDER_START + 1);
    for j in LADDER_START..=depth {
        let a = 1.0 - 0.5f64.powi(j as i32);
        let n = LADDER_BASE << j;
        let f = if alpha == 1.0 {
            testfns::make_log_squared(a, n)?
        } else {
            testfns::make_fa(alpha, a, n)?
        };
        let in_norm = crate::bloch::bloch_seminorm(&f, alpha, SEMINORM_DEPTH, 1)?.value;
        let g = f.cesaro_apply_with_moments(&moments);
        let out_norm = crate::bloch::bloch_seminorm(&g, beta, SEMINORM_DEPTH, 1)?.value;
        let ratio = out_norm / in_norm.max(f64::MIN_POSITIVE);
        rungs.push(LadderRung {
            j,
            a,
            truncation: n,
            in_norm,
            out_norm,
            ratio,
        });
    }
    Ok(LadderData {
        rungs,
        moments,
        family,
    })
}

/// Slope and verdict of the ratio ladder over its deeper half.
fn assess_ladder(rungs: &[LadderRung]) -> (f64, ProbeVerdict) {
    let window = &rungs[rungs.len() / 2..];
    if window.iter().all(|r| r.ratio < NOISE_FLOOR) {
        return (0.0, ProbeVerdict::BoundedLike);
    }
    let points: Vec<(f64, f64)> = window
        .iter()
        .map(|r| (r.j as f64, r.ratio.max(f64::MIN_POSITIVE).log2()))
        .collect();
    let slope = least_squares_slope(&points);
    let verdict = if slope >= SLOPE_UNBOUNDED_MIN {
        ProbeVerdict::UnboundedLike
    } else if slope <= SLOPE_BOUNDED_MAX {
        ProbeVerdict::BoundedLike
    } else {
        ProbeVerdict::Inconclusive
    };
    (slope, verdict)
}

/// The moment-side obstruction on the ladder's dyadic scale.
fn obstruction_trace(
    moments: &[f64],
    condition: RequiredCondition,
    depth: usize,
) -> Option<CoefficientTrace> {
    let (s, gamma) = match condition {
        RequiredCondition::Carleson { s } => (s, 0.0),
        RequiredCondition::LogCarleson { s, gamma } => (s, gamma),
        RequiredCondition::Unconditional => return None,
    };
    let samples: Vec<TraceSample> = (LADDER_START..=depth)
        .map(|j| {
            let n = 1usize << j;
            let nf = n as f64;
            let moment = moments[n];
            TraceSample {
                n,
                moment,
                weighted: nf.powf(s) * (1.0 + nf.ln()).powf(gamma) * moment,
            }
        })
        .collect();
    let window = &samples[samples.len() / 2..];
    let (slope, verdict) = if window.iter().all(|p| p.weighted < NOISE_FLOOR) {
        (0.0, ProbeVerdict::BoundedLike)
    } else {
        let points: Vec<(f64, f64)> = window
            .iter()
            .map(|p| {
                (
                    (p.n as f64).log2(),
                    p.weighted.max(f64::MIN_POSITIVE).log2(),
                )
            })
            .collect();
        let slope = least_squares_slope(&points);
        let verdict = if slope >= SLOPE_UNBOUNDED_MIN {
            ProbeVerdict::UnboundedLike
        } else if slope <= SLOPE_BOUNDED_MAX {
            ProbeVerdict::BoundedLike
        } else {
            ProbeVerdict::Inconclusive
        };
        (slope, verdict)
    };
    Some(CoefficientTrace {
        s,
        gamma,
        samples,
        slope,
        verdict,
    })
}

fn aggregate_boundedness(
    alpha: f64,
    beta: f64,
    data: &LadderData,
    trace: Option<CoefficientTrace>,
) -> BoundednessReport {
    let (ladder_slope, ladder_verdict) = assess_ladder(&data.rungs);
    let trace_verdict = trace.as_ref().map(|t| t.verdict);
    let verdict = if ladder_verdict == ProbeVerdict::UnboundedLike
        || trace_verdict == Some(ProbeVerdict::UnboundedLike)
    {
        ProbeVerdict::UnboundedLike
    } else if ladder_verdict == ProbeVerdict::BoundedLike
        && trace_verdict.map_or(true, |t| t == ProbeVerdict::BoundedLike)
    {
        ProbeVerdict::BoundedLike
    } else {
        ProbeVerdict::Inconclusive
    };
    // Report the slope of the sub-probe that carried the verdict; the trace
    // sees through the truncation cap, so it wins whenever it ran (and, for
    // unbounded verdicts, whenever it was the objector).
    let fitted_exponent = match (&trace, verdict) {
        (Some(t), ProbeVerdict::UnboundedLike) => {
            if t.verdict == ProbeVerdict::UnboundedLike {
                t.slope
            } else {
                ladder_slope
            }
        }
        (Some(t), _) => t.slope,
        (None, _) => ladder_slope,
    };
    BoundednessReport {
        alpha,
        beta,
        family: data.family,
        rungs: data.rungs.clone(),
        ladder_slope,
        ladder_verdict,
        trace,
        verdict,
        fitted_exponent,
    }
}

fn assess_compactness(
    alpha: f64,
    beta: f64,
    data: &LadderData,
    bounded_gate: ProbeVerdict,
) -> CompactnessReport {
    let ratios: Vec<f64> = data.rungs.iter().map(|r| r.ratio).collect();
    let ratio_first = ratios[0];
    let ratio_mid = ratios[ratios.len() / 2];
    let ratio_last = *ratios.last().unwrap();
    let monotone = ratios
        .windows(2)
        .all(|pair| pair[1] <= pair[0] * COMPACT_UPTICK);
    let tail_variation = relative_variation(&ratios[ratios.len() / 2..]);

    let verdict = if bounded_gate == ProbeVerdict::UnboundedLike {
        CompactVerdict::NoncompactLike
    } else if ratios.iter().all(|r| *r < NOISE_FLOOR) {
        CompactVerdict::CompactLike
    } else if ratio_last < COMPACT_HALVING * ratio_mid {
        CompactVerdict::CompactLike
    } else if monotone && ratio_last < COMPACT_SLOW_DECAY * ratio_first {
        CompactVerdict::CompactLike
    } else if tail_variation < PLATEAU_VARIATION {
        if ratio_last > PLATEAU_FLOOR {
            CompactVerdict::NoncompactLike
        } else {
            CompactVerdict::CompactLike
        }
    } else {
        CompactVerdict::Inconclusive
    };
    CompactnessReport {
        alpha,
        beta,
        family: data.family,
        rungs: data.rungs.clone(),
        ratio_first,
        ratio_mid,
        ratio_last,
        bounded_gate,
        verdict,
    }
}

/// Runs the ladder and the obstruction trace for boundedness.
pub fn boundedness_probe(
    measure: &MeasureSpec,
    alpha: f64,
    beta: f64,
    depth: usize,
) -> Result<BoundednessReport> {
    let (_, condition) = parameter_regime(alpha, beta)?;
    let data = ladder_data(measure, alpha, beta, depth)?;
    let trace = obstruction_trace(&data.moments, condition, depth);
    Ok(aggregate_boundedness(alpha, beta, &data, trace))
}

/// Runs the ladder and reads its decay shape for compactness, gated by
/// the boundedness verdict over the same data.
pub fn compactness_probe(
    measure: &MeasureSpec,
    alpha: f64,
    beta: f64,
    depth: usize,
) -> Result<CompactnessReport> {
    let (_, condition) = parameter_regime(alpha, beta)?;
    let data = ladder_data(measure, alpha, beta, depth)?;
    let trace = obstruction_trace(&data.moments, condition, depth);
    let bounded = aggregate_boundedness(alpha, beta, &data, trace);
    Ok(assess_compactness(alpha, beta, &data, bounded.verdict))
}

fn bounded_agreement(prediction: BoundedPrediction, empirical: ProbeVerdict) -> Agreement {
    match (prediction, empirical) {
        (BoundedPrediction::Yes | BoundedPrediction::UnconditionalYes, v) => match v {
            ProbeVerdict::BoundedLike => Agreement::Agree,
            ProbeVerdict::UnboundedLike => Agreement::Contradiction,
            ProbeVerdict::Inconclusive => Agreement::Inconclusive,
        },
        (BoundedPrediction::No, v) => match v {
            ProbeVerdict::UnboundedLike => Agreement::Agree,
            ProbeVerdict::BoundedLike => Agreement::Contradiction,
            ProbeVerdict::Inconclusive => Agreement::Inconclusive,
        },
        (BoundedPrediction::Inconclusive, _) => Agreement::Inconclusive,
    }
}

fn compact_agreement(prediction: CompactPrediction, empirical: CompactVerdict) -> Agreement {
    match (prediction, empirical) {
        (CompactPrediction::Yes, v) => match v {
            CompactVerdict::CompactLike => Agreement::Agree,
            CompactVerdict::NoncompactLike => Agreement::Contradiction,
            CompactVerdict::Inconclusive => Agreement::Inconclusive,
        },
        (CompactPrediction::No, v) => match v {
            CompactVerdict::NoncompactLike => Agreement::Agree,
            CompactVerdict::CompactLike => Agreement::Contradiction,
            CompactVerdict::Inconclusive => Agreement::Inconclusive,
        },
        (CompactPrediction::Unknown | CompactPrediction::Inconclusive, _) => {
            Agreement::Inconclusive
        }
    }
}

/// Prediction plus both empirical probes over one shared ladder.
pub fn full_report(
    measure: &MeasureSpec,
    alpha: f64,
    beta: f64,
    depth: usize,
) -> Result<FullReport> {
    let prediction = regime_verdict(measure, alpha, beta, PREDICTION_DEPTH)?;
    let data = ladder_data(measure, alpha, beta, depth)?;
    let trace = obstruction_trace(&data.moments, prediction.condition, depth);
    let boundedness = aggregate_boundedness(alpha, beta, &data, trace);
    let compactness = assess_compactness(alpha, beta, &data, boundedness.verdict);
    let bounded_agreement = bounded_agreement(prediction.bounded, boundedness.verdict);
    let compact_agreement = compact_agreement(prediction.compact, compactness.verdict);
    let agreement = match (bounded_agreement, compact_agreement) {
        (Agreement::Contradiction, _) | (_, Agreement::Contradiction) => Agreement::Contradiction,
        (Agreement::Agree, Agreement::Agree) => Agreement::Agree,
        _ => Agreement::Inconclusive,
    };
    Ok(FullReport {
        alpha,
        beta,
        prediction,
        boundedness,
        compactness,
        bounded_agreement,
        compact_agreement,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_dispatch_covers_the_quadrant() {
        let cases = [
            (0.5, 1.0, ParameterRegime::AlphaBelowOne),
            (0.5, 1.99, ParameterRegime::AlphaBelowOne),
            (0.5, 2.0, ParameterRegime::AlwaysBounded),
            (1.0, 1.0, ParameterRegime::AlphaOne),
            (1.0, 2.0, ParameterRegime::AlphaOne),
            (1.0, 2.5, ParameterRegime::AlwaysBounded),
            (2.0, 1.0, ParameterRegime::AlphaAboveOne),
            (2.0, 2.9, ParameterRegime::AlphaAboveOne),
            (2.0, 3.0, ParameterRegime::AlwaysBounded),
            (2.0, 3.5, ParameterRegime::AlwaysBounded),
        ];
        for (alpha, beta, want) in cases {
            let (got, _) = parameter_regime(alpha, beta).unwrap();
            assert_eq!(got, want, "alpha = {alpha}, beta = {beta}");
        }
        assert_eq!(
            parameter_regime(0.5, 1.0).unwrap().1,
            RequiredCondition::Carleson { s: 1.0 }
        );
        assert_eq!(
            parameter_regime(1.0, 1.5).unwrap().1,
            RequiredCondition::LogCarleson { s: 0.5, gamma: 1.0 }
        );
        assert_eq!(
            parameter_regime(2.0, 1.0).unwrap().1,
            RequiredCondition::Carleson { s: 2.0 }
        );
        assert!(parameter_regime(0.0, 1.0).is_err());
    }

    #[test]
    fn lebesgue_prediction_below_alpha_one() {
        let verdict = regime_verdict(&MeasureSpec::lebesgue(), 0.5, 1.0, 30).unwrap();
        assert_eq!(verdict.bounded, BoundedPrediction::Yes);
        assert_eq!(verdict.compact, CompactPrediction::Yes);
        assert_eq!(
            verdict.carleson.unwrap().verdict,
            CarlesonVerdict::CarlesonBounded
        );
    }

    #[test]
    fn unconditional_regime_skips_classification() {
        let verdict = regime_verdict(&MeasureSpec::lebesgue(), 2.0, 3.5, 30).unwrap();
        assert_eq!(verdict.bounded, BoundedPrediction::UnconditionalYes);
        assert_eq!(verdict.compact, CompactPrediction::Unknown);
        assert!(verdict.carleson.is_none());
    }

    #[test]
    fn lebesgue_probe_is_bounded_like() {
        let report = boundedness_probe(&MeasureSpec::lebesgue(), 0.5, 1.0, 8).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::BoundedLike);
        assert!(
            report.fitted_exponent.abs() < 0.05,
            "exponent {}",
            report.fitted_exponent
        );
    }

    #[test]
    fn undersized_tail_is_unbounded_like_via_the_trace() {
        // (1-t)^{1/2} tail against the s = 1 condition: the ladder plateaus
        // under the honest cap but the obstruction grows like n^{1/2}.
        let m = MeasureSpec::power_log_tail(0.5, 0.0, 1.0).unwrap();
        let report = boundedness_probe(&m, 0.5, 1.0, 8).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::UnboundedLike);
        let trace = report.trace.as_ref().unwrap();
        assert_eq!(trace.verdict, ProbeVerdict::UnboundedLike);
        assert!(
            (report.fitted_exponent - 0.5).abs() < 0.1,
            "exponent {}",
            report.fitted_exponent
        );
    }

    #[test]
    fn matching_tail_is_compact_like_below_alpha_one() {
        // Lebesgue at (0.5, 1): the output norms shrink like (1-a)^{1/2}.
        let report = compactness_probe(&MeasureSpec::lebesgue(), 0.5, 1.0, 8).unwrap();
        assert_eq!(report.verdict, CompactVerdict::CompactLike);
    }

    #[test]
    fn unbounded_evidence_overrides_a_decaying_ladder() {
        // (1-t)^{1/2} log^{-1} tail at (0.5, 1): the ladder ratios decay
        // (the log factor fades under the truncation cap) but the moment
        // trace grows, so the operator is unbounded and hence noncompact.
        let m = MeasureSpec::power_log_tail(0.5, 1.0, 1.0).unwrap();
        let report = compactness_probe(&m, 0.5, 1.0, 8).unwrap();
        assert_eq!(report.bounded_gate, ProbeVerdict::UnboundedLike);
        assert_eq!(report.verdict, CompactVerdict::NoncompactLike);
    }

    #[test]
    fn full_report_agreement_on_an_easy_cell() {
        let report = full_report(&MeasureSpec::lebesgue(), 0.5, 1.0, 8).unwrap();
        assert_eq!(report.bounded_agreement, Agreement::Agree);
        assert_ne!(report.agreement, Agreement::Contradiction);
    }

    #[test]
    fn depth_guards() {
        let m = MeasureSpec::lebesgue();
        assert!(boundedness_probe(&m, 0.5, 1.0, 2).is_err());
        assert!(matches!(
            boundedness_probe(&m, 0.5, 1.0, 20).unwrap_err(),
            Error::SizeGuard { .. }
        ));
    }
}
