//! Command-line front end: moments, tail classification, operator
//! application, kernel-integral scans, and the boundedness / compactness
//! probes, as CSV tables or JSON documents.
//!
//! Exit codes: 0 on success (including inconclusive probes), 2 when a full
//! probe finds an explicit contradiction between the tail-condition
//! prediction and the empirical verdicts, 1 on any input or numeric error.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cmulab::asymptotics::{self, AsymptoticScan};
use cmulab::carleson::{self, CarlesonReport};
use cmulab::measure::MeasureSpec;
use cmulab::probes::{
    self, Agreement, BoundednessReport, CompactnessReport, RegimeVerdict, RequiredCondition,
};
use cmulab::series::PowerSeries;
use cmulab::testfns::TestFamily;

#[derive(Parser)]
#[command(
    name = "cmulab",
    version,
    about = "Numerical laboratory for coefficient-averaging operators on Bloch-type spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbeKind {
    Bounded,
    Compact,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Print the moment sequence mu_0..mu_n of a measure.
    Moments {
        /// Measure spec file (JSON).
        #[arg(long)]
        measure: PathBuf,
        /// Highest moment order to compute.
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Classify a measure against a (log-)Carleson tail condition.
    Carleson {
        #[arg(long)]
        measure: PathBuf,
        /// Carleson exponent of the condition.
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        /// Logarithmic exponent of the condition.
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        /// Dyadic grid depth.
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Apply the averaging operator to a series and write the result.
    Apply {
        #[arg(long)]
        measure: PathBuf,
        /// `builtin:<name>` or a path to a series file.
        #[arg(long)]
        series: String,
        /// Working truncation order.
        #[arg(long)]
        n: usize,
        /// Output series file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Scan the kernel integral along dyadic radii against its predicted
    /// asymptotic shape.
    Asymptotics {
        /// Endpoint exponent of the `(1-t)^delta` factor.
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        /// Extra kernel power (the integrand carries `(1-tr)^{-(1+delta+c)}`).
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// Logarithmic exponent of the `log^k(e/(1-t))` factor.
        #[arg(long, allow_negative_numbers = true)]
        k: f64,
        /// Deepest dyadic radius `1 - 2^{-depth}`.
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the empirical boundedness / compactness probes.
    Probe {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Ladder depth.
        #[arg(long, default_value_t = probes::DEFAULT_PROBE_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = ProbeKind::Full)]
        kind: ProbeKind,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print the tail-condition prediction for a parameter pair.
    Verdict {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; usage errors are
            // input errors (exit 1), never the disagreement code 2.
            let failure = err.use_stderr();
            let _ = err.print();
            return if failure { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Moments {
            measure,
            n_max,
            format,
        } => {
            let m = load_measure(&measure)?;
            let moments = m.moment_sequence(n_max)?;
            match format {
                Format::Csv => {
                    println!("n,moment");
                    for (n, value) in moments.iter().enumerate() {
                        println!("{n},{value}");
                    }
                }
                Format::Json => {
                    let doc = serde_json::json!({ "n_max": n_max, "moments": moments });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Carleson {
            measure,
            s,
            gamma,
            depth,
            format,
        } => {
            let m = load_measure(&measure)?;
            let report = carleson::classify(&m, s, gamma, depth)?;
            match format {
                Format::Csv => print_carleson_csv(&report),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Apply {
            measure,
            series,
            n,
            out,
        } => {
            let m = load_measure(&measure)?;
            let f = load_series(&series, n)?;
            let g = f.cesaro_apply(&m)?;
            std::fs::write(&out, g.to_text())
                .with_context(|| format!("cannot write series file {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Asymptotics {
            delta,
            c,
            k,
            depth,
            format,
        } => {
            let scan = asymptotics::regime_scan(delta, c, k, depth)?;
            match format {
                Format::Csv => print_asymptotics_csv(&scan),
                Format::Json => println!("{}", serde_json::to_string_pretty(&scan)?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Probe {
            measure,
            alpha,
            beta,
            depth,
            kind,
            format,
        } => {
            let m = load_measure(&measure)?;
            match kind {
                ProbeKind::Bounded => {
                    let report = probes::boundedness_probe(&m, alpha, beta, depth)?;
                    match format {
                        Format::Csv => print_bounded_csv(&report, ""),
                        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                ProbeKind::Compact => {
                    let report = probes::compactness_probe(&m, alpha, beta, depth)?;
                    match format {
                        Format::Csv => {
                            print_rungs(&report.rungs);
                            print_compact_summary(&report);
                        }
                        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                ProbeKind::Full => {
                    let report = probes::full_report(&m, alpha, beta, depth)?;
                    match format {
                        Format::Csv => {
                            print_bounded_csv(&report.boundedness, "bounded_");
                            print_compact_summary(&report.compactness);
                            print_prediction_summary(&report.prediction);
                            summary("bounded_agreement", report.bounded_agreement);
                            summary("compact_agreement", report.compact_agreement);
                            summary("agreement", report.agreement);
                        }
                        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                    }
                    if report.agreement == Agreement::Contradiction {
                        Ok(ExitCode::from(2))
                    } else {
                        Ok(ExitCode::SUCCESS)
                    }
                }
            }
        }
        Command::Verdict {
            measure,
            alpha,
            beta,
            format,
        } => {
            let m = load_measure(&measure)?;
            let verdict = probes::regime_verdict(&m, alpha, beta, probes::PREDICTION_DEPTH)?;
            match format {
                Format::Csv => {
                    summary("alpha", alpha);
                    summary("beta", beta);
                    print_prediction_summary(&verdict);
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&verdict)?),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_measure(path: &PathBuf) -> Result<MeasureSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read measure file {}", path.display()))?;
    MeasureSpec::from_json(&text)
        .with_context(|| format!("invalid measure file {}", path.display()))
}

fn load_series(source: &str, n: usize) -> Result<PowerSeries> {
    if source.starts_with("builtin:") {
        let family = TestFamily::parse(source)?;
        let least = family.min_order();
        if n < least {
            bail!(
                "truncation order {n} is below the least faithful order {least} \
                 for `{source}`; raise --n"
            );
        }
        return Ok(family.generate(n)?);
    }
    let text = std::fs::read_to_string(source)
        .with_context(|| format!("cannot read series file {source}"))?;
    let series =
        PowerSeries::from_text(&text).with_context(|| format!("invalid series file {source}"))?;
    if series.truncation() < n {
        bail!(
            "series file {source} has truncation {} but --n {n} was requested",
            series.truncation()
        );
    }
    Ok(PowerSeries::new(series.coefficients()[..=n].to_vec())?)
}

/// Prints one `#summary,<key>,<value>` row.
fn summary(key: &str, value: impl Display) {
    println!("#summary,{key},{value}");
}

fn print_carleson_csv(report: &CarlesonReport) {
    println!("j,t,quotient");
    for point in &report.grid {
        println!("{},{},{}", point.j, point.t, point.quotient);
    }
    summary("s", report.s);
    summary("gamma", report.gamma);
    summary("depth", report.depth);
    summary("sup_estimate", report.sup_estimate);
    if let Some(limit) = report.limit_estimate {
        summary("limit_estimate", limit);
    }
    summary("moment_sup", report.moment_decay.sup);
    summary("moment_fitted_exponent", report.moment_decay.fitted_exponent);
    summary("verdict", report.verdict);
}

fn print_asymptotics_csv(scan: &AsymptoticScan) {
    println!("j,r,integral,predicted,ratio");
    for sample in &scan.samples {
        println!(
            "{},{},{},{},{}",
            sample.j, sample.r, sample.integral, sample.predicted, sample.ratio
        );
    }
    summary("delta", scan.delta);
    summary("c", scan.c);
    summary("k", scan.k);
    summary("regime", scan.regime);
    summary("stabilized", scan.stabilized);
}

fn print_rungs(rungs: &[probes::LadderRung]) {
    println!("j,a,N,in_norm,out_norm,ratio");
    for rung in rungs {
        println!(
            "{},{},{},{},{},{}",
            rung.j, rung.a, rung.truncation, rung.in_norm, rung.out_norm, rung.ratio
        );
    }
}

/// Boundedness rows and summaries; `prefix` disambiguates the verdict key
/// inside a full report.
fn print_bounded_csv(report: &BoundednessReport, prefix: &str) {
    print_rungs(&report.rungs);
    summary("family", report.family);
    summary("ladder_slope", report.ladder_slope);
    summary("ladder_verdict", report.ladder_verdict);
    if let Some(trace) = &report.trace {
        summary("trace_s", trace.s);
        summary("trace_gamma", trace.gamma);
        summary("trace_slope", trace.slope);
        summary("trace_verdict", trace.verdict);
    }
    summary(&format!("{prefix}verdict"), report.verdict);
    summary("fitted_exponent", report.fitted_exponent);
}

fn print_compact_summary(report: &CompactnessReport) {
    summary("ratio_first", report.ratio_first);
    summary("ratio_mid", report.ratio_mid);
    summary("ratio_last", report.ratio_last);
    summary("bounded_gate", report.bounded_gate);
    summary("compact_verdict", report.verdict);
}

fn print_prediction_summary(verdict: &RegimeVerdict) {
    summary("regime", verdict.regime);
    match verdict.condition {
        RequiredCondition::Carleson { s } => {
            summary("condition", "carleson");
            summary("condition_s", s);
        }
        RequiredCondition::LogCarleson { s, gamma } => {
            summary("condition", "log_carleson");
            summary("condition_s", s);
            summary("condition_gamma", gamma);
        }
        RequiredCondition::Unconditional => summary("condition", "unconditional"),
    }
    if let Some(report) = &verdict.carleson {
        summary("carleson_verdict", report.verdict);
        summary("carleson_sup", report.sup_estimate);
    }
    summary("predicted_bounded", verdict.bounded);
    summary("predicted_compact", verdict.compact);
}
