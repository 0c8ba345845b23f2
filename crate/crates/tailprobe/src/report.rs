//! JSON and CSV reports.
//!
//! JSON floats use the shortest representation that reads back to the same
//! `f64`. CSV numbers are plain decimals (dot separator, no exponent, no
//! grouping) rounded to 15 significant digits; missing values are empty
//! cells. Degenerate buckets appear as `"s_hat": null, "degenerate": true`.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use tailprobe_core::proxy::proxy_s;
use tailprobe_core::{DistributionModel, GapDenominator, TestOutcome, Variant, Verdict};

use crate::error::Result;
use crate::harness::ReplicationReport;

/// CSV header shared by both report kinds.
pub const CSV_HEADER: &str = "i,s_hat_mean,s_hat_std,proxy_s,threshold,boundary";

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    /// One JSON object.
    Json,
    /// Header plus one row per bucket.
    Csv,
}

/// A test outcome, optionally the first of several voted runs.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeReport {
    /// Buckets and configuration come from this run.
    pub outcome: TestOutcome,
    /// Reported verdict (the majority when `reps > 1`).
    pub verdict: Verdict,
    /// Runs voted over.
    pub reps: usize,
    /// Runs that returned `Heavy`.
    pub heavy_votes: usize,
    /// Sampled distribution, when the data was synthetic.
    pub model: Option<DistributionModel>,
}

impl From<TestOutcome> for OutcomeReport {
    fn from(outcome: TestOutcome) -> Self {
        Self {
            verdict: outcome.verdict,
            heavy_votes: usize::from(outcome.verdict == Verdict::Heavy),
            reps: 1,
            model: None,
            outcome,
        }
    }
}

/// Anything `write_report` accepts.
#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    /// Single (or voted) test run.
    Outcome(&'a OutcomeReport),
    /// Aggregated replicates.
    Replication(&'a ReplicationReport),
}

/// One bucket of the JSON outcome report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonBucket {
    /// Bucket index.
    pub i: usize,
    /// Statistic, `null` when degenerate.
    pub s_hat: Option<f64>,
    /// Decision boundary.
    pub boundary: f64,
    /// `s_hat − boundary`, `null` when degenerate.
    pub margin: Option<f64>,
    /// Whether the bucket was degenerate.
    pub degenerate: bool,
}

/// JSON outcome report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonOutcome {
    /// `"heavy"` or `"light"`.
    pub verdict: String,
    /// Coarse bucket count.
    pub k: usize,
    /// Samples per split.
    pub n: usize,
    /// Hazard-slope threshold.
    pub alpha: f64,
    /// Heavy mass.
    pub rho: f64,
    /// Density bound.
    pub beta: f64,
    /// First quantile-derivative bound.
    pub b1: f64,
    /// Second quantile-derivative bound.
    pub b2: f64,
    /// Sampling seed (first run when voting), `null` for file input.
    pub seed: Option<u64>,
    /// Excluded tail mass.
    pub zeta: f64,
    /// `"full"` or `"weak"`.
    pub variant: String,
    /// Weak range fractions, `null` for the full tester.
    pub c1: Option<f64>,
    /// Upper weak range fraction.
    pub c2: Option<f64>,
    /// `"b1"` or `"b2"`.
    pub gap_denominator: String,
    /// Runs voted over.
    pub reps: usize,
    /// Runs that returned heavy.
    pub heavy_votes: usize,
    /// Sampled distribution, `null` for file input.
    pub distribution: Option<JsonModel>,
    /// Per-bucket records.
    pub buckets: Vec<JsonBucket>,
}

/// Distribution name and named parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonModel {
    /// Family name as accepted by `--dist`.
    pub name: String,
    /// Parameters under their `--params` names.
    pub params: BTreeMap<String, f64>,
}

/// One bucket of the JSON replication report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonRow {
    /// Bucket index.
    pub i: usize,
    /// Mean finite statistic.
    pub s_hat_mean: Option<f64>,
    /// Standard deviation of the finite statistics.
    pub s_hat_std: f64,
    /// Replicates with a finite statistic.
    pub finite: usize,
    /// Replicates where the bucket was degenerate.
    pub degenerate: usize,
    /// Analytic proxy.
    pub proxy_s: Option<f64>,
    /// `1 − i/k`.
    pub threshold: f64,
    /// Decision boundary.
    pub boundary: f64,
}

/// JSON replication report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReplication {
    /// Sampled distribution.
    pub distribution: JsonModel,
    /// Coarse bucket count.
    pub k: usize,
    /// Samples per split.
    pub n: usize,
    /// Hazard-slope threshold.
    pub alpha: f64,
    /// Heavy mass.
    pub rho: f64,
    /// Density bound.
    pub beta: f64,
    /// First quantile-derivative bound.
    pub b1: f64,
    /// Second quantile-derivative bound.
    pub b2: f64,
    /// Excluded tail mass.
    pub zeta: f64,
    /// `"full"` or `"weak"`.
    pub variant: String,
    /// Replicate count.
    pub reps: usize,
    /// Seeds, one per replicate.
    pub seeds: Vec<u64>,
    /// Verdicts, one per replicate.
    pub verdicts: Vec<String>,
    /// Per-bucket aggregates.
    pub rows: Vec<JsonRow>,
}

/// Family name as used on the command line.
pub fn model_name(model: &DistributionModel) -> &'static str {
    match model {
        DistributionModel::Exponential { .. } => "exponential",
        DistributionModel::Lomax { .. } => "lomax",
        DistributionModel::HalfGaussian { .. } => "half-gaussian",
        DistributionModel::StretchedExponential { .. } => "stretched-exponential",
    }
}

/// Parameters under their command-line names.
pub fn model_params(model: &DistributionModel) -> Vec<(&'static str, f64)> {
    match *model {
        DistributionModel::Exponential { rate } => vec![("lambda", rate)],
        DistributionModel::Lomax { shape, scale } => vec![("a", shape), ("lambda", scale)],
        DistributionModel::HalfGaussian { scale } => vec![("sigma", scale)],
        DistributionModel::StretchedExponential { rate, exponent } => {
            vec![("gamma", rate), ("m", exponent)]
        }
    }
}

fn json_model(model: &DistributionModel) -> JsonModel {
    JsonModel {
        name: model_name(model).to_string(),
        params: model_params(model)
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    }
}

fn verdict_name(v: Verdict) -> String {
    match v {
        Verdict::Heavy => "heavy",
        Verdict::Light => "light",
    }
    .to_string()
}

fn variant_name(v: Variant) -> String {
    match v {
        Variant::Full => "full",
        Variant::Weak { .. } => "weak",
    }
    .to_string()
}

/// The JSON view of an outcome report.
pub fn outcome_json(report: &OutcomeReport) -> JsonOutcome {
    let o = &report.outcome;
    let c = &o.config;
    let (c1, c2) = match c.variant {
        Variant::Weak { c1, c2 } => (Some(c1), Some(c2)),
        Variant::Full => (None, None),
    };
    JsonOutcome {
        verdict: verdict_name(report.verdict),
        k: o.k,
        n: o.n,
        alpha: c.tail.alpha,
        rho: c.tail.rho,
        beta: c.bounds.beta,
        b1: c.bounds.b1,
        b2: c.bounds.b2,
        seed: o.seed,
        zeta: c.bounds.zeta,
        variant: variant_name(c.variant),
        c1,
        c2,
        gap_denominator: match c.gap_denominator {
            GapDenominator::BetaCubedB1 => "b1",
            GapDenominator::BetaCubedB2 => "b2",
        }
        .to_string(),
        reps: report.reps,
        heavy_votes: report.heavy_votes,
        distribution: report.model.as_ref().map(json_model),
        buckets: o
            .records
            .iter()
            .map(|r| JsonBucket {
                i: r.index,
                s_hat: r.statistic.value(),
                boundary: r.boundary,
                margin: r.margin,
                degenerate: r.statistic.is_degenerate(),
            })
            .collect(),
    }
}

/// The JSON view of a replication report.
pub fn replication_json(report: &ReplicationReport) -> JsonReplication {
    let c = &report.config;
    JsonReplication {
        distribution: json_model(&report.model),
        k: c.k,
        n: report.n,
        alpha: c.tail.alpha,
        rho: c.tail.rho,
        beta: c.bounds.beta,
        b1: c.bounds.b1,
        b2: c.bounds.b2,
        zeta: c.bounds.zeta,
        variant: variant_name(c.variant),
        reps: report.reps(),
        seeds: report.seeds.clone(),
        verdicts: report.verdicts.iter().map(|v| verdict_name(*v)).collect(),
        rows: report
            .rows
            .iter()
            .map(|r| JsonRow {
                i: r.i,
                s_hat_mean: (r.finite > 0).then_some(r.mean),
                s_hat_std: r.std,
                finite: r.finite,
                degenerate: r.degenerate,
                proxy_s: r.proxy_s,
                threshold: r.threshold,
                boundary: r.boundary,
            })
            .collect(),
    }
}

/// Plain decimal with 15 significant digits, trailing zeros trimmed.
pub fn decimal(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let places = (14 - magnitude).max(0) as usize;
    let mut s = format!("{x:.places$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

fn cell(x: Option<f64>) -> String {
    x.map(decimal).unwrap_or_default()
}

fn csv_rows(report: Report<'_>) -> Vec<[String; 6]> {
    match report {
        Report::Outcome(r) => {
            let k = r.outcome.k as f64;
            r.outcome
                .records
                .iter()
                .map(|b| {
                    let z = b.index as f64 / k;
                    let proxy = r.model.as_ref().and_then(|m| proxy_s(m, z).ok());
                    let s = b.statistic.value();
                    [
                        b.index.to_string(),
                        cell(s),
                        cell(s.map(|_| 0.0)),
                        cell(proxy),
                        decimal(1.0 - z),
                        decimal(b.boundary),
                    ]
                })
                .collect()
        }
        Report::Replication(r) => r
            .rows
            .iter()
            .map(|row| {
                [
                    row.i.to_string(),
                    cell((row.finite > 0).then_some(row.mean)),
                    decimal(row.std),
                    cell(row.proxy_s),
                    decimal(row.threshold),
                    decimal(row.boundary),
                ]
            })
            .collect(),
    }
}

/// Serialises a report to bytes.
pub fn render(report: Report<'_>, format: ReportFormat) -> Result<Vec<u8>> {
    Ok(match format {
        ReportFormat::Json => {
            let mut out = match report {
                Report::Outcome(r) => serde_json::to_vec_pretty(&outcome_json(r))?,
                Report::Replication(r) => serde_json::to_vec_pretty(&replication_json(r))?,
            };
            out.push(b'\n');
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for row in csv_rows(report) {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out.into_bytes()
        }
    })
}

/// Writes a report to `sink`.
pub fn write_report(report: Report<'_>, sink: &mut dyn Write, format: ReportFormat) -> Result<()> {
    sink.write_all(&render(report, format)?)?;
    Ok(())
}
