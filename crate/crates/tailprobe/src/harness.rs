//! Seeded runs of the testers on analytic distributions, and the
//! repeated-run aggregation behind the mean/std curves.
//!
//! Replicate `r` draws its samples with seed `base_seed + r` (wrapping).
//! Replicates run in parallel; results are gathered in replicate order, so
//! reports do not depend on scheduling or thread count.

use rayon::prelude::*;
use tailprobe_core::proxy::{proxy_s, threshold_and_gap};
use tailprobe_core::tester::{majority_vote, run_full_test, run_weak_test};
use tailprobe_core::{
    DistributionModel, SortedSampleSplit, TestConfig, TestOutcome, Variant, Verdict,
};

use crate::error::Result;
use crate::io::{four_splits, sort_split};

/// Sorted samples shaped for one tester variant.
#[derive(Debug, Clone)]
pub enum Samples {
    /// Four splits for the full tester.
    Four([SortedSampleSplit; 4]),
    /// One split for the weak tester.
    One(SortedSampleSplit),
}

impl Samples {
    /// Shapes raw values for `variant`: dealt four ways for `Full`, kept
    /// whole for `Weak`.
    pub fn from_values(values: Vec<f64>, variant: Variant) -> Result<Self> {
        Ok(match variant {
            Variant::Full => Self::Four(four_splits(&values)?),
            Variant::Weak { .. } => Self::One(sort_split(values)?),
        })
    }

    /// Runs the tester matching the sample shape.
    pub fn run(&self, config: &TestConfig) -> Result<TestOutcome> {
        Ok(match self {
            Self::Four(s) => run_full_test(s, config)?,
            Self::One(s) => run_weak_test(s, config)?,
        })
    }
}

/// Raw draws for one run: `4n` values for the full tester (dealt into four
/// splits of `n`), `n` for the weak tester.
pub fn draw_values(
    model: &DistributionModel,
    variant: Variant,
    n: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let total = match variant {
        Variant::Full => 4 * n,
        Variant::Weak { .. } => n,
    };
    Ok(model.sample(total, seed)?)
}

/// Samples `model` with `seed` and runs the configured tester.
pub fn run_seeded(
    model: &DistributionModel,
    n: usize,
    config: &TestConfig,
    seed: u64,
) -> Result<TestOutcome> {
    config.validate()?;
    let values = draw_values(model, config.variant, n, seed)?;
    Ok(Samples::from_values(values, config.variant)?
        .run(config)?
        .with_seed(seed))
}

/// Runs `reps` seeded tests, seeds `base_seed + r`, in replicate order.
pub fn run_many(
    model: &DistributionModel,
    reps: usize,
    n: usize,
    config: &TestConfig,
    base_seed: u64,
) -> Result<Vec<TestOutcome>> {
    (0..reps as u64)
        .into_par_iter()
        .map(|r| run_seeded(model, n, config, base_seed.wrapping_add(r)))
        .collect()
}

/// Per-bucket aggregate over replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationRow {
    /// Bucket index.
    pub i: usize,
    /// Mean of the finite statistics, `NaN` if there are none.
    pub mean: f64,
    /// Sample standard deviation (divisor `count − 1`), 0 with one value.
    pub std: f64,
    /// Replicates with a finite statistic.
    pub finite: usize,
    /// Replicates where the bucket was degenerate.
    pub degenerate: usize,
    /// Analytic proxy `S(i/k)`, `None` where it is singular.
    pub proxy_s: Option<f64>,
    /// `1 − i/k`.
    pub threshold: f64,
    /// `1 − i/k − gap/2`.
    pub boundary: f64,
}

/// Repeated runs of one configuration on one distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationReport {
    /// Distribution sampled.
    pub model: DistributionModel,
    /// Tester configuration.
    pub config: TestConfig,
    /// Samples per split.
    pub n: usize,
    /// Seeds used, one per replicate.
    pub seeds: Vec<u64>,
    /// Verdict of each replicate.
    pub verdicts: Vec<Verdict>,
    /// One row per scanned bucket.
    pub rows: Vec<ReplicationRow>,
}

impl ReplicationReport {
    /// Number of replicates.
    pub fn reps(&self) -> usize {
        self.seeds.len()
    }

    /// Replicates that returned `Heavy`.
    pub fn heavy_votes(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|v| **v == Verdict::Heavy)
            .count()
    }

    /// Majority verdict.
    pub fn majority(&self) -> Verdict {
        majority_vote(&self.verdicts)
    }
}

fn moments(values: &[f64]) -> (f64, f64) {
    match values.len() {
        0 => (f64::NAN, 0.0),
        1 => (values[0], 0.0),
        len => {
            let mean = values.iter().sum::<f64>() / len as f64;
            let ss = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
            (mean, (ss / (len - 1) as f64).sqrt())
        }
    }
}

/// Runs the tester `reps ≥ 2` times and aggregates `Ŝ` per bucket.
pub fn replicate(
    model: &DistributionModel,
    reps: usize,
    n: usize,
    config: &TestConfig,
    base_seed: u64,
) -> Result<ReplicationReport> {
    if reps < 2 {
        return Err(tailprobe_core::Error::InvalidParameter {
            name: "reps",
            value: reps as f64,
            reason: "must be at least 2",
        }
        .into());
    }
    let outcomes = run_many(model, reps, n, config, base_seed)?;
    let k = config.k;
    let alpha = config.tail.alpha;
    let rows = outcomes[0]
        .records
        .iter()
        .enumerate()
        .map(|(j, first)| {
            let i = first.index;
            let finite: Vec<f64> = outcomes
                .iter()
                .filter_map(|o| o.records[j].statistic.value())
                .collect();
            let (mean, std) = moments(&finite);
            let z = i as f64 / k as f64;
            let gap = threshold_and_gap(z, alpha, &config.bounds, config.gap_denominator)?;
            Ok(ReplicationRow {
                i,
                mean,
                std,
                finite: finite.len(),
                degenerate: reps - finite.len(),
                proxy_s: proxy_s(model, z).ok(),
                threshold: gap.threshold,
                boundary: gap.boundary(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReplicationReport {
        model: *model,
        config: *config,
        n,
        seeds: outcomes
            .iter()
            .map(|o| o.seed.expect("seeded run"))
            .collect(),
        verdicts: outcomes.iter().map(|o| o.verdict).collect(),
        rows,
    })
}
