//! Decision procedures and the bucket/sample-count calculators.
//!
//! Both testers compare a per-bucket statistic against
//! `boundary[i] = 1 − i/k − gap(α, i/k)/2` and report `Heavy` as soon as any
//! finite statistic falls below its boundary. Degenerate buckets count as
//! light evidence.

use alloc::vec::Vec;

use crate::distributions::{TailParams, WellBehavedBounds};
use crate::empirical::{hat_s_weak, BucketGrid, SortedSampleSplit, Statistic};
use crate::error::{Error, Result};
use crate::proxy::{threshold_and_gap, GapDenominator};

/// Which tester to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    /// Four splits, two granularities (`1/k` and `1/k²`).
    Full,
    /// One split, one granularity, buckets `i ∈ [⌈c₁k⌉, ⌊c₂k⌋]`.
    Weak {
        /// Lower fraction of the scanned range.
        c1: f64,
        /// Upper fraction of the scanned range.
        c2: f64,
    },
}

impl Variant {
    /// Weak tester with the default range `(0.1, 0.8)`.
    pub const fn weak() -> Self {
        Self::Weak { c1: 0.1, c2: 0.8 }
    }
}

/// Multipliers standing in for the unspecified `Θ(·)` constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityConstants {
    /// Bucket-count constant.
    pub c_k: f64,
    /// Sample-count constant.
    pub c_n: f64,
}

impl Default for ComplexityConstants {
    fn default() -> Self {
        Self { c_k: 1.0, c_n: 1.0 }
    }
}

/// Which sample-complexity expression to evaluate.
///
/// `Statement` is `k³ log k · B₁^{3/2} β² / α`, the bound as usually quoted.
/// `Proof` is `k³ log k · β³ B₂^{3/2} / α`, the form the derivation ends with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleComplexity {
    /// `B₁^{3/2}·β²`.
    #[default]
    Statement,
    /// `β³·B₂^{3/2}`.
    Proof,
}

/// Tester configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestConfig {
    /// `(α, ρ)`.
    pub tail: TailParams,
    /// Smoothness constants used in the gap.
    pub bounds: WellBehavedBounds,
    /// Coarse bucket count.
    pub k: usize,
    /// Full or weak tester.
    pub variant: Variant,
    /// Gap denominator convention.
    pub gap_denominator: GapDenominator,
    /// Calculator constants.
    pub constants: ComplexityConstants,
}

impl TestConfig {
    /// A full-tester configuration with default gap and constants.
    pub fn new(tail: TailParams, bounds: WellBehavedBounds, k: usize, variant: Variant) -> Self {
        Self {
            tail,
            bounds,
            k,
            variant,
            gap_denominator: GapDenominator::default(),
            constants: ComplexityConstants::default(),
        }
    }

    /// Checks `k ≥ 4`, `k ≥ 4/ρ`, `ζ ≤ 1/(2k)` and `0 < c₁ < c₂ < 1`.
    pub fn validate(&self) -> Result<()> {
        self.tail.validate()?;
        self.bounds.validate()?;
        let k = self.k as f64;
        if self.k < 4 {
            return Err(Error::InvalidParameter {
                name: "k",
                value: k,
                reason: "must be at least 4",
            });
        }
        if k < 4.0 / self.tail.rho {
            return Err(Error::InvalidParameter {
                name: "k",
                value: k,
                reason: "must be at least 4/rho",
            });
        }
        if self.bounds.zeta > 1.0 / (2.0 * k) {
            return Err(Error::InvalidParameter {
                name: "zeta",
                value: self.bounds.zeta,
                reason: "must not exceed 1/(2k)",
            });
        }
        if let Variant::Weak { c1, c2 } = self.variant {
            if !(c1 > 0.0 && c1 < c2 && c2 < 1.0) {
                return Err(Error::InvalidParameter {
                    name: "c1/c2",
                    value: c1,
                    reason: "need 0 < c1 < c2 < 1",
                });
            }
        }
        for (name, value) in [("c_k", self.constants.c_k), ("c_n", self.constants.c_n)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be positive and finite",
                });
            }
        }
        Ok(())
    }

    /// `1 − i/k − gap(α, i/k)/2`.
    pub fn boundary(&self, i: usize) -> Result<f64> {
        let z = i as f64 / self.k as f64;
        Ok(threshold_and_gap(z, self.tail.alpha, &self.bounds, self.gap_denominator)?.boundary())
    }

    /// Bucket indices the configured tester scans.
    pub fn bucket_range(&self) -> core::ops::RangeInclusive<usize> {
        let k = self.k;
        match self.variant {
            Variant::Full => 2..=k.saturating_sub(2),
            Variant::Weak { c1, c2 } => {
                let lo = (libm::ceil(c1 * k as f64) as usize).max(1);
                let hi = (libm::floor(c2 * k as f64) as usize).min(k.saturating_sub(2));
                lo..=hi
            }
        }
    }
}

/// Test verdict. `Heavy` is the algorithm's PASS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Some statistic fell below its boundary.
    Heavy,
    /// Every statistic stayed at or above its boundary.
    Light,
}

/// Per-bucket record of a test run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucketRecord {
    /// Bucket index `i`.
    pub index: usize,
    /// `Ŝ[i]`.
    pub statistic: Statistic,
    /// `1 − i/k − gap/2`.
    pub boundary: f64,
    /// `Ŝ[i] − boundary` where `Ŝ[i]` is finite.
    pub margin: Option<f64>,
}

/// Verdict with per-bucket records and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct TestOutcome {
    /// Heavy iff some finite statistic lies below its boundary.
    pub verdict: Verdict,
    /// One record per scanned bucket.
    pub records: Vec<BucketRecord>,
    /// Coarse bucket count.
    pub k: usize,
    /// Samples per split.
    pub n: usize,
    /// Seed the samples were drawn with, when known.
    pub seed: Option<u64>,
    /// Configuration echo.
    pub config: TestConfig,
}

impl TestOutcome {
    /// Attaches the sampling seed.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn assemble(
        config: &TestConfig,
        n: usize,
        stats: impl IntoIterator<Item = (usize, Statistic)>,
    ) -> Result<Self> {
        let mut records = Vec::new();
        for (index, statistic) in stats {
            let boundary = config.boundary(index)?;
            records.push(BucketRecord {
                index,
                statistic,
                boundary,
                margin: statistic.value().map(|s| s - boundary),
            });
        }
        let heavy = records.iter().any(|r| r.margin.is_some_and(|m| m < 0.0));
        Ok(Self {
            verdict: if heavy {
                Verdict::Heavy
            } else {
                Verdict::Light
            },
            records,
            k: config.k,
            n,
            seed: None,
            config: *config,
        })
    }
}

/// `k = ⌈max(c_k·B₂β⁴(2B₁+B₂)/α, 4/ρ)⌉`, at least 4.
pub fn required_buckets(tail: &TailParams, bounds: &WellBehavedBounds, c_k: f64) -> Result<usize> {
    tail.validate()?;
    bounds.validate()?;
    let b = bounds;
    let smooth = c_k * b.b2 * libm::pow(b.beta, 4.0) * (2.0 * b.b1 + b.b2) / tail.alpha;
    let k = libm::ceil(smooth.max(4.0 / tail.rho));
    if !k.is_finite() || k > usize::MAX as f64 {
        return Err(Error::InvalidParameter {
            name: "k",
            value: k,
            reason: "bucket count overflows",
        });
    }
    Ok((k as usize).max(4))
}

/// `n = ⌈c_n·k³·ln k·C/α⌉` per split, at least `k²`, where `C` is
/// `B₁^{3/2}β²` or `β³B₂^{3/2}` depending on `form`.
pub fn required_samples(
    k: usize,
    tail: &TailParams,
    bounds: &WellBehavedBounds,
    c_n: f64,
    form: SampleComplexity,
) -> Result<usize> {
    tail.validate()?;
    bounds.validate()?;
    if k < 4 {
        return Err(Error::InvalidParameter {
            name: "k",
            value: k as f64,
            reason: "must be at least 4",
        });
    }
    let kf = k as f64;
    let smooth = match form {
        SampleComplexity::Statement => libm::pow(bounds.b1, 1.5) * bounds.beta * bounds.beta,
        SampleComplexity::Proof => libm::pow(bounds.beta, 3.0) * libm::pow(bounds.b2, 1.5),
    };
    let n = libm::ceil(c_n * kf * kf * kf * libm::log(kf) * smooth / tail.alpha);
    if !n.is_finite() || n > usize::MAX as f64 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n,
            reason: "sample count overflows",
        });
    }
    Ok((n as usize).max(k * k))
}

/// Four-split tester over buckets `i ∈ [2, k−2]`.
pub fn run_full_test(splits: &[SortedSampleSplit; 4], config: &TestConfig) -> Result<TestOutcome> {
    config.validate()?;
    if config.variant != Variant::Full {
        return Err(Error::Shape("run_full_test needs Variant::Full".into()));
    }
    let grid = BucketGrid::extract(splits, config.k)?;
    TestOutcome::assemble(config, splits[0].len(), grid.statistics())
}

/// Single-split tester over buckets `i ∈ [⌈c₁k⌉, ⌊c₂k⌋] ∩ [1, k−2]`.
pub fn run_weak_test(split: &SortedSampleSplit, config: &TestConfig) -> Result<TestOutcome> {
    config.validate()?;
    if !matches!(config.variant, Variant::Weak { .. }) {
        return Err(Error::Shape("run_weak_test needs Variant::Weak".into()));
    }
    let stats = config
        .bucket_range()
        .map(|i| Ok((i, hat_s_weak(split, i, config.k)?)))
        .collect::<Result<Vec<_>>>()?;
    TestOutcome::assemble(config, split.len(), stats)
}

/// Majority vote: `Heavy` iff strictly more than half the verdicts are heavy.
pub fn majority_vote(verdicts: &[Verdict]) -> Verdict {
    let heavy = verdicts.iter().filter(|v| **v == Verdict::Heavy).count();
    if 2 * heavy > verdicts.len() {
        Verdict::Heavy
    } else {
        Verdict::Light
    }
}
