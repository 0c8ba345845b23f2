//! Equal-weight bucketing over samples.
//!
//! A sorted split of `n` samples stands in for the quantile function: the
//! endpoint of the bucket at fractional rank `q` is the order statistic
//! `X_(idx)` with `idx = clamp(round(q·(n+1)), 1, n)` (1-based, half away
//! from zero), matching the centring of `X_(i)` near `F⁻¹(i/(n+1))`.
//!
//! Ranks built from bucket indices are kept as exact fractions `num/den` so
//! the rounding never depends on floating-point representation of `q`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One ascending-sorted array of non-negative finite samples.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SortedSampleSplit {
    values: Vec<f64>,
}

/// Value of the sample statistic at one bucket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Statistic {
    /// A finite value of `Ŝ[i]`.
    Finite(f64),
    /// Non-positive length difference: `Ŝ → +∞`, counted as light evidence.
    Degenerate,
}

impl Statistic {
    /// The finite value, if any.
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Degenerate => None,
        }
    }

    /// Whether this is the degenerate marker.
    pub fn is_degenerate(self) -> bool {
        matches!(self, Self::Degenerate)
    }

    fn from_ratio(numerator: f64, denominator: f64) -> Self {
        if denominator > 0.0 {
            Self::Finite(numerator / denominator)
        } else {
            Self::Degenerate
        }
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Shape(
            "a sample split needs at least one value".into(),
        ));
    }
    if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::Domain {
            what: "sample value (must be finite and non-negative)",
            value: bad,
        });
    }
    Ok(())
}

impl SortedSampleSplit {
    /// Validates and sorts `values` ascending.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    /// Wraps values that are already ascending (e.g. sorted in parallel by
    /// the caller); the order is verified.
    pub fn from_sorted(values: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        if let Some(w) = values.windows(2).find(|w| w[0] > w[1]) {
            return Err(Error::Domain {
                what: "sample order (values must be ascending)",
                value: w[1],
            });
        }
        Ok(Self { values })
    }

    /// Ascending samples.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false for a constructed split.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Consumes the split.
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Order statistic at fractional rank `q ∈ (0, 1)`.
    pub fn order_statistic_at(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain {
                what: "fractional rank q",
                value: q,
            });
        }
        let n = self.values.len();
        let idx = libm::round(q * (n + 1) as f64).clamp(1.0, n as f64) as usize;
        Ok(self.values[idx - 1])
    }

    /// 1-based rank for the exact fraction `num/den`:
    /// `clamp(round(num·(n+1)/den), 1, n)`.
    pub fn rank_of_fraction(&self, num: usize, den: usize) -> usize {
        let n = self.values.len() as u128;
        let (num, den) = (num as u128, den as u128);
        let idx = (2 * num * (n + 1) + den) / (2 * den);
        idx.clamp(1, n) as usize
    }

    /// Order statistic at the exact fractional rank `num/den`.
    pub fn order_statistic_frac(&self, num: usize, den: usize) -> f64 {
        self.values[self.rank_of_fraction(num, den) - 1]
    }
}

/// The four endpoints consumed by `Ŝ[i]`, one from each split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucketEndpoints {
    /// Coarse bucket index `i`.
    pub index: usize,
    /// Split 1 at rank `(ik + 1)/k²`.
    pub fine: f64,
    /// Split 2 at rank `i/k`.
    pub base: f64,
    /// Split 3 at rank `((i+1)k + 1)/k²`.
    pub next_fine: f64,
    /// Split 4 at rank `(i+1)/k`.
    pub next: f64,
}

impl BucketEndpoints {
    /// `L₁[i] = fine − base`.
    pub fn short_length(&self) -> f64 {
        self.fine - self.base
    }

    /// `L₂[i] = next_fine − next`.
    pub fn long_length(&self) -> f64 {
        self.next_fine - self.next
    }

    /// `Ŝ[i] = L₁ / (k·(L₂ − L₁))`, degenerate when `L₂ ≤ L₁`.
    pub fn statistic(&self, k: usize) -> Statistic {
        let short = self.short_length();
        Statistic::from_ratio(short, k as f64 * (self.long_length() - short))
    }
}

/// Endpoints extracted from four splits for every bucket `i ∈ [2, k−2]`.
///
/// Only the four ranks per bucket that `Ŝ` reads are extracted, rather than
/// all `k²` fine endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct BucketGrid {
    /// Coarse bucket count.
    pub k: usize,
    /// One row per tested bucket, in increasing `i`.
    pub rows: Vec<BucketEndpoints>,
}

fn check_four(splits: &[SortedSampleSplit; 4], k: usize) -> Result<usize> {
    if k < 4 {
        return Err(Error::Shape(alloc::format!("k = {k} is below 4")));
    }
    let n = splits[0].len();
    if splits.iter().any(|s| s.len() != n) {
        return Err(Error::Shape(
            "the four splits must have equal length".into(),
        ));
    }
    if n < k * k {
        return Err(Error::Shape(alloc::format!(
            "each split needs at least k² = {} samples, got {n}",
            k * k
        )));
    }
    Ok(n)
}

fn endpoints(splits: &[SortedSampleSplit; 4], i: usize, k: usize) -> BucketEndpoints {
    let kk = k * k;
    BucketEndpoints {
        index: i,
        fine: splits[0].order_statistic_frac(i * k + 1, kk),
        base: splits[1].order_statistic_frac(i, k),
        next_fine: splits[2].order_statistic_frac((i + 1) * k + 1, kk),
        next: splits[3].order_statistic_frac(i + 1, k),
    }
}

impl BucketGrid {
    /// Extracts the endpoints for `i = 2..=k−2`.
    pub fn extract(splits: &[SortedSampleSplit; 4], k: usize) -> Result<Self> {
        check_four(splits, k)?;
        let rows = (2..=k - 2).map(|i| endpoints(splits, i, k)).collect();
        Ok(Self { k, rows })
    }

    /// `Ŝ[i]` for every row.
    pub fn statistics(&self) -> Vec<(usize, Statistic)> {
        self.rows
            .iter()
            .map(|r| (r.index, r.statistic(self.k)))
            .collect()
    }
}

/// Four-split sample statistic `Ŝ[i]` for `2 ≤ i ≤ k−2`.
///
/// ```text
/// L₁ = X¹((ik+1)/k²) − X²(i/k)
/// L₂ = X³(((i+1)k+1)/k²) − X⁴((i+1)/k)
/// Ŝ  = L₁ / (k·(L₂ − L₁))
/// ```
pub fn hat_s(splits: &[SortedSampleSplit; 4], i: usize, k: usize) -> Result<Statistic> {
    check_four(splits, k)?;
    if i < 2 || i + 2 > k {
        return Err(Error::Shape(alloc::format!(
            "bucket index {i} outside [2, k-2] for k = {k}"
        )));
    }
    Ok(endpoints(splits, i, k).statistic(k))
}

/// Single-split statistic over `k` coarse buckets, centred on `i/k`.
///
/// With `I[j]` the endpoint at rank `j/k` (and `I[0]` the smallest sample),
/// the lengths of the two buckets meeting at `I[i]` give
///
/// ```text
/// S[i] = ½(L[i−1] + L[i]) / (k·(L[i] − L[i−1]))
///      = (I[i+1] − I[i−1]) / (2k·(I[i+1] − 2I[i] + I[i−1]))
/// ```
///
/// so that exact exponential quantiles return `1 − i/k` up to `O(1/k²)`.
/// Defined for `1 ≤ i ≤ k−2`, `n ≥ k`.
pub fn hat_s_weak(split: &SortedSampleSplit, i: usize, k: usize) -> Result<Statistic> {
    if k < 4 || i < 1 || i + 2 > k {
        return Err(Error::Shape(alloc::format!(
            "bucket index {i} outside [1, k-2] for k = {k} (k >= 4)"
        )));
    }
    if split.len() < k {
        return Err(Error::Shape(alloc::format!(
            "the split needs at least k = {k} samples, got {}",
            split.len()
        )));
    }
    let endpoint = |j: usize| {
        if j == 0 {
            split.values()[0]
        } else {
            split.order_statistic_frac(j, k)
        }
    };
    let (left, mid, right) = (endpoint(i - 1), endpoint(i), endpoint(i + 1));
    let below = mid - left;
    let above = right - mid;
    Ok(Statistic::from_ratio(
        0.5 * (below + above),
        k as f64 * (above - below),
    ))
}
