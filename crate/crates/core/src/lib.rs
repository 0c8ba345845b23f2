//! Light-tail versus heavy-tail property testing from samples.
//!
//! The crate decides whether a continuous, monotone-decreasing distribution
//! on `[0, ∞)` is light-tailed (non-decreasing hazard rate) or
//! `(α, ρ)`-heavy-tailed (hazard-rate derivative below `−α` on a region of
//! mass at least `ρ`). The decision is made through the equal-weight
//! bucketing proxy
//!
//! ```text
//! S(z) = L(z) / L'(z) = −f(F⁻¹(z))² / f'(F⁻¹(z))
//! ```
//!
//! where `L(y) = d/dy F⁻¹(y)` is the length of an infinitesimal bucket of mass
//! `dy` starting at quantile `y`. Light-tailed distributions satisfy
//! `S(z) > 1 − z`; `(α, ρ)`-heavy ones fall below `1 − z − gap`.
//!
//! Layout:
//!
//! - [`distributions`]: analytic families, hazard machinery, seeded sampling,
//!   the ground-truth tail classifier and smoothness-bound estimation.
//! - [`proxy`]: the exact proxy `S`, thresholds and gaps, and the discrete
//!   two-granularity approximation `S̃`.
//! - [`empirical`]: sorted sample splits, fractional-rank order statistics
//!   and the sample statistic `Ŝ`.
//! - [`tester`]: the four-split tester, the single-split (weak) tester and
//!   the bucket/sample-count calculators.
//!
//! The crate is `no_std` (with `alloc`); enable the `std` feature to get
//! `std::error::Error` integration through the standard library.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod distributions;
pub mod empirical;
mod error;
pub mod proxy;
mod special;
pub mod tester;

pub use distributions::{
    DistributionModel, Family, Hazard, PointEval, TailClass, TailParams, WellBehavedBounds,
};
pub use empirical::{BucketGrid, SortedSampleSplit, Statistic};
pub use error::{Error, Result};
pub use proxy::{GapDenominator, ProxyCurve, ProxyPoint, ThresholdGap};
pub use tester::{
    ComplexityConstants, SampleComplexity, TestConfig, TestOutcome, Variant, Verdict,
};
