//! The bucket-length proxy `S(z)` and its discrete two-granularity
//! approximation `S̃`, evaluated on analytic models.
//!
//! With `I(y) = F⁻¹(y)` the endpoint of the equal-weight bucket starting at
//! mass `y`, the bucket length is `L(y) = I'(y) = 1/f(I(y))` and
//! `L'(y) = −f'(I(y))/f(I(y))³`, so
//!
//! ```text
//! S(z) = L(z)/L'(z) = −f(x)²/f'(x),  x = F⁻¹(z).
//! ```
//!
//! The exponential sits exactly on `S(z) = 1 − z`.

use alloc::vec::Vec;

use crate::distributions::{DistributionModel, WellBehavedBounds};
use crate::error::{Error, Result};

/// Exact proxy `S(z) = −f(F⁻¹(z))²/f'(F⁻¹(z))`.
///
/// Singular where the density is flat (`f' = 0`), e.g. the half-Gaussian at
/// `z = 0`.
pub fn proxy_s(model: &DistributionModel, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain {
            what: "mass z",
            value: z,
        });
    }
    let p = model.evaluate(model.quantile(z)?)?;
    if p.pdf_derivative >= 0.0 || !p.pdf_derivative.is_finite() || !p.pdf.is_finite() {
        return Err(Error::Singular(
            "proxy S needs a strictly decreasing finite density",
        ));
    }
    let s = -p.pdf * p.pdf / p.pdf_derivative;
    if !s.is_finite() {
        return Err(Error::Singular(
            "proxy S overflows where the density is nearly flat",
        ));
    }
    Ok(s)
}

/// Which smoothness product divides the gap.
///
/// The headline statement uses `β³B₁`; the longer derivation carries `β³B₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapDenominator {
    /// `β³·B₁`.
    #[default]
    BetaCubedB1,
    /// `β³·B₂`.
    BetaCubedB2,
}

impl GapDenominator {
    /// The denominator value for `bounds`.
    pub fn value(self, bounds: &WellBehavedBounds) -> f64 {
        let beta3 = bounds.beta * bounds.beta * bounds.beta;
        match self {
            Self::BetaCubedB1 => beta3 * bounds.b1,
            Self::BetaCubedB2 => beta3 * bounds.b2,
        }
    }
}

/// Light threshold `1 − z` and the separation to the heavy class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdGap {
    /// `1 − z`.
    pub threshold: f64,
    /// `α(1 − z)²/D`.
    pub gap: f64,
}

impl ThresholdGap {
    /// Decision boundary halfway into the gap: `threshold − gap/2`.
    pub fn boundary(&self) -> f64 {
        self.threshold - 0.5 * self.gap
    }
}

/// Threshold `1 − z` and gap `α(1 − z)²/D` at mass `z`.
///
/// `alpha` may be zero here (zero drop, zero gap).
pub fn threshold_and_gap(
    z: f64,
    alpha: f64,
    bounds: &WellBehavedBounds,
    denominator: GapDenominator,
) -> Result<ThresholdGap> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain {
            what: "mass z",
            value: z,
        });
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must be non-negative and finite",
        });
    }
    bounds.validate()?;
    let threshold = 1.0 - z;
    Ok(ThresholdGap {
        threshold,
        gap: alpha * threshold * threshold / denominator.value(bounds),
    })
}

/// One entry of a [`ProxyCurve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProxyPoint {
    /// Mass `z`.
    pub z: f64,
    /// `S(z)`.
    pub s: f64,
    /// `1 − z`.
    pub threshold: f64,
    /// Gap at `z`.
    pub gap: f64,
}

/// `S` with thresholds and gaps on an increasing mass grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProxyCurve {
    /// Entries in increasing `z`.
    pub entries: Vec<ProxyPoint>,
}

impl ProxyCurve {
    /// Evaluates the curve at `z = i/k` for `i = 1..k`.
    ///
    /// Points where `S` is singular are skipped.
    pub fn at_bucket_starts(
        model: &DistributionModel,
        k: usize,
        alpha: f64,
        bounds: &WellBehavedBounds,
        denominator: GapDenominator,
    ) -> Result<Self> {
        if k < 2 {
            return Err(Error::Shape(alloc::format!(
                "k = {k} leaves no interior bucket"
            )));
        }
        let mut entries = Vec::with_capacity(k - 1);
        for i in 1..k {
            let z = i as f64 / k as f64;
            let s = match proxy_s(model, z) {
                Ok(s) => s,
                Err(Error::Singular(_)) => continue,
                Err(e) => return Err(e),
            };
            let tg = threshold_and_gap(z, alpha, bounds, denominator)?;
            entries.push(ProxyPoint {
                z,
                s,
                threshold: tg.threshold,
                gap: tg.gap,
            });
        }
        Ok(Self { entries })
    }
}

/// Two-granularity difference-quotient proxy at `y = i/k`.
///
/// With `Δ₁ = 1/k²` and `Δ₂ = 1/k`:
///
/// ```text
/// S̃ = (I(y+Δ₁) − I(y)) / (k·(I(y+Δ₂+Δ₁) − I(y+Δ₂) − I(y+Δ₁) + I(y)))
/// ```
///
/// The denominator is oriented so that decreasing densities give a positive
/// value. Defined for `1 ≤ i ≤ k − 2`, `k ≥ 4`.
pub fn discrete_s_tilde(model: &DistributionModel, i: usize, k: usize) -> Result<f64> {
    if k < 4 || i < 1 || i + 2 > k {
        return Err(Error::Shape(alloc::format!(
            "bucket index {i} outside [1, k-2] for k = {k} (k >= 4)"
        )));
    }
    let kk = (k * k) as f64;
    let at = |num: usize| model.quantile(num as f64 / kk);
    let base = at(i * k)?;
    let fine = at(i * k + 1)?;
    let next = at((i + 1) * k)?;
    let next_fine = at((i + 1) * k + 1)?;
    s_tilde_from_endpoints(base, fine, next, next_fine, k)
}

/// `S̃` from four bucket endpoints:
/// `(fine − base) / (k·((next_fine − next) − (fine − base)))`.
pub(crate) fn s_tilde_from_endpoints(
    base: f64,
    fine: f64,
    next: f64,
    next_fine: f64,
    k: usize,
) -> Result<f64> {
    let short = fine - base;
    let long = next_fine - next;
    let curvature = long - short;
    if curvature <= 0.0 || curvature.is_nan() {
        return Err(Error::Singular("S-tilde denominator is not positive"));
    }
    Ok(short / (k as f64 * curvature))
}
