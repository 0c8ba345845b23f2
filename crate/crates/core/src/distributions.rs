//! Analytic distribution families on `[0, ∞)` with monotone non-increasing
//! densities, their hazard rates, seeded inverse-transform sampling, and two
//! model-side oracles: the tail classifier and the smoothness-bound
//! estimator.
//!
//! | family                | parameters          | `F⁻¹(u)`                    |
//! |-----------------------|---------------------|-----------------------------|
//! | exponential           | rate `λ`            | `−ln(1−u)/λ`                |
//! | Lomax                 | shape `a`, scale `λ`| `λ((1−u)^(−1/a) − 1)`       |
//! | half-Gaussian         | scale `σ`           | `σ√2·erf⁻¹(u)`              |
//! | stretched exponential | rate `γ`, `0<m<1`   | `(−ln(1−u)/γ)^(1/m)`        |

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::special::erf_inv;

/// Tolerance under which a hazard-rate derivative still counts as
/// non-decreasing (absorbs round-off on the exponential's exact zero).
pub const LIGHT_TOLERANCE: f64 = 1e-12;

/// Grid size used by [`DistributionModel::estimate_bounds`].
pub const BOUNDS_GRID: usize = 10_000;

/// Distribution family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `f(x) = λe^{−λx}`.
    Exponential,
    /// `f(x) = (a/λ)(1 + x/λ)^{−(a+1)}`.
    Lomax,
    /// `f(x) = 2/(σ√(2π)) e^{−x²/(2σ²)}`.
    HalfGaussian,
    /// `F(x) = 1 − e^{−γx^m}`, `0 < m < 1`.
    StretchedExponential,
}

/// A parameterised analytic distribution.
///
/// Construct through the checked constructors; variants built by hand are
/// re-validated by every operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionModel {
    /// Exponential with rate `λ`.
    Exponential {
        /// `λ > 0`.
        rate: f64,
    },
    /// Lomax (shifted Pareto) with shape `a` and scale `λ`.
    Lomax {
        /// `a > 0`.
        shape: f64,
        /// `λ > 0`.
        scale: f64,
    },
    /// Half-Gaussian with scale `σ`.
    HalfGaussian {
        /// `σ > 0`.
        scale: f64,
    },
    /// Stretched exponential (Weibull with shape below one).
    StretchedExponential {
        /// `γ > 0`.
        rate: f64,
        /// `0 < m < 1`.
        exponent: f64,
    },
}

/// Density, distribution function and density slope at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEval {
    /// `f(x)`.
    pub pdf: f64,
    /// `F(x)`.
    pub cdf: f64,
    /// `f'(x)`.
    pub pdf_derivative: f64,
}

/// Hazard rate `f/(1−F)` and its derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hazard {
    /// `H(x)`.
    pub rate: f64,
    /// `H'(x)`.
    pub rate_derivative: f64,
}

/// Classification parameters: hazard-rate drop `α` over a region of mass `ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailParams {
    /// Magnitude the hazard-rate derivative must stay below (negated).
    pub alpha: f64,
    /// Probability mass of the heavy region.
    pub rho: f64,
}

impl TailParams {
    /// Checked constructor: `α > 0`, `0 < ρ < 1`.
    pub fn new(alpha: f64, rho: f64) -> Result<Self> {
        let tail = Self { alpha, rho };
        tail.validate()?;
        Ok(tail)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        positive("alpha", self.alpha)?;
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidParameter {
                name: "rho",
                value: self.rho,
                reason: "must lie in (0, 1)",
            });
        }
        Ok(())
    }
}

/// Smoothness constants of a well-behaved distribution.
///
/// `beta` bounds the density, `b1` and `b2` are Lipschitz constants of the
/// first and second derivatives of `F⁻¹` on `[0, 1 − zeta]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellBehavedBounds {
    /// `β = sup f`.
    pub beta: f64,
    /// `B₁`.
    pub b1: f64,
    /// `B₂`.
    pub b2: f64,
    /// Edge margin `ζ`.
    pub zeta: f64,
}

impl WellBehavedBounds {
    /// Checked constructor: all of `β, B₁, B₂` positive and finite, `0 < ζ < 1`.
    pub fn new(beta: f64, b1: f64, b2: f64, zeta: f64) -> Result<Self> {
        let bounds = Self { beta, b1, b2, zeta };
        bounds.validate()?;
        Ok(bounds)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        positive("beta", self.beta)?;
        positive("b1", self.b1)?;
        positive("b2", self.b2)?;
        if !(self.zeta > 0.0 && self.zeta < 1.0) {
            return Err(Error::InvalidParameter {
                name: "zeta",
                value: self.zeta,
                reason: "must lie in (0, 1)",
            });
        }
        Ok(())
    }
}

/// Ground-truth tail class from the hazard-rate definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailClass {
    /// Hazard rate non-decreasing everywhere on the grid.
    Light,
    /// `H' < −α` on a contiguous region of mass at least `ρ`.
    HeavyAtLeast,
    /// Neither of the above.
    Indeterminate,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

impl DistributionModel {
    /// Exponential with rate `λ`.
    pub fn exponential(rate: f64) -> Result<Self> {
        Self::Exponential { rate }.validated()
    }

    /// Lomax with shape `a` and scale `λ`.
    pub fn lomax(shape: f64, scale: f64) -> Result<Self> {
        Self::Lomax { shape, scale }.validated()
    }

    /// Half-Gaussian with scale `σ`.
    pub fn half_gaussian(scale: f64) -> Result<Self> {
        Self::HalfGaussian { scale }.validated()
    }

    /// Stretched exponential with rate `γ` and exponent `0 < m < 1`.
    pub fn stretched_exponential(rate: f64, exponent: f64) -> Result<Self> {
        Self::StretchedExponential { rate, exponent }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Checks every parameter against its admissible range.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Exponential { rate } => positive("lambda", rate),
            Self::Lomax { shape, scale } => {
                positive("a", shape)?;
                positive("lambda", scale)
            }
            Self::HalfGaussian { scale } => positive("sigma", scale),
            Self::StretchedExponential { rate, exponent } => {
                positive("gamma", rate)?;
                if exponent > 0.0 && exponent < 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "m",
                        value: exponent,
                        reason: "must lie in (0, 1)",
                    })
                }
            }
        }
    }

    /// Family tag.
    pub fn family(&self) -> Family {
        match self {
            Self::Exponential { .. } => Family::Exponential,
            Self::Lomax { .. } => Family::Lomax,
            Self::HalfGaussian { .. } => Family::HalfGaussian,
            Self::StretchedExponential { .. } => Family::StretchedExponential,
        }
    }

    /// The same family with `x` scaled by `c > 0` (the law of `c·X`).
    pub fn scaled(&self, c: f64) -> Result<Self> {
        positive("c", c)?;
        match *self {
            Self::Exponential { rate } => Self::exponential(rate / c),
            Self::Lomax { shape, scale } => Self::lomax(shape, scale * c),
            Self::HalfGaussian { scale } => Self::half_gaussian(scale * c),
            Self::StretchedExponential { rate, exponent } => {
                Self::stretched_exponential(rate * libm::pow(c, -exponent), exponent)
            }
        }
    }

    fn check_x(&self, x: f64) -> Result<()> {
        self.validate()?;
        if x >= 0.0 && !x.is_nan() {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "x",
                value: x,
            })
        }
    }

    /// `f(x)`, `F(x)` and `f'(x)` from the closed forms.
    ///
    /// The stretched exponential has an integrable singularity at the
    /// origin: `f(0) = +∞`, `f'(0) = −∞`.
    pub fn evaluate(&self, x: f64) -> Result<PointEval> {
        self.check_x(x)?;
        let (pdf, cdf, slope) = match *self {
            Self::Exponential { rate } => {
                let pdf = rate * libm::exp(-rate * x);
                (pdf, -libm::expm1(-rate * x), -rate * pdf)
            }
            Self::Lomax { shape, scale } => {
                let t = 1.0 + x / scale;
                let pdf = shape / scale * libm::pow(t, -(shape + 1.0));
                let cdf = -libm::expm1(-shape * libm::log1p(x / scale));
                (pdf, cdf, -(shape + 1.0) / (scale * t) * pdf)
            }
            Self::HalfGaussian { scale } => {
                let t = x / scale;
                let pdf = 2.0 / (scale * libm::sqrt(2.0 * PI)) * libm::exp(-0.5 * t * t);
                let cdf = libm::erf(t / core::f64::consts::SQRT_2);
                (pdf, cdf, -x / (scale * scale) * pdf)
            }
            Self::StretchedExponential { rate, exponent } => {
                if x == 0.0 {
                    (f64::INFINITY, 0.0, f64::NEG_INFINITY)
                } else {
                    let xm = libm::pow(x, exponent);
                    let pdf = rate * exponent * xm / x * libm::exp(-rate * xm);
                    let cdf = -libm::expm1(-rate * xm);
                    let log_slope = (exponent - 1.0) / x - rate * exponent * xm / x;
                    (pdf, cdf, pdf * log_slope)
                }
            }
        };
        Ok(PointEval {
            pdf,
            cdf,
            pdf_derivative: slope,
        })
    }

    /// Survival function `1 − F(x)`, computed without cancellation.
    pub fn survival(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        Ok(match *self {
            Self::Exponential { rate } => libm::exp(-rate * x),
            Self::Lomax { shape, scale } => libm::exp(-shape * libm::log1p(x / scale)),
            Self::HalfGaussian { scale } => libm::erfc(x / (scale * core::f64::consts::SQRT_2)),
            Self::StretchedExponential { rate, exponent } => {
                libm::exp(-rate * libm::pow(x, exponent))
            }
        })
    }

    /// Quantile function `F⁻¹(u)` on `[0, 1)`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        self.validate()?;
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain {
                what: "probability u",
                value: u,
            });
        }
        // −ln(1−u), accurate for small u
        let neg_log_surv = -libm::log1p(-u);
        Ok(match *self {
            Self::Exponential { rate } => neg_log_surv / rate,
            Self::Lomax { shape, scale } => scale * libm::expm1(neg_log_surv / shape),
            Self::HalfGaussian { scale } => scale * core::f64::consts::SQRT_2 * erf_inv(u),
            Self::StretchedExponential { rate, exponent } => {
                libm::pow(neg_log_surv / rate, 1.0 / exponent)
            }
        })
    }

    /// Hazard rate and its analytic derivative.
    ///
    /// Refuses points where `1 − F(x)` underflows to zero.
    pub fn hazard(&self, x: f64) -> Result<Hazard> {
        let survival = self.survival(x)?;
        if survival <= 0.0 {
            return Err(Error::Domain {
                what: "x (1 - F(x) underflows)",
                value: x,
            });
        }
        Ok(match *self {
            Self::Exponential { rate } => Hazard {
                rate,
                rate_derivative: 0.0,
            },
            Self::Lomax { shape, scale } => {
                let t = scale + x;
                Hazard {
                    rate: shape / t,
                    rate_derivative: -shape / (t * t),
                }
            }
            Self::HalfGaussian { scale } => {
                let pdf = self.evaluate(x)?.pdf;
                let rate = pdf / survival;
                // H' = H (H + f'/f) with f'/f = −x/σ²
                Hazard {
                    rate,
                    rate_derivative: rate * (rate - x / (scale * scale)),
                }
            }
            Self::StretchedExponential { rate, exponent } => Hazard {
                rate: rate * exponent * libm::pow(x, exponent - 1.0),
                rate_derivative: rate * exponent * (exponent - 1.0) * libm::pow(x, exponent - 2.0),
            },
        })
    }

    /// Second derivative of the quantile function,
    /// `(F⁻¹)''(y) = −f'(x)/f(x)³` at `x = F⁻¹(y)`.
    pub fn quantile_second_derivative(&self, y: f64) -> Result<f64> {
        let x = self.quantile(y)?;
        let p = self.evaluate(x)?;
        Ok(-p.pdf_derivative / (p.pdf * p.pdf * p.pdf))
    }

    /// `n` inverse-transform samples from a seeded generator.
    ///
    /// The generator is ChaCha8 seeded through `seed_from_u64(seed)`. Each
    /// variate takes the top 52 bits `m` of one `next_u64()` and maps them to
    /// `u = (m + ½)·2⁻⁵²`, which lies strictly inside `(0, 1)`; the sample is
    /// `F⁻¹(u)`. The output depends only on `(model, n, seed)`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| self.quantile(open_unit(rng.next_u64())))
            .collect()
    }

    /// Ground-truth classification on the quantile grid `y_j = j/N`,
    /// `j = 0..N`, each point carrying mass `1/N`.
    ///
    /// `Light` when every `H'` is at least `−1e-12`; `HeavyAtLeast` when some
    /// contiguous run with `H' < −α` carries mass `≥ ρ`.
    pub fn classify_tail(&self, tail: &TailParams, grid_size: usize) -> Result<TailClass> {
        self.validate()?;
        tail.validate()?;
        if grid_size < 100 {
            return Err(Error::Shape(alloc::format!(
                "grid_size {grid_size} below the minimum of 100"
            )));
        }
        let mut light = true;
        let mut run = 0usize;
        let mut longest = 0usize;
        for j in 0..grid_size {
            let x = self.quantile(j as f64 / grid_size as f64)?;
            let d = self.hazard(x)?.rate_derivative;
            if d < -LIGHT_TOLERANCE {
                light = false;
            }
            if d < -tail.alpha {
                run += 1;
                longest = longest.max(run);
            } else {
                run = 0;
            }
        }
        Ok(if light {
            TailClass::Light
        } else if longest as f64 / grid_size as f64 >= tail.rho {
            TailClass::HeavyAtLeast
        } else {
            TailClass::Indeterminate
        })
    }

    /// Grid estimate of the smoothness constants on `[0, 1 − ζ]`.
    ///
    /// `β` is the largest finite density on the grid (`f(0)` whenever that
    /// is finite). `B₁` is the grid maximum of `(F⁻¹)''`, `B₂` the grid
    /// maximum of `|(F⁻¹)'''|` by central differences of `(F⁻¹)''` with step
    /// `min(1e-5, ζ/10)` (forward difference at `y = 0`). Non-finite grid
    /// values, such as the stretched exponential at the origin, are skipped.
    pub fn estimate_bounds(&self, zeta: f64) -> Result<WellBehavedBounds> {
        self.validate()?;
        if !(zeta > 0.0 && zeta < 1.0) {
            return Err(Error::InvalidParameter {
                name: "zeta",
                value: zeta,
                reason: "must lie in (0, 1)",
            });
        }
        let top = 1.0 - zeta;
        let step = (zeta / 10.0).min(1e-5);
        let (mut beta, mut b1, mut b2) = (0.0f64, 0.0f64, 0.0f64);
        for j in 0..BOUNDS_GRID {
            let y = top * j as f64 / (BOUNDS_GRID - 1) as f64;
            let x = self.quantile(y)?;
            let pdf = self.evaluate(x)?.pdf;
            if pdf.is_finite() {
                beta = beta.max(pdf);
            }
            let second = self.quantile_second_derivative(y)?;
            if second.is_finite() {
                b1 = b1.max(second);
            }
            let third = if y < step {
                (self.quantile_second_derivative(y + step)? - second) / step
            } else {
                (self.quantile_second_derivative(y + step)?
                    - self.quantile_second_derivative(y - step)?)
                    / (2.0 * step)
            };
            if third.is_finite() {
                b2 = b2.max(third.abs());
            }
        }
        WellBehavedBounds::new(beta, b1, b2, zeta)
    }
}

/// Maps 64 random bits to the open unit interval on a 2⁻⁵² grid offset by
/// half a cell.
pub fn open_unit(bits: u64) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
    ((bits >> 12) as f64 + 0.5) * SCALE
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn all_models() -> [DistributionModel; 4] {
        [
            DistributionModel::exponential(1.3).unwrap(),
            DistributionModel::lomax(1.5, 0.7).unwrap(),
            DistributionModel::half_gaussian(2.0).unwrap(),
            DistributionModel::stretched_exponential(1.0, 0.5).unwrap(),
        ]
    }

    #[test]
    fn evaluate_examples() {
        let e = DistributionModel::exponential(1.0)
            .unwrap()
            .evaluate(0.0)
            .unwrap();
        assert_eq!((e.pdf, e.cdf, e.pdf_derivative), (1.0, 0.0, -1.0));
        let l = DistributionModel::lomax(1.0, 1.0)
            .unwrap()
            .evaluate(1.0)
            .unwrap();
        assert!(close(l.pdf, 0.25, 1e-15));
        assert!(close(l.cdf, 0.5, 1e-15));
        assert!(close(l.pdf_derivative, -0.25, 1e-15));
        for m in all_models() {
            assert_eq!(m.evaluate(0.0).unwrap().cdf, 0.0);
        }
    }

    #[test]
    fn quantile_examples() {
        let e = DistributionModel::exponential(1.0).unwrap();
        assert!(close(
            e.quantile(0.5).unwrap(),
            core::f64::consts::LN_2,
            1e-15
        ));
        let l = DistributionModel::lomax(1.0, 1.0).unwrap();
        assert!(close(l.quantile(0.5).unwrap(), 1.0, 1e-15));
        for m in all_models() {
            assert_eq!(m.quantile(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn domain_errors() {
        let e = DistributionModel::exponential(1.0).unwrap();
        assert!(matches!(e.evaluate(-1.0), Err(Error::Domain { .. })));
        assert!(matches!(e.quantile(1.0), Err(Error::Domain { .. })));
        assert!(matches!(e.quantile(-0.1), Err(Error::Domain { .. })));
        assert!(DistributionModel::exponential(0.0).is_err());
        assert!(DistributionModel::lomax(1.0, -2.0).is_err());
        assert!(DistributionModel::stretched_exponential(1.0, 1.0).is_err());
        assert!(DistributionModel::Exponential { rate: f64::NAN }
            .evaluate(1.0)
            .is_err());
        // 1 − F underflows deep in the Gaussian tail
        let h = DistributionModel::half_gaussian(1.0).unwrap();
        assert!(matches!(h.hazard(40.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn hazard_examples() {
        let e = DistributionModel::exponential(2.0).unwrap();
        for x in [0.0, 0.3, 7.0] {
            assert_eq!(
                e.hazard(x).unwrap(),
                Hazard {
                    rate: 2.0,
                    rate_derivative: 0.0
                }
            );
        }
        let l = DistributionModel::lomax(1.0, 1.0)
            .unwrap()
            .hazard(0.0)
            .unwrap();
        assert_eq!((l.rate, l.rate_derivative), (1.0, -1.0));
        let h = DistributionModel::half_gaussian(1.0)
            .unwrap()
            .hazard(0.0)
            .unwrap();
        let f0 = 2.0 / libm::sqrt(2.0 * PI);
        assert!(close(h.rate, f0, 1e-15));
        assert!(close(h.rate_derivative, f0 * f0, 1e-15));
        assert!(close(h.rate, 0.797_884_560_802_865_4, 1e-15));
        assert!(close(h.rate_derivative, 0.636_619_772_367_581_3, 1e-15));
    }

    #[test]
    fn round_trip_grid() {
        for m in all_models() {
            for j in 1..=999 {
                let u = j as f64 / 1000.0;
                let x = m.quantile(u).unwrap();
                let back = m.evaluate(x).unwrap().cdf;
                assert!((back - u).abs() <= 1e-9, "{m:?} u={u} back={back}");
            }
        }
    }

    #[test]
    fn monotone_pdf_and_cdf() {
        for m in all_models() {
            let mut prev = m.evaluate(1e-9).unwrap();
            for j in 1..2000 {
                let x = j as f64 * 0.005;
                let p = m.evaluate(x).unwrap();
                assert!(p.pdf <= prev.pdf, "{m:?} pdf rises at {x}");
                assert!(p.cdf >= prev.cdf, "{m:?} cdf falls at {x}");
                assert!(p.pdf_derivative <= 0.0);
                prev = p;
            }
        }
    }

    #[test]
    fn hazard_derivative_matches_finite_difference() {
        let zeta = 0.05;
        for m in all_models() {
            for j in 1..200 {
                let y = (1.0 - zeta) * j as f64 / 200.0;
                let x = m.quantile(y).unwrap();
                let h = 1e-4 * x;
                let lo = m.hazard(x - h).unwrap().rate;
                let hi = m.hazard(x + h).unwrap().rate;
                let numeric = (hi - lo) / (2.0 * h);
                let exact = m.hazard(x).unwrap().rate_derivative;
                let tol = (1e-4 * exact.abs()).max(1e-6);
                assert!(
                    (numeric - exact).abs() <= tol,
                    "{m:?} x={x} numeric={numeric} exact={exact}"
                );
            }
        }
    }

    #[test]
    fn sampling_is_reproducible_and_open() {
        let m = DistributionModel::exponential(1.0).unwrap();
        let a = m.sample(5, 7).unwrap();
        let b = m.sample(5, 7).unwrap();
        assert_eq!(
            a.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
        assert_ne!(a, m.sample(5, 8).unwrap());
        assert!(open_unit(0) > 0.0);
        assert!(open_unit(u64::MAX) < 1.0);
    }

    #[test]
    fn classify_examples() {
        for rate in [0.5, 1.0, 4.0] {
            let e = DistributionModel::exponential(rate).unwrap();
            for (a, r) in [(0.25, 0.5), (1.0, 0.1), (1e-3, 0.9)] {
                let tail = TailParams::new(a, r).unwrap();
                assert_eq!(e.classify_tail(&tail, 1000).unwrap(), TailClass::Light);
                let h = DistributionModel::half_gaussian(rate).unwrap();
                assert_eq!(h.classify_tail(&tail, 1000).unwrap(), TailClass::Light);
            }
        }
        let se = DistributionModel::stretched_exponential(1.0, 0.5).unwrap();
        let tail = TailParams::new(0.25, 1.0 - (-1.0f64).exp()).unwrap();
        assert_eq!(
            se.classify_tail(&tail, 1000).unwrap(),
            TailClass::HeavyAtLeast
        );

        let l = DistributionModel::lomax(1.0, 1.0).unwrap();
        for rho in [0.25, 0.5, 0.75] {
            let tail = TailParams::new((1.0 - rho) * (1.0 - rho), rho).unwrap();
            assert_eq!(
                l.classify_tail(&tail, 1000).unwrap(),
                TailClass::HeavyAtLeast
            );
        }
        // the drop never exceeds 1/λ² for Lomax{1,1}
        let tail = TailParams::new(2.0, 0.5).unwrap();
        assert_eq!(
            l.classify_tail(&tail, 1000).unwrap(),
            TailClass::Indeterminate
        );
        assert!(l.classify_tail(&tail, 99).is_err());
    }

    #[test]
    fn bounds_exponential() {
        let e = DistributionModel::exponential(1.0).unwrap();
        let b = e.estimate_bounds(0.125).unwrap();
        assert_eq!(b.beta, 1.0);
        assert!(close(b.b1, 64.0, 1e-9), "b1={}", b.b1);
        assert!((b.b2 - 1024.0).abs() / 1024.0 < 1e-6, "b2={}", b.b2);
        assert_eq!(e.quantile_second_derivative(0.0).unwrap(), 1.0);
    }

    #[test]
    fn bounds_lomax_and_stretched() {
        // (F⁻¹)'' = 2(1−y)⁻³ for Lomax{1,1}, increasing, so the max sits at 1−ζ
        let l = DistributionModel::lomax(1.0, 1.0).unwrap();
        let b = l.estimate_bounds(0.125).unwrap();
        assert_eq!(b.beta, 1.0);
        assert!((b.b1 - 1024.0).abs() < 1e-9, "b1={}", b.b1);
        // (F⁻¹)''' = 6(1−y)⁻⁴ = 24576 at y = 7/8
        assert!((b.b2 - 24576.0).abs() / 24576.0 < 1e-6, "b2={}", b.b2);

        let s = DistributionModel::stretched_exponential(1.0, 0.5).unwrap();
        let b = s.estimate_bounds(1.0 / 32.0).unwrap();
        assert!(b.beta.is_finite() && b.b1.is_finite() && b.b2.is_finite());
    }
}
