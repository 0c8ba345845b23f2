use proptest::prelude::*;
use tailprobe_core::proxy::{discrete_s_tilde, proxy_s};
use tailprobe_core::DistributionModel;

fn grid() -> impl Iterator<Item = f64> {
    (1..=99).map(|j| j as f64 / 100.0)
}

#[test]
fn exponential_proxy_is_one_minus_z() {
    for rate in [0.5, 1.0, 2.0] {
        let m = DistributionModel::exponential(rate).unwrap();
        for z in grid() {
            let s = proxy_s(&m, z).unwrap();
            assert!((s - (1.0 - z)).abs() <= 1e-9, "rate {rate} z {z}: {s}");
        }
    }
}

#[test]
fn lomax_proxy_closed_form() {
    for a in [0.5, 1.0, 2.0] {
        for scale in [0.5, 1.0, 2.0] {
            let m = DistributionModel::lomax(a, scale).unwrap();
            for z in grid() {
                let s = proxy_s(&m, z).unwrap();
                let want = a / (a + 1.0) * (1.0 - z);
                assert!((s - want).abs() <= 1e-9, "a {a} scale {scale} z {z}");
            }
        }
    }
}

#[test]
fn half_gaussian_sits_above_exponential() {
    let m = DistributionModel::half_gaussian(1.0).unwrap();
    for z in grid() {
        assert!(proxy_s(&m, z).unwrap() > 1.0 - z, "z {z}");
    }
}

#[test]
fn stretched_exponential_sits_below_on_heavy_mass() {
    let m = DistributionModel::stretched_exponential(1.0, 0.5).unwrap();
    let cut = 1.0 - (-1.0f64).exp();
    for z in grid().filter(|z| *z < cut) {
        assert!(proxy_s(&m, z).unwrap() < 1.0 - z, "z {z}");
    }
}

// Max |S̃ − S| over the tester's bucket range, skipping buckets where S > 1
// (the half-Gaussian proxy diverges as z → 0, f′(0) = 0).
fn max_discretisation_error(m: &DistributionModel, k: usize) -> f64 {
    (2..=k - 2)
        .filter_map(|i| {
            let z = i as f64 / k as f64;
            let s = proxy_s(m, z).unwrap();
            (s <= 1.0).then(|| (discrete_s_tilde(m, i, k).unwrap() - s).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn s_tilde_error_shrinks_with_k() {
    let models = [
        DistributionModel::exponential(1.0).unwrap(),
        DistributionModel::lomax(1.0, 1.0).unwrap(),
        DistributionModel::half_gaussian(1.0).unwrap(),
        DistributionModel::stretched_exponential(1.0, 0.5).unwrap(),
    ];
    for m in &models {
        let e32 = max_discretisation_error(m, 32);
        let e64 = max_discretisation_error(m, 64);
        let e128 = max_discretisation_error(m, 128);
        assert!(e64 <= 0.75 * e32, "{m:?}: {e32} -> {e64}");
        assert!(e128 <= 0.75 * e64, "{m:?}: {e64} -> {e128}");
    }
}

#[test]
fn s_tilde_within_corollary_bound() {
    let k = 64;
    let zeta = 1.0 / (2.0 * k as f64);
    for m in [
        DistributionModel::exponential(1.0).unwrap(),
        DistributionModel::lomax(1.0, 1.0).unwrap(),
    ] {
        let b = m.estimate_bounds(zeta).unwrap();
        let eps = 6.0 * b.beta * (2.0 * b.b1 + b.b2) / k as f64;
        assert!(max_discretisation_error(&m, k) <= eps);
    }
}

proptest! {
    #[test]
    fn proxy_is_scale_free(c in 0.05f64..20.0, z in 0.01f64..0.99) {
        for m in [
            DistributionModel::exponential(1.3).unwrap(),
            DistributionModel::lomax(1.7, 0.8).unwrap(),
            DistributionModel::half_gaussian(2.0).unwrap(),
            DistributionModel::stretched_exponential(0.7, 0.6).unwrap(),
        ] {
            let s = proxy_s(&m, z).unwrap();
            let t = proxy_s(&m.scaled(c).unwrap(), z).unwrap();
            prop_assert!((s - t).abs() <= 1e-12 * s.abs().max(1.0));
        }
    }

    #[test]
    fn lomax_proxy_below_exponential(a in 0.2f64..10.0, z in 0.001f64..0.999) {
        let m = DistributionModel::lomax(a, 1.0).unwrap();
        prop_assert!(proxy_s(&m, z).unwrap() < 1.0 - z);
    }
}
