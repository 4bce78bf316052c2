mod common;

use common::*;
use ks2d::calculus::{advection, curl_free_projection, divergence, perp_curl, speed_sq};
use ks2d::diagnostics::energy_budget;
use ks2d::{dealiased_product, Grid, ModelKind, ModelSpec, SpectralField};
use proptest::prelude::*;

fn grid() -> Grid {
    Grid::new(16).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn physical_round_trip(seed in any::<u64>(), k in 1.0f64..7.0) {
        let f = random_scalar(grid(), k, false, &mut rng(seed));
        let back = SpectralField::from_physical(grid(), &f.to_physical()).unwrap();
        prop_assert!((&back - &f).l2_norm() <= 1e-14 * f.l2_norm().max(1.0));
    }

    #[test]
    fn product_commutes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_scalar(grid(), 7.0, false, &mut r);
        let b = random_scalar(grid(), 7.0, false, &mut r);
        let ab = dealiased_product(&a, &b).unwrap();
        let ba = dealiased_product(&b, &a).unwrap();
        prop_assert!((&ab - &ba).l2_norm() <= 1e-14 * ab.l2_norm().max(1.0));
    }

    #[test]
    fn projection_splits_orthogonally(seed in any::<u64>(), cut in 0.0f64..11.0) {
        let f = random_scalar(grid(), 10.0, false, &mut rng(seed));
        let (lo, hi) = (f.project_low(cut), f.project_high(cut));
        prop_assert_eq!(&(&lo + &hi) - &f, SpectralField::zeros(grid()));
        let total = f.l2_norm().powi(2);
        prop_assert!((lo.l2_norm().powi(2) + hi.l2_norm().powi(2) - total).abs() <= 1e-12 * total);
    }

    #[test]
    fn helmholtz_parts(seed in any::<u64>()) {
        let u = random_vector(grid(), 7.0, false, &mut rng(seed));
        let p = curl_free_projection(&u);
        prop_assert!(perp_curl(&p).max_abs_physical() <= 1e-12 * u.l2_norm());
        prop_assert!(divergence(&(&u - &p)).max_abs_physical() <= 1e-12 * u.l2_norm());
    }

    #[test]
    fn budget_closes(seed in any::<u64>(), cut in 0.5f64..8.0, lambda in 0.0f64..5.0) {
        let u = random_curl_free(grid(), 6.0, &mut rng(seed));
        let eb = energy_budget(&u, &ModelSpec::new(ModelKind::Kse, lambda), cut);
        prop_assert!(eb.closure_residual() < 1e-9);
    }

    #[test]
    fn gradient_trilinear_identity(seed in any::<u64>()) {
        let u = random_curl_free(grid(), 5.0, &mut rng(seed));
        let a = advection(&u, &u).inner(&u);
        let b = -0.5 * divergence(&u).inner(&speed_sq(&u));
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1e-300));
    }

    #[test]
    fn norms_are_monotone_in_order(seed in any::<u64>(), k1 in -2.0f64..3.0, dk in 0.0f64..2.0) {
        let f = random_scalar(grid(), 7.0, true, &mut rng(seed));
        // mean-free with |ℓ| ≥ 1, so homogeneous norms grow with the order
        prop_assert!(f.sobolev_norm(k1, true) <= f.sobolev_norm(k1 + dk, true) * (1.0 + 1e-14));
    }
}
