use fracstable::sampling::{sample_positive_stable, RngStream, StableIndex};
use fracstable::special::{bessel_k, mittag_leffler, rgamma, solve_depressed_cubic, MLParams};
use fracstable::spectral::*;
use fracstable::subordinator::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.1f64..5.0, 0.1f64..=1.0), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_frequency_conserves_mass(terms in spec_strategy(), beta in 0.2f64..=1.0, c in 0.1f64..3.0,
                                     re in 0.01f64..20.0, im in -20.0f64..20.0) {
        let p = ModelParams::new(SubordinatorSpec::new(&terms).unwrap(), beta, c, 2).unwrap();
        let mu = Complex64::new(re, im);
        let v = cf_laplace(&p, &SpectralQuery::laplace(0.0, mu)).unwrap();
        prop_assert!((v - 1.0 / mu).norm() <= 1e-14 * (1.0 / mu).norm());
    }

    #[test]
    fn time_domain_cf_is_bounded(terms in spec_strategy(), beta in 0.3f64..=1.0, c in 0.2f64..2.0,
                                 xi in 0.0f64..6.0, t in 0.05f64..5.0) {
        let p = ModelParams::new(SubordinatorSpec::new(&terms).unwrap(), beta, c, 1).unwrap();
        let tol = 1e-7;
        let v = cf_time(&p, &SpectralQuery::time(xi, t), tol).unwrap();
        prop_assert!(v.abs() <= 1.0 + tol, "{v}");
    }

    #[test]
    fn paths_are_monotone(terms in spec_strategy(), seed in any::<u64>(), steps in prop::collection::vec(1e-3f64..2.0, 1..20)) {
        let spec = SubordinatorSpec::new(&terms).unwrap();
        let mut grid = vec![0.0];
        for s in steps {
            let last = *grid.last().unwrap();
            grid.push(last + s);
        }
        let path = simulate_h_path(&spec, &grid, &mut RngStream::new(seed, 0).generator()).unwrap();
        prop_assert_eq!(path.values[0], 0.0);
        prop_assert!(path.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn first_passage_brackets_the_level(terms in spec_strategy(), seed in any::<u64>(), t in 0.01f64..10.0) {
        let spec = SubordinatorSpec::new(&terms).unwrap();
        let mut path = PassagePath::new(&spec, 0.1 * t).unwrap();
        let mut g = RngStream::new(seed, 1).generator();
        let tol = 1e-6 * t;
        let l = path.first_passage(t, tol, &mut g).unwrap();
        prop_assert!(l >= 0.0);
        let nodes: Vec<(f64, f64)> = path.nodes().collect();
        // H is below the level at l and above it within tol
        let below = nodes.iter().filter(|(s, _)| *s <= l).map(|(_, h)| *h).fold(0.0, f64::max);
        let above = nodes.iter().filter(|(s, _)| *s <= l + tol * (1.0 + 1e-9)).map(|(_, h)| *h).fold(0.0, f64::max);
        prop_assert!(below <= t && above >= t, "{below} {above}");
    }

    #[test]
    fn stable_draws_are_positive(nu in 0.02f64..=1.0, t in 1e-6f64..1e6, seed in any::<u64>()) {
        let nu = StableIndex::new(nu).unwrap();
        let mut g = RngStream::new(seed, 2).generator();
        for _ in 0..32 {
            prop_assert!(sample_positive_stable(nu, t, &mut g).unwrap() > 0.0);
        }
    }

    #[test]
    fn bessel_k_is_positive_and_decreasing(nu in 0.0f64..6.0, x in 0.01f64..50.0) {
        let a = bessel_k(nu, x).unwrap();
        let b = bessel_k(nu, x * 1.01).unwrap();
        prop_assert!(a > 0.0 && b < a);
    }

    #[test]
    fn mittag_leffler_at_origin(psi in 0.1f64..2.0, theta in 0.1f64..3.0) {
        let v = mittag_leffler(MLParams::new(psi, theta, Complex64::new(0.0, 0.0))).unwrap();
        prop_assert!((v.re - rgamma(theta)).abs() <= 1e-15 * rgamma(theta).abs().max(1.0) && v.im == 0.0);
    }

    #[test]
    fn cubic_roots_pair_up(p in -10.0f64..10.0, q in -10.0f64..10.0) {
        let roots = solve_depressed_cubic(p, q).unwrap();
        let r = roots.roots;
        for z in r {
            let res = z * z * z + p * z + q;
            prop_assert!(res.norm() <= 1e-10 * (1.0 + p.abs() + q.abs()));
            prop_assert!(r.iter().any(|w| *w == z.conj()), "{r:?}");
        }
    }

    #[test]
    fn limit_density_is_radial(lambdas in prop::collection::vec(0.1f64..4.0, 1..4), c in 0.2f64..3.0,
                               x in prop::collection::vec(-3.0f64..3.0, 1..5)) {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(r > 1e-6);
        let v = limit_density(&lambdas, c, &x).unwrap();
        let w = limit_density_radial(lambdas.iter().sum(), c, x.len(), r).unwrap();
        prop_assert!(v > 0.0 && v == w);
    }
}
