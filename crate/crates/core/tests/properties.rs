//! Randomized invariants of the polynomial, stability, representation and
//! bound layers.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use szasz::bounds::{self, ExpBound};
use szasz::detrep::{convert_bidisk, BidiskRep, CHECK_EPS};
use szasz::poly::ORDER_TOL;
use szasz::stability::{
    check_reflection, check_y_monotonicity, generate_stable_1d, generate_stable_detrep, generate_stable_product,
    generate_vanishing_product, roots_1d,
};
use szasz::verify::{self, Region, VIOLATION_TOL};
use szasz::{MultiPoly, C64};

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32, nterms: usize) -> MultiPoly {
    let terms: Vec<(Vec<u32>, C64)> = (0..nterms)
        .map(|_| {
            let exp: Vec<u32> = (0..nvars).map(|_| rng.random_range(0..=max_degree)).collect();
            (exp, C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
        })
        .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
        .collect();
    MultiPoly::from_terms(nvars, terms).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng, nvars: usize, r: f64) -> Vec<C64> {
    Region::complex(r).sample(rng, nvars)
}

#[test]
fn negation_cancels_to_empty() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let p = random_poly(&mut rng, 3, 4, 8);
        let z = &p + &(-&p);
        assert!(z.is_zero() && z.is_empty());
    }
}

/// Coefficients on a coarse dyadic grid, so sums and small integer
/// multiples are exact in floating point.
fn dyadic_poly(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32, nterms: usize) -> MultiPoly {
    let terms: Vec<(Vec<u32>, C64)> = (0..nterms)
        .map(|_| {
            let exp: Vec<u32> = (0..nvars).map(|_| rng.random_range(0..=max_degree)).collect();
            let re = rng.random_range(-64i32..=64) as f64 / 16.0;
            let im = rng.random_range(-64i32..=64) as f64 / 16.0;
            (exp, C64::new(re, im))
        })
        .collect();
    MultiPoly::from_terms(nvars, terms).unwrap()
}

#[test]
fn derivative_is_linear_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let nvars = rng.random_range(1..=3);
        let p = dyadic_poly(&mut rng, nvars, 5, 10);
        let q = dyadic_poly(&mut rng, nvars, 5, 10);
        for j in 0..nvars {
            let lhs = (&p + &q).partial_derivative(j).unwrap();
            let rhs = &p.partial_derivative(j).unwrap() + &q.partial_derivative(j).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn derivative_is_linear_to_rounding() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let nvars = rng.random_range(1..=3);
        let p = random_poly(&mut rng, nvars, 5, 10);
        let q = random_poly(&mut rng, nvars, 5, 10);
        for j in 0..nvars {
            let lhs = (&p + &q).partial_derivative(j).unwrap();
            let rhs = &p.partial_derivative(j).unwrap() + &q.partial_derivative(j).unwrap();
            let diff = &lhs - &rhs;
            assert!(diff.max_abs_coeff() <= 4.0 * f64::EPSILON * lhs.max_abs_coeff().max(1.0));
        }
    }
}

#[test]
fn derivative_matches_central_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = 1e-5;
    for _ in 0..300 {
        let nvars = rng.random_range(1..=3);
        let p = random_poly(&mut rng, nvars, 5, 12);
        let z = random_point(&mut rng, nvars, 1.0);
        for j in 0..nvars {
            let mut plus = z.clone();
            let mut minus = z.clone();
            plus[j] += h;
            minus[j] -= h;
            let fd = (p.evaluate(&plus).unwrap() - p.evaluate(&minus).unwrap()) / (2.0 * h);
            let exact = p.partial_derivative(j).unwrap().evaluate(&z).unwrap();
            assert!((fd - exact).norm() <= 1e-5, "{fd} vs {exact}");
        }
    }
}

#[test]
fn homogeneous_parts_reassemble_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let nvars = rng.random_range(1..=3);
        let p = random_poly(&mut rng, nvars, 6, 12);
        if p.is_zero() {
            continue;
        }
        let h = p.homogeneous_parts(ORDER_TOL).unwrap();
        assert_eq!(h.reassemble(), p);
    }
}

#[test]
fn plane_restriction_commutes_with_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let nvars = rng.random_range(1..=3);
        let p = random_poly(&mut rng, nvars, 4, 8);
        let u = random_point(&mut rng, nvars, 1.0);
        let v = random_point(&mut rng, nvars, 1.0);
        let q = p.restrict_to_plane(&u, &v).unwrap();
        let w = random_point(&mut rng, 2, 1.5);
        let point: Vec<C64> = u.iter().zip(&v).map(|(a, b)| w[0] * a + w[1] * b).collect();
        let want = p.evaluate(&point).unwrap();
        let got = q.evaluate(&w).unwrap();
        assert!((got - want).norm() <= 1e-10 * want.norm().max(1.0));
    }
}

#[test]
fn root_residuals_are_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let degree = rng.random_range(1..=10);
        let coeffs: Vec<C64> = (0..=degree)
            .map(|_| C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
            .collect();
        let p = MultiPoly::from_coeffs_1d(&coeffs);
        let scale: f64 = coeffs.iter().map(|c| c.norm()).sum();
        for r in roots_1d(&p).unwrap() {
            let size: f64 = coeffs.iter().enumerate().map(|(k, c)| c.norm() * r.norm().powi(k as i32)).sum();
            assert!(p.evaluate(&[r]).unwrap().norm() <= 1e-8 * size.max(scale));
        }
    }
}

fn stable_corpus() -> Vec<MultiPoly> {
    let mut v = Vec::new();
    for s in 0..20 {
        v.push(generate_stable_product(2 + s as usize % 2, 1 + s as usize % 4, s));
        v.push(generate_stable_detrep(2 + s as usize % 2, 2 + s as usize % 2, 50 + s).unwrap().1);
    }
    v
}

#[test]
fn reflection_keeps_the_upper_value_largest() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let corpus = stable_corpus();
    for k in 0..1000 {
        let p = &corpus[k % corpus.len()];
        let z = Region::upper(2.0).sample(&mut rng, p.nvars());
        let (plus, worst) = check_reflection(p, &z).unwrap();
        assert!(plus >= worst * (1.0 - 1e-12), "{plus} < {worst}");
    }
}

#[test]
fn modulus_grows_with_imaginary_part() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let corpus = stable_corpus();
    for k in 0..1000 {
        let p = &corpus[k % corpus.len()];
        let n = p.nvars();
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..=2.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=1.0)).collect();
        let yt: Vec<f64> = y.iter().map(|v| v + rng.random_range(0.0..=1.0)).collect();
        let (low, high) = check_y_monotonicity(p, &x, &y, &yt).unwrap();
        assert!(low <= high * (1.0 + 1e-12), "{low} > {high}");
    }
}

#[test]
fn detrep_polynomials_have_no_upper_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for s in 0..30 {
        let (rep, p) = generate_stable_detrep(2 + s as usize % 2, 3, 900 + s).unwrap();
        for _ in 0..100 {
            let z: Vec<C64> = Region::upper(2.0)
                .sample(&mut rng, p.nvars())
                .into_iter()
                .map(|c| C64::new(c.re, c.im.max(1e-3)))
                .collect();
            assert!(p.evaluate(&z).unwrap().norm() > 0.0);
            let direct = rep.eval(&z).unwrap();
            assert!((p.evaluate(&z).unwrap() - direct).norm() <= 1e-8 * direct.norm().max(1.0));
        }
    }
}

#[test]
fn converted_size_matches_total_degree() {
    for k in 0..20u64 {
        let n = 1 + k as usize % 3;
        let m = 1 + (k as usize / 3) % 2;
        let brep = BidiskRep::random_strict(n, m, 0.9, 70 + k);
        let conv = convert_bidisk(&brep, CHECK_EPS).unwrap();
        assert!(conv.imag_identity_residual().unwrap() <= 1e-7);
        let p = conv.rep.to_poly().unwrap();
        assert_eq!(p.total_degree() as usize, conv.rep.size());
        assert_eq!(conv.rep.size(), n + m);
    }
    for k in 0..10u64 {
        let brep = BidiskRep::random_with_fixed_space(2, 2, 1 + k as usize % 2, 0.8, 80 + k).unwrap();
        let conv = convert_bidisk(&brep, CHECK_EPS).unwrap();
        assert!(conv.imag_identity_residual().unwrap() <= 1e-7);
        assert_eq!(conv.rep.to_poly().unwrap().total_degree() as usize, conv.rep.size());
    }
}

#[test]
fn lemma_suites_at_property_scale() {
    for suite in [verify::LemmaSuite::SumB, verify::LemmaSuite::TracePm, verify::LemmaSuite::ImTrace] {
        let r = verify::lemma_trials(suite, 1000, 12, 8).unwrap();
        assert_eq!(r.violations, 0, "{}", suite.name());
    }
}

#[test]
fn real_stable_polys_satisfy_the_necessity_condition() {
    for s in 0..500 {
        let p = generate_stable_product(1, 1 + s as usize % 10, s);
        let c1 = p.coefficient(&[1]).re;
        let c2 = p.coefficient(&[2]).re;
        assert!(c1 * c1 - 2.0 * c2 >= -1e-12);
    }
}

#[test]
fn real_axis_bound_beats_msz_on_real_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let corpus = stable_corpus();
    for k in 0..1000 {
        let p = &corpus[k % corpus.len()];
        let real = bounds::real_axis_bound(p).unwrap();
        let msz = bounds::msz_bound(p).unwrap();
        let x = Region::real(3.0).sample(&mut rng, p.nvars());
        assert!(real.evaluate_log(&x).unwrap() <= msz.evaluate_log(&x).unwrap() + 1e-12);
    }
}

#[test]
fn nvar_det_bound_holds_for_detreps() {
    for s in 0..30 {
        let (_, p) = generate_stable_detrep(3, 2 + s as usize % 3, 1300 + s).unwrap();
        let b = bounds::det_bound_nvar(&p).unwrap();
        let r = verify::verify_bound(&p, &b, &Region::upper(2.0), 1000, s, VIOLATION_TOL).unwrap();
        assert_eq!(r.violations, 0);
    }
}

#[test]
fn msz2_holds_for_order_one_products() {
    for s in 0..20 {
        let p = generate_vanishing_product(3, 2, 1, 1400 + s);
        let b = bounds::msz2_bound(&p, &p.homogeneous_parts(ORDER_TOL).unwrap()).unwrap();
        let r = verify::verify_bound(&p, &b, &Region::upper(2.0), 1000, s, VIOLATION_TOL).unwrap();
        assert_eq!(r.violations, 0);
    }
}

#[test]
fn stated_bisz2_form_is_refuted_by_a_stable_input() {
    // a linear form with nonnegative coefficients is stable and vanishes to order one
    let p = MultiPoly::from_terms(2, [(vec![1, 0], C64::new(1.0, 0.0)), (vec![0, 1], C64::new(0.5, 0.0))]).unwrap();
    let h = p.homogeneous_parts(ORDER_TOL).unwrap();
    let stated = bounds::bisz2_bound(&p, &h).unwrap();
    let corrected = bounds::bisz2_bound_corrected(&p, &h).unwrap();
    let region = Region::upper(2.0);
    assert!(verify::verify_bound(&p, &stated, &region, 5000, 1, VIOLATION_TOL).unwrap().violations > 0);
    assert_eq!(verify::verify_bound(&p, &corrected, &region, 5000, 1, VIOLATION_TOL).unwrap().violations, 0);
}

fn arb_stable_1d() -> impl Strategy<Value = MultiPoly> {
    (1usize..=10, any::<u64>()).prop_map(|(degree, seed)| generate_stable_1d(degree, seed))
}

proptest! {
    #[test]
    fn improved_never_exceeds_original(p in arb_stable_1d(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let z = [C64::new(re, im)];
        let improved = bounds::szasz_improved(&p).unwrap().evaluate_log(&z).unwrap();
        let original = bounds::szasz_original(&p).unwrap().evaluate_log(&z).unwrap();
        prop_assert!(improved <= original + 1e-12);
    }

    #[test]
    fn improved_bound_holds(p in arb_stable_1d(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let z = [C64::new(re, im)];
        let b = bounds::szasz_improved(&p).unwrap();
        let value = p.evaluate(&z).unwrap().norm().ln();
        prop_assert!(value <= b.evaluate_log(&z).unwrap() + VIOLATION_TOL);
    }

    #[test]
    fn certificates_round_trip_through_json(
        lead in 0u32..4,
        c0 in -10.0f64..10.0,
        lin in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..4),
        kappa in 0.0f64..5.0,
        lambda in -5.0f64..5.0,
        sup in any::<bool>(),
    ) {
        let b = ExpBound {
            lead_degree: lead,
            log_prefactor: c0,
            linear_complex: lin.iter().map(|&(a, b)| C64::new(a, b)).collect(),
            linear_abs: kappa,
            quad: lambda,
            norm: if sup { bounds::NormKind::SupNorm } else { bounds::NormKind::EuclidNorm },
            domain: bounds::BoundDomain::AllComplex,
        };
        let text = serde_json::to_string(&b).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExpBound>(&text).unwrap(), b);
    }

    #[test]
    fn polynomial_files_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, 3, 5, 10);
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultiPoly>(&text).unwrap(), p);
    }
}
