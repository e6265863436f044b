//! Property tests for the invariants of the jet engine and the geometry.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use frontlab::curvature::gauss_mean;
use frontlab::frames::build_frame;
use frontlab::jets::Jet2;
use frontlab::parallel::{
    factorisation_check, make_parallel, predict_swallowtail, swallowtail_conditions,
};
use frontlab::poly::Poly2;
use frontlab::ridge::ridge_analyze;
use frontlab::singularity::Verdict;
use frontlab::surface::{extract_normal_form, from_normal_form};
use frontlab::verify::{draw_normal_form, DrawOptions, B20};
use frontlab::{NormalFormCoeffs, Tolerances};

fn poly(deg: u32) -> impl Strategy<Value = Poly2> {
    let n = ((deg + 1) * (deg + 2) / 2) as usize;
    prop::collection::vec(-1.0..1.0f64, n).prop_map(move |c| {
        let mut k = 0;
        let mut p = Poly2::zero();
        for d in 0..=deg {
            for i in 0..=d {
                p.add_term(i, d - i, c[k]);
                k += 1;
            }
        }
        p
    })
}

fn base() -> impl Strategy<Value = [f64; 2]> {
    (-0.5..0.5f64, -0.5..0.5f64).prop_map(|(u, v)| [u, v])
}

fn normal_form(opts: DrawOptions) -> impl Strategy<Value = NormalFormCoeffs> {
    any::<u64>().prop_map(move |s| draw_normal_form(&mut ChaCha8Rng::seed_from_u64(s), &opts))
}

fn point() -> impl Strategy<Value = [f64; 2]> {
    (-0.25..0.25f64, 0.02..0.25f64, any::<bool>())
        .prop_map(|(u, v, neg)| [u, if neg { -v } else { v }])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jet_product_is_product_of_jets(p in poly(3), q in poly(3), b in base()) {
        let lhs = Jet2::lift(&p.mul(&q), b, 4);
        let rhs = &Jet2::lift(&p, b, 4) * &Jet2::lift(&q, b, 4);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + lhs.max_abs_coeff()));
    }

    #[test]
    fn jet_derivative_commutes_with_lift(p in poly(5), b in base()) {
        let d = Jet2::lift(&p, b, 4).du();
        prop_assert!(d.max_abs_diff(&Jet2::lift(&p.du(), b, 3)) <= 1e-12);
        let d = Jet2::lift(&p, b, 4).dv();
        prop_assert!(d.max_abs_diff(&Jet2::lift(&p.dv(), b, 3)) <= 1e-12);
    }

    #[test]
    fn jet_division_and_sqrt_invert(p in poly(3), q in poly(3), b in base()) {
        let tol = Tolerances::default();
        let x = Jet2::lift(&p, b, 4);
        let y = Jet2::lift(&q, b, 4).add_const(3.0);
        let r = x.div_jet(&y, &tol).unwrap();
        prop_assert!((&r * &y).max_abs_diff(&x) <= 1e-10 * (1.0 + x.max_abs_coeff()));
        let s = y.sqrt(&tol).unwrap();
        prop_assert!((&s * &s).max_abs_diff(&y) <= 1e-10 * (1.0 + y.max_abs_coeff()));
    }

    #[test]
    fn jet_matches_its_polynomial_near_base(p in poly(4), b in base(), du in -0.1..0.1f64, dv in -0.1..0.1f64) {
        let j = Jet2::lift(&p, b, 4);
        let want = p.eval(b[0] + du, b[1] + dv);
        prop_assert!((j.eval_offset(du, dv) - want).abs() <= 1e-12 * (1.0 + want.abs()));
    }

    #[test]
    fn normal_form_roundtrips(n in normal_form(DrawOptions::default())) {
        let p = from_normal_form(&n).unwrap();
        let m = extract_normal_form(&p, &Tolerances::default()).unwrap();
        for (a, b) in m.leading().iter().zip(n.leading()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        prop_assert!((m.h2_0() - n.h2_0()).abs() <= 1e-12 && (m.h5_0() - n.h5_0()).abs() <= 1e-12);
    }

    #[test]
    fn gauss_and_mean_curvature_match_classical(n in normal_form(DrawOptions::default()), q in point()) {
        let p = from_normal_form(&n).unwrap();
        let o = pointwise(&p, q);
        prop_assume!(o.det() > 1e-3);
        let gm = gauss_mean(&build_frame(&p, q, 3, &Tolerances::default()).unwrap(), &Tolerances::default()).unwrap();
        // classical coefficients, with f_v = vψ
        let v = q[1];
        let (ee, ff, gg) = (o.e, v * o.f, v * v * o.g);
        let (ll, mm, nn) = (o.l, v * o.m, v * o.n);
        let d = ee * gg - ff * ff;
        let k = (ll * nn - mm * mm) / d;
        let h = (ee * nn - 2.0 * ff * mm + gg * ll) / (2.0 * d);
        prop_assert!(rel_close(gm.k, k, 1e-8, 1.0), "K {} vs {k}", gm.k);
        prop_assert!(rel_close(gm.h, h, 1e-8, 1.0), "H {} vs {h}", gm.h);
    }

    #[test]
    fn parallel_area_density_factorises(n in normal_form(DrawOptions::default()), q in point(), t in 0.1..1.0f64) {
        let p = from_normal_form(&n).unwrap();
        prop_assume!(pointwise(&p, q).n.abs() > 0.1);
        let ps = make_parallel(&p, t).unwrap();
        let c = factorisation_check(&ps, q, &Tolerances::default()).unwrap();
        prop_assert!(c.relative_error() <= 1e-8, "{}", c.relative_error());
    }

    #[test]
    fn ridge_derivative_matches_closed_form(n in normal_form(DrawOptions::default())) {
        let r = ridge_analyze(&from_normal_form(&n).unwrap(), [0.0, 0.0], &Tolerances::default()).unwrap();
        prop_assert!(rel_close(r.vk1, c1(&n) / (2.0 * n.b03), 1e-9, 1e-12));
    }

    #[test]
    fn swallowtail_routes_agree(
        n in (any::<u64>(), any::<bool>()).prop_map(|(s, ridge)| {
            draw_normal_form(&mut ChaCha8Rng::seed_from_u64(s), &DrawOptions { b20: B20::AtLeast(0.1), ridge, tails: true })
        })
    ) {
        let tol = Tolerances::default();
        let s = predict_swallowtail(&from_normal_form(&n).unwrap(), [0.0, 0.0], &tol).unwrap();
        let cond = swallowtail_conditions(&n, &tol).unwrap();
        prop_assert_eq!(cond.holds, s.verdict() == Verdict::Swallowtail);
    }
}
