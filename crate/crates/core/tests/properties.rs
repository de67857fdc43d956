use densediv::exact::{parse_rational, Rational};
use densediv::families::{is_member, membership_profile, FamilySpec, ThetaRule};
use densediv::gzero::{g_eval_neg_int, g_neg_int_f64, GFunction};
use densediv::integers::{factorize, FactoredInteger};
use num_complex::Complex64;
use proptest::prelude::*;

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn f(n: u64) -> FactoredInteger {
    factorize(n, None).unwrap()
}

fn y_choice() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(q("2")), Just(q("5/2")), Just(q("3")), Just(q("10"))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn sandwich_chain(n in 1u64..=100_000, y in y_choice(), i in 1u32..=4) {
        let fac = f(n);
        let a = Rational::new(1, i as u64);
        let chain = [
            ThetaRule::Smooth { y }.contains(&fac),
            ThetaRule::Star { y, a }.contains(&fac),
            is_member(&fac, &FamilySpec::strong_dense(i, y).unwrap()).unwrap(),
            is_member(&fac, &FamilySpec::dense(i, y).unwrap()).unwrap(),
            ThetaRule::Power { y, a }.contains(&fac),
        ];
        for k in 0..4 {
            prop_assert!(!chain[k] || chain[k + 1], "n={n} i={i} y={y} link {k}");
        }
    }

    #[test]
    fn levels_are_nested(n in 1u64..=100_000, y in y_choice()) {
        let p = membership_profile(&f(n), y, 5).unwrap();
        for i in 0..5 {
            prop_assert!(!p.dense[i + 1] || p.dense[i]);
            prop_assert!(!p.strong[i + 1] || p.strong[i]);
        }
    }

    #[test]
    fn both_notions_agree_up_to_two(n in 1u64..=100_000, y in y_choice()) {
        let p = membership_profile(&f(n), y, 2).unwrap();
        prop_assert_eq!(&p.dense[..], &p.strong[..]);
    }

    #[test]
    fn first_level_is_tenenbaum_set(n in 1u64..=100_000, y in prop_oneof![Just(q("2")), Just(q("3"))]) {
        let fac = f(n);
        let dense = membership_profile(&fac, y, 1).unwrap().dense[1];
        prop_assert_eq!(dense, ThetaRule::Power { y, a: q("1") }.contains(&fac));
    }

    #[test]
    fn deep_levels_are_smooth(n in 1u64..=10_000) {
        let imax = (n as f64).log2().ceil() as u32 + 2;
        let p = membership_profile(&f(n), q("2"), imax).unwrap();
        prop_assert_eq!(p.dense[imax as usize], n.is_power_of_two());
    }

    #[test]
    fn factorization_round_trip(n in 1u64..=1_000_000) {
        let fac = f(n);
        let back: u64 = fac.factors().iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(back, n);
        let tau: u64 = fac.factors().iter().map(|&(_, e)| e as u64 + 1).product();
        prop_assert_eq!(fac.divisors().unwrap().len() as u64, tau);
    }

    #[test]
    fn series_and_integral_forms_agree(re in -3.0f64..3.0, im in -6.0f64..6.0, which in 0usize..4) {
        let a = [1.0, 0.5, 1.0 / 3.0, 0.2][which];
        let g = GFunction::new(a).unwrap();
        let s = Complex64::new(re, im);
        let x = g.series(s, None).unwrap();
        let y = g.integral(s);
        prop_assert!((x.value - y.value).norm() <= x.error + y.error, "a={a} s={s}");
    }

    #[test]
    fn exact_integers_within_series_bound(n in 0u64..=25, which in 0usize..3) {
        let (a, af) = [(q("1"), 1.0), (q("1/2"), 0.5), (q("1/5"), 0.2)][which];
        let v = GFunction::new(af).unwrap().series(Complex64::new(-(n as f64), 0.0), None).unwrap();
        let exact = g_neg_int_f64(&a, n);
        prop_assert!((v.value.re - exact).abs() <= v.error + 1e-15 * exact.abs());
        prop_assert_eq!(v.value.im, 0.0);
        let _ = g_eval_neg_int(&a, n);
    }
}
