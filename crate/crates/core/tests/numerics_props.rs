use mathieu_core::numerics::{gamma_real, hurwitz_zeta, ln_gamma, zeta_special};
use mathieu_core::{Context, Real, Series};
use proptest::prelude::*;

fn rel_err(got: &Real, want: &Real) -> Real {
    ((got - want) / want).abs()
}

fn ctx30() -> Context {
    Context::new(30).unwrap()
}

#[test]
fn bernoulli_and_even_zeta_agree() {
    let ctx = Context::new(40).unwrap();
    let two_pi = ctx.pi() * 2;
    let mut fact = ctx.one();
    for k in 1..=10i64 {
        fact *= ctx.int(2 * k - 1) * ctx.int(2 * k);
        let b = ctx.bernoulli_real(2 * k as usize).abs();
        // closed form through the library and an independent Euler-Maclaurin sum
        for z in [
            zeta_special(2 * k, &ctx).unwrap(),
            hurwitz_zeta(&ctx.int(2 * k), &ctx.one(), &ctx).unwrap(),
        ] {
            let lhs = z * 2 * &fact / two_pi.powi(2 * k);
            assert!(rel_err(&lhs, &b) < ctx.pow10(-45), "k = {k}");
        }
    }
}

#[test]
fn even_zeta_landmarks() {
    let ctx = ctx30();
    let pi = ctx.pi();
    assert!(rel_err(&zeta_special(2, &ctx).unwrap(), &(pi.powi(2) / 6)) < ctx.pow10(-40));
    assert!(rel_err(&zeta_special(4, &ctx).unwrap(), &(pi.powi(4) / 90)) < ctx.pow10(-40));
    assert_eq!(zeta_special(0, &ctx).unwrap(), ctx.ratio(-1, 2));
    assert!(zeta_special(-6, &ctx).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gamma_recurrence(k in 1u32..50_000) {
        let ctx = ctx30();
        let x = ctx.ratio(k as i64, 1000);
        let lhs = gamma_real(&(&x + 1), &ctx).unwrap();
        let rhs = &x * gamma_real(&x, &ctx).unwrap();
        prop_assert!(rel_err(&lhs, &rhs) < ctx.pow10(5 - 30));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_duplication(k in 1u32..25_000) {
        let ctx = ctx30();
        let x = ctx.ratio(k as i64, 1000);
        let two_x = &x * 2;
        let lhs = gamma_real(&two_x, &ctx).unwrap();
        let half = ctx.ratio(1, 2);
        let rhs = gamma_real(&x, &ctx).unwrap() * gamma_real(&(&x + &half), &ctx).unwrap()
            * ctx.int(2).powf(&(&two_x - 1), &ctx)
            / ctx.pi().sqrt();
        prop_assert!(rel_err(&lhs, &rhs) < ctx.pow10(5 - 30));
    }

    #[test]
    fn ln_gamma_matches_gamma(k in 1u32..60_000) {
        let ctx = ctx30();
        let x = ctx.ratio(k as i64, 1000);
        let g = gamma_real(&x, &ctx).unwrap();
        let l = ln_gamma(&x, &ctx).unwrap();
        prop_assert!((l - g.ln(&ctx)).abs() < ctx.pow10(5 - 30) * (g.ln(&ctx).abs() + 1));
    }

    #[test]
    fn hurwitz_shift(s_num in 11i64..400, q_num in 1i64..5000, n in 1i64..=100) {
        let ctx = ctx30();
        let s = ctx.ratio(s_num, 10);
        let q = ctx.ratio(q_num, 1000);
        let whole = hurwitz_zeta(&s, &q, &ctx).unwrap();
        let mut head = ctx.zero();
        for i in 0..n {
            head += (&q + i).powf(&s, &ctx).recip();
        }
        let rest = hurwitz_zeta(&s, &(&q + n), &ctx).unwrap();
        prop_assert!(rel_err(&(head + rest), &whole) < ctx.pow10(-40));
    }

    #[test]
    fn series_exp_log_inverse(coeffs in prop::collection::vec(-50i64..50, 2..12)) {
        let ctx = ctx30();
        let mut c: Vec<Real> = coeffs.iter().map(|&v| ctx.ratio(v, 10)).collect();
        c[0] = ctx.one();
        let s = Series::from_coeffs(c);
        let back = s.log(&ctx).unwrap().exp(&ctx);
        for (x, y) in back.coeffs().iter().zip(s.coeffs()) {
            prop_assert!((x - y).abs() < ctx.pow10(-35) * (y.abs() + 1));
        }
        let mut z = s.clone().into_coeffs();
        z[0] = ctx.zero();
        let t = Series::from_coeffs(z);
        let again = t.exp(&ctx).log(&ctx).unwrap();
        for (x, y) in again.coeffs().iter().zip(t.coeffs()) {
            prop_assert!((x - y).abs() < ctx.pow10(-35) * (y.abs() + 1));
        }
    }

    #[test]
    fn series_mul_div_inverse(
        a in prop::collection::vec(-50i64..50, 8),
        b in prop::collection::vec(-50i64..50, 8),
        b0 in 1i64..20,
    ) {
        let ctx = ctx30();
        let sa = Series::from_coeffs(a.iter().map(|&v| ctx.ratio(v, 7)).collect());
        let mut bc: Vec<Real> = b.iter().map(|&v| ctx.ratio(v, 3)).collect();
        bc[0] = ctx.int(b0);
        let sb = Series::from_coeffs(bc);
        let back = sa.mul(&sb).unwrap().div(&sb).unwrap();
        for (x, y) in back.coeffs().iter().zip(sa.coeffs()) {
            prop_assert!((x - y).abs() < ctx.pow10(-30) * (y.abs() + 1));
        }
    }
}

#[test]
fn precision_doubling_is_stable() {
    let lo = ctx30();
    let hi = Context::new(60).unwrap();
    let tol = lo.pow10(5 - 30);
    for (num, den) in [(1, 3), (5, 4), (77, 10), (-5, 2)] {
        let a = gamma_real(&lo.ratio(num, den), &lo).unwrap();
        let b = gamma_real(&hi.ratio(num, den), &hi).unwrap();
        assert!(rel_err(&a.with_precision(hi.bits()), &b) < tol);
    }
    for (s, q) in [(3, 1), (25, 7)] {
        let a = hurwitz_zeta(&lo.ratio(s, 2), &lo.ratio(q, 3), &lo).unwrap();
        let b = hurwitz_zeta(&hi.ratio(s, 2), &hi.ratio(q, 3), &hi).unwrap();
        assert!(rel_err(&a.with_precision(hi.bits()), &b) < tol);
    }
}
