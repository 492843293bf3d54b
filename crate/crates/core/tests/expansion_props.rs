use mathieu_core::coeffs::cj_integer_mu;
use mathieu_core::expansion::{
    algebraic_h, closed_form_integer_mu, expand, expansion_complex, expansion_real, gamma_term, k_sum, k_tilde_sum,
    optimal_truncation, optimal_truncation_with_tol, Truncation,
};
use mathieu_core::oracle::{direct_sum, direct_sum_alternating};
use mathieu_core::{make_params, Complex, Context, MathieuParams, Real};

fn params(ctx: &Context, mu: (i64, i64), gamma: i64, lambda: i64) -> Option<MathieuParams> {
    make_params(ctx.ratio(mu.0, mu.1), gamma, lambda, false).ok()
}

fn real(ctx: &Context, v: i64) -> Complex {
    Complex::from_real(ctx.int(v))
}

#[test]
fn exponential_sums_approach_one() {
    let ctx = Context::new(50).unwrap();
    let tol = ctx.sum_tolerance();
    for mu in [(3, 4), (5, 4), (5, 2)] {
        let mu = ctx.ratio(mu.0, mu.1);
        for re in [5i64, 8, 12] {
            for im in [-20i64, -3, 0, 7] {
                let x = Complex::new(ctx.int(re), ctx.int(im));
                let bound = ctx.int(-re).exp(&ctx) * 3;
                for j in 0..8 {
                    let k = k_sum(&x, &mu, j, &tol, &ctx).unwrap().value;
                    assert!((&k - &Complex::one(&ctx)).abs() <= bound, "Re X={re} j={j}");
                }
            }
        }
    }
}

#[test]
fn shifted_sums_follow_from_plain_ones() {
    let ctx = Context::new(40).unwrap();
    let tol = ctx.sum_tolerance();
    let mu = ctx.ratio(7, 4);
    let x = Complex::new(ctx.int(9), ctx.int(4));
    let half = x.scale(&ctx.ratio(1, 2));
    for j in 0..6 {
        let kt = k_tilde_sum(&x, &mu, j, &tol, &ctx).unwrap().value;
        let k_full = k_sum(&x, &mu, j, &tol, &ctx).unwrap().value;
        let k_half = k_sum(&half, &mu, j, &tol, &ctx).unwrap().value;
        let pow = ctx.int(2).powf(&(ctx.one() - &mu + j as i64), &ctx);
        let inner = (&(-x.clone()).exp(&ctx) * &k_full) - (&(-half.clone()).exp(&ctx) * &k_half).scale(&pow);
        let want = -(&half.exp(&ctx) * &inner);
        assert!((&kt - &want).abs() < ctx.pow10(-40) * want.abs(), "j={j}");
    }
}

#[test]
fn expansion_matches_oracle_on_grid() {
    let ctx = Context::new(50).unwrap();
    let target = ctx.pow10(-48);
    for mu in [(7, 10), (5, 4), (5, 2)] {
        for gamma in [-2i64, 0, 2, 4] {
            for lambda in [2i64, 4, 6] {
                let Some(p) = params(&ctx, mu, gamma, lambda) else {
                    continue;
                };
                for a in [4i64, 6, 10] {
                    let a = real(&ctx, a);
                    let rep = expand(&p, &a, Truncation::Auto, &ctx).unwrap();
                    let s = direct_sum(&p, &a, &target, &ctx).unwrap();
                    let err = (&rep.total - &s).abs();
                    assert!(
                        err <= &rep.remainder_estimate * 10 + &target,
                        "μ={mu:?} γ={gamma} λ={lambda}: err {} est {}",
                        err.to_sci_string(3),
                        rep.remainder_estimate.to_sci_string(3)
                    );
                }
            }
        }
    }
}

#[test]
fn error_decreases_with_more_terms() {
    let ctx = Context::new(50).unwrap();
    let a = ctx.int(5);
    let ac = Complex::from_real(a.clone());
    for gamma in [0i64, 2, -2] {
        let p = params(&ctx, (5, 4), gamma, 4).unwrap();
        let s = direct_sum(&p, &ac, &ctx.pow10(-48), &ctx).unwrap().re;
        let s_hat = &s - gamma_term(&p, &ac, &ctx).unwrap().re - algebraic_h(&p, &ac, &ctx).unwrap().re;
        let m_star = optimal_truncation(&p, &ac, &ctx).unwrap().m;
        // the two rays of the pair interfere, so single steps in M oscillate; the
        // comparison runs on the tabulated j grid (j = M - 1)
        let grid = [0usize, 1, 2, 3, 4, 6, 8, 10, 12];
        assert!(grid.iter().all(|&j| j + 1 < m_star));
        let mut errors = Vec::new();
        for j in grid {
            let rep = expansion_real(&p, &a, Truncation::Fixed(j + 1), &ctx).unwrap();
            errors.push((rep.exponential_total(&ctx).re - &s_hat).abs());
        }
        let rises = errors.windows(2).filter(|w| w[1] >= w[0]).count();
        assert!(rises <= 1, "γ={gamma}: {rises} non-decreasing steps before M*={m_star}");
    }
}

#[test]
fn optimal_truncation_ignores_sum_tolerance() {
    let ctx = Context::new(50).unwrap();
    for (gamma, a) in [(0i64, 5i64), (2, 7), (-2, 4)] {
        let p = params(&ctx, (5, 4), gamma, 4).unwrap();
        let a = real(&ctx, a);
        let tol = ctx.sum_tolerance();
        let m1 = optimal_truncation_with_tol(&p, &a, &tol, &ctx).unwrap().m;
        let m2 = optimal_truncation_with_tol(&p, &a, &(tol * 10), &ctx).unwrap().m;
        assert_eq!(m1, m2);
    }
}

#[test]
fn terminating_form_equals_complex_expansion_with_exact_table() {
    let ctx = Context::new(50).unwrap();
    for q in 1..=4i64 {
        for (gamma, lambda) in [(0i64, 2i64), (2, 4), (-2, 4)] {
            let Some(p) = params(&ctx, (q, 1), gamma, lambda) else {
                continue;
            };
            let a = Complex::new(ctx.ratio(7, 2), ctx.ratio(1, 2));
            let closed = closed_form_integer_mu(&p, &a, &ctx).unwrap();
            let exact = cj_integer_mu(q as u32, gamma, lambda, &ctx).unwrap();
            let series = expansion_complex(&p, &a, Truncation::Fixed(exact.len()), &ctx).unwrap();
            assert!((&closed.total - &series.total).abs() < ctx.pow10(-55) * closed.total.abs());
        }
    }
}

#[test]
fn oracle_decreases_in_a() {
    let ctx = Context::new(30).unwrap();
    let target = ctx.pow10(-35);
    for (mu, gamma, lambda) in [((1, 1), 0i64, 2i64), ((5, 4), 2, 4), ((5, 2), 4, 4)] {
        let p = params(&ctx, mu, gamma, lambda).unwrap();
        let mut prev: Option<Real> = None;
        for tenth in (5..=80).step_by(5) {
            let s = direct_sum(&p, &Complex::from_real(ctx.ratio(tenth, 10)), &target, &ctx)
                .unwrap()
                .re;
            assert!(s.is_positive());
            if let Some(prev) = prev {
                assert!(s < prev);
            }
            prev = Some(s);
        }
    }
}

#[test]
fn oracle_and_expansion_respect_conjugation() {
    let ctx = Context::new(40).unwrap();
    let target = ctx.pow10(-45);
    let p = params(&ctx, (5, 4), 0, 4).unwrap();
    let a = Complex::from_polar(&ctx.int(5), &(ctx.pi() / 8), &ctx);
    let s = direct_sum(&p, &a, &target, &ctx).unwrap();
    let sc = direct_sum(&p, &a.conj(), &target, &ctx).unwrap();
    assert!((&sc - &s.conj()).abs() < ctx.pow10(-45));
    let e = expand(&p, &a, Truncation::Fixed(12), &ctx).unwrap().total;
    let ec = expand(&p, &a.conj(), Truncation::Fixed(12), &ctx).unwrap().total;
    assert!((&ec - &e.conj()).abs() < ctx.pow10(-45));
}

#[test]
fn scaled_sum_matches_profile() {
    // a^δ S(a) = Σ h(n/a) with h(x) = x^γ/(x^λ+1)^μ
    let ctx = Context::new(30).unwrap();
    for (mu, gamma, lambda, a) in [((3, 2), 0i64, 2i64, 2i64), ((2, 1), 2, 4, 3), ((7, 4), -2, 2, 1)] {
        let p = params(&ctx, mu, gamma, lambda).unwrap();
        let av = ctx.int(a);
        let s = direct_sum(&p, &Complex::from_real(av.clone()), &ctx.pow10(-35), &ctx)
            .unwrap()
            .re;
        let lhs = av.powf(&p.delta, &ctx) * s;
        let head = 4000;
        let mut rhs = ctx.zero();
        for n in 1..=head {
            let x = ctx.int(n) / &av;
            rhs += x.powi(gamma) / (x.powi(lambda) + 1).powf(&p.mu, &ctx);
        }
        // h(x) < x^{-δ}, so the tail past n = head is below a·(head/a)^{1-δ}/(δ-1)
        let tail = &av * (ctx.int(head) / &av).powf(&(ctx.one() - &p.delta), &ctx) / (&p.delta - 1);
        assert!((&lhs - &rhs).abs() <= tail * 2);
        assert!((&lhs - &rhs).is_positive());
    }
}

#[test]
fn alternating_expansion_matches_oracle() {
    let ctx = Context::new(50).unwrap();
    let target = ctx.pow10(-48);
    for (mu, gamma, lambda) in [((3, 4), 0i64, 4i64), ((5, 4), 2, 4), ((5, 4), -2, 6), ((1, 1), 0, 2)] {
        let p = params(&ctx, mu, gamma, lambda).unwrap().with_alternating(true);
        for a in [6i64, 10] {
            let a = real(&ctx, a);
            let rep = expand(&p, &a, Truncation::Auto, &ctx).unwrap();
            let s = direct_sum_alternating(&p, &a, &target, &ctx).unwrap();
            assert!((&rep.total - &s).abs() <= &rep.remainder_estimate * 10 + &target);
        }
    }
}

#[test]
fn results_stable_under_precision_doubling() {
    let lo = Context::new(30).unwrap();
    let hi = Context::new(60).unwrap();
    let a_lo = lo.int(6);
    let a_hi = hi.int(6);
    let p_lo = params(&lo, (5, 4), 0, 4).unwrap();
    let p_hi = params(&hi, (5, 4), 0, 4).unwrap();
    let x = expansion_real(&p_lo, &a_lo, Truncation::Fixed(10), &lo)
        .unwrap()
        .total
        .re;
    let y = expansion_real(&p_hi, &a_hi, Truncation::Fixed(10), &hi)
        .unwrap()
        .total
        .re;
    assert!(((x.with_precision(hi.bits()) - &y) / &y).abs() < lo.pow10(5 - 30));
    let s_lo = direct_sum(&p_lo, &Complex::from_real(a_lo), &lo.pow10(-35), &lo)
        .unwrap()
        .re;
    let s_hi = direct_sum(&p_hi, &Complex::from_real(a_hi), &hi.pow10(-65), &hi)
        .unwrap()
        .re;
    assert!(((s_lo.with_precision(hi.bits()) - &s_hi) / &s_hi).abs() < lo.pow10(5 - 30));
}
