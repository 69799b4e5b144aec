use std::f64::consts::TAU;

use approx::assert_relative_eq;
use polynorm::inequalities::{
    check_bernstein, check_gauss_lucas, check_laguerre, check_lax_malik, check_malik, PExponent,
    DEFAULT_TOL,
};
use polynorm::norms::{lp_norm, mahler_jensen, mahler_trig, sup_norm, QuadratureConfig};
use polynorm::{AlgebraicPoly, TrigPoly, C64};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn nonzero_complex() -> impl Strategy<Value = C64> {
    (0.2..3.0f64, 0.0..TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn trig(max_degree: usize) -> impl Strategy<Value = TrigPoly> {
    (1..=max_degree)
        .prop_flat_map(|n| prop::collection::vec(complex(), 2 * n + 1))
        .prop_filter("nonzero", |c| c.iter().any(|z| z.norm() > 1e-3))
        .prop_map(|c| TrigPoly::new(c).unwrap())
}

/// Algebraic polynomial with a leading coefficient of modulus at least 0.2.
fn alg(max_degree: usize) -> impl Strategy<Value = AlgebraicPoly> {
    (1..=max_degree)
        .prop_flat_map(|n| (prop::collection::vec(complex(), n), nonzero_complex()))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            AlgebraicPoly::new(c).unwrap()
        })
}

/// `lead * prod (z - z_j)` with every `|z_j|` in `[rho, 3 rho]`.
fn roots_outside(max_degree: usize, rho: f64) -> impl Strategy<Value = AlgebraicPoly> {
    (1..=max_degree)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec((rho..3.0 * rho, 0.0..TAU), n),
                nonzero_complex(),
            )
        })
        .prop_map(|(roots, lead)| {
            let roots: Vec<C64> = roots
                .into_iter()
                .map(|(r, t)| C64::from_polar(r, t))
                .collect();
            AlgebraicPoly::from_roots(lead, &roots)
        })
}

const P_LADDER: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norms_are_homogeneous(t in trig(6), c in nonzero_complex()) {
        let cfg = QuadratureConfig::default();
        let ct = t.scale(c);
        assert_relative_eq!(sup_norm(&ct), c.norm() * sup_norm(&t), max_relative = 1e-10);
        assert_relative_eq!(mahler_trig(&ct).unwrap(), c.norm() * mahler_trig(&t).unwrap(), max_relative = 1e-9);
        for p in P_LADDER {
            let a = lp_norm(&ct, p, &cfg).unwrap();
            let b = c.norm() * lp_norm(&t, p, &cfg).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-8);
        }
    }

    #[test]
    fn norms_are_shift_invariant(t in trig(6), a in 0.0..TAU) {
        let cfg = QuadratureConfig::default();
        let s = t.shift(a);
        assert_relative_eq!(sup_norm(&s), sup_norm(&t), max_relative = 1e-10);
        for p in P_LADDER {
            assert_relative_eq!(lp_norm(&s, p, &cfg).unwrap(), lp_norm(&t, p, &cfg).unwrap(), max_relative = 1e-8);
        }
    }

    #[test]
    fn lp_norms_increase_with_p(t in trig(6)) {
        let cfg = QuadratureConfig::default();
        let mut prev = mahler_trig(&t).unwrap();
        for p in P_LADDER {
            let cur = lp_norm(&t, p, &cfg).unwrap();
            prop_assert!(cur >= prev * (1.0 - 1e-8), "p = {p}: {cur} < {prev}");
            prev = cur;
        }
        prop_assert!(sup_norm(&t) >= prev * (1.0 - 1e-8));
    }

    #[test]
    fn mahler_is_multiplicative(p in alg(5), q in alg(5)) {
        let pq = p.mul(&q);
        let lhs = mahler_jensen(&pq).unwrap();
        let rhs = mahler_jensen(&p).unwrap() * mahler_jensen(&q).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
    }

    #[test]
    fn reciprocal_is_an_involution(p in alg(8)) {
        prop_assert_eq!(p.reciprocal().reciprocal(), p);
    }

    #[test]
    fn reciprocal_has_equal_modulus_on_circle(p in alg(8), theta in 0.0..TAU) {
        let z = C64::cis(theta);
        let a = p.eval(z).norm();
        let b = p.reciprocal().eval(z).norm();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn bernstein_verdict_is_scale_invariant(t in trig(6), c in nonzero_complex()) {
        for p in [PExponent::Zero, PExponent::Finite(0.5), PExponent::Finite(2.0), PExponent::Infinity] {
            let a = check_bernstein(&t, p, DEFAULT_TOL).unwrap();
            let b = check_bernstein(&t.scale(c), p, DEFAULT_TOL).unwrap();
            prop_assert!(a.pass && b.pass);
            assert_relative_eq!(a.measured / a.bound, b.measured / b.bound, max_relative = 1e-8);
        }
    }

    #[test]
    fn malik_and_gauss_lucas_hold(p in alg(10)) {
        prop_assert!(check_malik(&p, DEFAULT_TOL).unwrap().pass);
        if p.degree() >= 2 {
            prop_assert!(check_gauss_lucas(&p, DEFAULT_TOL).unwrap().pass);
        }
    }

    #[test]
    fn root_free_disk_checks_hold(rho in 1.0..2.5f64, seed in roots_outside(10, 1.0)) {
        // Dilate so the roots clear rho D with some room.
        let p = seed.dilate(1.0 / (rho * 1.01));
        prop_assert!(check_laguerre(&p, rho, DEFAULT_TOL).unwrap().pass);
        prop_assert!(check_lax_malik(&p, rho, DEFAULT_TOL).unwrap().pass);
    }

    #[test]
    fn derivative_lowers_trig_norm_by_at_most_degree(t in trig(8)) {
        let n = t.degree() as f64;
        prop_assert!(sup_norm(&t.derivative()) <= n * sup_norm(&t) * (1.0 + 1e-10));
    }
}
