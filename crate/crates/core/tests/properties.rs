use bsd_core::arith::{kronecker, parse_rat};
use bsd_core::factor::{factor_mod_p, is_irreducible_mod_p, reduce_mod_p};
use bsd_core::local::invariant_sum;
use bsd_core::record::SurfaceSpec;
use bsd_core::surface::NormalForm;
use bsd_core::tower::build_tower;
use bsd_core::{int, qpoly, rat, PrimeField, Rat};
use num_traits::Zero;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn surface(family: usize, theta: usize, d: i64) -> Option<NormalForm> {
    let (f, thetas): ([i64; 4], [(i64, i64); 4]) = [
        ([-1, -1, 0, 1], [(1, 6), (-3, 8), (-13, 48), (0, 23)]),
        ([1, 1, 0, 1], [(1, 8), (3, 10), (4, 35), (0, 31)]),
    ][family];
    let (tr, n) = thetas[theta];
    let t = build_tower(&qpoly(&f), &qpoly(&[n, -tr, 1]), &qpoly(&[0, 0, 1])).ok()?;
    NormalForm::new(t, rat(d, 1)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_mod_p_expands_back(
        coeffs in prop::collection::vec(-20i64..20, 2..9),
        pi in 0usize..PRIMES.len(),
    ) {
        let p = PRIMES[pi];
        let f = qpoly(&coeffs);
        let fp = PrimeField::new(p);
        let reduced = reduce_mod_p(&f, fp).unwrap();
        prop_assume!(reduced.degree().unwrap_or(0) >= 1);
        let fac = factor_mod_p(&f, p).unwrap();
        prop_assert_eq!(fac.expand(fp), reduced);
        for (g, _) in &fac.factors {
            prop_assert!(is_irreducible_mod_p(g));
        }
    }

    #[test]
    fn kronecker_is_multiplicative(a in -500i64..500, b in -500i64..500, pi in 1usize..PRIMES.len()) {
        let p = PRIMES[pi];
        prop_assert_eq!(
            kronecker(&int(a * b), p),
            kronecker(&int(a), p) * kronecker(&int(b), p)
        );
    }

    #[test]
    fn swapping_theta_negates_the_total(family in 0usize..2, theta in 0usize..4, d in 1i64..60) {
        let s = surface(family, theta, d).unwrap();
        let (Ok(a), Ok(b)) = (invariant_sum(&s), invariant_sum(&s.swap_theta())) else {
            return Ok(());
        };
        let sum = &a.total + &b.total;
        prop_assert!((&sum - sum.floor()).is_zero(), "{} + {}", a.total, b.total);
    }

    #[test]
    fn cube_factors_of_d_do_not_change_invariants(family in 0usize..2, theta in 0usize..4, d in 1i64..30, c in 2i64..6) {
        let s = surface(family, theta, d).unwrap();
        let t = surface(family, theta, d * c * c * c).unwrap();
        if let (Ok(a), Ok(b)) = (invariant_sum(&s), invariant_sum(&t)) {
            prop_assert_eq!(a.total, b.total);
        }
    }

    #[test]
    fn spec_document_round_trips(
        f in prop::array::uniform3((-50i64..50, 1i64..9)),
        theta in prop::array::uniform2((-50i64..50, 1i64..9)),
        psi in prop::array::uniform3((-9i64..9, 1i64..4)),
        d in (1i64..500, 1i64..9),
    ) {
        let q = |(n, m): (i64, i64)| rat(n, m);
        let spec = SurfaceSpec {
            a2: q(f[0]),
            a1: q(f[1]),
            a0: q(f[2]),
            theta_trace: q(theta[0]),
            theta_norm: q(theta[1]),
            psi: psi.map(q),
            d: q(d),
        };
        let back = SurfaceSpec::parse_document(&spec.to_document()).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.canonical(), spec.canonical());
    }

    #[test]
    fn rationals_parse_in_lowest_terms(n in -10_000i64..10_000, m in 1i64..1000) {
        let text = format!("{}/{}", n * 6, m * 6);
        prop_assert_eq!(parse_rat(&text), Some(Rat::new(n.into(), m.into())));
    }
}
