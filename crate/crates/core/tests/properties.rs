use num_bigint::BigInt;
use proptest::prelude::*;

use nilbound::nilpotent::{equal_mod, verify_power_shift, Engine, QuotientSpec};
use nilbound::surface::christoffel;
use nilbound::words::{format_word, generalized_commutator, parse_word, FreeWord};

fn arb_word(rank: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..rank, prop::bool::ANY), 0..=max_len).prop_map(move |letters| {
        let mut w = FreeWord::identity(rank);
        for (g, inv) in letters {
            let g = FreeWord::generator(g, rank).unwrap();
            w = w.multiply(&if inv { g.invert() } else { g }).unwrap();
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiply_is_associative(
        u in arb_word(2, 8),
        v in arb_word(2, 8),
        w in arb_word(2, 8),
    ) {
        prop_assert_eq!(
            u.multiply(&v).unwrap().multiply(&w).unwrap(),
            u.multiply(&v.multiply(&w).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_cancels(u in arb_word(3, 10)) {
        prop_assert!(u.multiply(&u.invert()).unwrap().is_identity());
        prop_assert_eq!(u.invert().invert(), u);
    }

    #[test]
    fn text_round_trip(u in arb_word(3, 10)) {
        prop_assert_eq!(parse_word(&format_word(&u), 3).unwrap(), u);
    }

    #[test]
    fn abelianize_is_additive(u in arb_word(2, 8), v in arb_word(2, 8)) {
        let sum: Vec<BigInt> = u
            .abelianize()
            .into_iter()
            .zip(v.abelianize())
            .map(|(a, b)| a + b)
            .collect();
        prop_assert_eq!(u.multiply(&v).unwrap().abelianize(), sum);
    }

    #[test]
    fn pow_adds_exponents(u in arb_word(2, 6), a in -4i64..=4, b in -4i64..=4) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert!(equal_mod(
            &u.pow(&a).multiply(&u.pow(&b)).unwrap(),
            &u.pow(&(&a + &b)),
            3,
        ).unwrap());
    }

    #[test]
    fn collect_is_a_homomorphism_image(u in arb_word(2, 6), v in arb_word(2, 6)) {
        let engine = Engine::shared(QuotientSpec::new(2, 3));
        let lhs = engine.collect(&u.multiply(&v).unwrap()).unwrap();
        let rhs = engine
            .nf_multiply(&engine.collect(&u).unwrap(), &engine.collect(&v).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_shift_sweep(
        tail in prop::collection::vec(arb_word(2, 2), 1..=3),
        head in arb_word(2, 2),
        k in -3i64..=3,
    ) {
        let mut args = vec![head];
        args.extend(tail);
        prop_assume!(args.iter().all(|w| !w.is_identity()));
        prop_assert!(verify_power_shift(&args, &BigInt::from(k)).unwrap());
    }

    #[test]
    fn christoffel_abelianizes_to_slope(p in -9i64..=9, q in -9i64..=9) {
        let (p, q) = (BigInt::from(p), BigInt::from(q));
        prop_assume!(num_integer::gcd(p.clone(), q.clone()) == BigInt::from(1));
        let w = christoffel(&p, &q).unwrap();
        prop_assert_eq!(w.abelianize(), vec![p, q]);
    }

    #[test]
    fn commutator_swap_is_inverse_mod_class2(u in arb_word(2, 5), v in arb_word(2, 5)) {
        let c = u.commutator(&v).unwrap();
        let c_rev = v.commutator(&u).unwrap();
        prop_assert!(equal_mod(&c.invert(), &c_rev, 2).unwrap());
        // and generalized_commutator on two entries agrees
        prop_assert_eq!(generalized_commutator(&[u, v]).unwrap(), c);
    }
}
