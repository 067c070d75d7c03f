//! Property tests: field axioms in Q(q), and gauge invariance of the
//! normal form over random orbits.

use proptest::prelude::*;
use rand::SeedableRng;

use qdsr::algebra::{IntPoly, RationalFunctionQ as Rf};
use qdsr::difference::{canonicalize, gauge_apply, random_mj_member, random_unipotent, IdentityRing, LatticeRing, QShiftRing};

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..=5, 1..4).prop_map(|c| IntPoly::from_coeffs(c.into_iter().map(Into::into).collect()))
}

fn ratfunc() -> impl Strategy<Value = Rf> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| Rf::from_polys(n, d).ok())
}

proptest! {
    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
        // specialization is a ring homomorphism away from poles
        let q0 = "3/2".parse().unwrap();
        if let (Ok(x), Ok(y), Ok(xy)) = (a.eval_rational(&q0), b.eval_rational(&q0), (&a * &b).eval_rational(&q0)) {
            prop_assert_eq!(x * y, xy);
        }
    }

    #[test]
    fn normal_form_is_gauge_invariant(seed in any::<u64>(), n in 2usize..=3, variant in 0u8..3) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        macro_rules! check {
            ($ring:expr) => {{
                let ring = $ring;
                let m = random_mj_member(&ring, n, &mut rng);
                let moved = gauge_apply(&random_unipotent(&ring, n, &mut rng), &m).unwrap();
                prop_assert_eq!(canonicalize(&moved).unwrap().0, canonicalize(&m).unwrap().0);
            }};
        }
        match variant {
            0 => check!(QShiftRing::default()),
            1 => check!(IdentityRing),
            _ => check!(LatticeRing::new(4)),
        }
    }
}
