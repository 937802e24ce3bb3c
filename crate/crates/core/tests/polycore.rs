mod support;

use charcycle::{Coeff, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{poly, random_point, random_poly};

#[test]
fn cancellation_and_identities() {
    let r = Ring::new(&["x", "y"]).unwrap();
    let s = poly(&r, "x + y").add(&poly(&r, "x - y")).unwrap();
    assert_eq!(s, poly(&r, "2*x"));
    let p = poly(&r, "x^2 - 3*y");
    assert_eq!(p.add(&Polynomial::zero(&r)).unwrap(), p);
    assert_eq!(poly(&r, "x + y").mul(&poly(&r, "x - y")).unwrap(), poly(&r, "x^2 - y^2"));
    assert_eq!(Polynomial::one(&r).mul(&p).unwrap(), p);
}

#[test]
fn derivatives() {
    let r = Ring::new(&["x1", "x2", "x3", "x4", "x5", "x6"]).unwrap();
    assert_eq!(poly(&r, "x1*x5 - x2*x4").partial_derivative(0), poly(&r, "x5"));
    assert!(poly(&r, "7").partial_derivative(2).is_zero());
    let s = Ring::new(&["x", "y"]).unwrap();
    assert_eq!(poly(&s, "x^3*y").partial_derivative(0), poly(&s, "3*x^2*y"));
}

#[test]
fn leading_terms() {
    let r = Ring::new(&["x", "y"]).unwrap();
    let (c, m) = poly(&r, "x^2*y + x*y^2").leading_term(&MonomialOrder::GrevLex).unwrap();
    assert_eq!((c, m.exps().to_vec()), (Coeff::from_integer(1.into()), vec![2, 1]));
    let (_, m) = poly(&r, "y^5 + x").leading_term(&MonomialOrder::Lex).unwrap();
    assert_eq!(m.exps().to_vec(), vec![1, 0]);
}

#[test]
fn operations_commute_with_evaluation() {
    let r = Ring::new(&["x", "y", "z"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let p = random_poly(&r, &mut rng, 4, 6);
        let q = random_poly(&r, &mut rng, 4, 6);
        let sum = p.add(&q).unwrap();
        let prod = p.mul(&q).unwrap();
        for _ in 0..5 {
            let pt = random_point(3, &mut rng);
            assert_eq!(sum.evaluate(&pt), p.evaluate(&pt) + q.evaluate(&pt));
            assert_eq!(prod.evaluate(&pt), p.evaluate(&pt) * q.evaluate(&pt));
        }
    }
}

#[test]
fn printing_round_trips() {
    let r = Ring::new(&["x", "y", "z"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..40 {
        let p = random_poly(&r, &mut rng, 4, 6).scale(&Coeff::new(3.into(), 7.into()));
        assert_eq!(poly(&r, &p.to_string()), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold(seed in any::<u64>()) {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&r, &mut rng, 3, 5);
        let q = random_poly(&r, &mut rng, 3, 5);
        let s = random_poly(&r, &mut rng, 3, 5);
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        let lhs = p.mul(&q.add(&s).unwrap()).unwrap();
        let rhs = p.mul(&q).unwrap().add(&p.mul(&s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(p.sub(&p).unwrap().is_zero());
        // Leibniz rule
        let d = p.mul(&q).unwrap().partial_derivative(1);
        let e = p.partial_derivative(1).mul(&q).unwrap().add(&p.mul(&q.partial_derivative(1)).unwrap()).unwrap();
        prop_assert_eq!(d, e);
    }
}
