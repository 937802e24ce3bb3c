mod support;

use std::sync::Arc;

use charcycle::groebner::{is_groebner_basis, is_reduced_basis};
use charcycle::{kernel_mod, Ideal, MonomialOrder, Polynomial, Ring, VectorPolynomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{ideal, poly, random_poly};

fn gb_strings(i: &Ideal) -> Vec<String> {
    i.gb().polys().iter().map(|p| p.to_string()).collect()
}

#[test]
fn basis_of_variables() {
    let r = Ring::new(&["x", "y"]).unwrap();
    assert_eq!(gb_strings(&ideal(&r, &["x", "y"])), ["y", "x"]);
}

#[test]
fn single_s_pair() {
    let r = Ring::new(&["x", "y"]).unwrap();
    assert_eq!(gb_strings(&ideal(&r, &["x^2 - y", "y"])), ["y", "x^2"]);
}

#[test]
fn random_bases_pass_the_s_pair_certificate() {
    let r = Ring::new(&["x", "y", "z"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&r, &mut rng, 3, 4)).collect();
        let i = Ideal::new(&r, gens.clone()).unwrap();
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = i.groebner_basis(&order);
            assert!(is_groebner_basis(gb.polys(), &order), "{i}");
            assert!(is_reduced_basis(gb.polys(), &order), "{i}");
            for g in &gens {
                assert!(i.contains(g).unwrap());
            }
        }
        // generator order does not matter
        let mut rev = gens.clone();
        rev.reverse();
        let j = Ideal::new(&r, rev).unwrap();
        assert_eq!(gb_strings(&i), gb_strings(&j));
    }
}

#[test]
fn normal_forms() {
    let r = Ring::new(&["x", "y"]).unwrap();
    let x = ideal(&r, &["x"]);
    assert!(x.normal_form(&poly(&r, "x^3")).unwrap().is_zero());
    assert_eq!(x.normal_form(&poly(&r, "y")).unwrap(), poly(&r, "y"));

    let r6 = minors_ring();
    let f1 = ideal(&r6, &["x1*x5 - x2*x4"]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let h = random_poly(&r6, &mut rng, 2, 3);
        let rem = random_poly(&r6, &mut rng, 2, 3);
        let p = poly(&r6, "x1*x5 - x2*x4").mul(&h).unwrap().add(&rem).unwrap();
        assert_eq!(f1.normal_form(&p).unwrap(), f1.normal_form(&rem).unwrap());
    }
}

fn minors_ring() -> Arc<Ring> {
    Ring::new(&["x1", "x2", "x3", "x4", "x5", "x6"]).unwrap()
}

#[test]
fn quotients() {
    let r = Ring::new(&["x", "a"]).unwrap();
    let i = ideal(&r, &["x*a"]);
    assert!(i.quotient(&poly(&r, "x")).unwrap().same_ideal(&ideal(&r, &["a"])));
    assert!(i.quotient(&poly(&r, "1")).unwrap().same_ideal(&i));

    let r3 = Ring::new(&["x", "y", "z"]).unwrap();
    let i = ideal(&r3, &["x^2*y", "y*z^2", "x*z - y^2"]);
    let f = poly(&r3, "x + z");
    let q = i.quotient(&f).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let g = random_poly(&r3, &mut rng, 3, 3);
        let in_q = q.contains(&g).unwrap();
        let by_def = i.contains(&g.mul(&f).unwrap()).unwrap();
        assert_eq!(in_q, by_def, "{g}");
    }
    for g in q.gens() {
        assert!(i.contains(&g.mul(&f).unwrap()).unwrap());
    }
}

#[test]
fn saturations() {
    let r = Ring::new(&["x", "a"]).unwrap();
    let i = ideal(&r, &["x*a"]);
    assert!(i.saturate_ideal(&ideal(&r, &["x"])).unwrap().same_ideal(&ideal(&r, &["a"])));

    let r4 = Ring::new(&["x", "a", "b", "c"]).unwrap();
    let i = ideal(&r4, &["x", "c", "x*a", "x*b"]);
    assert!(i.saturate_ideal(&Ideal::unit(&r4)).unwrap().same_ideal(&i));

    // nonhomogeneous route agrees with the quotient chain
    let r3 = Ring::new(&["x", "y", "z"]).unwrap();
    let i = ideal(&r3, &["x^3*y - z", "x^2*y^2"]);
    let f = poly(&r3, "x");
    let sat = i.saturate(&f).unwrap();
    let mut chain = i.clone();
    loop {
        let next = chain.quotient(&f).unwrap();
        if next.same_ideal(&chain) {
            break;
        }
        chain = next;
    }
    assert!(sat.same_ideal(&chain));
    assert!(sat.saturate(&f).unwrap().same_ideal(&sat));
}

#[test]
fn elimination() {
    let r = Ring::new(&["t", "x", "y"]).unwrap();
    let i = ideal(&r, &["x - t", "y - t^2"]);
    let e = i.eliminate(&[0]).unwrap();
    assert!(e.same_ideal(&ideal(&r, &["y - x^2"])));
    assert!(i.eliminate(&[]).unwrap().same_ideal(&i));
}

#[test]
fn intersections() {
    let r = Ring::new(&["x", "y"]).unwrap();
    let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
    assert!(i.same_ideal(&ideal(&r, &["x*y"])));
    let j = ideal(&r, &["x^2", "y"]);
    assert!(j.intersect(&Ideal::unit(&r)).unwrap().same_ideal(&j));
}

#[test]
fn kernels() {
    let r = Ring::new(&["x"]).unwrap();
    let k = kernel_mod(&[vec![poly(&r, "1")]], &ideal(&r, &["x"])).unwrap();
    assert_eq!(format!("{:?}", k.gens()), "[[x]]");

    let r3 = Ring::new(&["x", "y", "z"]).unwrap();
    let row = vec![poly(&r3, "1"), poly(&r3, "0"), poly(&r3, "0")];
    let k = kernel_mod(&[row], &Ideal::zero(&r3)).unwrap();
    let expected = charcycle::Submodule::new(
        &r3,
        3,
        vec![VectorPolynomial::unit(&r3, 3, 1), VectorPolynomial::unit(&r3, 3, 2)],
    )
    .unwrap();
    for g in k.gens() {
        assert!(expected.contains(g).unwrap());
    }
    for g in expected.gens() {
        assert!(k.contains(g).unwrap());
    }

    let rows = vec![
        vec![poly(&r3, "0"), poly(&r3, "1"), poly(&r3, "0")],
        vec![poly(&r3, "1"), poly(&r3, "0"), poly(&r3, "0")],
    ];
    let ix = ideal(&r3, &["x"]);
    let k = kernel_mod(&rows, &ix).unwrap();
    let expected = charcycle::Submodule::new(
        &r3,
        3,
        vec![
            VectorPolynomial::unit(&r3, 3, 2),
            VectorPolynomial::unit(&r3, 3, 0).scale(&poly(&r3, "x")),
            VectorPolynomial::unit(&r3, 3, 1).scale(&poly(&r3, "x")),
        ],
    )
    .unwrap();
    for g in k.gens() {
        for row in &rows {
            assert!(ix.contains(&g.dot(row).unwrap()).unwrap());
        }
        assert!(expected.contains(g).unwrap());
    }
    for g in expected.gens() {
        assert!(k.contains(g).unwrap());
    }
}

#[test]
fn minors_basis_is_certified() {
    let r = minors_ring();
    let i = ideal(&r, &["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"]);
    for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::elimination(6, &[0, 1])] {
        let gb = i.groebner_basis(&order);
        assert!(is_groebner_basis(gb.polys(), &order));
    }
}
