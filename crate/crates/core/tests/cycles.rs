mod support;

use std::collections::BTreeMap;

use charcycle::cycles::{
    component_support, localize, localize_cycle, localize_via, support, zero_section, CharCycle, ConormalComponent,
    Route, Strategy,
};
use charcycle::{hilbert, Error, Ideal, Polynomial, Ring};
use support::oracles::{coordinate_cycle, monomial_localization_cycle};
use support::{ideal, minors, multiset, poly};

fn xyz() -> std::sync::Arc<Ring> {
    Ring::split(&["x", "y", "z"], &["a", "b", "c"]).unwrap()
}

fn conormal(ring: &std::sync::Arc<Ring>, base: &Ideal) -> CharCycle {
    let mut cc = CharCycle::zero(ring).unwrap();
    cc.add(ConormalComponent::conormal_of(ring, base).unwrap(), 1).unwrap();
    cc
}

fn coords(entries: &[&[usize]]) -> BTreeMap<Vec<usize>, u64> {
    entries.iter().map(|s| (s.to_vec(), 1)).collect()
}

#[test]
fn zero_sections() {
    let t = xyz();
    let cc = zero_section(&t).unwrap();
    assert_eq!(cc.len(), 1);
    let (c, m) = cc.components().next().unwrap();
    assert_eq!(m, 1);
    assert!(c.prime().same_ideal(&ideal(&t, &["a", "b", "c"])));
    for n in [1usize, 6] {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let t = Ring::cotangent(&Ring::new(&names).unwrap()).unwrap();
        let cc = zero_section(&t).unwrap();
        let (c, _) = cc.components().next().unwrap();
        let a: Vec<usize> = t.cotangent_vars().unwrap().collect();
        assert!(c.prime().same_ideal(&Ideal::variables(&t, &a)));
        assert_eq!(hilbert::dimension(c.prime()).unwrap(), n);
        assert_eq!(t.nvars(), 2 * n);
    }
    assert!(zero_section(&Ring::new(&["x"]).unwrap()).is_err());
}

#[test]
fn first_localizations() {
    let t = xyz();
    let r = t.base().unwrap();
    let rx = localize(&zero_section(&t).unwrap(), &poly(&r, "x")).unwrap();
    assert_eq!(coordinate_cycle(&rx).unwrap(), coords(&[&[], &[0]]));
    let my = localize(&conormal(&t, &ideal(&r, &["x"])), &poly(&r, "y")).unwrap();
    assert_eq!(coordinate_cycle(&my).unwrap(), coords(&[&[0], &[0, 1]]));
}

#[test]
fn constants_and_zero() {
    let t = xyz();
    let r = t.base().unwrap();
    let cc = conormal(&t, &ideal(&r, &["x", "y"]));
    assert_eq!(localize(&cc, &poly(&r, "7")).unwrap(), cc);
    assert_eq!(localize(&cc, &Polynomial::zero(&r)).unwrap_err(), Error::ZeroPolynomial);
    let other = Ring::new(&["u", "v", "w"]).unwrap();
    assert_eq!(localize(&cc, &poly(&other, "u")).unwrap_err(), Error::RingMismatch);
}

#[test]
fn vanishing_components_die() {
    let t = xyz();
    let r = t.base().unwrap();
    let cc = conormal(&t, &ideal(&r, &["x"]));
    assert!(localize(&cc, &poly(&r, "x*y")).unwrap().is_zero());
    let mut both = zero_section(&t).unwrap();
    both.merge(&cc).unwrap();
    let out = localize(&both, &poly(&r, "x")).unwrap();
    assert_eq!(coordinate_cycle(&out).unwrap(), coords(&[&[], &[0]]));
}

#[test]
fn coordinate_localizations_match_closed_form() {
    let names = ["x1", "x2", "x3", "x4"];
    let t = Ring::cotangent(&Ring::new(&names).unwrap()).unwrap();
    let r = t.base().unwrap();
    let zero = zero_section(&t).unwrap();
    for mask in 1u32..16 {
        let vars: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
        let factors: Vec<Polynomial> = vars.iter().map(|&i| Polynomial::var(&r, i)).collect();
        let it = localize_cycle(&zero, &factors, Strategy::Iterative).unwrap();
        assert_eq!(coordinate_cycle(&it).unwrap(), monomial_localization_cycle(&vars), "{vars:?}");
        if vars.len() <= 3 {
            let single = localize_cycle(&zero, &factors, Strategy::Single).unwrap();
            assert_eq!(single, it, "{vars:?}");
        }
    }
}

#[test]
fn supports() {
    let t = xyz();
    let r = t.base().unwrap();
    let zero = zero_section(&t).unwrap();
    let (c, _) = zero.components().next().unwrap();
    assert!(component_support(c).is_zero());
    assert!(support(&CharCycle::zero(&t).unwrap()).is_empty());
    let rx = localize(&zero, &poly(&r, "x")).unwrap();
    let keys: Vec<String> = support(&rx).iter().map(|i| i.canonical_key()).collect();
    let mut want = vec![Ideal::zero(&r).canonical_key(), ideal(&r, &["x"]).canonical_key()];
    want.sort();
    let mut keys = keys;
    keys.sort();
    assert_eq!(keys, want);
    let m = minors();
    let e = m.strata().into_iter().find(|(l, _)| *l == "E").unwrap().1;
    let te = conormal(&m.cotangent, &e);
    let s = support(&te);
    assert_eq!(s.len(), 1);
    assert!(s[0].same_ideal(&e));
}

#[test]
fn minors_localizations_carry_the_named_strata() {
    let m = minors();
    let zero = zero_section(&m.cotangent).unwrap();
    let v0 = localize(&zero, &m.gens[0]).unwrap();
    assert_eq!(m.labels(&v0), multiset(&["X", "A1", "D1"], &[]));
    for (i, (a, d)) in [("A2", "D2"), ("A3", "D3")].into_iter().enumerate() {
        let v = localize(&zero, &m.gens[i + 1]).unwrap();
        assert_eq!(m.labels(&v), multiset(&["X", a, d], &[]));
    }
    let v01 = localize(&v0, &m.gens[1]).unwrap();
    assert_eq!(m.labels(&v01), multiset(&["X", "A1", "A2", "B3", "C3", "D1", "D2", "F"], &[]));
    let v012 = localize(&v01, &m.gens[2]).unwrap();
    let all = [
        "X", "A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D2", "D3", "E", "F",
    ];
    assert_eq!(m.labels(&v012), multiset(&all, &[("F", 2)]));
}

#[test]
fn single_and_iterative_agree_on_a_product_of_minors() {
    let m = minors();
    let zero = zero_section(&m.cotangent).unwrap();
    let f = &m.gens[..2];
    let single = localize_cycle(&zero, f, Strategy::Single).unwrap();
    let iterative = localize_cycle(&zero, f, Strategy::Iterative).unwrap();
    assert_eq!(single, iterative);
}

#[test]
fn both_routes_agree_in_one_step() {
    let t = xyz();
    let r = t.base().unwrap();
    let zero = zero_section(&t).unwrap();
    for f in ["x", "x*y", "x^2 + y^2 - z^2", "x*y*z"] {
        let f = poly(&r, f);
        assert_eq!(localize_via(&zero, &f, Route::Divisor).unwrap(), localize_via(&zero, &f, Route::Limit).unwrap(), "{f}");
    }
    let m = minors();
    let zero = zero_section(&m.cotangent).unwrap();
    let a = localize_via(&zero, &m.gens[0], Route::Divisor).unwrap();
    let b = localize_via(&zero, &m.gens[0], Route::Limit).unwrap();
    assert_eq!(a, b);
}

#[test]
fn localized_components_are_holonomic_and_avoid_the_divisor() {
    let m = minors();
    let zero = zero_section(&m.cotangent).unwrap();
    let v = localize(&localize(&zero, &m.gens[0]).unwrap(), &m.gens[1]).unwrap();
    for (c, _) in v.components() {
        assert_eq!(hilbert::dimension(c.prime()).unwrap(), 6, "{c}");
    }
    // localizing again changes nothing
    assert_eq!(localize(&v, &m.gens[0]).unwrap(), v);
    assert_eq!(localize(&v, &m.gens[1]).unwrap(), v);
    let f = m.gens[0].mul(&m.gens[1]).unwrap();
    assert_eq!(localize(&v, &f).unwrap(), v);
}
