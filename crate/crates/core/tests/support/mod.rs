#![allow(dead_code)]

pub mod oracles;

use std::sync::Arc;

use charcycle::{parse_polynomial, Coeff, Ideal, Monomial, Polynomial, Ring};
use num_bigint::BigInt;
use rand::Rng;

pub fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
}

/// Random polynomial with up to `terms` terms of degree at most `deg`.
pub fn random_poly<R: Rng>(r: &Arc<Ring>, rng: &mut R, deg: u32, terms: usize) -> Polynomial {
    let n = r.nvars();
    let mut acc = Polynomial::zero(r);
    for _ in 0..rng.gen_range(1..=terms) {
        let mut e = vec![0u32; n];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c: i64 = rng.gen_range(-5..=5);
        let c = if c == 0 { 1 } else { c };
        let t = Polynomial::monomial(r, Coeff::from_integer(BigInt::from(c)), Monomial::from_exponents(&e));
        acc = acc.add(&t).unwrap();
    }
    if acc.is_zero() {
        Polynomial::var(r, 0)
    } else {
        acc
    }
}

/// Random rational point.
pub fn random_point<R: Rng>(n: usize, rng: &mut R) -> Vec<Coeff> {
    (0..n)
        .map(|_| Coeff::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4))))
        .collect()
}

/// The 2x2 minors of a generic 2x3 matrix, in `Q[x1..x6]` and its cotangent ring.
pub struct Minors {
    pub cotangent: Arc<Ring>,
    pub base: Arc<Ring>,
    pub gens: Vec<Polynomial>,
}

pub fn minors() -> Minors {
    let base = Ring::new(&["x1", "x2", "x3", "x4", "x5", "x6"]).unwrap();
    let cotangent = Ring::cotangent(&base).unwrap();
    let gens = ["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"]
        .iter()
        .map(|g| poly(&base, g))
        .collect();
    Minors { cotangent, base, gens }
}

impl Minors {
    /// The fourteen named strata of the minors cube.
    pub fn strata(&self) -> Vec<(&'static str, Ideal)> {
        let f1 = "x1*x5 - x2*x4";
        let f2 = "x1*x6 - x3*x4";
        let f3 = "x2*x6 - x3*x5";
        let r = &self.base;
        vec![
            ("X", Ideal::zero(r)),
            ("A1", ideal(r, &[f1])),
            ("A2", ideal(r, &[f2])),
            ("A3", ideal(r, &[f3])),
            ("B1", ideal(r, &["x3", "x6"])),
            ("B2", ideal(r, &["x2", "x5"])),
            ("B3", ideal(r, &["x1", "x4"])),
            ("C1", ideal(r, &["x3", "x6", f1])),
            ("C2", ideal(r, &["x2", "x5", f2])),
            ("C3", ideal(r, &["x1", "x4", f3])),
            ("D1", ideal(r, &["x1", "x2", "x4", "x5"])),
            ("D2", ideal(r, &["x1", "x3", "x4", "x6"])),
            ("D3", ideal(r, &["x2", "x3", "x5", "x6"])),
            ("E", ideal(r, &["x1", "x2", "x3", "x4", "x5", "x6"])),
            ("F", ideal(r, &[f1, f2, f3])),
        ]
    }

    /// The cycle as `label ↦ multiplicity`; panics on an unnamed component.
    pub fn labels(&self, cc: &charcycle::cycles::CharCycle) -> std::collections::BTreeMap<&'static str, u64> {
        let strata = self.strata();
        let mut out = std::collections::BTreeMap::new();
        for (c, m) in cc.components() {
            let key = c.base().canonical_key();
            let (name, _) = strata
                .iter()
                .find(|(_, i)| i.canonical_key() == key)
                .unwrap_or_else(|| panic!("unnamed component over {}", c.base()));
            *out.entry(*name).or_default() += m;
        }
        out
    }
}

/// `label ↦ 1` for each label, with `extra` multiplicities overriding.
pub fn multiset(labels: &[&'static str], extra: &[(&'static str, u64)]) -> std::collections::BTreeMap<&'static str, u64> {
    let mut out: std::collections::BTreeMap<&'static str, u64> = labels.iter().map(|l| (*l, 1)).collect();
    for (l, m) in extra {
        out.insert(l, *m);
    }
    out
}

/// Multiplicity of the origin component at each vertex of the cube of the
/// second local cohomology module of the minors ideal, cut down by `x1..x6`.
/// Vertices are written as the digits of the variables they invert.
pub const ORIGIN_MULTIPLICITIES: [(&str, u64); 64] = [
    ("", 0),
    ("1", 0),
    ("12", 1),
    ("123", 2),
    ("1234", 3),
    ("12345", 3),
    ("123456", 3),
    ("12346", 3),
    ("1235", 3),
    ("12356", 3),
    ("1236", 3),
    ("124", 1),
    ("1245", 1),
    ("12456", 3),
    ("1246", 3),
    ("125", 1),
    ("1256", 3),
    ("126", 3),
    ("13", 1),
    ("134", 1),
    ("1345", 3),
    ("13456", 3),
    ("1346", 1),
    ("135", 3),
    ("1356", 3),
    ("136", 1),
    ("14", 0),
    ("145", 1),
    ("1456", 3),
    ("146", 1),
    ("15", 1),
    ("156", 3),
    ("16", 1),
    ("2", 0),
    ("23", 1),
    ("234", 3),
    ("2345", 3),
    ("23456", 3),
    ("2346", 3),
    ("235", 1),
    ("2356", 1),
    ("236", 1),
    ("24", 1),
    ("245", 1),
    ("2456", 3),
    ("246", 3),
    ("25", 0),
    ("256", 1),
    ("26", 1),
    ("3", 0),
    ("34", 1),
    ("345", 3),
    ("3456", 3),
    ("346", 1),
    ("35", 1),
    ("356", 1),
    ("36", 0),
    ("4", 0),
    ("45", 1),
    ("456", 2),
    ("46", 1),
    ("5", 0),
    ("56", 1),
    ("6", 0),
];

/// Vertex bitmask from the digits of `ORIGIN_MULTIPLICITIES`.
pub fn vertex_of_digits(digits: &str) -> u32 {
    digits.chars().map(|c| 1u32 << (c.to_digit(10).unwrap() - 1)).sum()
}

/// `T*(k^n)` over variables `x1..xn`.
pub fn cotangent(n: usize) -> Arc<Ring> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Ring::cotangent(&Ring::new(&names).unwrap()).unwrap()
}

pub fn squarefree(r: &Arc<Ring>, sets: &[Vec<usize>]) -> Vec<Polynomial> {
    sets.iter()
        .map(|s| s.iter().fold(Polynomial::one(r), |acc, &v| acc.mul(&Polynomial::var(r, v)).unwrap()))
        .collect()
}

/// Random squarefree monomial generators, none dividing another.
pub fn random_squarefree<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut masks: Vec<u32> = Vec::new();
    while masks.len() < k {
        let m = rng.gen_range(1u32..1 << n);
        if masks.iter().all(|&o| o & m != o && o & m != m) {
            masks.push(m);
        }
        if masks.len() < k && rng.gen_ratio(1, 20) {
            break;
        }
    }
    masks.iter().map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect()).collect()
}
