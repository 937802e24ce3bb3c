//! Primality certificates for the leaves of the splitting recursion.
//!
//! A leaf `I` of dimension `d` with maximal independent set `U` is first made
//! equal to its contraction from `K(U)[rest]`. Then a random linear form `ℓ`
//! in the remaining variables is eliminated down to `g(U, t) ∈ K[U, t]`. When
//! `deg_t g` equals the vector-space dimension of `K(U)[rest]/I` and `g` is
//! irreducible over `K(U)`, the extension is a field and `I` is prime.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::univariate::irreducible;
use super::{extension_denominator, maximal_independent_set, proper_factor};
use crate::error::Result;
use crate::groebner::Ideal;
use crate::poly::{Block, BlockKind, Coeff, MonomialOrder, Polynomial};

const ATTEMPTS: usize = 4;
const SPECIALIZATIONS: usize = 6;

#[derive(Clone, Debug)]
pub(crate) enum Verdict {
    Prime,
    /// A zero divisor modulo the ideal.
    Split(Polynomial),
    Unknown(String),
}

pub(crate) fn certify(ideal: &Ideal) -> Result<Verdict> {
    static CACHE: Mutex<Option<HashMap<String, Verdict>>> = Mutex::new(None);
    let key = format!("{}|{}", ideal.ring(), ideal.canonical_key());
    if let Some(v) = CACHE.lock().expect("cache").get_or_insert_with(HashMap::new).get(&key) {
        return Ok(v.clone());
    }
    let v = certify_uncached(ideal, &key)?;
    CACHE.lock().expect("cache").get_or_insert_with(HashMap::new).insert(key, v.clone());
    Ok(v)
}

fn certify_uncached(ideal: &Ideal, key: &str) -> Result<Verdict> {
    let gb = ideal.gb();
    if gb.polys().iter().all(|p| p.total_degree() == Some(1)) {
        return Ok(Verdict::Prime);
    }
    let ring = ideal.ring();
    let n = ring.nvars();
    let u = maximal_independent_set(n, &gb.leading_monomials());
    let rest: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
    let h = extension_denominator(ideal, &u);
    if !h.is_constant() {
        if let Some(z) = zero_divisor_factor(ideal, &h)? {
            return Ok(Verdict::Split(z));
        }
    }
    let count = match extension_dimension(ideal, &u, &rest) {
        Some(c) => c,
        None => return Ok(Verdict::Unknown(format!("{ideal} is not zero-dimensional over its independent set"))),
    };
    if count == 1 {
        return Ok(Verdict::Prime);
    }
    let mut hasher = Sha256::new();
    hasher.update(key.as_bytes());
    let mut rng = ChaCha8Rng::from_seed(hasher.finalize().into());
    let ext = ring.extend(&["t"])?;
    let t = n;
    for _ in 0..ATTEMPTS {
        let mut ell = Polynomial::zero(ring);
        for (k, &v) in rest.iter().enumerate() {
            let c = if k == 0 { 1 } else { rng.gen_range(-9i64..=9) };
            ell = ell.add_unchecked(&Polynomial::var(ring, v).scale(&Coeff::from_integer(c.into())));
        }
        let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.embed(&ext)).collect();
        gens.push(Polynomial::var(&ext, t).sub(&ell.embed(&ext))?);
        let elim = Ideal::new(&ext, gens)?.eliminate(&rest)?;
        let g = match elim.gb().polys() {
            [g] => g.clone(),
            _ => continue,
        };
        let dt = g.degree_in(t) as usize;
        let mut back: Vec<Polynomial> = (0..n).map(|v| Polynomial::var(ring, v)).collect();
        back.push(ell.clone());
        if let Some(phi) = proper_factor(&g)? {
            let z = phi.substitute(ring, &back);
            if let Some(z) = zero_divisor_factor(ideal, &z)? {
                return Ok(Verdict::Split(z));
            }
        }
        if dt != count {
            continue;
        }
        for _ in 0..SPECIALIZATIONS {
            let point: Vec<Coeff> = (0..=n)
                .map(|v| {
                    let c = if u.contains(&v) { rng.gen_range(-50i64..=50) } else { 0 };
                    Coeff::from_integer(c.into())
                })
                .collect();
            let Some(coeffs) = specialize(&g, t, &point, dt) else {
                continue;
            };
            if irreducible(&coeffs) == Some(true) {
                return Ok(Verdict::Prime);
            }
        }
    }
    Ok(Verdict::Unknown(format!("could not certify that {ideal} is prime")))
}

/// `z` itself, or one of its factors, when it is a zero divisor modulo `I`.
fn zero_divisor_factor(ideal: &Ideal, z: &Polynomial) -> Result<Option<Polynomial>> {
    if z.is_constant() || ideal.contains(z)? {
        return Ok(None);
    }
    if ideal.saturate(z)?.same_ideal(ideal) {
        return Ok(None);
    }
    Ok(Some(z.clone()))
}

/// Dimension of `K(U)[rest]/I` from the leading terms of a basis for the
/// block order with `rest` first.
fn extension_dimension(ideal: &Ideal, u: &[usize], rest: &[usize]) -> Option<usize> {
    if rest.is_empty() {
        return Some(1);
    }
    let order = if u.is_empty() {
        MonomialOrder::GrevLex
    } else {
        MonomialOrder::Block(vec![
            Block {
                vars: rest.to_vec(),
                kind: BlockKind::GrevLex,
            },
            Block {
                vars: u.to_vec(),
                kind: BlockKind::GrevLex,
            },
        ])
    };
    let gb = ideal.groebner_basis(&order);
    let mut lead: Vec<Vec<u32>> = Vec::new();
    for p in gb.polys() {
        let (_, lm) = p.leading_term(&order).ok()?;
        lead.push(rest.iter().map(|&v| lm.exp(v)).collect());
    }
    let mut bound = vec![0u32; rest.len()];
    for (i, b) in bound.iter_mut().enumerate() {
        *b = lead
            .iter()
            .filter(|e| e.iter().enumerate().all(|(j, &x)| j == i || x == 0) && e[i] > 0)
            .map(|e| e[i])
            .min()?;
    }
    let mut count = 0usize;
    let mut e = vec![0u32; rest.len()];
    loop {
        if !lead.iter().any(|l| l.iter().zip(&e).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == e.len() {
                return Some(count);
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Integer coefficients of `g(point, t)` in `t`, or `None` when the degree drops.
fn specialize(g: &Polynomial, t: usize, point: &[Coeff], dt: usize) -> Option<Vec<BigInt>> {
    let mut coeffs = vec![Coeff::zero(); dt + 1];
    for term in g.terms() {
        let mut c = term.coeff.clone();
        for (v, x) in point.iter().enumerate() {
            let e = term.mono.exp(v);
            if v != t && e > 0 {
                c *= num_traits::pow::pow(x.clone(), e as usize);
            }
        }
        coeffs[term.mono.exp(t) as usize] += c;
    }
    if coeffs[dt].is_zero() {
        return None;
    }
    let mut den = BigInt::one();
    for c in &coeffs {
        den = den.lcm(c.denom());
    }
    Some(
        coeffs
            .iter()
            .map(|c| (c * Coeff::from_integer(den.clone())).to_integer())
            .collect(),
    )
}
