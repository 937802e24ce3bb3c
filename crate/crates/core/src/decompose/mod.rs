//! Minimal and associated primes by recursive splitting.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::hilbert::{self, hilbert_series};
use crate::poly::{Block, BlockKind, Monomial, MonomialOrder, Polynomial};

mod prime;
mod univariate;

use prime::Verdict;

const MAX_DEPTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Minimal,
    Embedded,
}

/// A prime over the decomposed ideal.
#[derive(Clone, Debug)]
pub struct Component {
    pub prime: Ideal,
    pub kind: ComponentKind,
    pub dimension: usize,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ComponentKind::Minimal => "minimal",
            ComponentKind::Embedded => "embedded",
        };
        write!(f, "{} [{kind}, dim {}]", self.prime, self.dimension)
    }
}

pub type ComponentList = Vec<Component>;

/// The inclusion-minimal primes over `ideal`; empty for the unit ideal.
pub fn minimal_primes(ideal: &Ideal) -> Result<ComponentList> {
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    let primes = if ideal.is_monomial() {
        monomial_primes(ideal, false)
    } else {
        let mut found = Vec::new();
        let mut seen = HashSet::new();
        split(ideal, &mut found, &mut seen, 0)?;
        found
    };
    let primes = minimalize(primes)?;
    primes
        .into_iter()
        .map(|p| {
            let dimension = hilbert::dimension(&p)?;
            Ok(Component {
                prime: p,
                kind: ComponentKind::Minimal,
                dimension,
            })
        })
        .collect()
}

/// Minimal primes together with the embedded primes of `ideal`.
pub fn associated_primes(ideal: &Ideal) -> Result<ComponentList> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let mut out = minimal_primes(ideal)?;
    let candidates = if ideal.is_monomial() {
        monomial_primes(ideal, true)
    } else {
        let mut c = Vec::new();
        candidates(ideal, &mut c, 0)?;
        c
    };
    let mut keys: HashSet<String> = out.iter().map(|c| c.prime.canonical_key()).collect();
    let mut fresh = Vec::new();
    for p in candidates {
        if keys.insert(p.canonical_key()) {
            fresh.push(p);
        }
    }
    let all: Vec<Ideal> = out.iter().map(|c| c.prime.clone()).chain(fresh.iter().cloned()).collect();
    for p in fresh {
        if is_associated(ideal, &p, &all)? {
            let dimension = hilbert::dimension(&p)?;
            out.push(Component {
                prime: p,
                kind: ComponentKind::Embedded,
                dimension,
            });
        }
    }
    out.sort_by(|a, b| b.dimension.cmp(&a.dimension).then(a.kind.cmp_key().cmp(&b.kind.cmp_key())));
    Ok(out)
}

impl ComponentKind {
    fn cmp_key(self) -> u8 {
        match self {
            ComponentKind::Minimal => 0,
            ComponentKind::Embedded => 1,
        }
    }
}

/// Length at `p` of the `p`-torsion of `R / C`, for an embedded prime `p` of `C`.
pub fn embedded_length(c: &Ideal, p: &Ideal) -> Result<u64> {
    let ass = associated_primes(c)?;
    let key = p.canonical_key();
    let me = ass
        .iter()
        .find(|a| a.prime.canonical_key() == key)
        .ok_or(Error::NotAssociated)?;
    if me.kind != ComponentKind::Embedded {
        return Err(Error::NotAssociated);
    }
    let others: Vec<Ideal> = ass.iter().map(|a| a.prime.clone()).collect();
    let s = separator(p, &others)?;
    let local = if s.is_constant() { c.clone() } else { c.saturate(&s)? };
    let torsion_free = local.saturate_ideal(p)?;
    let diff = hilbert_series(&local).difference(&hilbert_series(&torsion_free));
    let hp = hilbert_series(p);
    if diff.is_zero() || diff.dimension() != hp.dimension() {
        return Err(Error::NotAssociated);
    }
    let (e, ep) = (diff.degree(), hp.degree());
    if ep <= 0 || e % ep != 0 {
        return Err(Error::UnresolvedComponent(format!(
            "torsion degree {e} is not a multiple of degree {ep} of {p}"
        )));
    }
    Ok((e / ep) as u64)
}

/// Multiplicity attached to an embedded prime `p` of the divisor of `f`
/// on the relative conormal over `V(y)`.
pub fn refine_embedded(y: &Ideal, f: &Polynomial, p: &Ideal) -> Result<u64> {
    let input = crate::conormal::ConormalInput::new(p.ring(), y, f)?;
    let c = crate::conormal::divisor_ideal(&input)?;
    embedded_length(&c.ideal, p)
}

/// Product over the primes `q` not contained in `p` of a basis element of
/// `q` outside `p`.
pub(crate) fn separator(p: &Ideal, others: &[Ideal]) -> Result<Polynomial> {
    let mut s = Polynomial::one(p.ring());
    for q in others {
        if p.contains_ideal(q)? {
            continue;
        }
        let g = q
            .gb()
            .polys()
            .iter()
            .find(|g| !p.contains(g).unwrap_or(true))
            .cloned()
            .expect("q is not contained in p");
        s = s.mul(&g)?;
    }
    Ok(s)
}

fn is_associated(ideal: &Ideal, p: &Ideal, all: &[Ideal]) -> Result<bool> {
    if !p.contains_ideal(ideal)? {
        return Ok(false);
    }
    let s = separator(p, all)?;
    let local = if s.is_constant() { ideal.clone() } else { ideal.saturate(&s)? };
    if local.is_unit() {
        return Ok(false);
    }
    Ok(!local.quotient_ideal(p)?.same_ideal(&local))
}

/// Drops duplicates and primes containing another prime of the list.
fn minimalize(mut primes: Vec<Ideal>) -> Result<Vec<Ideal>> {
    let mut dims = Vec::with_capacity(primes.len());
    for p in &primes {
        dims.push(hilbert::dimension(p)?);
    }
    let mut idx: Vec<usize> = (0..primes.len()).collect();
    idx.sort_by(|&a, &b| dims[b].cmp(&dims[a]).then(primes[a].canonical_key().cmp(&primes[b].canonical_key())));
    let mut kept: Vec<Ideal> = Vec::new();
    for i in idx {
        let p = &primes[i];
        let mut redundant = false;
        for q in &kept {
            if p.contains_ideal(q)? {
                redundant = true;
                break;
            }
        }
        if !redundant {
            kept.push(p.reduced());
        }
    }
    primes.clear();
    Ok(kept)
}

fn split(ideal: &Ideal, found: &mut Vec<Ideal>, seen: &mut HashSet<String>, depth: usize) -> Result<()> {
    if ideal.is_unit() {
        return Ok(());
    }
    if !seen.insert(ideal.canonical_key()) {
        return Ok(());
    }
    for p in found.iter() {
        if ideal.contains_ideal(p)? {
            return Ok(());
        }
    }
    if depth > MAX_DEPTH {
        return Err(Error::UnresolvedComponent(format!("splitting depth exceeded at {ideal}")));
    }
    match find_split(ideal)? {
        Some(g) => {
            log::trace!("split {ideal} on {g}");
            split(&ideal.saturate(&g)?, found, seen, depth + 1)?;
            split(&ideal.add_polys(&[g])?, found, seen, depth + 1)
        }
        None => match prime::certify(ideal)? {
            Verdict::Prime => {
                found.push(ideal.reduced());
                Ok(())
            }
            Verdict::Split(g) => {
                log::trace!("split {ideal} on {g}");
                split(&ideal.saturate(&g)?, found, seen, depth + 1)?;
                split(&ideal.add_polys(&[g])?, found, seen, depth + 1)
            }
            Verdict::Unknown(msg) => Err(Error::UnresolvedComponent(msg)),
        },
    }
}

/// A polynomial `g ∉ I` that is a zero divisor modulo `I`, if one is found.
fn find_split(ideal: &Ideal) -> Result<Option<Polynomial>> {
    let gb = ideal.gb();
    let ring = ideal.ring();
    let n = ring.nvars();
    // monomial factors of basis elements
    for p in gb.polys() {
        let m = p.monomial_content();
        if m.is_one() {
            continue;
        }
        if p.len() == 1 && m.degree() == 1 {
            continue;
        }
        let v = (0..n).find(|&v| m.exp(v) > 0).expect("nonconstant content");
        return Ok(Some(Polynomial::var(ring, v)));
    }
    // polynomial factors of basis elements
    for p in gb.polys() {
        if let Some(g) = proper_factor(p)? {
            if !ideal.contains(&g)? {
                return Ok(Some(g));
            }
        }
    }
    // variables that are zero divisors
    for v in 0..n {
        let x = Polynomial::var(ring, v);
        if ideal.contains(&x)? {
            continue;
        }
        let sat = ideal.saturate(&x)?;
        if !sat.same_ideal(ideal) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// A nonconstant proper factor of `p` found by content and squarefree
/// decomposition with respect to single variables.
pub(crate) fn proper_factor(p: &Polynomial) -> Result<Option<Polynomial>> {
    let m = p.monomial_content();
    let p = if m.is_one() {
        p.clone()
    } else {
        p.div_monomial(&m).expect("content divides")
    };
    if p.is_constant() {
        return Ok(None);
    }
    let deg = p.total_degree().unwrap_or(0);
    let is_proper = |g: &Polynomial| !g.is_constant() && g.total_degree().unwrap_or(0) < deg;
    for v in p.support() {
        let coeffs = coefficients_in(&p, v);
        if coeffs.len() < 2 {
            continue;
        }
        let mut g = coeffs[0].clone();
        for c in &coeffs[1..] {
            if g.is_constant() {
                break;
            }
            g = gcd(&g, c)?;
        }
        if is_proper(&g) {
            return Ok(Some(g.monic()));
        }
    }
    for v in p.support() {
        let d = p.partial_derivative(v);
        let g = gcd(&p, &d)?;
        if is_proper(&g) {
            return Ok(Some(g.monic()));
        }
    }
    Ok(None)
}

/// Coefficients of `p` as a polynomial in `x_v`.
fn coefficients_in(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let mut by_deg: BTreeMap<u32, Vec<crate::poly::Term>> = BTreeMap::new();
    for t in p.terms() {
        let mut mono = t.mono;
        let e = mono.exp(v);
        mono.set_exp(v, 0);
        by_deg.entry(e).or_default().push(crate::poly::Term {
            coeff: t.coeff.clone(),
            mono,
        });
    }
    by_deg
        .into_values()
        .map(|terms| Polynomial::from_terms(p.ring(), terms))
        .collect()
}

/// Monic greatest common divisor (constant `1` when coprime).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let ring = a.ring();
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(ring));
    }
    if a.len() == 1 || b.len() == 1 {
        let m = a.monomial_content().gcd(&b.monomial_content());
        return Ok(Polynomial::monomial(ring, crate::poly::Coeff::from_integer(1.into()), m));
    }
    if let Some(q) = a.div_exact(b) {
        let _ = q;
        return Ok(b.monic());
    }
    if let Some(q) = b.div_exact(a) {
        let _ = q;
        return Ok(a.monic());
    }
    let ia = Ideal::new(ring, vec![a.clone()])?;
    let ib = Ideal::new(ring, vec![b.clone()])?;
    let lcm = ia.intersect(&ib)?;
    let gb = lcm.gb();
    let l = gb.polys().first().expect("principal intersection").clone();
    let g = a.mul(b)?.div_exact(&l).expect("lcm divides the product");
    Ok(g.monic())
}

/// Associated primes of `I` whose extension to `K(U)[X]` is proper, for a
/// maximal independent set `U`, then the same for `I + (h^k)`.
fn candidates(ideal: &Ideal, out: &mut Vec<Ideal>, depth: usize) -> Result<()> {
    if ideal.is_unit() {
        return Ok(());
    }
    if depth > MAX_DEPTH {
        return Err(Error::UnresolvedComponent(format!("embedded search depth exceeded at {ideal}")));
    }
    for c in minimal_primes(ideal)? {
        out.push(c.prime);
    }
    let n = ideal.ring().nvars();
    let u = maximal_independent_set(n, &ideal.gb().leading_monomials());
    let h = extension_denominator(ideal, &u);
    if h.is_constant() {
        return Ok(());
    }
    let sat = ideal.saturate(&h)?;
    if sat.same_ideal(ideal) {
        return Ok(());
    }
    let mut k = 1u32;
    let mut q = ideal.quotient(&h)?;
    while !q.same_ideal(&sat) {
        q = q.quotient(&h)?;
        k += 1;
    }
    candidates(&ideal.add_polys(&[h.pow(k)])?, out, depth + 1)
}

/// Product of the distinct leading coefficients of a basis for the block
/// order with the variables outside `u` first, viewed over `K[u]`.
fn extension_denominator(ideal: &Ideal, u: &[usize]) -> Polynomial {
    let ring = ideal.ring();
    let n = ring.nvars();
    let rest: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
    if u.is_empty() || rest.is_empty() {
        return Polynomial::one(ring);
    }
    let order = MonomialOrder::Block(vec![
        Block {
            vars: rest.clone(),
            kind: BlockKind::GrevLex,
        },
        Block {
            vars: u.to_vec(),
            kind: BlockKind::GrevLex,
        },
    ]);
    let gb = ideal.groebner_basis(&order);
    let mut h = Polynomial::one(ring);
    let mut seen = HashSet::new();
    for p in gb.polys() {
        let (_, lm) = p.leading_term(&order).expect("nonzero");
        let mut lead_rest = Monomial::one(n);
        for &v in &rest {
            lead_rest.set_exp(v, lm.exp(v));
        }
        let terms: Vec<crate::poly::Term> = p
            .terms()
            .iter()
            .filter(|t| rest.iter().all(|&v| t.mono.exp(v) == lead_rest.exp(v)))
            .map(|t| crate::poly::Term {
                coeff: t.coeff.clone(),
                mono: t.mono.div(&lead_rest).expect("same rest part"),
            })
            .collect();
        let c = Polynomial::from_terms(ring, terms).monic();
        if !c.is_constant() && seen.insert(c.to_string()) {
            h = h.mul_unchecked(&c);
        }
    }
    h
}

/// A largest set of variables containing no leading monomial's support.
pub fn maximal_independent_set(nvars: usize, leading: &[Monomial]) -> Vec<usize> {
    let masks: Vec<u64> = leading.iter().map(|m| m.support_mask()).collect();
    let mut best = Vec::new();
    let mut cur = Vec::new();
    fn rec(v: usize, n: usize, mask: u64, masks: &[u64], cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() + (n - v) <= best.len() {
            return;
        }
        if v == n {
            *best = cur.clone();
            return;
        }
        let with = mask | (1u64 << v);
        if masks.iter().all(|&m| m & !with != 0) {
            cur.push(v);
            rec(v + 1, n, with, masks, cur, best);
            cur.pop();
        }
        rec(v + 1, n, mask, masks, cur, best);
    }
    if masks.contains(&0) {
        return best;
    }
    rec(0, nvars, 0, &masks, &mut cur, &mut best);
    best
}

/// Primes of a monomial ideal from its irreducible decomposition: the
/// minimal ones, or all associated ones.
fn monomial_primes(ideal: &Ideal, all: bool) -> Vec<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let gens: Vec<Monomial> = ideal.gb().leading_monomials();
    let mut comps: Vec<Vec<u32>> = Vec::new();
    irreducible(n, gens, &mut comps);
    // irredundant: drop components containing another one
    let contains = |a: &Vec<u32>, b: &Vec<u32>| {
        // ideal of `a` contains ideal of `b`: each generator x_i^{b_i} of b is
        // divisible by a generator x_i^{a_i} of a with a_i <= b_i
        (0..n).all(|i| b[i] == 0 || (a[i] != 0 && a[i] <= b[i]))
    };
    comps.sort();
    comps.dedup();
    let mut irr: Vec<Vec<u32>> = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let redundant = comps.iter().enumerate().any(|(j, d)| j != i && contains(c, d) && c != d);
        if !redundant {
            irr.push(c.clone());
        }
    }
    let mut supports: Vec<u64> = irr
        .iter()
        .map(|c| (0..n).filter(|&i| c[i] > 0).fold(0u64, |m, i| m | (1 << i)))
        .collect();
    supports.sort();
    supports.dedup();
    if !all {
        let s2 = supports.clone();
        supports.retain(|&s| !s2.iter().any(|&t| t != s && t & s == t));
    }
    supports
        .into_iter()
        .map(|s| {
            let vars: Vec<usize> = (0..n).filter(|&i| s & (1 << i) != 0).collect();
            Ideal::variables(ring, &vars).reduced()
        })
        .collect()
}

/// Irreducible components (exponent vectors, 0 = absent) of a monomial ideal.
fn irreducible(n: usize, gens: Vec<Monomial>, out: &mut Vec<Vec<u32>>) {
    let gens = minimal_monomials(gens);
    if let Some(g) = gens.iter().find(|g| (0..n).filter(|&i| g.exp(i) > 0).count() > 1) {
        let v = (0..n).find(|&i| g.exp(i) > 0).unwrap();
        let mut pure = Monomial::one(n);
        pure.set_exp(v, g.exp(v));
        let mut rest = *g;
        rest.set_exp(v, 0);
        let mut a = gens.clone();
        a.push(pure);
        let mut b = gens.clone();
        b.push(rest);
        irreducible(n, a, out);
        irreducible(n, b, out);
        return;
    }
    let mut c = vec![0u32; n];
    for g in &gens {
        for (i, ci) in c.iter_mut().enumerate() {
            if g.exp(i) > 0 {
                *ci = g.exp(i);
            }
        }
    }
    out.push(c);
}

fn minimal_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}
