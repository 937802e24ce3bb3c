//! Relative conormal varieties and the divisor of a function on them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{kernel_mod, Ideal};
use crate::hilbert;
use crate::poly::{same_ring, Polynomial, Ring};

/// Base ideal `I` of `Y ⊂ X`, a function `f` and the doubled ring `R[a]`.
#[derive(Clone, Debug)]
pub struct ConormalInput {
    ring: Arc<Ring>,
    base: Ideal,
    f: Polynomial,
}

impl ConormalInput {
    /// `ring` must be split; `base` and `f` live in its base ring.
    pub fn new(ring: &Arc<Ring>, base: &Ideal, f: &Polynomial) -> Result<ConormalInput> {
        let r = ring.base()?;
        if !same_ring(&r, base.ring()) || !same_ring(&r, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if base.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(ConormalInput {
            ring: ring.clone(),
            base: base.clone(),
            f: f.clone(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }
}

/// The ideal `C` of the divisor of `f` on `T*_{f|Y}`, with its origin.
#[derive(Clone, Debug)]
pub struct DivisorIdeal {
    pub ideal: Ideal,
    pub base: Ideal,
    pub f: Polynomial,
}

/// `I°`: the points of `Y` where `∇f` vanishes, together with `Sing(Y)`.
pub fn bad_locus_ideal(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let grad = f.gradient(0..i.ring().nvars());
    let critical = i.add_polys(&grad)?;
    let sing = i.add_polys(&jacobian_minors(i)?)?;
    critical.intersect(&sing)
}

/// Reduced basis of `I` used as the generators `g_1..g_d`.
fn generators(i: &Ideal) -> Vec<Polynomial> {
    i.gb().polys().to_vec()
}

fn codimension(i: &Ideal) -> Result<usize> {
    Ok(i.ring().nvars() - hilbert::dimension(i)?)
}

/// All `c × c` minors of the Jacobian of `I`, `c = codim Y`.
pub fn jacobian_minors(i: &Ideal) -> Result<Vec<Polynomial>> {
    let c = codimension(i)?;
    let ring = i.ring();
    if c == 0 {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let jac = jacobian(i);
    let mut det = Determinants::new(&jac);
    let mut out = Vec::new();
    for rows in subsets(jac.len(), c) {
        for cols in subsets(ring.nvars(), c) {
            let d = det.minor(&rows, &cols);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

fn jacobian(i: &Ideal) -> Vec<Vec<Polynomial>> {
    let n = i.ring().nvars();
    generators(i).iter().map(|g| g.gradient(0..n)).collect()
}

/// Some `c × c` Jacobian minor outside `I`, if any.
fn minor_outside(i: &Ideal) -> Result<Option<Polynomial>> {
    let c = codimension(i)?;
    let ring = i.ring();
    if c == 0 {
        return Ok(Some(Polynomial::one(ring)));
    }
    let jac = jacobian(i);
    let mut det = Determinants::new(&jac);
    let mut best: Option<Polynomial> = None;
    for rows in subsets(jac.len(), c) {
        for cols in subsets(ring.nvars(), c) {
            let d = det.minor(&rows, &cols);
            if d.is_zero() || i.contains(&d)? {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => (d.total_degree(), d.len()) < (b.total_degree(), b.len()),
            };
            if better {
                best = Some(d);
            }
        }
    }
    Ok(best)
}

/// Laplace expansion along the first row, memoized on (rows, cols).
struct Determinants<'a> {
    m: &'a [Vec<Polynomial>],
    memo: HashMap<(Vec<usize>, Vec<usize>), Polynomial>,
}

impl<'a> Determinants<'a> {
    fn new(m: &'a [Vec<Polynomial>]) -> Self {
        Determinants { m, memo: HashMap::new() }
    }

    fn minor(&mut self, rows: &[usize], cols: &[usize]) -> Polynomial {
        if rows.len() == 1 {
            return self.m[rows[0]][cols[0]].clone();
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(d) = self.memo.get(&key) {
            return d.clone();
        }
        let ring = self.m[rows[0]][cols[0]].ring().clone();
        let mut acc = Polynomial::zero(&ring);
        for (k, &c) in cols.iter().enumerate() {
            let e = &self.m[rows[0]][c];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.minor(&rows[1..], &rest);
            let term = e.mul_unchecked(&sub);
            acc = if k % 2 == 0 {
                acc.add_unchecked(&term)
            } else {
                acc.add_unchecked(&term.neg())
            };
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `I + (a · b : b ∈ K)` in `R[a]` for the kernel `K` of `rows` modulo `modulus`.
fn conic_ideal(ring: &Arc<Ring>, rows: &[Vec<Polynomial>], modulus: &Ideal) -> Result<Ideal> {
    let n = modulus.ring().nvars();
    let mut gens: Vec<Polynomial> = generators(modulus).iter().map(|g| g.embed(ring)).collect();
    if rows.is_empty() {
        // no conditions: every covector annihilates the zero tangent condition set
        return Ideal::new(ring, gens);
    }
    let k = kernel_mod(rows, modulus)?;
    for b in k.gens() {
        let mut s = Polynomial::zero(ring);
        for (j, e) in b.entries().iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            s = s.add_unchecked(&e.embed(ring).mul_unchecked(&Polynomial::var(ring, n + j)));
        }
        if !s.is_zero() {
            gens.push(s);
        }
    }
    Ideal::new(ring, gens)
}

/// Whether `I` is prime, remembered across calls by canonical key.
fn is_prime(i: &Ideal) -> Result<bool> {
    use std::sync::Mutex;
    static CACHE: Mutex<Option<HashMap<String, bool>>> = Mutex::new(None);
    let key = format!("{}|{}", i.ring(), i.canonical_key());
    if let Some(v) = CACHE.lock().expect("cache").get_or_insert_with(HashMap::new).get(&key) {
        return Ok(*v);
    }
    let mins = crate::decompose::minimal_primes(i)?;
    let v = mins.len() == 1 && mins[0].prime.same_ideal(i);
    CACHE.lock().expect("cache").get_or_insert_with(HashMap::new).insert(key, v);
    Ok(v)
}

/// `J_sat = J : (I°)^∞` with `J = I + (a · b : b ∈ ker(∇f, ∇g_1..∇g_d) mod I)`.
pub fn relative_conormal_ideal(input: &ConormalInput) -> Result<Ideal> {
    let (i, f, ring) = (&input.base, &input.f, &input.ring);
    if i.radical_contains(f)? {
        return Err(Error::VanishesOnBase);
    }
    let n = i.ring().nvars();
    let grad = f.gradient(0..n);
    let mut rows = vec![grad.clone()];
    rows.extend(jacobian(i));
    let j = conic_ideal(ring, &rows, i)?;
    if is_prime(i)? {
        // For prime I the saturation by I° equals the saturation by any
        // element of I° outside I.
        let Some(df) = grad.iter().find(|d| !i.contains(d).unwrap_or(true)) else {
            return Ok(Ideal::unit(ring));
        };
        let minor = minor_outside(i)?.ok_or_else(|| {
            Error::UnresolvedComponent(format!("no Jacobian minor of {i} survives modulo the ideal"))
        })?;
        let h = df.mul(&minor)?;
        if h.is_constant() {
            return Ok(j);
        }
        j.saturate(&h.embed(ring))
    } else {
        let bad = bad_locus_ideal(i, f)?;
        if bad.is_unit() {
            return Ok(j);
        }
        j.saturate_ideal(&bad.embed(ring))
    }
}

/// `C = J_sat + (f) + J_f`, where `J_f` is built like `J` modulo `I + (f)`.
pub fn divisor_ideal(input: &ConormalInput) -> Result<DivisorIdeal> {
    let (i, f, ring) = (&input.base, &input.f, &input.ring);
    let jsat = relative_conormal_ideal(input)?;
    let n = i.ring().nvars();
    let mut rows = vec![f.gradient(0..n)];
    rows.extend(jacobian(i));
    let jf = conic_ideal(ring, &rows, &i.add_polys(std::slice::from_ref(f))?)?;
    let c = jsat.add(&jf)?.add_polys(&[f.embed(ring)])?;
    Ok(DivisorIdeal {
        ideal: c.reduced(),
        base: i.clone(),
        f: f.clone(),
    })
}

/// Ideal of the conormal variety `T*_Z X` of an irreducible `Z = V(p)`.
pub fn conormal_ideal(ring: &Arc<Ring>, p: &Ideal) -> Result<Ideal> {
    if !same_ring(&ring.base()?, p.ring()) {
        return Err(Error::RingMismatch);
    }
    if p.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = p.ring().nvars();
    if p.is_zero() {
        let gens = (n..2 * n).map(|v| Polynomial::var(ring, v)).collect();
        return Ideal::new(ring, gens);
    }
    let rows = jacobian(p);
    let j = conic_ideal(ring, &rows, p)?;
    let minor = minor_outside(p)?
        .ok_or_else(|| Error::UnresolvedComponent(format!("no Jacobian minor of {p} survives modulo the ideal")))?;
    if minor.is_constant() {
        return Ok(j.reduced());
    }
    Ok(j.saturate(&minor.embed(ring))?.reduced())
}
