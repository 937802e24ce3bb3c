use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::ring::same_ring;
use crate::poly::{Coeff, Monomial, MonomialOrder, Ring};

/// A coefficient and its monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Multivariate polynomial over the rationals.
///
/// Terms are kept sparse, free of zero coefficients and sorted descending
/// under graded reverse lexicographic order, so structural equality is
/// mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.push(Term {
                coeff: c,
                mono: Monomial::one(ring.nvars()),
            });
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, Coeff::one())
    }

    pub fn from_int(ring: &Arc<Ring>, c: i64) -> Polynomial {
        Polynomial::constant(ring, Coeff::from_integer(BigInt::from(c)))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Polynomial {
        Polynomial::monomial(ring, Coeff::one(), Monomial::var(ring.nvars(), i))
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Polynomial> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring>, coeff: Coeff, mono: Monomial) -> Polynomial {
        assert_eq!(mono.nvars(), ring.nvars());
        let mut p = Polynomial::zero(ring);
        if !coeff.is_zero() {
            p.terms.push(Term { coeff, mono });
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Polynomial {
        let mut terms = terms;
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already sorted descending in grevlex and free of zeros.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| MonomialOrder::GrevLex.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].mono.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].coeff.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.mono.exp(var)).max().unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.mono.exp(i) > 0))
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mono.degree() == t.mono.degree()),
        }
    }

    /// Homogeneous with respect to the degree counted on `vars` only.
    pub fn is_homogeneous_in(&self, vars: &[usize]) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.partial_degree(vars);
                self.terms.iter().all(|s| s.mono.partial_degree(vars) == d)
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let terms = merge_add(&self.terms, &other.terms, |a, b| {
            MonomialOrder::GrevLex.cmp(a, b)
        });
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: Vec<Term> = Vec::new();
        for t in &small.terms {
            let row: Vec<Term> = big
                .terms
                .iter()
                .map(|s| Term {
                    coeff: &t.coeff * &s.coeff,
                    mono: t.mono.mul(&s.mono),
                })
                .collect();
            acc = merge_add(&acc, &row, |a, b| MonomialOrder::GrevLex.cmp(a, b));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: acc,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    mono: t.mono,
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono,
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.ring.nvars(), "variable index out of range");
        let terms: Vec<Term> = self
            .terms
            .iter()
            .filter(|t| t.mono.exp(var) > 0)
            .map(|t| {
                let e = t.mono.exp(var);
                let mut mono = t.mono;
                mono.set_exp(var, e - 1);
                Term {
                    coeff: &t.coeff * Coeff::from_integer(BigInt::from(e)),
                    mono,
                }
            })
            .collect();
        // Lowering one exponent can reorder terms under grevlex.
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self, vars: std::ops::Range<usize>) -> Vec<Polynomial> {
        vars.map(|i| self.partial_derivative(i)).collect()
    }

    /// Maximal term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Coeff, Monomial)> {
        let t = self
            .terms
            .iter()
            .max_by(|a, b| order.cmp(&a.mono, &b.mono))
            .ok_or(Error::ZeroPolynomial)?;
        Ok((t.coeff.clone(), t.mono))
    }

    pub fn leading_coefficient(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Divides by the grevlex leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => {
                let inv = t.coeff.recip();
                self.scale(&inv)
            }
        }
    }

    /// Scales so the coefficients are coprime integers with positive leading one.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let mut den = BigInt::one();
        for t in &self.terms {
            den = den.lcm(t.coeff.denom());
        }
        let mut num = BigInt::zero();
        for t in &self.terms {
            let v = t.coeff.numer() * (&den / t.coeff.denom());
            num = num.gcd(&v);
        }
        let mut scale = Coeff::new(den, num);
        if self.terms[0].coeff.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = Coeff::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, x) in point.iter().enumerate() {
                let e = t.mono.exp(i);
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Substitutes `values[i]` for variable `i` (values live in `target`).
    pub fn substitute(&self, target: &Arc<Ring>, values: &[Polynomial]) -> Polynomial {
        assert_eq!(values.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Polynomial>> = values.iter().map(|v| vec![Polynomial::one(target), v.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut p = Polynomial::constant(target, t.coeff.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = t.mono.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul_unchecked(&pw[1]);
                    pw.push(next);
                }
                p = p.mul_unchecked(&pw[e]);
            }
            acc = acc.add_unchecked(&p);
        }
        acc
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn remap(&self, target: &Arc<Ring>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mono: t.mono.remap(target.nvars(), map),
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Moves the polynomial into a ring that extends this one by trailing variables.
    pub fn embed(&self, target: &Arc<Ring>) -> Polynomial {
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        assert!(target.nvars() >= self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mono: t.mono.remap(target.nvars(), &map),
            })
            .collect();
        // Trailing variables are zero, so grevlex order is preserved.
        Polynomial::from_sorted_terms(target, terms)
    }

    /// Restricts to the first `target.nvars()` variables; `None` if a dropped
    /// variable occurs.
    pub fn restrict(&self, target: &Arc<Ring>) -> Option<Polynomial> {
        let k = target.nvars();
        if self.terms.iter().any(|t| t.mono.exps()[k..].iter().any(|&e| e > 0)) {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let e: Vec<u32> = t.mono.exps()[..k].iter().map(|&x| x as u32).collect();
                Term {
                    coeff: t.coeff.clone(),
                    mono: Monomial::from_exponents(&e),
                }
            })
            .collect();
        Some(Polynomial::from_sorted_terms(target, terms))
    }

    /// Splits into parts homogeneous in the degree counted on `vars`.
    pub fn homogeneous_parts_in(&self, vars: &[usize]) -> Vec<Polynomial> {
        let mut parts: std::collections::BTreeMap<u32, Vec<Term>> = Default::default();
        for t in &self.terms {
            parts.entry(t.mono.partial_degree(vars)).or_default().push(t.clone());
        }
        parts
            .into_values()
            .map(|ts| Polynomial::from_sorted_terms(&self.ring, ts))
            .collect()
    }

    /// Drops the terms involving any of `vars` (i.e. sets them to zero).
    pub fn set_zero(&self, vars: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| vars.iter().all(|&v| t.mono.exp(v) == 0))
            .cloned()
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                coeff: t.coeff.clone(),
                mono: t.mono.div(m)?,
            });
        }
        Some(Polynomial::from_terms(&self.ring, terms))
    }

    /// Division with remainder by `f` using grevlex leading terms.
    pub fn div_rem(&self, f: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ring(f)?;
        let lead = f.terms.first().ok_or(Error::ZeroPolynomial)?;
        let inv = lead.coeff.recip();
        let mut q: Vec<Term> = Vec::new();
        let mut r: Vec<Term> = Vec::new();
        let mut p = self.clone();
        while let Some(t) = p.terms.first().cloned() {
            match t.mono.div(&lead.mono) {
                Some(m) => {
                    let c = &t.coeff * &inv;
                    let sub = f.mul_monomial(&m).scale(&c);
                    p = p.add_unchecked(&sub.neg());
                    q.push(Term { coeff: c, mono: m });
                }
                None => {
                    r.push(t);
                    p.terms.remove(0);
                }
            }
        }
        Ok((
            Polynomial::from_terms(&self.ring, q),
            Polynomial::from_terms(&self.ring, r),
        ))
    }

    /// Exact quotient `self / f`, or `None` when `f` does not divide.
    pub fn div_exact(&self, f: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(f).ok()?;
        r.is_zero().then_some(q)
    }

    /// Greatest common monomial divisor of the terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some(t) => it.fold(t.mono, |g, s| g.gcd(&s.mono)),
        }
    }
}

/// Merges two descending term lists, adding coefficients of equal monomials.
pub(crate) fn merge_add<F>(a: &[Term], b: &[Term], cmp: F) -> Vec<Term>
where
    F: Fn(&Monomial, &Monomial) -> Ordering,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].coeff + &b[j].coeff;
                if !c.is_zero() {
                    out.push(Term {
                        coeff: c,
                        mono: a[i].mono,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(&self.ring, &t.mono);
            if mono.is_empty() {
                write!(f, "{}", format_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..ring.nvars() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            e => parts.push(format!("{}^{}", ring.name(i), e)),
        }
    }
    parts.join("*")
}
