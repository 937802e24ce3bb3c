use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::engine::{self, GPoly, GTerm, GbOptions, Reducer};
use crate::groebner::zint::Zint;
use crate::poly::{same_ring, Coeff, Monomial, MonomialOrder, Polynomial, Ring, Term};

/// Reduced Gröbner basis of an ideal under one order.
#[derive(Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    reducers: Vec<Reducer>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Monic basis elements, ascending by leading term.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// Leading monomials, ascending.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.reducers.iter().map(|r| r.lm).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.reducers.len() == 1 && self.reducers[0].lm.is_one()
    }
}

type Cache = Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>;

/// Ideal of a polynomial ring, with reduced Gröbner bases cached per order.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    cache: Cache,
}

pub(crate) fn to_gpoly(p: &Polynomial, comp: u32) -> GPoly {
    let mut den = BigInt::one();
    for t in p.terms() {
        den = den.lcm(t.coeff.denom());
    }
    let terms = p
        .terms()
        .iter()
        .map(|t| GTerm {
            comp,
            mono: t.mono,
            c: Zint::from_bigint(&(t.coeff.numer() * (&den / t.coeff.denom()))),
        })
        .collect();
    GPoly { terms }
}

pub(crate) fn from_gpoly(ring: &Arc<Ring>, g: &GPoly, monic: bool) -> Polynomial {
    let lc = g.terms.first().map(|t| t.c.to_big());
    let terms = g
        .terms
        .iter()
        .map(|t| {
            let c = match (&lc, monic) {
                (Some(l), true) => Coeff::new(t.c.to_big(), l.clone()),
                _ => Coeff::from_integer(t.c.to_big()),
            };
            Term { coeff: c, mono: t.mono }
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

impl Ideal {
    /// Ideal generated by the given polynomials; zero generators are dropped.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal::from_gens(ring, gens))
    }

    pub(crate) fn from_gens(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal::from_gens(ring, vec![])
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Ideal::from_gens(ring, vec![Polynomial::one(ring)])
    }

    /// Ideal generated by a subset of the variables.
    pub fn variables(ring: &Arc<Ring>, vars: &[usize]) -> Ideal {
        Ideal::from_gens(ring, vars.iter().map(|&v| Polynomial::var(ring, v)).collect())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, p.ring()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Gröbner basis under `order` (cached).
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return gb.clone();
        }
        let gens: Vec<GPoly> = self.gens.iter().map(|g| to_gpoly(g, 0)).collect();
        let opts = GbOptions {
            product_criterion: true,
            stop_at_unit: true,
        };
        let basis = engine::groebner(order, gens, &opts);
        let gb = Arc::new(GroebnerBasis {
            order: order.clone(),
            polys: basis.iter().map(|g| from_gpoly(&self.ring, g, true)).collect(),
            reducers: basis
                .into_iter()
                .map(|g| {
                    let s = g.max_degree();
                    Reducer::new(g, s)
                })
                .collect(),
        });
        self.cache
            .lock()
            .expect("cache lock")
            .insert(order.clone(), gb.clone());
        gb
    }

    /// Reduced grevlex Gröbner basis.
    pub fn gb(&self) -> Arc<GroebnerBasis> {
        self.groebner_basis(&MonomialOrder::GrevLex)
    }

    /// The ideal with its reduced grevlex basis as generators.
    pub fn reduced(&self) -> Ideal {
        let gb = self.gb();
        let ideal = Ideal::from_gens(&self.ring, gb.polys.clone());
        ideal
            .cache
            .lock()
            .expect("cache lock")
            .insert(MonomialOrder::GrevLex, gb);
        ideal
    }

    pub fn is_unit(&self) -> bool {
        if self.gens.iter().any(|g| g.is_constant()) {
            return true;
        }
        self.gb().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Remainder of `p` on division by the reduced basis under `order`.
    pub fn normal_form_in(&self, p: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
        self.check_poly(p)?;
        if p.is_zero() {
            return Ok(p.clone());
        }
        let gb = self.groebner_basis(order);
        let g = to_gpoly(p, 0);
        let mut g = g;
        g.sort(order);
        let scale_back = Coeff::new(BigInt::one(), to_gpoly_scale(p));
        let (s, r) = engine::normal_form(order, g, &gb.reducers);
        // s * (den * p) ≡ r
        let r = from_gpoly(&self.ring, &r, false);
        Ok(r.scale(&(scale_back / Coeff::from_integer(s.to_big()))))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.normal_form_in(p, &MonomialOrder::GrevLex)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.check_poly(p)?;
        if p.is_zero() {
            return Ok(true);
        }
        if self.is_unit() {
            return Ok(true);
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (compares reduced grevlex bases).
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        same_ring(&self.ring, &other.ring) && self.gb().polys == other.gb().polys
    }

    /// Canonical text: reduced grevlex basis, comma separated.
    pub fn canonical_key(&self) -> String {
        self.gb()
            .polys
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn add(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::from_gens(&self.ring, gens))
    }

    pub fn add_polys(&self, polys: &[Polynomial]) -> Result<Ideal> {
        for p in polys {
            self.check_poly(p)?;
        }
        let mut gens = self.gens.clone();
        gens.extend(polys.iter().cloned());
        Ok(Ideal::from_gens(&self.ring, gens))
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul_unchecked(b));
            }
        }
        Ok(Ideal::from_gens(&self.ring, gens))
    }

    /// `self ∩ R'` where `R'` omits the variables `vars`, via an elimination order.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        if vars.iter().any(|&v| v >= self.ring.nvars()) {
            return Err(Error::ShapeMismatch("variable index out of range".into()));
        }
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let order = MonomialOrder::elimination(self.ring.nvars(), vars);
        let gb = self.groebner_basis(&order);
        let kept: Vec<Polynomial> = gb
            .polys
            .iter()
            .filter(|p| vars.iter().all(|&v| p.degree_in(v) == 0))
            .cloned()
            .collect();
        Ok(Ideal::from_gens(&self.ring, kept))
    }

    /// `self ∩ other` by the extra-variable trick.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let ext = self.ring.extend(&["t"])?;
        let t = Polynomial::var(&ext, self.ring.nvars());
        let one_minus_t = Polynomial::one(&ext).add_unchecked(&t.neg());
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.embed(&ext).mul_unchecked(&t));
        }
        for g in &other.gens {
            gens.push(g.embed(&ext).mul_unchecked(&one_minus_t));
        }
        let big = Ideal::from_gens(&ext, gens);
        let elim = big.eliminate(&[self.ring.nvars()])?;
        Ok(Ideal::from_gens(
            &self.ring,
            elim.gens.iter().map(|g| g.restrict(&self.ring).expect("t eliminated")).collect(),
        ))
    }

    /// Intersection of several ideals.
    pub fn intersect_all(ring: &Arc<Ring>, ideals: &[Ideal]) -> Result<Ideal> {
        let mut acc = Ideal::unit(ring);
        for i in ideals {
            acc = acc.intersect(i)?;
        }
        Ok(acc)
    }

    /// `(self : f)`.
    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let fi = Ideal::from_gens(&self.ring, vec![f.clone()]);
        let inter = self.intersect(&fi)?;
        let gens = inter
            .gens
            .iter()
            .map(|g| g.div_exact(f).expect("member of (f) is divisible by f"))
            .collect();
        Ok(Ideal::from_gens(&self.ring, gens))
    }

    /// `(self : J) = ∩ (self : g)` over generators `g` of `J`.
    pub fn quotient_ideal(&self, j: &Ideal) -> Result<Ideal> {
        self.check(j)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in &j.gens {
            acc = acc.intersect(&self.quotient(g)?)?;
        }
        Ok(acc)
    }

    /// `(self : f^∞)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() || self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_unit() {
            return Ok(self.clone());
        }
        crate::groebner::saturation::saturate_poly(self, f)
    }

    /// `(self : f^∞)` exploiting homogeneity for positive variable weights.
    pub fn saturate_weighted(&self, f: &Polynomial, weights: &[u32]) -> Result<Ideal> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() || self.is_zero() || self.is_unit() {
            return Ok(self.clone());
        }
        crate::groebner::saturation::saturate_weighted(self, f, weights)
    }

    /// `(self : J^∞)`; by convention the unit ideal removes nothing.
    pub fn saturate_ideal(&self, j: &Ideal) -> Result<Ideal> {
        self.check(j)?;
        if j.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if j.is_unit() {
            return Ok(self.clone());
        }
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let s = self.saturate(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.expect("nonzero ideal has generators"))
    }

    /// Radical membership `f ∈ √self` by the Rabinowitsch trick.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_poly(f)?;
        if f.is_zero() || self.is_unit() {
            return Ok(true);
        }
        if self.contains(f)? {
            return Ok(true);
        }
        let ext = self.ring.extend(&["t"])?;
        let t = Polynomial::var(&ext, self.ring.nvars());
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&ext)).collect();
        gens.push(Polynomial::one(&ext).add_unchecked(&t.mul_unchecked(&f.embed(&ext)).neg()));
        Ok(Ideal::from_gens(&ext, gens).is_unit())
    }

    /// Moves the ideal into a ring extending this one by trailing variables.
    pub fn embed(&self, target: &Arc<Ring>) -> Ideal {
        Ideal::from_gens(target, self.gens.iter().map(|g| g.embed(target)).collect())
    }

    /// Restricts to the first variables; fails if a generator uses the others.
    pub fn restrict(&self, target: &Arc<Ring>) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.restrict(target).ok_or_else(|| Error::ShapeMismatch("generator uses dropped variables".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::from_gens(target, gens))
    }

    /// All generators are monomials (up to scalars).
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.len() == 1)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }
}

fn to_gpoly_scale(p: &Polynomial) -> BigInt {
    let mut den = BigInt::one();
    for t in p.terms() {
        den = den.lcm(t.coeff.denom());
    }
    den
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Checks that `basis` is a Gröbner basis under `order` (Buchberger's criterion).
pub fn is_groebner_basis(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    let gp: Vec<GPoly> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut g = to_gpoly(p, 0);
            g.sort(order);
            g
        })
        .collect();
    engine::is_groebner(order, &gp)
}

/// Checks the reduced property: monic, no leading term divides a term of another.
pub fn is_reduced_basis(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    let leads: Vec<(Coeff, Monomial)> = match basis.iter().map(|p| p.leading_term(order)).collect() {
        Ok(v) => v,
        Err(_) => return false,
    };
    for (i, p) in basis.iter().enumerate() {
        if !leads[i].0.is_one() {
            return false;
        }
        for (j, (_, lm)) in leads.iter().enumerate() {
            if i != j && p.terms().iter().any(|t| lm.divides(&t.mono)) {
                return false;
            }
        }
    }
    true
}
