//! Characteristic cycles and their localization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::conormal::{conormal_ideal, divisor_ideal, ConormalInput};
use crate::decompose::minimal_primes;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::hilbert::hilbert_series;
use crate::poly::{same_ring, Coeff, Polynomial, Ring};

/// An irreducible conic Lagrangian `T*_Z X = V(q)` with `I(Z) = q ∩ R`.
#[derive(Clone, Debug)]
pub struct ConormalComponent {
    prime: Ideal,
    base: Ideal,
    base_dim: usize,
    key: String,
}

impl ConormalComponent {
    /// Component with prime `q` in a split ring; the base is computed by elimination.
    pub fn new(q: &Ideal) -> Result<ConormalComponent> {
        let ring = q.ring();
        let base_ring = ring.base()?;
        let a: Vec<usize> = ring.cotangent_vars()?.collect();
        let base = q.eliminate(&a)?.restrict(&base_ring)?;
        Self::from_parts(q, &base)
    }

    /// Component with prime `q` whose base `q ∩ R` is already known.
    pub fn with_base(q: &Ideal, base: &Ideal) -> Result<ConormalComponent> {
        if !same_ring(&q.ring().base()?, base.ring()) {
            return Err(Error::RingMismatch);
        }
        Self::from_parts(q, base)
    }

    fn from_parts(q: &Ideal, base: &Ideal) -> Result<ConormalComponent> {
        let q = q.reduced();
        let base = base.reduced();
        let base_dim = crate::hilbert::dimension(&base)?;
        Ok(ConormalComponent {
            key: q.canonical_key(),
            prime: q,
            base,
            base_dim,
        })
    }

    /// The conormal variety of `V(p)` for a prime `p` of the base ring.
    pub fn conormal_of(ring: &Arc<Ring>, p: &Ideal) -> Result<ConormalComponent> {
        let q = cached_conormal(ring, p)?;
        Self::from_parts(&q, p)
    }

    pub fn prime(&self) -> &Ideal {
        &self.prime
    }

    /// `I(Z) = q ∩ R`.
    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn base_dimension(&self) -> usize {
        self.base_dim
    }

    /// Canonical key: the reduced grevlex basis of `q`.
    pub fn key(&self) -> &str {
        &self.key
    }
}

impl fmt::Display for ConormalComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T*_{{V{}}}", self.base)
    }
}

/// A finite formal sum of conormal components with positive multiplicities.
#[derive(Clone, Debug)]
pub struct CharCycle {
    ring: Arc<Ring>,
    terms: BTreeMap<String, (ConormalComponent, u64)>,
}

impl PartialEq for CharCycle {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ka, (_, ma)), (kb, (_, mb)))| ka == kb && ma == mb)
    }
}

impl Eq for CharCycle {}

impl CharCycle {
    /// The zero cycle (of the zero module).
    pub fn zero(ring: &Arc<Ring>) -> Result<CharCycle> {
        ring.base()?;
        Ok(CharCycle {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `m` copies of a component.
    pub fn add(&mut self, c: ConormalComponent, m: u64) -> Result<()> {
        if !same_ring(&self.ring, c.prime.ring()) {
            return Err(Error::RingMismatch);
        }
        if m == 0 {
            return Ok(());
        }
        self.terms
            .entry(c.key.clone())
            .and_modify(|e| e.1 += m)
            .or_insert((c, m));
        Ok(())
    }

    /// Sum of two cycles.
    pub fn merge(&mut self, other: &CharCycle) -> Result<()> {
        for (c, m) in other.terms.values() {
            self.add(c.clone(), *m)?;
        }
        Ok(())
    }

    /// Removes `m` copies of the component with `key`; fails if fewer are present.
    pub fn remove(&mut self, key: &str, m: u64) -> Result<()> {
        let entry = self
            .terms
            .get_mut(key)
            .ok_or_else(|| Error::InvalidSplit(format!("component {key} not present")))?;
        if entry.1 < m {
            return Err(Error::InvalidSplit(format!("component {key} has multiplicity {} < {m}", entry.1)));
        }
        entry.1 -= m;
        if entry.1 == 0 {
            self.terms.remove(key);
        }
        Ok(())
    }

    /// Components with multiplicities, ordered by canonical key.
    pub fn components(&self) -> impl Iterator<Item = (&ConormalComponent, u64)> {
        self.terms.values().map(|(c, m)| (c, *m))
    }

    pub fn multiplicity(&self, key: &str) -> u64 {
        self.terms.get(key).map(|e| e.1).unwrap_or(0)
    }

    /// Multiplicity of `T*_{V(p)} X` for a base prime `p`.
    pub fn multiplicity_over(&self, p: &Ideal) -> u64 {
        let key = p.canonical_key();
        self.terms
            .values()
            .filter(|(c, _)| c.base.canonical_key() == key)
            .map(|(_, m)| *m)
            .sum()
    }
}

impl fmt::Display for CharCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, m) in self.terms.values() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{m}*{c}")?;
            }
        }
        Ok(())
    }
}

/// `CC(R) = T*_X X`.
pub fn zero_section(ring: &Arc<Ring>) -> Result<CharCycle> {
    let base = ring.base()?;
    let mut cc = CharCycle::zero(ring)?;
    cc.add(ConormalComponent::conormal_of(ring, &Ideal::zero(&base))?, 1)?;
    Ok(cc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Localize once at the product of the factors.
    Single,
    /// Localize at the factors one after another.
    Iterative,
}

/// `CC(M_f)` for `f` the product of `factors`.
pub fn localize_cycle(cc: &CharCycle, factors: &[Polynomial], strategy: Strategy) -> Result<CharCycle> {
    if factors.is_empty() {
        return Ok(cc.clone());
    }
    match strategy {
        Strategy::Single => {
            let mut f = Polynomial::one(factors[0].ring());
            for g in factors {
                f = f.mul(g)?;
            }
            localize(cc, &f)
        }
        Strategy::Iterative => {
            let mut acc = cc.clone();
            for g in factors {
                acc = localize(&acc, g)?;
            }
            Ok(acc)
        }
    }
}

/// How the divisor `Γ` of a component is produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Route {
    /// The divisor ideal `C = J_sat + (f) + J_f` of the relative conormal.
    Divisor,
    /// The specialization `s → 0` of `Λ + s·dlog f`.
    #[default]
    Limit,
}

/// `CC(M_f) = Σ_{f(X_i) ≠ 0} m_i (T*_{X_i} X + Γ_i)`.
pub fn localize(cc: &CharCycle, f: &Polynomial) -> Result<CharCycle> {
    localize_via(cc, f, Route::default())
}

/// As [`localize`], with an explicit route for the divisors.
pub fn localize_via(cc: &CharCycle, f: &Polynomial, route: Route) -> Result<CharCycle> {
    let base_ring = cc.ring.base()?;
    if !same_ring(&base_ring, f.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(cc.clone());
    }
    let mut out = CharCycle::zero(&cc.ring)?;
    for (c, m) in cc.terms.values() {
        for (g, k) in localize_component(c, f, route)? {
            out.add(g, k * m)?;
        }
    }
    Ok(out)
}

type LocalCache = Mutex<Option<HashMap<String, Vec<(ConormalComponent, u64)>>>>;
static LOCAL_CACHE: LocalCache = Mutex::new(None);

/// Persistent storage for localized components, keyed by canonical inputs.
pub trait ComponentStore: Send + Sync {
    fn load(&self, key: &str, ring: &Arc<Ring>) -> Option<Vec<(ConormalComponent, u64)>>;
    fn save(&self, key: &str, value: &[(ConormalComponent, u64)]);
}

static STORE: RwLock<Option<Arc<dyn ComponentStore>>> = RwLock::new(None);

/// Installs (or removes) the store consulted by [`localize_component`].
pub fn set_component_store(store: Option<Arc<dyn ComponentStore>>) {
    *STORE.write().expect("store") = store;
}

fn store() -> Option<Arc<dyn ComponentStore>> {
    STORE.read().expect("store").clone()
}

/// `T*_X X + Γ` for one component, or nothing when `f` vanishes on `X`.
pub fn localize_component(
    c: &ConormalComponent,
    f: &Polynomial,
    route: Route,
) -> Result<Vec<(ConormalComponent, u64)>> {
    let key = format!("{}|{}|{}|{:?}", c.prime.ring(), c.key, f, route);
    if let Some(v) = LOCAL_CACHE.lock().expect("cache").get_or_insert_with(HashMap::new).get(&key) {
        return Ok(v.clone());
    }
    let stored = store();
    if let Some(v) = stored.as_ref().and_then(|st| st.load(&key, c.prime.ring())) {
        LOCAL_CACHE
            .lock()
            .expect("cache")
            .get_or_insert_with(HashMap::new)
            .insert(key, v.clone());
        return Ok(v);
    }
    let out = if c.base.radical_contains(f)? {
        Vec::new()
    } else {
        match route {
            Route::Divisor => {
                let ring = c.prime.ring();
                let input = ConormalInput::new(ring, &c.base, f)?;
                let div = divisor_ideal(&input)?;
                let mut v = vec![(c.clone(), 1)];
                v.extend(lagrangian_components(&div.ideal)?);
                v
            }
            Route::Limit => {
                let v = lagrangian_components(&limit_ideal(c, f)?)?;
                match v.iter().find(|(g, _)| g.key == c.key) {
                    Some((_, 1)) => {}
                    _ => {
                        return Err(Error::UnresolvedComponent(format!(
                            "specialization of {c} at {f} does not contain it exactly once"
                        )))
                    }
                }
                v
            }
        }
    };
    log::debug!(
        "localized {c} at {f}: {}",
        out.iter().map(|(g, m)| format!("{m}*{g}")).collect::<Vec<_>>().join(" + ")
    );
    if let Some(st) = stored {
        st.save(&key, &out);
    }
    LOCAL_CACHE
        .lock()
        .expect("cache")
        .get_or_insert_with(HashMap::new)
        .insert(key, out.clone());
    Ok(out)
}

/// Ideal of the flat limit at `s = 0` of `{(x, a + s ∇f / f)} ⊂ T*X`
/// over `V(q)`, for `f` not vanishing on the base.
pub fn limit_ideal(c: &ConormalComponent, f: &Polynomial) -> Result<Ideal> {
    let ring = c.prime.ring();
    let n = ring.base()?.nvars();
    let ext = ring.extend(&["s"])?;
    let s = Polynomial::var(&ext, 2 * n);
    let fe = f.embed(&ext);
    let mut values: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ext, i)).collect();
    for i in 0..n {
        let shift = s.mul_unchecked(&f.partial_derivative(i).embed(&ext));
        values.push(fe.mul_unchecked(&Polynomial::var(&ext, n + i)).add_unchecked(&shift.neg()));
    }
    values.push(s.clone());
    let gens: Vec<Polynomial> = c
        .prime
        .gb()
        .polys()
        .iter()
        .map(|g| g.embed(&ext).substitute(&ext, &values))
        .collect();
    let mut weights = vec![1u32; 2 * n];
    weights.push(2);
    let l = Ideal::new(&ext, gens)?;
    log::debug!("limit: saturating by {f}");
    let l = l.saturate_weighted(&fe, &weights)?;
    log::debug!("limit: saturating by s");
    let l = l.saturate_weighted(&s, &weights)?;
    log::debug!("limit: done");
    let special: Vec<Polynomial> = l
        .gens()
        .iter()
        .map(|g| g.set_zero(&[2 * n]).restrict(ring).expect("s removed"))
        .collect();
    Ideal::new(ring, special)
}

/// Base projection `q ∩ R` of a component.
pub fn component_support(c: &ConormalComponent) -> Ideal {
    c.base.clone()
}

/// Distinct base projections of the components of a cycle.
pub fn support(cc: &CharCycle) -> Vec<Ideal> {
    let mut seen = BTreeMap::new();
    for (c, _) in cc.terms.values() {
        seen.entry(c.base.canonical_key()).or_insert_with(|| c.base.clone());
    }
    seen.into_values().collect()
}

type ConormalCache = Mutex<Option<HashMap<String, Ideal>>>;
static CONORMAL_CACHE: ConormalCache = Mutex::new(None);

fn cached_conormal(ring: &Arc<Ring>, p: &Ideal) -> Result<Ideal> {
    let key = format!("{}|{}", ring, p.canonical_key());
    if let Some(q) = CONORMAL_CACHE.lock().expect("cache").get_or_insert_with(HashMap::new).get(&key) {
        return Ok(q.clone());
    }
    let q = conormal_ideal(ring, p)?;
    CONORMAL_CACHE
        .lock()
        .expect("cache")
        .get_or_insert_with(HashMap::new)
        .insert(key, q.clone());
    Ok(q)
}

/// Degree of the dimension-`n` part of `V(I)` (zero when lower-dimensional).
fn degree_at(i: &Ideal, n: usize) -> Result<i64> {
    let hs = hilbert_series(i);
    if hs.is_zero() || hs.dimension() < n {
        return Ok(0);
    }
    if hs.dimension() > n {
        return Err(Error::NonHolonomic {
            expected: n,
            found: hs.dimension(),
            ideal: i.to_string(),
        });
    }
    Ok(hs.degree())
}

/// An element of `q` outside every other prime of the same dimension, with
/// high probability: a random combination of the basis of `q`, each element
/// padded to a common degree by a random linear form.
fn generic_element(q: &Ideal) -> Polynomial {
    let ring = q.ring();
    let mut hasher = Sha256::new();
    hasher.update(q.canonical_key().as_bytes());
    let seed: [u8; 32] = hasher.finalize().into();
    let mut rng = ChaCha8Rng::from_seed(seed);
    let gb = q.gb();
    let polys = gb.polys();
    let top = polys.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
    let homogeneous = q.is_homogeneous();
    let mut ell = Polynomial::zero(ring);
    for v in 0..ring.nvars() {
        let c = Coeff::from_integer(rng.gen_range(1i64..=31).into());
        ell = ell.add_unchecked(&Polynomial::var(ring, v).scale(&c));
    }
    let mut h = Polynomial::zero(ring);
    for p in polys {
        let c = Coeff::from_integer(rng.gen_range(1i64..=97).into());
        let pad = if homogeneous {
            ell.pow(top - p.total_degree().unwrap_or(0))
        } else {
            Polynomial::one(ring)
        };
        h = h.add_unchecked(&p.mul_unchecked(&pad).scale(&c));
    }
    if h.is_zero() {
        polys[0].clone()
    } else {
        h
    }
}

/// The top-dimensional components of a conic ideal `C ⊂ R[a]` whose
/// dimension-`n` components are conormal varieties, with multiplicities.
pub fn lagrangian_components(c: &Ideal) -> Result<Vec<(ConormalComponent, u64)>> {
    let ring = c.ring().clone();
    let base_ring = ring.base()?;
    let n = base_ring.nvars();
    let a: Vec<usize> = ring.cotangent_vars()?.collect();
    if c.is_unit() {
        return Ok(Vec::new());
    }
    let total = degree_at(c, n)?;
    if total == 0 {
        return Ok(Vec::new());
    }
    let mut found: Vec<(ConormalComponent, Polynomial)> = Vec::new();
    let mut remaining = c.clone();
    while !remaining.is_unit() && degree_at(&remaining, n)? > 0 {
        log::debug!("components: eliminating");
        let base = remaining.eliminate(&a)?.restrict(&base_ring)?;
        log::debug!("components: base {base}");
        let mut fresh: Vec<ConormalComponent> = Vec::new();
        for z in minimal_primes(&base)? {
            let comp = ConormalComponent::conormal_of(&ring, &z.prime)?;
            if found.iter().any(|(f, _)| f.key == comp.key) || fresh.iter().any(|f| f.key == comp.key) {
                continue;
            }
            if comp.prime.contains_ideal(&remaining)? {
                fresh.push(comp);
            }
        }
        if fresh.is_empty() {
            for p in minimal_primes(&remaining)? {
                if p.dimension == n {
                    let comp = ConormalComponent::new(&p.prime)?;
                    if !found.iter().any(|(f, _)| f.key == comp.key) {
                        fresh.push(comp);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return Err(Error::UnresolvedComponent(format!(
                "no conormal component found for the residual ideal {remaining}"
            )));
        }
        for comp in fresh {
            let dim = crate::hilbert::dimension(&comp.prime)?;
            if dim != n {
                return Err(Error::NonHolonomic {
                    expected: n,
                    found: dim,
                    ideal: comp.prime.to_string(),
                });
            }
            let h = generic_element(&comp.prime);
            log::debug!("components: removing {comp}");
            remaining = remaining.saturate(&h)?;
            found.push((comp, h));
        }
    }
    let mut out = Vec::new();
    let mut sum = 0i64;
    for (comp, h) in found {
        log::debug!("components: multiplicity along {comp}");
        let rest = degree_at(&c.saturate(&h)?, n)?;
        let dq = degree_at(&comp.prime, n)?;
        let diff = total - rest;
        if dq <= 0 || diff <= 0 || diff % dq != 0 {
            return Err(Error::UnresolvedComponent(format!(
                "degree drop {diff} along {comp} is not a positive multiple of {dq}"
            )));
        }
        sum += diff;
        out.push((comp, (diff / dq) as u64));
    }
    if sum != total {
        return Err(Error::UnresolvedComponent(format!(
            "component degrees add up to {sum}, the divisor has degree {total}"
        )));
    }
    Ok(out)
}
