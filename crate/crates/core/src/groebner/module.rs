use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::engine::{self, GPoly, GTerm, GbOptions, Reducer};
use crate::groebner::ideal::{from_gpoly, to_gpoly};
use crate::groebner::Ideal;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::poly::{same_ring, Coeff, MonomialOrder, Polynomial, Ring};

/// Element of a free module `R^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorPolynomial {
    entries: Vec<Polynomial>,
}

impl VectorPolynomial {
    pub fn new(entries: Vec<Polynomial>) -> Result<VectorPolynomial> {
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| !same_ring(e.ring(), first.ring())) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(VectorPolynomial { entries })
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> VectorPolynomial {
        VectorPolynomial {
            entries: vec![Polynomial::zero(ring); rank],
        }
    }

    /// The basis vector `e_i` of `R^rank`.
    pub fn unit(ring: &Arc<Ring>, rank: usize, i: usize) -> VectorPolynomial {
        let mut v = VectorPolynomial::zero(ring, rank);
        v.entries[i] = Polynomial::one(ring);
        v
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, p: &Polynomial) -> VectorPolynomial {
        VectorPolynomial {
            entries: self.entries.iter().map(|e| e.mul_unchecked(p)).collect(),
        }
    }

    /// Dot product with a row of polynomials.
    pub fn dot(&self, row: &[Polynomial]) -> Result<Polynomial> {
        if row.len() != self.entries.len() {
            return Err(Error::ShapeMismatch(format!(
                "row of length {} against vector of rank {}",
                row.len(),
                self.entries.len()
            )));
        }
        let mut acc: Option<Polynomial> = None;
        for (a, b) in row.iter().zip(&self.entries) {
            let term = a.mul(b)?;
            acc = Some(match acc {
                None => term,
                Some(s) => s.add_unchecked(&term),
            });
        }
        acc.ok_or_else(|| Error::ShapeMismatch("empty vector".into()))
    }

    /// Integer form with a common denominator cleared across all entries.
    fn to_gpoly(&self, offset: u32) -> GPoly {
        let mut den = BigInt::one();
        for e in &self.entries {
            for t in e.terms() {
                den = den.lcm(t.coeff.denom());
            }
        }
        let scale = Coeff::from_integer(den);
        let mut terms = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            terms.extend(to_gpoly(&e.scale(&scale), offset + i as u32).terms);
        }
        GPoly { terms }
    }
}

impl fmt::Debug for VectorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Submodule of `R^rank` given by generators.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Arc<Ring>,
    rank: usize,
    gens: Vec<VectorPolynomial>,
}

impl Submodule {
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: Vec<VectorPolynomial>) -> Result<Submodule> {
        for g in &gens {
            if g.rank() != rank {
                return Err(Error::ShapeMismatch(format!(
                    "generator of rank {} in a module of rank {rank}",
                    g.rank()
                )));
            }
            if g.entries.iter().any(|e| !same_ring(e.ring(), ring)) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Submodule {
            ring: ring.clone(),
            rank,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[VectorPolynomial] {
        &self.gens
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Reduced Gröbner basis, position over term with grevlex.
    pub fn groebner_basis(&self) -> Vec<VectorPolynomial> {
        let order = MonomialOrder::GrevLex;
        let gens: Vec<GPoly> = self.gens.iter().map(|g| g.to_gpoly(0)).collect();
        let basis = module_gb(&order, gens);
        basis.iter().map(|g| split_vector(&self.ring, g, 0, self.rank)).collect()
    }

    /// Submodule membership.
    pub fn contains(&self, v: &VectorPolynomial) -> Result<bool> {
        if v.rank() != self.rank {
            return Err(Error::ShapeMismatch("rank mismatch".into()));
        }
        if v.is_zero() {
            return Ok(true);
        }
        let order = MonomialOrder::GrevLex;
        let gens: Vec<GPoly> = self.gens.iter().map(|g| g.to_gpoly(0)).collect();
        let basis: Vec<Reducer> = module_gb(&order, gens)
            .into_iter()
            .map(|g| {
                let s = g.max_degree();
                Reducer::new(g, s)
            })
            .collect();
        let mut p = v.to_gpoly(0);
        p.sort(&order);
        let (_, r) = engine::normal_form(&order, p, &basis);
        Ok(r.is_zero())
    }
}

fn module_gb(order: &MonomialOrder, gens: Vec<GPoly>) -> Vec<GPoly> {
    let opts = GbOptions {
        product_criterion: false,
        stop_at_unit: false,
    };
    engine::groebner(order, gens, &opts)
}

/// Entries `offset..offset + rank` of a module element.
fn split_vector(ring: &Arc<Ring>, g: &GPoly, offset: u32, rank: usize) -> VectorPolynomial {
    let mut parts: Vec<Vec<GTerm>> = vec![Vec::new(); rank];
    for t in &g.terms {
        if t.comp >= offset && ((t.comp - offset) as usize) < rank {
            parts[(t.comp - offset) as usize].push(t.clone());
        }
    }
    VectorPolynomial {
        entries: parts
            .into_iter()
            .map(|terms| from_gpoly(ring, &GPoly { terms }, false))
            .collect(),
    }
}

/// Generators of `{ s ∈ R^k : A s ∈ I R^m }` for an `m × k` matrix `A`.
pub fn kernel_mod(a: &[Vec<Polynomial>], ideal: &Ideal) -> Result<Submodule> {
    let ring = ideal.ring().clone();
    let m = a.len();
    let k = a.first().map(|r| r.len()).unwrap_or(0);
    if m == 0 || k == 0 {
        return Err(Error::ShapeMismatch("matrix must be nonempty".into()));
    }
    if a.iter().any(|r| r.len() != k) {
        return Err(Error::ShapeMismatch("ragged matrix".into()));
    }
    for row in a {
        for e in row {
            if !same_ring(e.ring(), &ring) {
                return Err(Error::RingMismatch);
            }
        }
    }
    let order = MonomialOrder::GrevLex;
    let mut gens: Vec<GPoly> = Vec::new();
    for j in 0..k {
        let mut entries: Vec<Polynomial> = (0..m).map(|i| a[i][j].clone()).collect();
        entries.extend((0..k).map(|l| {
            if l == j {
                Polynomial::one(&ring)
            } else {
                Polynomial::zero(&ring)
            }
        }));
        gens.push(VectorPolynomial { entries }.to_gpoly(0));
    }
    let igens = ideal.gb();
    for g in igens.polys() {
        for i in 0..m {
            gens.push(to_gpoly(g, i as u32));
        }
    }
    let basis = module_gb(&order, gens);
    let mut out = Vec::new();
    for g in &basis {
        if g.lead().comp as usize >= m {
            out.push(split_vector(&ring, g, m as u32, k));
        }
    }
    Submodule::new(&ring, k, out)
}
