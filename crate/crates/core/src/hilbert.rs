//! Hilbert series of leading-term ideals, dimension, degree and
//! multiplicities along components.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Monomial, Polynomial};

/// Hilbert series `N(t) / (1 - t)^n` of `R / in(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: Vec<i64>,
    reduced: Vec<i64>,
    dimension: usize,
}

impl HilbertSeries {
    /// Series of `R / (monomials)` in `nvars` variables.
    pub fn of_monomials(nvars: usize, monomials: &[Monomial]) -> HilbertSeries {
        let gens = minimalize(monomials.to_vec());
        HilbertSeries::from_numerator(nvars, numerator(nvars, gens))
    }

    fn from_numerator(nvars: usize, numerator: Vec<i64>) -> HilbertSeries {
        let numerator = trim(numerator);
        let (reduced, poles_removed) = divide_out_one_minus_t(&numerator);
        let dimension = if reduced.iter().all(|&c| c == 0) {
            0
        } else {
            nvars - poles_removed
        };
        HilbertSeries {
            nvars,
            numerator,
            reduced,
            dimension,
        }
    }

    /// Series of the kernel of `R/I -> R/J` for `I ⊆ J`: `H(R/I) - H(R/J)`.
    pub fn difference(&self, other: &HilbertSeries) -> HilbertSeries {
        let neg: Vec<i64> = other.numerator.iter().map(|c| -c).collect();
        HilbertSeries::from_numerator(self.nvars, poly_add(&self.numerator, &neg))
    }

    /// Numerator over `(1 - t)^nvars`, lowest degree first.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    /// Numerator over `(1 - t)^dimension`.
    pub fn reduced_numerator(&self) -> &[i64] {
        &self.reduced
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The series is zero (quotient by the unit ideal).
    pub fn is_zero(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }

    /// Sum of the reduced numerator's coefficients.
    pub fn degree(&self) -> i64 {
        self.reduced.iter().sum()
    }

    /// Coefficients of the series up to degree `up_to`.
    pub fn coefficients(&self, up_to: usize) -> Vec<i64> {
        let mut c: Vec<i64> = (0..=up_to)
            .map(|k| self.numerator.get(k).copied().unwrap_or(0))
            .collect();
        for _ in 0..self.nvars {
            for k in 1..=up_to {
                c[k] += c[k - 1];
            }
        }
        c
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &c) in self.reduced.iter().enumerate() {
            if c != 0 {
                parts.push(match k {
                    0 => format!("{c}"),
                    1 => format!("{c}*t"),
                    _ => format!("{c}*t^{k}"),
                });
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "({}) / (1 - t)^{}", parts.join(" + "), self.dimension)
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

fn one_minus_t_pow(d: u32) -> Vec<i64> {
    let mut v = vec![0i64; d as usize + 1];
    v[0] = 1;
    v[d as usize] -= 1;
    v
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Numerator of the Hilbert series of `R / (gens)` for minimal monomial
/// generators, by pivoting on a variable (Bigatti style).
fn numerator(nvars: usize, gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // pairwise coprime generators: product formula
    let mut used = 0u64;
    let mut coprime = true;
    for g in &gens {
        let m = g.support_mask();
        if used & m != 0 || nvars > 64 {
            coprime = false;
            break;
        }
        used |= m;
    }
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            acc = poly_mul(&acc, &one_minus_t_pow(g.degree()));
        }
        return acc;
    }
    // pivot: the variable occurring in most generators
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (v, c) in counts.iter_mut().enumerate() {
            if g.exp(v) > 0 {
                *c += 1;
            }
        }
    }
    let v = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
    // smallest positive exponent of v among generators, for a monomial pivot x_v^e
    let e = gens
        .iter()
        .filter(|g| g.exp(v) > 0)
        .map(|g| g.exp(v))
        .min()
        .unwrap();
    let mut pivot = Monomial::one(nvars);
    pivot.set_exp(v, e);
    // N(I) = N(I + (p)) + t^deg(p) N(I : p)
    let mut plus = gens.clone();
    plus.push(pivot);
    let plus = minimalize(plus);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut q = *g;
            q.set_exp(v, g.exp(v).saturating_sub(e));
            q
        })
        .collect();
    let colon = minimalize(colon);
    let a = numerator(nvars, plus);
    let mut b = vec![0i64; e as usize];
    b.extend(numerator(nvars, colon));
    poly_add(&a, &b)
}

/// Writes `N = (1 - t)^k Q` with `Q(1) ≠ 0`; returns `(Q, k)`.
fn divide_out_one_minus_t(n: &[i64]) -> (Vec<i64>, usize) {
    let mut q = n.to_vec();
    let mut k = 0;
    if q.iter().all(|&c| c == 0) {
        return (vec![0], 0);
    }
    loop {
        let at_one: i64 = q.iter().sum();
        if at_one != 0 || q.len() <= 1 {
            return (trim(q), k);
        }
        // synthetic division by (1 - t): q = (1 - t) r  =>  r_i = sum_{j<=i} q_j
        let mut r = Vec::with_capacity(q.len() - 1);
        let mut acc = 0;
        for &c in &q[..q.len() - 1] {
            acc += c;
            r.push(acc);
        }
        q = r;
        k += 1;
    }
}

/// Hilbert series of `R / in(I)` for the grevlex leading-term ideal.
pub fn hilbert_series(ideal: &Ideal) -> HilbertSeries {
    let gb = ideal.gb();
    HilbertSeries::of_monomials(ideal.ring().nvars(), &gb.leading_monomials())
}

/// Krull dimension of `R / I`.
pub fn dimension(ideal: &Ideal) -> Result<usize> {
    let hs = hilbert_series(ideal);
    if hs.is_zero() {
        return Err(Error::UnitIdeal);
    }
    Ok(hs.dimension())
}

/// Degree of `R / I` (of the projective closure when `I` is not homogeneous).
pub fn degree(ideal: &Ideal) -> Result<u64> {
    let hs = hilbert_series(ideal);
    if hs.is_zero() {
        return Err(Error::UnitIdeal);
    }
    Ok(hs.degree() as u64)
}

/// Multiplicity of the scheme `V(C)` along the component `V(p)`: the degree
/// of the `p`-primary part of `C` divided by the degree of `p`.
///
/// `p` must be a minimal prime of `C`.
pub fn multiplicity_along(c: &Ideal, p: &Ideal) -> Result<u64> {
    if !p.contains_ideal(c)? {
        return Err(Error::NotAssociated);
    }
    // C : p^∞ lies in every primary component whose prime does not contain p;
    // any of its elements outside p separates p from them.
    let rest = c.saturate_ideal(p)?;
    let sep = rest
        .gb()
        .polys()
        .iter()
        .find(|g| !p.contains(g).unwrap_or(true))
        .cloned()
        .ok_or(Error::NotAssociated)?;
    multiplicity_with_separator(c, p, &sep)
}

/// As [`multiplicity_along`], with a known element `s ∉ p` lying in every
/// other minimal prime of dimension at least `dim p`.
pub fn multiplicity_with_separator(c: &Ideal, p: &Ideal, s: &Polynomial) -> Result<u64> {
    let primary = if s.is_constant() {
        c.clone()
    } else {
        c.saturate(s)?
    };
    let hp = hilbert_series(p);
    let hq = hilbert_series(&primary);
    if hq.is_zero() || hq.dimension() != hp.dimension() {
        return Err(Error::NotAssociated);
    }
    let (eq, ep) = (hq.degree(), hp.degree());
    if ep <= 0 || eq % ep != 0 {
        return Err(Error::UnresolvedComponent(format!(
            "degree {eq} of the primary part is not a multiple of degree {ep} of {p}"
        )));
    }
    Ok((eq / ep) as u64)
}
