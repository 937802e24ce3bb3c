use crate::error::Result;
use crate::groebner::Ideal;
use crate::poly::{Block, BlockKind, MonomialOrder, Polynomial};

/// `(I : f^∞)` for a nonconstant `f` and a proper nonzero `I`.
pub(crate) fn saturate_poly(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    // Monomial f: saturate variable by variable.
    if f.len() == 1 {
        let vars = f.support();
        let mut acc = ideal.clone();
        for v in vars {
            acc = saturate_variable(&acc, v)?;
        }
        return Ok(acc);
    }
    if ideal.is_homogeneous() && f.is_homogeneous() {
        return bayer(ideal, f);
    }
    rabinowitsch(ideal, f)
}

/// Homogeneous case: with `y` of weight `deg f` ranked last,
/// `(I + (f - y)) : y^∞` restricted along `y = f` is `I : f^∞`.
fn bayer(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let ext = ring.extend(&["y"])?;
    let y = Polynomial::var(&ext, n);
    let fe = f.embed(&ext);
    let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.embed(&ext)).collect();
    gens.push(fe.add_unchecked(&y.neg()));
    let mut weights = vec![1u32; n];
    weights.push(f.total_degree().unwrap_or(1));
    let order = MonomialOrder::WeightedGrevLex(weights);
    let big = Ideal::new(&ext, gens)?;
    let gb = big.groebner_basis(&order);
    let mut values: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(ring, i)).collect();
    values.push(f.clone());
    let mut out = Vec::new();
    for p in gb.polys() {
        let e = p.monomial_content().exp(n);
        let q = if e == 0 {
            p.clone()
        } else {
            let mut m = crate::poly::Monomial::one(n + 1);
            m.set_exp(n, e);
            p.div_monomial(&m).expect("content divides")
        };
        out.push(q.substitute(ring, &values));
    }
    Ideal::new(ring, out)
}

/// `(I : x_v^∞)`. For homogeneous `I` this uses a grevlex order with `x_v`
/// ranked last, where saturation amounts to dividing out powers of `x_v`.
pub(crate) fn saturate_variable(ideal: &Ideal, v: usize) -> Result<Ideal> {
    let ring = ideal.ring();
    if !ideal.is_homogeneous() {
        return rabinowitsch(ideal, &Polynomial::var(ring, v));
    }
    let n = ring.nvars();
    let mut vars: Vec<usize> = (0..n).filter(|&i| i != v).collect();
    vars.push(v);
    let order = MonomialOrder::Block(vec![Block {
        vars,
        kind: BlockKind::GrevLex,
    }]);
    let gb = ideal.groebner_basis(&order);
    let gens: Vec<Polynomial> = gb
        .polys()
        .iter()
        .map(|p| {
            let e = p.monomial_content().exp(v);
            if e == 0 {
                return p.clone();
            }
            let mut m = crate::poly::Monomial::one(n);
            m.set_exp(v, e);
            p.div_monomial(&m).expect("content divides")
        })
        .collect();
    Ideal::new(ring, gens)
}

fn rabinowitsch(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let ext = ring.extend(&["t"])?;
    let t = Polynomial::var(&ext, n);
    let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.embed(&ext)).collect();
    gens.push(t.mul_unchecked(&f.embed(&ext)).add_unchecked(&Polynomial::one(&ext).neg()));
    let big = Ideal::new(&ext, gens)?;
    let elim = big.eliminate(&[n])?;
    let gens = elim
        .gens()
        .iter()
        .map(|g| g.restrict(ring).expect("t eliminated"))
        .collect();
    Ideal::new(ring, gens)
}

fn weighted_degree(p: &Polynomial, weights: &[u32]) -> Option<u64> {
    let mut deg = None;
    for t in p.terms() {
        let d: u64 = t.mono.exps().iter().zip(weights).map(|(e, w)| *e as u64 * *w as u64).sum();
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return None,
            _ => {}
        }
    }
    deg
}

/// `(I : f^∞)` for `I` and `f` homogeneous with respect to positive `weights`.
/// Falls back to the unweighted routes otherwise.
pub(crate) fn saturate_weighted(ideal: &Ideal, f: &Polynomial, weights: &[u32]) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let graded = weights.len() == n
        && weights.iter().all(|&w| w > 0)
        && ideal.gens().iter().all(|g| weighted_degree(g, weights).is_some());
    let Some(df) = weighted_degree(f, weights).filter(|_| graded) else {
        return saturate_poly(ideal, f);
    };
    // the last variable: divide it out of a weighted revlex basis
    if f.len() == 1 && f.support() == [n - 1] {
        let order = MonomialOrder::WeightedGrevLex(weights.to_vec());
        let gb = ideal.groebner_basis(&order);
        let gens = gb
            .polys()
            .iter()
            .map(|p| {
                let e = p.monomial_content().exp(n - 1);
                if e == 0 {
                    return p.clone();
                }
                let mut m = crate::poly::Monomial::one(n);
                m.set_exp(n - 1, e);
                p.div_monomial(&m).expect("content divides")
            })
            .collect();
        return Ideal::new(ring, gens);
    }
    let ext = ring.extend(&["y"])?;
    let y = Polynomial::var(&ext, n);
    let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.embed(&ext)).collect();
    gens.push(f.embed(&ext).add_unchecked(&y.neg()));
    let mut w = weights.to_vec();
    w.push(df as u32);
    let big = Ideal::new(&ext, gens)?;
    let gb = big.groebner_basis(&MonomialOrder::WeightedGrevLex(w));
    let mut values: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(ring, i)).collect();
    values.push(f.clone());
    let mut out = Vec::new();
    for p in gb.polys() {
        let e = p.monomial_content().exp(n);
        let q = if e == 0 {
            p.clone()
        } else {
            let mut m = crate::poly::Monomial::one(n + 1);
            m.set_exp(n, e);
            p.div_monomial(&m).expect("content divides")
        };
        out.push(q.substitute(ring, &values));
    }
    Ideal::new(ring, out)
}
