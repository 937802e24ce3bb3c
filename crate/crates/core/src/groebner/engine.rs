//! Buchberger's algorithm over the integers (fraction free) for ideals and
//! submodules of free modules.

use std::cmp::Ordering;

use crate::groebner::zint::Zint;
use crate::poly::{Monomial, MonomialOrder};

/// A term `c * x^mono * e_comp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct GTerm {
    pub comp: u32,
    pub mono: Monomial,
    pub c: Zint,
}

/// Polynomial vector with integer coefficients, terms sorted descending
/// under the engine's order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct GPoly {
    pub terms: Vec<GTerm>,
}

/// Position over term, lower component index ranks higher.
#[inline]
pub(crate) fn cmp_terms(order: &MonomialOrder, ac: u32, am: &Monomial, bc: u32, bm: &Monomial) -> Ordering {
    if ac != bc {
        return bc.cmp(&ac);
    }
    order.cmp(am, bm)
}

impl GPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &GTerm {
        &self.terms[0]
    }

    pub fn sort(&mut self, order: &MonomialOrder) {
        self.terms
            .sort_by(|a, b| cmp_terms(order, b.comp, &b.mono, a.comp, &a.mono));
        // combine duplicates
        let mut out: Vec<GTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mono == t.mono => l.c = l.c.add(&t.c),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.c.is_zero());
        self.terms = out;
    }

    /// Content of the coefficients (positive).
    pub fn content(&self) -> Zint {
        let mut g = Zint::zero();
        for t in &self.terms {
            g = g.gcd(&t.c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.terms[0].c.is_negative() {
            g = g.neg();
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.c = t.c.div_exact(&g);
            }
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

}

/// Computes `a * p - b * m * g`, where the leading terms are known to cancel;
/// both leading terms are skipped.
fn sub_mul_tail(
    order: &MonomialOrder,
    p: &[GTerm],
    a: &Zint,
    g: &[GTerm],
    m: &Monomial,
    b: &Zint,
) -> Vec<GTerm> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (1, 1);
    let a_one = a.is_one();
    while i < p.len() && j < g.len() {
        let gm = g[j].mono.mul(m);
        match cmp_terms(order, p[i].comp, &p[i].mono, g[j].comp, &gm) {
            Ordering::Greater => {
                let c = if a_one { p[i].c.clone() } else { p[i].c.mul(a) };
                out.push(GTerm {
                    comp: p[i].comp,
                    mono: p[i].mono,
                    c,
                });
                i += 1;
            }
            Ordering::Less => {
                out.push(GTerm {
                    comp: g[j].comp,
                    mono: gm,
                    c: g[j].c.mul(b).neg(),
                });
                j += 1;
            }
            Ordering::Equal => {
                let c = p[i].c.mul_sub_mul(a, &g[j].c, b);
                if !c.is_zero() {
                    out.push(GTerm {
                        comp: p[i].comp,
                        mono: p[i].mono,
                        c,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    for t in &p[i..] {
        let c = if a_one { t.c.clone() } else { t.c.mul(a) };
        out.push(GTerm {
            comp: t.comp,
            mono: t.mono,
            c,
        });
    }
    for t in &g[j..] {
        out.push(GTerm {
            comp: t.comp,
            mono: t.mono.mul(m),
            c: t.c.mul(b).neg(),
        });
    }
    out
}

/// A reducer: polynomial plus lookup data for its leading term.
#[derive(Clone, Debug)]
pub(crate) struct Reducer {
    pub poly: GPoly,
    pub lm: Monomial,
    pub comp: u32,
    pub mask: u64,
    pub sugar: u32,
}

impl Reducer {
    pub fn new(poly: GPoly, sugar: u32) -> Reducer {
        let lt = poly.lead();
        Reducer {
            lm: lt.mono,
            comp: lt.comp,
            mask: lt.mono.support_mask(),
            sugar,
            poly,
        }
    }
}

fn find_reducer<'a>(
    reducers: &'a [Reducer],
    active: &[usize],
    comp: u32,
    mono: &Monomial,
) -> Option<&'a Reducer> {
    let mask = mono.support_mask();
    let mut best: Option<&Reducer> = None;
    for &k in active {
        let r = &reducers[k];
        if r.comp != comp || r.mask & !mask != 0 || !r.lm.divides(mono) {
            continue;
        }
        match best {
            Some(b) if b.poly.terms.len() <= r.poly.terms.len() => {}
            _ => best = Some(r),
        }
    }
    best
}

/// Reduces `p` by the active reducers. With `full`, tails are reduced too.
pub(crate) fn reduce(
    order: &MonomialOrder,
    p: GPoly,
    reducers: &[Reducer],
    active: &[usize],
    full: bool,
) -> GPoly {
    let mut rem: Vec<GTerm> = Vec::new();
    let mut cur = p.terms;
    let mut start = 0usize;
    loop {
        if start >= cur.len() {
            break;
        }
        let (comp, mono) = (cur[start].comp, cur[start].mono);
        match find_reducer(reducers, active, comp, &mono) {
            Some(r) => {
                let lc = &cur[start].c;
                let rc = &r.poly.terms[0].c;
                let g = lc.gcd(rc);
                let mut a = rc.div_exact(&g);
                let mut b = lc.div_exact(&g);
                if a.is_negative() {
                    a = a.neg();
                    b = b.neg();
                }
                let m = mono.div(&r.lm).expect("divisible");
                let next = sub_mul_tail(order, &cur[start..], &a, &r.poly.terms, &m, &b);
                if !a.is_one() {
                    for t in &mut rem {
                        t.c = t.c.mul(&a);
                    }
                }
                cur = next;
                start = 0;
                if cur.len() > 8 && cur.iter().take(4).any(|t| t.c.bits() > 256) {
                    shrink(&mut rem, &mut cur);
                }
            }
            None => {
                if !full {
                    break;
                }
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    rem.extend(cur.drain(start..));
    let mut out = GPoly { terms: rem };
    out.make_primitive();
    out
}

fn shrink(rem: &mut [GTerm], cur: &mut [GTerm]) {
    let mut g = Zint::zero();
    for t in rem.iter().chain(cur.iter()) {
        g = g.gcd(&t.c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for t in rem.iter_mut().chain(cur.iter_mut()) {
        t.c = t.c.div_exact(&g);
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
    sugar: u32,
}

/// Options for a Gröbner basis run.
#[derive(Clone, Debug)]
pub(crate) struct GbOptions {
    /// Whether the coprime-leading-term criterion applies (ideals only).
    pub product_criterion: bool,
    /// Stop as soon as a nonzero constant appears (ideals only).
    pub stop_at_unit: bool,
}

/// Computes the reduced Gröbner basis of the given generators.
///
/// Output is primitive integer polynomials with positive leading
/// coefficient, sorted by ascending leading term.
pub(crate) fn groebner(order: &MonomialOrder, gens: Vec<GPoly>, opts: &GbOptions) -> Vec<GPoly> {
    let mut reducers: Vec<Reducer> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<GPoly> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|mut g| {
            g.sort(order);
            g.make_primitive();
            g
        })
        .filter(|g| !g.is_zero())
        .collect();
    // small leading terms first, so later inputs get reduced early
    inputs.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        cmp_terms(order, x.comp, &x.mono, y.comp, &y.mono)
    });
    for g in inputs {
        let sugar = g.max_degree();
        let h = reduce(order, g, &reducers, &active, true);
        if h.is_zero() {
            continue;
        }
        if opts.stop_at_unit && h.lead().mono.is_one() {
            return vec![h];
        }
        update(order, &mut reducers, &mut active, &mut pairs, Reducer::new(h, sugar), opts);
    }

    while let Some(pair) = pairs.pop() {
        let (ri, rj) = (&reducers[pair.i], &reducers[pair.j]);
        let mi = pair.lcm.div(&ri.lm).unwrap();
        let mj = pair.lcm.div(&rj.lm).unwrap();
        let ci = &ri.poly.terms[0].c;
        let cj = &rj.poly.terms[0].c;
        let g = ci.gcd(cj);
        let a = cj.div_exact(&g);
        let b = ci.div_exact(&g);
        // S = a * mi * fi - b * mj * fj
        let fi: Vec<GTerm> = ri
            .poly
            .terms
            .iter()
            .map(|t| GTerm {
                comp: t.comp,
                mono: t.mono.mul(&mi),
                c: t.c.clone(),
            })
            .collect();
        let s = sub_mul_tail(order, &fi, &a, &rj.poly.terms, &mj, &b);
        let s = GPoly { terms: s };
        if s.is_zero() {
            continue;
        }
        let h = reduce(order, s, &reducers, &active, true);
        if h.is_zero() {
            continue;
        }
        if opts.stop_at_unit && h.lead().mono.is_one() {
            return vec![h];
        }
        update(order, &mut reducers, &mut active, &mut pairs, Reducer::new(h, pair.sugar), opts);
    }

    // active elements form a minimal basis; reduce tails
    let mut basis: Vec<usize> = active.clone();
    basis.sort_by(|&x, &y| {
        let (a, b) = (&reducers[x], &reducers[y]);
        cmp_terms(order, a.comp, &a.lm, b.comp, &b.lm)
    });
    let mut out: Vec<GPoly> = Vec::with_capacity(basis.len());
    for &idx in &basis {
        let others: Vec<usize> = basis.iter().copied().filter(|&o| o != idx).collect();
        let p = reducers[idx].poly.clone();
        let lead = p.terms[0].clone();
        let tail = GPoly {
            terms: p.terms[1..].to_vec(),
        };
        let mut red = reduce_keep_scale(order, tail, &reducers, &others);
        // red = s * tail mod others, with s > 0; combine with s * lead
        let mut terms = vec![GTerm {
            comp: lead.comp,
            mono: lead.mono,
            c: lead.c.mul(&red.0),
        }];
        terms.append(&mut red.1.terms);
        let mut q = GPoly { terms };
        q.make_primitive();
        out.push(q);
    }
    out
}

/// Fully reduces `p` and returns `(s, r)` with `s * p ≡ r`, `s > 0`.
fn reduce_keep_scale(
    order: &MonomialOrder,
    p: GPoly,
    reducers: &[Reducer],
    active: &[usize],
) -> (Zint, GPoly) {
    let mut scale = Zint::one();
    let mut rem: Vec<GTerm> = Vec::new();
    let mut cur = p.terms;
    let mut start = 0usize;
    while start < cur.len() {
        let (comp, mono) = (cur[start].comp, cur[start].mono);
        match find_reducer(reducers, active, comp, &mono) {
            Some(r) => {
                let lc = &cur[start].c;
                let rc = &r.poly.terms[0].c;
                let g = lc.gcd(rc);
                let mut a = rc.div_exact(&g);
                let mut b = lc.div_exact(&g);
                if a.is_negative() {
                    a = a.neg();
                    b = b.neg();
                }
                let m = mono.div(&r.lm).expect("divisible");
                let next = sub_mul_tail(order, &cur[start..], &a, &r.poly.terms, &m, &b);
                if !a.is_one() {
                    for t in &mut rem {
                        t.c = t.c.mul(&a);
                    }
                    scale = scale.mul(&a);
                }
                cur = next;
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    (scale, GPoly { terms: rem })
}

fn update(
    order: &MonomialOrder,
    reducers: &mut Vec<Reducer>,
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: Reducer,
    opts: &GbOptions,
) {
    let hidx = reducers.len();
    let (hc, hm, hs) = (h.comp, h.lm, h.sugar);
    reducers.push(h);

    // candidate pairs (h, g)
    struct Cand {
        g: usize,
        lcm: Monomial,
        coprime: bool,
        sugar: u32,
    }
    let mut cands: Vec<Cand> = Vec::new();
    for &g in active.iter() {
        let r = &reducers[g];
        if r.comp != hc {
            continue;
        }
        let lcm = r.lm.lcm(&hm);
        let sugar = (hs + lcm.degree() - hm.degree()).max(r.sugar + lcm.degree() - r.lm.degree());
        cands.push(Cand {
            g,
            lcm,
            coprime: opts.product_criterion && r.lm.is_coprime(&hm),
            sugar,
        });
    }
    // chain criterion among the new pairs
    let mut keep = vec![true; cands.len()];
    for k in 0..cands.len() {
        if cands[k].coprime {
            continue;
        }
        for l in 0..cands.len() {
            if l == k || !keep[l] {
                continue;
            }
            if cands[l].lcm.divides(&cands[k].lcm)
                && (cands[l].lcm != cands[k].lcm || l < k)
            {
                keep[k] = false;
                break;
            }
        }
    }
    // old pairs made redundant by h
    pairs.retain(|p| {
        if p.comp != hc || !hm.divides(&p.lcm) {
            return true;
        }
        let li = reducers[p.i].lm.lcm(&hm);
        let lj = reducers[p.j].lm.lcm(&hm);
        li == p.lcm || lj == p.lcm
    });
    for (k, c) in cands.iter().enumerate() {
        if keep[k] && !c.coprime {
            pairs.push(Pair {
                i: c.g,
                j: hidx,
                comp: hc,
                lcm: c.lcm,
                sugar: c.sugar,
            });
        }
    }
    // drop basis elements whose leading term h divides
    active.retain(|&g| {
        let r = &reducers[g];
        !(r.comp == hc && hm.divides(&r.lm))
    });
    active.push(hidx);
    // pop() takes the smallest (sugar, lcm)
    pairs.sort_by(|a, b| {
        b.sugar
            .cmp(&a.sugar)
            .then_with(|| cmp_terms(order, b.comp, &b.lcm, a.comp, &a.lcm))
            .then_with(|| (b.i, b.j).cmp(&(a.i, a.j)))
    });
}

/// Reduces `p` to normal form modulo a Gröbner basis (given as sorted polys).
pub(crate) fn normal_form(order: &MonomialOrder, p: GPoly, basis: &[Reducer]) -> (Zint, GPoly) {
    let active: Vec<usize> = (0..basis.len()).collect();
    reduce_keep_scale(order, p, basis, &active)
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
pub(crate) fn is_groebner(order: &MonomialOrder, basis: &[GPoly]) -> bool {
    let reducers: Vec<Reducer> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| Reducer::new(p.clone(), p.max_degree()))
        .collect();
    let active: Vec<usize> = (0..reducers.len()).collect();
    for i in 0..reducers.len() {
        for j in i + 1..reducers.len() {
            let (ri, rj) = (&reducers[i], &reducers[j]);
            if ri.comp != rj.comp {
                continue;
            }
            let lcm = ri.lm.lcm(&rj.lm);
            let mi = lcm.div(&ri.lm).unwrap();
            let mj = lcm.div(&rj.lm).unwrap();
            let ci = &ri.poly.terms[0].c;
            let cj = &rj.poly.terms[0].c;
            let fi: Vec<GTerm> = ri
                .poly
                .terms
                .iter()
                .map(|t| GTerm {
                    comp: t.comp,
                    mono: t.mono.mul(&mi),
                    c: t.c.clone(),
                })
                .collect();
            let s = GPoly {
                terms: sub_mul_tail(order, &fi, cj, &rj.poly.terms, &mj, ci),
            };
            if !reduce(order, s, &reducers, &active, false).is_zero() {
                return false;
            }
        }
    }
    true
}
