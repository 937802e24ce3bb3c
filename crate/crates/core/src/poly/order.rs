use std::cmp::Ordering;

use crate::poly::Monomial;

/// Order used inside one block of a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Lex,
    GrevLex,
}

/// A group of variables compared together in a block order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub vars: Vec<usize>,
    pub kind: BlockKind,
}

/// Monomial order. Variables are ranked `x0 > x1 > ...` by ring position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Blocks compared left to right; the first block dominates.
    Block(Vec<Block>),
    /// Weighted degree first, ties broken as in grevlex.
    WeightedGrevLex(Vec<u32>),
}

impl MonomialOrder {
    /// Elimination order for `vars`: grevlex on `vars`, then grevlex on the rest.
    pub fn elimination(nvars: usize, vars: &[usize]) -> MonomialOrder {
        let mut first: Vec<usize> = vars.to_vec();
        first.sort_unstable();
        first.dedup();
        let rest: Vec<usize> = (0..nvars).filter(|i| !first.contains(i)).collect();
        MonomialOrder::Block(vec![
            Block {
                vars: first,
                kind: BlockKind::GrevLex,
            },
            Block {
                vars: rest,
                kind: BlockKind::GrevLex,
            },
        ])
    }

    /// Whether the order compares total degree first.
    pub fn is_degree_compatible(&self) -> bool {
        match self {
            MonomialOrder::GrevLex => true,
            MonomialOrder::Lex => false,
            MonomialOrder::Block(b) => b.len() == 1 && b[0].kind == BlockKind::GrevLex,
            MonomialOrder::WeightedGrevLex(w) => w.iter().all(|&x| x == 1),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Block(blocks) => {
                for blk in blocks {
                    let o = match blk.kind {
                        BlockKind::Lex => lex_on(a, b, &blk.vars),
                        BlockKind::GrevLex => grevlex_on(a, b, &blk.vars),
                    };
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::WeightedGrevLex(w) => {
                let wa: u64 = a.exps().iter().zip(w).map(|(e, x)| *e as u64 * *x as u64).sum();
                let wb: u64 = b.exps().iter().zip(w).map(|(e, x)| *e as u64 * *x as u64).sum();
                match wa.cmp(&wb) {
                    Ordering::Equal => revlex_tail(a, b),
                    o => o,
                }
            }
        }
    }
}

fn revlex_tail(a: &Monomial, b: &Monomial) -> Ordering {
    let ea = a.exps();
    let eb = b.exps();
    for i in (0..ea.len()).rev() {
        if ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => revlex_tail(a, b),
        o => o,
    }
}

#[inline]
fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exps().cmp(b.exps())
}

fn lex_on(a: &Monomial, b: &Monomial, vars: &[usize]) -> Ordering {
    for &i in vars {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex_on(a: &Monomial, b: &Monomial, vars: &[usize]) -> Ordering {
    match a.partial_degree(vars).cmp(&b.partial_degree(vars)) {
        Ordering::Equal => {}
        o => return o,
    }
    for &i in vars.iter().rev() {
        if a.exp(i) != b.exp(i) {
            return b.exp(i).cmp(&a.exp(i));
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Direct reading of the textbook definitions, used as the comparator oracle.
    fn definitional(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
        let d: Vec<i64> = a
            .exps()
            .iter()
            .zip(b.exps())
            .map(|(x, y)| *x as i64 - *y as i64)
            .collect();
        match order {
            MonomialOrder::Lex => match d.iter().find(|v| **v != 0) {
                None => Ordering::Equal,
                Some(v) if *v > 0 => Ordering::Greater,
                _ => Ordering::Less,
            },
            MonomialOrder::GrevLex => {
                let s: i64 = d.iter().sum();
                if s != 0 {
                    return s.cmp(&0);
                }
                match d.iter().rev().find(|v| **v != 0) {
                    None => Ordering::Equal,
                    Some(v) if *v < 0 => Ordering::Greater,
                    _ => Ordering::Less,
                }
            }
            _ => unreachable!(),
        }
    }

    fn all_monomials(nvars: usize, maxdeg: u32) -> Vec<Monomial> {
        let mut out = vec![];
        let mut e = vec![0u32; nvars];
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == e.len() {
                out.push(Monomial::from_exponents(e));
                return;
            }
            for k in 0..=left {
                e[i] = k;
                rec(i + 1, left - k, e, out);
            }
            e[i] = 0;
        }
        rec(0, maxdeg, &mut e, &mut out);
        out
    }

    #[test]
    fn grevlex_and_lex_examples() {
        // x^2 y vs x y^2
        assert_eq!(MonomialOrder::GrevLex.cmp(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        // x vs y^5 under lex
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        // grevlex: x z < y^2 in three variables
        assert_eq!(MonomialOrder::GrevLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn exhaustive_against_definition() {
        let mons = all_monomials(3, 3);
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            for a in &mons {
                for b in &mons {
                    assert_eq!(order.cmp(a, b), definitional(&order, a, b), "{order:?} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn orders_refine_divisibility_and_respect_products() {
        let mons = all_monomials(3, 3);
        let orders = [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::elimination(3, &[1]),
            MonomialOrder::Block(vec![
                Block { vars: vec![2, 0], kind: BlockKind::Lex },
                Block { vars: vec![1], kind: BlockKind::GrevLex },
            ]),
            MonomialOrder::WeightedGrevLex(vec![1, 3, 2]),
        ];
        for order in &orders {
            for a in &mons {
                for b in &mons {
                    if a.divides(b) && a != b {
                        assert_eq!(order.cmp(a, b), Ordering::Less);
                    }
                    for c in mons.iter().take(10) {
                        assert_eq!(order.cmp(a, b), order.cmp(&a.mul(c), &b.mul(c)));
                    }
                }
            }
        }
    }
}
