//! Naive oracles. They read engine output but never call engine algorithms.

use std::collections::{BTreeMap, BTreeSet};

use charcycle::cycles::CharCycle;
use charcycle::Monomial;

/// `Σ_{S ⊆ vars} T*_{V(x_S)} X`, keyed by the sorted subset `S`.
pub fn monomial_localization_cycle(vars: &[usize]) -> BTreeMap<Vec<usize>, u64> {
    let distinct: BTreeSet<usize> = vars.iter().copied().collect();
    assert_eq!(distinct.len(), vars.len(), "repeated variable in {vars:?}");
    let vars: Vec<usize> = distinct.into_iter().collect();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << vars.len()) {
        let s: Vec<usize> = (0..vars.len()).filter(|i| mask >> i & 1 == 1).map(|i| vars[i]).collect();
        out.insert(s, 1);
    }
    out
}

/// Reads a cycle made of conormals of coordinate subspaces as `S ↦ m`,
/// where `T*_{V(x_S)} X = V(x_i : i ∈ S, a_j : j ∉ S)`. `None` when some
/// component is not of that shape.
pub fn coordinate_cycle(cc: &CharCycle) -> Option<BTreeMap<Vec<usize>, u64>> {
    let n = cc.ring().split_size()?;
    let mut out = BTreeMap::new();
    for (c, m) in cc.components() {
        let mut vars = BTreeSet::new();
        for g in c.prime().gens() {
            let t = g.terms();
            if t.len() != 1 || t[0].mono.degree() != 1 {
                return None;
            }
            vars.insert((0..2 * n).find(|&i| t[0].mono.exp(i) == 1)?);
        }
        let s: Vec<usize> = (0..n).filter(|i| vars.contains(i)).collect();
        let a_ok = (0..n).all(|j| vars.contains(&(n + j)) != s.contains(&j));
        if !a_ok || vars.len() != n {
            return None;
        }
        *out.entry(s).or_default() += m;
    }
    Some(out)
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(e.clone());
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exps(m: &Monomial) -> Vec<u32> {
    (0..m.nvars()).map(|i| m.exp(i)).collect()
}

/// Number of monomials of each degree `0..=up_to` outside the monomial ideal.
pub fn standard_monomial_count(nvars: usize, gens: &[Monomial], up_to: u32) -> Vec<u64> {
    let gens: Vec<Vec<u32>> = gens.iter().map(exps).collect();
    (0..=up_to)
        .map(|d| {
            monomials_of_degree(nvars, d)
                .iter()
                .filter(|m| !gens.iter().any(|g| divides(g, m)))
                .count() as u64
        })
        .collect()
}

/// Associated primes of a monomial ideal, as variable subsets: the primes
/// of the form `I : m` for a standard monomial `m`.
pub fn monomial_associated_primes(nvars: usize, gens: &[Monomial]) -> BTreeSet<Vec<usize>> {
    let gens: Vec<Vec<u32>> = gens.iter().map(exps).collect();
    let bound: Vec<u32> = (0..nvars).map(|i| gens.iter().map(|g| g[i]).max().unwrap_or(0)).collect();
    let mut out = BTreeSet::new();
    let mut m = vec![0u32; nvars];
    loop {
        if !gens.iter().any(|g| divides(g, &m)) {
            // generators of I : m
            let mut colon: Vec<Vec<u32>> = gens
                .iter()
                .map(|g| g.iter().zip(&m).map(|(a, b)| a.saturating_sub(*b)).collect())
                .collect();
            colon.sort();
            colon.dedup();
            let minimal: Vec<&Vec<u32>> = colon
                .iter()
                .filter(|c| !colon.iter().any(|d| d != *c && divides(d, c)))
                .collect();
            if minimal.iter().all(|c| c.iter().sum::<u32>() == 1) {
                let s: Vec<usize> = minimal.iter().map(|c| c.iter().position(|&e| e == 1).unwrap()).collect();
                let mut s = s;
                s.sort();
                out.insert(s);
            }
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return out;
            }
            if m[i] < bound[i] {
                m[i] += 1;
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

/// Minimal primes of the squarefree monomial ideal generated by the given
/// variable sets, as bitmasks (minimal vertex covers of the hypergraph).
pub fn minimal_covers(nvars: usize, gens: &[Vec<usize>]) -> Vec<u32> {
    let gens: Vec<u32> = gens.iter().map(|g| g.iter().map(|&v| 1u32 << v).sum()).collect();
    let covers: Vec<u32> = (0u32..1 << nvars).filter(|c| gens.iter().all(|g| g & c != 0)).collect();
    covers
        .iter()
        .copied()
        .filter(|&c| !covers.iter().any(|&d| d != c && d & c == d))
        .collect()
}

const P: u64 = 1_000_000_007;

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % P;
                for k in c..cols {
                    rows[r][k] = (rows[r][k] + P - f * rows[rank][k] % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % P;
        }
        a = a * a % P;
        e >>= 1;
    }
    r
}

/// Reduced Betti numbers `dim H̃_d`, indexed by `d + 1`, of the simplicial
/// complex with the given faces (closed under subsets, possibly void).
fn reduced_homology(faces: &[u32], top: usize) -> Vec<usize> {
    let by_size: Vec<Vec<u32>> = (0..=top + 1)
        .map(|k| faces.iter().copied().filter(|f| f.count_ones() as usize == k).collect())
        .collect();
    // rank of the boundary from faces of size k to faces of size k - 1
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k >= by_size.len() || by_size[k].is_empty() || by_size[k - 1].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<u64>> = by_size[k]
            .iter()
            .map(|&f| {
                let verts: Vec<u32> = (0..32).filter(|v| f >> v & 1 == 1).collect();
                by_size[k - 1]
                    .iter()
                    .map(|&g| match verts.iter().position(|&v| f & !(1 << v) == g) {
                        Some(i) if i % 2 == 0 => 1,
                        Some(_) => P - 1,
                        None => 0,
                    })
                    .collect()
            })
            .collect();
        rank_mod_p(rows)
    };
    (0..=top)
        .map(|k| by_size[k].len() - boundary_rank(k) - boundary_rank(k + 1))
        .collect()
}

/// `CC(H^r_I(R))` for the squarefree monomial ideal generated by the given
/// variable sets, as `r ↦ (S ↦ m)` for `r = 0..=nvars`. The multiplicity of
/// `T*_{V(x_S)}` in degree `r` is the multigraded Betti number
/// `β_{|S|-r, S}` of the Alexander dual, read off by Hochster's formula from
/// the complex `{τ ⊆ S : x^{S∖τ} ∈ I^∨}`.
pub fn squarefree_cohomology_cycles(nvars: usize, gens: &[Vec<usize>]) -> Vec<BTreeMap<Vec<usize>, u64>> {
    let dual = minimal_covers(nvars, gens);
    let mut out = vec![BTreeMap::new(); nvars + 1];
    for s in 0u32..1 << nvars {
        let size = s.count_ones() as usize;
        let faces: Vec<u32> = (0u32..1 << nvars)
            .filter(|t| t & s == *t)
            .filter(|t| dual.iter().any(|&g| g & (s & !t) == g))
            .collect();
        if faces.is_empty() {
            continue;
        }
        let homology = reduced_homology(&faces, size);
        // β_{i,S} = dim H̃_{i-1}, stored at index i
        for (i, &b) in homology.iter().enumerate() {
            if b == 0 || i > size {
                continue;
            }
            let r = size - i;
            let key: Vec<usize> = (0..nvars).filter(|v| s >> v & 1 == 1).collect();
            out[r].insert(key, b as u64);
        }
    }
    out
}
