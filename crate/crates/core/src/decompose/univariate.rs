//! Irreducibility of integer polynomials in one variable, from the
//! distinct-degree factorizations modulo several primes.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Coefficients modulo `p`, lowest degree first, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn rem(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    let db = b.len() - 1;
    let li = inv(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let q = a[top] * li % p;
        if q != 0 {
            for (i, &c) in b.iter().enumerate() {
                let k = top - db + i;
                a[k] = (a[k] + p - q * c % p) % p;
            }
        }
        a.pop();
        a = trim(a);
    }
    trim(a)
}

fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&trim(out), m, p)
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = inv(l, p);
        for c in &mut a {
            *c = *c * li % p;
        }
    }
    a
}

fn derivative(a: &Poly, p: u64) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

/// `x^p mod m`.
fn frobenius(x: &Poly, m: &Poly, p: u64) -> Poly {
    let mut result: Poly = vec![1];
    let mut base = x.clone();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &base, m, p);
        }
        base = mul_mod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

fn div_exact(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let li = inv(b[db], p);
    let mut q = vec![0u64; a.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * li % p;
        q[top - db] = c;
        for (i, &bc) in b.iter().enumerate() {
            let k = top - db + i;
            r[k] = (r[k] + p - c * bc % p) % p;
        }
        r.pop();
    }
    trim(q)
}

/// Degrees of the irreducible factors of a squarefree `f` modulo `p`.
fn factor_degrees(f: &Poly, p: u64) -> Vec<usize> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut i = 1;
    while f.len() > 2 * i {
        h = frobenius(&h, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        let dg = g.len() - 1;
        if dg > 0 {
            out.extend(std::iter::repeat_n(i, dg / i));
            f = div_exact(&f, &g, p);
            h = rem(&h, &f, p);
        }
        i += 1;
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out
}

fn reduce(f: &[BigInt], p: u64) -> Poly {
    let pb = BigInt::from(p);
    trim(
        f.iter()
            .map(|c| {
                let r = c % &pb;
                let r = if r.is_negative() { r + &pb } else { r };
                r.to_u64().expect("reduced")
            })
            .collect(),
    )
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `Some(true)` when `f` is certified irreducible over `Q`, `Some(false)`
/// when it is certified reducible, `None` when undecided. `f` has integer
/// coefficients, lowest degree first, and a nonzero last entry.
pub(crate) fn irreducible(f: &[BigInt]) -> Option<bool> {
    let m = f.len().checked_sub(1)?;
    if m == 0 {
        return Some(false);
    }
    if m == 1 {
        return Some(true);
    }
    if f[0].is_zero() {
        return Some(false);
    }
    // subset sums of factor degrees compatible with every prime seen
    let mut possible = vec![true; m + 1];
    let mut usable = 0;
    for p in (1009u64..).filter(|&p| is_prime(p)).take(40) {
        let fp = reduce(f, p);
        if fp.len() != m + 1 {
            continue;
        }
        if gcd(&fp, &derivative(&fp, p), p).len() > 1 {
            continue;
        }
        usable += 1;
        let mut sums = vec![false; m + 1];
        sums[0] = true;
        for d in factor_degrees(&fp, p) {
            for s in (d..=m).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (a, b) in possible.iter_mut().zip(&sums) {
            *a &= *b;
        }
        if (1..m).all(|d| !possible[d]) {
            return Some(true);
        }
        if usable >= 12 {
            break;
        }
    }
    None
}
