use std::fmt;
use std::hash::{Hash, Hasher};

/// Largest number of ring variables a monomial can hold.
pub const MAX_VARS: usize = 32;

/// Exponent vector of a monomial.
///
/// Stored inline so monomials are `Copy`; the total degree is cached.
#[derive(Clone, Copy)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    len: u8,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        assert!(nvars <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            len: nvars as u8,
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps[..self.len as usize]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn set_exp(&mut self, i: usize, e: u32) {
        let old = self.exps[i] as u32;
        self.exps[i] = u16::try_from(e).expect("exponent overflow");
        self.deg = self.deg - old + e;
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len, other.len);
        let mut r = *self;
        for i in 0..self.len as usize {
            r.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        r.deg = self.deg + other.deg;
        r
    }

    /// `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps[..self.len as usize]
            .iter()
            .zip(&other.exps[..self.len as usize])
            .all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut r = *self;
        for i in 0..self.len as usize {
            r.exps[i] -= other.exps[i];
        }
        r.deg = self.deg - other.deg;
        Some(r)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..self.len as usize {
            r.exps[i] = self.exps[i].max(other.exps[i]);
            deg += r.exps[i] as u32;
        }
        r.deg = deg;
        r
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..self.len as usize {
            r.exps[i] = self.exps[i].min(other.exps[i]);
            deg += r.exps[i] as u32;
        }
        r.deg = deg;
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.len as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Bit mask with bit `i mod 64` set when variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for i in 0..self.len as usize {
            if self.exps[i] != 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    /// Degree in the given variables only.
    pub fn partial_degree(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i] as u32).sum()
    }

    /// Re-index into a ring with `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut r = Monomial::one(nvars);
        for (i, &j) in map.iter().enumerate().take(self.len as usize) {
            r.exps[j] += self.exps[i];
        }
        r.deg = self.deg;
        r
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.exps() == other.exps()
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps().hash(state);
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}
