use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

/// Integer with an inline machine-word representation and a heap fallback.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Zint {
    S(i64),
    B(Box<BigInt>),
}

impl Zint {
    pub fn zero() -> Zint {
        Zint::S(0)
    }

    pub fn one() -> Zint {
        Zint::S(1)
    }

    fn from_big(b: BigInt) -> Zint {
        match b.to_i64() {
            Some(v) if v != i64::MIN => Zint::S(v),
            _ => Zint::B(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Zint::S(v) => BigInt::from(*v),
            Zint::B(b) => (**b).clone(),
        }
    }

    pub fn from_bigint(b: &BigInt) -> Zint {
        Zint::from_big(b.clone())
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Zint::S(0))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Zint::S(v) => *v < 0,
            Zint::B(b) => b.is_negative(),
        }
    }

    pub fn neg(&self) -> Zint {
        match self {
            Zint::S(v) => Zint::S(-v),
            Zint::B(b) => Zint::from_big(-(**b).clone()),
        }
    }

    #[inline]
    pub fn mul(&self, o: &Zint) -> Zint {
        if let (Zint::S(a), Zint::S(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                if c != i64::MIN {
                    return Zint::S(c);
                }
            }
        }
        Zint::from_big(self.to_big() * o.to_big())
    }

    #[inline]
    pub fn add(&self, o: &Zint) -> Zint {
        if let (Zint::S(a), Zint::S(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                if c != i64::MIN {
                    return Zint::S(c);
                }
            }
        }
        Zint::from_big(self.to_big() + o.to_big())
    }

    /// `self * a - o * b`, the fraction-free reduction step.
    #[inline]
    pub fn mul_sub_mul(&self, a: &Zint, o: &Zint, b: &Zint) -> Zint {
        if let (Zint::S(x), Zint::S(y), Zint::S(z), Zint::S(w)) = (self, a, o, b) {
            let v = (*x as i128) * (*y as i128) - (*z as i128) * (*w as i128);
            if v > i64::MIN as i128 && v <= i64::MAX as i128 {
                return Zint::S(v as i64);
            }
            return Zint::from_big(BigInt::from(v));
        }
        Zint::from_big(self.to_big() * a.to_big() - o.to_big() * b.to_big())
    }

    pub fn gcd(&self, o: &Zint) -> Zint {
        if let (Zint::S(a), Zint::S(b)) = (self, o) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            if x <= i64::MAX as u64 {
                return Zint::S(x as i64);
            }
        }
        Zint::from_big(self.to_big().gcd(&o.to_big()))
    }

    /// Exact division.
    pub fn div_exact(&self, o: &Zint) -> Zint {
        if let (Zint::S(a), Zint::S(b)) = (self, o) {
            debug_assert_eq!(a % b, 0);
            if let Some(c) = a.checked_div(*b) {
                return Zint::S(c);
            }
        }
        Zint::from_big(self.to_big() / o.to_big())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Zint::S(1))
    }

    pub fn bits(&self) -> u64 {
        match self {
            Zint::S(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Zint::B(b) => b.bits(),
        }
    }
}

impl From<i64> for Zint {
    fn from(v: i64) -> Zint {
        if v == i64::MIN {
            Zint::B(Box::new(BigInt::from(v)))
        } else {
            Zint::S(v)
        }
    }
}

impl fmt::Debug for Zint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zint::S(v) => write!(f, "{v}"),
            Zint::B(b) => write!(f, "{b}"),
        }
    }
}

impl One for Zint {
    fn one() -> Self {
        Zint::S(1)
    }
}

impl std::ops::Mul for Zint {
    type Output = Zint;
    fn mul(self, rhs: Zint) -> Zint {
        Zint::mul(&self, &rhs)
    }
}
