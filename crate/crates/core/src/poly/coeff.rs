//! Integer coefficients that stay on the machine word until they overflow,
//! then widen to an arbitrary-precision integer.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Coeff {
    Small(i64),
    Big(BigInt),
}

impl Coeff {
    pub const ZERO: Coeff = Coeff::Small(0);
    pub const ONE: Coeff = Coeff::Small(1);

    fn from_big(b: BigInt) -> Coeff {
        match b.to_i64() {
            Some(v) => Coeff::Small(v),
            None => Coeff::Big(b),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Coeff::Small(v) => BigInt::from(*v),
            Coeff::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(v) => *v < 0,
            Coeff::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Coeff {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Coeff::Small(v) => Some(*v),
            Coeff::Big(_) => None,
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Coeff) {
        if let (Coeff::Small(a), Coeff::Small(b)) = (&*self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                *self = Coeff::Small(s);
                return;
            }
        }
        *self = Coeff::from_big(self.to_big() + rhs.to_big());
    }

    /// `self / rhs` when the division is exact.
    pub fn div_exact(&self, rhs: &Coeff) -> Option<Coeff> {
        if rhs.is_zero() {
            return None;
        }
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, rhs) {
            if let (Some(r), Some(q)) = (a.checked_rem(*b), a.checked_div(*b)) {
                return (r == 0).then_some(Coeff::Small(q));
            }
        }
        let (a, b) = (self.to_big(), rhs.to_big());
        (&a % &b).is_zero().then(|| Coeff::from_big(a / b))
    }

    pub fn mul_ref(&self, rhs: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, rhs) {
            if let Some(p) = a.checked_mul(*b) {
                return Coeff::Small(p);
            }
        }
        Coeff::from_big(self.to_big() * rhs.to_big())
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Small(v)
    }
}

impl From<i32> for Coeff {
    fn from(v: i32) -> Self {
        Coeff::Small(v as i64)
    }
}

impl From<u64> for Coeff {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Coeff::Small(s),
            Err(_) => Coeff::Big(BigInt::from(v)),
        }
    }
}

impl From<i128> for Coeff {
    fn from(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(s) => Coeff::Small(s),
            Err(_) => Coeff::Big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Coeff {
    fn from(b: BigInt) -> Self {
        Coeff::from_big(b)
    }
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => a == b,
            // Big always holds values outside i64 range.
            (Coeff::Big(a), Coeff::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Coeff {}

impl std::hash::Hash for Coeff {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Coeff::Small(v) => v.hash(state),
            Coeff::Big(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Small(v) => match v.checked_neg() {
                Some(n) => Coeff::Small(n),
                None => Coeff::Big(-BigInt::from(v)),
            },
            Coeff::Big(b) => Coeff::from_big(-b),
        }
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(mut self, rhs: Coeff) -> Coeff {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        self + (-rhs)
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        self.mul_ref(&rhs)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(v) => write!(f, "{v}"),
            Coeff::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Coeff {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Coeff::Small(v));
        }
        s.parse::<BigInt>().map(Coeff::from_big)
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::ZERO
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widens_on_overflow() {
        let big = Coeff::from(i64::MAX);
        let sum = big.clone() + Coeff::ONE;
        assert!(matches!(sum, Coeff::Big(_)));
        assert_eq!(sum.to_string(), "9223372036854775808");
        // and narrows back
        let back = sum - Coeff::ONE;
        assert_eq!(back, Coeff::Small(i64::MAX));
        let sq = big.clone() * big;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
    }

    #[test]
    fn neg_min() {
        let m = -Coeff::from(i64::MIN);
        assert_eq!(m.to_string(), "9223372036854775808");
        assert_eq!(-m, Coeff::Small(i64::MIN));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-17", "123456789012345678901234567890"] {
            assert_eq!(s.parse::<Coeff>().unwrap().to_string(), s);
        }
    }
}
