//! Exact rationals that stay on machine words while they fit.
//!
//! Elimination over the module pieces touches millions of coefficients, almost
//! all of them tiny. Values are kept normalized so that equal numbers have
//! equal representations: `Small` whenever numerator and denominator fit in
//! `i64`, `Big` otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub enum Rational {
    /// `n / d` in lowest terms with `d > 0`.
    Small(i64, i64),
    Big(BigRational),
}

use Rational::{Big, Small};

impl Rational {
    pub fn integer(n: i64) -> Self {
        Small(n, 1)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Small(n, d),
            _ => Big(BigRational::new(n.into(), d.into())),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Small(n, d),
            _ => Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Small(n, _) => BigInt::from(*n),
            Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Small(_, d) => BigInt::from(*d),
            Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Small(_, d) => *d == 1,
            Big(r) => r.is_integer(),
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Small(n, d) if *n != i64::MIN => Small(n.abs(), *d),
            _ => Self::from_big(self.to_big().abs()),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Small(n, 1)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Self::from_big(r)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Small(0, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Small(1, 1)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Small(a, b), Small(c, d)) => a == c && b == d,
            (Big(a), Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Small(a, b), Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Small(n, 1) => write!(f, "{n}"),
            Small(n, d) => write!(f, "{n}/{d}"),
            Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn add(x: &Rational, y: &Rational) -> Rational {
    match (x, y) {
        (Small(a, 1), Small(c, 1)) => match a.checked_add(*c) {
            Some(s) => Small(s, 1),
            None => Rational::from_i128(*a as i128 + *c as i128, 1),
        },
        (Small(a, b), Small(c, d)) => {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Rational::from_i128(a + c, b);
            }
            Rational::from_i128(a * d + c * b, b * d)
        }
        _ => Rational::from_big(x.to_big() + y.to_big()),
    }
}

fn mul(x: &Rational, y: &Rational) -> Rational {
    match (x, y) {
        (Small(a, 1), Small(c, 1)) => match a.checked_mul(*c) {
            Some(p) => Small(p, 1),
            None => Rational::from_i128(*a as i128 * *c as i128, 1),
        },
        (Small(a, b), Small(c, d)) => {
            Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
        }
        _ => Rational::from_big(x.to_big() * y.to_big()),
    }
}

fn neg(x: &Rational) -> Rational {
    match x {
        Small(n, d) if *n != i64::MIN => Small(-n, *d),
        _ => Rational::from_big(-x.to_big()),
    }
}

fn div(x: &Rational, y: &Rational) -> Rational {
    assert!(!y.is_zero(), "division by zero");
    mul(x, &y.recip())
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                $f(self, o)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                $f(self, &o)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                $f(&self, o)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                $f(&self, &o)
            }
        }
    };
}

fn sub(x: &Rational, y: &Rational) -> Rational {
    add(x, &neg(y))
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg(&self)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg(self)
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, o: Rational) {
        *self = add(self, &o);
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, o: &Rational) {
        *self = add(self, o);
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, o: Rational) {
        *self = sub(self, &o);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, o: &Rational) {
        *self = sub(self, o);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = Rational::integer(i64::MAX);
        let s = &m + &m;
        assert!(matches!(s, Big(_)));
        assert_eq!(&s - &m, m);
        assert!(matches!(&s - &m, Small(..)));
    }

    #[test]
    fn normal_form() {
        assert_eq!(Rational::integer(2) / Rational::integer(-4), Small(-1, 2));
        assert!((Rational::integer(3) - Rational::integer(3)).is_zero());
    }

    proptest! {
        #[test]
        fn agrees_with_big(a in any::<i64>(), b in 1i64..=i64::MAX, c in any::<i64>(), d in 1i64..=i64::MAX) {
            let (x, y) = (Rational::from(big(a, b)), Rational::from(big(c, d)));
            prop_assert_eq!((&x + &y).to_big(), big(a, b) + big(c, d));
            prop_assert_eq!((&x - &y).to_big(), big(a, b) - big(c, d));
            prop_assert_eq!((&x * &y).to_big(), big(a, b) * big(c, d));
            if c != 0 {
                prop_assert_eq!((&x / &y).to_big(), big(a, b) / big(c, d));
            }
            prop_assert_eq!(x.cmp(&y), big(a, b).cmp(&big(c, d)));
        }
    }
}
