//! Exact rationals and the bits of elementary number theory everything else
//! leans on.
//!
//! All arithmetic is generic over an integer backend [`Int`]. `BigInt` never
//! overflows; fixed-width backends such as `i64` are supported for fast sweeps
//! and rely on overflow checks being enabled (they are, in every profile of
//! this workspace) so that a wrap panics instead of producing a wrong answer.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// Integer backend for every exact computation in the crate.
pub trait Int:
    Integer
    + Signed
    + Clone
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Lifts a small literal into the backend.
#[inline]
pub fn int<I: Int>(n: i64) -> I {
    I::from_i64(n).expect("small integer literal is representable in every backend")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational {0:?}: expected n, n/d or -n/d")]
    Malformed(String),
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(String, String),
}

/// An exact fraction, always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational<I: Int>(Ratio<I>);

impl<I: Int> Rational<I> {
    /// Reduces `n/d` to lowest terms with `d > 0`.
    pub fn new(n: I, d: I) -> Result<Self, ArithError> {
        if d.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(Ratio::new(n, d)))
    }

    pub fn from_integer(n: I) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn numer(&self) -> &I {
        self.0.numer()
    }

    pub fn denom(&self) -> &I {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.numer().is_negative()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<I> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Multiplies by an integer.
    pub fn scale(&self, k: &I) -> Self {
        Rational(&self.0 * k)
    }
}

/// Shorthand for `Rational::new(n, d)` on small literals; panics on `d == 0`.
pub fn ratio<I: Int>(n: i64, d: i64) -> Rational<I> {
    Rational::new(int(n), int(d)).expect("literal denominator is nonzero")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<I: Int> $tr for Rational<I> {
            type Output = Rational<I>;
            fn $method(self, rhs: Rational<I>) -> Rational<I> {
                Rational(self.0.$method(rhs.0))
            }
        }

        impl<'a, I: Int> $tr<&'a Rational<I>> for &'a Rational<I> {
            type Output = Rational<I>;
            fn $method(self, rhs: &'a Rational<I>) -> Rational<I> {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor; use [`Rational::checked_div`] when the divisor is
/// not known to be nonzero.
impl<I: Int> Div for Rational<I> {
    type Output = Rational<I>;
    fn div(self, rhs: Rational<I>) -> Rational<I> {
        self.checked_div(&rhs).expect("division by zero rational")
    }
}

impl<I: Int> Neg for Rational<I> {
    type Output = Rational<I>;
    fn neg(self) -> Rational<I> {
        Rational(-self.0)
    }
}

impl<I: Int> From<I> for Rational<I> {
    fn from(n: I) -> Self {
        Rational::from_integer(n)
    }
}

impl<I: Int> fmt::Display for Rational<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl<I: Int> fmt::Debug for Rational<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl<I: Int> FromStr for Rational<I> {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ArithError::Malformed(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let unsigned = num.strip_prefix('-').unwrap_or(num);
        if !is_digits(unsigned) || !den.is_none_or(is_digits) {
            return Err(malformed());
        }
        let n = I::from_str_radix(num, 10).map_err(|_| malformed())?;
        let d = match den {
            Some(d) => I::from_str_radix(d, 10).map_err(|_| malformed())?,
            None => I::one(),
        };
        Rational::new(n, d)
    }
}

impl<I: Int> Serialize for Rational<I> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, I: Int> Deserialize<'de> for Rational<I> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor<I>(std::marker::PhantomData<I>);

        impl<'de, I: Int> Visitor<'de> for RationalVisitor<I> {
            type Value = Rational<I>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"n/d\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_str(RationalVisitor(std::marker::PhantomData))
    }
}

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) >= 0` and
/// `a*x + b*y = g`.
pub fn egcd<I: Int>(a: I, b: I) -> (I, I, I) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (I::one(), I::zero());
    let (mut old_t, mut t) = (I::zero(), I::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// The inverse of `a` modulo `m > 0`, in `[0, m)`.
pub fn mod_inverse<I: Int>(a: I, m: I) -> Result<I, ArithError> {
    let (g, x, _) = egcd(a.clone(), m.clone());
    if !g.is_one() {
        return Err(ArithError::NotInvertible(a.to_string(), m.to_string()));
    }
    Ok(x.mod_floor(&m))
}

/// `gcd` with the convention `gcd(0, 0) = 0`; always nonnegative.
pub fn gcd<I: Int>(a: &I, b: &I) -> I {
    a.gcd(b)
}
