//! Exact coefficient arithmetic: rationals, integer polynomials in `q`, the
//! field of fractions of those polynomials, and q-combinatorial products.

mod qcomb;
mod qfrac;
mod qpoly;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use qcomb::{
    binomial, factorial, multinomial, q_multinomial, q_pochhammer, q_range, q_shifted_pochhammer,
};
pub use qfrac::QFrac;
pub use qpoly::QPoly;

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type BigRat = num_rational::BigRational;

/// Commutative ring of exact scalars.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn from_int(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    /// Canonical JSON form: rationals as decimal strings, polynomials as
    /// ascending coefficient lists of decimal strings.
    fn to_json(&self) -> serde_json::Value;
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.clone() * &other.inv()
    }
}

/// Scalars that contain the indeterminate `q`.
pub trait HasQ: Ring {
    /// `q^t`.
    fn q_pow(t: usize) -> Self;
}

impl Ring for BigRat {
    fn from_int(n: i64) -> Self {
        BigRat::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRat::from_integer(n.clone())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(rat_to_string(self))
    }
}

impl Field for BigRat {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`rat_to_string`].
pub fn rat_from_str(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRat::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRat::from_integer),
    }
}

pub fn rat(n: i64) -> BigRat {
    BigRat::from_int(n)
}

/// Sign of a rational as -1, 0 or 1.
pub fn rat_signum(r: &BigRat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}
