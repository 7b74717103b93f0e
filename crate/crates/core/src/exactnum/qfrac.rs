use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Field, HasQ, QPoly, Ring};
use crate::error::{Error, Result};

/// Element of `Q(q)`: a ratio of integer polynomials in lowest terms.
///
/// `gcd(num, den) = 1` in `Z[q]` (contents included) and the denominator has
/// a positive leading coefficient, so equal fractions are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFrac {
    num: QPoly,
    den: QPoly,
}

impl QFrac {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::bad("zero denominator"));
        }
        Ok(QFrac::reduce(num, den))
    }

    pub fn from_poly(p: QPoly) -> Self {
        QFrac {
            num: p,
            den: QPoly::one(),
        }
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return QFrac::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading().is_some_and(|lc| lc.is_negative()) {
            num = -num;
            den = -den;
        }
        QFrac { num, den }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator, when the denominator is 1.
    pub fn to_poly(&self) -> Option<QPoly> {
        self.is_poly().then(|| self.num.clone())
    }

    pub fn try_inv(&self) -> Option<QFrac> {
        if self.num.is_zero() {
            return None;
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading().is_some_and(|lc| lc.is_negative()) {
            num = -num;
            den = -den;
        }
        Some(QFrac { num, den })
    }

    pub fn pow(&self, e: u32) -> QFrac {
        QFrac {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    fn add_impl(&self, rhs: &QFrac, negate: bool) -> QFrac {
        let rnum = if negate { -rhs.num.clone() } else { rhs.num.clone() };
        if self.den == rhs.den {
            let num = self.num.clone() + &rnum;
            if self.den.is_one() {
                return QFrac {
                    num,
                    den: QPoly::one(),
                };
            }
            return QFrac::reduce(num, self.den.clone());
        }
        let num = &self.num * &rhs.den + &(&rnum * &self.den);
        QFrac::reduce(num, &self.den * &rhs.den)
    }

    fn mul_impl(&self, rhs: &QFrac) -> QFrac {
        if self.num.is_zero() || rhs.num.is_zero() {
            return QFrac::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QFrac {
                num: &self.num * &rhs.num,
                den: QPoly::one(),
            };
        }
        // cross-cancel so the product stays reduced without a final gcd
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        let mut num = &a * &c;
        let mut den = &b * &d;
        if den.leading().is_some_and(|lc| lc.is_negative()) {
            num = -num;
            den = -den;
        }
        QFrac { num, den }
    }
}

impl fmt::Debug for QFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QFrac({})", self)
    }
}

impl fmt::Display for QFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<QPoly> for QFrac {
    fn from(p: QPoly) -> Self {
        QFrac::from_poly(p)
    }
}

impl Zero for QFrac {
    fn zero() -> Self {
        QFrac::from_poly(QPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QFrac {
    fn one() -> Self {
        QFrac::from_poly(QPoly::one())
    }
}

impl<'a> Add<&'a QFrac> for QFrac {
    type Output = QFrac;
    fn add(self, rhs: &'a QFrac) -> QFrac {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a QFrac> for QFrac {
    type Output = QFrac;
    fn sub(self, rhs: &'a QFrac) -> QFrac {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a QFrac> for QFrac {
    type Output = QFrac;
    fn mul(self, rhs: &'a QFrac) -> QFrac {
        self.mul_impl(rhs)
    }
}

impl Add for QFrac {
    type Output = QFrac;
    fn add(self, rhs: QFrac) -> QFrac {
        self.add_impl(&rhs, false)
    }
}

impl Sub for QFrac {
    type Output = QFrac;
    fn sub(self, rhs: QFrac) -> QFrac {
        self.add_impl(&rhs, true)
    }
}

impl Mul for QFrac {
    type Output = QFrac;
    fn mul(self, rhs: QFrac) -> QFrac {
        self.mul_impl(&rhs)
    }
}

impl Neg for QFrac {
    type Output = QFrac;
    fn neg(self) -> QFrac {
        QFrac {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<'a> AddAssign<&'a QFrac> for QFrac {
    fn add_assign(&mut self, rhs: &'a QFrac) {
        *self = self.add_impl(rhs, false);
    }
}

impl<'a> SubAssign<&'a QFrac> for QFrac {
    fn sub_assign(&mut self, rhs: &'a QFrac) {
        *self = self.add_impl(rhs, true);
    }
}

impl Ring for QFrac {
    fn from_int(n: i64) -> Self {
        QFrac::from_poly(QPoly::from_int(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        QFrac::from_poly(QPoly::constant(n.clone()))
    }

    fn to_json(&self) -> serde_json::Value {
        if self.den.is_one() {
            self.num.to_json()
        } else {
            serde_json::json!({ "num": self.num.to_json(), "den": self.den.to_json() })
        }
    }
}

impl Field for QFrac {
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }
}

impl HasQ for QFrac {
    fn q_pow(t: usize) -> Self {
        QFrac::from_poly(QPoly::q_power(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: &[i64], d: &[i64]) -> QFrac {
        QFrac::new(QPoly::from_ints(n), QPoly::from_ints(d)).unwrap()
    }

    #[test]
    fn reduces_on_construction() {
        // (1 - q^2) / (1 - q) = 1 + q
        assert_eq!(f(&[1, 0, -1], &[1, -1]), f(&[1, 1], &[1]));
        // 2 / (-4) = -1/2
        let h = f(&[2], &[-4]);
        assert_eq!(h.num(), &QPoly::from_ints(&[-1]));
        assert_eq!(h.den(), &QPoly::from_ints(&[2]));
    }

    #[test]
    fn field_operations() {
        let a = f(&[1], &[1, -1]);
        let b = f(&[1], &[1, 1]);
        // 1/(1-q) + 1/(1+q) = 2/(1-q^2)
        assert_eq!(a.clone() + &b, f(&[2], &[1, 0, -1]));
        assert_eq!(a.clone() * &a.inv(), QFrac::one());
        assert_eq!(a.clone() - &a, QFrac::zero());
        assert_eq!(a.div(&b), f(&[1, 1], &[1, -1]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(QFrac::new(QPoly::one(), QPoly::zero()).is_err());
    }
}
