use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BigRat, HasQ, Ring};
use crate::error::{Error, Result};

/// Dense polynomial in `q` with integer coefficients, lowest degree first.
///
/// The highest stored coefficient is never zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::new(vec![c])
    }

    /// `c * q^deg`.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        QPoly { coeffs }
    }

    pub fn q_power(deg: usize) -> Self {
        QPoly::monomial(BigInt::one(), deg)
    }

    /// `1 - q^t`.
    pub fn one_minus_q_pow(t: usize) -> Self {
        if t == 0 {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); t + 1];
        coeffs[0] = BigInt::one();
        coeffs[t] = -BigInt::one();
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Multiply by `q^t`.
    pub fn shift(&self, t: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); t];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// In-place multiplication by `1 - q^t`.
    pub fn mul_one_minus_q_pow(&mut self, t: usize) {
        if t == 0 {
            self.coeffs.clear();
            return;
        }
        if self.is_zero() {
            return;
        }
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + t, BigInt::zero());
        for j in (t..old_len + t).rev() {
            let sub = self.coeffs[j - t].clone();
            self.coeffs[j] -= sub;
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = QPoly::new(trimmed);
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `q = 1`, the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigRat {
        BigRat::from_integer(self.coeffs.iter().sum())
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRat::from_integer(c.clone());
        }
        acc
    }

    /// Exact quotient `self / den`; fails unless `den` divides `self` in `Z[q]`.
    pub fn exact_div(&self, den: &QPoly) -> Result<QPoly> {
        let (quot, rem) = self.div_rem_integral(den)?;
        if !rem.is_zero() {
            return Err(Error::NonDivisible);
        }
        Ok(quot)
    }

    /// Long division requiring every quotient coefficient to be an integer.
    fn div_rem_integral(&self, den: &QPoly) -> Result<(QPoly, QPoly)> {
        assert!(!den.is_zero(), "division by the zero polynomial");
        let dd = den.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let lc = den.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NonDivisible);
            }
            for (j, dc) in den.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let c = self.content();
        if c.is_one() {
            return self.clone();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    /// Pseudo-remainder: `lc(other)^(deg self - deg other + 1) * self mod other`.
    pub fn pseudo_rem(&self, other: &QPoly) -> QPoly {
        assert!(!other.is_zero());
        let d = other.coeffs.len() - 1;
        let lc = other.leading().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > d && !rem.is_empty() {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - d;
            for c in rem.iter_mut() {
                *c *= lc;
            }
            for (j, oc) in other.coeffs.iter().enumerate() {
                rem[shift + j] -= &top * oc;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        QPoly::new(rem)
    }

    /// Greatest common divisor in `Z[q]`, normalized to a positive leading
    /// coefficient. Contents and primitive parts are handled separately.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let content = self.content().gcd(&other.content());
        if self.is_constant() || other.is_constant() {
            return QPoly::constant(content);
        }
        let (mut a, mut b) = if self.coeffs.len() >= other.coeffs.len() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.scale(&content).normalize_sign();
            }
            if r.is_constant() {
                return QPoly::constant(content);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// `self` or `-self`, whichever has a positive leading coefficient.
    pub fn normalize_sign(&self) -> QPoly {
        match self.leading() {
            Some(lc) if lc.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Option<QPoly> {
        let coeffs = items
            .iter()
            .map(|s| s.as_ref().trim().parse::<BigInt>().ok())
            .collect::<Option<Vec<_>>>()?;
        Some(QPoly::new(coeffs))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", self)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        QPoly::from_strings(&items)
            .ok_or_else(|| serde::de::Error::custom("coefficients must be decimal integers"))
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly {
            coeffs: vec![BigInt::one()],
        }
    }
}

impl<'a> AddAssign<&'a QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &'a QPoly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<'a> SubAssign<&'a QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &'a QPoly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl AddAssign for QPoly {
    fn add_assign(&mut self, rhs: QPoly) {
        *self += &rhs;
    }
}

impl SubAssign for QPoly {
    fn sub_assign(&mut self, rhs: QPoly) {
        *self -= &rhs;
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl<'a> Add<&'a QPoly> for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: &'a QPoly) -> QPoly {
        self += rhs;
        self
    }
}

impl<'a> Sub<&'a QPoly> for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: &'a QPoly) -> QPoly {
        self -= rhs;
        self
    }
}

impl<'a> Mul<&'a QPoly> for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &'a QPoly) -> QPoly {
        &self * rhs
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &'a QPoly) -> QPoly {
        self.clone() + rhs
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &'a QPoly) -> QPoly {
        self.clone() - rhs
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        self + &rhs
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        self - &rhs
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(mut self) -> QPoly {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Ring for QPoly {
    fn from_int(n: i64) -> Self {
        QPoly::constant(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        QPoly::constant(n.clone())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_strings()
                .into_iter()
                .map(serde_json::Value::String)
                .collect(),
        )
    }
}

impl HasQ for QPoly {
    fn q_pow(t: usize) -> Self {
        QPoly::q_power(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn product_of_conjugates() {
        assert_eq!(p(&[1, -1]) * p(&[1, 1]), p(&[1, 0, -1]));
    }

    #[test]
    fn annihilator_and_identity() {
        let a = p(&[3, -2, 7]);
        assert!((a.clone() * QPoly::zero()).is_zero());
        assert_eq!(a.clone() * QPoly::one(), a);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let a = p(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(p(&[0, 0]), QPoly::zero());
        assert_eq!(p(&[1, 1]) - p(&[0, 1]), QPoly::one());
    }

    #[test]
    fn exact_division_examples() {
        let num = p(&[1, -1]) * p(&[1, 0, -1]);
        assert_eq!(num.exact_div(&p(&[1, -1])).unwrap(), p(&[1, 0, -1]));
        let a = p(&[5, 0, 2]);
        assert_eq!(a.exact_div(&QPoly::one()).unwrap(), a);
        assert_eq!(
            p(&[1, 0, -1]).exact_div(&p(&[1, 1, 1])),
            Err(Error::NonDivisible)
        );
    }

    #[test]
    fn non_integral_quotient_is_rejected() {
        // (1 + q) / (2 + 2q) is 1/2, not an integer polynomial
        assert_eq!(p(&[1, 1]).exact_div(&p(&[2, 2])), Err(Error::NonDivisible));
    }

    #[test]
    fn gcd_examples() {
        let a = p(&[1, -1]) * p(&[1, 1]) * p(&[2]);
        let b = p(&[1, -1]) * p(&[1, 1, 1]) * p(&[4]);
        // gcd(2(1-q)(1+q), 4(1-q)(1+q+q^2)) = 2(q-1) normalized
        assert_eq!(a.gcd(&b), p(&[-2, 2]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, 0, 1])), QPoly::one());
        assert_eq!(QPoly::zero().gcd(&p(&[-3, -6])), p(&[3, 6]));
    }

    #[test]
    fn mul_one_minus_q_pow_matches_multiplication() {
        let mut a = p(&[2, -1, 5]);
        let expected = a.clone() * QPoly::one_minus_q_pow(3);
        a.mul_one_minus_q_pow(3);
        assert_eq!(a, expected);
    }

    #[test]
    fn display_and_serialization() {
        assert_eq!(p(&[1, -1, 0, 3]).to_string(), "1 - q + 3*q^3");
        assert_eq!(
            serde_json::to_string(&p(&[1, -1])).unwrap(),
            r#"["1","-1"]"#
        );
        let back: QPoly = serde_json::from_str(r#"["0","2","-7"]"#).unwrap();
        assert_eq!(back, p(&[0, 2, -7]));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[1, 1]).eval_at_one(), BigRat::from_int(2));
        assert_eq!(QPoly::zero().eval_at_one(), BigRat::from_int(0));
        assert_eq!(p(&[1, -1]).eval_at_one(), BigRat::from_int(0));
        assert_eq!(p(&[1, 2, 3]).eval(&BigRat::from_int(2)), BigRat::from_int(17));
    }
}
