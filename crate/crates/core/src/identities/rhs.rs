//! Closed-form product formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::family::{CtValue, Family, IdentityCase, ScalarParams};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, multinomial, q_multinomial, q_pochhammer, BigRat, QFrac, QPoly, Ring};

/// Closed-form value of the case's constant term.
pub fn rhs(case: &IdentityCase) -> Result<CtValue> {
    let p = &case.params;
    match case.family {
        Family::Dyson | Family::Xin | Family::XinHr => Ok(rat_int(multinomial(p.vector_a()?)).into()),
        Family::QDyson => Ok(q_multinomial(p.vector_a()?)?.into()),
        Family::Morris | Family::Aomoto => Ok(aomoto_forrester_at_one(&p.scalars(case.family)?).into()),
        Family::QMorris | Family::QAomoto | Family::QForrester | Family::AomotoForrester => {
            q_aomoto_forrester_value(&p.scalars(case.family)?)
        }
        Family::Forrester => Ok(forrester(&p.scalars(case.family)?).into()),
        Family::KadellMain => Ok(kadell_main(p.vector_a()?, p.get_m()?)?.into()),
        Family::KadellCorollary => {
            let a = p.vector_a()?;
            let set = p.kadell_set(a.len())?;
            kadell_corollary(a, p.get_r()?, &set).map(Into::into)
        }
        Family::KadellSum => kadell_sum(p.vector_a()?, p.get_m()?).map(Into::into),
        Family::Sills => {
            let a = p.vector_a()?;
            sills(a, p.get_r()?, p.get_s()?).map(Into::into)
        }
    }
}

fn rat_int(n: BigInt) -> BigRat {
    BigRat::from_integer(n)
}

fn fact(n: u32) -> BigRat {
    rat_int(factorial(n as u64))
}

/// Shift of the `j`-th factor: `chi(j > n0)(j - n0)`.
fn forrester_shift(j: usize, n0: usize) -> u32 {
    if j > n0 {
        (j - n0) as u32
    } else {
        0
    }
}

/// Aomoto shift of the `j`-th factor: `chi(j >= n - m)`.
fn aomoto_shift(j: usize, n: usize, m: usize) -> u32 {
    u32::from(j + m >= n)
}

/// Product over `j = 0..n-1` of
/// `(q)_{a+b+kj+e_j+c_j} (q)_{kj+e_j+k} / ((q)_{a+kj+e_j+c_j} (q)_{b+kj+e_j} (q)_k)`
/// times `prod_{j=1}^{n-n0} (1 - q^{(k+1)j}) / (1 - q^{k+1})`,
/// with `e_j = chi(j > n0)(j - n0)` and `c_j = chi(j >= n - m)`.
pub fn q_aomoto_forrester(s: &ScalarParams) -> Result<QPoly> {
    let (num, den) = q_aomoto_forrester_parts(s);
    num.exact_div(&den)
}

/// [`q_aomoto_forrester`], falling back to a reduced fraction when the product
/// is not a polynomial (possible only for `n > m + n0`).
pub fn q_aomoto_forrester_value(s: &ScalarParams) -> Result<CtValue> {
    let (num, den) = q_aomoto_forrester_parts(s);
    match num.exact_div(&den) {
        Ok(p) => Ok(CtValue::Poly(p)),
        Err(Error::NonDivisible) => Ok(CtValue::Frac(QFrac::new(num, den)?)),
        Err(e) => Err(e),
    }
}

fn q_aomoto_forrester_parts(s: &ScalarParams) -> (QPoly, QPoly) {
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for j in 0..s.n {
        let kj = s.k * j as u32 + forrester_shift(j, s.n0);
        let c = aomoto_shift(j, s.n, s.m);
        num = num * q_pochhammer(s.a + s.b + kj + c) * q_pochhammer(kj + s.k);
        den = den * q_pochhammer(s.a + kj + c) * q_pochhammer(s.b + kj) * q_pochhammer(s.k);
    }
    for j in 1..=(s.n - s.n0) {
        num.mul_one_minus_q_pow((s.k as usize + 1) * j);
        den.mul_one_minus_q_pow(s.k as usize + 1);
    }
    (num, den)
}

/// The same product at `q = 1`, where `(1 - q^{(k+1)j}) / (1 - q^{k+1})` becomes `j`.
pub fn aomoto_forrester_at_one(s: &ScalarParams) -> BigRat {
    let mut acc = BigRat::one();
    for j in 0..s.n {
        let kj = s.k * j as u32 + forrester_shift(j, s.n0);
        let c = aomoto_shift(j, s.n, s.m);
        acc = acc * fact(s.a + s.b + kj + c) * fact(kj + s.k)
            / (fact(s.a + kj + c) * fact(s.b + kj) * fact(s.k));
    }
    for j in 1..=(s.n - s.n0) {
        acc *= BigRat::from_int(j as i64);
    }
    acc
}

/// Forrester's two-component formula, written independently of the q-product:
/// `M(n0; a, b, k) * prod_{j=0}^{n-n0-1} (j+1)(a+b+kn0+(k+1)j)!(kn0+(k+1)j+k)! / ((a+kn0+(k+1)j)!(b+kn0+(k+1)j)!k!)`.
pub fn forrester(s: &ScalarParams) -> BigRat {
    let morris = ScalarParams {
        n: s.n0,
        n0: s.n0,
        m: 0,
        ..*s
    };
    let mut acc = if s.n0 == 0 {
        BigRat::one()
    } else {
        aomoto_forrester_at_one(&morris)
    };
    let base = s.k * s.n0 as u32;
    for j in 0..(s.n - s.n0) as u32 {
        let t = base + (s.k + 1) * j;
        acc = acc * BigRat::from_int(j as i64 + 1) * fact(s.a + s.b + t) * fact(t + s.k)
            / (fact(s.a + t) * fact(s.b + t) * fact(s.k));
    }
    acc
}

/// `(1 - q^{1+|a|}) / (1 - q^{1 + sum_{v>m} a_v})` times the q-multinomial, by exact division.
pub fn kadell_main(a: &[u32], m: usize) -> Result<QPoly> {
    if m >= a.len() {
        return Err(Error::bad("kadell_main needs m < n"));
    }
    let total: u32 = a.iter().sum();
    let tail: u32 = a[m..].iter().sum();
    let mut num = q_multinomial(a)?;
    num.mul_one_minus_q_pow(1 + total as usize);
    num.exact_div(&QPoly::one_minus_q_pow(1 + tail as usize))
}

/// `(1 + |a|) / (1 + sum_{v not in M} a_v)` times the multinomial; `r` must lie outside `M`.
pub fn kadell_corollary(a: &[u32], r: usize, set: &[usize]) -> Result<BigRat> {
    let n = a.len();
    if r == 0 || r > n {
        return Err(Error::bad("r must lie in 1..=n"));
    }
    if set.contains(&r) {
        return Err(Error::bad("r must lie outside M"));
    }
    if set.len() >= n {
        return Err(Error::bad("need |M| < n"));
    }
    let total: u32 = a.iter().sum();
    let outside: u32 = (1..=n).filter(|v| !set.contains(v)).map(|v| a[v - 1]).sum();
    Ok(rat_int(multinomial(a)) * BigRat::from_int(1 + total as i64) / BigRat::from_int(1 + outside as i64))
}

/// `n * C(n-1, m) * (1 + |a|)` times the multinomial.
pub fn kadell_sum(a: &[u32], m: usize) -> Result<BigRat> {
    let n = a.len();
    if m >= n {
        return Err(Error::bad("kadell_sum needs m < n"));
    }
    let total: u32 = a.iter().sum();
    Ok(rat_int(
        BigInt::from(n) * binomial(n as u64 - 1, m as u64) * (1 + total) * multinomial(a),
    ))
}

/// `-a_s / (1 + |a| - a_s)` times the multinomial, for `r != s`.
pub fn sills(a: &[u32], r: usize, s: usize) -> Result<BigRat> {
    let n = a.len();
    if r == 0 || s == 0 || r > n || s > n || r == s {
        return Err(Error::bad("need 1 <= r != s <= n"));
    }
    let total: u32 = a.iter().sum();
    let a_s = a[s - 1] as i64;
    let value = rat_int(multinomial(a)) * BigRat::from_int(-a_s) / BigRat::from_int(1 + total as i64 - a_s);
    Ok(if value.is_zero() { BigRat::zero() } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::identities::family::{Method, Params};

    fn vector_case(family: Family, a: &[u32]) -> IdentityCase {
        IdentityCase::new(
            family,
            Params {
                a: Some(a.to_vec()),
                ..Default::default()
            },
            Method::RhsOnly,
        )
    }

    fn scalar(n: usize, n0: usize, m: usize, a: u32, b: u32, k: u32) -> ScalarParams {
        ScalarParams { n, n0, m, a, b, k }
    }

    #[test]
    fn examples() {
        assert_eq!(rhs(&vector_case(Family::Dyson, &[1, 2, 3])).unwrap(), CtValue::Rat(rat(60)));
        assert_eq!(aomoto_forrester_at_one(&scalar(2, 2, 0, 1, 1, 1)), rat(6));
        assert_eq!(kadell_main(&[1, 1], 1).unwrap(), QPoly::from_ints(&[1, 1, 1]));
        assert_eq!(sills(&[1, 1], 1, 2).unwrap(), rat(-1));
    }

    #[test]
    fn aomoto_forrester_full_block_is_q_morris() {
        for (a, b, k) in [(1, 1, 1), (2, 0, 1), (0, 2, 2)] {
            let af = q_aomoto_forrester(&scalar(3, 3, 0, a, b, k)).unwrap();
            let mut num = QPoly::one();
            let mut den = QPoly::one();
            for j in 0..3u32 {
                num = num * q_pochhammer(a + b + k * j) * q_pochhammer(k * j + k);
                den = den * q_pochhammer(a + k * j) * q_pochhammer(b + k * j) * q_pochhammer(k);
            }
            assert_eq!(af, num.exact_div(&den).unwrap());
        }
    }

    #[test]
    fn q_collapse_matches_plain() {
        for n in 1..=3 {
            for n0 in 0..=n {
                for m in 0..=n {
                    for (a, b, k) in [(0, 0, 0), (1, 2, 1), (2, 1, 0), (1, 1, 2)] {
                        let s = scalar(n, n0, m, a, b, k);
                        let v = q_aomoto_forrester_value(&s).unwrap();
                        if n <= m + n0 {
                            assert!(matches!(v, CtValue::Poly(_)), "{s:?}");
                        }
                        assert_eq!(v.at_one(), Some(aomoto_forrester_at_one(&s)), "{s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn forrester_display_matches_product() {
        for n in 1..=4 {
            for n0 in 0..=n {
                for (a, b, k) in [(0, 0, 0), (1, 2, 1), (2, 1, 0), (1, 1, 2), (0, 1, 1)] {
                    let s = scalar(n, n0, 0, a, b, k);
                    assert_eq!(forrester(&s), aomoto_forrester_at_one(&s), "{s:?}");
                }
            }
        }
    }

    #[test]
    fn sills_zero_when_a_s_zero() {
        assert_eq!(sills(&[2, 0, 1], 1, 2).unwrap(), rat(0));
        assert!(sills(&[1, 1], 1, 1).is_err());
    }
}
