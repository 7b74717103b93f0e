//! Integer and q-analogue combinatorial products.

use num_bigint::BigInt;
use num_traits::One;

use super::QPoly;
use crate::error::Result;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `|a|! / (a_1! ... a_n!)`.
pub fn multinomial(a: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0u64;
    for &ai in a {
        total += ai as u64;
        acc *= binomial(total, ai as u64);
    }
    acc
}

/// `(q)_k = (1 - q)(1 - q^2) ... (1 - q^k)`.
pub fn q_pochhammer(k: u32) -> QPoly {
    q_shifted_pochhammer(1, k)
}

/// `(q^a)_k = (1 - q^a)(1 - q^{a+1}) ... (1 - q^{a+k-1})`.
pub fn q_shifted_pochhammer(a: u32, k: u32) -> QPoly {
    let mut acc = QPoly::one();
    for i in 0..k {
        acc.mul_one_minus_q_pow((a + i) as usize);
        if acc.coeffs().is_empty() {
            break;
        }
    }
    acc
}

/// `[u, v]_q = (1 - q^u) ... (1 - q^v)`, the empty product when `v < u`.
pub fn q_range(u: u32, v: i64) -> QPoly {
    if v < u as i64 {
        return QPoly::one();
    }
    q_shifted_pochhammer(u, (v - u as i64 + 1) as u32)
}

/// Gaussian multinomial `(q)_{|a|} / ((q)_{a_1} ... (q)_{a_n})`.
pub fn q_multinomial(a: &[u32]) -> Result<QPoly> {
    let total: u32 = a.iter().sum();
    let den = a
        .iter()
        .fold(QPoly::one(), |acc, &ai| acc * q_pochhammer(ai));
    q_pochhammer(total).exact_div(&den)
}
