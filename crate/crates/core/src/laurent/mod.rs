//! Sparse multivariate Laurent polynomials over an exact scalar ring, and
//! products of linear factors that can be evaluated (or differentiated) at a
//! point without being expanded.

mod linear;

use std::fmt;

use rustc_hash::FxHashMap;
use serde_json::json;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactnum::{Field, Ring};

pub(crate) use linear::jet_from_values;
pub use linear::{LinearFactorProduct, LinearForm};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 12;

/// Exponent vector of a Laurent monomial. Entries past `nvars` are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponent([i16; MAX_VARS]);

impl Exponent {
    pub fn zero() -> Self {
        Exponent([0; MAX_VARS])
    }

    pub fn from_slice(exps: &[i32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::bad(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                exps.len()
            )));
        }
        let mut out = [0i16; MAX_VARS];
        for (slot, &e) in out.iter_mut().zip(exps) {
            *slot = i16::try_from(e).map_err(|_| Error::bad(format!("exponent {e} out of range")))?;
        }
        Ok(Exponent(out))
    }

    pub fn get(&self, v: usize) -> i32 {
        self.0[v] as i32
    }

    pub fn as_vec(&self, nvars: usize) -> Vec<i32> {
        self.0[..nvars].iter().map(|&e| e as i32).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    fn checked_add(&self, other: &Exponent, nvars: usize) -> Result<Exponent> {
        let mut out = self.0;
        for v in 0..nvars {
            out[v] = self.0[v]
                .checked_add(other.0[v])
                .ok_or_else(|| Error::bad("exponent overflow"))?;
        }
        Ok(Exponent(out))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

/// Sparse Laurent polynomial in `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C> {
    nvars: usize,
    terms: FxHashMap<Exponent, C>,
}

impl<C: Ring> LaurentPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        LaurentPoly {
            nvars,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = LaurentPoly::zero(nvars);
        p.add_term(Exponent::zero(), c);
        p
    }

    /// `c * x^exps`.
    pub fn monomial(nvars: usize, exps: &[i32], c: C) -> Result<Self> {
        if exps.len() != nvars {
            return Err(Error::bad("exponent vector length does not match variable count"));
        }
        let mut p = LaurentPoly::zero(nvars);
        p.add_term(Exponent::from_slice(exps)?, c);
        Ok(p)
    }

    /// `c * x_v`.
    pub fn variable(nvars: usize, v: usize, c: C) -> Self {
        let mut e = Exponent::zero();
        e.0[v] = 1;
        let mut p = LaurentPoly::zero(nvars);
        p.add_term(e, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    /// Terms sorted lexicographically by exponent vector.
    pub fn sorted_terms(&self) -> Vec<(Vec<i32>, &C)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.as_vec(self.nvars), c))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn coefficient(&self, exps: &[i32]) -> C {
        match Exponent::from_slice(exps) {
            Ok(e) if exps.len() == self.nvars => self.terms.get(&e).cloned().unwrap_or_else(C::zero),
            _ => C::zero(),
        }
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Exponent::zero()).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(*e, x.clone() * c);
        }
        out
    }

    /// Multiply by a monomial `x^exps`.
    pub fn shift(&self, exps: &[i32]) -> Result<Self> {
        let s = Exponent::from_slice(exps)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.checked_add(&s, self.nvars)?, c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self, budget: &Budget) -> Result<Self> {
        assert_eq!(self.nvars, other.nvars);
        mul_filtered(self, other, budget, |_| true)
    }

    pub fn pow(&self, e: u32, budget: &Budget) -> Result<Self> {
        let mut acc = LaurentPoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self, budget)?;
        }
        Ok(acc)
    }

    /// Per-variable (min, max) exponents over the stored terms.
    pub fn exponent_ranges(&self) -> Vec<(i32, i32)> {
        let mut out = vec![(0, 0); self.nvars];
        let mut first = true;
        for e in self.terms.keys() {
            for (v, slot) in out.iter_mut().enumerate() {
                let x = e.get(v);
                if first {
                    *slot = (x, x);
                } else {
                    slot.0 = slot.0.min(x);
                    slot.1 = slot.1.max(x);
                }
            }
            first = false;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(e, c)| json!({ "exponents": e, "coeff": c.to_json() }))
                .collect(),
        )
    }
}

impl<C: Field> LaurentPoly<C> {
    /// Value at a point with nonzero coordinates (negative powers are inverted).
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, x) in point.iter().enumerate() {
                let k = e.get(v);
                if k == 0 {
                    continue;
                }
                let base = if k < 0 { x.inv() } else { x.clone() };
                for _ in 0..k.unsigned_abs() {
                    term = term * &base;
                }
            }
            acc += &term;
        }
        acc
    }
}

impl<C: Ring + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(v, &k)| if k == 1 { format!("x{v}") } else { format!("x{v}^{k}") })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Ring> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.sorted_terms().into_iter().map(|(e, c)| (e, c.clone())))
            .finish()
    }
}

fn mul_filtered<C: Ring>(
    a: &LaurentPoly<C>,
    b: &LaurentPoly<C>,
    budget: &Budget,
    keep: impl Fn(&Exponent) -> bool,
) -> Result<LaurentPoly<C>> {
    let nvars = a.nvars;
    let mut out: FxHashMap<Exponent, C> = FxHashMap::default();
    out.reserve(a.terms.len().saturating_mul(b.terms.len().min(4)));
    let mut ops = 0usize;
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let e = ea.checked_add(eb, nvars)?;
            if !keep(&e) {
                continue;
            }
            let prod = ca.clone() * cb;
            match out.entry(e) {
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += &prod;
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(prod);
                }
            }
        }
        ops += b.terms.len();
        if ops >= 1 << 14 {
            ops = 0;
            budget.check_deadline()?;
            budget.check_terms(out.len())?;
        }
    }
    out.retain(|_, c| !c.is_zero());
    budget.check_terms(out.len())?;
    Ok(LaurentPoly { nvars, terms: out })
}

/// Growth statistics of a pruned product expansion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExpansionStats {
    /// Largest number of stored terms at any intermediate step.
    pub peak_terms: usize,
    pub factors: usize,
}

/// Constant term of `factors[0] * factors[1] * ...`.
///
/// Factors are multiplied left to right. After each step, a term is dropped
/// when the exponents still reachable through the remaining factors cannot
/// bring it back to the zero vector; every term that can reach the constant
/// term is kept, so the result is exact.
pub fn product_constant_term<C: Ring>(
    nvars: usize,
    factors: &[LaurentPoly<C>],
    budget: &Budget,
) -> Result<(C, ExpansionStats)> {
    let n = factors.len();
    // suffix[i][v] = reachable (min, max) shift in x_v from factors i..n
    let mut suffix = vec![vec![(0i32, 0i32); nvars]; n + 1];
    for i in (0..n).rev() {
        assert_eq!(factors[i].nvars, nvars);
        if factors[i].is_zero() {
            return Ok((C::zero(), ExpansionStats { peak_terms: 0, factors: n }));
        }
        let r = factors[i].exponent_ranges();
        for v in 0..nvars {
            suffix[i][v] = (suffix[i + 1][v].0 + r[v].0, suffix[i + 1][v].1 + r[v].1);
        }
    }
    let mut acc = LaurentPoly::one(nvars);
    let mut stats = ExpansionStats { peak_terms: 1, factors: n };
    for (i, f) in factors.iter().enumerate() {
        let rest = &suffix[i + 1];
        acc = mul_filtered(&acc, f, budget, |e| {
            (0..nvars).all(|v| {
                let x = e.get(v);
                x + rest[v].0 <= 0 && x + rest[v].1 >= 0
            })
        })?;
        stats.peak_terms = stats.peak_terms.max(acc.term_count());
        if acc.is_zero() {
            break;
        }
    }
    Ok((acc.constant_term(), stats))
}

/// Full product of the factors, without pruning.
pub fn product<C: Ring>(nvars: usize, factors: &[LaurentPoly<C>], budget: &Budget) -> Result<LaurentPoly<C>> {
    let mut acc = LaurentPoly::one(nvars);
    for f in factors {
        acc = acc.mul(f, budget)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, BigRat, QPoly};
    use num_traits::One;

    fn ratio(nvars: usize, num: usize, den: usize) -> LaurentPoly<BigRat> {
        // 1 - x_num / x_den
        let mut e = vec![0; nvars];
        e[num] += 1;
        e[den] -= 1;
        LaurentPoly::one(nvars).sub(&LaurentPoly::monomial(nvars, &e, rat(1)).unwrap())
    }

    #[test]
    fn coefficient_lookup() {
        let x1 = LaurentPoly::variable(2, 0, rat(1));
        let x2 = LaurentPoly::variable(2, 1, rat(1));
        let diff = x2.sub(&x1);
        assert_eq!(diff.coefficient(&[0, 1]), rat(1));
        let sq = x1.add(&x2).pow(2, &Budget::default()).unwrap();
        assert_eq!(sq.coefficient(&[1, 1]), rat(2));
        assert_eq!(LaurentPoly::<BigRat>::one(2).coefficient(&[1, 0]), rat(0));
    }

    #[test]
    fn constant_terms() {
        let b = Budget::default();
        let p = ratio(2, 0, 1).mul(&ratio(2, 1, 0), &b).unwrap();
        assert_eq!(p.constant_term(), rat(2));
        assert_eq!(LaurentPoly::<BigRat>::one(3).constant_term(), rat(1));
        let m = LaurentPoly::monomial(2, &[1, -1], rat(1)).unwrap();
        assert_eq!(m.constant_term(), rat(0));
    }

    #[test]
    fn shift_round_trip_keeps_constant_term() {
        let b = Budget::default();
        let p = product(3, &[ratio(3, 0, 1), ratio(3, 1, 2), ratio(3, 2, 0), ratio(3, 1, 0)], &b).unwrap();
        let q = p.shift(&[0, 1, 0]).unwrap().shift(&[0, -1, 0]).unwrap();
        assert_eq!(q.constant_term(), p.constant_term());
    }

    #[test]
    fn pruned_constant_term_matches_full_expansion() {
        let b = Budget::default();
        let factors = vec![
            ratio(3, 0, 1),
            ratio(3, 1, 0),
            ratio(3, 0, 2),
            ratio(3, 2, 0),
            ratio(3, 2, 0),
            ratio(3, 1, 2),
            ratio(3, 2, 1),
            ratio(3, 2, 1),
        ];
        let full = product(3, &factors, &b).unwrap();
        let (ct, stats) = product_constant_term(3, &factors, &b).unwrap();
        assert_eq!(ct, full.constant_term());
        assert!(stats.peak_terms <= full.term_count().max(1) * 2);
    }

    #[test]
    fn term_budget_is_enforced() {
        let b = Budget::default().with_max_terms(10);
        let x = LaurentPoly::variable(2, 0, rat(1)).add(&LaurentPoly::variable(2, 1, rat(1)));
        let err = x.pow(20, &b).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { .. }));
    }

    #[test]
    fn q_coefficients_and_serialization() {
        let b = Budget::default();
        // (1 - x1/x2)(1 - q x2/x1)
        let f1 = LaurentPoly::<QPoly>::one(2)
            .sub(&LaurentPoly::monomial(2, &[1, -1], QPoly::one()).unwrap());
        let f2 = LaurentPoly::<QPoly>::one(2)
            .sub(&LaurentPoly::monomial(2, &[-1, 1], QPoly::q_power(1)).unwrap());
        let p = f1.mul(&f2, &b).unwrap();
        assert_eq!(p.constant_term(), QPoly::from_ints(&[1, 1]));
        let js = p.to_json();
        assert_eq!(js[0]["exponents"], serde_json::json!([-1, 1]));
        assert_eq!(js[0]["coeff"], serde_json::json!(["0", "-1"]));
    }
}
