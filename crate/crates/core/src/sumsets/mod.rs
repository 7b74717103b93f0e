//! Restricted sumsets over prime fields and the rationals, lower bounds of
//! Erdos-Heilbronn type, and the leading coefficients of
//! `F_0 = (x_1 + ... + x_n)^N prod_{i<j} (x_j - x_i)^{s_ij}` that certify them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Map, Value as Json};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, multinomial, BigRat, Ring};
use crate::interpolation::{coeff_lagrange, NodeMultiset};
use crate::laurent::{LinearFactorProduct, LinearForm};

/// `n` subsets of `F_p` (or of `Q` when `p = 0`) and forbidden differences
/// `S_ij` for `i < j`: the restricted sumset collects `a_1 + ... + a_n` with
/// `a_j - a_i` outside `S_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumsetInstance {
    p: u64,
    sets: Vec<Vec<i64>>,
    /// Keyed by 0-based `(i, j)` with `i < j`.
    forbidden: BTreeMap<(usize, usize), BTreeSet<i64>>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl SumsetInstance {
    /// Reduces every element mod `p` and removes duplicates.
    pub fn new(p: u64, sets: Vec<Vec<i64>>, forbidden: BTreeMap<(usize, usize), Vec<i64>>) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(Error::bad(format!("modulus {p} is not prime")));
        }
        if p > i64::MAX as u64 {
            return Err(Error::bad("modulus too large"));
        }
        if sets.is_empty() || sets.iter().any(Vec::is_empty) {
            return Err(Error::bad("need at least one set, all nonempty"));
        }
        let n = sets.len();
        let red = |x: i64| if p == 0 { x } else { x.rem_euclid(p as i64) };
        let sets = sets
            .into_iter()
            .map(|s| s.into_iter().map(red).collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        let mut out = BTreeMap::new();
        for ((i, j), diffs) in forbidden {
            if i >= j || j >= n {
                return Err(Error::bad(format!("forbidden-difference key ({}, {}) needs 1 <= i < j <= n", i + 1, j + 1)));
            }
            out.insert((i, j), diffs.into_iter().map(red).collect());
        }
        Ok(SumsetInstance { p, sets, forbidden: out })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<i64>] {
        &self.sets
    }

    pub fn forbidden(&self, i: usize, j: usize) -> Option<&BTreeSet<i64>> {
        self.forbidden.get(&(i, j))
    }

    /// Largest `|S_ij|` over all pairs.
    pub fn max_forbidden(&self) -> usize {
        self.forbidden.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    fn reduce(&self, x: i128) -> i64 {
        if self.p == 0 {
            x as i64
        } else {
            x.rem_euclid(self.p as i128) as i64
        }
    }

    /// JSON form `{"p": p, "A": [[..]], "S": {"i,j": [..]}}` with 1-based pair keys.
    pub fn to_json(&self) -> Json {
        let s: Map<String, Json> = self
            .forbidden
            .iter()
            .map(|(&(i, j), d)| (format!("{},{}", i + 1, j + 1), json!(d)))
            .collect();
        json!({"p": self.p, "A": self.sets, "S": s})
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let p = v.get("p").map_or(Some(0), Json::as_u64).ok_or_else(|| Error::bad("'p' must be a nonnegative integer"))?;
        let ints = |x: &Json, what: &str| -> Result<Vec<i64>> {
            x.as_array()
                .ok_or_else(|| Error::bad(format!("{what} must be a list")))?
                .iter()
                .map(|e| e.as_i64().ok_or_else(|| Error::bad(format!("{what} must hold integers"))))
                .collect()
        };
        let sets = v
            .get("A")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::bad("instance needs a list 'A'"))?
            .iter()
            .map(|s| ints(s, "each A_i"))
            .collect::<Result<Vec<_>>>()?;
        let mut forbidden = BTreeMap::new();
        if let Some(s) = v.get("S") {
            let obj = s.as_object().ok_or_else(|| Error::bad("'S' must be an object"))?;
            for (key, diffs) in obj {
                let (i, j) = key
                    .split_once(',')
                    .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)))
                    .filter(|&(i, _)| i >= 1)
                    .ok_or_else(|| Error::bad(format!("bad key '{key}' in 'S', expected \"i,j\"")))?;
                forbidden.insert((i - 1, j.saturating_sub(1)), ints(diffs, "each S_ij")?);
            }
        }
        SumsetInstance::new(p, sets, forbidden)
    }
}

/// All sums `a_1 + ... + a_n` with `a_i in A_i` and `a_j - a_i` outside `S_ij`.
pub fn restricted_sumset(inst: &SumsetInstance, budget: &Budget) -> Result<BTreeSet<i64>> {
    let total = inst
        .sets
        .iter()
        .try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64))
        .unwrap_or(u64::MAX);
    budget.check_points(total)?;
    let mut out = BTreeSet::new();
    let mut chosen = Vec::with_capacity(inst.n());
    enumerate(inst, 0, 0, &mut chosen, &mut out, budget)?;
    Ok(out)
}

fn enumerate(
    inst: &SumsetInstance,
    depth: usize,
    sum: i128,
    chosen: &mut Vec<i64>,
    out: &mut BTreeSet<i64>,
    budget: &Budget,
) -> Result<()> {
    if depth == inst.n() {
        out.insert(inst.reduce(sum));
        return Ok(());
    }
    if depth <= 1 {
        budget.check_deadline()?;
    }
    for &x in &inst.sets[depth] {
        let ok = chosen.iter().enumerate().all(|(i, &y)| {
            inst.forbidden(i, depth)
                .is_none_or(|s| !s.contains(&inst.reduce(x as i128 - y as i128)))
        });
        if ok {
            chosen.push(x);
            enumerate(inst, depth + 1, sum + x as i128, chosen, out, budget)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// `n(k - 1) - n(n - 1) ceil(s/2) + 1`.
pub fn hou_sun_bound(n: u64, k: u64, s: u64) -> i64 {
    let half = s.div_ceil(2) as i64;
    let (n, k) = (n as i64, k as i64);
    n * (k - 1) - n * (n - 1) * half + 1
}

/// Smallest admissible characteristic is one more than
/// `max(n ceil(s/2), n(k - 1) - n(n - 1) ceil(s/2))`.
pub fn characteristic_threshold(n: u64, k: u64, s: u64) -> i64 {
    let half = s.div_ceil(2) as i64;
    let (n, k) = (n as i64, k as i64);
    (n * half).max(n * (k - 1) - n * (n - 1) * half)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub bound: i64,
    pub size: usize,
    /// `size >= bound`.
    pub meets: bool,
    /// `size == bound`.
    pub achieved: bool,
    /// Whether `p = 0` or `p` exceeds [`characteristic_threshold`]; when it does
    /// not, the bound is not guaranteed and the report carries a warning.
    pub characteristic_ok: bool,
    pub warnings: Vec<String>,
}

impl BoundReport {
    pub fn to_json(&self) -> Json {
        json!({
            "n": self.n,
            "k": self.k,
            "s": self.s,
            "bound": self.bound,
            "size": self.size,
            "meets": self.meets,
            "achieved": self.achieved,
            "characteristic_ok": self.characteristic_ok,
            "warnings": self.warnings,
        })
    }
}

/// Enumerates the sumset and compares its size with [`hou_sun_bound`], taking
/// `s` as the largest `|S_ij|`. All `A_i` must have the same size `k`.
pub fn bound_check(inst: &SumsetInstance, budget: &Budget) -> Result<(BTreeSet<i64>, BoundReport)> {
    let n = inst.n();
    let k = inst.sets[0].len();
    if inst.sets.iter().any(|s| s.len() != k) {
        return Err(Error::bad("bound check needs all A_i of the same size"));
    }
    let s = inst.max_forbidden();
    let bound = hou_sun_bound(n as u64, k as u64, s as u64);
    let threshold = characteristic_threshold(n as u64, k as u64, s as u64);
    let characteristic_ok = inst.p == 0 || inst.p as i64 > threshold;
    let mut warnings = Vec::new();
    if !characteristic_ok {
        warnings.push(format!(
            "characteristic {} does not exceed {threshold}; the bound is not guaranteed",
            inst.p
        ));
    }
    let sumset = restricted_sumset(inst, budget)?;
    let size = sumset.len();
    let report = BoundReport {
        n,
        k,
        s,
        bound,
        size,
        meets: size as i64 >= bound,
        achieved: size as i64 == bound,
        characteristic_ok,
        warnings,
    };
    Ok((sumset, report))
}

/// `A_i = {0, ..., k-1}` and `S_ij = {-t+1, ..., t-1}` for all pairs, over `F_p`.
pub fn tightness_instance(n: usize, k: usize, t: usize, p: u64) -> Result<SumsetInstance> {
    let set: Vec<i64> = (0..k as i64).collect();
    let diffs: Vec<i64> = (1 - t as i64..t as i64).collect();
    let mut forbidden = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            forbidden.insert((i, j), diffs.clone());
        }
    }
    SumsetInstance::new(p, vec![set; n], forbidden)
}

/// Exponents `s_ij` for `i < j` (0-based, entries with `i >= j` ignored).
pub type PairExponents = Vec<Vec<u32>>;

/// `N = sum d_i - sum_{i<j} s_ij`.
pub fn f0_excess(d: &[u32], s: &PairExponents) -> i64 {
    let n = d.len();
    let pairs: i64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| s[i][j] as i64).sum();
    d.iter().map(|&x| x as i64).sum::<i64>() - pairs
}

/// `(x_1 + ... + x_n)^N prod_{i<j} (x_j - x_i)^{s_ij}` as a product of linear forms.
pub fn f0_polynomial(d: &[u32], s: &PairExponents) -> Result<LinearFactorProduct<BigRat>> {
    let n = d.len();
    if s.len() != n || s.iter().any(|row| row.len() != n) {
        return Err(Error::bad("s must be an n x n table"));
    }
    let big_n = f0_excess(d, s);
    if big_n < 0 {
        return Err(Error::bad(format!("N = sum d - sum s = {big_n} is negative")));
    }
    let mut fp = LinearFactorProduct::new(n);
    let sum = LinearForm::new((0..n).map(|v| (v, BigRat::from_int(1))).collect(), BigRat::from_int(0));
    for _ in 0..big_n {
        fp.push(sum.clone())?;
    }
    for i in 0..n {
        for j in i + 1..n {
            for _ in 0..s[i][j] {
                fp.push(LinearForm::scaled_difference(j, i, BigRat::from_int(1)))?;
            }
        }
    }
    Ok(fp)
}

/// Coefficient of `prod x_i^{d_i}` in `F_0`, by Lagrange interpolation on `{0, ..., d_i}`.
pub fn f0_coefficient(d: &[u32], s: &PairExponents, budget: &Budget) -> Result<BigInt> {
    let fp = f0_polynomial(d, s)?;
    let nodes = d
        .iter()
        .map(|&di| NodeMultiset::set((0..=di as i64).map(BigRat::from_int)))
        .collect::<Result<Vec<_>>>()?;
    let (c, _) = coeff_lagrange(&fp, d, &nodes, budget)?;
    Ok(c.to_integer())
}

/// The same coefficient read off the full expansion.
pub fn f0_coefficient_expanded(d: &[u32], s: &PairExponents, budget: &Budget) -> Result<BigInt> {
    let fp = f0_polynomial(d, s)?;
    let exps: Vec<i32> = d.iter().map(|&x| x as i32).collect();
    Ok(fp.expand(budget)?.coefficient(&exps).to_integer())
}

/// Parameter families with a product formula for the top coefficient of `F_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// `d_i = k - 1`, `s_ij = 2t`.
    HouSun { n: usize, k: u32, t: u32 },
    /// `d_i = k - i`, `s_ij = 2t - 1`.
    SunYeh { n: usize, k: u32, t: u32 },
    /// Arbitrary `d`, `s_ij = 1`.
    Anr { d: Vec<u32> },
    /// `d_i = n a_i`, `s_ij = a_i + a_j`.
    Xin { a: Vec<u32> },
}

fn pair_table(n: usize, f: impl Fn(usize, usize) -> u32) -> PairExponents {
    (0..n).map(|i| (0..n).map(|j| if i < j { f(i, j) } else { 0 }).collect()).collect()
}

fn sign(negative: bool) -> BigInt {
    if negative {
        BigInt::from(-1)
    } else {
        BigInt::from(1)
    }
}

impl ClosedForm {
    pub fn name(&self) -> &'static str {
        match self {
            ClosedForm::HouSun { .. } => "hou_sun",
            ClosedForm::SunYeh { .. } => "sun_yeh",
            ClosedForm::Anr { .. } => "anr",
            ClosedForm::Xin { .. } => "xin",
        }
    }

    /// The degrees `d` and pair exponents `s` the formula describes.
    pub fn data(&self) -> Result<(Vec<u32>, PairExponents)> {
        match self {
            ClosedForm::HouSun { n, k, t } => {
                if *k == 0 {
                    return Err(Error::bad("hou_sun needs k >= 1"));
                }
                Ok((vec![k - 1; *n], pair_table(*n, |_, _| 2 * t)))
            }
            ClosedForm::SunYeh { n, k, t } => {
                if (*k as usize) < *n || *t == 0 {
                    return Err(Error::bad("sun_yeh needs k >= n and t >= 1"));
                }
                Ok(((1..=*n as u32).map(|i| k - i).collect(), pair_table(*n, |_, _| 2 * t - 1)))
            }
            ClosedForm::Anr { d } => Ok((d.clone(), pair_table(d.len(), |_, _| 1))),
            ClosedForm::Xin { a } => {
                let n = a.len() as u32;
                Ok((a.iter().map(|&x| n * x).collect(), pair_table(a.len(), |i, j| a[i] + a[j])))
            }
        }
    }

    /// Whether the formula's hypotheses hold: `N >= 0`, and for the first two
    /// kinds `k - 1 >= (n - 1) t`.
    pub fn admissible(&self) -> bool {
        let Ok((d, s)) = self.data() else {
            return false;
        };
        if f0_excess(&d, &s) < 0 {
            return false;
        }
        match self {
            ClosedForm::HouSun { n, k, t } | ClosedForm::SunYeh { n, k, t } => {
                k - 1 >= (*n as u32).saturating_sub(1) * t
            }
            _ => true,
        }
    }

    /// The product formula.
    pub fn value(&self) -> Result<BigInt> {
        if !self.admissible() {
            return Err(Error::bad(format!("{} parameters outside the admissible range", self.name())));
        }
        let fact = |x: u32| factorial(x as u64);
        match self {
            ClosedForm::HouSun { n, k, t } | ClosedForm::SunYeh { n, k, t } => {
                let (n32, k, t) = (*n as u32, *k, *t);
                let big_n = n32 * (k - 1) - n32 * (n32 - 1) * t;
                let pairs = binomial(*n as u64, 2) * t;
                let mut num = fact(big_n) * sign(pairs.is_odd());
                let mut den = fact(t).pow(n32);
                if matches!(self, ClosedForm::SunYeh { .. }) {
                    den *= fact(n32);
                }
                for i in 1..=n32 {
                    num *= fact(i * t);
                    den *= fact(k - 1 - (i - 1) * t);
                }
                exact_quotient(num, den)
            }
            ClosedForm::Anr { d } => {
                let n = d.len();
                let big_n: u32 = d.iter().sum::<u32>() - (n * n.saturating_sub(1) / 2) as u32;
                let mut num = fact(big_n);
                for i in 0..n {
                    for j in i + 1..n {
                        num *= BigInt::from(d[j] as i64 - d[i] as i64);
                    }
                }
                let den = d.iter().fold(BigInt::from(1), |acc, &x| acc * fact(x));
                exact_quotient(num, den)
            }
            ClosedForm::Xin { a } => {
                let n = a.len();
                let exponent: u32 = (0..n).map(|i| a[i] * (n - 1 - i) as u32).sum();
                Ok(sign(exponent % 2 == 1) * multinomial(a))
            }
        }
    }
}

fn exact_quotient(num: BigInt, den: BigInt) -> Result<BigInt> {
    if (&num % &den).is_zero() {
        Ok(num / den)
    } else {
        Err(Error::NonDivisible)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(p: u64, sets: Vec<Vec<i64>>, s: &[((usize, usize), Vec<i64>)]) -> SumsetInstance {
        SumsetInstance::new(p, sets, s.iter().cloned().collect()).unwrap()
    }

    #[test]
    fn sumset_examples() {
        let b = Budget::default();
        let i = inst(7, vec![vec![0, 1, 2]; 2], &[((0, 1), vec![0])]);
        assert_eq!(restricted_sumset(&i, &b).unwrap(), BTreeSet::from([1, 2, 3]));
        let i = inst(7, vec![vec![0, 1, 2]; 2], &[]);
        assert_eq!(restricted_sumset(&i, &b).unwrap(), BTreeSet::from([0, 1, 2, 3, 4]));
        let i = inst(5, vec![vec![3], vec![4]], &[]);
        assert_eq!(restricted_sumset(&i, &b).unwrap(), BTreeSet::from([2]));
    }

    #[test]
    fn sumset_budget() {
        let i = inst(0, vec![(0..10).collect(); 3], &[]);
        let err = restricted_sumset(&i, &Budget::default().with_max_points(100)).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn bounds() {
        assert_eq!(hou_sun_bound(2, 3, 1), 3);
        assert_eq!(hou_sun_bound(3, 4, 0), 10);
        assert!(hou_sun_bound(3, 2, 2) <= 0);
        let (_, r) = bound_check(&inst(7, vec![vec![0, 1, 2]; 2], &[((0, 1), vec![0])]), &Budget::default()).unwrap();
        assert_eq!((r.bound, r.size, r.achieved), (3, 3, true));
    }

    #[test]
    fn cauchy_davenport_shape() {
        let i = inst(11, vec![vec![0, 3, 5], vec![1, 2, 9]], &[]);
        let (_, r) = bound_check(&i, &Budget::default()).unwrap();
        assert_eq!(r.bound, 5);
        assert!(r.meets);
    }

    #[test]
    fn low_characteristic_warns() {
        let (_, r) = bound_check(&tightness_instance(2, 3, 1, 2).unwrap(), &Budget::default()).unwrap();
        assert!(!r.characteristic_ok);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn f0_examples() {
        let b = Budget::default();
        let s2 = |x: u32| vec![vec![0, x], vec![0, 0]];
        assert_eq!(f0_coefficient(&[1, 1], &s2(2), &b).unwrap(), BigInt::from(-2));
        assert_eq!(f0_coefficient(&[1, 2], &s2(1), &b).unwrap(), BigInt::from(1));
        assert_eq!(f0_coefficient(&[2, 1, 1], &pair_table(3, |_, _| 0), &b).unwrap(), BigInt::from(12));
        assert_eq!(f0_coefficient_expanded(&[1, 1], &s2(2), &b).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ClosedForm::HouSun { n: 2, k: 2, t: 1 }.value().unwrap(), BigInt::from(-2));
        assert_eq!(ClosedForm::Anr { d: vec![1, 2] }.value().unwrap(), BigInt::from(1));
        assert_eq!(ClosedForm::Anr { d: vec![2, 2, 3] }.value().unwrap(), BigInt::from(0));
        assert_eq!(ClosedForm::Xin { a: vec![1, 1] }.value().unwrap(), BigInt::from(-2));
    }

    #[test]
    fn json_round_trip() {
        let i = tightness_instance(3, 3, 1, 11).unwrap();
        assert_eq!(SumsetInstance::from_json(&i.to_json()).unwrap(), i);
        let v = json!({"p": 7, "A": [[0, 8], [1]], "S": {"1,2": [-1]}});
        let i = SumsetInstance::from_json(&v).unwrap();
        assert_eq!(i.sets(), &[vec![0, 1], vec![1]]);
        assert_eq!(i.forbidden(0, 1), Some(&BTreeSet::from([6])));
        assert!(SumsetInstance::from_json(&json!({"p": 8, "A": [[0]]})).is_err());
        assert!(SumsetInstance::from_json(&json!({"p": 7, "A": [[0], [1]], "S": {"2,1": [0]}})).is_err());
    }
}
