//! Constant terms by expanding the Laurent product.

use super::family::{CtValue, Family, IdentityCase};
use super::matrix::ParamMatrix;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactnum::{BigRat, QPoly, Ring};
use crate::laurent::{product_constant_term, ExpansionStats, LaurentPoly};

/// Constant term of the case's Laurent product, by pruned expansion.
pub fn ct_brute(case: &IdentityCase, budget: &Budget) -> Result<(CtValue, ExpansionStats)> {
    let p = &case.params;
    match case.family {
        Family::Dyson => plain_matrix_ct(&ParamMatrix::dyson(p.vector_a()?)?, budget),
        Family::QDyson => q_matrix_ct(&ParamMatrix::dyson(p.vector_a()?)?, budget),
        Family::Morris | Family::Forrester => {
            let s = p.scalars(case.family)?;
            plain_matrix_ct(&ParamMatrix::aomoto_forrester(s.n, s.n0, 0, s.a, s.b, s.k)?, budget)
        }
        Family::Aomoto => {
            let s = p.scalars(case.family)?;
            plain_matrix_ct(&aomoto_literal(s.n, s.m, s.a, s.b, s.k)?, budget)
        }
        Family::QMorris | Family::QAomoto | Family::QForrester | Family::AomotoForrester => {
            let s = p.scalars(case.family)?;
            q_matrix_ct(&ParamMatrix::aomoto_forrester(s.n, s.n0, s.m, s.a, s.b, s.k)?, budget)
        }
        Family::KadellMain => q_matrix_ct(&ParamMatrix::kadell(p.vector_a()?, p.get_m()?)?, budget),
        Family::KadellCorollary => {
            let a = p.vector_a()?;
            let set = p.kadell_set(a.len())?;
            let r = p.get_r()?;
            if set.contains(&r) {
                return Err(Error::bad("r must lie outside M"));
            }
            plain_matrix_ct(&ParamMatrix::dyson_with_row_bumps(a, r, &set)?, budget)
        }
        Family::KadellSum => kadell_sum_ct(p.vector_a()?, p.get_m()?, budget),
        Family::Sills => {
            let a = p.vector_a()?;
            let (r, s) = (p.get_r()?, p.get_s()?);
            if r == 0 || s == 0 || r > a.len() || s > a.len() || r == s {
                return Err(Error::bad("need 1 <= r != s <= n"));
            }
            let mut e = vec![0i32; a.len()];
            e[r - 1] += 1;
            e[s - 1] -= 1;
            monomial_dyson_ct(&e, a, budget).map(|(v, st)| (CtValue::Rat(v), st))
        }
        Family::Xin => xin_ct(p.vector_a()?, 1, budget),
        Family::XinHr => xin_ct(p.vector_a()?, p.get_r()? as u32, budget),
    }
}

/// Aomoto's product as written: `prod_j (1 - x_j)^{a + chi(j <= m)} (1 - 1/x_j)^b` times the
/// equal-parameter Dyson product.
pub fn aomoto_literal(n: usize, m: usize, a: u32, b: u32, k: u32) -> Result<ParamMatrix> {
    if m > n {
        return Err(Error::bad("need m <= n"));
    }
    let mut beta = vec![vec![0; n + 1]; n + 1];
    for j in 1..=n {
        beta[0][j] = b;
        beta[j][0] = a + u32::from(j <= m);
        for i in 1..=n {
            if i != j {
                beta[i][j] = k;
            }
        }
    }
    ParamMatrix::new(beta)
}

pub fn plain_matrix_ct(b: &ParamMatrix, budget: &Budget) -> Result<(CtValue, ExpansionStats)> {
    let (ct, stats) = product_constant_term(b.n(), &b.laurent_factors(), budget)?;
    Ok((CtValue::Rat(ct), stats))
}

pub fn q_matrix_ct(b: &ParamMatrix, budget: &Budget) -> Result<(CtValue, ExpansionStats)> {
    let (ct, stats) = product_constant_term(b.n(), &b.q_laurent_factors(), budget)?;
    Ok((CtValue::Poly(ct), stats))
}

fn check_degree_zero(exps: &[i32], n: usize) -> Result<()> {
    if exps.len() != n {
        return Err(Error::bad("monomial must have one exponent per variable"));
    }
    if exps.iter().sum::<i32>() != 0 {
        return Err(Error::bad("monomial must have total degree zero"));
    }
    Ok(())
}

/// `CT[x^exps * prod_{i != j} (1 - x_i/x_j)^{a_i}]`.
pub fn monomial_dyson_ct(exps: &[i32], a: &[u32], budget: &Budget) -> Result<(BigRat, ExpansionStats)> {
    let n = a.len();
    check_degree_zero(exps, n)?;
    let mut factors = vec![LaurentPoly::monomial(n, exps, BigRat::from_int(1))?];
    factors.extend(ParamMatrix::dyson(a)?.laurent_factors());
    product_constant_term(n, &factors, budget)
}

/// `CT[x^exps * prod_{i<j} (x_i/x_j)_{a_i} (q x_j/x_i)_{a_j}]`.
pub fn monomial_q_dyson_ct(exps: &[i32], a: &[u32], budget: &Budget) -> Result<(QPoly, ExpansionStats)> {
    let n = a.len();
    check_degree_zero(exps, n)?;
    let mut factors = vec![LaurentPoly::monomial(n, exps, QPoly::from_int(1))?];
    factors.extend(ParamMatrix::dyson(a)?.q_laurent_factors());
    product_constant_term(n, &factors, budget)
}

/// Left side of the Kadell summation: sum over `r` and `m`-subsets `M` of
/// `(1 + sum_{v not in M} a_v) CT[prod_{s in M} (1 - x_r/x_s) D(x; a)]`.
fn kadell_sum_ct(a: &[u32], m: usize, budget: &Budget) -> Result<(CtValue, ExpansionStats)> {
    let n = a.len();
    if m >= n {
        return Err(Error::bad("kadell_sum needs m < n"));
    }
    let mut total = BigRat::from_int(0);
    let mut peak = ExpansionStats::default();
    for set in subsets(n, m) {
        let outside: u32 = (1..=n).filter(|v| !set.contains(v)).map(|v| a[v - 1]).sum();
        let weight = BigRat::from_int(1 + outside as i64);
        for r in (1..=n).filter(|r| !set.contains(r)) {
            let (ct, stats) = plain_matrix_ct(&ParamMatrix::dyson_with_row_bumps(a, r, &set)?, budget)?;
            peak.peak_terms = peak.peak_terms.max(stats.peak_terms);
            peak.factors = peak.factors.max(stats.factors);
            total += &(weight.clone() * ct.as_rat().expect("plain value"));
        }
    }
    Ok((CtValue::Rat(total), peak))
}

/// All `m`-element subsets of `{1..n}`, in lexicographic order.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, m, &mut Vec::new(), &mut out);
    out
}

/// `CT[x^{-r a} h_r(x)^{|a|} prod_{i != j} (1 - x_j/x_i)^{a_i}]`, where `h_r` is the
/// complete homogeneous symmetric polynomial of degree `r`.
fn xin_ct(a: &[u32], r: u32, budget: &Budget) -> Result<(CtValue, ExpansionStats)> {
    let n = a.len();
    let total: u32 = a.iter().sum();
    let shift: Vec<i32> = a.iter().map(|&ai| -((r * ai) as i32)).collect();
    let mut factors = vec![LaurentPoly::monomial(n, &shift, BigRat::from_int(1))?];
    let h = complete_homogeneous(n, r)?;
    factors.extend(std::iter::repeat_n(h, total as usize));
    // (1 - x_j/x_i)^{a_i} is the Dyson factor with the roles of the indices swapped
    let dyson = ParamMatrix::dyson(a)?;
    let transposed: Vec<Vec<u32>> = (0..=n).map(|i| (0..=n).map(|j| dyson.get(j, i)).collect()).collect();
    factors.extend(ParamMatrix::new(transposed)?.laurent_factors());
    let (ct, stats) = product_constant_term(n, &factors, budget)?;
    Ok((CtValue::Rat(ct), stats))
}

/// `h_r(x_1..x_n)`: sum of all monomials of degree `r`.
pub fn complete_homogeneous(n: usize, r: u32) -> Result<LaurentPoly<BigRat>> {
    fn rec(v: usize, left: u32, e: &mut Vec<i32>, out: &mut LaurentPoly<BigRat>) -> Result<()> {
        if v + 1 == e.len() {
            e[v] = left as i32;
            out.add_term(crate::laurent::Exponent::from_slice(e)?, BigRat::from_int(1));
            return Ok(());
        }
        for x in 0..=left {
            e[v] = x as i32;
            rec(v + 1, left - x, e, out)?;
        }
        e[v] = 0;
        Ok(())
    }
    let mut out = LaurentPoly::zero(n);
    rec(0, r, &mut vec![0; n], &mut out)?;
    Ok(out)
}
