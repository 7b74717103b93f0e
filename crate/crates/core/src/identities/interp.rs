//! Constant terms by interpolation: each Laurent product is traded for a
//! polynomial whose top coefficient is the constant term, and that
//! coefficient is read off a grid of nodes chosen so that almost every
//! summand vanishes.

use super::family::{CtValue, Family, IdentityCase};
use super::matrix::ParamMatrix;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactnum::{BigRat, Field, HasQ, QFrac, Ring};
use crate::interpolation::{coeff_hermite, GridStats, NodeMultiset};
use crate::laurent::{LinearFactorProduct, LinearForm};

/// Node exponents for one variable: `(alpha, multiplicity)` pairs.
pub type ExponentNodes = Vec<(u32, u32)>;

/// Constant term of the case's Laurent product via its interpolation pipeline.
pub fn ct_interp(case: &IdentityCase, budget: &Budget) -> Result<(CtValue, GridStats)> {
    let p = &case.params;
    match case.family {
        Family::Dyson => {
            let a = p.vector_a()?;
            plain_pipeline(&ParamMatrix::dyson(a)?, &dyson_nodes(a, 0), budget)
        }
        Family::QDyson => {
            let a = p.vector_a()?;
            q_pipeline(&ParamMatrix::dyson(a)?, &dyson_nodes(a, 0), budget)
        }
        Family::Morris | Family::Aomoto | Family::Forrester => {
            let s = p.scalars(case.family)?;
            let b = ParamMatrix::aomoto_forrester(s.n, s.n0, s.m, s.a, s.b, s.k)?;
            plain_pipeline(&b, &overlay_nodes(&b), budget)
        }
        Family::QMorris | Family::QAomoto | Family::QForrester | Family::AomotoForrester => {
            let s = p.scalars(case.family)?;
            let b = ParamMatrix::aomoto_forrester(s.n, s.n0, s.m, s.a, s.b, s.k)?;
            q_pipeline(&b, &overlay_nodes(&b), budget)
        }
        Family::KadellMain => {
            let (a, m) = drop_silent_variables(p.vector_a()?, p.get_m()?);
            q_pipeline(&ParamMatrix::kadell(&a, m)?, &dyson_nodes(&a, m), budget)
        }
        Family::Xin => xin_pipeline(p.vector_a()?, budget),
        f => Err(Error::Unsupported(f.name().to_string())),
    }
}

/// Drops `x_i` for every `i < n` with `a_i = 0`: such a variable only occurs
/// through nonpositive powers, so every factor containing it contributes 1 to
/// the constant term. Returns the reduced exponents and the reduced `m`.
pub fn drop_silent_variables(a: &[u32], m: usize) -> (Vec<u32>, usize) {
    let n = a.len();
    let mut kept = Vec::with_capacity(n);
    let mut m_kept = m;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 && i + 1 < n {
            if i < m {
                m_kept -= 1;
            }
        } else {
            kept.push(ai);
        }
    }
    (kept, m_kept)
}

/// Dyson-type nodes: `{0}` for `x_0` and `{0, ..., |a| - a_i + chi(i <= m)}` for `x_i`.
pub fn dyson_nodes(a: &[u32], m: usize) -> Vec<ExponentNodes> {
    let total: u32 = a.iter().sum();
    let mut out = vec![vec![(0, 1)]];
    for (i, &ai) in a.iter().enumerate() {
        let top = total - ai + u32::from(i < m);
        out.push((0..=top).map(|x| (x, 1)).collect());
    }
    out
}

/// Nodes for the Morris, Aomoto and Forrester overlay matrices.
///
/// With `gamma_t = beta[t][n]` and `Delta_t = gamma_0 + ... + gamma_t`:
/// `A_j = {0} + union_t [Delta_t - gamma_{min(t,j)} + 1, Delta_t]` for `j >= 1`, and the
/// multiset `A_0 = {0} + union_t [Delta_t - b + 1, Delta_t - b + beta[t+1][0]]`, `b = gamma_0`.
pub fn overlay_nodes(b: &ParamMatrix) -> Vec<ExponentNodes> {
    let n = b.n();
    let gamma: Vec<u32> = (0..n).map(|t| b.get(t, n)).collect();
    let delta: Vec<u32> = gamma
        .iter()
        .scan(0, |acc, g| {
            *acc += g;
            Some(*acc)
        })
        .collect();
    let mut out = Vec::with_capacity(n + 1);

    let mut counts: Vec<u32> = Vec::new();
    let mut bump = |x: u32| {
        let x = x as usize;
        if counts.len() <= x {
            counts.resize(x + 1, 0);
        }
        counts[x] += 1;
    };
    bump(0);
    for t in 0..n {
        let lo = delta[t] - gamma[0] + 1;
        for x in lo..lo + b.get(t + 1, 0) {
            bump(x);
        }
    }
    out.push(
        counts
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(x, &w)| (x as u32, w))
            .collect(),
    );

    for j in 1..=n {
        let mut set = vec![0u32];
        for t in 0..n {
            let g = gamma[t.min(j)];
            set.extend(delta[t] + 1 - g..=delta[t]);
        }
        set.sort_unstable();
        set.dedup();
        out.push(set.into_iter().map(|x| (x, 1)).collect());
    }
    out
}

fn to_multisets<C: Field>(nodes: &[ExponentNodes], point: impl Fn(u32) -> C) -> Result<Vec<NodeMultiset<C>>> {
    nodes
        .iter()
        .map(|xs| NodeMultiset::new(xs.iter().map(|&(x, w)| (point(x), w))))
        .collect()
}

/// Coefficient of `prod x_j^{B_j}` in the additive polynomial of `b`, on integer nodes.
pub fn plain_pipeline(b: &ParamMatrix, nodes: &[ExponentNodes], budget: &Budget) -> Result<(CtValue, GridStats)> {
    let fp = b.additive_polynomial();
    let multisets = to_multisets(nodes, |x| BigRat::from_int(x as i64))?;
    let (c, stats) = coeff_hermite(&fp, &b.column_sums(), &multisets, budget)?;
    Ok((CtValue::Rat(c), stats))
}

/// Coefficient of `prod x_j^{B_j}` in the q-polynomial of `b`, on nodes `q^alpha`.
pub fn q_pipeline(b: &ParamMatrix, nodes: &[ExponentNodes], budget: &Budget) -> Result<(CtValue, GridStats)> {
    let fp = b.fq_polynomial();
    let multisets = to_multisets(nodes, |x| QFrac::q_pow(x as usize))?;
    let (c, stats) = coeff_hermite(&fp, &b.column_sums(), &multisets, budget)?;
    let poly = c
        .to_poly()
        .ok_or_else(|| Error::Unsupported(format!("interpolation returned the non-polynomial value {c}")))?;
    Ok((CtValue::Poly(poly), stats))
}

/// `(x_1 + ... + x_n)^{|a|} prod_{i != j} (x_i - x_j)^{a_i}` with Hermite nodes on
/// `{1, 2, ..., n-1, -(1 + ... + n-1)}`, node `b_j` having multiplicity `a_i + chi(i = j)` for `x_i`.
pub fn xin_pipeline(a: &[u32], budget: &Budget) -> Result<(CtValue, GridStats)> {
    let n = a.len();
    let (fp, d) = xin_polynomial(a)?;
    let mut support: Vec<i64> = (1..n as i64).collect();
    support.push(-support.iter().sum::<i64>());
    let nodes: Vec<NodeMultiset<BigRat>> = (0..n)
        .map(|i| {
            NodeMultiset::new(
                support
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| (BigRat::from_int(x), a[i] + u32::from(i == j))),
            )
        })
        .collect::<Result<_>>()?;
    let (c, stats) = coeff_hermite(&fp, &d, &nodes, budget)?;
    Ok((CtValue::Rat(c), stats))
}

/// The polynomial of [`xin_pipeline`] and its target degrees `d_i = n a_i`.
pub fn xin_polynomial(a: &[u32]) -> Result<(LinearFactorProduct<BigRat>, Vec<u32>)> {
    let n = a.len();
    let total: u32 = a.iter().sum();
    let mut fp = LinearFactorProduct::new(n);
    let sum = LinearForm::new((0..n).map(|v| (v, BigRat::from_int(1))).collect(), BigRat::from_int(0));
    for _ in 0..total {
        fp.push(sum.clone())?;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for _ in 0..a[i] {
                    fp.push(LinearForm::scaled_difference(i, j, BigRat::from_int(1)))?;
                }
            }
        }
    }
    Ok((fp, a.iter().map(|&ai| n as u32 * ai).collect()))
}
