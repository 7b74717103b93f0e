//! Auxiliary experiments around the catalog: inclusion-exclusion over the
//! Kadell corollary, rational reconstruction in `q^k`, matrix symmetries,
//! the `h_r` generalization of the Xin identity, the q-analogue of Kadell's
//! hypothesis and the two forms of the q-Morris product.

use num_traits::{One, Zero};
use serde_json::{json, Value as Json};

use super::brute::{ct_brute, monomial_dyson_ct, monomial_q_dyson_ct, plain_matrix_ct, q_matrix_ct, subsets};
use super::family::{CtValue, Family, IdentityCase, Method, Params};
use super::matrix::{one_minus_ratio, ParamMatrix};
use super::rhs::{kadell_corollary, q_aomoto_forrester};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactnum::{multinomial, q_multinomial, q_pochhammer, BigRat, QFrac, QPoly, Ring};
use crate::laurent::{product, product_constant_term, LaurentPoly};

/// Both sides of `CT[(x_r^{|M|} / prod_{s in M} x_s) D(x; a)] = sum_{T subset M} (-1)^{|T|} g(T)`,
/// where `g(T)` is the corollary value for the set `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionExclusion {
    pub direct: BigRat,
    pub via_corollary: BigRat,
}

impl InclusionExclusion {
    pub fn holds(&self) -> bool {
        self.direct == self.via_corollary
    }
}

pub fn inclusion_exclusion(a: &[u32], r: usize, set: &[usize], budget: &Budget) -> Result<InclusionExclusion> {
    let n = a.len();
    if r == 0 || r > n || set.contains(&r) {
        return Err(Error::bad("need r in 1..=n outside M"));
    }
    let mut exps = vec![0i32; n];
    exps[r - 1] = set.len() as i32;
    for &s in set {
        exps[s - 1] -= 1;
    }
    let (direct, _) = monomial_dyson_ct(&exps, a, budget)?;
    let mut via = BigRat::zero();
    for size in 0..=set.len() {
        for pick in subsets(set.len(), size) {
            let t: Vec<usize> = pick.iter().map(|&i| set[i - 1]).collect();
            let g = kadell_corollary(a, r, &t)?;
            if size % 2 == 0 {
                via += &g;
            } else {
                via -= &g;
            }
        }
    }
    Ok(InclusionExclusion {
        direct,
        via_corollary: via,
    })
}

/// A rational function `N(z) / D(z)` with coefficients in `Z[q]`, stored by powers of `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZFraction {
    pub num: Vec<QPoly>,
    pub den: Vec<QPoly>,
}

impl ZFraction {
    fn eval_part(part: &[QPoly], k: u32) -> QPoly {
        part.iter()
            .enumerate()
            .fold(QPoly::zero(), |acc, (j, c)| acc + c.shift(j * k as usize))
    }

    /// Value at `z = q^k`, or `None` at a pole.
    pub fn eval_q_pow(&self, k: u32) -> Option<QFrac> {
        let den = Self::eval_part(&self.den, k);
        QFrac::new(Self::eval_part(&self.num, k), den).ok()
    }

    pub fn to_json(&self) -> Json {
        let side = |p: &[QPoly]| Json::Array(p.iter().map(Ring::to_json).collect());
        json!({"num": side(&self.num), "den": side(&self.den)})
    }
}

#[derive(Clone, Debug)]
pub struct RationalityReport {
    pub ks: Vec<u32>,
    /// Normalized values `CT * (q)_k^n / (q)_{nk}`, one per `k`.
    pub values: Vec<QFrac>,
    /// Degree bounds in `z` and `q` of the fitted numerator and denominator.
    pub bounds: (usize, usize),
    pub fit: ZFraction,
    /// Whether the fit reproduces every value beyond the first four.
    pub confirmed: bool,
}

impl RationalityReport {
    pub fn to_json(&self) -> Json {
        json!({
            "ks": self.ks,
            "values": self.values.iter().map(Ring::to_json).collect::<Vec<_>>(),
            "bounds": {"z": self.bounds.0, "q": self.bounds.1},
            "fit": self.fit.to_json(),
            "confirmed": self.confirmed,
        })
    }
}

/// Largest `z`- and `q`-degrees tried by [`rationality_probe`].
pub const MAX_Z_DEGREE: usize = 3;
pub const MAX_Q_DEGREE: usize = 8;

/// Fits `V(k) = CT[(x^r / x^s) D_q(x; k, ..., k)] (q)_k^n / (q)_{nk}` by a rational
/// function of `z = q^k` from the first four `k`, then checks the rest.
///
/// Degree bounds are tried in order of `dz + dq`; the first pair whose linear
/// system has a solution with nonvanishing denominator is used.
pub fn rationality_probe(r: &[i32], s: &[i32], ks: &[u32], budget: &Budget) -> Result<RationalityReport> {
    let n = r.len();
    if s.len() != n || n == 0 {
        return Err(Error::bad("r and s need the same positive length"));
    }
    if r.iter().sum::<i32>() != s.iter().sum::<i32>() {
        return Err(Error::bad("need sum(r) = sum(s)"));
    }
    let mut sorted = ks.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != ks.len() || ks.len() < 4 || ks.contains(&0) {
        return Err(Error::bad("need at least four distinct positive k"));
    }
    let exps: Vec<i32> = r.iter().zip(s).map(|(x, y)| x - y).collect();
    let values = ks
        .iter()
        .map(|&k| {
            let (ct, _) = monomial_q_dyson_ct(&exps, &vec![k; n], budget)?;
            QFrac::new(ct * q_pochhammer(k).pow(n as u32), q_pochhammer(n as u32 * k))
        })
        .collect::<Result<Vec<_>>>()?;

    for total in 0..=MAX_Z_DEGREE + MAX_Q_DEGREE {
        for dz in 0..=total.min(MAX_Z_DEGREE) {
            let dq = total - dz;
            if dq > MAX_Q_DEGREE {
                continue;
            }
            budget.check_deadline()?;
            let Some(fit) = fit_z_fraction(&ks[..4], &values[..4], dz, dq) else {
                continue;
            };
            let confirmed = ks[4..]
                .iter()
                .zip(&values[4..])
                .all(|(&k, v)| fit.eval_q_pow(k).as_ref() == Some(v));
            return Ok(RationalityReport {
                ks: ks.to_vec(),
                values,
                bounds: (dz, dq),
                fit,
                confirmed,
            });
        }
    }
    Err(Error::ReconstructionFailed(format!(
        "no fit with z-degree <= {MAX_Z_DEGREE} and q-degree <= {MAX_Q_DEGREE}"
    )))
}

/// Solves `N(q^k) den_k - num_k D(q^k) = 0` for the coefficients of `N, D`.
fn fit_z_fraction(ks: &[u32], values: &[QFrac], dz: usize, dq: usize) -> Option<ZFraction> {
    let per = (dz + 1) * (dq + 1);
    let mut rows: Vec<Vec<BigRat>> = Vec::new();
    for (&k, v) in ks.iter().zip(values) {
        // column c contributes q^{e + k j} times den_k (numerator unknowns) or -num_k
        let mut cols: Vec<QPoly> = Vec::with_capacity(2 * per);
        for mult in [v.den().clone(), -v.num().clone()] {
            for j in 0..=dz {
                for e in 0..=dq {
                    cols.push(mult.shift(e + k as usize * j));
                }
            }
        }
        let height = cols.iter().filter_map(QPoly::degree).max().map_or(0, |d| d + 1);
        for power in 0..height {
            rows.push(cols.iter().map(|c| BigRat::from_integer(c.coeff(power))).collect());
        }
    }
    let basis = nullspace(rows, 2 * per);
    basis.into_iter().find_map(|vec| {
        // clear denominators jointly so num and den keep their ratio
        let lcm = vec
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let vec: Vec<BigRat> = vec.iter().map(|x| x * BigRat::from_integer(lcm.clone())).collect();
        let part = |offset: usize| -> Vec<QPoly> {
            (0..=dz)
                .map(|j| {
                    let coeffs: Vec<BigRat> = (0..=dq).map(|e| vec[offset + j * (dq + 1) + e].clone()).collect();
                    integral_poly(&coeffs)
                })
                .collect()
        };
        let fit = ZFraction {
            num: part(0),
            den: part(per),
        };
        let usable = ks
            .iter()
            .zip(values)
            .all(|(&k, v)| fit.eval_q_pow(k).as_ref() == Some(v));
        usable.then_some(fit)
    })
}

fn integral_poly(coeffs: &[BigRat]) -> QPoly {
    QPoly::new(coeffs.iter().map(|c| c.to_integer()).collect())
}

/// Basis of the right nullspace of `rows` (each of length `ncols`), by exact elimination.
pub fn nullspace(mut rows: Vec<Vec<BigRat>>, ncols: usize) -> Vec<Vec<BigRat>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRat::one() / &rows[rank][col];
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRat::zero(); ncols];
            v[free] = BigRat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// The cyclic relabeling `i -> i - 1 (mod n + 1)` of `{0..n}`, raised to `power`.
pub fn cyclic_permutation(n: usize, power: usize) -> Vec<usize> {
    let size = n + 1;
    (0..size).map(|i| (i + size - power % size) % size).collect()
}

/// Whether the constant term of `L(B)` (or `L_q(B)`) is unchanged by the
/// simultaneous row/column permutation `perm`. For the q-product only powers of
/// the cyclic relabeling are admissible.
pub fn invariance_check(b: &ParamMatrix, perm: &[usize], q: bool, budget: &Budget) -> Result<bool> {
    let n = b.n();
    if q && !(0..=n).any(|t| cyclic_permutation(n, t) == perm) {
        return Err(Error::bad("q-case permutation must be a power of the cycle n -> n-1 -> ... -> 0 -> n"));
    }
    let c = b.permuted(perm)?;
    Ok(if q {
        q_matrix_ct(b, budget)?.0 == q_matrix_ct(&c, budget)?.0
    } else {
        plain_matrix_ct(b, budget)?.0 == plain_matrix_ct(&c, budget)?.0
    })
}

/// `CT[x^{-r a} h_r(x)^{|a|} prod_{i != j} (1 - x_j/x_i)^{a_i}]` against the multinomial.
pub fn xin_hr_check(r: u32, a: &[u32], budget: &Budget) -> Result<bool> {
    let case = IdentityCase::new(
        Family::XinHr,
        Params {
            a: Some(a.to_vec()),
            r: Some(r as usize),
            ..Default::default()
        },
        Method::Brute,
    );
    let (v, _) = ct_brute(&case, budget)?;
    Ok(v == CtValue::Rat(BigRat::from_integer(multinomial(a))))
}

/// One instance of the q-analogue of Kadell's hypothesis.
#[derive(Clone, Debug)]
pub struct KadellProbeRecord {
    pub a: Vec<u32>,
    /// The set `M` (1-based).
    pub set: Vec<usize>,
    /// `r_s` for each `s` in `M`, in the same order.
    pub targets: Vec<usize>,
    pub lhs: QPoly,
    pub rhs: CtValue,
}

impl KadellProbeRecord {
    pub fn holds(&self) -> bool {
        self.rhs.as_poly() == Some(&self.lhs)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "a": self.a,
            "M": self.set,
            "r": self.targets,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "holds": self.holds(),
        })
    }
}

/// Matrix of the hypothesis: `beta[u][v] = a_u + chi(v in M and u = r_v)`.
pub fn kadell_hypothesis_matrix(a: &[u32], set: &[usize], targets: &[usize]) -> Result<ParamMatrix> {
    let mut m = ParamMatrix::dyson(a)?;
    let mut beta: Vec<Vec<u32>> = m.rows().to_vec();
    for (&s, &r) in set.iter().zip(targets) {
        if set.contains(&r) || r == 0 || r > a.len() {
            return Err(Error::bad("each r_s must lie in 1..=n outside M"));
        }
        beta[r][s] += 1;
    }
    m = ParamMatrix::new(beta)?;
    Ok(m)
}

/// Right side of the hypothesis: `(1 - q^{1+|a|}) / (1 - q^{1 + sum_{v not in M} a_v})` times the q-multinomial.
pub fn kadell_hypothesis_rhs(a: &[u32], set: &[usize]) -> Result<CtValue> {
    let total: u32 = a.iter().sum();
    let outside: u32 = (1..=a.len()).filter(|v| !set.contains(v)).map(|v| a[v - 1]).sum();
    let mut num = q_multinomial(a)?;
    num.mul_one_minus_q_pow(1 + total as usize);
    let den = QPoly::one_minus_q_pow(1 + outside as usize);
    Ok(match num.exact_div(&den) {
        Ok(p) => CtValue::Poly(p),
        Err(_) => CtValue::Frac(QFrac::new(num, den)?),
    })
}

/// Every `m`-subset `M` and every assignment `s -> r_s` outside `M`, for fixed `a`.
pub fn kadell_hypothesis_probe(a: &[u32], m: usize, budget: &Budget) -> Result<Vec<KadellProbeRecord>> {
    let n = a.len();
    if m >= n {
        return Err(Error::bad("need m < n"));
    }
    let mut out = Vec::new();
    for set in subsets(n, m) {
        let outside: Vec<usize> = (1..=n).filter(|v| !set.contains(v)).collect();
        let rhs = kadell_hypothesis_rhs(a, &set)?;
        let mut targets = vec![outside[0]; m];
        loop {
            let b = kadell_hypothesis_matrix(a, &set, &targets)?;
            let (lhs, _) = q_matrix_ct(&b, budget)?;
            out.push(KadellProbeRecord {
                a: a.to_vec(),
                set: set.clone(),
                targets: targets.clone(),
                lhs: lhs.as_poly().expect("q value").clone(),
                rhs: rhs.clone(),
            });
            // next assignment in odometer order
            let mut i = 0;
            while i < m {
                let pos = outside.iter().position(|&v| v == targets[i]).unwrap();
                if pos + 1 < outside.len() {
                    targets[i] = outside[pos + 1];
                    break;
                }
                targets[i] = outside[0];
                i += 1;
            }
            if i == m {
                break;
            }
        }
    }
    Ok(out)
}

/// The two forms of the q-Morris product.
#[derive(Clone, Debug)]
pub struct QMorrisForms {
    /// `CT[prod_j (q x_j)_a (1/x_j)_b D_q(x; k)]`.
    pub ct_shifted_a: QPoly,
    /// `CT[prod_j (x_j)_a (q/x_j)_b D_q(x; k)]`.
    pub ct_shifted_b: QPoly,
    /// The product formula.
    pub formula: QPoly,
    /// Whether `prod_j (q x_j)_a (1/x_j)_b` and `prod_j (x_j)_a (q/x_j)_b` agree on
    /// every monomial of total degree zero.
    pub degree_zero_parts_agree: bool,
}

impl QMorrisForms {
    pub fn all_equal(&self) -> bool {
        self.ct_shifted_a == self.formula && self.ct_shifted_b == self.formula && self.degree_zero_parts_agree
    }
}

fn q_morris_outer(n: usize, a: u32, b: u32, shift_a: bool) -> Vec<LaurentPoly<QPoly>> {
    let (sa, sb) = if shift_a { (1, 0) } else { (0, 1) };
    let mut out = Vec::new();
    for j in 1..=n {
        for t in 0..a {
            out.push(one_minus_ratio(n, j, 0, QPoly::q_power((t + sa) as usize)));
        }
        for t in 0..b {
            out.push(one_minus_ratio(n, 0, j, QPoly::q_power((t + sb) as usize)));
        }
    }
    out
}

pub fn q_morris_forms(n: usize, a: u32, b: u32, k: u32, budget: &Budget) -> Result<QMorrisForms> {
    let dyson = ParamMatrix::dyson(&vec![k; n])?.q_laurent_factors();
    let ct = |shift_a: bool| -> Result<QPoly> {
        let mut factors = q_morris_outer(n, a, b, shift_a);
        factors.extend(dyson.iter().cloned());
        Ok(product_constant_term(n, &factors, budget)?.0)
    };
    let degree_zero = |shift_a: bool| -> Result<Vec<(Vec<i32>, QPoly)>> {
        let p = product(n, &q_morris_outer(n, a, b, shift_a), budget)?;
        Ok(p.sorted_terms()
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<i32>() == 0)
            .map(|(e, c)| (e, c.clone()))
            .collect())
    };
    let scalars = super::family::ScalarParams { n, n0: n, m: 0, a, b, k };
    Ok(QMorrisForms {
        ct_shifted_a: ct(true)?,
        ct_shifted_b: ct(false)?,
        formula: q_aomoto_forrester(&scalars)?,
        degree_zero_parts_agree: degree_zero(true)? == degree_zero(false)?,
    })
}
