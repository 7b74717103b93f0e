use serde_json::json;

use super::{Exponent, LaurentPoly};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, Ring};

/// Affine form `constant + sum coeff_v * x_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<C> {
    pub coeffs: Vec<(usize, C)>,
    pub constant: C,
}

impl<C: Ring> LinearForm<C> {
    pub fn new(coeffs: Vec<(usize, C)>, constant: C) -> Self {
        let mut merged: Vec<(usize, C)> = Vec::with_capacity(coeffs.len());
        for (v, c) in coeffs {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some((_, acc)) => *acc += &c,
                None => merged.push((v, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged.sort_by_key(|(v, _)| *v);
        LinearForm {
            coeffs: merged,
            constant,
        }
    }

    /// `x_j - s * x_i`.
    pub fn scaled_difference(j: usize, i: usize, s: C) -> Self {
        LinearForm::new(vec![(j, C::one()), (i, -s)], C::zero())
    }

    /// `x_j - x_i - e`.
    pub fn shifted_difference(j: usize, i: usize, e: C) -> Self {
        LinearForm::new(vec![(j, C::one()), (i, -C::one())], -e)
    }

    /// `x_v - c`.
    pub fn variable_minus(v: usize, c: C) -> Self {
        LinearForm::new(vec![(v, C::one())], -c)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.coeffs.last().map(|(v, _)| *v)
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        self.coeffs
            .iter()
            .fold(self.constant.clone(), |acc, (v, c)| acc + &(c.clone() * &point[*v]))
    }

    fn to_laurent(&self, nvars: usize) -> LaurentPoly<C> {
        let mut p = LaurentPoly::constant(nvars, self.constant.clone());
        for (v, c) in &self.coeffs {
            let mut e = Exponent::zero();
            e.0[*v] = 1;
            p.add_term(e, c.clone());
        }
        p
    }
}

/// Product of affine factors in `nvars` variables, kept in factored form.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactorProduct<C> {
    nvars: usize,
    factors: Vec<LinearForm<C>>,
}

impl<C: Ring> LinearFactorProduct<C> {
    pub fn new(nvars: usize) -> Self {
        LinearFactorProduct {
            nvars,
            factors: Vec::new(),
        }
    }

    pub fn push(&mut self, f: LinearForm<C>) -> Result<()> {
        if f.max_var().is_some_and(|v| v >= self.nvars) {
            return Err(Error::bad("factor refers to a variable past nvars"));
        }
        self.factors.push(f);
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn factors(&self) -> &[LinearForm<C>] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of factors with a nonconstant part.
    pub fn degree(&self) -> usize {
        self.factors.iter().filter(|f| !f.coeffs.is_empty()).count()
    }

    pub fn expand(&self, budget: &Budget) -> Result<LaurentPoly<C>> {
        let mut acc = LaurentPoly::one(self.nvars);
        for f in &self.factors {
            acc = acc.mul(&f.to_laurent(self.nvars), budget)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Product of the factor values; stops at the first zero factor.
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point length must equal nvars");
        let mut acc = C::one();
        for f in &self.factors {
            let v = f.evaluate(point);
            if v.is_zero() {
                return C::zero();
            }
            acc = acc * &v;
        }
        acc
    }

    /// Mixed partial derivative `d^{|m|} F / dx^m` at `point`.
    pub fn jet_evaluate(&self, point: &[C], orders: &[u32]) -> C {
        let c = self.jet_coefficient(point, orders);
        if c.is_zero() {
            return c;
        }
        orders
            .iter()
            .filter(|&&m| m > 1)
            .fold(c, |acc, &m| acc * &C::from_bigint(&factorial(m as u64)))
    }

    /// Taylor coefficient of `prod u_i^{m_i}` in `F(point + u)`, i.e. the
    /// derivative divided by `prod m_i!`.
    pub fn jet_coefficient(&self, point: &[C], orders: &[u32]) -> C {
        assert_eq!(point.len(), self.nvars, "point length must equal nvars");
        assert_eq!(orders.len(), self.nvars, "orders length must equal nvars");
        let values: Vec<C> = self.factors.iter().map(|f| f.evaluate(point)).collect();
        jet_from_values(&self.factors, &values, orders)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "nvars": self.nvars,
            "factors": self.factors.iter().map(|f| json!({
                "coeffs": f.coeffs.iter().map(|(v, c)| json!([v, c.to_json()])).collect::<Vec<_>>(),
                "constant": f.constant.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Taylor coefficient of `prod u_v^{orders_v}` in `prod_f (values_f + sum_v c_fv u_v)`.
pub(crate) fn jet_from_values<C: Ring>(factors: &[LinearForm<C>], values: &[C], orders: &[u32]) -> C {
    let nvars = orders.len();
    let active: Vec<usize> = (0..nvars).filter(|&v| orders[v] > 0).collect();
    let total: u32 = orders.iter().sum();

    // slot of each variable in the dense series, with mixed-radix strides
    let mut slot = vec![usize::MAX; nvars];
    let mut strides = Vec::with_capacity(active.len());
    let mut size = 1usize;
    for (k, &v) in active.iter().enumerate() {
        slot[v] = k;
        strides.push(size);
        size *= orders[v] as usize + 1;
    }

    let mut scalar = C::one();
    let mut linear: Vec<(C, Vec<(usize, C)>)> = Vec::new();
    let mut zero_valued = 0u32;
    for (f, value) in factors.iter().zip(values) {
        let value = value.clone();
        let slope: Vec<(usize, C)> = f
            .coeffs
            .iter()
            .filter(|(v, _)| slot[*v] != usize::MAX)
            .map(|(v, c)| (slot[*v], c.clone()))
            .collect();
        if slope.is_empty() {
            if value.is_zero() {
                return C::zero();
            }
            scalar = scalar * &value;
        } else {
            if value.is_zero() {
                zero_valued += 1;
                // every such factor contributes at least one order of u
                if zero_valued > total {
                    return C::zero();
                }
            }
            linear.push((value, slope));
        }
    }
    if active.is_empty() {
        return scalar;
    }

    let bounds: Vec<usize> = active.iter().map(|&v| orders[v] as usize).collect();
    let mut series = vec![C::zero(); size];
    series[0] = C::one();
    let mut digits = vec![0usize; active.len()];
    for (value, slope) in &linear {
        // multiply by value + sum slope_k u_k, truncated to the order box,
        // walking indices downward so sources are read before overwrite
        for idx in (0..size).rev() {
            decode(idx, &bounds, &mut digits);
            let mut acc = if value.is_zero() {
                C::zero()
            } else {
                series[idx].clone() * value
            };
            for (k, a) in slope {
                if digits[*k] > 0 {
                    let src = &series[idx - strides[*k]];
                    if !src.is_zero() {
                        acc += &(src.clone() * a);
                    }
                }
            }
            series[idx] = acc;
        }
    }
    series[size - 1].clone() * &scalar
}

fn decode(mut idx: usize, bounds: &[usize], digits: &mut [usize]) {
    for (d, b) in digits.iter_mut().zip(bounds) {
        *d = idx % (b + 1);
        idx /= b + 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, BigRat, QPoly};
    use num_traits::One;

    fn product(nvars: usize, fs: Vec<LinearForm<BigRat>>) -> LinearFactorProduct<BigRat> {
        let mut p = LinearFactorProduct::new(nvars);
        for f in fs {
            p.push(f).unwrap();
        }
        p
    }

    #[test]
    fn expand_examples() {
        let b = Budget::default();
        let p = product(2, vec![LinearForm::scaled_difference(1, 0, rat(1))]);
        let e = p.expand(&b).unwrap();
        assert_eq!(e.coefficient(&[0, 1]), rat(1));
        assert_eq!(e.coefficient(&[1, 0]), rat(-1));
        assert_eq!(e.term_count(), 2);

        let mut qp = LinearFactorProduct::<QPoly>::new(2);
        qp.push(LinearForm::scaled_difference(1, 0, QPoly::one())).unwrap();
        qp.push(LinearForm::scaled_difference(0, 1, QPoly::q_power(1))).unwrap();
        let e = qp.expand(&b).unwrap();
        assert_eq!(e.coefficient(&[1, 1]), QPoly::from_ints(&[1, 1]));
        assert_eq!(e.coefficient(&[2, 0]), QPoly::from_ints(&[-1]));
        assert_eq!(e.coefficient(&[0, 2]), QPoly::from_ints(&[0, -1]));
        assert_eq!(e.term_count(), 3);

        let empty = product(3, vec![]).expand(&b).unwrap();
        assert_eq!(empty, LaurentPoly::one(3));
    }

    #[test]
    fn evaluate_examples() {
        let p = product(2, vec![LinearForm::scaled_difference(1, 0, rat(1))]);
        assert_eq!(p.evaluate(&[rat(1), rat(1)]), rat(0));
        // prod_{e=-1}^{0} (x1 - x0 - e) at (0, 1)
        let m = product(
            2,
            vec![
                LinearForm::shifted_difference(1, 0, rat(-1)),
                LinearForm::shifted_difference(1, 0, rat(0)),
            ],
        );
        assert_eq!(m.evaluate(&[rat(0), rat(1)]), rat(2));
        assert_eq!(product(2, vec![]).evaluate(&[rat(5), rat(7)]), rat(1));
    }

    #[test]
    fn jet_examples() {
        let sq = product(
            1,
            vec![LinearForm::variable_minus(0, rat(1)), LinearForm::variable_minus(0, rat(1))],
        );
        assert_eq!(sq.jet_evaluate(&[rat(1)], &[2]), rat(2));
        assert_eq!(sq.jet_evaluate(&[rat(3)], &[0]), sq.evaluate(&[rat(3)]));
        let lin = product(1, vec![LinearForm::variable_minus(0, rat(1))]);
        assert_eq!(lin.jet_evaluate(&[rat(1)], &[2]), rat(0));
    }

    #[test]
    fn jet_matches_expanded_derivative() {
        // F = (x0 - 2 x1)(x1 - x2 - 1)(x0 + x2)(x2 - 3)
        let f = product(
            3,
            vec![
                LinearForm::scaled_difference(0, 1, rat(2)),
                LinearForm::shifted_difference(1, 2, rat(1)),
                LinearForm::new(vec![(0, rat(1)), (2, rat(1))], rat(0)),
                LinearForm::variable_minus(2, rat(3)),
            ],
        );
        let e = f.expand(&Budget::default()).unwrap();
        let pt = [rat(2), rat(-1), rat(3)];
        for m in [[1u32, 1, 1], [0, 1, 2], [2, 0, 1], [1, 0, 0], [0, 0, 3]] {
            // derivative of the expansion, term by term
            let mut want = rat(0);
            for (exp, c) in e.sorted_terms() {
                let mut term = c.clone();
                for v in 0..3 {
                    let k = exp[v];
                    let mv = m[v] as i32;
                    if k < mv {
                        term = rat(0);
                        break;
                    }
                    for t in 0..mv {
                        term *= rat((k - t) as i64);
                    }
                    for _ in 0..(k - mv) {
                        term *= &pt[v];
                    }
                }
                want += term;
            }
            assert_eq!(f.jet_evaluate(&pt, &m), want, "orders {m:?}");
        }
    }
}
