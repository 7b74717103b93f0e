//! Coefficient extraction by interpolation.
//!
//! For a polynomial `F` of total degree at most `d_1 + ... + d_n` and node
//! multisets `C_i` with `|C_i| = d_i + 1`, the coefficient of
//! `x_1^{d_1} ... x_n^{d_n}` in `F` is a weighted sum of the values (and, for
//! repeated nodes, derivatives) of `F` on the grid `C_1 x ... x C_n`. The sum
//! is evaluated straight from the factored form; grid points where the
//! product vanishes to high enough order are pruned early.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, Field};
use crate::laurent::{jet_from_values, LinearFactorProduct};

/// Finite multiset of distinct field elements with positive multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeMultiset<C> {
    entries: Vec<(C, u32)>,
}

impl<C: Field> NodeMultiset<C> {
    /// Repeated points are merged; zero multiplicities are dropped.
    pub fn new(entries: impl IntoIterator<Item = (C, u32)>) -> Result<Self> {
        let mut merged: Vec<(C, u32)> = Vec::new();
        for (c, w) in entries {
            if w == 0 {
                continue;
            }
            match merged.iter_mut().find(|(x, _)| *x == c) {
                Some((_, acc)) => *acc += w,
                None => merged.push((c, w)),
            }
        }
        if merged.is_empty() {
            return Err(Error::bad("node multiset must be nonempty"));
        }
        Ok(NodeMultiset { entries: merged })
    }

    /// Multiplicity-one multiset; duplicate points are rejected.
    pub fn set(points: impl IntoIterator<Item = C>) -> Result<Self> {
        let points: Vec<C> = points.into_iter().collect();
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::bad("node set contains a repeated point"));
            }
        }
        NodeMultiset::new(points.into_iter().map(|p| (p, 1)))
    }

    pub fn entries(&self) -> &[(C, u32)] {
        &self.entries
    }

    /// Total multiplicity `|C|`.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, w)| *w as usize).sum()
    }

    pub fn is_set(&self) -> bool {
        self.entries.iter().all(|(_, w)| *w == 1)
    }

    fn max_multiplicity(&self) -> u32 {
        self.entries.iter().map(|(_, w)| *w).max().unwrap_or(0)
    }

    /// Index of `c` in the support.
    pub fn position(&self, c: &C) -> Option<usize> {
        self.entries.iter().position(|(x, _)| x == c)
    }

    /// Coefficient of `u^{w(c) - m - 1}` in `1 / p(c + u)`, where
    /// `p(x) = prod_{c' != c} (x - c')^{w(c')}`. Equals `m! * kappa(C, c, m)`.
    fn raw_kappa(&self, idx: usize, m: u32) -> C {
        let (c, w) = &self.entries[idx];
        let order = (w - m - 1) as usize;
        // p(c + u) truncated to degree `order`
        let mut p = vec![C::zero(); order + 1];
        p[0] = C::one();
        for (j, (cj, wj)) in self.entries.iter().enumerate() {
            if j == idx {
                continue;
            }
            let shift = c.clone() - cj;
            for _ in 0..*wj {
                for k in (0..=order).rev() {
                    let mut acc = p[k].clone() * &shift;
                    if k > 0 {
                        acc += &p[k - 1];
                    }
                    p[k] = acc;
                }
            }
        }
        // invert the series: inv[0] = 1/p0, inv[k] = -(sum_{i=1..k} p_i inv[k-i]) / p0
        let p0_inv = p[0].inv();
        let mut inv: Vec<C> = Vec::with_capacity(order + 1);
        inv.push(p0_inv.clone());
        for k in 1..=order {
            let mut acc = C::zero();
            for i in 1..=k {
                if !p[i].is_zero() {
                    acc += &(p[i].clone() * &inv[k - i]);
                }
            }
            inv.push(-(acc * &p0_inv));
        }
        inv.pop().expect("nonempty series")
    }
}

/// `1 / prod_{c' in C, c' != c} (c - c')`.
pub fn lagrange_kappa<C: Field>(nodes: &[C], c: &C) -> C {
    nodes
        .iter()
        .filter(|x| *x != c)
        .fold(C::one(), |acc, x| acc * &(c.clone() - x))
        .inv()
}

/// Hermite weight of the `m`-th derivative at `c`: the coefficient of
/// `(x - c)^{w(c) - m - 1}` in `1 / (m! p(x))`.
pub fn hermite_kappa<C: Field>(nodes: &NodeMultiset<C>, c: &C, m: u32) -> Result<C> {
    let idx = nodes
        .position(c)
        .ok_or_else(|| Error::bad("kappa requested at a point outside the support"))?;
    if m >= nodes.entries[idx].1 {
        return Err(Error::bad("derivative order must be below the multiplicity"));
    }
    let raw = nodes.raw_kappa(idx, m);
    Ok(raw.div(&C::from_bigint(&factorial(m as u64))))
}

/// Work done by a grid summation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GridStats {
    /// Grid points whose summand was evaluated (pruned subtrees not counted).
    pub points_visited: u64,
    /// Grid points (or point and order combinations) with a nonzero summand.
    pub nonzero_summands: u64,
}

fn validate<C: Field>(fp: &LinearFactorProduct<C>, d: &[u32], nodes: &[NodeMultiset<C>]) -> Result<()> {
    if d.len() != fp.nvars() || nodes.len() != fp.nvars() {
        return Err(Error::bad("degree vector and node list must have one entry per variable"));
    }
    for (i, (c, di)) in nodes.iter().zip(d).enumerate() {
        if c.size() != *di as usize + 1 {
            return Err(Error::bad(format!(
                "node multiset {i} has size {} but must have size {}",
                c.size(),
                di + 1
            )));
        }
    }
    let target: usize = d.iter().map(|&x| x as usize).sum();
    if fp.degree() > target {
        return Err(Error::DegreeViolation {
            degree: fp.degree(),
            target,
        });
    }
    Ok(())
}

/// Factor indices grouped by their largest variable index; constant factors
/// come back separately.
fn group_by_last_var<C: Field>(fp: &LinearFactorProduct<C>) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut groups = vec![Vec::new(); fp.nvars()];
    let mut constants = Vec::new();
    for (idx, f) in fp.factors().iter().enumerate() {
        match f.max_var() {
            Some(v) => groups[v].push(idx),
            None => constants.push(idx),
        }
    }
    (groups, constants)
}

struct Tick<'a> {
    budget: &'a Budget,
    count: u64,
}

impl Tick<'_> {
    fn step(&mut self) -> Result<()> {
        self.count += 1;
        if self.count & 0xfff == 0 {
            self.budget.check_deadline()?;
        }
        self.budget.check_points(self.count)
    }
}

/// Coefficient of `prod x_i^{d_i}` in `fp` via Lagrange interpolation over node sets.
pub fn coeff_lagrange<C: Field>(
    fp: &LinearFactorProduct<C>,
    d: &[u32],
    nodes: &[NodeMultiset<C>],
    budget: &Budget,
) -> Result<(C, GridStats)> {
    validate(fp, d, nodes)?;
    if let Some(i) = nodes.iter().position(|c| !c.is_set()) {
        return Err(Error::bad(format!("node multiset {i} has repeated points")));
    }
    let (groups, constants) = group_by_last_var(fp);
    let mut start = C::one();
    for &idx in &constants {
        start = start * &fp.factors()[idx].constant;
    }
    let mut stats = GridStats::default();
    if start.is_zero() {
        return Ok((C::zero(), stats));
    }
    let kappas: Vec<Vec<C>> = nodes
        .iter()
        .map(|c| {
            let pts: Vec<C> = c.entries.iter().map(|(x, _)| x.clone()).collect();
            pts.iter().map(|x| lagrange_kappa(&pts, x)).collect()
        })
        .collect();

    struct Walk<'a, C> {
        fp: &'a LinearFactorProduct<C>,
        nodes: &'a [NodeMultiset<C>],
        groups: &'a [Vec<usize>],
        kappas: &'a [Vec<C>],
        point: Vec<C>,
        sum: C,
        stats: GridStats,
        tick: Tick<'a>,
    }

    impl<C: Field> Walk<'_, C> {
        fn rec(&mut self, v: usize, prod: C, weight: C) -> Result<()> {
            if v == self.point.len() {
                self.stats.points_visited += 1;
                self.stats.nonzero_summands += 1;
                self.sum += &(prod * &weight);
                return Ok(());
            }
            for (j, (c, _)) in self.nodes[v].entries.iter().enumerate() {
                self.tick.step()?;
                self.point[v] = c.clone();
                let mut p = prod.clone();
                let mut vanished = false;
                for &idx in &self.groups[v] {
                    let val = self.fp.factors()[idx].evaluate(&self.point);
                    if val.is_zero() {
                        vanished = true;
                        break;
                    }
                    p = p * &val;
                }
                if vanished {
                    continue;
                }
                let w = weight.clone() * &self.kappas[v][j];
                self.rec(v + 1, p, w)?;
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        fp,
        nodes,
        groups: &groups,
        kappas: &kappas,
        point: vec![C::zero(); fp.nvars()],
        sum: C::zero(),
        stats,
        tick: Tick { budget, count: 0 },
    };
    walk.rec(0, start, C::one())?;
    stats = walk.stats;
    Ok((walk.sum, stats))
}

/// Coefficient of `prod x_i^{d_i}` in `fp` via Hermite interpolation over node multisets.
///
/// With all multiplicities equal to one this performs exactly the Lagrange
/// summation.
pub fn coeff_hermite<C: Field>(
    fp: &LinearFactorProduct<C>,
    d: &[u32],
    nodes: &[NodeMultiset<C>],
    budget: &Budget,
) -> Result<(C, GridStats)> {
    if nodes.iter().all(|c| c.is_set()) {
        return coeff_lagrange(fp, d, nodes, budget);
    }
    coeff_hermite_summation(fp, d, nodes, budget)
}

/// The full Hermite summation over support points and derivative orders,
/// without the shortcut to [`coeff_lagrange`] for plain sets.
pub fn coeff_hermite_summation<C: Field>(
    fp: &LinearFactorProduct<C>,
    d: &[u32],
    nodes: &[NodeMultiset<C>],
    budget: &Budget,
) -> Result<(C, GridStats)> {
    validate(fp, d, nodes)?;
    let n = fp.nvars();
    let (groups, _) = group_by_last_var(fp);
    // kappa[v][j][m] = m! * kappa(C_v, c_j, m)
    let kappas: Vec<Vec<Vec<C>>> = nodes
        .iter()
        .map(|c| {
            (0..c.entries.len())
                .map(|j| (0..c.entries[j].1).map(|m| c.raw_kappa(j, m)).collect())
                .collect()
        })
        .collect();
    // largest total derivative order still available from variables v..n
    let mut slack_suffix = vec![0u32; n + 1];
    for v in (0..n).rev() {
        slack_suffix[v] = slack_suffix[v + 1] + nodes[v].max_multiplicity() - 1;
    }
    // variables of each factor, as a bitmask
    let masks: Vec<u32> = fp
        .factors()
        .iter()
        .map(|f| f.coeffs.iter().fold(0u32, |acc, (v, _)| acc | (1 << v)))
        .collect();
    let mut constant_zero = false;
    for (f, &mask) in fp.factors().iter().zip(&masks) {
        if mask == 0 && f.constant.is_zero() {
            constant_zero = true;
        }
    }
    if constant_zero {
        return Ok((C::zero(), GridStats::default()));
    }

    struct Walk<'a, C> {
        fp: &'a LinearFactorProduct<C>,
        nodes: &'a [NodeMultiset<C>],
        groups: &'a [Vec<usize>],
        kappas: &'a [Vec<Vec<C>>],
        masks: &'a [u32],
        slack_suffix: &'a [u32],
        point: Vec<C>,
        choice: Vec<usize>,
        values: Vec<C>,
        zero_factors: Vec<usize>,
        sum: C,
        stats: GridStats,
        tick: Tick<'a>,
    }

    impl<C: Field> Walk<'_, C> {
        fn rec(&mut self, v: usize, slack: u32) -> Result<()> {
            let n = self.point.len();
            if v == n {
                self.stats.points_visited += 1;
                let mut orders = vec![0u32; n];
                return self.orders(0, 0, &mut orders);
            }
            for (j, (c, w)) in self.nodes[v].entries.iter().enumerate() {
                self.tick.step()?;
                self.point[v] = c.clone();
                self.choice[v] = j;
                let zeros_before = self.zero_factors.len();
                for &idx in &self.groups[v] {
                    let val = self.fp.factors()[idx].evaluate(&self.point);
                    if val.is_zero() {
                        self.zero_factors.push(idx);
                    }
                    self.values[idx] = val;
                }
                let slack_here = slack + w - 1;
                // each vanishing factor consumes at least one derivative order
                if self.zero_factors.len() as u32 <= slack_here + self.slack_suffix[v + 1] {
                    self.rec(v + 1, slack_here)?;
                }
                self.zero_factors.truncate(zeros_before);
            }
            Ok(())
        }

        fn orders(&mut self, v: usize, used: u32, orders: &mut Vec<u32>) -> Result<()> {
            let n = self.point.len();
            if v == n {
                if (used as usize) < self.zero_factors.len() {
                    return Ok(());
                }
                let active = orders
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &m)| if m > 0 { acc | (1 << i) } else { acc });
                if self.zero_factors.iter().any(|&f| self.masks[f] & active == 0) {
                    return Ok(());
                }
                let mut weight = C::one();
                for i in 0..n {
                    weight = weight * &self.kappas[i][self.choice[i]][orders[i] as usize];
                    if weight.is_zero() {
                        return Ok(());
                    }
                }
                let jet = jet_from_values(self.fp.factors(), &self.values, orders);
                if !jet.is_zero() {
                    self.stats.nonzero_summands += 1;
                    self.sum += &(jet * &weight);
                }
                return Ok(());
            }
            let w = self.nodes[v].entries[self.choice[v]].1;
            for m in 0..w {
                orders[v] = m;
                self.orders(v + 1, used + m, orders)?;
            }
            orders[v] = 0;
            Ok(())
        }
    }

    let mut walk = Walk {
        fp,
        nodes,
        groups: &groups,
        kappas: &kappas,
        masks: &masks,
        slack_suffix: &slack_suffix,
        point: vec![C::zero(); n],
        choice: vec![0; n],
        values: vec![C::zero(); fp.len()],
        zero_factors: Vec::new(),
        sum: C::zero(),
        stats: GridStats::default(),
        tick: Tick { budget, count: 0 },
    };
    walk.rec(0, 0)?;
    Ok((walk.sum, walk.stats))
}

/// First grid point (in lexicographic order of the node lists) where `fp` is nonzero.
pub fn nonvanishing_witness<C: Field>(
    fp: &LinearFactorProduct<C>,
    d: &[u32],
    nodes: &[NodeMultiset<C>],
    budget: &Budget,
) -> Result<Option<Vec<C>>> {
    validate(fp, d, nodes)?;
    let (groups, constants) = group_by_last_var(fp);
    if constants.iter().any(|&i| fp.factors()[i].constant.is_zero()) {
        return Ok(None);
    }

    fn rec<C: Field>(
        fp: &LinearFactorProduct<C>,
        nodes: &[NodeMultiset<C>],
        groups: &[Vec<usize>],
        point: &mut Vec<C>,
        v: usize,
        tick: &mut Tick<'_>,
    ) -> Result<bool> {
        if v == point.len() {
            return Ok(true);
        }
        for (c, _) in &nodes[v].entries {
            tick.step()?;
            point[v] = c.clone();
            if groups[v].iter().all(|&i| !fp.factors()[i].evaluate(point).is_zero())
                && rec(fp, nodes, groups, point, v + 1, tick)?
            {
                return Ok(true);
            }
        }
        Ok(false)
    }

    let mut point = vec![C::zero(); fp.nvars()];
    let mut tick = Tick { budget, count: 0 };
    Ok(rec(fp, nodes, &groups, &mut point, 0, &mut tick)?.then_some(point))
}
