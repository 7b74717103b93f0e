use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{BigRat, HasQ, QFrac, QPoly, Ring};
use crate::laurent::{LaurentPoly, LinearFactorProduct, LinearForm};

/// Nonnegative integer matrix with zero diagonal, rows and columns indexed `0..=n`.
///
/// Entry `beta[i][j]` is the exponent of `(1 - x_i/x_j)` in the associated
/// Laurent product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct ParamMatrix {
    beta: Vec<Vec<u32>>,
}

impl TryFrom<Vec<Vec<u32>>> for ParamMatrix {
    type Error = Error;

    fn try_from(beta: Vec<Vec<u32>>) -> Result<Self> {
        ParamMatrix::new(beta)
    }
}

impl From<ParamMatrix> for Vec<Vec<u32>> {
    fn from(m: ParamMatrix) -> Self {
        m.beta
    }
}

impl ParamMatrix {
    pub fn new(beta: Vec<Vec<u32>>) -> Result<Self> {
        let size = beta.len();
        if size < 2 {
            return Err(Error::bad("matrix must be at least 2x2"));
        }
        if size > crate::laurent::MAX_VARS {
            return Err(Error::bad("matrix too large"));
        }
        for (i, row) in beta.iter().enumerate() {
            if row.len() != size {
                return Err(Error::bad("matrix must be square"));
            }
            if row[i] != 0 {
                return Err(Error::bad("matrix diagonal must be zero"));
            }
        }
        Ok(ParamMatrix { beta })
    }

    pub fn zero(n: usize) -> Self {
        ParamMatrix {
            beta: vec![vec![0; n + 1]; n + 1],
        }
    }

    /// `n`, one less than the matrix size.
    pub fn n(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.beta[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.beta
    }

    pub fn column_sum(&self, j: usize) -> u32 {
        self.beta.iter().map(|row| row[j]).sum()
    }

    pub fn column_sums(&self) -> Vec<u32> {
        (0..=self.n()).map(|j| self.column_sum(j)).collect()
    }

    /// Matrix with rows and columns relabelled by `perm`: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let size = self.beta.len();
        let mut seen = vec![false; size];
        if perm.len() != size || perm.iter().any(|&p| p >= size || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::bad("not a permutation of the matrix indices"));
        }
        let mut beta = vec![vec![0; size]; size];
        for i in 0..size {
            for j in 0..size {
                beta[perm[i]][perm[j]] = self.beta[i][j];
            }
        }
        Ok(ParamMatrix { beta })
    }

    /// Dyson matrix: `beta[i][j] = a_i` for `1 <= i != j <= n`.
    pub fn dyson(a: &[u32]) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::bad("dyson needs at least one exponent"));
        }
        let n = a.len();
        let mut m = ParamMatrix::zero(n);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    m.beta[i][j] = a[i - 1];
                }
            }
        }
        Ok(m)
    }

    /// Morris matrix: row 0 is `b`, column 0 is `a`, `k` elsewhere off the diagonal.
    pub fn morris(n: usize, a: u32, b: u32, k: u32) -> Result<Self> {
        ParamMatrix::aomoto_forrester(n, n, 0, a, b, k)
    }

    /// Overlay of the Aomoto and Forrester matrices: the last `m` rows of
    /// column 0 carry `a + 1`, and the block of indices above `n0` carries `k + 1`.
    pub fn aomoto_forrester(n: usize, n0: usize, m: usize, a: u32, b: u32, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::bad("n must be positive"));
        }
        if n0 > n || m > n {
            return Err(Error::bad("need n0 <= n and m <= n"));
        }
        let mut mat = ParamMatrix::zero(n);
        for j in 1..=n {
            mat.beta[0][j] = b;
            mat.beta[j][0] = a + u32::from(j > n - m);
            for i in 1..=n {
                if i != j {
                    mat.beta[i][j] = k + u32::from(i > n0 && j > n0);
                }
            }
        }
        Ok(mat)
    }

    /// Matrix of the q-Kadell product: Dyson with `a_n + 1` in row `n`, columns `1..=m`.
    pub fn kadell(a: &[u32], m: usize) -> Result<Self> {
        let n = a.len();
        if m >= n {
            return Err(Error::bad("kadell needs m < n"));
        }
        let mut mat = ParamMatrix::dyson(a)?;
        for j in 1..=m {
            mat.beta[n][j] += 1;
        }
        Ok(mat)
    }

    /// Dyson matrix with `beta[r][s]` raised by one for every `s` in `set` (1-based indices).
    pub fn dyson_with_row_bumps(a: &[u32], r: usize, set: &[usize]) -> Result<Self> {
        let mut mat = ParamMatrix::dyson(a)?;
        for &s in set {
            if s == 0 || s > a.len() || r == 0 || r > a.len() {
                return Err(Error::bad("index out of range"));
            }
            if s != r {
                mat.beta[r][s] += 1;
            }
        }
        Ok(mat)
    }

    /// Factors `(1 - x_i/x_j)` of the plain product with `x_0 = 1`, over variables `x_1..x_n`.
    pub fn laurent_factors(&self) -> Vec<LaurentPoly<BigRat>> {
        let n = self.n();
        let mut out = Vec::new();
        for (i, j) in self.ordered_pairs() {
            for _ in 0..self.beta[i][j] {
                out.push(one_minus_ratio(n, i, j, BigRat::from_int(1)));
            }
        }
        out
    }

    /// Factors of the q-product `(x_i/x_j)_{beta_ij} (q x_j/x_i)_{beta_ji}` with `x_0 = 1`.
    pub fn q_laurent_factors(&self) -> Vec<LaurentPoly<QPoly>> {
        let n = self.n();
        let mut out = Vec::new();
        for (i, j) in self.ordered_pairs().filter(|(i, j)| i < j) {
            for t in 0..self.beta[i][j] {
                out.push(one_minus_ratio(n, i, j, QPoly::q_power(t as usize)));
            }
            for t in 1..=self.beta[j][i] {
                out.push(one_minus_ratio(n, j, i, QPoly::q_power(t as usize)));
            }
        }
        out
    }

    /// Pairs `(i, j)`, `i != j`, interleaving each pair with its reverse so
    /// partial products stay balanced.
    fn ordered_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let size = self.beta.len();
        (0..size).flat_map(move |j| (0..j).flat_map(move |i| [(i, j), (j, i)]))
    }

    /// Polynomial whose coefficient of `prod x_j^{B_j}` (column sums) is the
    /// constant term of the q-product:
    /// `prod_{i<j} prod_{t<beta_ij} (x_j - q^t x_i) prod_{t=1..beta_ji} (x_i - q^t x_j)`.
    pub fn fq_polynomial(&self) -> LinearFactorProduct<QFrac> {
        let size = self.beta.len();
        let mut fp = LinearFactorProduct::new(size);
        for j in 0..size {
            for i in 0..j {
                for t in 0..self.beta[i][j] {
                    fp.push(LinearForm::scaled_difference(j, i, QFrac::q_pow(t as usize)))
                        .expect("indices in range");
                }
                for t in 1..=self.beta[j][i] {
                    fp.push(LinearForm::scaled_difference(i, j, QFrac::q_pow(t as usize)))
                        .expect("indices in range");
                }
            }
        }
        fp
    }

    /// Additive analogue of [`Self::fq_polynomial`]:
    /// `prod_{i<j} prod_{t<beta_ij} (x_j - x_i - t) prod_{t=1..beta_ji} (x_i - x_j - t)`.
    /// Its top homogeneous part is `prod_{i != j} (x_j - x_i)^{beta_ij}`.
    pub fn additive_polynomial(&self) -> LinearFactorProduct<BigRat> {
        let size = self.beta.len();
        let mut fp = LinearFactorProduct::new(size);
        for j in 0..size {
            for i in 0..j {
                for t in 0..self.beta[i][j] {
                    fp.push(LinearForm::shifted_difference(j, i, BigRat::from_int(t as i64)))
                        .expect("indices in range");
                }
                for t in 1..=self.beta[j][i] {
                    fp.push(LinearForm::shifted_difference(i, j, BigRat::from_int(t as i64)))
                        .expect("indices in range");
                }
            }
        }
        fp
    }
}

/// `1 - c x_i / x_j` in the variables `x_1..x_n`, where index 0 stands for the constant 1.
pub(crate) fn one_minus_ratio<C: Ring>(n: usize, i: usize, j: usize, c: C) -> LaurentPoly<C> {
    let mut e = vec![0i32; n];
    if i > 0 {
        e[i - 1] += 1;
    }
    if j > 0 {
        e[j - 1] -= 1;
    }
    LaurentPoly::one(n).sub(&LaurentPoly::monomial(n, &e, c).expect("small exponents"))
}
