//! Matrices with polynomial entries: determinants, minors and resultants.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::scalar::{Field, Scalar};

/// Largest size handled by fraction-free elimination; larger matrices use cofactor expansion.
pub const BAREISS_MAX: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
    symmetric: bool,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        let nvars = entries[0].nvars();
        if let Some(e) = entries.iter().find(|e| e.nvars() != nvars) {
            return Err(Error::VarCountMismatch { expected: nvars, found: e.nvars() });
        }
        Ok(Self { rows, cols, nvars, entries, symmetric: false })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> MultiPoly) -> Result<Self> {
        let mut v = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                v.push(f(i, j));
            }
        }
        Self::new(rows, cols, v)
    }

    /// Sets the symmetric flag after verifying symmetry.
    pub fn into_symmetric(mut self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("symmetric matrix must be square".into()));
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::NotSymmetric { index: 0 });
                }
            }
        }
        self.symmetric = true;
        Ok(self)
    }

    /// The linear matrix form Σ yₘ Mₘ in variables y₁..y_r.
    pub fn linear_form(mats: &[Matrix<Scalar>]) -> Result<Self> {
        let r = mats.len();
        let first = mats.first().ok_or_else(|| Error::Invalid("empty matrix sequence".into()))?;
        let (rows, cols) = (first.rows(), first.cols());
        if mats.iter().any(|m| m.rows() != rows || m.cols() != cols) {
            return Err(Error::DimensionMismatch("matrices of different shapes".into()));
        }
        let pm = Self::from_fn(rows, cols, |i, j| {
            let c: Vec<Scalar> = mats.iter().map(|m| m.get(i, j).clone()).collect();
            MultiPoly::linear(&c)
        })?;
        debug_assert_eq!(pm.nvars, r);
        Ok(if mats.iter().all(Matrix::is_symmetric) { pm.into_symmetric()? } else { pm })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn eval<K: Field>(&self, point: &[K]) -> Result<Matrix<K>> {
        let vals = self.entries.iter().map(|e| e.eval(point)).collect::<Result<Vec<K>>>()?;
        Matrix::from_rows(vals.chunks(self.cols).map(<[K]>::to_vec).collect())
    }

    pub fn mul_vec(&self, v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        (0..self.rows)
            .map(|i| {
                (0..self.cols).try_fold(MultiPoly::zero(self.nvars), |acc, j| acc.try_add(&self.get(i, j).try_mul(&v[j])?))
            })
            .collect()
    }

    /// Replaces every variable by a polynomial (all in a common ring).
    pub fn compose(&self, values: &[MultiPoly]) -> Result<Self> {
        let e = self.entries.iter().map(|p| p.compose(values)).collect::<Result<Vec<_>>>()?;
        let mut m = Self::new(self.rows, self.cols, e)?;
        m.symmetric = self.symmetric;
        Ok(m)
    }

    fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Vec<Vec<MultiPoly>> {
        rs.iter().map(|&i| cs.iter().map(|&j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn det(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(det_of(self.submatrix(&idx, &idx), self.nvars))
    }

    /// All `s×s` minors, ordered lexicographically by (row set, column set).
    pub fn minors(&self, s: usize) -> Result<Vec<MultiPoly>> {
        let n = self.rows;
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("minors of a non-square matrix".into()));
        }
        if s == 0 || s > n {
            return Err(Error::MinorSizeOutOfRange { s, n });
        }
        let sets = subsets(n, s);
        let mut out = Vec::with_capacity(sets.len() * sets.len());
        for rs in &sets {
            for cs in &sets {
                out.push(det_of(self.submatrix(rs, cs), self.nvars));
            }
        }
        Ok(out)
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

fn det_of(m: Vec<Vec<MultiPoly>>, nvars: usize) -> MultiPoly {
    if m.len() <= BAREISS_MAX {
        bareiss(m, nvars)
    } else {
        cofactor(&m, nvars)
    }
}

fn bareiss(mut m: Vec<Vec<MultiPoly>>, nvars: usize) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut sign = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                None => return MultiPoly::zero(nvars),
                Some(p) => {
                    m.swap(k, p);
                    sign = !sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn cofactor(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = m.len();
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    dp[0] = Some(MultiPoly::one(nvars));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        if cur.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(cur);
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 || m[row][j].is_zero() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let mut t = &cur * &m[row][j];
            if above % 2 == 1 {
                t = -t;
            }
            let slot = &mut dp[mask | (1 << j)];
            *slot = Some(match slot.take() {
                None => t,
                Some(s) => &s + &t,
            });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| MultiPoly::zero(nvars))
}

/// Determinant of the Sylvester matrix of two coefficient lists, highest degree first.
pub fn sylvester_resultant(p: &[MultiPoly], q: &[MultiPoly], nvars: usize) -> MultiPoly {
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let size = dp + dq;
    if size == 0 {
        return MultiPoly::one(nvars);
    }
    let mut m = vec![vec![MultiPoly::zero(nvars); size]; size];
    for r in 0..dq {
        for (k, c) in p.iter().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..dp {
        for (k, c) in q.iter().enumerate() {
            m[dq + r][r + k] = c.clone();
        }
    }
    det_of(m, nvars)
}

/// Resultant of `p` and `q` with respect to variable `var`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if p.nvars() != q.nvars() {
        return Err(Error::VarCountMismatch { expected: p.nvars(), found: q.nvars() });
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (a, b) = (p.degree_in(var).unwrap_or(0), q.degree_in(var).unwrap_or(0));
    if a == 0 && b == 0 {
        return Err(Error::ConstantInVariable);
    }
    let mut pc = p.coeffs_in(var);
    let mut qc = q.coeffs_in(var);
    pc.reverse();
    qc.reverse();
    Ok(sylvester_resultant(&pc, &qc, p.nvars()))
}

/// Checks a square matrix for identically vanishing determinant quickly when all entries are zero.
pub fn is_zero_matrix(m: &PolyMatrix) -> bool {
    m.entries.iter().all(MultiPoly::is_zero)
}
