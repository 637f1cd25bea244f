use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::presentation::QuadraticPresentation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Upper bound on the dimension of the working space `A_{d-1} ⊗ V`.
pub const WORD_BUDGET: usize = 50_000;

/// Coefficients `h₀, …, h_D` of a truncated Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPrefix {
    pub coeffs: Vec<u64>,
}

impl HilbertPrefix {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficientwise product with `(1 − t^k)^r`, truncated to the same degree.
    pub fn times_one_minus_t_pow(&self, k: usize, r: usize) -> Vec<i64> {
        let mut v: Vec<i64> = self.coeffs.iter().map(|&x| x as i64).collect();
        for _ in 0..r {
            for d in (k..v.len()).rev() {
                v[d] -= v[d - k];
            }
        }
        v
    }

    pub fn as_signed(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&x| x as i64).collect()
    }
}

/// One degree of the normal-form engine: `A_d = (A_{d-1} ⊗ V) / image of (A_{d-2} ⊗ R)`.
#[derive(Clone, Debug)]
struct Level {
    /// Dimension of `A_{d-1} ⊗ V`.
    width: usize,
    /// Reduced echelon rows keyed by pivot column.
    pivots: BTreeMap<usize, Vec<Scalar>>,
    /// Position of each free column in the basis of `A_d`, `None` for pivots.
    free_index: Vec<Option<usize>>,
    dim: usize,
}

impl Level {
    fn identity(width: usize) -> Self {
        Self { width, pivots: BTreeMap::new(), free_index: (0..width).map(Some).collect(), dim: width }
    }

    /// Image in `A_d` of a vector of `A_{d-1} ⊗ V`.
    fn reduce(&self, w: &[Scalar]) -> Vec<Scalar> {
        let mut w = w.to_vec();
        for (&p, row) in &self.pivots {
            if !w[p].is_zero() {
                let c = w[p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, x) in w.into_iter().enumerate() {
            if let Some(k) = self.free_index[i] {
                out[k] = x;
            }
        }
        out
    }

    /// Image in `A_d` of the basis vector `i` of `A_{d-1} ⊗ V`.
    fn reduce_unit(&self, i: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        match self.free_index[i] {
            Some(k) => out[k] = Scalar::one(),
            None => {
                for (j, r) in self.pivots[&i].iter().enumerate() {
                    if let Some(k) = self.free_index[j] {
                        out[k] = -r.clone();
                    }
                }
            }
        }
        out
    }
}

/// Degreewise normal forms in a quadratic algebra, built up to a fixed degree.
#[derive(Clone, Debug)]
pub struct HilbertEngine {
    n: usize,
    relations: Vec<Matrix<Scalar>>,
    levels: Vec<Level>,
}

impl HilbertEngine {
    /// Engine for `T(V)/(R + extra)`, computed through degree `max_degree`.
    pub fn new(p: &QuadraticPresentation, extra: &[Matrix<Scalar>], max_degree: usize) -> Result<Self> {
        let n = p.n();
        let mut relations = p.relations().to_vec();
        for e in extra {
            if e.rows() != n || e.cols() != n {
                return Err(Error::DimensionMismatch("extra quadric of the wrong size".into()));
            }
            relations.push(e.clone());
        }
        let mut eng = Self { n, relations, levels: vec![Level::identity(1)] };
        if max_degree >= 1 {
            eng.levels.push(Level::identity(n));
        }
        for d in 2..=max_degree {
            eng.push_level(d)?;
        }
        Ok(eng)
    }

    fn push_level(&mut self, d: usize) -> Result<()> {
        let n = self.n;
        let prev = &self.levels[d - 1];
        let width = prev.dim * n;
        if width > WORD_BUDGET {
            return Err(Error::DegreeTooLarge { degree: d, words: width, budget: WORD_BUDGET });
        }
        let below = self.levels[d - 2].dim;
        let mut rows: Vec<Vec<Scalar>> = vec![];
        for u in 0..below {
            let images: Vec<Vec<Scalar>> = (0..n).map(|a| prev.reduce_unit(u * n + a)).collect();
            for r in &self.relations {
                let mut row = vec![Scalar::zero(); width];
                for a in 0..n {
                    for b in 0..n {
                        let c = r.get(a, b);
                        if c.is_zero() {
                            continue;
                        }
                        for (k, v) in images[a].iter().enumerate() {
                            if !v.is_zero() {
                                row[k * n + b] += c * v;
                            }
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let level = if rows.is_empty() {
            Level::identity(width)
        } else {
            let (m, piv) = Matrix::from_rows(rows).expect("rectangular").rref();
            let pivots: BTreeMap<usize, Vec<Scalar>> =
                piv.iter().enumerate().map(|(r, &c)| (c, m.row(r).to_vec())).collect();
            let mut free_index = vec![None; width];
            let mut k = 0;
            for (i, slot) in free_index.iter_mut().enumerate() {
                if !pivots.contains_key(&i) {
                    *slot = Some(k);
                    k += 1;
                }
            }
            Level { width, pivots, free_index, dim: k }
        };
        debug_assert_eq!(level.width, width);
        self.levels.push(level);
        Ok(())
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dims(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.dim as u64).collect()
    }

    /// Normal form of a tensor given as word → coefficient.
    pub fn normal_form(&self, tensor: &[(Vec<usize>, Scalar)]) -> Result<Vec<Scalar>> {
        let d = tensor.first().map_or(0, |(w, _)| w.len());
        if d > self.max_degree() {
            return Err(Error::DegreeTooLarge { degree: d, words: 0, budget: self.max_degree() });
        }
        let mut acc = vec![Scalar::zero(); self.levels[d].dim];
        for (w, c) in tensor {
            if w.len() != d {
                return Err(Error::Invalid("tensor is not homogeneous".into()));
            }
            let mut v = vec![Scalar::one()];
            for (k, &letter) in w.iter().enumerate() {
                let level = &self.levels[k + 1];
                let mut lifted = vec![Scalar::zero(); level.width];
                for (i, x) in v.iter().enumerate() {
                    lifted[i * self.n + letter] = x.clone();
                }
                v = level.reduce(&lifted);
            }
            for (a, x) in acc.iter_mut().zip(v) {
                *a += c * x;
            }
        }
        Ok(acc)
    }

    /// One representative word per basis element of `A_d`, in basis order.
    pub fn basis_words(&self, d: usize) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![vec![]];
        }
        let below = self.basis_words(d - 1);
        let level = &self.levels[d];
        let mut out = vec![vec![]; level.dim];
        for (i, slot) in level.free_index.iter().enumerate() {
            if let Some(k) = slot {
                let mut w = below[i / self.n].clone();
                w.push(i % self.n);
                out[*k] = w;
            }
        }
        out
    }

    pub fn is_zero(&self, tensor: &[(Vec<usize>, Scalar)]) -> Result<bool> {
        Ok(self.normal_form(tensor)?.iter().all(Zero::is_zero))
    }
}

/// `h_d = dim (T(V)/(R ∪ Q))_d` for `d ≤ D`.
pub fn hilbert_truncated(p: &QuadraticPresentation, quotient: &[Matrix<Scalar>], d: usize) -> Result<HilbertPrefix> {
    Ok(HilbertPrefix { coeffs: HilbertEngine::new(p, quotient, d)?.dims() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::SymMatrixSeq;
    use crate::quadratic::{build_sf, quadratic_dual};
    use crate::scalar::int;

    fn square(n: usize, i: usize) -> Matrix<Scalar> {
        Matrix::from_fn(n, n, |a, b| if a == i && b == i { int(1) } else { int(0) })
    }

    #[test]
    fn polynomial_growth_for_skew_family() {
        let s = build_sf(&SymMatrixSeq::skew(3)).unwrap();
        assert_eq!(hilbert_truncated(&s, &[], 6).unwrap().coeffs, vec![1, 3, 6, 10, 15, 21, 28]);
        assert_eq!(hilbert_truncated(&s, &[square(3, 0)], 6).unwrap().coeffs, vec![1, 3, 5, 7, 9, 11, 13]);
    }

    #[test]
    fn exterior_algebra() {
        let e = QuadraticPresentation::exterior(3);
        assert_eq!(hilbert_truncated(&e, &[], 4).unwrap().coeffs, vec![1, 3, 3, 1, 0]);
    }

    #[test]
    fn free_algebra_and_budget() {
        let f = QuadraticPresentation::free(2);
        assert_eq!(hilbert_truncated(&f, &[], 5).unwrap().coeffs, vec![1, 2, 4, 8, 16, 32]);
        assert!(matches!(hilbert_truncated(&QuadraticPresentation::free(3), &[], 11), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn normal_form_detects_ideal_membership() {
        let s = build_sf(&SymMatrixSeq::skew(3)).unwrap();
        let eng = HilbertEngine::new(&s, &[], 3).unwrap();
        // x1 x2 + x2 x1 is a relation; x1 x2 x3 + x2 x1 x3 lies in the ideal
        assert!(eng.is_zero(&[(vec![0, 1, 2], int(1)), (vec![1, 0, 2], int(1))]).unwrap());
        assert!(!eng.is_zero(&[(vec![0, 1, 2], int(1))]).unwrap());
    }

    #[test]
    fn koszul_reciprocity_for_families() {
        for (a, b, c) in [(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 2, 2), (-1, -1, -1)] {
            let s = build_sf(&SymMatrixSeq::family(&int(a), &int(b), &int(c))).unwrap();
            let h = hilbert_truncated(&s, &[], 6).unwrap().as_signed();
            let hd = hilbert_truncated(&quadratic_dual(&s), &[], 6).unwrap().as_signed();
            assert_eq!(h, vec![1, 3, 6, 10, 15, 21, 28]);
            let prod: Vec<i64> = (0..=6)
                .map(|k| (0..=k).map(|i| hd[i] * h[k - i] * if (k - i) % 2 == 0 { 1 } else { -1 }).sum())
                .collect();
            assert_eq!(prod, vec![1, 0, 0, 0, 0, 0, 0]);
        }
    }
}
