use num_traits::{One, Zero};

use crate::clifford::SymMatrixSeq;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `T(V)/(R)` with `R` spanned by relations `Σ cᵢⱼ xᵢ⊗xⱼ`, each stored as its `n×n`
/// coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation {
    n: usize,
    commutative: bool,
    relations: Vec<Matrix<Scalar>>,
}

pub(crate) fn flatten(m: &Matrix<Scalar>) -> Vec<Scalar> {
    m.entries().to_vec()
}

pub(crate) fn unflatten(n: usize, v: &[Scalar]) -> Matrix<Scalar> {
    Matrix::from_fn(n, n, |i, j| v[i * n + j].clone())
}

/// `xᵢxⱼ − xⱼxᵢ` as a coefficient matrix.
pub fn commutator(n: usize, i: usize, j: usize) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, Scalar::one());
    m.set(j, i, -Scalar::one());
    m
}

/// `xᵢxⱼ + xⱼxᵢ` (or `2xᵢ²` when `i = j`).
pub fn anticommutator(n: usize, i: usize, j: usize) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, Scalar::one());
    let v = m.get(j, i).clone() + Scalar::one();
    m.set(j, i, v);
    m
}

impl QuadraticPresentation {
    /// Validates shapes and linear independence; the commutative flag is derived.
    pub fn new(n: usize, relations: Vec<Matrix<Scalar>>) -> Result<Self> {
        for r in &relations {
            if r.rows() != n || r.cols() != n {
                return Err(Error::DimensionMismatch(format!("relation of shape {}x{} for {n} generators", r.rows(), r.cols())));
            }
        }
        let p = Self { n, commutative: false, relations };
        if p.span_rank() != p.relations.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(p.with_flag())
    }

    /// Keeps a basis of the span of the given relations.
    pub fn from_spanning(n: usize, relations: Vec<Matrix<Scalar>>) -> Result<Self> {
        for r in &relations {
            if r.rows() != n || r.cols() != n {
                return Err(Error::DimensionMismatch(format!("relation of shape {}x{} for {n} generators", r.rows(), r.cols())));
            }
        }
        let mut basis: Vec<Matrix<Scalar>> = vec![];
        let mut rows: Vec<Vec<Scalar>> = vec![];
        for r in relations {
            rows.push(flatten(&r));
            if crate::matrix::rank_of(&rows) > basis.len() {
                basis.push(r);
            } else {
                rows.pop();
            }
        }
        Ok(Self { n, commutative: false, relations: basis }.with_flag())
    }

    fn with_flag(mut self) -> Self {
        self.commutative = self.n < 2
            || (0..self.n).all(|i| (i + 1..self.n).all(|j| self.contains(&commutator(self.n, i, j))));
        self
    }

    /// The free algebra on `n` generators.
    pub fn free(n: usize) -> Self {
        Self { n, commutative: n < 2, relations: vec![] }
    }

    /// `k[u₁, …, uₙ]`.
    pub fn polynomial(n: usize) -> Self {
        Self::commutative_with_quadrics(n, &[]).expect("commutators are independent")
    }

    /// Exterior algebra: all anticommutators and squares.
    pub fn exterior(n: usize) -> Self {
        let rels = (0..n).flat_map(|i| (i..n).map(move |j| anticommutator(n, i, j))).collect();
        Self::new(n, rels).expect("independent")
    }

    /// Commutators together with the given quadrics (symmetric coefficient matrices).
    pub fn commutative_with_quadrics(n: usize, quadrics: &[Matrix<Scalar>]) -> Result<Self> {
        let mut rels: Vec<Matrix<Scalar>> = (0..n).flat_map(|i| (i + 1..n).map(move |j| commutator(n, i, j))).collect();
        rels.extend(quadrics.iter().cloned());
        Self::new(n, rels)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn relations(&self) -> &[Matrix<Scalar>] {
        &self.relations
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    fn span_rank(&self) -> usize {
        crate::matrix::rank_of(&self.relations.iter().map(flatten).collect::<Vec<_>>())
    }

    pub fn contains(&self, m: &Matrix<Scalar>) -> bool {
        if m.is_zero() {
            return true;
        }
        let mut rows: Vec<Vec<Scalar>> = self.relations.iter().map(flatten).collect();
        let before = crate::matrix::rank_of(&rows);
        rows.push(flatten(m));
        crate::matrix::rank_of(&rows) == before
    }

    pub fn same_span(&self, o: &Self) -> bool {
        self.n == o.n
            && self.relations.len() == o.relations.len()
            && o.relations.iter().all(|r| self.contains(r))
    }

    /// The presentation of the quotient by extra quadratic elements.
    pub fn quotient(&self, extra: &[Matrix<Scalar>]) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        Self::from_spanning(self.n, rels)
    }

    /// Symmetric parts of the relations modulo commutators: the defining quadrics of a
    /// commutative presentation.
    pub fn quadrics(&self) -> Vec<Matrix<Scalar>> {
        let n = self.n;
        let sym: Vec<Matrix<Scalar>> = self
            .relations
            .iter()
            .map(|r| Matrix::from_fn(n, n, |i, j| (r.get(i, j).clone() + r.get(j, i).clone()) / Scalar::from_integer(2.into())))
            .filter(|m| !m.is_zero())
            .collect();
        let mut basis: Vec<Matrix<Scalar>> = vec![];
        let mut rows: Vec<Vec<Scalar>> = vec![];
        for m in sym {
            rows.push(flatten(&m));
            if crate::matrix::rank_of(&rows) > basis.len() {
                basis.push(m);
            } else {
                rows.pop();
            }
        }
        basis
    }
}

/// Trace pairing `⟨a, b⟩ = Σ aᵢⱼ bᵢⱼ`.
pub fn pairing(a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Scalar {
    a.entries().iter().zip(b.entries()).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// `T(V*)/(R^⊥)`.
pub fn quadratic_dual(p: &QuadraticPresentation) -> QuadraticPresentation {
    let n = p.n();
    let perp: Vec<Matrix<Scalar>> = if p.relations.is_empty() {
        (0..n * n).map(|k| Matrix::from_fn(n, n, |i, j| if i * n + j == k { Scalar::one() } else { Scalar::zero() })).collect()
    } else {
        Matrix::from_rows(p.relations.iter().map(flatten).collect())
            .expect("rectangular")
            .nullspace()
            .iter()
            .map(|v| unflatten(n, v))
            .collect()
    };
    QuadraticPresentation::new(n, perp).expect("nullspace basis is independent")
}

/// `B(F) = k[u]/(fₘ)` with `fₘ = Σ (Fₘ)ᵢⱼ uᵢuⱼ`.
pub fn build_bf(f: &SymMatrixSeq) -> QuadraticPresentation {
    let n = f.n();
    let mut rels: Vec<Matrix<Scalar>> = (0..n).flat_map(|i| (i + 1..n).map(move |j| commutator(n, i, j))).collect();
    rels.extend(f.mats().iter().cloned());
    QuadraticPresentation::from_spanning(n, rels).expect("square matrices")
}

/// `S^F` with relations `xᵢxⱼ + xⱼxᵢ − Σₘ (Fₘ)ᵢⱼ xₘ²` for `i < j`.
pub fn build_sf(f: &SymMatrixSeq) -> Result<QuadraticPresentation> {
    f.require_square()?;
    let n = f.n();
    let mut rels = vec![];
    for i in 0..n {
        for j in i + 1..n {
            let mut m = anticommutator(n, i, j);
            for (k, fm) in f.mats().iter().enumerate() {
                let v = m.get(k, k).clone() - fm.get(i, j).clone();
                m.set(k, k, v);
            }
            rels.push(m);
        }
    }
    QuadraticPresentation::new(n, rels)
}
