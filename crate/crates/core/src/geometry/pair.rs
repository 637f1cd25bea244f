use num_traits::Zero;

use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::polymatrix::PolyMatrix;
use crate::quadratic::QuadraticPresentation;
use crate::scalar::QuadExt;

/// The point variety of a quadratic algebra with as many relations as generators,
/// together with the automorphism read off the bilinear relations.
#[derive(Clone, Debug, PartialEq)]
pub struct PointVariety {
    n: usize,
    /// Row `k` holds the coefficients of relation `k` after splitting off the right factor.
    m: PolyMatrix,
    curve: MultiPoly,
}

/// `M(x)` with `M(x)_{kj} = Σᵢ c_{k,ij} xᵢ`, so the relations are `M(x)·(x₁,…,xₙ)ᵗ`.
pub fn multilinearize(p: &QuadraticPresentation) -> Result<PointVariety> {
    let n = p.n();
    if p.relation_count() != n {
        return Err(Error::RelationCountMismatch { n, found: p.relation_count() });
    }
    let rels = p.relations();
    let m = PolyMatrix::from_fn(n, n, |k, j| {
        let coeffs: Vec<_> = (0..n).map(|i| rels[k].get(i, j).clone()).collect();
        MultiPoly::linear(&coeffs)
    })?;
    let curve = m.det()?;
    Ok(PointVariety { n, m, curve })
}

impl PointVariety {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.m
    }

    /// `det M(x)`.
    pub fn curve(&self) -> &MultiPoly {
        &self.curve
    }

    pub fn contains(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.curve.eval(p.coords())?.is_zero())
    }

    pub fn matrix_at(&self, p: &ProjPoint) -> Result<Matrix<QuadExt>> {
        self.m.eval(p.coords())
    }

    /// The unique `q` with `M(p)·q = 0`.
    pub fn sigma(&self, p: &ProjPoint) -> Result<ProjPoint> {
        if !self.contains(p)? {
            return Err(Error::NotOnCurve(p.to_string()));
        }
        let ker = self.matrix_at(p)?.nullspace();
        if ker.len() != 1 {
            return Err(Error::NonG1Point(format!("{p}: kernel of dimension {}", ker.len())));
        }
        ProjPoint::new(ker.into_iter().next().unwrap())
    }

    /// `p ↦ p ∗ σ(p)`.
    pub fn phi(&self, p: &ProjPoint) -> Result<ProjPoint> {
        phi_map(p, &self.sigma(p)?)
    }

    /// Whether `σ(p) = p`, i.e. `M(p)·p = 0`.
    pub fn is_fixed(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.matrix_at(p)?.mul_vec(p.coords()).iter().all(Zero::is_zero))
    }

    /// The vector `M(x)·x` of quadrics; its common zeros on the curve are the fixed points.
    pub fn fixed_locus(&self) -> Result<Vec<MultiPoly>> {
        let xs: Vec<MultiPoly> = (0..self.n).map(|i| MultiPoly::var(self.n, i)).collect();
        self.m.mul_vec(&xs)
    }
}

pub fn phi_map(p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
    p.hadamard(q)
}
