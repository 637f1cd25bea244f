use num_traits::{One, Zero};

use super::point::{dedup_points, ProjPoint};
use super::zerodim::{Count, PointSet};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::scalar::{QuadExt, Scalar};
use crate::unipoly::BinaryForm;

/// The projective linear subspace cut out by linear forms, given by a basis of its cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLocus {
    pub n: usize,
    pub basis: Vec<Vec<Scalar>>,
}

impl LinearLocus {
    /// Common zeros of the linear forms `Σⱼ forms[i][j] xⱼ`.
    pub fn cut_out(n: usize, forms: &[Vec<Scalar>]) -> Result<Self> {
        if forms.iter().any(|f| f.len() != n) {
            return Err(Error::DimensionMismatch("linear form of the wrong length".into()));
        }
        let basis = if forms.is_empty() {
            Matrix::<Scalar>::identity(n).to_rows()
        } else {
            Matrix::from_rows(forms.to_vec())?.nullspace()
        };
        Ok(Self { n, basis })
    }

    /// Projective dimension plus one.
    pub fn cone_dim(&self) -> usize {
        self.basis.len()
    }

    /// `t·b₁ + s·b₂` as polynomials in `(t, s)`; only for lines.
    fn parametrization(&self) -> Vec<MultiPoly> {
        let k = self.basis.len();
        (0..self.n)
            .map(|j| {
                let coeffs: Vec<Scalar> = (0..k).map(|i| self.basis[i][j].clone()).collect();
                MultiPoly::linear(&coeffs)
            })
            .collect()
    }

    /// A homogeneous polynomial restricted to a line.
    pub fn restrict(&self, p: &MultiPoly) -> Result<BinaryForm> {
        if self.cone_dim() != 2 {
            return Err(Error::Invalid("restriction to binary forms needs a line".into()));
        }
        BinaryForm::from_multi(&p.compose(&self.parametrization())?)
    }

    pub fn point_at(&self, coords: &[QuadExt]) -> Result<ProjPoint> {
        let v: Vec<QuadExt> = (0..self.n)
            .map(|j| {
                coords
                    .iter()
                    .zip(&self.basis)
                    .fold(QuadExt::zero(), |acc, (c, b)| acc + c.clone() * QuadExt::rational(b[j].clone()))
            })
            .collect();
        ProjPoint::new(v)
    }

    /// Common zeros on this locus of homogeneous polynomials. Lines, points and the empty set only.
    pub fn common_zeros(&self, polys: &[MultiPoly]) -> Result<PointSet> {
        match self.cone_dim() {
            0 => Ok(PointSet::empty()),
            1 => {
                let p = ProjPoint::rational(&self.basis[0])?;
                for f in polys {
                    if !f.eval(p.coords())?.is_zero() {
                        return Ok(PointSet::empty());
                    }
                }
                Ok(PointSet::from_points(vec![p]))
            }
            2 => {
                let mut g: Option<BinaryForm> = None;
                for f in polys {
                    let b = self.restrict(f)?;
                    g = Some(match g {
                        None => b,
                        Some(h) => h.gcd(&b),
                    });
                }
                let Some(g) = g.filter(|g| !g.is_zero()) else {
                    return Ok(PointSet::infinite());
                };
                let count = g.distinct_root_count().expect("nonzero form");
                match g.roots() {
                    Ok(roots) => {
                        let pts = roots.iter().map(|r| self.point_at(r)).collect::<Result<Vec<_>>>()?;
                        Ok(PointSet::from_points(dedup_points(pts)))
                    }
                    Err(Error::NeedsExtension { .. }) => Ok(PointSet { count: Count::Finite(count), points: None }),
                    Err(e) => Err(e),
                }
            }
            _ => Err(Error::PositiveDimensional("locus of dimension at least two".into())),
        }
    }

    /// A rational point of the locus indexed by `k` (distinct `k` give distinct points on a line).
    pub fn sample(&self, k: i64) -> Result<ProjPoint> {
        let c: Vec<QuadExt> = match self.cone_dim() {
            1 => vec![QuadExt::one()],
            2 => vec![QuadExt::one(), QuadExt::rational(crate::scalar::int(k))],
            _ => return Err(Error::Invalid("sampling needs a point or a line".into())),
        };
        self.point_at(&c)
    }
}
