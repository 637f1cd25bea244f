use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::clifford::SymMatrixSeq;
use crate::error::{Error, Result};
use crate::geometry::{projective_zeros, Count, PointSet, ProjPoint};
use crate::matrix::{rank_of, Matrix};
use crate::quadratic::clifford_deformation;
use crate::scalar::{int, QuadExt, Scalar};

/// Linear elements squaring to `Σ aₘ xₘ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KfSolution {
    /// Number of affine solutions `u`.
    pub total: usize,
    /// Number of solutions up to sign.
    pub count: usize,
    /// The affine solutions, when they fit in one quadratic extension.
    pub points: Option<Vec<Vec<QuadExt>>>,
}

fn bordered(corner: Scalar, m: &Matrix<Scalar>) -> Matrix<Scalar> {
    let n = m.rows() + 1;
    Matrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => corner.clone(),
        (0, _) | (_, 0) => Scalar::zero(),
        _ => m.get(i - 1, j - 1).clone(),
    })
}

fn hyperplane_product(n: usize, i: usize) -> Matrix<Scalar> {
    let half = Scalar::one() / int(2);
    Matrix::from_fn(n, n, |a, b| match (a, b) {
        (0, 0) if i == 0 => Scalar::one(),
        _ if (a, b) == (0, i) || (a, b) == (i, 0) => half.clone(),
        _ => Scalar::zero(),
    })
}

/// Solves `Σᵢⱼ (Fₘ)ᵢⱼ uᵢuⱼ = 2aₘ` by counting the homogenized system minus its part at infinity.
pub fn solve_kf(f: &SymMatrixSeq, a: &[Scalar]) -> Result<KfSolution> {
    let system = clifford_deformation(f, a)?;
    let n = f.n();
    let homog: Vec<Matrix<Scalar>> = f.mats().iter().zip(a).map(|(m, am)| bordered(-(int(2) * am), m)).collect();
    let total = projective_zeros(n + 1, &homog)?;
    let mut at_infinity = homog.clone();
    at_infinity.extend((0..=n).map(|i| hyperplane_product(n + 1, i)));
    let inf = projective_zeros(n + 1, &at_infinity)?;
    let (Count::Finite(t), Count::Finite(i)) = (total.count, inf.count) else {
        return Err(Error::PositiveDimensional("the square-root system has a curve of solutions".into()));
    };
    let affine = t - i;
    let origin = usize::from(system.degenerate);
    if (affine - origin) % 2 == 1 {
        return Err(Error::Inconsistent(format!("{affine} solutions are not closed under sign")));
    }
    let points = match total.points {
        None => None,
        Some(pts) => {
            let mut out = vec![];
            for p in pts.iter().filter(|p| !p.coords()[0].is_zero()) {
                let u: Vec<QuadExt> = p.coords()[1..].to_vec();
                for q in &system.system {
                    if !q.eval(&u)?.is_zero() {
                        return Err(Error::Inconsistent(format!("candidate {p} fails back-substitution")));
                    }
                }
                out.push(u);
            }
            if out.len() != affine {
                return Err(Error::Inconsistent("resolved solutions disagree with the count".into()));
            }
            Some(out)
        }
    };
    Ok(KfSolution { total: affine, count: (affine - origin) / 2 + origin, points })
}

/// Zero locus of the quadrics of a commutative presentation on three generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "points")]
pub enum DualLocus {
    Points(Count),
    DoubleLine,
    TwoLines,
    SmoothConic,
    Plane,
}

impl fmt::Display for DualLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualLocus::Points(Count::Finite(1)) => write!(f, "1 point"),
            DualLocus::Points(Count::Finite(k)) => write!(f, "{k} points"),
            DualLocus::Points(Count::Infinite) => write!(f, "curve"),
            DualLocus::DoubleLine => write!(f, "double line"),
            DualLocus::TwoLines => write!(f, "two lines"),
            DualLocus::SmoothConic => write!(f, "smooth conic"),
            DualLocus::Plane => write!(f, "P2"),
        }
    }
}

/// Common zeros in `ℙ²` of at most two independent conics.
pub fn base_locus_conics(conics: &[Matrix<Scalar>]) -> Result<(DualLocus, PointSet)> {
    if conics.iter().any(|c| c.rows() != 3 || !c.is_square() || !c.is_symmetric()) {
        return Err(Error::DimensionMismatch("conics are symmetric 3x3 matrices".into()));
    }
    let flats: Vec<Vec<Scalar>> = conics.iter().map(|c| c.entries().to_vec()).collect();
    if rank_of(&flats) < conics.len() {
        return Err(Error::DependentInputs);
    }
    match conics {
        [] => Ok((DualLocus::Plane, PointSet::infinite())),
        [c] => {
            let locus = match c.rank() {
                1 => DualLocus::DoubleLine,
                2 => DualLocus::TwoLines,
                _ => DualLocus::SmoothConic,
            };
            Ok((locus, PointSet::infinite()))
        }
        _ => {
            let z = projective_zeros(3, conics)?;
            Ok((DualLocus::Points(z.count), z))
        }
    }
}

/// Solutions up to sign, represented by points of `ℙⁿ⁻¹`.
pub fn kf_points(sol: &KfSolution) -> Option<Vec<ProjPoint>> {
    let pts = sol.points.as_ref()?;
    let out: Result<Vec<ProjPoint>> = pts.iter().map(|u| ProjPoint::new(u.clone())).collect();
    out.ok().map(crate::geometry::dedup_points)
}
