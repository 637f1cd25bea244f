use serde::{Deserialize, Serialize};

use super::hilbert::{hilbert_truncated, HilbertEngine};
use super::presentation::QuadraticPresentation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A degree-2 element of a quadratic algebra that commutes with every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralQuadric {
    coeffs: Matrix<Scalar>,
}

impl CentralQuadric {
    /// Checks `f⊗xᵢ − xᵢ⊗f ∈ I₃` for every generator.
    pub fn new(p: &QuadraticPresentation, coeffs: Matrix<Scalar>) -> Result<Self> {
        Self::certify(p, std::slice::from_ref(&coeffs)).map(|mut v| v.remove(0))
    }

    /// Certifies several quadrics at once; errors name the first non-central index.
    pub fn certify(p: &QuadraticPresentation, all: &[Matrix<Scalar>]) -> Result<Vec<Self>> {
        let n = p.n();
        let eng = HilbertEngine::new(p, &[], 3)?;
        let mut out = vec![];
        for (index, f) in all.iter().enumerate() {
            if f.rows() != n || f.cols() != n {
                return Err(Error::DimensionMismatch("quadric of the wrong size".into()));
            }
            for i in 0..n {
                let mut t = vec![];
                for a in 0..n {
                    for b in 0..n {
                        let c = f.get(a, b);
                        t.push((vec![a, b, i], c.clone()));
                        t.push((vec![i, a, b], -c.clone()));
                    }
                }
                if !eng.is_zero(&t)? {
                    return Err(Error::NonCentral { index });
                }
            }
            out.push(Self { coeffs: f.clone() });
        }
        Ok(out)
    }

    /// `Σ aₘ xₘ²`.
    pub fn diagonal(p: &QuadraticPresentation, a: &[Scalar]) -> Result<Self> {
        let n = p.n();
        if a.len() != n {
            return Err(Error::DimensionMismatch("coefficient vector length".into()));
        }
        Self::new(p, Matrix::from_fn(n, n, |i, j| if i == j { a[i].clone() } else { Scalar::from_integer(0.into()) }))
    }

    pub fn coeffs(&self) -> &Matrix<Scalar> {
        &self.coeffs
    }
}

/// Outcome of the truncated regularity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub regular: bool,
    /// The certificate only covers degrees up to this bound.
    pub through_degree: usize,
    pub quotient: Vec<u64>,
    pub expected: Vec<i64>,
}

/// Minimum truncation degree accepted for `r` quadrics, never above the default degree 6.
pub fn degree_floor(r: usize) -> usize {
    (2 * r + 2).min(6)
}

/// Compares `H_{A/(f₁..f_r)}` with `(1 − t²)^r H_A` through degree `d`.
pub fn is_regular_sequence(p: &QuadraticPresentation, fs: &[CentralQuadric], d: usize) -> Result<RegularityVerdict> {
    let ambient = hilbert_truncated(p, &[], d)?;
    regular_against(p, &ambient, fs, d)
}

/// Same as [`is_regular_sequence`] with a precomputed ambient prefix.
pub fn regular_against(
    p: &QuadraticPresentation,
    ambient: &crate::quadratic::HilbertPrefix,
    fs: &[CentralQuadric],
    d: usize,
) -> Result<RegularityVerdict> {
    let floor = degree_floor(fs.len());
    if d < floor {
        return Err(Error::DegreeBelowFloor { degree: d, floor, count: fs.len() });
    }
    if ambient.degree() < d {
        return Err(Error::Invalid("ambient prefix shorter than the truncation degree".into()));
    }
    let amb = crate::quadratic::HilbertPrefix { coeffs: ambient.coeffs[..=d].to_vec() };
    let extra: Vec<Matrix<Scalar>> = fs.iter().map(|f| f.coeffs.clone()).collect();
    let q = hilbert_truncated(p, &extra, d)?;
    let expected = amb.times_one_minus_t_pow(2, fs.len());
    Ok(RegularityVerdict { regular: q.as_signed() == expected, through_degree: d, quotient: q.coeffs, expected })
}

#[cfg(test)]
pub(crate) fn unit_square(n: usize, i: usize) -> Matrix<Scalar> {
    Matrix::from_fn(n, n, |a, b| if a == i && b == i { Scalar::from_integer(1.into()) } else { Scalar::from_integer(0.into()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::SymMatrixSeq;
    use crate::quadratic::build_sf;
    use crate::scalar::int;

    fn skew() -> QuadraticPresentation {
        build_sf(&SymMatrixSeq::skew(3)).unwrap()
    }

    #[test]
    fn squares_form_a_regular_sequence() {
        let s = skew();
        let fs = CentralQuadric::certify(&s, &[unit_square(3, 0), unit_square(3, 1)]).unwrap();
        let v = is_regular_sequence(&s, &fs, 6).unwrap();
        assert!(v.regular);
        assert_eq!(v.through_degree, 6);
    }

    #[test]
    fn three_independent_quadrics_give_the_exterior_algebra() {
        let s = skew();
        let a = [int(1), int(2), int(-1)];
        let b = [int(0), int(1), int(3)];
        let c = [int(1), int(1), int(1)];
        let fs: Vec<CentralQuadric> = [a, b, c].iter().map(|v| CentralQuadric::diagonal(&s, v).unwrap()).collect();
        let v = is_regular_sequence(&s, &fs, 8).unwrap();
        assert!(v.regular);
        assert_eq!(v.quotient, vec![1, 3, 3, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn commutative_counterexample() {
        let k = QuadraticPresentation::polynomial(3);
        let u1u1 = unit_square(3, 0);
        let u1u2 = Matrix::from_fn(3, 3, |i, j| if (i, j) == (0, 1) { int(1) } else { int(0) });
        let fs = CentralQuadric::certify(&k, &[u1u1, u1u2]).unwrap();
        let v = is_regular_sequence(&k, &fs, 6).unwrap();
        assert!(!v.regular);
        let first_bad = v.quotient.iter().zip(&v.expected).position(|(a, b)| *a as i64 != *b);
        assert_eq!(first_bad, Some(3));
    }

    #[test]
    fn truncation_floor() {
        let s = skew();
        let fs = CentralQuadric::certify(&s, &[unit_square(3, 0), unit_square(3, 1)]).unwrap();
        assert_eq!(is_regular_sequence(&s, &fs, 5), Err(Error::DegreeBelowFloor { degree: 5, floor: 6, count: 2 }));
        assert_eq!(is_regular_sequence(&s, &fs[..1], 3), Err(Error::DegreeBelowFloor { degree: 3, floor: 4, count: 1 }));
        assert_eq!(degree_floor(3), 6);
    }

    #[test]
    fn centrality_depends_on_the_ambient() {
        // yz − zy − x², zx − xz, xy − yx
        let mut r1 = Matrix::zeros(3, 3);
        r1.set(1, 2, int(1));
        r1.set(2, 1, int(-1));
        r1.set(0, 0, int(-1));
        let p = QuadraticPresentation::new(
            3,
            vec![r1, crate::quadratic::commutator(3, 2, 0), crate::quadratic::commutator(3, 0, 1)],
        )
        .unwrap();
        assert!(CentralQuadric::new(&p, unit_square(3, 0)).is_ok());
        assert_eq!(CentralQuadric::new(&p, unit_square(3, 1)), Err(Error::NonCentral { index: 0 }));
        assert_eq!(
            CentralQuadric::certify(&p, &[unit_square(3, 0), unit_square(3, 1)]),
            Err(Error::NonCentral { index: 1 })
        );
    }

    #[test]
    fn permutation_invariance() {
        let s = build_sf(&SymMatrixSeq::family(&int(1), &int(1), &int(0))).unwrap();
        let a = CentralQuadric::diagonal(&s, &[int(1), int(0), int(2)]).unwrap();
        let b = CentralQuadric::diagonal(&s, &[int(0), int(1), int(-1)]).unwrap();
        let ab = is_regular_sequence(&s, &[a.clone(), b.clone()], 6).unwrap();
        let ba = is_regular_sequence(&s, &[b, a], 6).unwrap();
        assert_eq!(ab, ba);
        assert!(ab.regular);
    }
}
