use num_traits::{One, Zero};

use super::presentation::{flatten, pairing, quadratic_dual, unflatten, QuadraticPresentation};
use super::regular::CentralQuadric;
use crate::error::{Error, Result};
use crate::matrix::{rank_of, Matrix};
use crate::scalar::Scalar;

/// Order in which monomials `xₐ⊗x_b` are tried when completing `R + kw` to a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplementOrder {
    Lex,
    ReverseLex,
}

/// `(A/(f))^!` together with the class `f^!` such that `A^! = (A/(f))^! / (f^!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualOfQuotient {
    /// Presentation of `A/(f)`.
    pub quotient: QuadraticPresentation,
    /// Presentation of `(A/(f))^!`.
    pub dual: QuadraticPresentation,
    /// The lifted element `w^!` with `⟨w, w^!⟩ = 1`.
    pub f_dual: Matrix<Scalar>,
}

pub fn dual_of_quotient(p: &QuadraticPresentation, f: &CentralQuadric) -> Result<DualOfQuotient> {
    dual_of_quotient_with(p, f, ComplementOrder::Lex)
}

pub fn dual_of_quotient_with(p: &QuadraticPresentation, f: &CentralQuadric, order: ComplementOrder) -> Result<DualOfQuotient> {
    let n = p.n();
    let w = f.coeffs().clone();
    if p.contains(&w) {
        return Err(Error::NotAProperLift);
    }
    let quotient = p.quotient(std::slice::from_ref(&w))?;
    let mut rows: Vec<Vec<Scalar>> = quotient.relations().iter().map(flatten).collect();
    let mut complement: Vec<Vec<Scalar>> = vec![];
    let mut monomials: Vec<usize> = (0..n * n).collect();
    if order == ComplementOrder::ReverseLex {
        monomials.reverse();
    }
    for k in monomials {
        if rows.len() == n * n {
            break;
        }
        let e: Vec<Scalar> = (0..n * n).map(|i| if i == k { Scalar::one() } else { Scalar::zero() }).collect();
        rows.push(e.clone());
        if rank_of(&rows) == rows.len() {
            complement.push(e);
        } else {
            rows.pop();
        }
    }
    let mut span: Vec<Vec<Scalar>> = p.relations().iter().map(flatten).collect();
    span.extend(complement);
    let perp = Matrix::from_rows(span).expect("rectangular").nullspace();
    if perp.len() != 1 {
        return Err(Error::Inconsistent(format!("annihilator of R + W has dimension {}", perp.len())));
    }
    let raw = unflatten(n, &perp[0]);
    let scale = pairing(&w, &raw);
    if scale.is_zero() {
        return Err(Error::Inconsistent("lift pairs to zero with the annihilator".into()));
    }
    let f_dual = raw.scale(&(Scalar::one() / scale));
    let dual = quadratic_dual(&quotient);
    let rebuilt = dual.quotient(std::slice::from_ref(&f_dual))?;
    if !rebuilt.same_span(&quadratic_dual(p)) {
        return Err(Error::Inconsistent("reconstruction of the dual failed".into()));
    }
    Ok(DualOfQuotient { quotient, dual, f_dual })
}

/// Applies [`dual_of_quotient`] once per quadric, each time to the previous quotient.
/// Returns the final dual `(A/(f₁,…,f_r))^!` and every intermediate step.
pub fn iterate_dual_of_quotient(p: &QuadraticPresentation, fs: &[Matrix<Scalar>]) -> Result<Vec<DualOfQuotient>> {
    let mut cur = p.clone();
    let mut steps = vec![];
    for f in fs {
        let cq = CentralQuadric::new(&cur, f.clone())?;
        let step = dual_of_quotient(&cur, &cq)?;
        cur = step.quotient.clone();
        steps.push(step);
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::SymMatrixSeq;
    use crate::quadratic::build_sf;
    use crate::quadratic::regular::unit_square;
    use crate::scalar::int;

    fn diag(a: &[i64]) -> Matrix<Scalar> {
        Matrix::from_fn(3, 3, |i, j| if i == j { int(a[i]) } else { int(0) })
    }

    #[test]
    fn one_quadric_in_skew_ambient() {
        let s = build_sf(&SymMatrixSeq::skew(3)).unwrap();
        let f = CentralQuadric::new(&s, diag(&[1, 1, 1])).unwrap();
        let d = dual_of_quotient(&s, &f).unwrap();
        assert!(d.dual.is_commutative());
        assert_eq!(d.dual.quadrics().len(), 2);
    }

    #[test]
    fn exterior_round_trip_reaches_polynomial_ring() {
        let s = build_sf(&SymMatrixSeq::skew(3)).unwrap();
        let fs: Vec<Matrix<Scalar>> = (0..3).map(|i| unit_square(3, i)).collect();
        let steps = iterate_dual_of_quotient(&s, &fs).unwrap();
        let last = &steps.last().unwrap().dual;
        assert!(last.same_span(&QuadraticPresentation::polynomial(3)));
        assert_eq!(steps.iter().map(|s| s.dual.quadrics().len()).collect::<Vec<_>>(), vec![2, 1, 0]);
    }

    #[test]
    fn complement_choice_does_not_matter() {
        let s = build_sf(&SymMatrixSeq::family(&int(1), &int(1), &int(0))).unwrap();
        for a in [[3, 3, 4], [1, 0, 0], [0, 1, 2]] {
            let f = CentralQuadric::new(&s, diag(&a)).unwrap();
            let x = dual_of_quotient_with(&s, &f, ComplementOrder::Lex).unwrap();
            let y = dual_of_quotient_with(&s, &f, ComplementOrder::ReverseLex).unwrap();
            assert!(x.dual.same_span(&y.dual));
            assert!(x.dual.contains(&x.f_dual.add(&y.f_dual.scale(&int(-1)))));
        }
    }

    #[test]
    fn relation_in_the_span_is_not_a_lift() {
        let p = QuadraticPresentation::polynomial(3);
        let f = CentralQuadric::new(&p, crate::quadratic::commutator(3, 0, 1)).unwrap();
        assert_eq!(dual_of_quotient(&p, &f), Err(Error::NotAProperLift));
    }
}
