use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{rank_of, Matrix};
use crate::scalar::{int, Scalar};
use crate::smith::smith_normal_form;
use crate::unipoly::UniPoly;

/// Segre symbol of a pencil of symmetric matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegreSymbol {
    /// One group per eigenvalue: the sizes of its Jordan blocks, largest first.
    Regular(Vec<Vec<usize>>),
    /// Every member of the pencil is singular.
    Singular,
}

impl SegreSymbol {
    /// Sum of all block sizes; zero for the singular marker.
    pub fn weight(&self) -> usize {
        match self {
            SegreSymbol::Regular(g) => g.iter().flatten().sum(),
            SegreSymbol::Singular => 0,
        }
    }
}

impl fmt::Display for SegreSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegreSymbol::Singular => write!(f, "[1,1;;1]"),
            SegreSymbol::Regular(groups) => {
                let parts: Vec<String> = groups
                    .iter()
                    .map(|g| {
                        let inner: Vec<String> = g.iter().map(usize::to_string).collect();
                        if g.len() == 1 {
                            inner[0].clone()
                        } else {
                            format!("({})", inner.join(","))
                        }
                    })
                    .collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

fn flat(m: &Matrix<Scalar>) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Segre symbol of `λG₁ + μG₂`.
pub fn segre_symbol(g1: &Matrix<Scalar>, g2: &Matrix<Scalar>) -> Result<SegreSymbol> {
    let n = g1.rows();
    if !g1.is_square() || g2.rows() != n || g2.cols() != n {
        return Err(Error::DimensionMismatch("pencil members of different sizes".into()));
    }
    if !g1.is_symmetric() || !g2.is_symmetric() {
        return Err(Error::NotSymmetric { index: usize::from(g1.is_symmetric()) });
    }
    if rank_of(&[flat(g1), flat(g2)]) < 2 {
        return Err(Error::DependentInputs);
    }
    let mut members = vec![(g1.clone(), g2.clone()), (g2.clone(), g1.clone())];
    members.extend((1..=n as i64 + 1).map(|k| (g1.add(&g2.scale(&int(k))), g2.clone())));
    let Some((g, other)) = members.into_iter().find(|(g, _)| g.det().map(|d| !d.is_zero()).unwrap_or(false)) else {
        return Ok(SegreSymbol::Singular);
    };
    let entries: Vec<Vec<UniPoly<Scalar>>> = (0..n)
        .map(|i| (0..n).map(|j| UniPoly::new(vec![-other.get(i, j).clone(), g.get(i, j).clone()])).collect())
        .collect();
    let factors = smith_normal_form(&entries)?;
    Ok(SegreSymbol::Regular(block_structure(&factors)))
}

/// Groups of equal-root elementary divisors, derived from invariant factors without solving for roots.
fn block_structure(factors: &[UniPoly<Scalar>]) -> Vec<Vec<usize>> {
    let top = factors.last().cloned().unwrap_or_else(|| UniPoly::constant(Scalar::one()));
    let max_mult = top.deg();
    let mut classes: Vec<UniPoly<Scalar>> = vec![top.squarefree_part()];
    for d in factors {
        for k in 1..=max_mult {
            let marker = d.roots_of_multiplicity_at_least(k);
            let mut next = vec![];
            for c in classes {
                let a = c.gcd(&marker);
                let b = c.div_rem(&a).0;
                for part in [a, b] {
                    if part.deg() > 0 {
                        next.push(part.monic());
                    }
                }
            }
            classes = next;
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![];
    for c in &classes {
        let mut blocks: Vec<usize> = factors.iter().map(|d| d.multiplicity_of(c)).filter(|&m| m > 0).collect();
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        for _ in 0..c.deg() {
            groups.push(blocks.clone());
        }
    }
    groups.sort_by(|a, b| {
        let (sa, sb): (usize, usize) = (a.iter().sum(), b.iter().sum());
        sb.cmp(&sa).then_with(|| b.cmp(a))
    });
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;

    fn diag(a: &[i64]) -> Matrix<Scalar> {
        Matrix::from_fn(a.len(), a.len(), |i, j| if i == j { int(a[i]) } else { int(0) })
    }

    #[test]
    fn generic_pencil() {
        let s = segre_symbol(&diag(&[1, 1, 1]), &diag(&[1, 2, 3])).unwrap();
        assert_eq!(s.to_string(), "[1,1,1]");
        assert_eq!(s.weight(), 3);
    }

    #[test]
    fn repeated_eigenvalue() {
        assert_eq!(segre_symbol(&diag(&[1, 1, 1]), &diag(&[1, 1, 3])).unwrap().to_string(), "[(1,1),1]");
    }

    #[test]
    fn jordan_blocks() {
        // G⁻¹G' with a single 2-block and a distinct simple eigenvalue
        let g = int_matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let h = int_matrix(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert_eq!(segre_symbol(&g, &h).unwrap().to_string(), "[2,1]");
        let g3 = int_matrix(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let h3 = int_matrix(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert_eq!(segre_symbol(&g3, &h3).unwrap().to_string(), "[3]");
        let h21 = int_matrix(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert_eq!(segre_symbol(&g, &h21).unwrap().to_string(), "[(2,1)]");
    }

    #[test]
    fn irrational_roots_need_no_extension() {
        let g = diag(&[1, 1, 1]);
        let h = int_matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]).add(&diag(&[0, 0, 0]));
        let h = h.add(&int_matrix(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(segre_symbol(&g, &h).unwrap().to_string(), "[1,1,1]");
    }

    #[test]
    fn singular_and_dependent() {
        let a = diag(&[1, 0, 0]);
        let b = diag(&[0, 1, 0]);
        assert_eq!(segre_symbol(&a, &b).unwrap(), SegreSymbol::Singular);
        assert_eq!(SegreSymbol::Singular.to_string(), "[1,1;;1]");
        assert_eq!(segre_symbol(&a, &a.scale(&int(2))), Err(Error::DependentInputs));
    }
}
