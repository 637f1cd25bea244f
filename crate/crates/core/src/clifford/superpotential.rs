use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quadratic::{build_sf, QuadraticPresentation};
use crate::scalar::Scalar;

use super::seq::SymMatrixSeq;

/// Largest generator count accepted by [`superpotential`].
pub const SUPERPOTENTIAL_MAX_N: usize = 4;

/// A fully symmetric tensor of order `n` whose `(n−2)`-fold derivatives span the relations.
#[derive(Clone, Debug, PartialEq)]
pub struct Superpotential {
    pub n: usize,
    /// Coefficient of every nonzero word `x_{i₁}⊗…⊗x_{iₙ}`.
    pub tensor: BTreeMap<Vec<usize>, Scalar>,
    /// Odd `n`: the derivation quotient is twisted Calabi–Yau with trivial twist.
    pub calabi_yau: bool,
}

impl Superpotential {
    pub fn coeff(&self, word: &[usize]) -> Scalar {
        self.tensor.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.tensor.iter().all(|(w, c)| {
            let mut s = w.clone();
            s.sort_unstable();
            self.coeff(&s) == *c
        }) && self.tensor.keys().all(|w| {
            let mut s = w.clone();
            s.sort_unstable();
            self.tensor.contains_key(&s)
        })
    }

    /// The 2-tensors `w(·,·,t)` for every tail word `t` of length `n − 2`.
    pub fn derivatives(&self) -> Vec<Matrix<Scalar>> {
        let n = self.n;
        words(n, n - 2)
            .into_iter()
            .map(|t| {
                Matrix::from_fn(n, n, |a, b| {
                    let mut w = vec![a, b];
                    w.extend(&t);
                    self.coeff(&w)
                })
            })
            .filter(|m| !m.is_zero())
            .collect()
    }
}

fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    words(n, len).into_iter().filter(|w| w.windows(2).all(|p| p[0] <= p[1])).collect()
}

/// Superpotential of an arbitrary quadratic algebra, or `None` when no symmetric tensor works.
pub fn superpotential_of(p: &QuadraticPresentation) -> Result<Option<Superpotential>> {
    let n = p.n();
    if n > SUPERPOTENTIAL_MAX_N {
        return Err(Error::SizeLimit { n, max: SUPERPOTENTIAL_MAX_N });
    }
    if n < 2 {
        return Err(Error::Invalid("superpotentials need at least two generators".into()));
    }
    let annihilator = crate::quadratic::quadratic_dual(p);
    let monos = multisets(n, n);
    let index: BTreeMap<Vec<usize>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let col = |a: usize, b: usize, t: &[usize]| {
        let mut w = vec![a, b];
        w.extend_from_slice(t);
        w.sort_unstable();
        index[&w]
    };
    let mut rows = vec![];
    for phi in annihilator.relations() {
        for t in words(n, n - 2) {
            let mut row = vec![Scalar::zero(); monos.len()];
            for a in 0..n {
                for b in 0..n {
                    let c = phi.get(a, b);
                    if !c.is_zero() {
                        row[col(a, b, &t)] += c;
                    }
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..monos.len())
            .map(|i| (0..monos.len()).map(|j| if i == j { crate::scalar::int(1) } else { Scalar::zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(rows).expect("rectangular").nullspace()
    };
    for v in kernel {
        let mut tensor = BTreeMap::new();
        for w in words(n, n) {
            let mut s = w.clone();
            s.sort_unstable();
            let c = &v[index[&s]];
            if !c.is_zero() {
                tensor.insert(w, c.clone());
            }
        }
        let sp = Superpotential { n, tensor, calabi_yau: n % 2 == 1 };
        let derived = QuadraticPresentation::from_spanning(n, sp.derivatives());
        if derived.is_ok_and(|d| d.same_span(p)) {
            return Ok(Some(sp));
        }
    }
    Ok(None)
}

/// Superpotential of `S^F`.
pub fn superpotential(f: &SymMatrixSeq) -> Result<Option<Superpotential>> {
    if f.n() > SUPERPOTENTIAL_MAX_N {
        return Err(Error::SizeLimit { n: f.n(), max: SUPERPOTENTIAL_MAX_N });
    }
    superpotential_of(&build_sf(f)?)
}
