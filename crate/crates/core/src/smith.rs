//! Smith normal form over `ℚ[λ]`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

type P = UniPoly<Scalar>;

/// Invariant factors `d₁ | d₂ | … | dₙ` (monic) of a square matrix over `ℚ[λ]`.
///
/// Fails with [`Error::DegeneratePencil`] when the determinant vanishes identically.
pub fn smith_normal_form(m: &[Vec<P>]) -> Result<Vec<P>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("Smith normal form needs a square matrix".into()));
    }
    let mut a: Vec<Vec<P>> = m.to_vec();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let Some((pi, pj)) = min_degree_entry(&a, k) else {
                return Err(Error::DegeneratePencil);
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut dirty = false;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].div_rem(&a[k][k]);
                for j in k..n {
                    let v = a[i][j].sub(&q.mul(&a[k][j]));
                    a[i][j] = v;
                }
                dirty |= !r.is_zero();
            }
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].div_rem(&a[k][k]);
                for row in a.iter_mut().skip(k) {
                    let v = row[j].sub(&q.mul(&row[k]));
                    row[j] = v;
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a[k][k].divides(&a[i][j])));
            match bad {
                Some(i) => {
                    for j in k..n {
                        let v = a[k][j].add(&a[i][j]);
                        a[k][j] = v;
                    }
                }
                None => break,
            }
        }
        out.push(a[k][k].monic());
    }
    Ok(out)
}

fn min_degree_entry(a: &[Vec<P>], k: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..n {
        for j in k..n {
            if !a[i][j].is_zero() && best.is_none_or(|b| a[i][j].deg() < b.2) {
                best = Some((i, j, a[i][j].deg()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
