use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::polymatrix::PolyMatrix;
use crate::scalar::{int, Scalar};

/// A sequence of symmetric `n×n` matrices `(F₁, …, F_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymMatrixSeq {
    n: usize,
    mats: Vec<Matrix<Scalar>>,
}

impl SymMatrixSeq {
    pub fn new(mats: Vec<Matrix<Scalar>>) -> Result<Self> {
        let n = mats.first().map(Matrix::rows).ok_or_else(|| Error::Invalid("empty matrix sequence".into()))?;
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!("matrix {i} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
            }
            if !m.is_symmetric() {
                return Err(Error::NotSymmetric { index: i });
            }
        }
        Ok(Self { n, mats })
    }

    /// `(F_m)_{ij} = 2` iff `i = j = m`, zero otherwise.
    pub fn skew(n: usize) -> Self {
        let mats = (0..n).map(|m| Matrix::from_fn(n, n, |i, j| if i == j && i == m { int(2) } else { Scalar::zero() })).collect();
        Self { n, mats }
    }

    /// The normalized three-generator family with relations
    /// `yz+zy+a·x², zx+xz+b·y², xy+yx+c·z²`.
    pub fn family(a: &Scalar, b: &Scalar, c: &Scalar) -> Self {
        let off = [(1, 2, a), (0, 2, b), (0, 1, c)];
        let mats = (0..3)
            .map(|m| {
                let (p, q, v) = off[m];
                Matrix::from_fn(3, 3, |i, j| {
                    if i == j && i == m {
                        int(2)
                    } else if (i, j) == (p, q) || (i, j) == (q, p) {
                        -v.clone()
                    } else {
                        Scalar::zero()
                    }
                })
            })
            .collect();
        Self { n: 3, mats }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of matrices.
    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn mats(&self) -> &[Matrix<Scalar>] {
        &self.mats
    }

    pub fn get(&self, m: usize) -> &Matrix<Scalar> {
        &self.mats[m]
    }

    fn flattening(&self) -> Matrix<Scalar> {
        Matrix::from_fn(self.mats.len(), self.n * (self.n + 1) / 2, |r, k| {
            let (i, j) = upper_index(self.n, k);
            self.mats[r].get(i, j).clone()
        })
    }

    pub fn is_linearly_independent(&self) -> bool {
        self.flattening().rank() == self.mats.len()
    }

    /// The linear matrix `Σ yₘ Fₘ` with one variable per matrix.
    pub fn pencil(&self) -> PolyMatrix {
        PolyMatrix::linear_form(&self.mats).expect("validated sequence")
    }

    /// The matrix with `(i, j)` entry `(F_i)_{jj}`.
    pub fn diagonal_matrix(&self) -> Matrix<Scalar> {
        Matrix::from_fn(self.mats.len(), self.n, |i, j| self.mats[i].get(j, j).clone())
    }

    pub fn is_normalized(&self) -> Result<bool> {
        self.require_square()?;
        Ok(self.diagonal_matrix() == Matrix::identity(self.n).scale(&int(2)))
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.mats.len() != self.n {
            return Err(Error::DimensionMismatch(format!("sequence of length {} for size {}", self.mats.len(), self.n)));
        }
        Ok(())
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if !self.is_normalized()? {
            return Err(Error::NotNormalized);
        }
        Ok(())
    }

    /// Quadratic forms `fₘ = Σ (Fₘ)ᵢⱼ uᵢuⱼ` in `n` variables.
    pub fn quadrics(&self) -> Vec<MultiPoly> {
        self.mats.iter().map(|m| quadratic_form(m)).collect()
    }

    /// The vector `(λᵗ Fₘ λ)ₘ`.
    pub fn values_at(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mats.iter().map(|m| bilinear(m, v, v)).collect()
    }
}

fn upper_index(n: usize, mut k: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i;
        if k < row {
            return (i, i + k);
        }
        k -= row;
    }
    unreachable!("index beyond the upper triangle")
}

pub(crate) fn bilinear(m: &Matrix<Scalar>, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for i in 0..m.rows() {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..m.cols() {
            if !b[j].is_zero() && !m.get(i, j).is_zero() {
                acc += &a[i] * m.get(i, j) * &b[j];
            }
        }
    }
    acc
}

/// `Σ Mᵢⱼ uᵢuⱼ` for a square matrix `M`.
pub fn quadratic_form(m: &Matrix<Scalar>) -> MultiPoly {
    let n = m.rows();
    MultiPoly::from_terms(
        n,
        (0..n).flat_map(|i| {
            (0..n).map(move |j| {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                (e, m.get(i, j).clone())
            })
        }),
    )
}

/// Witness of `F ∼ₛₜ F′`: first mix by `s`, then apply the congruence by `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    #[serde(with = "crate::io::matrix_wire")]
    pub s: Matrix<Scalar>,
    #[serde(with = "crate::io::matrix_wire")]
    pub t: Matrix<Scalar>,
}

impl EquivalenceWitness {
    pub fn identity(n: usize) -> Self {
        Self { s: Matrix::identity(n), t: Matrix::identity(n) }
    }

    /// `F′ⱼ = tᵗ (Σᵢ sᵢⱼ Fᵢ) t`.
    pub fn apply(&self, f: &SymMatrixSeq) -> Result<SymMatrixSeq> {
        let r = f.len();
        if self.s.rows() != r || self.s.cols() != r || self.t.rows() != f.n() || self.t.cols() != f.n() {
            return Err(Error::DimensionMismatch("witness does not fit the sequence".into()));
        }
        let tt = self.t.transpose();
        let mats = (0..r)
            .map(|j| {
                let mixed = (0..r).fold(Matrix::zeros(f.n(), f.n()), |acc, i| acc.add(&f.get(i).scale(self.s.get(i, j))));
                tt.mul(&mixed).mul(&self.t)
            })
            .collect();
        SymMatrixSeq::new(mats)
    }

    pub fn is_invertible(&self) -> bool {
        self.s.inverse().is_some() && self.t.inverse().is_some()
    }
}

const SEARCH_RADIUS: i64 = 6;

fn candidates(n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let unit = move |i: usize| (0..n).map(move |k| if k == i { Scalar::one() } else { Scalar::zero() }).collect::<Vec<_>>();
    let singles = (0..n).map(unit);
    let pairs = move |sign: i64| {
        (0..n).flat_map(move |i| {
            (i + 1..n).map(move |j| {
                (0..n).map(|k| if k == i { Scalar::one() } else if k == j { int(sign) } else { Scalar::zero() }).collect()
            })
        })
    };
    let boxes = (2..=SEARCH_RADIUS).flat_map(move |r| {
        let side = (2 * r + 1) as usize;
        (0..side.pow(n as u32)).filter_map(move |code| {
            let mut c = code;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let d = (c % side) as i64 - r;
                    c /= side;
                    d
                })
                .collect();
            v.iter().any(|x| x.abs() == r).then(|| v.into_iter().map(int).collect())
        })
    });
    singles.chain(pairs(1)).chain(pairs(-1)).chain(boxes)
}

/// Brings a linearly independent sequence of length `n` to normalized form.
///
/// Returns `F′` with `((F′ᵢ)ⱼⱼ) = 2E` and the witness mapping `F` to `F′`. Only rational
/// operations are used, so no field extension is ever required.
pub fn normalize_seq(f: &SymMatrixSeq) -> Result<(SymMatrixSeq, EquivalenceWitness)> {
    f.require_square()?;
    if !f.is_linearly_independent() {
        return Err(Error::LinearlyDependent);
    }
    let n = f.n();
    let mut ps: Vec<Vec<Scalar>> = vec![];
    let mut qs: Vec<Vec<Scalar>> = vec![];
    for _ in 0..n {
        let found = candidates(n).find(|p| {
            let q = f.values_at(p);
            let grows = |set: &Vec<Vec<Scalar>>, v: &Vec<Scalar>| {
                let mut s = set.clone();
                s.push(v.clone());
                crate::matrix::rank_of(&s) == s.len()
            };
            grows(&ps, p) && grows(&qs, &q)
        });
        let p = found.ok_or_else(|| Error::Inconsistent("normalization search exhausted".into()))?;
        qs.push(f.values_at(&p));
        ps.push(p);
    }
    let t = Matrix::from_fn(n, n, |i, j| ps[j][i].clone());
    let vt = Matrix::from_rows(qs).expect("square");
    let s = vt.inverse().ok_or_else(|| Error::Inconsistent("value vectors dependent".into()))?.scale(&int(2));
    let w = EquivalenceWitness { s, t };
    let g = w.apply(f)?;
    debug_assert!(g.is_normalized().unwrap_or(false));
    Ok((g, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;
    use crate::quadratic::{build_bf, hilbert_truncated};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn normalized_examples() {
        assert!(SymMatrixSeq::skew(3).is_normalized().unwrap());
        assert!(SymMatrixSeq::family(&int(1), &int(1), &int(0)).is_normalized().unwrap());
        let mut m = SymMatrixSeq::skew(3).mats;
        m[0].set(0, 0, int(1));
        assert!(!SymMatrixSeq::new(m).unwrap().is_normalized().unwrap());
        let short = SymMatrixSeq::new(vec![int_matrix(&[&[1, 0], &[0, 1]])]).unwrap();
        assert!(short.is_normalized().is_err());
    }

    #[test]
    fn rejects_asymmetric_input() {
        let e = SymMatrixSeq::new(vec![int_matrix(&[&[1, 2], &[0, 1]])]);
        assert_eq!(e, Err(Error::NotSymmetric { index: 0 }));
    }

    #[test]
    fn family_entries() {
        let f = SymMatrixSeq::family(&int(1), &int(0), &int(0));
        assert_eq!(f.get(0), &int_matrix(&[&[2, 0, 0], &[0, 0, -1], &[0, -1, 0]]));
        assert_eq!(f.get(1), &int_matrix(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, 0]]));
    }

    #[test]
    fn normalization_is_identity_on_normalized_input() {
        let f = SymMatrixSeq::family(&int(1), &int(1), &int(0));
        let (g, w) = normalize_seq(&f).unwrap();
        assert_eq!(g, f);
        assert_eq!(w, EquivalenceWitness::identity(3));
    }

    #[test]
    fn normalization_of_swapped_pair_is_a_permutation() {
        let f = SymMatrixSeq::new(vec![int_matrix(&[&[0, 0], &[0, 2]]), int_matrix(&[&[2, 0], &[0, 0]])]).unwrap();
        let (g, w) = normalize_seq(&f).unwrap();
        assert_eq!(g, SymMatrixSeq::skew(2));
        assert_eq!(w.s, int_matrix(&[&[0, 1], &[1, 0]]));
        assert_eq!(w.t, Matrix::identity(2));
    }

    #[test]
    fn normalization_needs_no_square_roots() {
        // every diagonal entry is zero; pivots come from off-diagonal vectors
        let f = SymMatrixSeq::new(vec![
            int_matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]),
            int_matrix(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]),
            int_matrix(&[&[0, 0, 0], &[0, 0, 3], &[0, 3, 0]]),
        ])
        .unwrap();
        let (g, w) = normalize_seq(&f).unwrap();
        assert!(g.is_normalized().unwrap());
        assert!(w.is_invertible());
        assert_eq!(w.apply(&f).unwrap(), g);
    }

    #[test]
    fn dependent_sequence_is_rejected() {
        let a = int_matrix(&[&[1, 0], &[0, 0]]);
        let f = SymMatrixSeq::new(vec![a.clone(), a.scale(&int(2))]).unwrap();
        assert_eq!(normalize_seq(&f).map(|_| ()), Err(Error::LinearlyDependent));
    }

    fn random_seq(rng: &mut ChaCha8Rng) -> SymMatrixSeq {
        loop {
            let mats = (0..3)
                .map(|_| {
                    let mut m = Matrix::zeros(3, 3);
                    for i in 0..3 {
                        for j in i..3 {
                            let v = int(rng.gen_range(-3..=3));
                            m.set(i, j, v.clone());
                            m.set(j, i, v);
                        }
                    }
                    m
                })
                .collect();
            let f = SymMatrixSeq::new(mats).unwrap();
            if f.is_linearly_independent() {
                return f;
            }
        }
    }

    #[test]
    fn random_sequences_normalize_with_matching_hilbert_prefix() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let f = random_seq(&mut rng);
            let (g, w) = normalize_seq(&f).unwrap();
            assert!(g.is_normalized().unwrap());
            assert!(w.is_invertible());
            assert_eq!(w.apply(&f).unwrap(), g);
            let h1 = hilbert_truncated(&build_bf(&f), &[], 6).unwrap();
            let h2 = hilbert_truncated(&build_bf(&g), &[], 6).unwrap();
            assert_eq!(h1, h2);
        }
    }
}
