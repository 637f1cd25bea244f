use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::seq::SymMatrixSeq;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Degree, MultiPoly};
use crate::scalar::{int, Scalar};

/// Largest generator count for which multiplication tables are built.
pub const MAX_GENERATORS: usize = 8;

/// An element of `C(F)` in free-basis normal form: square-free x-monomials
/// (bitmask, bit `i` for `xᵢ₊₁`) with coefficients in `k[y₁, …, yₙ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    n: usize,
    terms: BTreeMap<u32, MultiPoly>,
}

impl CliffordElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// A central element of the base ring.
    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        let mut e = Self::zero(n);
        e.add_term(0, p);
        e
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::from_poly(MultiPoly::constant(n, c))
    }

    /// The generator `x_{i+1}`.
    pub fn gen(n: usize, i: usize) -> Self {
        Self::basis(n, 1 << i, MultiPoly::one(n))
    }

    /// The generator `y_{m+1}`.
    pub fn y(n: usize, m: usize) -> Self {
        Self::from_poly(MultiPoly::var(n, m))
    }

    pub fn basis(n: usize, mask: u32, coeff: MultiPoly) -> Self {
        let mut e = Self::zero(n);
        e.add_term(mask, coeff);
        e
    }

    /// `Σ λᵢ xᵢ`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut e = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(1 << i, MultiPoly::constant(n, c.clone()));
        }
        e
    }

    fn add_term(&mut self, mask: u32, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            None => {
                self.terms.insert(mask, p);
            }
            Some(q) => {
                let s = &q + &p;
                if !s.is_zero() {
                    self.terms.insert(mask, s);
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &MultiPoly)> {
        self.terms.iter().map(|(m, p)| (*m, p))
    }

    pub fn coeff(&self, mask: u32) -> MultiPoly {
        self.terms.get(&mask).cloned().unwrap_or_else(|| MultiPoly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, p) in &o.terms {
            r.add_term(*m, p.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.mul_poly(&MultiPoly::constant(self.n, c.clone()))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        let mut r = Self::zero(self.n);
        for (m, q) in &self.terms {
            r.add_term(*m, q * p);
        }
        r
    }

    /// Grade `|subset| + 2·(y-degree)` when every term has the same grade.
    pub fn grade(&self) -> Option<u32> {
        let mut g = None;
        for (m, p) in &self.terms {
            if !p.is_homogeneous() {
                return None;
            }
            let d = match p.degree() {
                Degree::Finite(d) => d,
                Degree::NegInfinity => continue,
            };
            let t = m.count_ones() + 2 * d;
            match g {
                None => g = Some(t),
                Some(x) if x != t => return None,
                _ => {}
            }
        }
        g.or(Some(0))
    }

    /// Coefficient vector of a linear element `Σ λᵢ xᵢ`.
    pub fn linear_coeffs(&self) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.n];
        for (m, p) in &self.terms {
            if m.count_ones() != 1 || !p.is_constant() {
                return None;
            }
            v[m.trailing_zeros() as usize] = p.constant_term();
        }
        Some(v)
    }

    fn fmt_mask(&self, mask: u32) -> String {
        (0..self.n).filter(|i| mask & (1 << i) != 0).map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("*")
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = (1..=self.n).map(|i| format!("y{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, p)| {
                let c = p.fmt_with(&refs);
                match (*m, c.as_str()) {
                    (0, _) => c,
                    (_, "1") => self.fmt_mask(*m),
                    (_, "-1") => format!("-{}", self.fmt_mask(*m)),
                    _ => format!("({c})*{}", self.fmt_mask(*m)),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The graded Clifford algebra `C(F)` with a precomputed table of `x_U · x_t`.
#[derive(Clone, Debug)]
pub struct CliffordAlgebra {
    f: SymMatrixSeq,
    /// `𝓕ᵢⱼ = Σₘ (Fₘ)ᵢⱼ yₘ`.
    entries: Vec<MultiPoly>,
    table: Vec<Vec<CliffordElement>>,
}

impl CliffordAlgebra {
    pub fn new(f: &SymMatrixSeq) -> Result<Self> {
        f.require_square()?;
        let n = f.n();
        if n > MAX_GENERATORS {
            return Err(Error::SizeLimit { n, max: MAX_GENERATORS });
        }
        let pencil = f.pencil();
        let entries = (0..n * n).map(|k| pencil.get(k / n, k % n).clone()).collect();
        let mut alg = Self { f: f.clone(), entries, table: Vec::with_capacity(1 << n) };
        for mask in 0u32..(1 << n) {
            let row = (0..n).map(|t| alg.mul_mask_gen(mask, t)).collect();
            alg.table.push(row);
        }
        Ok(alg)
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    pub fn seq(&self) -> &SymMatrixSeq {
        &self.f
    }

    pub fn pencil_entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.n() + j]
    }

    pub fn gen(&self, i: usize) -> CliffordElement {
        CliffordElement::gen(self.n(), i)
    }

    /// `x_U · x_t`, using table rows for strictly smaller masks.
    fn mul_mask_gen(&self, mask: u32, t: usize) -> CliffordElement {
        let n = self.n();
        if mask == 0 || (31 - mask.leading_zeros()) < t as u32 {
            return CliffordElement::basis(n, mask | (1 << t), MultiPoly::one(n));
        }
        let s = (31 - mask.leading_zeros()) as usize;
        let rest = mask & !(1 << s);
        if s == t {
            let half = self.pencil_entry(t, t).scale(&(Scalar::one() / int(2)));
            return CliffordElement::basis(n, rest, half);
        }
        // x_{U'} x_s x_t = -(x_{U'} x_t) x_s + 𝓕_{st} x_{U'}
        let left = &self.table[rest as usize][t];
        let mut out = CliffordElement::basis(n, rest, self.pencil_entry(s, t).clone());
        for (m, p) in left.terms() {
            debug_assert!(m < (1 << s));
            out.add_term(m | (1 << s), -p);
        }
        out
    }

    fn check(&self, a: &CliffordElement) -> Result<()> {
        if a.n != self.n() {
            return Err(Error::DimensionMismatch(format!("element on {} generators in an algebra on {}", a.n, self.n())));
        }
        Ok(())
    }

    pub fn try_mul(&self, a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
        self.check(a)?;
        self.check(b)?;
        let n = self.n();
        let mut out = CliffordElement::zero(n);
        for (vm, q) in &b.terms {
            let mut cur = a.mul_poly(q);
            for t in (0..n).filter(|t| vm & (1 << t) != 0) {
                let mut next = CliffordElement::zero(n);
                for (um, p) in &cur.terms {
                    for (wm, r) in self.table[*um as usize][t].terms() {
                        next.add_term(wm, p * r);
                    }
                }
                cur = next;
            }
            out = out.add(&cur);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
        self.try_mul(a, b).expect("elements of this algebra")
    }

    pub fn commutator(&self, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// Product of generators `x_{w₀} x_{w₁} ⋯` in normal form.
    pub fn word(&self, w: &[usize]) -> CliffordElement {
        w.iter().fold(CliffordElement::scalar(self.n(), Scalar::one()), |acc, &i| self.mul(&acc, &self.gen(i)))
    }

    /// A basis of the degree-2 part of the center.
    pub fn center_degree2(&self) -> Result<Vec<CliffordElement>> {
        if !self.f.is_linearly_independent() {
            return Err(Error::LinearlyDependent);
        }
        let n = self.n();
        let mut unknowns: Vec<CliffordElement> = vec![];
        for i in 0..n {
            for j in i + 1..n {
                unknowns.push(CliffordElement::basis(n, (1 << i) | (1 << j), MultiPoly::one(n)));
            }
        }
        for m in 0..n {
            unknowns.push(CliffordElement::y(n, m));
        }
        let mut keys: BTreeMap<(u32, usize, Vec<u32>), usize> = BTreeMap::new();
        let mut cols: Vec<Vec<((u32, usize, Vec<u32>), Scalar)>> = vec![];
        for u in &unknowns {
            let mut col = vec![];
            for k in 0..n {
                let c = self.commutator(u, &self.gen(k));
                for (mask, p) in c.terms() {
                    for (e, v) in p.terms() {
                        let key = (mask, k, e.clone());
                        let len = keys.len();
                        keys.entry(key.clone()).or_insert(len);
                        col.push((key, v.clone()));
                    }
                }
            }
            cols.push(col);
        }
        let mut m = Matrix::zeros(keys.len(), unknowns.len());
        for (j, col) in cols.iter().enumerate() {
            for (key, v) in col {
                m.set(keys[key], j, v.clone());
            }
        }
        let basis = if keys.is_empty() {
            (0..unknowns.len()).map(|j| (0..unknowns.len()).map(|k| if k == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
        } else {
            m.nullspace()
        };
        Ok(basis
            .into_iter()
            .map(|v| {
                v.iter().zip(&unknowns).fold(CliffordElement::zero(n), |acc, (c, u)| acc.add(&u.scale(c)))
            })
            .collect())
    }

    /// `g = Σ_σ sgn(σ) x_{σ(1)} ⋯ x_{σ(n)}` together with `c` such that `g² = c·det 𝓕`.
    pub fn center_element(&self) -> Result<CenterElement> {
        let n = self.n();
        let det = self.f.pencil().det()?;
        if det.is_zero() {
            return Err(Error::SingularPencil);
        }
        let mut g = CliffordElement::zero(n);
        for (perm, odd) in permutations(n) {
            let w = self.word(&perm);
            g = if odd { g.sub(&w) } else { g.add(&w) };
        }
        let fact: i64 = (1..=n as i64).product();
        let sign = if (n * (n.saturating_sub(1)) / 2) % 2 == 1 { -1 } else { 1 };
        let c = Scalar::new((sign * fact * fact).into(), (1i64 << n).into());
        Ok(CenterElement { g, c, det })
    }
}

/// The element `g` of degree `n` with `g² = c · det 𝓕`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterElement {
    pub g: CliffordElement,
    pub c: Scalar,
    pub det: MultiPoly,
}

/// All permutations of `0..n` with their parity (`true` = odd).
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<(Vec<usize>, bool)>) {
        if cur.len() == n {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
            out.push((cur.clone(), inv % 2 == 1));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, n, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = vec![];
    go(&mut vec![], &mut vec![false; n], n, &mut out);
    out
}

/// Coefficients `aₘ = ½ λᵗ Fₘ λ` with `g² = Σ aₘ xₘ²` for `g = Σ λᵢ xᵢ`.
pub fn square_in_basis(g: &CliffordElement, f: &SymMatrixSeq) -> Result<Vec<Scalar>> {
    f.require_normalized()?;
    let lambda = g.linear_coeffs().ok_or_else(|| Error::Invalid("element is not linear".into()))?;
    if lambda.len() != f.n() {
        return Err(Error::DimensionMismatch("element and sequence sizes differ".into()));
    }
    Ok(square_coefficients(f, &lambda))
}

pub fn square_coefficients(f: &SymMatrixSeq, lambda: &[Scalar]) -> Vec<Scalar> {
    let half = Scalar::one() / int(2);
    f.values_at(lambda).into_iter().map(|v| v * &half).collect()
}
