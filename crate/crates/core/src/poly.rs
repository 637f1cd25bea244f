//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Total degree of a polynomial. The zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in a fixed number of variables, stored as exponent vector → coefficient.
///
/// Zero coefficients are never stored. Terms are ordered lexicographically by exponent
/// vector, so the last entry is the lex-leading term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

fn check(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::VarCountMismatch { expected: a, found: b })
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Scalar::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated terms.
    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// The linear form Σ cᵢ vᵢ.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The lex-leading term.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        check(self.nvars, o.nvars)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        check(self.nvars, o.nvars)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        check(self.nvars, o.nvars)?;
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Replaces variable `var` by `value` (a polynomial in the same variables).
    pub fn substitute(&self, var: usize, value: &Self) -> Result<Self> {
        check(self.nvars, value.nvars)?;
        if var >= self.nvars {
            return Err(Error::Invalid(format!("variable index {var} out of range")));
        }
        let mut powers = vec![Self::one(self.nvars)];
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[var] = 0;
            let t = Self::monomial(self.nvars, rest, c.clone());
            r = &r + &(&t * &powers[k]);
        }
        Ok(r)
    }

    /// Replaces every variable `vᵢ` by `values[i]`; the result lives in the values' ring.
    pub fn compose(&self, values: &[Self]) -> Result<Self> {
        check(self.nvars, values.len())?;
        let m = values.first().map_or(0, |v| v.nvars);
        for v in values {
            check(m, v.nvars)?;
        }
        let mut r = Self::zero(m);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &values[i].pow(k);
                }
            }
            r = &r + &t;
        }
        Ok(r)
    }

    pub fn eval<K: Field>(&self, point: &[K]) -> Result<K> {
        check(self.nvars, point.len())?;
        let mut acc = K::zero();
        for (e, c) in &self.terms {
            let mut t = K::from_scalar(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let d = match self.degree_in(var) {
            None => return vec![],
            Some(d) => d as usize,
        };
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var] as usize;
            rest[var] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut ne = e.clone();
                ne[var] -= 1;
                r.add_term(ne, c * Scalar::from_integer(e[var].into()));
            }
        }
        r
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || self.nvars != d.nvars {
            return None;
        }
        let (de, dc) = d.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut q = Self::zero(self.nvars);
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading_term() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let t = Self::monomial(self.nvars, e, rc / &dc);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Returns `c` with `self = c · other` when such a nonzero `c` exists.
    pub fn proportionality(&self, other: &Self) -> Option<Scalar> {
        if self.nvars != other.nvars || self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (e, c) = other.leading_term()?;
        let ratio = self.coeff(e) / c;
        (*self == other.scale(&ratio)).then_some(ratio)
    }

    pub fn is_proportional(&self, other: &Self) -> bool {
        self.proportionality(other).is_some()
    }

    /// Scales so that the lex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Scalar::one() / c)),
        }
    }

    /// Writes the polynomial with the given variable names.
    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let name = names.get(i).map_or_else(|| format!("v{}", i + 1), |s| s.to_string());
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    pub fn default_names(&self, prefix: &str) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("{prefix}{i}")).collect()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names("v");
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.fmt_with(&refs))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                self.$try(o).expect("polynomial variable counts differ")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Scalar::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&v(0) + &v(1)) * &(&v(0) - &v(1));
        assert_eq!(p, &v(0).pow(2) - &v(1).pow(2));
    }

    #[test]
    fn substitution_kills_a_variable() {
        let p = &v(0).pow(3) - &(&(&v(0) * &v(1)) * &v(2)).scale(&int(2));
        let q = p.substitute(2, &MultiPoly::zero(3)).unwrap();
        assert_eq!(q, v(0).pow(3));
    }

    #[test]
    fn homogeneous_component_extraction() {
        let p = (&MultiPoly::one(3) + &v(0)).pow(2);
        assert_eq!(p.homogeneous_component(2), v(0).pow(2));
        assert_eq!(p.degree(), Degree::Finite(2));
        assert_eq!(MultiPoly::zero(3).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn mismatched_variable_counts() {
        let a = MultiPoly::var(2, 0);
        assert_eq!(a.try_add(&v(0)), Err(Error::VarCountMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn exact_division() {
        let a = &v(0) + &v(1);
        let b = &v(0) - &v(2);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&v(1)), None);
    }

    #[test]
    fn linear_substitution_preserves_grading() {
        let p = &v(0).pow(2) - &(&v(1) * &v(2));
        let l = vec![&v(0) + &v(1), &v(1) - &v(2).scale(&int(3)), v(0)];
        let q = p.compose(&l).unwrap();
        assert!(q.is_homogeneous());
        assert_eq!(q.degree(), Degree::Finite(2));
    }

    #[test]
    fn display() {
        let p = &v(0).pow(3) - &(&(&v(0) * &v(1)) * &v(2)).scale(&int(4));
        assert_eq!(p.fmt_with(&["y1", "y2", "y3"]), "y1^3 - 4*y1*y2*y3");
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..6), 0..6)
            .prop_map(|ts| MultiPoly::from_terms(3, ts.into_iter().map(|(e, c)| (e, int(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }
    }
}
