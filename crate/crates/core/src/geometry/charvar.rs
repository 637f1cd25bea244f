use crate::clifford::SymMatrixSeq;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Homogeneous generators of an ideal in `k[y₁,…,y_r]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietyIdeal {
    pub nvars: usize,
    pub generators: Vec<MultiPoly>,
}

impl VarietyIdeal {
    /// Nonzero generators, one per proportionality class, in first-seen order.
    pub fn distinct(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = vec![];
        for g in self.generators.iter().filter(|g| !g.is_zero()) {
            if !out.iter().any(|h| h.is_proportional(g)) {
                out.push(g.clone());
            }
        }
        out
    }

    pub fn vanishes_at<K: crate::scalar::Field>(&self, p: &[K]) -> Result<bool> {
        for g in &self.generators {
            if !g.eval(p)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The `s`-minors of the pencil `Σ yₘ Fₘ`.
pub fn char_variety(f: &SymMatrixSeq, s: usize) -> Result<VarietyIdeal> {
    let n = f.n();
    if s == 0 || s > n {
        return Err(Error::MinorSizeOutOfRange { s, n });
    }
    let pencil = f.pencil();
    Ok(VarietyIdeal { nvars: pencil.nvars(), generators: pencil.minors(s)? })
}
