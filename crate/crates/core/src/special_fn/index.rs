use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `true` when `alpha` lies in `{-1/2} ∪ [1/2, ∞)`, the range where the
/// derivatives of the Hermite-type functions stay uniformly controlled.
pub fn is_hermite_class(alpha: f64) -> bool {
    alpha == -0.5 || alpha >= 0.5
}

/// A Laguerre-type order, one entry per coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct AlphaIndex {
    values: Vec<f64>,
}

impl AlphaIndex {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("alpha index must have at least one coordinate".into()));
        }
        for (i, &a) in values.iter().enumerate() {
            if !(a > -1.0) || !a.is_finite() {
                return Err(Error::range(
                    "AlphaIndex::new",
                    format!("alpha[{i}] = {a} violates alpha > -1"),
                ));
            }
        }
        Ok(Self { values })
    }

    pub fn scalar(alpha: f64) -> Result<Self> {
        Self::new(vec![alpha])
    }

    pub fn uniform(alpha: f64, dim: usize) -> Result<Self> {
        Self::new(vec![alpha; dim])
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// `alpha_i >= -1/2`.
    pub fn linf_ok(&self, i: usize) -> bool {
        self.values[i] >= -0.5
    }

    pub fn hermite_class(&self, i: usize) -> bool {
        is_hermite_class(self.values[i])
    }

    pub fn all_hermite_class(&self) -> bool {
        (0..self.dim()).all(|i| self.hermite_class(i))
    }

    pub fn all_linf_ok(&self) -> bool {
        (0..self.dim()).all(|i| self.linf_ok(i))
    }
}

impl TryFrom<Vec<f64>> for AlphaIndex {
    type Error = Error;
    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<AlphaIndex> for Vec<f64> {
    fn from(a: AlphaIndex) -> Self {
        a.values
    }
}

/// A multi-index `n ∈ N^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Config("multi-index must have at least one coordinate".into()));
        }
        Ok(Self { entries })
    }

    pub fn zero(dim: usize) -> Self {
        Self { entries: vec![0; dim.max(1)] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `|n| = n_1 + ... + n_d`.
    pub fn length(&self) -> usize {
        self.entries.iter().sum()
    }

    /// All multi-indices with `|n| = s`, in lexicographic order.
    pub fn shell(dim: usize, s: usize) -> Vec<MultiIndex> {
        let dim = dim.max(1);
        let mut out = Vec::new();
        let mut current = vec![0usize; dim];
        fill_shell(&mut current, 0, s, &mut out);
        out
    }

    /// Shells `0..=max_len` concatenated in order.
    pub fn up_to(dim: usize, max_len: usize) -> Vec<MultiIndex> {
        (0..=max_len).flat_map(|s| Self::shell(dim, s)).collect()
    }

    /// Number of multi-indices with `|n| = s` in dimension `dim`.
    pub fn shell_size(dim: usize, s: usize) -> usize {
        // C(s + dim - 1, dim - 1)
        let k = dim.max(1) - 1;
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * (s + k - i) as u128 / (i + 1) as u128;
        }
        c as usize
    }
}

fn fill_shell(current: &mut Vec<usize>, pos: usize, remaining: usize, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex { entries: current.clone() });
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        fill_shell(current, pos + 1, remaining - v, out);
    }
}

/// A point of `(0, ∞)^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    coords: Vec<f64>,
}

impl EvalPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Config("evaluation point must have at least one coordinate".into()));
        }
        if let Some((i, c)) = coords.iter().enumerate().find(|(_, c)| !(**c > 0.0) || !c.is_finite()) {
            return Err(Error::domain("EvalPoint::new", format!("coordinate {i} = {c} is not in (0, inf)")));
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}
