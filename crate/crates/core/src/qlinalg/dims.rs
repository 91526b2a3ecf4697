use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::MAX_DIMENSION;

/// Ordered local dimensions of a multipartite system.
///
/// Subsystem 0 is the most significant tensor factor: the basis index of
/// `|i₀ i₁ … i_{n−1}⟩` is `i₀·d₁⋯d_{n−1} + … + i_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(local: Vec<usize>) -> Result<Self> {
        if local.is_empty() {
            return Err(Error::argument("at least one subsystem is required"));
        }
        if let Some(&d) = local.iter().find(|&&d| d < 2) {
            return Err(Error::argument(format!("local dimension {d} is below 2")));
        }
        let total = local
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .unwrap_or(usize::MAX);
        if total > MAX_DIMENSION {
            return Err(Error::DimensionCap(total));
        }
        Ok(Self(local))
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn local(&self) -> &[usize] {
        &self.0
    }

    pub fn count(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_qubits(&self) -> bool {
        self.0.iter().all(|&d| d == 2)
    }

    /// Validates a subsystem index set and returns it sorted and deduplicated.
    /// The set may be empty or full; callers that need a proper cut use
    /// [`Dims::proper_subset`].
    pub fn subset(&self, set: &[usize]) -> Result<Vec<usize>> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&index) = s.iter().find(|&&i| i >= self.count()) {
            return Err(Error::InvalidSubsystem {
                index,
                count: self.count(),
            });
        }
        Ok(s)
    }

    /// As [`Dims::subset`], additionally requiring a nonempty proper subset.
    pub fn proper_subset(&self, set: &[usize]) -> Result<Vec<usize>> {
        let s = self.subset(set)?;
        if s.is_empty() || s.len() == self.count() {
            return Err(Error::InvalidCut(s));
        }
        Ok(s)
    }

    pub fn complement(&self, set: &[usize]) -> Vec<usize> {
        (0..self.count()).filter(|i| !set.contains(i)).collect()
    }

    /// Product of local dimensions over `set`.
    pub fn dim_of(&self, set: &[usize]) -> usize {
        set.iter().map(|&i| self.0[i]).product()
    }

    pub fn restrict(&self, set: &[usize]) -> Dims {
        Dims(set.iter().map(|&i| self.0[i]).collect())
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.count()];
        for i in (0..self.count().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.0[i + 1];
        }
        strides
    }

    /// For every basis index, its (row, col) coordinates in the
    /// `dim(set) × dim(complement)` reshaping.
    pub(crate) fn bipartite_index_map(&self, set: &[usize]) -> Vec<(usize, usize)> {
        let rest = self.complement(set);
        let strides = self.strides();
        (0..self.total())
            .map(|idx| {
                let digit = |k: usize| (idx / strides[k]) % self.0[k];
                let fold = |subs: &[usize]| {
                    subs.iter()
                        .fold(0usize, |acc, &k| acc * self.0[k] + digit(k))
                };
                (fold(set), fold(&rest))
            })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Dims {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Dims::new(v)
    }
}

impl From<Dims> for Vec<usize> {
    fn from(d: Dims) -> Self {
        d.0
    }
}

/// Local dimensions together with the side-A subsystem set of a bipartition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimsPartition {
    dims: Dims,
    cut: Vec<usize>,
}

impl DimsPartition {
    pub fn new(dims: Dims, cut: &[usize]) -> Result<Self> {
        let cut = dims.proper_subset(cut)?;
        Ok(Self { dims, cut })
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn cut(&self) -> &[usize] {
        &self.cut
    }

    pub fn rest(&self) -> Vec<usize> {
        self.dims.complement(&self.cut)
    }
}
