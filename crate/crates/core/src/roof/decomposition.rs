use crate::error::{Error, Result};
use crate::measures::pure_negativity;
use crate::qlinalg::{eigh, ComplexMatrix, DensityMatrix, PureState, C64};

/// A pure-state ensemble {pₖ, |φₖ⟩} representing ρ = Σ pₖ |φₖ⟩⟨φₖ|.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    weights: Vec<f64>,
    states: Vec<PureState>,
}

impl Decomposition {
    pub fn new(weights: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::argument("decomposition needs matching nonempty weights and states"));
        }
        if weights.iter().any(|&p| !(p >= 0.0)) {
            return Err(Error::argument("decomposition weights must be nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::argument(format!("weights sum to {total}, not 1")));
        }
        let dims = states[0].dims();
        if states.iter().any(|s| s.dims() != dims) {
            return Err(Error::argument("decomposition members have different dims"));
        }
        Ok(Self { weights, states })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Σ pₖ |φₖ⟩⟨φₖ|
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.states[0].amplitudes().len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (p, s) in self.weights.iter().zip(&self.states) {
            let a = s.amplitudes();
            for i in 0..n {
                let ai = a[i] * *p;
                for j in 0..n {
                    out[(i, j)] += ai * a[j].conj();
                }
            }
        }
        out
    }

    /// Σ pₖ N(|φₖ⟩) across `cut`.
    pub fn average_negativity(&self, cut: &[usize]) -> Result<f64> {
        self.weights
            .iter()
            .zip(&self.states)
            .map(|(p, s)| Ok(p * pure_negativity(s, cut)?))
            .sum()
    }
}

/// The support of ρ: eigenvalues above tolerance and their eigenvectors.
#[derive(Debug, Clone)]
pub(crate) struct Support {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

impl Support {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        let eig = eigh(rho.matrix())?;
        let tol = rho.tol();
        let keep: Vec<usize> = (0..eig.values.len())
            .filter(|&k| eig.values[k] > tol)
            .collect();
        if keep.is_empty() {
            return Err(Error::InvalidDensity("no eigenvalue above tolerance".into()));
        }
        Ok(Self {
            values: keep.iter().map(|&k| eig.values[k]).collect(),
            vectors: keep.iter().map(|&k| eig.vector(k)).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Unnormalized members |φ̃ₖ⟩ = Σⱼ Uₖⱼ √λⱼ |eⱼ⟩ for the rows of `u`.
    pub fn members(&self, u: &ComplexMatrix) -> Vec<Vec<C64>> {
        let n = self.vectors[0].len();
        let roots: Vec<f64> = self.values.iter().map(|v| v.sqrt()).collect();
        (0..u.rows())
            .map(|k| {
                let mut phi = vec![C64::new(0.0, 0.0); n];
                for (j, e) in self.vectors.iter().enumerate() {
                    let coef = u[(k, j)] * roots[j];
                    for (dst, x) in phi.iter_mut().zip(e) {
                        *dst += coef * x;
                    }
                }
                phi
            })
            .collect()
    }
}

/// Turns unnormalized members into a normalized ensemble, dropping
/// members of zero weight.
pub(crate) fn ensemble_from_members(
    members: &[Vec<C64>],
    dims: &crate::qlinalg::Dims,
) -> Result<Decomposition> {
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for m in members {
        let p: f64 = m.iter().map(|z| z.norm_sqr()).sum();
        if p <= 0.0 {
            continue;
        }
        weights.push(p);
        states.push(PureState::normalized(m.clone(), dims.clone())?);
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Decomposition::new(weights, states)
}

/// Pure-state decomposition of ρ generated by an isometry acting on its
/// eigendecomposition. `isometry` is m×r with r the numerical rank of ρ.
pub fn decomposition_from_isometry(
    rho: &DensityMatrix,
    isometry: &ComplexMatrix,
) -> Result<Decomposition> {
    let support = Support::of(rho)?;
    let r = support.rank();
    if isometry.cols() != r {
        return Err(Error::argument(format!(
            "isometry has {} columns but rank is {r}",
            isometry.cols()
        )));
    }
    if isometry.rows() < r {
        return Err(Error::argument("isometry needs at least rank rows"));
    }
    let gram = isometry.adjoint().matmul(isometry);
    let defect = gram.max_abs_diff(&ComplexMatrix::identity(r));
    if defect > 1e-10 {
        return Err(Error::argument(format!(
            "columns are not orthonormal (defect {defect:.3e})"
        )));
    }
    ensemble_from_members(&support.members(isometry), rho.dims())
}
