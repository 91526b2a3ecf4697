//! Local search over pure-state decompositions.
//!
//! Every decomposition of ρ with m members is obtained from an m×r isometry
//! applied to the eigendecomposition of ρ. A restart draws the isometry as
//! the first r columns of exp(A) for a random anti-Hermitian A, then refines
//! it by two-member rotations
//!
//! ```text
//! φ̃ₖ ← cos θ·φ̃ₖ − e^{−iϕ} sin θ·φ̃ₗ
//! φ̃ₗ ← e^{iϕ} sin θ·φ̃ₖ + cos θ·φ̃ₗ
//! ```
//!
//! which keep the ensemble on the isometry manifold exactly. Each accepted
//! rotation touches only two members, so the objective update is local.

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;

use super::decomposition::{ensemble_from_members, Support};
use super::{BoundDirection, BoundedValue, RoofOptions};
use crate::error::{Error, Result};
use crate::qlinalg::{expm_anti_hermitian, singular_values, ComplexMatrix, DensityMatrix, C64};
use crate::states::complex_normal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoofGoal {
    Minimize,
    Maximize,
}

/// Ensemble size used when none is configured: r² capped at 2r, never
/// below r.
pub fn default_ensemble_size(rank: usize) -> usize {
    rank.max((rank * rank).min(2 * rank))
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    rows: usize,
    cols: usize,
}

/// pₖ·N(φₖ) for an unnormalized member in reshaped layout, i.e.
/// (Σσ)² − Σσ² over its singular values.
fn weighted_negativity(m: &[C64], shape: Shape) -> f64 {
    // Two-row (or two-column) case: (σ₁+σ₂)² − σ₁² − σ₂² = 2√det(MM†), and
    // det(MM†) = Σ_{i<j} |uᵢvⱼ − uⱼvᵢ|² is a sum of squares, so it cannot
    // go negative through cancellation.
    if shape.rows == 2 || shape.cols == 2 {
        let (len, stride, v_off) = if shape.rows == 2 {
            (shape.cols, 1, shape.cols)
        } else {
            (shape.rows, 2, 1)
        };
        let mut det = 0.0;
        for i in 0..len {
            let (ui, vi) = (m[i * stride], m[i * stride + v_off]);
            for j in i + 1..len {
                let (uj, vj) = (m[j * stride], m[j * stride + v_off]);
                det += (ui * vj - uj * vi).norm_sqr();
            }
        }
        return 2.0 * det.sqrt();
    }
    let mat = ComplexMatrix::new(shape.rows, shape.cols, m.to_vec())
        .expect("member buffer matches its shape");
    let s = singular_values(&mat);
    let sum: f64 = s.iter().sum();
    let sq: f64 = s.iter().map(|x| x * x).sum();
    (sum * sum - sq).max(0.0)
}

struct Problem<'a> {
    support: &'a Support,
    shape: Shape,
    /// Full basis index → position in the reshaped layout.
    layout: Vec<usize>,
    ensemble: usize,
    goal: RoofGoal,
}

impl Problem<'_> {
    fn sign(&self) -> f64 {
        match self.goal {
            RoofGoal::Minimize => 1.0,
            RoofGoal::Maximize => -1.0,
        }
    }

    fn reshape_in(&self, full: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); full.len()];
        for (idx, &pos) in self.layout.iter().enumerate() {
            out[pos] = full[idx];
        }
        out
    }

    fn reshape_out(&self, reshaped: &[C64]) -> Vec<C64> {
        self.layout.iter().map(|&pos| reshaped[pos]).collect()
    }

    /// One restart; returns the refined members in reshaped layout.
    fn restart(&self, opts: &RoofOptions, child: u64) -> Result<Vec<Vec<C64>>> {
        let m = self.ensemble;
        let mut rng = opts.rng.fork(child).rng();
        let mut g = ComplexMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                g[(i, j)] = complex_normal(&mut rng);
            }
        }
        let anti = (&g - &g.adjoint()).scale_real(0.5);
        let u = expm_anti_hermitian(&anti)?;
        let mut members: Vec<Vec<C64>> = self
            .support
            .members(&u)
            .iter()
            .map(|phi| self.reshape_in(phi))
            .collect();
        let mut scores: Vec<f64> = members
            .iter()
            .map(|x| weighted_negativity(x, self.shape))
            .collect();

        let sign = self.sign();
        let phases = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(-1.0, 0.0),
            C64::new(0.0, -1.0),
        ];
        let len = members[0].len();
        let mut trial_k = vec![C64::new(0.0, 0.0); len];
        let mut trial_l = vec![C64::new(0.0, 0.0); len];
        let mut step = FRAC_PI_4;

        for _ in 0..opts.max_iters {
            let mut gain = 0.0;
            let (c, s) = (step.cos(), step.sin());
            for k in 0..m {
                for l in k + 1..m {
                    let current = sign * (scores[k] + scores[l]);
                    let mut best: Option<(f64, f64, f64, C64)> = None;
                    for &e in &phases {
                        let a = -e.conj() * s;
                        let b = e * s;
                        for i in 0..len {
                            let (xk, xl) = (members[k][i], members[l][i]);
                            trial_k[i] = xk * c + xl * a;
                            trial_l[i] = xk * b + xl * c;
                        }
                        let sk = weighted_negativity(&trial_k, self.shape);
                        let sl = weighted_negativity(&trial_l, self.shape);
                        let val = sign * (sk + sl);
                        if val < best.map_or(current, |b| b.0) - 1e-15 {
                            best = Some((val, sk, sl, e));
                        }
                    }
                    if let Some((val, sk, sl, e)) = best {
                        let a = -e.conj() * s;
                        let b = e * s;
                        for i in 0..len {
                            let (xk, xl) = (members[k][i], members[l][i]);
                            members[k][i] = xk * c + xl * a;
                            members[l][i] = xk * b + xl * c;
                        }
                        scores[k] = sk;
                        scores[l] = sl;
                        gain += current - val;
                    }
                }
            }
            if gain < opts.objective_tol {
                step *= 0.5;
                if step < opts.step_tol {
                    break;
                }
            }
        }
        Ok(members)
    }
}

/// Numerical roof value with no closed-form shortcuts. Minimization yields
/// an upper bound on CREN, maximization a lower bound on CRENoA; the best
/// decomposition found is attached as witness and the reported value is
/// its average negativity.
pub fn roof_estimate(
    rho: &DensityMatrix,
    cut: &[usize],
    opts: &RoofOptions,
    goal: RoofGoal,
) -> Result<BoundedValue> {
    opts.validate()?;
    let dims = rho.dims();
    let cut = dims.proper_subset(cut)?;
    let support = Support::of(rho)?;
    let rank = support.rank();
    let ensemble = match opts.ensemble_size {
        Some(m) if m < rank => {
            return Err(Error::argument(format!(
                "ensemble size {m} is below the rank {rank}"
            )))
        }
        Some(m) => m,
        None => default_ensemble_size(rank),
    };
    let rows = dims.dim_of(&cut);
    let shape = Shape {
        rows,
        cols: dims.total() / rows,
    };
    let layout = dims
        .bipartite_index_map(&cut)
        .into_iter()
        .map(|(r, c)| r * shape.cols + c)
        .collect();
    let problem = Problem {
        support: &support,
        shape,
        layout,
        ensemble,
        goal,
    };

    let runs: Vec<_> = (0..opts.restarts as u64)
        .into_par_iter()
        .map(|child| -> Result<_> {
            let members = problem.restart(opts, child)?;
            let full: Vec<Vec<C64>> = members.iter().map(|x| problem.reshape_out(x)).collect();
            let witness = ensemble_from_members(&full, dims)?;
            let value = witness.average_negativity(&cut)?;
            Ok((value, witness))
        })
        .collect::<Result<_>>()?;

    let better = |a: f64, b: f64| match goal {
        RoofGoal::Minimize => a < b,
        RoofGoal::Maximize => a > b,
    };
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if better(run.0, runs[best].0) {
            best = i;
        }
    }
    let (value, witness) = runs.into_iter().nth(best).expect("restarts >= 1");
    Ok(BoundedValue {
        value,
        direction: match goal {
            RoofGoal::Minimize => BoundDirection::UpperBound,
            RoofGoal::Maximize => BoundDirection::LowerBound,
        },
        witness: Some(witness),
    })
}
