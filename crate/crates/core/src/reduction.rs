//! Inconsistency reduction.
//!
//! [`project_consistent`] is the closed-form least-squares projection onto
//! consistent matrices. [`reduce_iterative`] descends on the upper-triangle
//! entries, back-propagating the `(M + λI)`-weighted triad deviations
//! through the incidence map, so every iterate stays skew-symmetric.

use serde::{Deserialize, Serialize};

use crate::coupling::CouplingMap;
use crate::error::{Error, Result};
use crate::pc::{AdditiveMatrix, ScoreVector};

/// Default stopping tolerance on `I_alg`.
pub const DEFAULT_STOP_TOL: f64 = 1e-12;

/// Default iteration budget.
pub const DEFAULT_MAX_STEPS: usize = 1000;

/// Frobenius-nearest consistent matrix `a*_ij = s_i - s_j` from row-mean scores.
pub fn project_consistent(a: &AdditiveMatrix) -> (AdditiveMatrix, ScoreVector) {
    let (scores, _) = a.recover_scores();
    let projected = AdditiveMatrix::from_scores(&scores).expect("finite scores from finite entries");
    (projected, scores)
}

/// Descent parameters. `eta = None` selects the exact-projection step `1/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReduceOptions {
    pub lambda: f64,
    pub eta: Option<f64>,
    pub max_steps: usize,
    pub tol: f64,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        Self { lambda: 0.0, eta: None, max_steps: DEFAULT_MAX_STEPS, tol: DEFAULT_STOP_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    #[serde(rename = "I_alg")]
    pub i_alg: f64,
    #[serde(rename = "I_geom")]
    pub i_geom: f64,
}

/// Iterates of a reduction run; step 0 is the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrajectory {
    pub steps: Vec<(StepRecord, AdditiveMatrix)>,
    pub converged: bool,
    pub final_matrix: AdditiveMatrix,
    pub eta: f64,
    pub lambda: f64,
}

impl ReductionTrajectory {
    pub fn records(&self) -> impl Iterator<Item = &StepRecord> {
        self.steps.iter().map(|(r, _)| r)
    }

    /// Number of update steps taken (excludes the initial snapshot).
    pub fn iterations(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }
}

/// Deviations, `I_alg = ‖Δ‖²`, and `I_geom = ‖CΔ‖² = ΔᵀMΔ`.
fn evaluate(map: &CouplingMap, upper: &[f64]) -> (Vec<f64>, Vec<f64>, f64, f64) {
    let delta = map.apply_transpose(upper).expect("pair-length vector");
    let c_delta = map.apply(&delta).expect("triad-length vector");
    let i_alg = delta.iter().map(|d| d * d).sum();
    let i_geom = c_delta.iter().map(|d| d * d).sum();
    (delta, c_delta, i_alg, i_geom)
}

/// Gradient descent on the matrix entries.
///
/// Each step moves `a ← a - η · C(M + λI)Δ / (n + λ)`. On realizable
/// deviations `MΔ = nΔ`, so the direction equals `CΔ` and `η = 1/n`
/// lands on [`project_consistent`] in one step.
pub fn reduce_iterative(a: &AdditiveMatrix, options: &ReduceOptions) -> Result<ReductionTrajectory> {
    let n = a.n();
    let eta = options.eta.unwrap_or(1.0 / n as f64);
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::NonPositiveStep(eta));
    }
    if !(options.lambda >= 0.0) || !options.lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda must be >= 0, got {:e}", options.lambda)));
    }
    if options.max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    if !(options.tol > 0.0) {
        return Err(Error::InvalidTolerance(options.tol));
    }
    let lambda = options.lambda;

    // n = 2 has no triads and is trivially consistent
    if n < 3 {
        let record = StepRecord { step: 0, i_alg: 0.0, i_geom: 0.0 };
        return Ok(ReductionTrajectory {
            steps: vec![(record, a.clone())],
            converged: true,
            final_matrix: a.clone(),
            eta,
            lambda,
        });
    }

    let map = CouplingMap::new(n)?;
    let norm = n as f64 + lambda;
    let mut upper = a.upper().to_vec();
    let (mut delta, mut c_delta, i_alg, i_geom) = evaluate(&map, &upper);
    let mut steps = vec![(StepRecord { step: 0, i_alg, i_geom }, a.clone())];
    let mut converged = i_alg <= options.tol;

    let mut step = 0;
    while !converged && step < options.max_steps {
        step += 1;
        // (M + λI)Δ = Cᵀ(CΔ) + λΔ
        let weighted: Vec<f64> = map
            .apply_transpose(&c_delta)?
            .iter()
            .zip(&delta)
            .map(|(m, d)| m + lambda * d)
            .collect();
        let direction = map.apply(&weighted)?;
        for (x, g) in upper.iter_mut().zip(&direction) {
            *x -= eta * g / norm;
        }
        let snapshot = AdditiveMatrix::from_upper(n, upper.clone())?;
        let (d, cd, i_alg, i_geom) = evaluate(&map, &upper);
        delta = d;
        c_delta = cd;
        steps.push((StepRecord { step, i_alg, i_geom }, snapshot));
        converged = i_alg <= options.tol;
    }

    let final_matrix = steps.last().map(|(_, m)| m.clone()).expect("at least one snapshot");
    Ok(ReductionTrajectory { steps, converged, final_matrix, eta, lambda })
}

/// Brute-force nearest consistent matrix over a score grid.
///
/// Scores range over a uniform grid of `grid_steps` points per axis with
/// half-width `grid_radius`, centred on the row-mean scores. Only `n = 3`
/// and `n = 4` are accepted. Intended as a test oracle.
pub fn nearest_consistent_oracle(a: &AdditiveMatrix, grid_radius: f64, grid_steps: usize) -> Result<AdditiveMatrix> {
    let n = a.n();
    if !(n == 3 || n == 4) {
        return Err(Error::UnsupportedSize { n, allowed: "3 or 4" });
    }
    if grid_steps < 11 {
        return Err(Error::InvalidArgument(format!("grid_steps must be >= 11, got {grid_steps}")));
    }
    if !(grid_radius > 0.0) || !grid_radius.is_finite() {
        return Err(Error::InvalidArgument(format!("grid_radius must be positive, got {grid_radius:e}")));
    }
    let (centre, _) = a.recover_scores();
    let centre = centre.as_slice();
    let h = 2.0 * grid_radius / (grid_steps - 1) as f64;
    let axis = |c: f64, k: usize| c - grid_radius + h * k as f64;

    let mut best = (f64::INFINITY, vec![0.0; n]);
    let mut idx = vec![0usize; n];
    let mut s = vec![0.0; n];
    loop {
        for i in 0..n {
            s[i] = axis(centre[i], idx[i]);
        }
        let mut dist = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let r = a.get(i, j) - (s[i] - s[j]);
                dist += r * r;
            }
        }
        if dist < best.0 {
            best = (dist, s.clone());
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                let scores = ScoreVector::new(best.1)?;
                return AdditiveMatrix::from_scores(&scores);
            }
            idx[pos] += 1;
            if idx[pos] < grid_steps {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
