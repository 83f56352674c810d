//! Priority vectors: the Perron eigenpair by power iteration, and the
//! row geometric mean as an alternative derivation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::matrix::PcMatrix;

/// Power iteration settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(SolverError::Options(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(SolverError::Options("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Principal eigenvalue and eigenvector of a positive matrix.
///
/// `vector` is scaled so its largest component is 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSolution {
    pub lambda_max: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    /// `max_i |(Mv)_i - lambda v_i|` for the returned pair.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Eigenvector,
    GeometricMean,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Eigenvector => "eigenvector",
            Method::GeometricMean => "geometric_mean",
        })
    }
}

/// Positive weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingVector {
    weights: Vec<f64>,
    method: Method,
}

impl RankingVector {
    /// Rescales arbitrary positive scores to sum 1.
    ///
    /// Returns `None` if a score is not finite and strictly positive.
    pub fn from_scores(scores: &[f64], method: Method) -> Option<Self> {
        if scores.is_empty() || scores.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return None;
        }
        let total: f64 = scores.iter().sum();
        Some(RankingVector {
            weights: scores.iter().map(|s| s / total).collect(),
            method,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of concept `i`, 1-based.
    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i - 1]
    }
}

/// Power iteration from the uniform vector.
pub fn principal_eigen(m: &PcMatrix, opts: &SolverOptions) -> Result<EigenSolution, SolverError> {
    power_iteration(m, &vec![1.0; m.dim()], opts)
}

/// Power iteration from a caller-supplied positive start vector.
///
/// Iterates are rescaled to unit max-norm. Stops once successive iterates
/// differ by less than `tol` in max-norm and the eigen-residual is also
/// within `tol`.
pub fn power_iteration(
    m: &PcMatrix,
    start: &[f64],
    opts: &SolverOptions,
) -> Result<EigenSolution, SolverError> {
    opts.validate()?;
    let n = m.dim();
    if start.len() != n || start.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        return Err(SolverError::StartVector { expected: n });
    }

    let mut v = scale_to_unit_max(start.to_vec());
    let mut mv = vec![0.0; n];
    let mut last_step = f64::INFINITY;
    let mut residual = f64::INFINITY;

    for iteration in 1..=opts.max_iter {
        mat_vec(m, &v, &mut mv);
        let next = scale_to_unit_max(mv.clone());
        last_step = max_abs_diff(&next, &v);
        v = next;
        if last_step < opts.tol {
            mat_vec(m, &v, &mut mv);
            let lambda = rayleigh_mean(&mv, &v);
            residual = eigen_residual(&mv, &v, lambda);
            if residual <= opts.tol {
                return Ok(EigenSolution {
                    lambda_max: lambda,
                    vector: v,
                    iterations: iteration,
                    residual,
                });
            }
        }
    }
    Err(SolverError::NoConvergence {
        iterations: opts.max_iter,
        last_step,
        residual,
    })
}

/// Rescales an eigenvector to sum 1.
pub fn rescale(sol: &EigenSolution) -> RankingVector {
    RankingVector::from_scores(&sol.vector, Method::Eigenvector)
        .expect("power iteration on a positive matrix yields a positive vector")
}

/// Row geometric means, rescaled to sum 1.
pub fn geometric_mean_ranking(m: &PcMatrix) -> RankingVector {
    let n = m.dim();
    let scores: Vec<f64> = (0..n)
        .map(|r| {
            let log_sum: f64 = (0..n).map(|c| m.at(r, c).ln()).sum();
            (log_sum / n as f64).exp()
        })
        .collect();
    RankingVector::from_scores(&scores, Method::GeometricMean)
        .expect("geometric means of positive entries are positive")
}

fn mat_vec(m: &PcMatrix, v: &[f64], out: &mut [f64]) {
    let n = m.dim();
    for (r, slot) in out.iter_mut().enumerate() {
        *slot = m.as_slice()[r * n..(r + 1) * n]
            .iter()
            .zip(v)
            .map(|(a, b)| a * b)
            .sum();
    }
}

fn scale_to_unit_max(mut v: Vec<f64>) -> Vec<f64> {
    let max = v.iter().copied().fold(0.0_f64, f64::max);
    v.iter_mut().for_each(|x| *x /= max);
    v
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Component-wise mean of `(Mv)_i / v_i`.
fn rayleigh_mean(mv: &[f64], v: &[f64]) -> f64 {
    mv.iter().zip(v).map(|(a, b)| a / b).sum::<f64>() / v.len() as f64
}

fn eigen_residual(mv: &[f64], v: &[f64], lambda: f64) -> f64 {
    mv.iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0, f64::max)
}
