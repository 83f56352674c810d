//! Discrepancy between expert judgments and a ranking, the Saaty index,
//! and the order preservation checks built on top of them.
//!
//! For a matrix `M` and ranking `mu`, `eps(i, j) = mu_i / (m_ij * mu_j)`
//! compares the ratio implied by the ranking with the judgment. The local
//! discrepancy is `max(eps - 1, 1/eps - 1)` and the global discrepancy is
//! its maximum over all pairs.
//!
//! Two order preservation conditions are checked:
//!
//! * POP: `m_ij > 1` implies `mu_i > mu_j`;
//! * POIP: `m_ij > m_kl > 1` implies `mu_i / mu_j > mu_k / mu_l`.
//!
//! With `delta` the global discrepancy, every dominance `m_ij > 1 + delta`
//! guarantees POP, and every qualifying ratio `m_ij / m_kl > (1 + delta)^2`
//! guarantees POIP. Both conditions are sufficient, not necessary.
//!
//! Indices are 1-based throughout.

use serde::{Deserialize, Serialize};

use crate::error::DiscrepancyError;
use crate::matrix::PcMatrix;
use crate::ranking::{Method, RankingVector};

/// Saaty indices with magnitude below this are reported as 0.
pub const SAATY_CLAMP: f64 = 1e-10;

fn check_dims(m: &PcMatrix, mu: &RankingVector) -> Result<(), DiscrepancyError> {
    if m.dim() != mu.len() {
        return Err(DiscrepancyError::DimensionMismatch {
            expected: m.dim(),
            found: mu.len(),
        });
    }
    Ok(())
}

/// `eps(i, j) = (1 / m_ij) * (mu_i / mu_j)`; exactly 1 on the diagonal.
pub fn epsilon(m: &PcMatrix, mu: &RankingVector, i: usize, j: usize) -> f64 {
    if i == j {
        return 1.0;
    }
    eps0(m, mu.weights(), i - 1, j - 1)
}

#[inline]
fn eps0(m: &PcMatrix, w: &[f64], r: usize, c: usize) -> f64 {
    w[r] / (m.at(r, c) * w[c])
}

#[inline]
fn local_from_eps(eps: f64) -> f64 {
    (eps - 1.0).max(1.0 / eps - 1.0)
}

/// Local discrepancies for every pair plus their maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyMatrix {
    pub values: Vec<Vec<f64>>,
    pub global: f64,
    /// 1-based `(i, j)` with `i < j` attaining `global`.
    pub argmax: (usize, usize),
}

impl DiscrepancyMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i - 1][j - 1]
    }
}

pub fn local_discrepancy_matrix(
    m: &PcMatrix,
    mu: &RankingVector,
) -> Result<DiscrepancyMatrix, DiscrepancyError> {
    check_dims(m, mu)?;
    let n = m.dim();
    let w = mu.weights();
    let mut values = vec![vec![0.0; n]; n];
    let mut global = f64::NEG_INFINITY;
    let mut argmax = (1, 2);
    // upper triangle only, mirrored, so the result is exactly symmetric
    for r in 0..n {
        for c in r + 1..n {
            let local = local_from_eps(eps0(m, w, r, c));
            values[r][c] = local;
            values[c][r] = local;
            if local > global {
                global = local;
                argmax = (r + 1, c + 1);
            }
        }
    }
    Ok(DiscrepancyMatrix {
        values,
        global,
        argmax,
    })
}

/// Global discrepancy `D(M, mu)`.
pub fn global_discrepancy(m: &PcMatrix, mu: &RankingVector) -> Result<f64, DiscrepancyError> {
    local_discrepancy_matrix(m, mu).map(|d| d.global)
}

/// `(lambda_max - n) / (n - 1)`, with solver noise around zero clamped.
pub fn saaty_index(lambda_max: f64, n: usize) -> f64 {
    let value = (lambda_max - n as f64) / (n as f64 - 1.0);
    if value.abs() < SAATY_CLAMP {
        0.0
    } else {
        value
    }
}

/// The Saaty index recovered from column `j` of the epsilon matrix:
/// `(1 / (n - 1)) * sum_{i != j} (eps(i, j) - 1)`.
///
/// Only meaningful for the eigenvector ranking, where it equals
/// [`saaty_index`] for every `j`.
pub fn saaty_index_via_epsilon(
    m: &PcMatrix,
    mu_max: &RankingVector,
    j: usize,
) -> Result<f64, DiscrepancyError> {
    check_dims(m, mu_max)?;
    if mu_max.method() != Method::Eigenvector {
        return Err(DiscrepancyError::NotEigenvector(mu_max.method()));
    }
    let n = m.dim();
    if j == 0 || j > n {
        return Err(DiscrepancyError::IndexOutOfRange { col: j, n });
    }
    let sum: f64 = (1..=n)
        .filter(|&i| i != j)
        .map(|i| epsilon(m, mu_max, i, j) - 1.0)
        .sum();
    Ok(sum / (n as f64 - 1.0))
}

/// For each row `j`, `sum_{i != j} m_ji * mu_i / mu_j`.
///
/// At the eigenpair every entry equals `lambda_max - 1`.
pub fn row_identity_sums(m: &PcMatrix, mu: &RankingVector) -> Result<Vec<f64>, DiscrepancyError> {
    check_dims(m, mu)?;
    let n = m.dim();
    let w = mu.weights();
    Ok((0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| i != j)
                .map(|i| m.at(j, i) * w[i] / w[j])
                .sum()
        })
        .collect())
}

/// Every `(i, j)` with `m_ij > 1` and `mu_i <= mu_j`.
pub fn check_pop_direct(
    m: &PcMatrix,
    mu: &RankingVector,
) -> Result<Vec<(usize, usize)>, DiscrepancyError> {
    check_dims(m, mu)?;
    let w = mu.weights();
    Ok(dominances(m)
        .filter(|d| w[d.row] <= w[d.col])
        .map(|d| (d.row + 1, d.col + 1))
        .collect())
}

/// Every `(i, j, k, l)` with `m_ij > m_kl > 1` and `mu_i / mu_j <= mu_k / mu_l`.
pub fn check_poip_direct(
    m: &PcMatrix,
    mu: &RankingVector,
) -> Result<Vec<(usize, usize, usize, usize)>, DiscrepancyError> {
    check_dims(m, mu)?;
    let w = mu.weights();
    let doms: Vec<Dominance> = dominances(m).collect();
    let mut out = Vec::new();
    for a in &doms {
        for b in &doms {
            if a.value > b.value && w[a.row] / w[a.col] <= w[b.row] / w[b.col] {
                out.push((a.row + 1, a.col + 1, b.row + 1, b.col + 1));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct Dominance {
    row: usize,
    col: usize,
    value: f64,
}

/// Entries strictly above 1, row-major. Ties at exactly 1 carry no obligation.
fn dominances(m: &PcMatrix) -> impl Iterator<Item = Dominance> + '_ {
    let n = m.dim();
    (0..n).flat_map(move |row| {
        (0..n).filter_map(move |col| {
            let value = m.at(row, col);
            (value > 1.0).then_some(Dominance { row, col, value })
        })
    })
}

/// Direct POP/POIP violations together with the threshold-based verdicts.
///
/// Margins are `None` when nothing qualifies (no dominance, or no ordered
/// pair of distinct dominances); the matching verdict is then `true`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopReport {
    pub delta: f64,
    pub pop_violations: Vec<(usize, usize)>,
    pub poip_violations: Vec<(usize, usize, usize, usize)>,
    pub pop_safe: bool,
    pub poip_safe: bool,
    pub pop_threshold: f64,
    pub poip_threshold: f64,
    pub pop_margin: Option<f64>,
    pub poip_margin: Option<f64>,
}

impl CopReport {
    pub fn has_violations(&self) -> bool {
        !(self.pop_violations.is_empty() && self.poip_violations.is_empty())
    }

    pub fn is_safe(&self) -> bool {
        self.pop_safe && self.poip_safe
    }
}

/// Order preservation report with `delta` set to the computed global discrepancy.
pub fn cop_safety(m: &PcMatrix, mu: &RankingVector) -> Result<CopReport, DiscrepancyError> {
    let delta = global_discrepancy(m, mu)?;
    cop_safety_at(m, mu, delta)
}

/// Same as [`cop_safety`] but with a caller-chosen `delta`, for what-if analysis.
///
/// Verdicts use the strict forms `m_ij > delta + 1` and
/// `m_ij / m_kl > (delta + 1)^2`.
pub fn cop_safety_at(
    m: &PcMatrix,
    mu: &RankingVector,
    delta: f64,
) -> Result<CopReport, DiscrepancyError> {
    check_dims(m, mu)?;
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(DiscrepancyError::InvalidDelta(delta));
    }
    let pop_threshold = delta + 1.0;
    let poip_threshold = pop_threshold * pop_threshold;

    let doms: Vec<Dominance> = dominances(m).collect();
    let pop_margin = doms
        .iter()
        .map(|d| d.value - pop_threshold)
        .reduce(f64::min);
    let poip_margin = doms
        .iter()
        .flat_map(|a| {
            doms.iter()
                .filter(move |b| a.value > b.value)
                .map(move |b| a.value / b.value - poip_threshold)
        })
        .reduce(f64::min);

    Ok(CopReport {
        delta,
        pop_violations: check_pop_direct(m, mu)?,
        poip_violations: check_poip_direct(m, mu)?,
        pop_safe: pop_margin.is_none_or(|x| x > 0.0),
        poip_safe: poip_margin.is_none_or(|x| x > 0.0),
        pop_threshold,
        poip_threshold,
        pop_margin,
        poip_margin,
    })
}

/// Entries and pairs that fail the safety thresholds at `delta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdFailures {
    pub entries: Vec<(usize, usize)>,
    pub pairs: Vec<(usize, usize, usize, usize)>,
}

/// Lists which dominances `m_ij` are not above `delta + 1` and which
/// qualifying pairs have `m_ij / m_kl` not above `(delta + 1)^2`.
pub fn threshold_failures(m: &PcMatrix, delta: f64) -> Result<ThresholdFailures, DiscrepancyError> {
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(DiscrepancyError::InvalidDelta(delta));
    }
    let pop_threshold = delta + 1.0;
    let poip_threshold = pop_threshold * pop_threshold;
    let doms: Vec<Dominance> = dominances(m).collect();
    let entries = doms
        .iter()
        .filter(|d| d.value <= pop_threshold)
        .map(|d| (d.row + 1, d.col + 1))
        .collect();
    let mut pairs = Vec::new();
    for a in &doms {
        for b in &doms {
            if a.value > b.value && a.value / b.value <= poip_threshold {
                pairs.push((a.row + 1, a.col + 1, b.row + 1, b.col + 1));
            }
        }
    }
    Ok(ThresholdFailures { entries, pairs })
}
