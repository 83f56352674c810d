//! Expert revision loop.
//!
//! A [`RevisionSession`] keeps every matrix state, points the expert at the
//! judgment with the largest local discrepancy, applies the value the expert
//! settles on, and recomputes the whole [`Analysis`] after each step.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::discrepancy::DiscrepancyMatrix;
use crate::error::RevisionError;
use crate::matrix::PcMatrix;
use crate::ranking::{Method, RankingVector, SolverOptions};

/// The judgment to revisit next.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevisionSuggestion {
    /// 1-based, `i < j`.
    pub position: (usize, usize),
    pub current_value: f64,
    pub local_discrepancy: f64,
    /// `mu_i / mu_j`: the value that zeroes this pair's discrepancy under the current ranking.
    pub consistent_target: f64,
}

impl RevisionSuggestion {
    pub(crate) fn from_parts(m: &PcMatrix, mu: &RankingVector, d: &DiscrepancyMatrix) -> Self {
        let (i, j) = d.argmax;
        RevisionSuggestion {
            position: (i, j),
            current_value: m.entry(i, j),
            local_discrepancy: d.global,
            consistent_target: mu.weight(i) / mu.weight(j),
        }
    }

    /// Target rounded to two decimals, for display only.
    pub fn rounded_target(&self) -> f64 {
        (self.consistent_target * 100.0).round() / 100.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub i: usize,
    pub j: usize,
    pub old_value: f64,
    pub new_value: f64,
    pub timestamp: DateTime<Utc>,
}

#[derive(Debug, Clone)]
pub struct RevisionSession {
    history: Vec<PcMatrix>,
    step_log: Vec<Step>,
    current: Analysis,
    options: SolverOptions,
    method: Method,
}

/// Serializable summary of a session: its latest bundle and the step log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionView {
    pub history_len: usize,
    pub step_log: Vec<Step>,
    pub bundle: Analysis,
}

impl RevisionSession {
    /// Opens a session with default solver settings and the eigenvector ranking.
    pub fn open(m: PcMatrix) -> Result<Self, RevisionError> {
        Self::open_with(m, SolverOptions::default(), Method::Eigenvector)
    }

    pub fn open_with(
        m: PcMatrix,
        options: SolverOptions,
        method: Method,
    ) -> Result<Self, RevisionError> {
        let current = Analysis::compute(&m, &options, method)?;
        Ok(RevisionSession {
            history: vec![m],
            step_log: Vec::new(),
            current,
            options,
            method,
        })
    }

    pub fn matrix(&self) -> &PcMatrix {
        self.history.last().expect("history is never empty")
    }

    pub fn history(&self) -> &[PcMatrix] {
        &self.history
    }

    pub fn step_log(&self) -> &[Step] {
        &self.step_log
    }

    pub fn current(&self) -> &Analysis {
        &self.current
    }

    pub fn options(&self) -> &SolverOptions {
        &self.options
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn suggest(&self) -> &RevisionSuggestion {
        &self.current.suggestion
    }

    /// Sets `m_ij = v` (and `m_ji = 1/v`) and recomputes the bundle.
    ///
    /// On error the session is left unchanged.
    pub fn apply(&mut self, i: usize, j: usize, v: f64) -> Result<&Analysis, RevisionError> {
        self.apply_at(i, j, v, Utc::now())
    }

    /// [`apply`](Self::apply) with an explicit log timestamp, used when replaying a journal.
    pub fn apply_at(
        &mut self,
        i: usize,
        j: usize,
        v: f64,
        timestamp: DateTime<Utc>,
    ) -> Result<&Analysis, RevisionError> {
        let prev = self.matrix();
        let next = prev.set_entry(i, j, v)?;
        let old_value = prev.entry(i, j);
        let analysis = Analysis::compute(&next, &self.options, self.method)?;
        self.history.push(next);
        self.step_log.push(Step {
            i,
            j,
            old_value,
            new_value: v,
            timestamp,
        });
        self.current = analysis;
        Ok(&self.current)
    }

    pub fn undo(&mut self) -> Result<&Analysis, RevisionError> {
        if self.history.len() < 2 {
            return Err(RevisionError::NothingToUndo);
        }
        let restored = &self.history[self.history.len() - 2];
        let analysis = Analysis::compute(restored, &self.options, self.method)?;
        self.history.pop();
        self.step_log.pop();
        self.current = analysis;
        Ok(&self.current)
    }

    pub fn view(&self) -> SessionView {
        SessionView {
            history_len: self.history.len(),
            step_log: self.step_log.clone(),
            bundle: self.current.clone(),
        }
    }
}
