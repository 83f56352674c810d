//! The full set of derived quantities for one matrix.
//!
//! [`Analysis`] is the JSON interchange bundle shared by the CLI, the HTTP
//! service and the revision workflow.

use serde::{Deserialize, Serialize};

use crate::discrepancy::{
    cop_safety, local_discrepancy_matrix, saaty_index, CopReport, DiscrepancyMatrix,
};
use crate::error::SolverError;
use crate::matrix::{PcMatrix, TriadReport};
use crate::ranking::{
    geometric_mean_ranking, principal_eigen, rescale, Method, RankingVector, SolverOptions,
};
use crate::revision::RevisionSuggestion;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub ranking: RankingVector,
    pub lambda_max: f64,
    pub saaty_index: f64,
    pub solver: SolverStats,
    pub discrepancy: DiscrepancyMatrix,
    pub cop: CopReport,
    pub triads: TriadReport,
    pub suggestion: RevisionSuggestion,
}

impl Analysis {
    /// Runs the eigen solver and derives everything else from `method`'s ranking.
    ///
    /// `lambda_max` and the Saaty index always come from the eigenpair.
    pub fn compute(
        m: &PcMatrix,
        opts: &SolverOptions,
        method: Method,
    ) -> Result<Self, SolverError> {
        let sol = principal_eigen(m, opts)?;
        let ranking = match method {
            Method::Eigenvector => rescale(&sol),
            Method::GeometricMean => geometric_mean_ranking(m),
        };
        let discrepancy =
            local_discrepancy_matrix(m, &ranking).expect("ranking derived from the same matrix");
        let cop = cop_safety(m, &ranking).expect("ranking derived from the same matrix");
        let suggestion = RevisionSuggestion::from_parts(m, &ranking, &discrepancy);
        Ok(Analysis {
            labels: m.labels().to_vec(),
            matrix: m.rows(),
            lambda_max: sol.lambda_max,
            saaty_index: saaty_index(sol.lambda_max, m.dim()),
            solver: SolverStats {
                iterations: sol.iterations,
                residual: sol.residual,
            },
            triads: m.consistency_scan(),
            ranking,
            discrepancy,
            cop,
            suggestion,
        })
    }

    pub fn weights(&self) -> &[f64] {
        self.ranking.weights()
    }

    pub fn global_discrepancy(&self) -> f64 {
        self.discrepancy.global
    }
}
