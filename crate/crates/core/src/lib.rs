//! Rankings from pairwise comparison matrices and how far they stray from
//! the judgments they came from.
//!
//! The crate derives priority vectors from a positive reciprocal matrix
//! (principal eigenvector by power iteration, or row geometric means),
//! measures the per-judgment discrepancy between the matrix and the ranking,
//! and checks whether the ranking preserves the order of preferences (POP)
//! and the order of intensities of preference (POIP), both directly and
//! through sufficient conditions driven by the global discrepancy.
//!
//! Matrix positions are 1-based everywhere in the public API, so `(3, 4)`
//! is the judgment of concept 3 against concept 4.
//!
//! ```
//! use pcrank_core::{Analysis, Method, PcMatrix, SolverOptions};
//!
//! let m = PcMatrix::from_upper_triangle(
//!     3,
//!     &[(1, 2, 2.0), (1, 3, 6.0), (2, 3, 2.0)],
//! ).unwrap();
//! let a = Analysis::compute(&m, &SolverOptions::default(), Method::Eigenvector).unwrap();
//! assert!(a.cop.pop_violations.is_empty());
//! println!("worst judgment at {:?}", a.discrepancy.argmax);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod discrepancy;
pub mod error;
pub mod io;
pub mod matrix;
pub mod ranking;
pub mod revision;
pub mod schema;

pub use analysis::{Analysis, SolverStats};
pub use discrepancy::{
    check_poip_direct, check_pop_direct, cop_safety, cop_safety_at, epsilon, global_discrepancy,
    local_discrepancy_matrix, row_identity_sums, saaty_index, saaty_index_via_epsilon,
    threshold_failures, CopReport, DiscrepancyMatrix, ThresholdFailures,
};
pub use error::{DiscrepancyError, Error, MatrixError, Result, RevisionError, SolverError};
pub use io::{parse_matrix, to_csv, to_json, Format};
pub use matrix::{MatrixDoc, PcMatrix, TriadReport, MAX_DIM, MIN_DIM};
pub use ranking::{
    geometric_mean_ranking, power_iteration, principal_eigen, rescale, EigenSolution, Method,
    RankingVector, SolverOptions,
};
pub use revision::{RevisionSession, RevisionSuggestion, SessionView, Step};
