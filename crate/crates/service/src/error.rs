use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use pcrank_core::{DiscrepancyError, MatrixError, RevisionError, SolverError};
use serde::Serialize;
use thiserror::Error;

use crate::journal::JournalError;

#[derive(Debug, Error)]
pub enum ApiError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),

    #[error(transparent)]
    Solver(#[from] SolverError),

    #[error("{0}")]
    Body(String),

    #[error("no session with id {0:?}")]
    NotFound(String),

    #[error("nothing to undo")]
    NothingToUndo,

    #[error(transparent)]
    Delta(#[from] DiscrepancyError),

    #[error(transparent)]
    Journal(#[from] JournalError),
}

impl From<RevisionError> for ApiError {
    fn from(e: RevisionError) -> Self {
        match e {
            RevisionError::Matrix(e) => ApiError::Matrix(e),
            RevisionError::Solver(e) => ApiError::Solver(e),
            RevisionError::NothingToUndo => ApiError::NothingToUndo,
        }
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: ErrorDetail,
}

#[derive(Debug, Serialize)]
struct ErrorDetail {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    col: Option<usize>,
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::Matrix(_) | ApiError::Body(_) | ApiError::Delta(_) => StatusCode::BAD_REQUEST,
            ApiError::Solver(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::NothingToUndo => StatusCode::CONFLICT,
            ApiError::Journal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            ApiError::Matrix(e) => e.kind(),
            ApiError::Solver(_) => "solver",
            ApiError::Body(_) => "invalid_body",
            ApiError::NotFound(_) => "not_found",
            ApiError::NothingToUndo => "nothing_to_undo",
            ApiError::Delta(_) => "invalid_delta",
            ApiError::Journal(_) => "storage",
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        if let ApiError::Journal(e) = &self {
            tracing::error!("journal write failed: {e}");
        }
        let (row, col) = match &self {
            ApiError::Matrix(e) => e.location().unzip(),
            _ => (None, None),
        };
        let body = ErrorBody {
            error: ErrorDetail {
                kind: self.kind(),
                message: self.to_string(),
                row,
                col,
            },
        };
        (self.status(), Json(body)).into_response()
    }
}
