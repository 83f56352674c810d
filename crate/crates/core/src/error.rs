use thiserror::Error;

/// Failures while building, parsing or editing a [`PcMatrix`](crate::PcMatrix).
///
/// Row and column coordinates are 1-based, matching the user-facing
/// formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("row {row}, column {col}: cannot parse {text:?} as a positive number")]
    Parse {
        row: usize,
        col: usize,
        text: String,
    },

    #[error("malformed input: {0}")]
    Syntax(String),

    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("dimension {0} outside the supported range {min}..={max}", min = crate::matrix::MIN_DIM, max = crate::matrix::MAX_DIM)]
    Dimension(usize),

    #[error("row {row}, column {col}: entry {value} is not strictly positive")]
    NonPositive { row: usize, col: usize, value: f64 },

    #[error("row {row}, column {col}: diagonal entry is {value}, expected 1")]
    Diagonal { row: usize, col: usize, value: f64 },

    #[error(
        "row {row}, column {col}: m[{row},{col}] * m[{col},{row}] = {product}, not reciprocal"
    )]
    Reciprocity {
        row: usize,
        col: usize,
        product: f64,
    },

    #[error("{found} labels given for a {expected}x{expected} matrix")]
    LabelCount { expected: usize, found: usize },

    #[error("pair ({row}, {col}) is missing")]
    MissingPair { row: usize, col: usize },

    #[error("pair ({row}, {col}) given more than once")]
    DuplicatePair { row: usize, col: usize },

    #[error("index ({row}, {col}) out of range for dimension {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },

    #[error("row {row}, column {col}: diagonal entries are fixed at 1")]
    DiagonalImmutable { row: usize, col: usize },
}

impl MatrixError {
    /// The offending 1-based `(row, col)` when the error has one.
    pub fn location(&self) -> Option<(usize, usize)> {
        use MatrixError::*;
        match *self {
            Parse { row, col, .. }
            | NonPositive { row, col, .. }
            | Diagonal { row, col, .. }
            | Reciprocity { row, col, .. }
            | MissingPair { row, col }
            | DuplicatePair { row, col }
            | IndexOutOfRange { row, col, .. }
            | DiagonalImmutable { row, col } => Some((row, col)),
            NotSquare { row, .. } => Some((row, 0)),
            Syntax(_) | Dimension(_) | LabelCount { .. } => None,
        }
    }

    /// Short machine-readable tag used in structured error responses.
    pub fn kind(&self) -> &'static str {
        use MatrixError::*;
        match self {
            Parse { .. } => "parse",
            Syntax(_) => "syntax",
            NotSquare { .. } => "not_square",
            Dimension(_) => "dimension",
            NonPositive { .. } => "non_positive",
            Diagonal { .. } => "diagonal",
            Reciprocity { .. } => "reciprocity",
            LabelCount { .. } => "label_count",
            MissingPair { .. } => "missing_pair",
            DuplicatePair { .. } => "duplicate_pair",
            IndexOutOfRange { .. } => "index_out_of_range",
            DiagonalImmutable { .. } => "diagonal_immutable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("power iteration did not converge after {iterations} iterations (last step {last_step:e}, residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        last_step: f64,
        residual: f64,
    },

    #[error("invalid solver options: {0}")]
    Options(String),

    #[error("start vector must have {expected} strictly positive components")]
    StartVector { expected: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiscrepancyError {
    #[error("ranking has {found} weights but the matrix has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the epsilon route to the Saaty index needs the eigenvector ranking, got {0}")]
    NotEigenvector(crate::ranking::Method),

    #[error("column {col} out of range for dimension {n}")]
    IndexOutOfRange { col: usize, n: usize },

    #[error("delta must be finite and nonnegative, got {0}")]
    InvalidDelta(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RevisionError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),

    #[error(transparent)]
    Solver(#[from] SolverError),

    #[error("nothing to undo")]
    NothingToUndo,
}

/// Umbrella error for callers that mix operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Discrepancy(#[from] DiscrepancyError),
    #[error("nothing to undo")]
    NothingToUndo,
}

impl From<RevisionError> for Error {
    fn from(e: RevisionError) -> Self {
        match e {
            RevisionError::Matrix(e) => Error::Matrix(e),
            RevisionError::Solver(e) => Error::Solver(e),
            RevisionError::NothingToUndo => Error::NothingToUndo,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
