//! Pairwise comparison matrices.
//!
//! A [`PcMatrix`] holds `n x n` strictly positive judgments `m_ij`, read as
//! "concept `i` is worth `m_ij` times concept `j`". Every value of this type
//! is reciprocal: the lower triangle always stores the exact floating point
//! reciprocals of the upper triangle after construction, so downstream math
//! never sees a half-edited pair.
//!
//! All indices in this module's public API are 1-based.

use serde::{Deserialize, Serialize};

use crate::error::MatrixError;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 64;

/// Accepted deviation of `m_ij * m_ji` from 1 when validating input.
pub const RECIPROCITY_TOLERANCE: f64 = 1e-5;

/// Deviation of a triad product from 1 under which the matrix counts as consistent.
pub const TRIAD_TOLERANCE: f64 = 1e-9;

/// Positive reciprocal judgment matrix with concept labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixDoc", try_from = "MatrixDoc")]
pub struct PcMatrix {
    n: usize,
    entries: Vec<f64>,
    labels: Vec<String>,
}

/// The JSON interchange form `{"labels": [...], "matrix": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub matrix: Vec<Vec<f64>>,
}

impl From<PcMatrix> for MatrixDoc {
    fn from(m: PcMatrix) -> Self {
        MatrixDoc {
            matrix: m.rows(),
            labels: Some(m.labels),
        }
    }
}

impl TryFrom<MatrixDoc> for PcMatrix {
    type Error = MatrixError;

    fn try_from(doc: MatrixDoc) -> Result<Self, Self::Error> {
        PcMatrix::new(doc.matrix, doc.labels)
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("c{i}")).collect()
}

fn check_dimension(n: usize) -> Result<(), MatrixError> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(MatrixError::Dimension(n))
    }
}

impl PcMatrix {
    /// Validates a full grid and canonicalizes its lower triangle.
    ///
    /// Labels default to `c1..cn`.
    pub fn new(rows: Vec<Vec<f64>>, labels: Option<Vec<String>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare {
                    row: r + 1,
                    expected: n,
                    found: row.len(),
                });
            }
        }
        check_dimension(n)?;
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(MatrixError::LabelCount {
                    expected: n,
                    found: l.len(),
                })
            }
            Some(l) => l,
            None => default_labels(n),
        };

        for (r, row) in rows.iter().enumerate() {
            for (c, &value) in row.iter().enumerate() {
                let (row, col) = (r + 1, c + 1);
                if !(value.is_finite() && value > 0.0) {
                    return Err(MatrixError::NonPositive { row, col, value });
                }
                if r == c && value != 1.0 {
                    return Err(MatrixError::Diagonal { row, col, value });
                }
            }
        }
        for r in 0..n {
            for c in 0..r {
                let product = rows[r][c] * rows[c][r];
                if (product - 1.0).abs() > RECIPROCITY_TOLERANCE {
                    return Err(MatrixError::Reciprocity {
                        row: r + 1,
                        col: c + 1,
                        product,
                    });
                }
            }
        }

        let mut entries: Vec<f64> = rows.into_iter().flatten().collect();
        for r in 0..n {
            for c in 0..r {
                entries[r * n + c] = 1.0 / entries[c * n + r];
            }
        }
        Ok(PcMatrix { n, entries, labels })
    }

    /// Builds a matrix from the `n(n-1)/2` judgments above the diagonal.
    ///
    /// Each triple is `(i, j, value)` with `i < j`.
    pub fn from_upper_triangle(
        n: usize,
        upper: &[(usize, usize, f64)],
    ) -> Result<Self, MatrixError> {
        check_dimension(n)?;
        let mut seen = vec![false; n * n];
        let mut entries = vec![1.0; n * n];
        for &(i, j, value) in upper {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(MatrixError::IndexOutOfRange { row: i, col: j, n });
            }
            if i == j {
                return Err(MatrixError::DiagonalImmutable { row: i, col: j });
            }
            if i > j {
                // only the upper triangle is accepted
                return Err(MatrixError::IndexOutOfRange { row: i, col: j, n });
            }
            if !(value.is_finite() && value > 0.0) {
                return Err(MatrixError::NonPositive {
                    row: i,
                    col: j,
                    value,
                });
            }
            let (r, c) = (i - 1, j - 1);
            if std::mem::replace(&mut seen[r * n + c], true) {
                return Err(MatrixError::DuplicatePair { row: i, col: j });
            }
            entries[r * n + c] = value;
            entries[c * n + r] = 1.0 / value;
        }
        for r in 0..n {
            for c in r + 1..n {
                if !seen[r * n + c] {
                    return Err(MatrixError::MissingPair {
                        row: r + 1,
                        col: c + 1,
                    });
                }
            }
        }
        Ok(PcMatrix {
            n,
            entries,
            labels: default_labels(n),
        })
    }

    /// Consistent matrix `m_ij = w_i / w_j` generated by a positive weight vector.
    pub fn from_weights(weights: &[f64]) -> Result<Self, MatrixError> {
        let n = weights.len();
        check_dimension(n)?;
        if let Some(pos) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(MatrixError::NonPositive {
                row: pos + 1,
                col: pos + 1,
                value: weights[pos],
            });
        }
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push((i + 1, j + 1, weights[i] / weights[j]));
            }
        }
        Self::from_upper_triangle(n, &upper)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, MatrixError> {
        if labels.len() != self.n {
            return Err(MatrixError::LabelCount {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Entry `m_ij`, 1-based. Panics when out of range.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index ({i}, {j}) out of range for dimension {}",
            self.n
        );
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// 0-based access for internal loops.
    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.n + c]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn checked_index(&self, i: usize, j: usize) -> Result<(), MatrixError> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(MatrixError::IndexOutOfRange {
                row: i,
                col: j,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Returns a copy with `m_ij = v` and `m_ji = 1/v`.
    pub fn set_entry(&self, i: usize, j: usize, v: f64) -> Result<Self, MatrixError> {
        self.checked_index(i, j)?;
        if i == j {
            return Err(MatrixError::DiagonalImmutable { row: i, col: j });
        }
        if !(v.is_finite() && v > 0.0) {
            return Err(MatrixError::NonPositive {
                row: i,
                col: j,
                value: v,
            });
        }
        let mut next = self.clone();
        let n = self.n;
        next.entries[(i - 1) * n + (j - 1)] = v;
        next.entries[(j - 1) * n + (i - 1)] = 1.0 / v;
        Ok(next)
    }

    /// Product `m_ij * m_jk * m_ki` for a 1-based triple.
    pub fn triad_product(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entry(i, j) * self.entry(j, k) * self.entry(k, i)
    }

    /// Exhaustive scan of every triad for the one furthest from consistency.
    pub fn consistency_scan(&self) -> TriadReport {
        let n = self.n;
        let mut worst = TriadReport {
            worst_triad: None,
            worst_product: 1.0,
            is_consistent: true,
        };
        let mut worst_dev = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let forward = self.at(i, j) * self.at(j, k) * self.at(k, i);
                    let backward = self.at(i, k) * self.at(k, j) * self.at(j, i);
                    for (product, triad) in [(forward, [i, j, k]), (backward, [i, k, j])] {
                        let dev = (product - 1.0).abs();
                        if worst.worst_triad.is_none() || dev > worst_dev {
                            worst_dev = dev;
                            worst.worst_product = product;
                            worst.worst_triad = Some(triad.map(|x| x + 1));
                        }
                    }
                }
            }
        }
        worst.is_consistent = worst_dev <= TRIAD_TOLERANCE;
        worst
    }
}

/// Outcome of [`PcMatrix::consistency_scan`].
///
/// `worst_triad` is `None` only for 2x2 matrices, which have no triads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriadReport {
    pub worst_triad: Option<[usize; 3]>,
    pub worst_product: f64,
    pub is_consistent: bool,
}
