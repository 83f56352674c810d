//! CSV and JSON forms of [`PcMatrix`].
//!
//! CSV: comma separated, an optional first row of labels, decimal points,
//! and fractions such as `1/3` evaluated as a division. JSON:
//! `{"labels": [...], "matrix": [[...], ...]}` with `labels` optional.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MatrixError;
use crate::matrix::{MatrixDoc, PcMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown matrix format {other:?}")),
        }
    }
}

impl Format {
    /// Guesses the format from the first non-blank character.
    pub fn sniff(text: &str) -> Format {
        match text.trim_start().chars().next() {
            Some('{') | Some('[') => Format::Json,
            _ => Format::Csv,
        }
    }
}

pub fn parse_matrix(text: &str, format: Format) -> Result<PcMatrix, MatrixError> {
    match format {
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
    }
}

/// Parses a single judgment: a decimal number or a fraction `a/b`.
pub fn parse_judgment(cell: &str) -> Option<f64> {
    let cell = cell.trim();
    let value = match cell.split_once('/') {
        Some((num, den)) => parse_plain(num)? / parse_plain(den)?,
        None => parse_plain(cell)?,
    };
    value.is_finite().then_some(value)
}

fn parse_plain(s: &str) -> Option<f64> {
    let s = s.trim();
    // f64::from_str also takes "inf" and "NaN"; judgments never do
    if s.is_empty()
        || !s
            .bytes()
            .all(|b| b.is_ascii_digit() || b".eE+-".contains(&b))
    {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn parse_csv(text: &str) -> Result<PcMatrix, MatrixError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut records = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| MatrixError::Syntax(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        records.push(record);
    }
    if records.is_empty() {
        return Err(MatrixError::Syntax("no rows".into()));
    }

    let labels = if records[0].iter().all(|cell| parse_judgment(cell).is_none()) {
        let header = records.remove(0);
        Some(header.iter().map(str::to_owned).collect::<Vec<_>>())
    } else {
        None
    };

    let mut rows = Vec::with_capacity(records.len());
    for (r, record) in records.iter().enumerate() {
        let row = record
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                parse_judgment(cell).ok_or_else(|| MatrixError::Parse {
                    row: r + 1,
                    col: c + 1,
                    text: cell.to_owned(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    PcMatrix::new(rows, labels)
}

fn parse_json(text: &str) -> Result<PcMatrix, MatrixError> {
    let doc: MatrixDoc =
        serde_json::from_str(text).map_err(|e| MatrixError::Syntax(e.to_string()))?;
    PcMatrix::try_from(doc)
}

/// CSV with a label header row; numbers use the shortest exact representation.
pub fn to_csv(m: &PcMatrix) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(m.labels()).expect("in-memory write");
    for row in m.rows() {
        writer
            .write_record(row.iter().map(|v| v.to_string()))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn to_json(m: &PcMatrix) -> String {
    serde_json::to_string_pretty(m).expect("matrix serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_CSV: &str =
        "1,2.5,4,9.5\n0.4,1,3,6.5\n0.25,0.333333,1,5\n0.105263,0.153846,0.2,1\n";

    #[test]
    fn example_csv_is_accepted_and_canonicalized() {
        let m = parse_matrix(EXAMPLE_CSV, Format::Csv).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.entry(3, 2), 1.0 / 3.0);
        assert_eq!(m.entry(4, 1), 1.0 / 9.5);
        assert_eq!(m.labels(), ["c1", "c2", "c3", "c4"]);
    }

    #[test]
    fn identity_and_reciprocity_error() {
        let m = parse_matrix("1,1\n1,1", Format::Csv).unwrap();
        assert_eq!(m.rows(), vec![vec![1.0; 2]; 2]);

        let err = parse_matrix("1,2\n0.4,1", Format::Csv).unwrap_err();
        assert!(
            matches!(err, MatrixError::Reciprocity { row: 2, col: 1, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn header_row_and_fractions() {
        let text = "price,\"size, total\",comfort\n1,3,1/2\n1/3,1,1/6\n2,6,1\n";
        let m = parse_matrix(text, Format::Csv).unwrap();
        assert_eq!(m.labels(), ["price", "size, total", "comfort"]);
        assert_eq!(m.entry(1, 3), 0.5);
        assert_eq!(m.entry(2, 1), 1.0 / 3.0);
    }

    #[test]
    fn parse_errors_carry_coordinates() {
        let err = parse_matrix("1,2\n0.5,abc", Format::Csv).unwrap_err();
        assert_eq!(
            err,
            MatrixError::Parse {
                row: 2,
                col: 2,
                text: "abc".into()
            }
        );

        let err = parse_matrix("1,2\n0.5,1,3", Format::Csv).unwrap_err();
        assert!(matches!(err, MatrixError::NotSquare { row: 2, .. }));

        let err = parse_matrix("1,inf\n0,1", Format::Csv).unwrap_err();
        assert_eq!(err.location(), Some((1, 2)));

        let err = parse_matrix("1,0\n0,1", Format::Csv).unwrap_err();
        assert!(matches!(
            err,
            MatrixError::NonPositive { row: 1, col: 2, .. }
        ));

        assert!(matches!(
            parse_matrix("", Format::Csv),
            Err(MatrixError::Syntax(_))
        ));
        assert!(matches!(
            parse_matrix("1", Format::Csv),
            Err(MatrixError::Dimension(1))
        ));
    }

    #[test]
    fn json_form() {
        let text = r#"{"labels": ["a", "b"], "matrix": [[1, 4], [0.25, 1]]}"#;
        let m = parse_matrix(text, Format::Json).unwrap();
        assert_eq!(m.labels(), ["a", "b"]);
        assert_eq!(m.entry(1, 2), 4.0);

        let m = parse_matrix(r#"{"matrix": [[1, 2], [0.5, 1]]}"#, Format::Json).unwrap();
        assert_eq!(m.labels(), ["c1", "c2"]);

        let err = parse_matrix(r#"{"matrix": [[1, 2], [0.4, 1]]}"#, Format::Json).unwrap_err();
        assert_eq!(err.location(), Some((2, 1)));
        assert!(matches!(
            parse_matrix("{", Format::Json),
            Err(MatrixError::Syntax(_))
        ));
    }

    #[test]
    fn sniffing() {
        assert_eq!(Format::sniff("  {\"matrix\": []}"), Format::Json);
        assert_eq!(Format::sniff("1,2\n0.5,1"), Format::Csv);
    }

    #[test]
    fn serialized_forms_reparse() {
        let m = parse_matrix(EXAMPLE_CSV, Format::Csv).unwrap();
        assert_eq!(parse_matrix(&to_csv(&m), Format::Csv).unwrap(), m);
        assert_eq!(parse_matrix(&to_json(&m), Format::Json).unwrap(), m);
    }
}
