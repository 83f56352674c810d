//! JSON Schema (draft 2020-12) for every document the CLI and service emit
//! or accept: matrices, analysis bundles, revision sessions and error bodies.

pub const INTERCHANGE_SCHEMA: &str = include_str!("../schema/interchange.schema.json");

/// Names of the top-level definitions in [`INTERCHANGE_SCHEMA`].
pub const DOCUMENT_KINDS: [&str; 6] = [
    "matrix_doc",
    "analysis",
    "session_view",
    "session_record",
    "what_if",
    "error_body",
];
