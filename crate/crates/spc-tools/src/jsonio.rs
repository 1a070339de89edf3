//! JSON import and export.
//!
//! The document mirrors the text format: `elements` and `covers` define
//! the order, `star` pins the expected operation table. Export can
//! additionally embed the enumerated filters (member label lists) and
//! congruences (block index per element, in element order). Keys
//! serialize in declaration order, so output is byte-deterministic.

use serde::{Deserialize, Serialize};

use spc_core::filter::Filter;
use spc_core::{Congruence, Poset};

use crate::format::{Document, ParseError};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonDocument {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub star: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub filters: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub congruences: Option<Vec<Vec<usize>>>,
}

/// Assembles the export document. `star` rows come from the caller so a
/// plain order (no derivable star) can still be exported.
pub fn export(
    p: &Poset,
    star: Option<Vec<Vec<String>>>,
    filters: Option<&[Filter]>,
    congruences: Option<&[Congruence]>,
) -> JsonDocument {
    JsonDocument {
        elements: p.labels().map(str::to_string).collect(),
        covers: p
            .hasse_covers()
            .into_iter()
            .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
            .collect(),
        star,
        filters: filters.map(|fs| {
            fs.iter()
                .map(|f| f.elements.iter().map(|e| p.label(e).to_string()).collect())
                .collect()
        }),
        congruences: congruences.map(|cs| {
            cs.iter()
                .map(|c| p.elements().map(|e| c.block_index(e)).collect())
                .collect()
        }),
    }
}

/// Renders with two-space indentation and a trailing newline.
pub fn to_string(doc: &JsonDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("the document is plain data");
    out.push('\n');
    out
}

#[derive(Debug)]
pub enum JsonError {
    Syntax(serde_json::Error),
    Content(ParseError),
}

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JsonError::Syntax(e) => write!(f, "{e}"),
            JsonError::Content(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for JsonError {}

/// Reads a JSON document back into a structure document. Embedded
/// `filters`/`congruences` are derived data and are ignored on import;
/// the `star` block is kept as an assertion exactly like the text format.
pub fn parse_with_guard(text: &str, guard: usize) -> Result<Document, JsonError> {
    let doc: JsonDocument = serde_json::from_str(text).map_err(JsonError::Syntax)?;
    // Reuse the text-format validation by rendering the order sections;
    // the line numbers in any error then index into this regenerated
    // text, which the error message spells out.
    let mut text = String::from("[elements]\n");
    text.push_str(&doc.elements.join(" "));
    text.push_str("\n[covers]\n");
    for (a, b) in &doc.covers {
        text.push_str(a);
        text.push(' ');
        text.push_str(b);
        text.push('\n');
    }
    if let Some(rows) = &doc.star {
        text.push_str("[star]\n");
        for row in rows {
            text.push_str(&row.join(" "));
            text.push('\n');
        }
    }
    crate::format::parse_with_guard(&text, guard).map_err(JsonError::Content)
}
