//! The plain-text structure format.
//!
//! ```text
//! # the pentagon
//! [elements]
//! 0 a b c 1
//! [covers]
//! 0 a
//! a c
//! c 1
//! 0 b
//! b 1
//! [star]
//! 1 1 1 1 1
//! b 1 b 1 1
//! c a 1 c 1
//! b a b 1 1
//! 0 a b c 1
//! ```
//!
//! `#` starts a comment running to the end of the line. `[elements]`
//! lists the labels, whitespace-separated over one or more lines.
//! `[covers]` holds one `x y` pair per line, meaning `x` is covered below
//! `y`. The optional `[star]` section has one row per element in listed
//! order, row `a` giving the expected values `a * b` for each column
//! element `b`; it is an assertion against the computed table, never an
//! input, so a fixture cannot smuggle in an inconsistent operation.
//! Labels are nonempty words over `[A-Za-z0-9_]`.

use std::fmt;

use spc_core::{Poset, PosetError};

/// A parsed file: the order itself plus the optional pinned table, kept
/// as labels because checking it against the derived table is the
/// caller's decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub poset: Poset,
    pub star_rows: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// A token outside the label alphabet.
    BadLabel { line: usize, token: String },
    UnknownSection { line: usize, name: String },
    RepeatedSection { line: usize, name: String },
    /// Content before the first section header.
    OutsideSection { line: usize },
    /// A cover line with a token count other than two.
    CoverArity { line: usize, got: usize },
    UnknownLabel { line: usize, label: String },
    StarRowWidth { line: usize, expected: usize, got: usize },
    StarRowCount { expected: usize, got: usize },
    MissingElements,
    Order(PosetError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::BadLabel { line, token } => {
                write!(f, "line {line}: {token:?} is not a label (use A-Z, a-z, 0-9, _)")
            }
            ParseError::UnknownSection { line, name } => {
                write!(f, "line {line}: unknown section [{name}]")
            }
            ParseError::RepeatedSection { line, name } => {
                write!(f, "line {line}: section [{name}] appears twice")
            }
            ParseError::OutsideSection { line } => {
                write!(f, "line {line}: content before the first section header")
            }
            ParseError::CoverArity { line, got } => {
                write!(f, "line {line}: a cover line needs exactly two labels, found {got}")
            }
            ParseError::UnknownLabel { line, label } => {
                write!(f, "line {line}: label {label:?} is not declared in [elements]")
            }
            ParseError::StarRowWidth { line, expected, got } => {
                write!(f, "line {line}: star row has {got} entries, expected {expected}")
            }
            ParseError::StarRowCount { expected, got } => {
                write!(f, "the [star] section has {got} rows, expected {expected}")
            }
            ParseError::MissingElements => write!(f, "no [elements] section"),
            ParseError::Order(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<PosetError> for ParseError {
    fn from(e: PosetError) -> Self {
        ParseError::Order(e)
    }
}

fn is_label(token: &str) -> bool {
    !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Elements,
    Covers,
    Star,
}

/// Parses the text format. `guard` bounds the element count (the subset
/// representation never exceeds 64).
pub fn parse_with_guard(text: &str, guard: usize) -> Result<Document, ParseError> {
    let mut section = Section::None;
    let mut seen = [false; 3];
    let mut labels: Vec<String> = Vec::new();
    let mut cover_lines: Vec<(usize, String, String)> = Vec::new();
    let mut star_rows: Vec<(usize, Vec<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let (next, slot) = match name {
                "elements" => (Section::Elements, 0),
                "covers" => (Section::Covers, 1),
                "star" => (Section::Star, 2),
                _ => {
                    return Err(ParseError::UnknownSection { line, name: name.to_string() });
                }
            };
            if seen[slot] {
                return Err(ParseError::RepeatedSection { line, name: name.to_string() });
            }
            seen[slot] = true;
            section = next;
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        for t in &tokens {
            if !is_label(t) {
                return Err(ParseError::BadLabel { line, token: (*t).to_string() });
            }
        }
        match section {
            Section::None => return Err(ParseError::OutsideSection { line }),
            Section::Elements => {
                labels.extend(tokens.iter().map(|t| t.to_string()));
            }
            Section::Covers => {
                if tokens.len() != 2 {
                    return Err(ParseError::CoverArity { line, got: tokens.len() });
                }
                cover_lines.push((line, tokens[0].to_string(), tokens[1].to_string()));
            }
            Section::Star => {
                star_rows.push((line, tokens.iter().map(|t| t.to_string()).collect()));
            }
        }
    }

    if labels.is_empty() {
        return Err(ParseError::MissingElements);
    }
    let index_of = |line: usize, label: &str| -> Result<usize, ParseError> {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ParseError::UnknownLabel { line, label: label.to_string() })
    };
    let mut covers: Vec<(usize, usize)> = Vec::with_capacity(cover_lines.len());
    for (line, a, b) in &cover_lines {
        covers.push((index_of(*line, a)?, index_of(*line, b)?));
    }
    let poset = Poset::from_covers_with_guard(&labels, &covers, guard)?;

    let star_rows = if seen[2] {
        if star_rows.len() != labels.len() {
            return Err(ParseError::StarRowCount {
                expected: labels.len(),
                got: star_rows.len(),
            });
        }
        let mut rows = Vec::with_capacity(star_rows.len());
        for (line, row) in star_rows {
            if row.len() != labels.len() {
                return Err(ParseError::StarRowWidth {
                    line,
                    expected: labels.len(),
                    got: row.len(),
                });
            }
            for label in &row {
                index_of(line, label)?;
            }
            rows.push(row);
        }
        Some(rows)
    } else {
        None
    };

    Ok(Document { poset, star_rows })
}

/// As [`parse_with_guard`] with the library default bound.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    parse_with_guard(text, spc_core::limits::DEFAULT_SIZE_GUARD)
}

/// Renders a poset in the text format: labels on one line, cover pairs in
/// the deterministic Hasse order, and optionally a pinned star table.
pub fn write(poset: &Poset, star_rows: Option<&[Vec<String>]>) -> String {
    let mut out = String::from("[elements]\n");
    let labels: Vec<&str> = poset.labels().collect();
    out.push_str(&labels.join(" "));
    out.push_str("\n[covers]\n");
    for (a, b) in poset.hasse_covers() {
        out.push_str(poset.label(a));
        out.push(' ');
        out.push_str(poset.label(b));
        out.push('\n');
    }
    if let Some(rows) = star_rows {
        out.push_str("[star]\n");
        for row in rows {
            let row: Vec<&str> = row.iter().map(String::as_str).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

/// The computed star table of a structure as label rows, in the shape the
/// `[star]` section uses.
pub fn star_rows_of(s: &spc_core::SpcStructure) -> Vec<Vec<String>> {
    let p = s.poset();
    p.elements()
        .map(|a| {
            p.elements()
                .map(|b| p.label(s.star(a, b)).to_string())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use spc_core::samples;
    use spc_core::SpcStructure;

    #[test]
    fn pentagon_round_trips() {
        let p = samples::n5();
        let text = write(&p, None);
        let doc = parse(&text).unwrap();
        assert_eq!(doc.poset, p);
        assert_eq!(doc.star_rows, None);
    }

    #[test]
    fn star_block_round_trips() {
        let s = samples::n5_structure();
        let rows = star_rows_of(&s);
        let text = write(s.poset(), Some(&rows));
        let doc = parse(&text).unwrap();
        assert_eq!(doc.poset, *s.poset());
        assert_eq!(doc.star_rows.as_deref(), Some(&rows[..]));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "\n# two points\n[elements]\n a b # trailing\n\n[covers]\na b # a below b\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.poset.n(), 2);
        let a = doc.poset.element_by_label("a").unwrap();
        let b = doc.poset.element_by_label("b").unwrap();
        assert!(doc.poset.lt(a, b));
    }

    #[test]
    fn elements_may_span_lines() {
        let text = "[elements]\na b\nc\n[covers]\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.poset.n(), 3);
        assert!(doc.poset.hasse_covers().is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse("[elements]\na b\n[covers]\na b c\n"),
            Err(ParseError::CoverArity { line: 4, got: 3 })
        );
        assert_eq!(
            parse("[elements]\na b\n[covers]\na z\n"),
            Err(ParseError::UnknownLabel { line: 4, label: "z".into() })
        );
        assert_eq!(
            parse("a b\n[covers]\n"),
            Err(ParseError::OutsideSection { line: 1 })
        );
        assert_eq!(
            parse("[elements]\na b$\n"),
            Err(ParseError::BadLabel { line: 2, token: "b$".into() })
        );
        assert_eq!(
            parse("[stuff]\n"),
            Err(ParseError::UnknownSection { line: 1, name: "stuff".into() })
        );
        assert_eq!(
            parse("[elements]\na\n[elements]\nb\n"),
            Err(ParseError::RepeatedSection { line: 3, name: "elements".into() })
        );
        assert_eq!(parse("# nothing\n"), Err(ParseError::MissingElements));
    }

    #[test]
    fn star_shape_is_validated() {
        let base = "[elements]\na b\n[covers]\na b\n[star]\n";
        assert_eq!(
            parse(&format!("{base}b b\n")),
            Err(ParseError::StarRowCount { expected: 2, got: 1 })
        );
        assert_eq!(
            parse(&format!("{base}b b b\nb b\n")),
            Err(ParseError::StarRowWidth { line: 6, expected: 2, got: 3 })
        );
        assert_eq!(
            parse(&format!("{base}b z\nb b\n")),
            Err(ParseError::UnknownLabel { line: 6, label: "z".into() })
        );
    }

    #[test]
    fn cycles_and_duplicates_are_order_errors() {
        assert!(matches!(
            parse("[elements]\na b\n[covers]\na b\nb a\n"),
            Err(ParseError::Order(PosetError::CycleDetected { .. }))
        ));
        assert!(matches!(
            parse("[elements]\na a\n"),
            Err(ParseError::Order(PosetError::DuplicateLabel { .. }))
        ));
    }

    #[test]
    fn guard_is_enforced() {
        let labels: Vec<String> = (0..30).map(|i| format!("v{i}")).collect();
        let text = format!("[elements]\n{}\n", labels.join(" "));
        assert!(matches!(
            parse_with_guard(&text, 24),
            Err(ParseError::Order(PosetError::TooLarge(_)))
        ));
        assert!(parse_with_guard(&text, 32).is_ok());
    }

    #[test]
    fn written_covers_regenerate_the_same_relation() {
        for p in [samples::fig2(), samples::boolean4(), samples::chain(4)] {
            let doc = parse(&write(&p, None)).unwrap();
            assert_eq!(doc.poset, p);
        }
        let s = SpcStructure::derive(samples::fig2()).unwrap();
        let rows = star_rows_of(&s);
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(|r| r.len() == 7));
    }
}
