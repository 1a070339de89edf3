//! Command implementations behind the `spc` binary.
//!
//! Every command builds a [`RunReport`]: a deterministic block of text for
//! stdout plus a pass flag. Timing is deliberately not part of the report —
//! the binary prints it on stderr — so the same input always produces
//! byte-identical stdout. Failures that prevent a report from being built
//! at all (unreadable input, exceeded bounds, violated preconditions) are
//! [`RunError`]s carrying the process exit code.

use std::path::Path;

use spc_core::congruence::{
    kernel, principal_congruence, quotient, verify_galois_with_guard,
    verify_quotient_theorem, verify_variety_structure_with_guard, QuotientError,
};
use spc_core::filter::{
    enumerate_filters_with_guard, filter_lattice_with_guard, generated_filter_with_guard,
    is_filter,
};
use spc_core::limits::{
    DEFAULT_EXHAUSTIVE_GUARD, DEFAULT_PARTITION_GUARD, DEFAULT_SIZE_GUARD, MAX_ELEMENTS,
};
use spc_core::star::{
    is_distributive, is_relatively_pseudocomplemented, verify_lemma_suite,
    verify_variety_identities,
};
use spc_core::term::{maltsev_check_p, maltsev_check_q, partial_maltsev_check_q};
use spc_core::{
    Check, Congruence, ElementId, OpError, Poset, Report, Signature, SpcStructure, SubsetMask,
    Verdict,
};

use crate::format::{self, Document, ParseError};
use crate::gen::{self, GenError, GeneratorConfig};
use crate::{dot, jsonio};

/// Enumeration bounds for one invocation, normally the library defaults.
/// The `SPC_SIZE_GUARD` environment variable replaces all of them with a
/// single value, which both lifts and lowers bounds uniformly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Bound on the element count for parsing and generation.
    pub construct: usize,
    /// Bound for subset scans (filter enumeration and friends).
    pub subsets: usize,
    /// Bound for partition scans (congruence enumeration).
    pub partitions: usize,
}

impl Limits {
    pub fn defaults() -> Self {
        Limits {
            construct: DEFAULT_SIZE_GUARD,
            subsets: DEFAULT_EXHAUSTIVE_GUARD,
            partitions: DEFAULT_PARTITION_GUARD,
        }
    }

    /// One value for every bound, capped by the subset representation.
    pub fn uniform(guard: usize) -> Self {
        let guard = guard.min(MAX_ELEMENTS);
        Limits { construct: guard, subsets: guard, partitions: guard }
    }

    /// Reads `SPC_SIZE_GUARD`; an unset or unparsable value falls back to
    /// the defaults (with a stderr warning when unparsable).
    pub fn from_env() -> Self {
        match std::env::var("SPC_SIZE_GUARD") {
            Ok(raw) => match raw.trim().parse::<usize>() {
                Ok(v) => Limits::uniform(v),
                Err(_) => {
                    eprintln!(
                        "warning: ignoring SPC_SIZE_GUARD={raw:?} (not a number)"
                    );
                    Limits::defaults()
                }
            },
            Err(_) => Limits::defaults(),
        }
    }
}

/// Deterministic stdout of one command plus the overall pass flag.
#[derive(Clone, Debug, Default)]
pub struct RunReport {
    out: String,
    ok: bool,
}

impl RunReport {
    fn new() -> Self {
        RunReport { out: String::new(), ok: true }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    /// Appends text that already ends with a newline.
    fn raw(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn section(&mut self, r: &Report) {
        self.raw(&r.to_string());
        if !r.passed() {
            self.ok = false;
        }
    }

    pub fn output(&self) -> &str {
        &self.out
    }

    /// True when no rendered check failed.
    pub fn passed(&self) -> bool {
        self.ok
    }

    /// 0 when passed, 1 when some check failed.
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

/// A command could not produce a report. The variants map onto process
/// exit codes: parse errors exit 2, exceeded bounds exit 3, everything
/// else (violated preconditions, impossible requests) exits 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunError {
    Parse(String),
    TooLarge(String),
    Failed(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Failed(_) => 1,
            RunError::Parse(_) => 2,
            RunError::TooLarge(_) => 3,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Parse(m) | RunError::TooLarge(m) | RunError::Failed(m) => {
                f.write_str(m)
            }
        }
    }
}

impl std::error::Error for RunError {}

impl From<ParseError> for RunError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Order(spc_core::PosetError::TooLarge(g)) => {
                RunError::TooLarge(g.to_string())
            }
            other => RunError::Parse(other.to_string()),
        }
    }
}

impl From<jsonio::JsonError> for RunError {
    fn from(e: jsonio::JsonError) -> Self {
        match e {
            jsonio::JsonError::Syntax(err) => RunError::Parse(err.to_string()),
            jsonio::JsonError::Content(inner) => inner.into(),
        }
    }
}

impl From<OpError> for RunError {
    fn from(e: OpError) -> Self {
        match e {
            OpError::TooLarge(g) => RunError::TooLarge(g.to_string()),
            other => RunError::Failed(other.to_string()),
        }
    }
}

impl From<QuotientError> for RunError {
    fn from(e: QuotientError) -> Self {
        match e {
            QuotientError::Op(op) => op.into(),
            other => RunError::Failed(other.to_string()),
        }
    }
}

impl From<GenError> for RunError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::TooLarge(g) => RunError::TooLarge(g.to_string()),
            give_up => RunError::Failed(give_up.to_string()),
        }
    }
}

/// Reads a structure file, dispatching on shape: a `.json` extension or a
/// leading `{` selects the JSON reader, anything else the text format.
pub fn load(path: &Path, limits: Limits) -> Result<Document, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Parse(format!("{}: {e}", path.display())))?;
    let json = path.extension().is_some_and(|x| x == "json")
        || text.trim_start().starts_with('{');
    if json {
        Ok(jsonio::parse_with_guard(&text, limits.construct)?)
    } else {
        Ok(format::parse_with_guard(&text, limits.construct)?)
    }
}

fn lattice_word(p: &Poset) -> &'static str {
    if p.is_lattice() {
        "lattice"
    } else {
        "not a lattice"
    }
}

fn default_sig(s: &SpcStructure) -> Signature {
    if s.is_lattice() {
        Signature::Lattice
    } else {
        Signature::Poset
    }
}

fn sig_phrase(sig: Signature) -> &'static str {
    match sig {
        Signature::Lattice => "lattice signature",
        Signature::Poset => "order signature",
    }
}

/// Derives the structure or fails the whole command; used by the commands
/// whose precondition is a sectionally pseudocomplemented input.
fn derive_required(doc: &Document) -> Result<SpcStructure, RunError> {
    SpcStructure::derive(doc.poset.clone())
        .map_err(|m| RunError::Failed(format!("not sectionally pseudocomplemented: {m}")))
}

/// Classifies, checks a pinned table if present, and runs the lemma,
/// identity and term suites. A non-derivable order is reported in-band as
/// a failing check rather than as an error, so the witness lands on
/// stdout next to the classification.
pub fn cmd_check(doc: &Document, _limits: Limits) -> Result<RunReport, RunError> {
    let p = &doc.poset;
    let mut rep = RunReport::new();
    rep.line(format!("structure: {} elements", p.n()));

    let s = match SpcStructure::derive(p.clone()) {
        Err(missing) => {
            rep.line(format!(
                "classification: {}, not sectionally pseudocomplemented",
                lattice_word(p)
            ));
            let mut r = Report::new("sectional pseudocomplementation");
            r.push(Check::fail(
                "every section has a pseudocomplement",
                missing.to_string(),
            ));
            rep.section(&r);
            return Ok(rep);
        }
        Ok(s) => s,
    };

    let mut parts: Vec<&str> = vec![lattice_word(p), "spc"];
    parts.push(if s.is_strong() { "strong" } else { "not strong" });
    if s.is_lattice() {
        let distributive = matches!(is_distributive(&s), Ok(Verdict::Holds));
        parts.push(if distributive { "distributive" } else { "not distributive" });
    }
    parts.push(match is_relatively_pseudocomplemented(&s) {
        Verdict::Holds => "relatively pseudocomplemented",
        Verdict::Fails(_) => "not relatively pseudocomplemented",
    });
    rep.line(format!("classification: {}", parts.join(", ")));

    if let Some(rows) = &doc.star_rows {
        rep.section(&pinned_table_report(&s, rows));
    }

    rep.section(&verify_lemma_suite(&s));
    if s.is_lattice() {
        rep.section(&verify_variety_identities(&s).expect("lattice mode was checked"));
        rep.section(&maltsev_check_p(&s).expect("lattice mode was checked"));
        rep.section(&maltsev_check_q(&s).expect("lattice mode was checked"));
    } else {
        rep.section(&partial_maltsev_check_q(&s));
    }
    Ok(rep)
}

/// Compares a pinned `[star]` block against the derived table. The block
/// is an assertion: the derived table is authoritative and a mismatch is
/// a check failure, never an override.
fn pinned_table_report(s: &SpcStructure, rows: &[Vec<String>]) -> Report {
    let p = s.poset();
    let computed = format::star_rows_of(s);
    let mut r = Report::new("pinned star table");
    let label = "the [star] block matches the derived table";
    let mut first = None;
    let mut mismatches = 0usize;
    for i in 0..computed.len() {
        for j in 0..computed.len() {
            if rows[i][j] != computed[i][j] {
                mismatches += 1;
                first.get_or_insert((i, j));
            }
        }
    }
    r.push(match first {
        None => Check::pass(label),
        Some((i, j)) => Check::fail(
            label,
            format!(
                "star({}, {}) = {} but the file pins {} ({} mismatching {})",
                p.label(ElementId::new(i)),
                p.label(ElementId::new(j)),
                computed[i][j],
                rows[i][j],
                mismatches,
                if mismatches == 1 { "entry" } else { "entries" },
            ),
        ),
    });
    r
}

/// Enumerates the filters, prints their inclusion order, and verifies the
/// correspondence with the congruences. `--exhaustive` re-derives the
/// filter list by testing every subset directly against the definition,
/// bypassing the up-set shortcut the enumerator uses on strong structures.
pub fn cmd_filters(
    doc: &Document,
    sig: Option<Signature>,
    exhaustive: bool,
    limits: Limits,
) -> Result<RunReport, RunError> {
    let p = &doc.poset;
    let s = derive_required(doc)?;
    let sig = sig.unwrap_or_else(|| default_sig(&s));
    let mut rep = RunReport::new();
    rep.line(format!("structure: {} elements, {}", p.n(), sig_phrase(sig)));

    let filters = enumerate_filters_with_guard(&s, sig, limits.subsets)?;
    rep.line(format!("filters: {}", filters.len()));
    for f in &filters {
        rep.line(format!("  {}", p.format_subset(f.elements)));
    }

    let fl = filter_lattice_with_guard(&s, sig, limits.subsets)?;
    let covers = fl.order.hasse_covers();
    rep.line(format!(
        "filter lattice: {} nodes, {} covers",
        fl.order.n(),
        covers.len()
    ));
    for (a, b) in covers {
        rep.line(format!("  {} < {}", fl.order.label(a), fl.order.label(b)));
    }

    if exhaustive {
        rep.section(&exhaustive_cross_check(&s, sig, &filters)?);
    }

    rep.section(&verify_galois_with_guard(&s, sig, limits.subsets, limits.partitions)?);
    Ok(rep)
}

/// Tests every subset directly against the filter definition and compares
/// the outcome with the enumerated list.
fn exhaustive_cross_check(
    s: &SpcStructure,
    sig: Signature,
    filters: &[spc_core::Filter],
) -> Result<Report, RunError> {
    let n = s.poset().n();
    let mut r = Report::new("exhaustive cross-check");
    let label = "direct subset-by-subset test agrees with the enumeration";
    let mut defect = None;
    for bits in 0u64..(1u64 << n) {
        let m = SubsetMask::from_bits(bits);
        let direct = is_filter(s, m, sig)?.holds();
        let listed = filters.iter().any(|f| f.elements == m);
        if direct != listed {
            defect = Some((m, direct));
            break;
        }
    }
    r.push(match defect {
        None => Check::pass(label),
        Some((m, direct)) => Check::fail(
            label,
            format!(
                "{} is {} by the definition but {} by the enumerator",
                s.poset().format_subset(m),
                if direct { "a filter" } else { "no filter" },
                if direct { "missing" } else { "listed" },
            ),
        ),
    });
    r.note(format!("{} subsets tested", 1u64 << n));
    Ok(r)
}

/// Enumerates the congruences and verifies the correspondence plus the
/// structure of the congruence family (permutability, joins, and in the
/// lattice signature distributivity of the congruence lattice).
pub fn cmd_congruences(
    doc: &Document,
    sig: Option<Signature>,
    limits: Limits,
) -> Result<RunReport, RunError> {
    let p = &doc.poset;
    let s = derive_required(doc)?;
    let sig = sig.unwrap_or_else(|| default_sig(&s));
    let mut rep = RunReport::new();
    rep.line(format!("structure: {} elements, {}", p.n(), sig_phrase(sig)));

    let cons = spc_core::congruence::enumerate_congruences_with_guard(&s, sig, limits.partitions)?;
    rep.line(format!("congruences: {}", cons.len()));
    for c in &cons {
        rep.line(format!("  {}", c.describe(p)));
    }

    rep.section(&verify_galois_with_guard(&s, sig, limits.subsets, limits.partitions)?);
    rep.section(&verify_variety_structure_with_guard(&s, sig, limits.partitions)?);
    Ok(rep)
}

/// Builds the principal congruence whose kernel is generated by the named
/// elements, emits the quotient as a poset file and a DOT diagram, and
/// verifies that the quotient carries the induced operation.
pub fn cmd_quotient(
    doc: &Document,
    kernel_csv: &str,
    limits: Limits,
) -> Result<RunReport, RunError> {
    let p = &doc.poset;
    let s = derive_required(doc)?;
    let sig = default_sig(&s);

    let mut m = SubsetMask::EMPTY;
    let mut named = 0usize;
    for token in kernel_csv.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        named += 1;
        match p.element_by_label(token) {
            Some(e) => m.insert(e),
            None => {
                return Err(RunError::Failed(format!(
                    "unknown element label {token:?} in --kernel"
                )))
            }
        }
    }
    if named == 0 {
        return Err(RunError::Failed(String::from(
            "--kernel needs at least one element label",
        )));
    }

    let mut rep = RunReport::new();
    rep.line(format!("structure: {} elements, {}", p.n(), sig_phrase(sig)));
    rep.line(format!("kernel seed: {}", p.format_subset(m)));

    let f = generated_filter_with_guard(&s, m, sig, limits.subsets)?;
    rep.line(format!("generated filter: {}", p.format_subset(f.elements)));

    let theta = principal_congruence(&s, m, sig)?;
    rep.line(format!("principal congruence: {}", theta.describe(p)));

    let mut r = Report::new("principal congruence");
    let kernel_label = "the kernel of the congruence is the generated filter";
    let k = kernel(&s, &theta)?;
    r.push(if k == f.elements {
        Check::pass(kernel_label)
    } else {
        Check::fail(
            kernel_label,
            format!(
                "kernel {} differs from {}",
                p.format_subset(k),
                p.format_subset(f.elements)
            ),
        )
    });
    rep.section(&r);

    let q = quotient(&s, &theta)?;
    rep.line(format!("quotient: {} classes", q.order.n()));
    rep.line("quotient poset:");
    rep.raw(&format::write(&q.order, None));
    rep.line("quotient dot:");
    rep.raw(&dot::to_dot(&q.order));

    rep.section(&verify_quotient_theorem(&s, &theta)?);
    Ok(rep)
}

/// Draws the structure named by the configuration and prints it in the
/// text format. The output is a pure function of the configuration.
pub fn cmd_generate(cfg: &GeneratorConfig, limits: Limits) -> Result<RunReport, RunError> {
    let p = gen::generate_with_guard(cfg, limits.construct)?;
    let mut rep = RunReport::new();
    rep.raw(&format::write(&p, None));
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

/// Renders the structure as a DOT diagram or as the JSON document. The
/// JSON export carries the derived table, the filters and the congruences
/// whenever those are computable within the bounds; a plain order exports
/// just its elements and covers.
pub fn cmd_export(
    doc: &Document,
    fmt: ExportFormat,
    limits: Limits,
) -> Result<RunReport, RunError> {
    let p = &doc.poset;
    let mut rep = RunReport::new();
    match fmt {
        ExportFormat::Dot => rep.raw(&dot::to_dot(p)),
        ExportFormat::Json => {
            let derived = SpcStructure::derive(p.clone()).ok();
            let star = derived.as_ref().map(format::star_rows_of);
            let mut filters: Option<Vec<spc_core::Filter>> = None;
            let mut congruences: Option<Vec<Congruence>> = None;
            if let Some(s) = &derived {
                if s.top().is_some() {
                    let sig = default_sig(s);
                    filters = enumerate_filters_with_guard(s, sig, limits.subsets).ok();
                    congruences = spc_core::congruence::enumerate_congruences_with_guard(
                        s,
                        sig,
                        limits.partitions,
                    )
                    .ok();
                }
            }
            let document = jsonio::export(p, star, filters.as_deref(), congruences.as_deref());
            rep.raw(&jsonio::to_string(&document));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spc_core::samples;

    fn doc_of(p: &Poset) -> Document {
        Document { poset: p.clone(), star_rows: None }
    }

    fn doc_with_star(p: &Poset) -> Document {
        let s = SpcStructure::derive(p.clone()).unwrap();
        Document { poset: p.clone(), star_rows: Some(format::star_rows_of(&s)) }
    }

    #[test]
    fn check_classifies_the_pentagon() {
        let rep = cmd_check(&doc_with_star(&samples::n5()), Limits::defaults()).unwrap();
        assert!(rep.passed());
        assert!(rep.output().contains(
            "classification: lattice, spc, strong, not distributive, \
             not relatively pseudocomplemented"
        ));
        assert!(rep.output().contains("pinned star table"));
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn check_classifies_the_seven_element_sample() {
        let rep = cmd_check(&doc_of(&samples::fig2()), Limits::defaults()).unwrap();
        assert!(rep.passed());
        assert!(rep.output().contains(
            "classification: not a lattice, spc, strong, not relatively pseudocomplemented"
        ));
    }

    #[test]
    fn check_reports_a_missing_section_with_its_pair() {
        let rep = cmd_check(&doc_of(&samples::bowtie()), Limits::defaults()).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.exit_code(), 1);
        assert!(rep.output().contains("not sectionally pseudocomplemented"));
        assert!(rep.output().contains("the pair (a, a) has no sectional pseudocomplement"));
    }

    #[test]
    fn check_rejects_a_corrupted_pinned_table() {
        let mut doc = doc_with_star(&samples::n5());
        doc.star_rows.as_mut().unwrap()[1][2] = String::from("0");
        let rep = cmd_check(&doc, Limits::defaults()).unwrap();
        assert!(!rep.passed());
        assert!(rep.output().contains("but the file pins 0"));
    }

    #[test]
    fn filters_on_the_samples() {
        let rep = cmd_filters(&doc_of(&samples::n5()), None, true, Limits::defaults()).unwrap();
        assert!(rep.passed(), "{}", rep.output());
        assert!(rep.output().contains("filters: 3"));
        assert!(rep.output().contains("32 subsets tested"));

        let rep = cmd_filters(&doc_of(&samples::fig2()), None, false, Limits::defaults()).unwrap();
        assert!(rep.passed(), "{}", rep.output());
        assert!(rep.output().contains("filters: 6"));
        assert!(rep.output().contains("filter lattice: 6 nodes, 6 covers"));
    }

    #[test]
    fn the_lattice_signature_is_refused_off_lattices() {
        let err = cmd_filters(
            &doc_of(&samples::fig2()),
            Some(Signature::Lattice),
            false,
            Limits::defaults(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn congruences_on_the_samples() {
        let rep = cmd_congruences(&doc_of(&samples::n5()), None, Limits::defaults()).unwrap();
        assert!(rep.passed(), "{}", rep.output());
        assert!(rep.output().contains("congruences: 3"));

        let rep = cmd_congruences(&doc_of(&samples::chain(1)), None, Limits::defaults()).unwrap();
        assert!(rep.output().contains("congruences: 1"));
    }

    #[test]
    fn quotient_by_the_two_upper_atoms_has_five_classes() {
        let rep =
            cmd_quotient(&doc_of(&samples::fig2()), "d,e", Limits::defaults()).unwrap();
        assert!(rep.passed(), "{}", rep.output());
        assert!(rep.output().contains("generated filter: {d, e, 1}"));
        assert!(rep.output().contains("quotient: 5 classes"));
        assert!(rep.output().contains("quotient poset:"));
        assert!(rep.output().contains("quotient dot:"));
    }

    #[test]
    fn quotient_by_the_top_is_the_input() {
        let rep = cmd_quotient(&doc_of(&samples::n5()), "1", Limits::defaults()).unwrap();
        assert!(rep.passed());
        assert!(rep.output().contains("quotient: 5 classes"));
    }

    #[test]
    fn quotient_of_the_pentagon_by_a_side() {
        let rep = cmd_quotient(&doc_of(&samples::n5()), "a", Limits::defaults()).unwrap();
        assert!(rep.passed(), "{}", rep.output());
        assert!(rep.output().contains("principal congruence: {0, b}{a, c, 1}"));
        assert!(rep.output().contains("quotient: 2 classes"));
    }

    #[test]
    fn unknown_kernel_labels_fail_with_a_witness() {
        let err = cmd_quotient(&doc_of(&samples::n5()), "a,zz", Limits::defaults()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("zz"));
    }

    #[test]
    fn generate_is_deterministic_through_the_command() {
        let cfg = GeneratorConfig {
            seed: 1,
            n: 5,
            density: 0.5,
            require: crate::gen::Require::Strong,
        };
        let a = cmd_generate(&cfg, Limits::defaults()).unwrap();
        let b = cmd_generate(&cfg, Limits::defaults()).unwrap();
        assert_eq!(a.output(), b.output());
        assert!(a.output().starts_with("[elements]\n"));
    }

    #[test]
    fn export_json_round_trips() {
        let doc = doc_of(&samples::fig2());
        let rep = cmd_export(&doc, ExportFormat::Json, Limits::defaults()).unwrap();
        let back = jsonio::parse_with_guard(rep.output(), 24).unwrap();
        assert_eq!(back.poset, doc.poset);
        assert!(back.star_rows.is_some());
    }

    #[test]
    fn export_dot_counts() {
        let rep = cmd_export(&doc_of(&samples::n5()), ExportFormat::Dot, Limits::defaults())
            .unwrap();
        assert_eq!(rep.output().matches("->").count(), 5);
    }

    #[test]
    fn lowered_bounds_are_reported_as_too_large() {
        let err =
            cmd_filters(&doc_of(&samples::n5()), None, false, Limits::uniform(3)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn loading_dispatches_on_shape() {
        let dir = tempfile::tempdir().unwrap();
        let text_path = dir.path().join("n5.poset");
        std::fs::write(&text_path, format::write(&samples::n5(), None)).unwrap();
        let doc = load(&text_path, Limits::defaults()).unwrap();
        assert_eq!(doc.poset, samples::n5());

        let json_path = dir.path().join("n5.json");
        let exported = cmd_export(&doc, ExportFormat::Json, Limits::defaults()).unwrap();
        std::fs::write(&json_path, exported.output()).unwrap();
        let doc2 = load(&json_path, Limits::defaults()).unwrap();
        assert_eq!(doc2.poset, samples::n5());

        let missing = load(&dir.path().join("absent"), Limits::defaults()).unwrap_err();
        assert_eq!(missing.exit_code(), 2);
    }
}
