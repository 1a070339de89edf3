//! Filters compatible with the sectional pseudocomplement, their
//! enumeration, generation and structure, plus deductive systems.
//!
//! A filter is a subset containing the greatest element whose membership is
//! preserved by combining star-equivalent pairs: whenever both star
//! differences of `(x1, y1)` and of `(x2, y2)` lie in the set, the star
//! difference of the componentwise combination lies in the set as well.
//! The lattice signature combines by join, meet and star; the order
//! signature combines by star and, for componentwise comparable pairs, by
//! minimum. Fixing one pair at `(z, z)` recovers the one-sided translation
//! clauses as special cases. Both conditions are intersections of Horn
//! clauses over membership, so filters are closed under intersection and
//! every subset generates a least filter.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::congruence::{OpError, Signature};
use crate::limits::{DEFAULT_CLOSEDNESS_GUARD, DEFAULT_EXHAUSTIVE_GUARD, MAX_ELEMENTS, SizeGuard};
use crate::poset::{ElementId, Poset, SubsetMask};
use crate::report::{Check, Report, Verdict};
use crate::star::SpcStructure;
use crate::term::{ideal_terms_lattice, is_closed_under, partial_ideal_terms_poset};

/// A validated filter: the member set together with the signature it was
/// checked under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter {
    pub elements: SubsetMask,
    pub signature: Signature,
}

impl Filter {
    /// Minimal members of the filter (members with no strictly smaller
    /// member).
    pub fn minimal_elements(&self, p: &Poset) -> Vec<ElementId> {
        minimal_members(p, self.elements)
    }

    /// A display name of the shape `F_<minimal members>`; an up-set is
    /// determined by its minimal members, so on the structures where
    /// filters are up-sets these names are unique.
    pub fn name(&self, p: &Poset) -> String {
        let mut out = String::from("F");
        for m in self.minimal_elements(p) {
            out.push('_');
            out.push_str(p.label(m));
        }
        out
    }
}

fn minimal_members(p: &Poset, a: SubsetMask) -> Vec<ElementId> {
    a.iter()
        .filter(|&m| a.iter().all(|o| o == m || !p.lt(o, m)))
        .collect()
}

/// Why a subset is not a filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterDefect {
    /// The greatest element is missing.
    MissingOne,
    /// A combination clause failed: both star differences of `(x1, y1)`
    /// and of `(x2, y2)` are members, yet the element described by
    /// `clause` is not.
    Translate {
        clause: &'static str,
        x1: ElementId,
        y1: ElementId,
        x2: ElementId,
        y2: ElementId,
        value: ElementId,
    },
}

impl FilterDefect {
    pub fn describe(&self, p: &Poset) -> String {
        match self {
            FilterDefect::MissingOne => String::from("the greatest element is not a member"),
            FilterDefect::Translate { clause, x1, y1, x2, y2, value } => format!(
                "{clause} = {} escapes the set at x1 = {}, y1 = {}, x2 = {}, y2 = {}",
                p.label(*value),
                p.label(*x1),
                p.label(*y1),
                p.label(*x2),
                p.label(*y2)
            ),
        }
    }
}

fn require_filter_signature(s: &SpcStructure, sig: Signature) -> Result<ElementId, OpError> {
    match sig {
        Signature::Lattice if !s.is_lattice() => Err(OpError::NotALattice),
        _ => s.top().ok_or(OpError::NoGreatestElement),
    }
}

/// Decides whether `a` is a filter under the given signature. The scan is
/// deterministic: ordered pairs of hypothesis pairs in row-major element
/// order, clauses in definition order.
pub fn is_filter(
    s: &SpcStructure,
    a: SubsetMask,
    sig: Signature,
) -> Result<Verdict<FilterDefect>, OpError> {
    let one = require_filter_signature(s, sig)?;
    if !a.contains(one) {
        return Ok(Verdict::Fails(FilterDefect::MissingOne));
    }
    let p = s.poset();
    let pairs: Vec<(ElementId, ElementId)> = hypothesis_pairs(s, a);
    for &(x1, y1) in &pairs {
        for &(x2, y2) in &pairs {
            if sig == Signature::Lattice {
                let jx = p.join(x1, x2).expect("total in a lattice");
                let jy = p.join(y1, y2).expect("total in a lattice");
                let v = s.star(jx, jy);
                if !a.contains(v) {
                    return Ok(Verdict::Fails(FilterDefect::Translate {
                        clause: "(x1 v x2) * (y1 v y2)",
                        x1,
                        y1,
                        x2,
                        y2,
                        value: v,
                    }));
                }
                let mx = p.meet(x1, x2).expect("total in a lattice");
                let my = p.meet(y1, y2).expect("total in a lattice");
                let v = s.star(mx, my);
                if !a.contains(v) {
                    return Ok(Verdict::Fails(FilterDefect::Translate {
                        clause: "(x1 ^ x2) * (y1 ^ y2)",
                        x1,
                        y1,
                        x2,
                        y2,
                        value: v,
                    }));
                }
            }
            let v = s.star(s.star(x1, x2), s.star(y1, y2));
            if !a.contains(v) {
                return Ok(Verdict::Fails(FilterDefect::Translate {
                    clause: "(x1 * x2) * (y1 * y2)",
                    x1,
                    y1,
                    x2,
                    y2,
                    value: v,
                }));
            }
            if sig == Signature::Poset && p.comparable(x1, x2) && p.comparable(y1, y2) {
                let mx = p.min_comparable(x1, x2).expect("comparable");
                let my = p.min_comparable(y1, y2).expect("comparable");
                let v = s.star(mx, my);
                if !a.contains(v) {
                    return Ok(Verdict::Fails(FilterDefect::Translate {
                        clause: "min(x1, x2) * min(y1, y2)",
                        x1,
                        y1,
                        x2,
                        y2,
                        value: v,
                    }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// All ordered pairs whose star difference lies in `a`.
fn hypothesis_pairs(s: &SpcStructure, a: SubsetMask) -> Vec<(ElementId, ElementId)> {
    let p = s.poset();
    let mut out = Vec::new();
    for x in p.elements() {
        for y in p.elements() {
            if a.contains(s.star(x, y)) && a.contains(s.star(y, x)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Enumerates all filters in the canonical order (by cardinality, then by
/// subset bits). Uses [`DEFAULT_EXHAUSTIVE_GUARD`].
pub fn enumerate_filters(s: &SpcStructure, sig: Signature) -> Result<Vec<Filter>, OpError> {
    enumerate_filters_with_guard(s, sig, DEFAULT_EXHAUSTIVE_GUARD)
}

/// As [`enumerate_filters`] with an explicit bound on the element count.
///
/// On strong structures every filter is an up-set, so non-up-sets are
/// skipped without running the full membership scan; on other structures
/// all subsets are tested.
pub fn enumerate_filters_with_guard(
    s: &SpcStructure,
    sig: Signature,
    limit: usize,
) -> Result<Vec<Filter>, OpError> {
    let one = require_filter_signature(s, sig)?;
    let p = s.poset();
    let n = p.n();
    if n > limit {
        return Err(OpError::TooLarge(SizeGuard { n, limit }));
    }
    let shortcut_to_up_sets = s.is_strong();
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << n) {
        let a = SubsetMask::from_bits(bits);
        if !a.contains(one) {
            continue;
        }
        if shortcut_to_up_sets && !is_up_set(p, a) {
            continue;
        }
        if is_filter(s, a, sig)?.holds() {
            out.push(Filter { elements: a, signature: sig });
        }
    }
    out.sort_by_key(|f| (f.elements.len(), f.elements.bits()));
    Ok(out)
}

fn is_up_set(p: &Poset, a: SubsetMask) -> bool {
    a.iter().all(|m| p.up_set(m).is_subset_of(a))
}

/// The least filter containing `m`: the intersection of all filters that
/// contain it.
pub fn generated_filter(
    s: &SpcStructure,
    m: SubsetMask,
    sig: Signature,
) -> Result<Filter, OpError> {
    generated_filter_with_guard(s, m, sig, DEFAULT_EXHAUSTIVE_GUARD)
}

/// As [`generated_filter`] with an explicit bound on the element count.
pub fn generated_filter_with_guard(
    s: &SpcStructure,
    m: SubsetMask,
    sig: Signature,
    limit: usize,
) -> Result<Filter, OpError> {
    let mut elements = s.poset().universe();
    for f in enumerate_filters_with_guard(s, sig, limit)? {
        if m.is_subset_of(f.elements) {
            elements = elements.intersect(f.elements);
        }
    }
    Ok(Filter { elements, signature: sig })
}

/// The filters ordered by inclusion, with `F_<minimal members>` labels.
#[derive(Clone, Debug)]
pub struct FilterLattice {
    pub order: Poset,
    pub filters: Vec<Filter>,
}

/// Builds the inclusion order on all filters. Fails if there are more
/// filters than the subset representation supports.
pub fn filter_lattice(s: &SpcStructure, sig: Signature) -> Result<FilterLattice, OpError> {
    filter_lattice_with_guard(s, sig, DEFAULT_EXHAUSTIVE_GUARD)
}

/// As [`filter_lattice`] with an explicit bound on the element count of
/// the underlying structure.
pub fn filter_lattice_with_guard(
    s: &SpcStructure,
    sig: Signature,
    limit: usize,
) -> Result<FilterLattice, OpError> {
    let filters = enumerate_filters_with_guard(s, sig, limit)?;
    let count = filters.len();
    if count > MAX_ELEMENTS {
        return Err(OpError::TooLarge(SizeGuard { n: count, limit: MAX_ELEMENTS }));
    }
    let p = s.poset();
    let mut labels: Vec<String> = Vec::with_capacity(count);
    for (i, f) in filters.iter().enumerate() {
        let mut name = f.name(p);
        if labels.contains(&name) {
            name = format!("{name}_{i}");
        }
        labels.push(name);
    }
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let rel =
        |i: usize, j: usize| filters[i].elements.is_subset_of(filters[j].elements);
    let order = Poset::from_relation_with_guard(&label_refs, rel, MAX_ELEMENTS)
        .expect("inclusion on distinct sets is a partial order");
    Ok(FilterLattice { order, filters })
}

/// Why a subset is not a deductive system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeductiveDefect {
    MissingOne,
    /// `x` and `x*y` are members but `y` is not.
    ModusPonens { x: ElementId, y: ElementId },
}

impl DeductiveDefect {
    pub fn describe(&self, p: &Poset) -> String {
        match self {
            DeductiveDefect::MissingOne => String::from("the greatest element is not a member"),
            DeductiveDefect::ModusPonens { x, y } => format!(
                "x = {} and x*y are members but y = {} is not",
                p.label(*x),
                p.label(*y)
            ),
        }
    }
}

/// Decides whether `d` contains the greatest element and is closed under
/// modus ponens (`x` and `x*y` members imply `y` a member).
pub fn is_deductive_system(
    s: &SpcStructure,
    d: SubsetMask,
) -> Result<Verdict<DeductiveDefect>, OpError> {
    let one = s.top().ok_or(OpError::NoGreatestElement)?;
    if !d.contains(one) {
        return Ok(Verdict::Fails(DeductiveDefect::MissingOne));
    }
    let p = s.poset();
    for x in d.iter() {
        for y in p.elements() {
            if d.contains(s.star(x, y)) && !d.contains(y) {
                return Ok(Verdict::Fails(DeductiveDefect::ModusPonens { x, y }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Verifies, for a single filter, the derived structural properties: it is
/// a deductive system, an order filter (a lattice filter in the lattice
/// signature), absorbs star from the left (order signature), and satisfies
/// the two star translation inclusions `c * (F ^ c) <= F` and
/// `(F * (F * c)) * c <= F`. Where a meet in `F ^ c` does not exist that
/// pair is skipped and counted in a note.
///
/// The properties are proved for strong structures; on a structure that is
/// not strong, or when `f` is not a filter at all, the checks are reported
/// as not applicable.
pub fn verify_filter_theorem(
    s: &SpcStructure,
    f: SubsetMask,
    sig: Signature,
) -> Result<Report, OpError> {
    require_filter_signature(s, sig)?;
    let p = s.poset();
    let mut r = Report::new(match sig {
        Signature::Lattice => "derived filter properties (lattice signature)",
        Signature::Poset => "derived filter properties (order signature)",
    });
    let labels = [
        "filter is a deductive system",
        "filter is an order filter (closed upwards, and under meets of members in the lattice signature)",
        "P * F is contained in F",
        "c * (F ^ c) and (F * (F * c)) * c are contained in F for every c",
    ];
    let inapplicable = |r: &mut Report, why: &str| {
        for l in labels {
            r.push(Check::not_applicable(l, why));
        }
    };
    if !s.is_strong() {
        inapplicable(&mut r, "structure is not strong");
        return Ok(r);
    }
    match is_filter(s, f, sig)? {
        Verdict::Fails(d) => {
            inapplicable(&mut r, &format!("hypothesis fails: {}", d.describe(p)));
            return Ok(r);
        }
        Verdict::Holds => {}
    }

    r.push(match is_deductive_system(s, f)? {
        Verdict::Holds => Check::pass(labels[0]),
        Verdict::Fails(d) => Check::fail(labels[0], d.describe(p)),
    });

    let mut order_defect = None;
    'order: for a in f.iter() {
        for b in p.elements() {
            if p.leq(a, b) && !f.contains(b) {
                order_defect = Some(format!(
                    "{} is a member but {} above it is not",
                    p.label(a),
                    p.label(b)
                ));
                break 'order;
            }
        }
    }
    if order_defect.is_none() && sig == Signature::Lattice {
        'meets: for a in f.iter() {
            for b in f.iter() {
                let m = p.meet(a, b).expect("total in a lattice");
                if !f.contains(m) {
                    order_defect = Some(format!(
                        "the meet {} of members {} and {} is not a member",
                        p.label(m),
                        p.label(a),
                        p.label(b)
                    ));
                    break 'meets;
                }
            }
        }
    }
    r.push(match order_defect {
        None => Check::pass(labels[1]),
        Some(w) => Check::fail(labels[1], w),
    });

    if sig == Signature::Poset {
        let mut defect = None;
        'absorb: for a in p.elements() {
            for b in f.iter() {
                let v = s.star(a, b);
                if !f.contains(v) {
                    defect = Some(format!(
                        "{} * {} = {} is not a member",
                        p.label(a),
                        p.label(b),
                        p.label(v)
                    ));
                    break 'absorb;
                }
            }
        }
        r.push(match defect {
            None => Check::pass(labels[2]),
            Some(w) => Check::fail(labels[2], w),
        });
    } else {
        r.push(Check::not_applicable(labels[2], "stated for the order signature"));
    }

    let mut defect = None;
    let mut skipped_meets = 0usize;
    'translate: for c in p.elements() {
        for a in f.iter() {
            match p.meet(a, c) {
                Some(m) => {
                    let v = s.star(c, m);
                    if !f.contains(v) {
                        defect = Some(format!(
                            "c * ({} ^ c) = {} is not a member at c = {}",
                            p.label(a),
                            p.label(v),
                            p.label(c)
                        ));
                        break 'translate;
                    }
                }
                None => skipped_meets += 1,
            }
        }
        for a in f.iter() {
            for b in f.iter() {
                let v = s.star(s.star(a, s.star(b, c)), c);
                if !f.contains(v) {
                    defect = Some(format!(
                        "({} * ({} * c)) * c = {} is not a member at c = {}",
                        p.label(a),
                        p.label(b),
                        p.label(v),
                        p.label(c)
                    ));
                    break 'translate;
                }
            }
        }
    }
    r.push(match defect {
        None => Check::pass(labels[3]),
        Some(w) => Check::fail(labels[3], w),
    });
    if skipped_meets > 0 {
        r.note(format!(
            "{skipped_meets} pairs in F ^ c skipped because the meet does not exist"
        ));
    }
    Ok(r)
}

/// Verifies on a single subset that containing the greatest element and
/// satisfying `(M * (M * x)) * x <= M` for all `x` already forces a
/// deductive system. Reports not applicable when the hypothesis is not
/// satisfied, so a scan over many subsets shows how often it was
/// exercised.
pub fn verify_deductive_criterion(s: &SpcStructure, m: SubsetMask) -> Result<Report, OpError> {
    let one = s.top().ok_or(OpError::NoGreatestElement)?;
    let p = s.poset();
    let mut r = Report::new("deductive system criterion");
    let label = "1 in M and (M * (M * x)) * x <= M imply a deductive system";
    if !s.is_strong() {
        r.push(Check::not_applicable(label, "structure is not strong"));
        return Ok(r);
    }
    let mut hypothesis = m.contains(one);
    'hyp: for x in p.elements() {
        if !hypothesis {
            break;
        }
        for a in m.iter() {
            for b in m.iter() {
                let v = s.star(s.star(a, s.star(b, x)), x);
                if !m.contains(v) {
                    hypothesis = false;
                    break 'hyp;
                }
            }
        }
    }
    if !hypothesis {
        r.push(Check::not_applicable(label, "hypothesis not satisfied by this subset"));
        return Ok(r);
    }
    r.push(match is_deductive_system(s, m)? {
        Verdict::Holds => Check::pass(label),
        Verdict::Fails(d) => Check::fail(label, d.describe(p)),
    });
    Ok(r)
}

/// Compares the filters with the subsets closed under the matching ideal
/// term basis, over all subsets.
///
/// In the lattice signature the two collections provably coincide and a
/// mismatch in either direction is a failure. In the order signature only
/// closedness implies being a filter; the converse direction is recorded
/// in a note with the observed counts, since closedness also demands that
/// every term instance is defined and partial terms may be undefined on
/// non-lattice structures.
pub fn closedness_equivalence(s: &SpcStructure, sig: Signature) -> Result<Report, OpError> {
    closedness_equivalence_with_guard(s, sig, DEFAULT_CLOSEDNESS_GUARD)
}

/// As [`closedness_equivalence`] with an explicit bound on the element
/// count.
pub fn closedness_equivalence_with_guard(
    s: &SpcStructure,
    sig: Signature,
    limit: usize,
) -> Result<Report, OpError> {
    require_filter_signature(s, sig)?;
    let n = s.poset().n();
    if n > limit {
        return Err(OpError::TooLarge(SizeGuard { n, limit }));
    }
    let terms = match sig {
        Signature::Lattice => ideal_terms_lattice(),
        Signature::Poset => partial_ideal_terms_poset(),
    };
    let mut r = Report::new(match sig {
        Signature::Lattice => "filters versus closed subsets (lattice ideal terms)",
        Signature::Poset => "filters versus closed subsets (partial ideal terms)",
    });
    let mut filters = 0usize;
    let mut closed = 0usize;
    let mut filter_not_closed = None;
    let mut closed_not_filter = None;
    for bits in 0u64..(1u64 << n) {
        let a = SubsetMask::from_bits(bits);
        let is_f = is_filter(s, a, sig)?.holds();
        let is_c = is_closed_under(s, a, &terms).holds();
        filters += usize::from(is_f);
        closed += usize::from(is_c);
        if is_f && !is_c && filter_not_closed.is_none() {
            filter_not_closed = Some(a);
        }
        if is_c && !is_f && closed_not_filter.is_none() {
            closed_not_filter = Some(a);
        }
    }
    r.push(match closed_not_filter {
        None => Check::pass("every closed subset is a filter"),
        Some(a) => Check::fail(
            "every closed subset is a filter",
            s.poset().format_subset(a),
        ),
    });
    match sig {
        Signature::Lattice => r.push(match filter_not_closed {
            None => Check::pass("every filter is closed under the term basis"),
            Some(a) => Check::fail(
                "every filter is closed under the term basis",
                s.poset().format_subset(a),
            ),
        }),
        Signature::Poset => {
            let status = match filter_not_closed {
                None => String::from("and every filter happens to be closed here"),
                Some(a) => format!(
                    "the converse fails here, e.g. for the filter {}",
                    s.poset().format_subset(a)
                ),
            };
            r.note(format!(
                "{filters} filters, {closed} closed subsets of {} candidates; {status}",
                1u64 << n
            ));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::star::SpcStructure;

    fn mask(s: &SpcStructure, labels: &[&str]) -> SubsetMask {
        s.poset().subset(labels).unwrap()
    }

    #[test]
    fn pentagon_lattice_filters_are_the_known_three() {
        let s = samples::n5_structure();
        let fs = enumerate_filters(&s, Signature::Lattice).unwrap();
        let sets: Vec<SubsetMask> = fs.iter().map(|f| f.elements).collect();
        assert_eq!(
            sets,
            alloc::vec![
                mask(&s, &["1"]),
                mask(&s, &["a", "c", "1"]),
                mask(&s, &["0", "a", "b", "c", "1"]),
            ]
        );
    }

    #[test]
    fn wide_diamond_order_filters_are_the_known_six() {
        let s = samples::fig2_structure();
        let fs = enumerate_filters(&s, Signature::Poset).unwrap();
        let sets: Vec<SubsetMask> = fs.iter().map(|f| f.elements).collect();
        assert_eq!(
            sets,
            alloc::vec![
                mask(&s, &["1"]),
                mask(&s, &["d", "1"]),
                mask(&s, &["e", "1"]),
                mask(&s, &["d", "e", "1"]),
                mask(&s, &["a", "c", "d", "e", "1"]),
                mask(&s, &["0", "a", "b", "c", "d", "e", "1"]),
            ]
        );
    }

    #[test]
    fn enumeration_shortcut_agrees_with_the_blind_scan() {
        for (s, sig) in [
            (samples::n5_structure(), Signature::Lattice),
            (samples::n5_structure(), Signature::Poset),
            (samples::fig2_structure(), Signature::Poset),
            (
                SpcStructure::derive(samples::boolean4()).unwrap(),
                Signature::Lattice,
            ),
        ] {
            let fast: Vec<SubsetMask> = enumerate_filters(&s, sig)
                .unwrap()
                .iter()
                .map(|f| f.elements)
                .collect();
            let mut blind = Vec::new();
            for bits in 0u64..(1u64 << s.poset().n()) {
                let a = SubsetMask::from_bits(bits);
                if is_filter(&s, a, sig).unwrap().holds() {
                    blind.push(a);
                }
            }
            blind.sort_by_key(|m| (m.len(), m.bits()));
            assert_eq!(fast, blind, "signature {sig:?}");
        }
    }

    #[test]
    fn generated_filters_on_the_wide_diamond() {
        let s = samples::fig2_structure();
        let sig = Signature::Poset;
        let f = |labels: &[&str]| generated_filter(&s, mask(&s, labels), sig).unwrap().elements;
        assert_eq!(f(&[]), mask(&s, &["1"]));
        assert_eq!(f(&["d", "e"]), mask(&s, &["d", "e", "1"]));
        assert_eq!(f(&["a"]), mask(&s, &["a", "c", "d", "e", "1"]));
        assert_eq!(f(&["c"]), mask(&s, &["a", "c", "d", "e", "1"]));
        assert_eq!(f(&["b"]), s.poset().universe());
        assert_eq!(f(&["0"]), s.poset().universe());
    }

    #[test]
    fn filter_names_and_inclusion_order_on_the_wide_diamond() {
        let s = samples::fig2_structure();
        let fl = filter_lattice(&s, Signature::Poset).unwrap();
        let names: Vec<&str> = fl.order.labels().collect();
        assert_eq!(names, ["F_1", "F_d", "F_e", "F_d_e", "F_a", "F_0"]);
        let p = &fl.order;
        let covers: Vec<(&str, &str)> = p
            .hasse_covers()
            .into_iter()
            .map(|(a, b)| (p.label(a), p.label(b)))
            .collect();
        assert_eq!(
            covers,
            [
                ("F_1", "F_d"),
                ("F_1", "F_e"),
                ("F_d", "F_d_e"),
                ("F_e", "F_d_e"),
                ("F_d_e", "F_a"),
                ("F_a", "F_0"),
            ]
        );
        assert!(fl.order.is_lattice());
    }

    #[test]
    fn deductive_but_not_a_filter() {
        // {c, 1} on the pentagon satisfies modus ponens yet fails the
        // filter conditions, so the deductive property is strictly weaker.
        let s = samples::n5_structure();
        let d = mask(&s, &["c", "1"]);
        assert!(is_deductive_system(&s, d).unwrap().holds());
        match is_filter(&s, d, Signature::Lattice).unwrap() {
            Verdict::Fails(FilterDefect::Translate { .. }) => {}
            other => panic!("expected a translation defect, got {other:?}"),
        }
    }

    #[test]
    fn missing_one_is_reported() {
        let s = samples::n5_structure();
        let a = mask(&s, &["a", "c"]);
        assert_eq!(
            is_filter(&s, a, Signature::Lattice).unwrap(),
            Verdict::Fails(FilterDefect::MissingOne)
        );
        assert_eq!(
            is_deductive_system(&s, a).unwrap(),
            Verdict::Fails(DeductiveDefect::MissingOne)
        );
    }

    #[test]
    fn signature_gates() {
        let fig2 = samples::fig2_structure();
        assert!(matches!(
            enumerate_filters(&fig2, Signature::Lattice),
            Err(OpError::NotALattice)
        ));
        // A topless structure: the two-element antichain is sectionally
        // pseudocomplemented but has no greatest element, so the order
        // signature filter machinery refuses it.
        let ac = SpcStructure::derive(samples::antichain(2)).unwrap();
        assert!(matches!(
            enumerate_filters(&ac, Signature::Poset),
            Err(OpError::NoGreatestElement)
        ));
    }

    #[test]
    fn filter_theorem_reports_pass_on_known_filters() {
        let n5 = samples::n5_structure();
        for f in enumerate_filters(&n5, Signature::Lattice).unwrap() {
            let r = verify_filter_theorem(&n5, f.elements, Signature::Lattice).unwrap();
            assert!(r.passed(), "{r}");
        }
        let fig2 = samples::fig2_structure();
        for f in enumerate_filters(&fig2, Signature::Poset).unwrap() {
            let r = verify_filter_theorem(&fig2, f.elements, Signature::Poset).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn filter_theorem_is_vacuous_on_a_non_filter() {
        let s = samples::n5_structure();
        let r = verify_filter_theorem(&s, mask(&s, &["1", "b"]), Signature::Lattice).unwrap();
        assert!(r.passed());
        assert!(r
            .checks
            .iter()
            .all(|c| c.outcome == crate::report::Outcome::NotApplicable));
    }

    #[test]
    fn deductive_criterion_over_all_pentagon_subsets() {
        let s = samples::n5_structure();
        let mut exercised = 0usize;
        for bits in 0u64..32 {
            let m = SubsetMask::from_bits(bits);
            let r = verify_deductive_criterion(&s, m).unwrap();
            assert!(r.passed(), "{r}");
            if r.checks[0].outcome == crate::report::Outcome::Pass {
                exercised += 1;
            }
        }
        assert!(exercised >= 3, "the three filters at least must qualify");
    }

    #[test]
    fn closedness_matches_filters_on_chains() {
        let s = SpcStructure::derive(samples::chain(4)).unwrap();
        let r = closedness_equivalence(&s, Signature::Lattice).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn closed_subsets_need_not_be_filters() {
        // On the pentagon, {a, b, c, 1} is closed under the lattice ideal
        // terms: every all-ones instance whose arguments stay inside the
        // set lands back in it. Yet it is not a filter: both star
        // differences of (a, 0) and of (b, 0) are members, while the join
        // combination (a v b) * (0 v 0) = 1 * 0 = 0 is not. The four
        // element Boolean lattice shows the same split at {a, b, 1},
        // which is an up-set missing the meet a ^ b = 0 of two members,
        // so it is no congruence kernel either. Closedness under the
        // term basis is strictly weaker than the filter property.
        let labels: [&[&str]; 2] = [&["a", "b", "c", "1"], &["a", "b", "1"]];
        for ((s, witness), members) in [
            (samples::n5_structure(), "{a, b, c, 1}"),
            (SpcStructure::derive(samples::boolean4()).unwrap(), "{a, b, 1}"),
        ]
        .into_iter()
        .zip(labels)
        {
            let m = mask(&s, members);
            let terms = ideal_terms_lattice();
            assert!(is_closed_under(&s, m, &terms).holds());
            assert!(!is_filter(&s, m, Signature::Lattice).unwrap().holds());

            let r = closedness_equivalence(&s, Signature::Lattice).unwrap();
            assert!(!r.passed());
            let closed_check = &r.checks[0];
            assert_eq!(closed_check.label, "every closed subset is a filter");
            assert_eq!(closed_check.outcome, crate::report::Outcome::Fail);
            assert_eq!(closed_check.witness.as_deref(), Some(witness));
            let filter_check = &r.checks[1];
            assert_eq!(filter_check.label, "every filter is closed under the term basis");
            assert_eq!(filter_check.outcome, crate::report::Outcome::Pass);
        }
    }

    #[test]
    fn closedness_on_the_wide_diamond_has_no_closed_subsets() {
        let s = samples::fig2_structure();
        let r = closedness_equivalence(&s, Signature::Poset).unwrap();
        assert!(r.passed(), "{r}");
        assert!(
            r.notes.iter().any(|n| n.contains("6 filters, 0 closed subsets")),
            "{r}"
        );
    }
}
