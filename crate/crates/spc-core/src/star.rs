//! Derivation and verification of sectional pseudocomplement tables.
//!
//! For elements `a, b` of a poset the sectional pseudocomplement `a * b` is
//! the greatest `c` with `L(U(a, b), c) = L(b)`, where `U`/`L` are the
//! upper/lower cone operators and `L(S, c)` abbreviates `L(S union {c})`.
//! In a lattice this is equivalently the greatest `c` with
//! `(a v b) ^ c = b`; the test suite keeps that second route as an
//! independent oracle. A structure where every pair has a sectional
//! pseudocomplement is represented by [`SpcStructure`], which materializes
//! the whole operation table.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::poset::{format_pair, ElementId, Poset, SubsetMask};
use crate::report::{Check, Report, Verdict};

/// Whether the structure is a lattice or merely a poset. Several laws and
/// operations are only available in lattice mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    LatticeSpc,
    PosetSpc,
}

/// A lattice-only operation was applied to a structure in poset mode (or
/// vice versa).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeError {
    pub required: Mode,
    pub actual: Mode,
}

impl fmt::Display for ModeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "operation requires {:?} but the structure is {:?}",
            self.required, self.actual
        )
    }
}

impl core::error::Error for ModeError {}

/// Some pair of the poset has no sectional pseudocomplement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingStar {
    pub at: (ElementId, ElementId),
    pub a: String,
    pub b: String,
}

impl fmt::Display for MissingStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "the pair ({}, {}) has no sectional pseudocomplement",
            self.a, self.b
        )
    }
}

impl core::error::Error for MissingStar {}

/// The full `n x n` table of the star operation, row-major: entry `(a, b)`
/// is `a * b`.
#[derive(Clone, PartialEq, Eq)]
pub struct StarTable {
    n: usize,
    entries: Vec<ElementId>,
}

impl StarTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: ElementId, b: ElementId) -> ElementId {
        self.entries[a.index() * self.n + b.index()]
    }

    /// Overwrites one entry. Only useful for building deliberately corrupted
    /// tables that prove the checkers are not vacuous; a table produced by
    /// [`SpcStructure::derive`] is always consistent.
    pub fn set(&mut self, a: ElementId, b: ElementId, value: ElementId) {
        self.entries[a.index() * self.n + b.index()] = value;
    }
}

impl fmt::Debug for StarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "StarTable[")?;
        for a in 0..self.n {
            write!(f, "  ")?;
            for b in 0..self.n {
                write!(f, "{} ", self.entries[a * self.n + b].index())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A finite poset together with its sectional pseudocomplement table and
/// classification flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpcStructure {
    poset: Poset,
    star: StarTable,
    top: Option<ElementId>,
    mode: Mode,
    strong: bool,
}

impl SpcStructure {
    /// Computes the star table of `poset`, or reports the first pair (in
    /// row-major scan order) that has no sectional pseudocomplement.
    pub fn derive(poset: Poset) -> Result<Self, MissingStar> {
        let n = poset.n();
        let mut entries = Vec::with_capacity(n * n);
        for a in poset.elements() {
            for b in poset.elements() {
                match sectional_star(&poset, a, b) {
                    Some(c) => entries.push(c),
                    None => {
                        return Err(MissingStar {
                            at: (a, b),
                            a: poset.label(a).into(),
                            b: poset.label(b).into(),
                        })
                    }
                }
            }
        }
        Ok(Self::from_table(poset, StarTable { n, entries }))
    }

    /// Packs a poset with an explicit table, recomputing the classification
    /// flags from what is given. The table is not checked against the
    /// definition; the verification suites exist to expose a wrong one.
    pub fn from_table(poset: Poset, star: StarTable) -> Self {
        assert_eq!(star.n, poset.n(), "table size must match the poset");
        let top = poset.greatest();
        let mode = if poset.is_lattice() {
            Mode::LatticeSpc
        } else {
            Mode::PosetSpc
        };
        let strong = top.is_some()
            && poset.elements().all(|x| {
                poset
                    .elements()
                    .all(|y| poset.leq(x, star.get(star.get(x, y), y)))
            });
        SpcStructure { poset, star, top, mode, strong }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn table(&self) -> &StarTable {
        &self.star
    }

    pub fn star(&self, a: ElementId, b: ElementId) -> ElementId {
        self.star.get(a, b)
    }

    pub fn top(&self) -> Option<ElementId> {
        self.top
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_lattice(&self) -> bool {
        self.mode == Mode::LatticeSpc
    }

    /// True when the structure has a greatest element and satisfies
    /// `x <= (x*y)*y` everywhere.
    pub fn is_strong(&self) -> bool {
        self.strong
    }

    /// Re-checks strongness, returning a witness on failure.
    pub fn check_strong(&self) -> Verdict<StrongDefect> {
        if self.top.is_none() {
            return Verdict::Fails(StrongDefect::NoGreatestElement);
        }
        for x in self.poset.elements() {
            for y in self.poset.elements() {
                if !self.poset.leq(x, self.star(self.star(x, y), y)) {
                    return Verdict::Fails(StrongDefect::Identity(x, y));
                }
            }
        }
        Verdict::Holds
    }

    pub fn require_mode(&self, required: Mode) -> Result<(), ModeError> {
        if self.mode == required {
            Ok(())
        } else {
            Err(ModeError { required, actual: self.mode })
        }
    }
}

/// Why a structure fails to be strong.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrongDefect {
    NoGreatestElement,
    /// `x <= (x*y)*y` fails at this pair.
    Identity(ElementId, ElementId),
}

/// The sectional pseudocomplement of `a` with respect to `b`, straight from
/// the cone definition.
fn sectional_star(p: &Poset, a: ElementId, b: ElementId) -> Option<ElementId> {
    let pair = SubsetMask::singleton(a).union(SubsetMask::singleton(b));
    let cone = p.lower_bounds(p.upper_bounds(pair));
    let target = p.down_set(b);
    let mut candidates = SubsetMask::EMPTY;
    for c in p.elements() {
        if cone.intersect(p.down_set(c)) == target {
            candidates.insert(c);
        }
    }
    p.greatest_of(candidates)
}

/// Checks the basic star arithmetic laws:
///
/// 1. `a * b = 1` iff `a <= b`
/// 2. `1 * a = a`
/// 3. `a <= b * a`
/// 4. `a <= (a*b) * b` (in poset mode only under the proviso `b <= a`)
/// 5. `a <= b` implies `b*c <= a*c`
/// 6. `L(U(a, b), a*b) = L(b)`
///
/// Laws 1 to 5 need a greatest element and are reported as not applicable
/// without one; law 6 restates the defining property and is always checked.
pub fn verify_lemma_suite(s: &SpcStructure) -> Report {
    let p = s.poset();
    let mut r = Report::new("star arithmetic laws");
    match s.top() {
        None => {
            for label in [
                "a*b = 1 iff a <= b",
                "1*a = a",
                "a <= b*a",
                "a <= (a*b)*b",
                "a <= b implies b*c <= a*c",
            ] {
                r.push(Check::not_applicable(label, "no greatest element"));
            }
        }
        Some(one) => {
            let mut w = None;
            'outer1: for a in p.elements() {
                for b in p.elements() {
                    if (s.star(a, b) == one) != p.leq(a, b) {
                        w = Some((a, b));
                        break 'outer1;
                    }
                }
            }
            r.push(check_pair(p, "a*b = 1 iff a <= b", w));

            let w = p.elements().find(|&a| s.star(one, a) != a);
            r.push(match w {
                None => Check::pass("1*a = a"),
                Some(a) => Check::fail("1*a = a", format!("at {}", p.label(a))),
            });

            let mut w = None;
            'outer3: for a in p.elements() {
                for b in p.elements() {
                    if !p.leq(a, s.star(b, a)) {
                        w = Some((a, b));
                        break 'outer3;
                    }
                }
            }
            r.push(check_pair(p, "a <= b*a", w));

            let unconditional = s.is_lattice();
            let mut w = None;
            'outer4: for a in p.elements() {
                for b in p.elements() {
                    if (unconditional || p.leq(b, a)) && !p.leq(a, s.star(s.star(a, b), b)) {
                        w = Some((a, b));
                        break 'outer4;
                    }
                }
            }
            let label4 = if unconditional {
                "a <= (a*b)*b"
            } else {
                "b <= a implies a <= (a*b)*b"
            };
            r.push(check_pair(p, label4, w));

            let mut w = None;
            'outer5: for a in p.elements() {
                for b in p.elements() {
                    if !p.leq(a, b) {
                        continue;
                    }
                    for c in p.elements() {
                        if !p.leq(s.star(b, c), s.star(a, c)) {
                            w = Some((a, b));
                            break 'outer5;
                        }
                    }
                }
            }
            r.push(check_pair(p, "a <= b implies b*c <= a*c", w));
        }
    }

    let mut w = None;
    'outer6: for a in p.elements() {
        for b in p.elements() {
            let pair = SubsetMask::singleton(a).union(SubsetMask::singleton(b));
            let cone = p.lower_bounds(p.upper_bounds(pair));
            if cone.intersect(p.down_set(s.star(a, b))) != p.down_set(b) {
                w = Some((a, b));
                break 'outer6;
            }
        }
    }
    r.push(check_pair(p, "L(U(a,b), a*b) = L(b)", w));
    r
}

fn check_pair(p: &Poset, label: &str, witness: Option<(ElementId, ElementId)>) -> Check {
    match witness {
        None => Check::pass(label),
        Some((a, b)) => Check::fail(label, format!("at {}", format_pair(p, a, b))),
    }
}

/// Checks the two lattice identities that present these structures
/// equationally:
///
/// 1. `z v y <= x * ((x v y) ^ (z v y))`
/// 2. `(x v y) ^ (x * y) = y`
pub fn verify_variety_identities(s: &SpcStructure) -> Result<Report, ModeError> {
    s.require_mode(Mode::LatticeSpc)?;
    let p = s.poset();
    let join = |a, b| p.join(a, b).expect("lattice join");
    let meet = |a, b| p.meet(a, b).expect("lattice meet");
    let mut r = Report::new("defining lattice identities");

    let mut w = None;
    'outer: for x in p.elements() {
        for y in p.elements() {
            for z in p.elements() {
                let lhs = join(z, y);
                let rhs = s.star(x, meet(join(x, y), join(z, y)));
                if !p.leq(lhs, rhs) {
                    w = Some((x, y, z));
                    break 'outer;
                }
            }
        }
    }
    r.push(match w {
        None => Check::pass("z v y <= x*((x v y) ^ (z v y))"),
        Some((x, y, z)) => Check::fail(
            "z v y <= x*((x v y) ^ (z v y))",
            format!("at ({}, {}, {})", p.label(x), p.label(y), p.label(z)),
        ),
    });

    let mut w = None;
    'outer2: for x in p.elements() {
        for y in p.elements() {
            if meet(join(x, y), s.star(x, y)) != y {
                w = Some((x, y));
                break 'outer2;
            }
        }
    }
    r.push(check_pair(p, "(x v y) ^ (x*y) = y", w));
    Ok(r)
}

/// True when every pair `a, b` has a relative pseudocomplement: a greatest
/// `c` with `L(a, c)` contained in `L(b)`. Fails with the first pair (in
/// scan order) that has none.
pub fn is_relatively_pseudocomplemented(s: &SpcStructure) -> Verdict<(ElementId, ElementId)> {
    let p = s.poset();
    for a in p.elements() {
        for b in p.elements() {
            let target = p.down_set(b);
            let mut candidates = SubsetMask::EMPTY;
            for c in p.elements() {
                if p.down_set(a).intersect(p.down_set(c)).is_subset_of(target) {
                    candidates.insert(c);
                }
            }
            if p.greatest_of(candidates).is_none() {
                return Verdict::Fails((a, b));
            }
        }
    }
    Verdict::Holds
}

/// Distributivity of the underlying lattice, with a witness triple.
pub fn is_distributive(s: &SpcStructure) -> Result<Verdict<(ElementId, ElementId, ElementId)>, ModeError> {
    s.require_mode(Mode::LatticeSpc)?;
    let p = s.poset();
    let join = |a, b| p.join(a, b).expect("lattice join");
    let meet = |a, b| p.meet(a, b).expect("lattice meet");
    for x in p.elements() {
        for y in p.elements() {
            for z in p.elements() {
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)) {
                    return Ok(Verdict::Fails((x, y, z)));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn table_by_labels(s: &SpcStructure) -> Vec<Vec<String>> {
        let p = s.poset();
        p.elements()
            .map(|a| {
                p.elements()
                    .map(|b| p.label(s.star(a, b)).to_string())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn pentagon_star_table_is_the_published_one() {
        let s = samples::n5_structure();
        assert_eq!(s.mode(), Mode::LatticeSpc);
        assert!(s.is_strong());
        let expect = [
            ["1", "1", "1", "1", "1"],
            ["b", "1", "b", "1", "1"],
            ["c", "a", "1", "c", "1"],
            ["b", "a", "b", "1", "1"],
            ["0", "a", "b", "c", "1"],
        ];
        assert_eq!(table_by_labels(&s), expect);
    }

    #[test]
    fn wide_diamond_star_table_is_the_published_one() {
        let s = samples::fig2_structure();
        assert_eq!(s.mode(), Mode::PosetSpc);
        assert!(s.is_strong());
        let expect = [
            ["1", "1", "1", "1", "1", "1", "1"],
            ["b", "1", "b", "1", "1", "1", "1"],
            ["c", "a", "1", "c", "1", "1", "1"],
            ["b", "a", "b", "1", "1", "1", "1"],
            ["0", "a", "b", "c", "1", "e", "1"],
            ["0", "a", "b", "c", "d", "1", "1"],
            ["0", "a", "b", "c", "d", "e", "1"],
        ];
        assert_eq!(table_by_labels(&s), expect);
    }

    #[test]
    fn two_chain_star_table() {
        let s = SpcStructure::derive(samples::chain(2)).unwrap();
        assert_eq!(table_by_labels(&s), [["1", "1"], ["0", "1"]]);
    }

    #[test]
    fn bowtie_has_no_star_with_witness() {
        let err = SpcStructure::derive(samples::bowtie()).unwrap_err();
        assert_eq!((err.a.as_str(), err.b.as_str()), ("a", "a"));
        assert_eq!(err.at, (ElementId::new(0), ElementId::new(0)));
    }

    #[test]
    fn two_antichain_is_spc_without_top() {
        let s = SpcStructure::derive(samples::antichain(2)).unwrap();
        assert_eq!(s.mode(), Mode::PosetSpc);
        assert_eq!(s.top(), None);
        assert!(!s.is_strong());
        assert_eq!(
            s.check_strong(),
            Verdict::Fails(StrongDefect::NoGreatestElement)
        );
        let p = s.poset();
        for a in p.elements() {
            for b in p.elements() {
                let expect = if a == b { a } else { b };
                assert_eq!(s.star(a, b), expect);
            }
        }
    }

    #[test]
    fn top_equals_x_star_x_when_present() {
        for s in [
            samples::n5_structure(),
            samples::fig2_structure(),
            SpcStructure::derive(samples::chain(4)).unwrap(),
            SpcStructure::derive(samples::boolean4()).unwrap(),
        ] {
            let one = s.top().unwrap();
            for x in s.poset().elements() {
                assert_eq!(s.star(x, x), one);
            }
        }
    }

    #[test]
    fn lemma_suite_passes_on_samples() {
        for s in [
            samples::n5_structure(),
            samples::fig2_structure(),
            SpcStructure::derive(samples::chain(1)).unwrap(),
            SpcStructure::derive(samples::chain(5)).unwrap(),
            SpcStructure::derive(samples::boolean4()).unwrap(),
        ] {
            let r = verify_lemma_suite(&s);
            assert!(r.passed(), "{r}");
            assert!(r.checks.iter().all(|c| c.outcome == crate::report::Outcome::Pass));
        }
    }

    #[test]
    fn lemma_suite_without_top_marks_most_laws_not_applicable() {
        let s = SpcStructure::derive(samples::antichain(2)).unwrap();
        let r = verify_lemma_suite(&s);
        assert!(r.passed());
        let outcomes: Vec<_> = r.checks.iter().map(|c| c.outcome).collect();
        use crate::report::Outcome::{NotApplicable, Pass};
        assert_eq!(
            outcomes,
            [NotApplicable, NotApplicable, NotApplicable, NotApplicable, NotApplicable, Pass]
        );
    }

    #[test]
    fn variety_identities_hold_on_lattice_samples() {
        for s in [
            samples::n5_structure(),
            SpcStructure::derive(samples::chain(3)).unwrap(),
            SpcStructure::derive(samples::boolean4()).unwrap(),
        ] {
            let r = verify_variety_identities(&s).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn variety_identities_require_lattice_mode() {
        let s = samples::fig2_structure();
        let err = verify_variety_identities(&s).unwrap_err();
        assert_eq!(err.required, Mode::LatticeSpc);
        assert_eq!(err.actual, Mode::PosetSpc);
    }

    #[test]
    fn corrupted_table_fails_the_second_identity_with_witness() {
        let s = samples::n5_structure();
        let p = s.poset().clone();
        let a = p.element_by_label("a").unwrap();
        let b = p.element_by_label("b").unwrap();
        let one = p.element_by_label("1").unwrap();
        let mut table = s.table().clone();
        table.set(a, b, one);
        let bad = SpcStructure::from_table(p, table);
        let r = verify_variety_identities(&bad).unwrap();
        assert!(!r.passed());
        let failing: Vec<_> = r.failures().collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].label, "(x v y) ^ (x*y) = y");
        assert_eq!(failing[0].witness.as_deref(), Some("at (a, b)"));
    }

    #[test]
    fn relative_pseudocomplementation_examples() {
        assert!(is_relatively_pseudocomplemented(&SpcStructure::derive(samples::chain(4)).unwrap()).holds());
        assert!(is_relatively_pseudocomplemented(&SpcStructure::derive(samples::boolean4()).unwrap()).holds());
        assert!(!is_relatively_pseudocomplemented(&samples::n5_structure()).holds());
        let s = samples::fig2_structure();
        let v = is_relatively_pseudocomplemented(&s);
        let (a, b) = *v.witness().unwrap();
        assert_eq!(
            (s.poset().label(a), s.poset().label(b)),
            ("c", "a")
        );
    }

    #[test]
    fn distributivity_examples() {
        assert!(is_distributive(&SpcStructure::derive(samples::chain(4)).unwrap()).unwrap().holds());
        assert!(is_distributive(&SpcStructure::derive(samples::boolean4()).unwrap()).unwrap().holds());
        assert!(!is_distributive(&samples::n5_structure()).unwrap().holds());
        assert!(is_distributive(&samples::fig2_structure()).is_err());
    }

    #[test]
    fn lattice_definition_gives_the_same_table() {
        // Independent route: in a lattice, a*b is the greatest c with
        // (a v b) ^ c = b.
        for p in [samples::n5(), samples::chain(5), samples::boolean4()] {
            let s = SpcStructure::derive(p.clone()).unwrap();
            for a in p.elements() {
                for b in p.elements() {
                    let v = p.join(a, b).unwrap();
                    let candidates: SubsetMask = p
                        .elements()
                        .filter(|&c| p.meet(v, c) == Some(b))
                        .collect();
                    let expect = p.greatest_of(candidates).unwrap();
                    assert_eq!(s.star(a, b), expect);
                }
            }
        }
    }
}
