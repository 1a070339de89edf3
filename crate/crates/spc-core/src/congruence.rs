//! Congruences under two signatures, the filter correspondence, quotients
//! and variety-level structure checks.
//!
//! The lattice signature asks for compatibility with join, meet and star;
//! the order signature (for structures that need not be lattices) asks for
//! compatibility with star together with min-stability: whenever two pairs
//! are related componentwise and comparable componentwise, the pair of
//! componentwise minima is related too. On a lattice every lattice-signature
//! congruence is also an order-signature congruence, but the converse can
//! fail, which is why the two are kept apart throughout.
//!
//! The central facts computed here: the star-difference relation of a
//! filter is a congruence, its kernel (the class of the greatest element)
//! recovers the filter, and this correspondence is an inclusion
//! isomorphism; quotients by congruences carry a partial order defined
//! through the star of classes; congruence lattices in the lattice
//! signature are distributive and congruences permute.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use crate::filter::{enumerate_filters_with_guard, is_filter};
use crate::limits::{DEFAULT_EXHAUSTIVE_GUARD, DEFAULT_PARTITION_GUARD, MAX_ELEMENTS, SizeGuard};
use crate::poset::{ElementId, Poset, PosetError, SubsetMask};
use crate::report::{Check, Report, Verdict};
use crate::star::SpcStructure;

/// Which operations a congruence or filter has to respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    /// Join, meet and star; only available on lattices.
    Lattice,
    /// Star and minima of comparable pairs; available on every structure.
    Poset,
}

/// A filter or congruence operation could not run on this structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpError {
    /// The lattice signature was requested on a structure that is not a
    /// lattice.
    NotALattice,
    /// The operation involves the constant `1` but the structure has no
    /// greatest element.
    NoGreatestElement,
    /// An enumeration bound was exceeded.
    TooLarge(SizeGuard),
}

impl fmt::Display for OpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpError::NotALattice => {
                write!(f, "the lattice signature needs a lattice order")
            }
            OpError::NoGreatestElement => {
                write!(f, "this operation needs a greatest element")
            }
            OpError::TooLarge(g) => g.fmt(f),
        }
    }
}

impl core::error::Error for OpError {}

impl From<SizeGuard> for OpError {
    fn from(g: SizeGuard) -> Self {
        OpError::TooLarge(g)
    }
}

/// A binary relation on element indices, stored as bit rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BinRelation {
    n: usize,
    rows: Vec<u64>,
}

impl BinRelation {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        BinRelation { n, rows: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, a: ElementId, b: ElementId) {
        self.rows[a.index()] |= 1u64 << b.index();
    }

    pub fn contains(&self, a: ElementId, b: ElementId) -> bool {
        self.rows[a.index()] >> b.index() & 1 == 1
    }

    pub fn union(&self, other: &BinRelation) -> BinRelation {
        assert_eq!(self.n, other.n);
        BinRelation {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Relational composition: `(a, c)` is in the result when some `b`
    /// satisfies `self(a, b)` and `other(b, c)`.
    pub fn compose(&self, other: &BinRelation) -> BinRelation {
        assert_eq!(self.n, other.n);
        let mut out = BinRelation::new(self.n);
        for a in 0..self.n {
            let mut row = 0u64;
            let mut bits = self.rows[a];
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                row |= other.rows[b];
            }
            out.rows[a] = row;
        }
        out
    }

    pub fn transitive_closure(&self) -> BinRelation {
        let mut rows = self.rows.clone();
        for k in 0..self.n {
            for i in 0..self.n {
                if rows[i] >> k & 1 == 1 {
                    rows[i] |= rows[k];
                }
            }
        }
        BinRelation { n: self.n, rows }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.rows[i] >> i & 1 == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.rows[i] >> j & 1 == self.rows[j] >> i & 1))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n)
                .all(|j| i == j || !(self.rows[i] >> j & 1 == 1 && self.rows[j] >> i & 1 == 1))
        })
    }

    pub fn is_transitive(&self) -> bool {
        *self == self.transitive_closure()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// True when `self` is contained in `other` as a set of pairs.
    pub fn is_subrelation_of(&self, other: &BinRelation) -> bool {
        assert_eq!(self.n, other.n);
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for BinRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.rows[a] >> b & 1 == 1 {
                    list.entry(&(a, b));
                }
            }
        }
        list.finish()
    }
}

/// A partition of the element set, normalized so blocks are numbered in
/// order of their smallest member, tagged with the signature it is meant
/// to respect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    signature: Signature,
    block_of: Vec<u32>,
    blocks: Vec<SubsetMask>,
}

impl Congruence {
    /// Builds a partition from an arbitrary block assignment; block
    /// numbers are renumbered by first occurrence.
    pub fn from_assignment(signature: Signature, assignment: &[u32]) -> Self {
        let max = assignment.iter().copied().max().unwrap_or(0) as usize;
        let mut rename: Vec<Option<u32>> = vec![None; max + 1];
        let mut block_of = Vec::with_capacity(assignment.len());
        let mut blocks: Vec<SubsetMask> = Vec::new();
        for (i, &raw) in assignment.iter().enumerate() {
            let raw = raw as usize;
            let id = match rename[raw] {
                Some(id) => id,
                None => {
                    let id = blocks.len() as u32;
                    rename[raw] = Some(id);
                    blocks.push(SubsetMask::EMPTY);
                    id
                }
            };
            block_of.push(id);
            blocks[id as usize].insert(ElementId::new(i));
        }
        Congruence { signature, block_of, blocks }
    }

    pub fn diagonal(signature: Signature, n: usize) -> Self {
        let assignment: Vec<u32> = (0..n as u32).collect();
        Self::from_assignment(signature, &assignment)
    }

    pub fn full(signature: Signature, n: usize) -> Self {
        Self::from_assignment(signature, &vec![0; n])
    }

    /// Reads an equivalence relation off as a partition; `None` if the
    /// relation is not an equivalence.
    pub fn from_relation(signature: Signature, rel: &BinRelation) -> Option<Self> {
        if !rel.is_equivalence() {
            return None;
        }
        let n = rel.n();
        let mut assignment = vec![0u32; n];
        for i in 0..n {
            let first = (0..n)
                .find(|&j| rel.contains(ElementId::new(i), ElementId::new(j)))
                .expect("reflexive");
            assignment[i] = first as u32;
        }
        Some(Self::from_assignment(signature, &assignment))
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn block_index(&self, e: ElementId) -> usize {
        self.block_of[e.index()] as usize
    }

    pub fn class_of(&self, e: ElementId) -> SubsetMask {
        self.blocks[self.block_index(e)]
    }

    pub fn same(&self, a: ElementId, b: ElementId) -> bool {
        self.block_of[a.index()] == self.block_of[b.index()]
    }

    pub fn is_diagonal(&self) -> bool {
        self.block_count() == self.n()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() == 1
    }

    /// True when every class of `self` lies inside a class of `coarser`,
    /// i.e. `self` is contained in `coarser` as a set of pairs.
    pub fn refines(&self, coarser: &Congruence) -> bool {
        assert_eq!(self.n(), coarser.n());
        self.blocks.iter().all(|b| {
            let first = b.first().expect("blocks are nonempty");
            b.is_subset_of(coarser.class_of(first))
        })
    }

    pub fn relation(&self) -> BinRelation {
        let mut rel = BinRelation::new(self.n());
        for b in &self.blocks {
            for x in b.iter() {
                for y in b.iter() {
                    rel.set(x, y);
                }
            }
        }
        rel
    }

    /// Partition intersection: blocks are the nonempty intersections of
    /// blocks of both.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        assert_eq!(self.n(), other.n());
        let n = self.n();
        let mut assignment = vec![0u32; n];
        for i in 0..n {
            let e = ElementId::new(i);
            assignment[i] = (self.block_index(e) * n + other.block_index(e)) as u32;
        }
        Congruence::from_assignment(self.signature, &assignment)
    }

    /// The transitive closure of the union: the finest partition in which
    /// every block of either factor is contained in one block. Whether the
    /// result respects the signature is a separate question and must be
    /// checked where it matters.
    pub fn join_closure(&self, other: &Congruence) -> Congruence {
        assert_eq!(self.n(), other.n());
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let unite = |parent: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for c in [self, other] {
            for b in &c.blocks {
                let first = b.first().expect("nonempty").index();
                for x in b.iter() {
                    unite(&mut parent, first, x.index());
                }
            }
        }
        let mut assignment = vec![0u32; n];
        for i in 0..n {
            assignment[i] = find(&mut parent, i) as u32;
        }
        Congruence::from_assignment(self.signature, &assignment)
    }

    /// Renders the partition as `{...}{...}` with blocks in order of their
    /// smallest member.
    pub fn describe(&self, p: &Poset) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            out.push_str(&p.format_subset(*b));
        }
        out
    }
}

/// Why a partition fails to be a congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceViolation {
    /// The operation pattern that broke, e.g. `(a * c, b * c)`.
    pub op: &'static str,
    pub a: ElementId,
    pub b: ElementId,
    pub c: ElementId,
    /// Second pair partner for the min-stability clause.
    pub d: Option<ElementId>,
    pub left: ElementId,
    pub right: ElementId,
}

impl CongruenceViolation {
    pub fn describe(&self, p: &Poset) -> String {
        match self.d {
            None => format!(
                "{} and {} share a class but {} maps them to {} and {} in different classes (c = {})",
                p.label(self.a),
                p.label(self.b),
                self.op,
                p.label(self.left),
                p.label(self.right),
                p.label(self.c)
            ),
            Some(d) => format!(
                "pairs ({}, {}) and ({}, {}) are related componentwise comparable, but the minima {} and {} are in different classes",
                p.label(self.a),
                p.label(self.b),
                p.label(self.c),
                p.label(d),
                p.label(self.left),
                p.label(self.right)
            ),
        }
    }
}

/// Decides whether the partition respects its signature on this structure.
pub fn is_congruence(
    s: &SpcStructure,
    c: &Congruence,
) -> Result<Verdict<CongruenceViolation>, OpError> {
    assert_eq!(c.n(), s.poset().n(), "partition size must match the structure");
    if c.signature() == Signature::Lattice && !s.is_lattice() {
        return Err(OpError::NotALattice);
    }
    Ok(check_congruence(s, c))
}

/// The signature-respecting check proper; assumes the signature gate has
/// already passed.
fn check_congruence(s: &SpcStructure, c: &Congruence) -> Verdict<CongruenceViolation> {
    let p = s.poset();
    let n = p.n();
    for ai in 0..n {
        let a = ElementId::new(ai);
        for bi in ai + 1..n {
            let b = ElementId::new(bi);
            if !c.same(a, b) {
                continue;
            }
            for x in p.elements() {
                let pairs: [(&'static str, ElementId, ElementId); 2] = [
                    ("(a * c, b * c)", s.star(a, x), s.star(b, x)),
                    ("(c * a, c * b)", s.star(x, a), s.star(x, b)),
                ];
                for (op, l, r) in pairs {
                    if !c.same(l, r) {
                        return Verdict::Fails(CongruenceViolation {
                            op,
                            a,
                            b,
                            c: x,
                            d: None,
                            left: l,
                            right: r,
                        });
                    }
                }
                if c.signature() == Signature::Lattice {
                    let pairs: [(&'static str, ElementId, ElementId); 2] = [
                        (
                            "(a v c, b v c)",
                            p.join(a, x).expect("total in a lattice"),
                            p.join(b, x).expect("total in a lattice"),
                        ),
                        (
                            "(a ^ c, b ^ c)",
                            p.meet(a, x).expect("total in a lattice"),
                            p.meet(b, x).expect("total in a lattice"),
                        ),
                    ];
                    for (op, l, r) in pairs {
                        if !c.same(l, r) {
                            return Verdict::Fails(CongruenceViolation {
                                op,
                                a,
                                b,
                                c: x,
                                d: None,
                                left: l,
                                right: r,
                            });
                        }
                    }
                }
            }
        }
    }
    if c.signature() == Signature::Poset {
        // Min-stability ranges over ordered related pairs on both sides.
        let mut related: Vec<(ElementId, ElementId)> = Vec::new();
        for block in c.blocks() {
            for x in block.iter() {
                for y in block.iter() {
                    related.push((x, y));
                }
            }
        }
        for &(a, b) in &related {
            for &(x, y) in &related {
                if !p.comparable(a, x) || !p.comparable(b, y) {
                    continue;
                }
                let l = p.min_comparable(a, x).expect("comparable");
                let r = p.min_comparable(b, y).expect("comparable");
                if !c.same(l, r) {
                    return Verdict::Fails(CongruenceViolation {
                        op: "(min(a, c), min(b, d))",
                        a,
                        b,
                        c: x,
                        d: Some(y),
                        left: l,
                        right: r,
                    });
                }
            }
        }
    }
    Verdict::Holds
}

/// Enumerates all congruences in the canonical order: coarser partitions
/// last (block count descending), ties broken by the block assignment
/// read as a sequence. Uses [`DEFAULT_PARTITION_GUARD`].
pub fn enumerate_congruences(
    s: &SpcStructure,
    sig: Signature,
) -> Result<Vec<Congruence>, OpError> {
    enumerate_congruences_with_guard(s, sig, DEFAULT_PARTITION_GUARD)
}

/// As [`enumerate_congruences`] with an explicit bound on the element
/// count (partition enumeration grows with the Bell numbers).
pub fn enumerate_congruences_with_guard(
    s: &SpcStructure,
    sig: Signature,
    limit: usize,
) -> Result<Vec<Congruence>, OpError> {
    if sig == Signature::Lattice && !s.is_lattice() {
        return Err(OpError::NotALattice);
    }
    let n = s.poset().n();
    if n > limit {
        return Err(OpError::TooLarge(SizeGuard { n, limit }));
    }
    let mut out = Vec::new();
    let mut assignment = vec![0u32; n];
    search(s, sig, &mut assignment, 1, &mut out);
    out.sort_by(|a, b| {
        b.block_count()
            .cmp(&a.block_count())
            .then_with(|| a.block_of.cmp(&b.block_of))
    });
    Ok(out)
}

/// Depth-first search over restricted growth strings with a sound prefix
/// cut: an assigned prefix is abandoned once two merged elements map (under
/// star, or join and meet in the lattice signature) to elements that are
/// already assigned to different blocks. Every complete assignment still
/// runs the full check, so the cut only prunes, never decides.
fn search(
    s: &SpcStructure,
    sig: Signature,
    assignment: &mut Vec<u32>,
    k: usize,
    out: &mut Vec<Congruence>,
) {
    let n = s.poset().n();
    if k == n {
        let c = Congruence::from_assignment(sig, assignment);
        if check_congruence(s, &c).holds() {
            out.push(c);
        }
        return;
    }
    if k == 0 {
        assignment[0] = 0;
        return search(s, sig, assignment, 1, out);
    }
    let max_used = assignment[..k].iter().copied().max().unwrap_or(0);
    for b in 0..=max_used + 1 {
        assignment[k] = b;
        if prefix_consistent(s, sig, assignment, k) {
            search(s, sig, assignment, k + 1, out);
        }
    }
}

fn prefix_consistent(s: &SpcStructure, sig: Signature, assignment: &[u32], k: usize) -> bool {
    let p = s.poset();
    let ek = ElementId::new(k);
    let assigned = |e: ElementId| e.index() <= k;
    let same = |a: ElementId, b: ElementId| assignment[a.index()] == assignment[b.index()];
    for ai in 0..k {
        let a = ElementId::new(ai);
        if assignment[ai] != assignment[k] {
            continue;
        }
        for xi in 0..=k {
            let x = ElementId::new(xi);
            let mut pairs = [(ElementId::new(0), ElementId::new(0)); 4];
            pairs[0] = (s.star(a, x), s.star(ek, x));
            pairs[1] = (s.star(x, a), s.star(x, ek));
            let mut used = 2;
            if sig == Signature::Lattice {
                pairs[2] = (
                    p.join(a, x).expect("total in a lattice"),
                    p.join(ek, x).expect("total in a lattice"),
                );
                pairs[3] = (
                    p.meet(a, x).expect("total in a lattice"),
                    p.meet(ek, x).expect("total in a lattice"),
                );
                used = 4;
            }
            if pairs[..used]
                .iter()
                .any(|&(l, r)| assigned(l) && assigned(r) && !same(l, r))
            {
                return false;
            }
        }
    }
    true
}

/// The star-difference relation of a subset: `(x, y)` is related when both
/// `x*y` and `y*x` are members.
pub fn phi_of(s: &SpcStructure, m: SubsetMask) -> BinRelation {
    let p = s.poset();
    let mut rel = BinRelation::new(p.n());
    for x in p.elements() {
        for y in p.elements() {
            if m.contains(s.star(x, y)) && m.contains(s.star(y, x)) {
                rel.set(x, y);
            }
        }
    }
    rel
}

/// The class of the greatest element.
pub fn kernel(s: &SpcStructure, c: &Congruence) -> Result<SubsetMask, OpError> {
    let one = s.top().ok_or(OpError::NoGreatestElement)?;
    Ok(c.class_of(one))
}

/// Verifies the filter/congruence correspondence on the whole structure:
/// the star differences of each filter form a congruence with the filter
/// as kernel, each congruence kernel is a filter recovering the
/// congruence, and the two families correspond bijectively preserving
/// inclusion. The correspondence is proved for strong structures, so a
/// structure that is not strong gets a not-applicable report.
pub fn verify_galois(s: &SpcStructure, sig: Signature) -> Result<Report, OpError> {
    verify_galois_with_guard(s, sig, DEFAULT_EXHAUSTIVE_GUARD, DEFAULT_PARTITION_GUARD)
}

/// As [`verify_galois`] with explicit bounds on the element count for the
/// subset scan (`filter_limit`) and the partition scan (`partition_limit`).
pub fn verify_galois_with_guard(
    s: &SpcStructure,
    sig: Signature,
    filter_limit: usize,
    partition_limit: usize,
) -> Result<Report, OpError> {
    s.top().ok_or(OpError::NoGreatestElement)?;
    if sig == Signature::Lattice && !s.is_lattice() {
        return Err(OpError::NotALattice);
    }
    let p = s.poset();
    let mut r = Report::new(match sig {
        Signature::Lattice => "filter/congruence correspondence (lattice signature)",
        Signature::Poset => "filter/congruence correspondence (order signature)",
    });
    let labels = [
        "star differences of each filter form a congruence whose kernel is the filter",
        "the kernel of each congruence is a filter whose star differences recover the congruence",
        "the correspondence is a bijection preserving inclusion in both directions",
    ];
    if !s.is_strong() {
        for l in labels {
            r.push(Check::not_applicable(l, "structure is not strong"));
        }
        return Ok(r);
    }
    let filters = enumerate_filters_with_guard(s, sig, filter_limit)?;
    let congruences = enumerate_congruences_with_guard(s, sig, partition_limit)?;

    let mut images: Vec<Option<Congruence>> = Vec::with_capacity(filters.len());
    let mut defect = None;
    for f in &filters {
        let rel = phi_of(s, f.elements);
        let image = match Congruence::from_relation(sig, &rel) {
            None => {
                defect.get_or_insert(format!(
                    "star differences of {} do not form an equivalence",
                    p.format_subset(f.elements)
                ));
                None
            }
            Some(c) => match is_congruence(s, &c)? {
                Verdict::Fails(v) => {
                    defect.get_or_insert(format!(
                        "star differences of {}: {}",
                        p.format_subset(f.elements),
                        v.describe(p)
                    ));
                    None
                }
                Verdict::Holds => {
                    let k = kernel(s, &c)?;
                    if k != f.elements {
                        defect.get_or_insert(format!(
                            "kernel of the induced congruence is {} instead of {}",
                            p.format_subset(k),
                            p.format_subset(f.elements)
                        ));
                    }
                    Some(c)
                }
            },
        };
        images.push(image);
    }
    r.push(match defect {
        None => Check::pass(labels[0]),
        Some(w) => Check::fail(labels[0], w),
    });

    let mut defect = None;
    for c in &congruences {
        let k = kernel(s, c)?;
        if !is_filter(s, k, sig)?.holds() {
            defect.get_or_insert(format!(
                "kernel {} of {} is not a filter",
                p.format_subset(k),
                c.describe(p)
            ));
            continue;
        }
        let recovered = Congruence::from_relation(sig, &phi_of(s, k));
        if recovered.as_ref() != Some(c) {
            defect.get_or_insert(format!(
                "star differences of the kernel {} do not recover {}",
                p.format_subset(k),
                c.describe(p)
            ));
        }
    }
    r.push(match defect {
        None => Check::pass(labels[1]),
        Some(w) => Check::fail(labels[1], w),
    });

    if images.iter().any(Option::is_none) {
        r.push(Check::not_applicable(
            labels[2],
            "incomputable because the filter-to-congruence map is incomplete",
        ));
        return Ok(r);
    }
    let images: Vec<&Congruence> = images.iter().map(|c| c.as_ref().expect("checked")).collect();
    let mut defect = None;
    if filters.len() != congruences.len() {
        defect = Some(format!(
            "{} filters but {} congruences",
            filters.len(),
            congruences.len()
        ));
    }
    'pairs: for i in 0..filters.len() {
        if defect.is_some() {
            break;
        }
        for j in 0..filters.len() {
            let f_incl = filters[i].elements.is_subset_of(filters[j].elements);
            let c_incl = images[i].refines(images[j]);
            if f_incl != c_incl {
                defect = Some(format!(
                    "inclusion disagrees between {} and {}",
                    p.format_subset(filters[i].elements),
                    p.format_subset(filters[j].elements)
                ));
                break 'pairs;
            }
        }
    }
    r.push(match defect {
        None => Check::pass(labels[2]),
        Some(w) => Check::fail(labels[2], w),
    });
    Ok(r)
}

/// A quotient: the order on classes, the classes themselves, and the class
/// index of every original element.
#[derive(Clone, Debug)]
pub struct QuotientPoset {
    pub order: Poset,
    pub classes: Vec<SubsetMask>,
    pub class_of: Vec<u32>,
}

/// Why a quotient could not be formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientError {
    Op(OpError),
    /// The partition does not respect the operations, so classes have no
    /// well-defined star.
    NotACongruence(CongruenceViolation),
    /// The class relation failed the partial order axioms; on a strong
    /// structure this cannot happen for a congruence.
    NotAPartialOrder(PosetError),
}

impl fmt::Display for QuotientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientError::Op(e) => e.fmt(f),
            QuotientError::NotACongruence(v) => {
                write!(f, "the partition is not a congruence (between {:?} and {:?})", v.a, v.b)
            }
            QuotientError::NotAPartialOrder(e) => {
                write!(f, "the class relation is not a partial order: {e}")
            }
        }
    }
}

impl core::error::Error for QuotientError {}

impl From<OpError> for QuotientError {
    fn from(e: OpError) -> Self {
        QuotientError::Op(e)
    }
}

/// Forms the quotient of the structure by a congruence. The order on
/// classes is defined through star: one class lies below another when the
/// star of their representatives falls in the kernel. Classes are labeled
/// by their greatest member where one exists, otherwise by the member
/// labels joined with underscores.
pub fn quotient(s: &SpcStructure, c: &Congruence) -> Result<QuotientPoset, QuotientError> {
    let one = s.top().ok_or(OpError::NoGreatestElement)?;
    match is_congruence(s, c)? {
        Verdict::Fails(v) => return Err(QuotientError::NotACongruence(v)),
        Verdict::Holds => {}
    }
    let p = s.poset();
    let ker = c.class_of(one);
    let classes: Vec<SubsetMask> = c.blocks().to_vec();
    let mut labels: Vec<String> = Vec::with_capacity(classes.len());
    for (i, b) in classes.iter().enumerate() {
        let mut name = match p.greatest_of(*b) {
            Some(g) => String::from(p.label(g)),
            None => {
                let mut joined = String::new();
                for (k, e) in b.iter().enumerate() {
                    if k > 0 {
                        joined.push('_');
                    }
                    joined.push_str(p.label(e));
                }
                joined
            }
        };
        if labels.contains(&name) {
            name = format!("{name}_{i}");
        }
        labels.push(name);
    }
    let reps: Vec<ElementId> = classes
        .iter()
        .map(|b| b.first().expect("blocks are nonempty"))
        .collect();
    let leq = |i: usize, j: usize| ker.contains(s.star(reps[i], reps[j]));
    let order = Poset::from_relation_with_guard(&labels, leq, MAX_ELEMENTS)
        .map_err(QuotientError::NotAPartialOrder)?;
    Ok(QuotientPoset {
        order,
        classes,
        class_of: c.block_of.clone(),
    })
}

/// Verifies the quotient order theorem for one congruence: the class
/// relation is a partial order compatible with the original order, classes
/// are convex, up-directed, have greatest elements, and upper bound sets
/// pass to the quotient (checked for tuples up to size three). Proved for
/// strong structures; otherwise reported as not applicable.
pub fn verify_quotient_theorem(s: &SpcStructure, c: &Congruence) -> Result<Report, OpError> {
    let one = s.top().ok_or(OpError::NoGreatestElement)?;
    let p = s.poset();
    let mut r = Report::new("quotient order properties");
    let labels = [
        "the class relation is a partial order",
        "comparable elements have comparable classes",
        "a class lies below another exactly when some member of the second dominates",
        "every class is convex",
        "every class is up-directed and has a greatest element",
        "upper bound sets pass to the quotient (tuples up to size 3)",
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
    match is_congruence(s, c)? {
        Verdict::Fails(v) => {
            inapplicable(&mut r, &format!("hypothesis fails: {}", v.describe(p)));
            return Ok(r);
        }
        Verdict::Holds => {}
    }
    let ker = c.class_of(one);
    let m = c.block_count();
    let mut rel = BinRelation::new(m);
    for i in 0..m {
        for j in 0..m {
            let a = c.blocks()[i].first().expect("nonempty");
            let b = c.blocks()[j].first().expect("nonempty");
            if ker.contains(s.star(a, b)) {
                rel.set(ElementId::new(i), ElementId::new(j));
            }
        }
    }

    r.push(if rel.is_reflexive() && rel.is_antisymmetric() && rel.is_transitive() {
        Check::pass(labels[0])
    } else {
        Check::fail(labels[0], "reflexivity, antisymmetry or transitivity fails")
    });

    let cls = |e: ElementId| ElementId::new(c.block_index(e));
    let mut w = None;
    'mono: for a in p.elements() {
        for b in p.elements() {
            if p.leq(a, b) && !rel.contains(cls(a), cls(b)) {
                w = Some((a, b));
                break 'mono;
            }
        }
    }
    r.push(match w {
        None => Check::pass(labels[1]),
        Some((a, b)) => Check::fail(
            labels[1],
            format!("{} <= {} but their classes are unrelated", p.label(a), p.label(b)),
        ),
    });

    let mut w = None;
    'dom: for a in p.elements() {
        for b in p.elements() {
            let below = rel.contains(cls(a), cls(b));
            let dominated = c.class_of(b).iter().any(|x| p.leq(a, x));
            if below != dominated {
                w = Some((a, b, below));
                break 'dom;
            }
        }
    }
    r.push(match w {
        None => Check::pass(labels[2]),
        Some((a, b, below)) => Check::fail(
            labels[2],
            format!(
                "classes of {} and {} are {}related but domination says otherwise",
                p.label(a),
                p.label(b),
                if below { "" } else { "un" }
            ),
        ),
    });

    let bad_convex = c.blocks().iter().find(|b| !p.is_convex(**b));
    r.push(match bad_convex {
        None => Check::pass(labels[3]),
        Some(b) => Check::fail(labels[3], p.format_subset(*b)),
    });

    let bad_directed = c
        .blocks()
        .iter()
        .find(|b| !p.is_up_directed(**b) || p.greatest_of(**b).is_none());
    r.push(match bad_directed {
        None => Check::pass(labels[4]),
        Some(b) => Check::fail(labels[4], p.format_subset(*b)),
    });

    let n = p.n();
    let mut w = None;
    'bounds: for size in 1..=3usize {
        let mut idx = vec![0usize; size];
        loop {
            let tuple: Vec<ElementId> = idx.iter().map(|&i| ElementId::new(i)).collect();
            let mut set = SubsetMask::EMPTY;
            for &e in &tuple {
                set.insert(e);
            }
            let mut image = 0u64;
            for x in p.upper_bounds(set).iter() {
                image |= 1u64 << cls(x).index();
            }
            let mut quotient_side = 0u64;
            for j in 0..m {
                let je = ElementId::new(j);
                if tuple.iter().all(|&e| rel.contains(cls(e), je)) {
                    quotient_side |= 1u64 << j;
                }
            }
            if image != quotient_side {
                w = Some(tuple);
                break 'bounds;
            }
            let mut pos = size;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    r.push(match w {
        None => Check::pass(labels[5]),
        Some(tuple) => {
            let mut set = SubsetMask::EMPTY;
            for &e in &tuple {
                set.insert(e);
            }
            Check::fail(labels[5], format!("at the tuple {}", p.format_subset(set)))
        }
    });
    Ok(r)
}

/// The least congruence relating every listed pair: the partition meet of
/// all enumerated congruences that contain the pairs.
pub fn generated_congruence(
    s: &SpcStructure,
    pairs: &[(ElementId, ElementId)],
    sig: Signature,
) -> Result<Congruence, OpError> {
    let mut acc = Congruence::full(sig, s.poset().n());
    for c in enumerate_congruences(s, sig)? {
        if pairs.iter().all(|&(a, b)| c.same(a, b)) {
            acc = acc.meet(&c);
        }
    }
    Ok(acc)
}

/// The least congruence collapsing every member of `m` with the greatest
/// element. Its kernel is the filter generated by `m`, and its relation is
/// the star-difference relation of that filter; both identities are
/// verified by [`verify_galois`] rather than assumed here.
pub fn principal_congruence(
    s: &SpcStructure,
    m: SubsetMask,
    sig: Signature,
) -> Result<Congruence, OpError> {
    let one = s.top().ok_or(OpError::NoGreatestElement)?;
    let pairs: Vec<(ElementId, ElementId)> = m.iter().map(|x| (x, one)).collect();
    generated_congruence(s, &pairs, sig)
}

/// Verifies variety-level structure of the congruence family.
///
/// Lattice signature: congruences permute under composition, the join of
/// two congruences is their composition, the congruence inclusion order is
/// a distributive lattice, kernels determine congruences, and every
/// lattice-signature congruence also respects the order signature.
///
/// Order signature: the congruence inclusion order is a lattice, and on
/// strong structures kernels determine congruences. Whether the transitive
/// closure of a union of congruences stays a congruence is recorded in a
/// note, not asserted.
pub fn verify_variety_structure(s: &SpcStructure, sig: Signature) -> Result<Report, OpError> {
    verify_variety_structure_with_guard(s, sig, DEFAULT_PARTITION_GUARD)
}

/// As [`verify_variety_structure`] with an explicit bound on the element
/// count for the partition scan.
pub fn verify_variety_structure_with_guard(
    s: &SpcStructure,
    sig: Signature,
    partition_limit: usize,
) -> Result<Report, OpError> {
    let p = s.poset();
    let cons = enumerate_congruences_with_guard(s, sig, partition_limit)?;
    let count = cons.len();
    if count > MAX_ELEMENTS {
        return Err(OpError::TooLarge(SizeGuard { n: count, limit: MAX_ELEMENTS }));
    }
    let rels: Vec<BinRelation> = cons.iter().map(Congruence::relation).collect();
    let labels_vec: Vec<String> = (0..count).map(|i| format!("c{i}")).collect();
    let inclusion = Poset::from_relation_with_guard(
        &labels_vec,
        |i, j| cons[i].refines(&cons[j]),
        MAX_ELEMENTS,
    )
    .expect("inclusion on distinct partitions is a partial order");

    let mut r = Report::new(match sig {
        Signature::Lattice => "congruence family structure (lattice signature)",
        Signature::Poset => "congruence family structure (order signature)",
    });

    match sig {
        Signature::Lattice => {
            let mut w = None;
            'perm: for i in 0..count {
                for j in i + 1..count {
                    if rels[i].compose(&rels[j]) != rels[j].compose(&rels[i]) {
                        w = Some((i, j));
                        break 'perm;
                    }
                }
            }
            r.push(match w {
                None => Check::pass("congruences permute under composition"),
                Some((i, j)) => Check::fail(
                    "congruences permute under composition",
                    format!("{} and {}", cons[i].describe(p), cons[j].describe(p)),
                ),
            });

            let mut w = None;
            'join: for i in 0..count {
                for j in i + 1..count {
                    let joined = cons[i].join_closure(&cons[j]);
                    if check_congruence(s, &joined).witness().is_some()
                        || joined.relation() != rels[i].compose(&rels[j])
                    {
                        w = Some((i, j));
                        break 'join;
                    }
                }
            }
            r.push(match w {
                None => Check::pass("the join of two congruences is their composition"),
                Some((i, j)) => Check::fail(
                    "the join of two congruences is their composition",
                    format!("{} and {}", cons[i].describe(p), cons[j].describe(p)),
                ),
            });
        }
        Signature::Poset => {
            let mut failures = 0usize;
            for i in 0..count {
                for j in i + 1..count {
                    let joined = cons[i].join_closure(&cons[j]);
                    if !check_congruence(s, &joined).holds() {
                        failures += 1;
                    }
                }
            }
            if failures == 0 {
                r.note("the transitive closure of each pairwise union stayed a congruence");
            } else {
                r.note(format!(
                    "the transitive closure of {failures} pairwise unions is not a congruence; joins in the inclusion order are coarser there"
                ));
            }
        }
    }

    r.push(if inclusion.is_lattice() {
        Check::pass("the congruence inclusion order is a lattice")
    } else {
        Check::fail(
            "the congruence inclusion order is a lattice",
            "some pair has no meet or join",
        )
    });

    if sig == Signature::Lattice {
        let mut w = None;
        'distr: for x in inclusion.elements() {
            for y in inclusion.elements() {
                for z in inclusion.elements() {
                    let yz = inclusion.join(y, z).expect("lattice");
                    let lhs = inclusion.meet(x, yz).expect("lattice");
                    let xy = inclusion.meet(x, y).expect("lattice");
                    let xz = inclusion.meet(x, z).expect("lattice");
                    let rhs = inclusion.join(xy, xz).expect("lattice");
                    if lhs != rhs {
                        w = Some((x, y, z));
                        break 'distr;
                    }
                }
            }
        }
        r.push(match w {
            None => Check::pass("the congruence inclusion order is distributive"),
            Some((x, y, z)) => Check::fail(
                "the congruence inclusion order is distributive",
                format!(
                    "at ({}, {}, {})",
                    cons[x.index()].describe(p),
                    cons[y.index()].describe(p),
                    cons[z.index()].describe(p)
                ),
            ),
        });
    }

    let kernel_label = "congruences are determined by their kernels";
    match s.top() {
        None => r.push(Check::not_applicable(kernel_label, "no greatest element")),
        Some(_) if sig == Signature::Poset && !s.is_strong() => {
            r.push(Check::not_applicable(kernel_label, "structure is not strong"));
        }
        Some(one) => {
            let kernels: Vec<SubsetMask> = cons.iter().map(|c| c.class_of(one)).collect();
            let mut w = None;
            'ker: for i in 0..count {
                for j in i + 1..count {
                    if kernels[i] == kernels[j] {
                        w = Some((i, j));
                        break 'ker;
                    }
                }
            }
            r.push(match w {
                None => Check::pass(kernel_label),
                Some((i, j)) => Check::fail(
                    kernel_label,
                    format!(
                        "{} and {} share the kernel {}",
                        cons[i].describe(p),
                        cons[j].describe(p),
                        p.format_subset(kernels[i])
                    ),
                ),
            });
        }
    }

    if sig == Signature::Lattice {
        let mut w = None;
        for c in &cons {
            let as_poset = Congruence::from_assignment(Signature::Poset, &c.block_of);
            if !check_congruence(s, &as_poset).holds() {
                w = Some(c);
                break;
            }
        }
        r.push(match w {
            None => Check::pass("every lattice-signature congruence respects the order signature"),
            Some(c) => Check::fail(
                "every lattice-signature congruence respects the order signature",
                c.describe(p),
            ),
        });
        let poset_count = enumerate_congruences(s, Signature::Poset)?.len();
        r.note(format!(
            "{count} lattice-signature congruences, {poset_count} order-signature congruences"
        ));
    }
    Ok(r)
}
