//! Finite posets stored as bit relations.
//!
//! Elements are indices `0..n` with display labels. The order is kept as two
//! arrays of 64-bit rows: `up[i]` is the subset `{j : i <= j}` and `dn[i]`
//! the subset `{j : j <= i}`, so cone operators and bound computations are
//! word operations. Constructors always verify the partial order axioms; a
//! stored `Poset` is trusted by every other module.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::limits::{self, SizeGuard};

/// Index of an element of a finite poset.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u32);

impl ElementId {
    pub fn new(index: usize) -> Self {
        debug_assert!(index < limits::MAX_ELEMENTS);
        ElementId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A subset of the elements of a poset, as a 64-bit mask.
///
/// All operations are total and closed over the (at most 64-element)
/// universe; the complement needs the universe mask and therefore lives on
/// [`Poset::complement`].
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn singleton(e: ElementId) -> Self {
        SubsetMask(1 << e.0)
    }

    /// Reinterprets a raw bit pattern as a subset (bit `i` is element `i`).
    pub fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    /// The raw bit pattern, bit `i` for element `i`.
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, e: ElementId) {
        self.0 |= 1 << e.0;
    }

    pub fn remove(&mut self, e: ElementId) {
        self.0 &= !(1 << e.0);
    }

    pub fn contains(self, e: ElementId) -> bool {
        self.0 >> e.0 & 1 == 1
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Member with the least index, if any.
    pub fn first(self) -> Option<ElementId> {
        if self.0 == 0 {
            None
        } else {
            Some(ElementId(self.0.trailing_zeros()))
        }
    }

    pub fn iter(self) -> impl Iterator<Item = ElementId> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(ElementId(i))
            }
        })
    }
}

impl FromIterator<ElementId> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut m = SubsetMask::EMPTY;
        for e in iter {
            m.insert(e);
        }
        m
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e.0)?;
        }
        write!(f, "}}")
    }
}

/// Construction-time violations of the poset contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    Empty,
    DuplicateLabel { label: String },
    IndexOutOfRange { index: usize, n: usize },
    /// The declared covers (or relation) relate two distinct elements in
    /// both directions.
    CycleDetected { a: String, b: String },
    NotReflexive { x: String },
    NotTransitive { a: String, b: String, c: String },
    TooLarge(SizeGuard),
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::Empty => write!(f, "a poset needs at least one element"),
            PosetError::DuplicateLabel { label } => write!(f, "duplicate label {label:?}"),
            PosetError::IndexOutOfRange { index, n } => {
                write!(f, "element index {index} out of range for {n} elements")
            }
            PosetError::CycleDetected { a, b } => {
                write!(f, "cycle detected: {a} and {b} are related in both directions")
            }
            PosetError::NotReflexive { x } => write!(f, "relation is not reflexive at {x}"),
            PosetError::NotTransitive { a, b, c } => {
                write!(f, "relation is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")
            }
            PosetError::TooLarge(guard) => write!(f, "{guard}"),
        }
    }
}

impl core::error::Error for PosetError {}

/// A finite poset: labelled elements plus a verified order relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<u64>,
    dn: Vec<u64>,
}

impl Poset {
    /// Builds a poset as the reflexive-transitive closure of the cover pairs
    /// `(a, b)` meaning `a < b`, with the default size guard.
    pub fn from_covers<S: AsRef<str>>(
        labels: &[S],
        covers: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        Self::from_covers_with_guard(labels, covers, limits::DEFAULT_SIZE_GUARD)
    }

    pub fn from_covers_with_guard<S: AsRef<str>>(
        labels: &[S],
        covers: &[(usize, usize)],
        guard: usize,
    ) -> Result<Self, PosetError> {
        let labels = check_labels(labels, guard)?;
        let n = labels.len();
        let mut up = alloc::vec![0u64; n];
        for (i, row) in up.iter_mut().enumerate() {
            *row = 1 << i;
        }
        for &(a, b) in covers {
            for index in [a, b] {
                if index >= n {
                    return Err(PosetError::IndexOutOfRange { index, n });
                }
            }
            up[a] |= 1 << b;
        }
        transitive_close(&mut up);
        if let Some((a, b)) = antisymmetry_violation(&up) {
            return Err(PosetError::CycleDetected {
                a: labels[a].clone(),
                b: labels[b].clone(),
            });
        }
        Ok(Self::from_closed_rows(labels, up))
    }

    /// Builds a poset from an arbitrary relation, verifying reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_relation<S: AsRef<str>>(
        labels: &[S],
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PosetError> {
        Self::from_relation_with_guard(labels, leq, limits::DEFAULT_SIZE_GUARD)
    }

    pub fn from_relation_with_guard<S: AsRef<str>>(
        labels: &[S],
        leq: impl Fn(usize, usize) -> bool,
        guard: usize,
    ) -> Result<Self, PosetError> {
        let labels = check_labels(labels, guard)?;
        let n = labels.len();
        let mut up = alloc::vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up[i] |= 1 << j;
                }
            }
        }
        for (i, row) in up.iter().enumerate() {
            if row >> i & 1 == 0 {
                return Err(PosetError::NotReflexive { x: labels[i].clone() });
            }
        }
        if let Some((a, b)) = antisymmetry_violation(&up) {
            return Err(PosetError::CycleDetected {
                a: labels[a].clone(),
                b: labels[b].clone(),
            });
        }
        for a in 0..n {
            let mut row = up[a];
            while row != 0 {
                let b = row.trailing_zeros() as usize;
                row &= row - 1;
                if up[b] & !up[a] != 0 {
                    let c = (up[b] & !up[a]).trailing_zeros() as usize;
                    return Err(PosetError::NotTransitive {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        c: labels[c].clone(),
                    });
                }
            }
        }
        Ok(Self::from_closed_rows(labels, up))
    }

    fn from_closed_rows(labels: Vec<String>, up: Vec<u64>) -> Self {
        let n = labels.len();
        let mut dn = alloc::vec![0u64; n];
        for i in 0..n {
            let mut row = up[i];
            while row != 0 {
                let j = row.trailing_zeros() as usize;
                row &= row - 1;
                dn[j] |= 1 << i;
            }
        }
        Poset { labels, up, dn }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.n() as u32).map(ElementId)
    }

    pub fn universe(&self) -> SubsetMask {
        if self.n() == 64 {
            SubsetMask(!0)
        } else {
            SubsetMask((1u64 << self.n()) - 1)
        }
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.labels[e.index()]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn element_by_label(&self, label: &str) -> Option<ElementId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(ElementId::new)
    }

    /// Looks up a set of elements by their labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Option<SubsetMask> {
        let mut m = SubsetMask::EMPTY;
        for l in labels {
            m.insert(self.element_by_label(l.as_ref())?);
        }
        Some(m)
    }

    /// Renders a subset as `{label, ...}` in element order.
    pub fn format_subset(&self, s: SubsetMask) -> String {
        let mut out = String::from("{");
        for (k, e) in s.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(self.label(e));
        }
        out.push('}');
        out
    }

    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()] >> b.0 & 1 == 1
    }

    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// The principal up-set `{x : e <= x}`.
    pub fn up_set(&self, e: ElementId) -> SubsetMask {
        SubsetMask(self.up[e.index()])
    }

    /// The principal down-set `{x : x <= e}`.
    pub fn down_set(&self, e: ElementId) -> SubsetMask {
        SubsetMask(self.dn[e.index()])
    }

    /// `U(s)`: the set of common upper bounds of `s`. The empty set yields
    /// the whole universe.
    pub fn upper_bounds(&self, s: SubsetMask) -> SubsetMask {
        let mut acc = self.universe().0;
        let mut bits = s.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc &= self.up[i];
        }
        SubsetMask(acc)
    }

    /// `L(s)`: the set of common lower bounds of `s`. The empty set yields
    /// the whole universe.
    pub fn lower_bounds(&self, s: SubsetMask) -> SubsetMask {
        let mut acc = self.universe().0;
        let mut bits = s.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc &= self.dn[i];
        }
        SubsetMask(acc)
    }

    /// Greatest element of the subset `s`, if it has one.
    pub fn greatest_of(&self, s: SubsetMask) -> Option<ElementId> {
        s.iter().find(|&x| s.is_subset_of(self.down_set(x)))
    }

    /// Least element of the subset `s`, if it has one.
    pub fn least_of(&self, s: SubsetMask) -> Option<ElementId> {
        s.iter().find(|&x| s.is_subset_of(self.up_set(x)))
    }

    pub fn greatest(&self) -> Option<ElementId> {
        self.greatest_of(self.universe())
    }

    pub fn least(&self) -> Option<ElementId> {
        self.least_of(self.universe())
    }

    /// Greatest lower bound of `s`, if it exists. `infimum(EMPTY)` is the
    /// greatest element of the poset.
    pub fn infimum(&self, s: SubsetMask) -> Option<ElementId> {
        self.greatest_of(self.lower_bounds(s))
    }

    /// Least upper bound of `s`, if it exists. `supremum(EMPTY)` is the
    /// least element of the poset.
    pub fn supremum(&self, s: SubsetMask) -> Option<ElementId> {
        self.least_of(self.upper_bounds(s))
    }

    pub fn meet(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        self.infimum(SubsetMask::singleton(a).union(SubsetMask::singleton(b)))
    }

    pub fn join(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        self.supremum(SubsetMask::singleton(a).union(SubsetMask::singleton(b)))
    }

    /// `min(a, b)` for comparable elements, `None` otherwise.
    pub fn min_comparable(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        if self.leq(a, b) {
            Some(a)
        } else if self.leq(b, a) {
            Some(b)
        } else {
            None
        }
    }

    /// True when every pair of elements has a meet and a join.
    pub fn is_lattice(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some())
        })
    }

    /// The cover pairs `(a, b)` with `a < b` and nothing strictly between,
    /// in ascending index order.
    pub fn hasse_covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut covers = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if !self.lt(a, b) {
                    continue;
                }
                let mut between = self.up_set(a).intersect(self.down_set(b));
                between.remove(a);
                between.remove(b);
                if between.is_empty() {
                    covers.push((a, b));
                }
            }
        }
        covers
    }

    /// True when every two members of `s` have a common upper bound inside
    /// `s`. The empty set counts as up-directed.
    pub fn is_up_directed(&self, s: SubsetMask) -> bool {
        s.iter().all(|x| {
            s.iter()
                .all(|y| !self.up_set(x).intersect(self.up_set(y)).intersect(s).is_empty())
        })
    }

    /// True when `s` contains every element lying between two of its members.
    pub fn is_convex(&self, s: SubsetMask) -> bool {
        s.iter().all(|x| {
            s.iter()
                .all(|z| self.up_set(x).intersect(self.down_set(z)).is_subset_of(s))
        })
    }

    pub fn complement(&self, s: SubsetMask) -> SubsetMask {
        SubsetMask(self.universe().0 & !s.0)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset[")?;
        for (k, l) in self.labels.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "; covers")?;
        for (a, b) in self.hasse_covers() {
            write!(f, " {}<{}", self.label(a), self.label(b))?;
        }
        write!(f, "]")
    }
}

fn check_labels<S: AsRef<str>>(labels: &[S], guard: usize) -> Result<Vec<String>, PosetError> {
    let n = labels.len();
    if n == 0 {
        return Err(PosetError::Empty);
    }
    let limit = guard.min(limits::MAX_ELEMENTS);
    if n > limit {
        return Err(PosetError::TooLarge(SizeGuard { n, limit }));
    }
    let owned: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
    for (i, l) in owned.iter().enumerate() {
        if owned[..i].contains(l) {
            return Err(PosetError::DuplicateLabel { label: l.clone() });
        }
    }
    Ok(owned)
}

fn transitive_close(up: &mut [u64]) {
    let n = up.len();
    for k in 0..n {
        for i in 0..n {
            if up[i] >> k & 1 == 1 {
                up[i] |= up[k];
            }
        }
    }
}

fn antisymmetry_violation(up: &[u64]) -> Option<(usize, usize)> {
    for (i, row) in up.iter().enumerate() {
        let mut bits = *row & !(1 << i);
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if up[j] >> i & 1 == 1 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Convenience alias used by tests and the format layer: the same poset with
/// the arguments spelled as labels.
pub fn format_pair(p: &Poset, a: ElementId, b: ElementId) -> String {
    format!("({}, {})", p.label(a), p.label(b))
}
