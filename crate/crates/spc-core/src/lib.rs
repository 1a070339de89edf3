//! Exact computations on finite ordered sets with sectional pseudocomplements.
//!
//! A sectional pseudocomplement of `a` with respect to `b` is the greatest
//! element `c` such that the lower cone of the upper bounds of `{a, b}`
//! together with `c` equals the lower cone of `b`; in a lattice this is the
//! greatest `c` with `(a v b) ^ c = b`. Everything here works on explicit
//! finite structures: orders are stored as bit relations, the star operation
//! is materialized as a full table, and all checks are exhaustive scans that
//! either pass or return a concrete witness.
//!
//! The crate is `no_std` (it allocates, but performs no IO); parsing of the
//! text format, serialization and the command line live in the companion
//! `spc-tools` crate.
//!
//! Module map:
//!
//! * [`poset`]: finite posets as bit relations, cone operators, bounds,
//!   covers, lattice and directedness predicates, plus the subset and
//!   element index types.
//! * [`star`]: derivation of the sectional pseudocomplement table,
//!   classification (lattice/poset mode, strongness), arithmetic law suites
//!   and lattice classification predicates.
//! * [`term`]: terms over join, meet, star and upper-bound-meet nodes with
//!   three-valued partial evaluation, the quaternary weak difference terms,
//!   and closedness scans for term families.
//! * [`filter`]: the star-compatible filter concept, enumeration, generated
//!   filters, the filter lattice, deductive systems.
//! * [`congruence`]: congruence enumeration for the lattice and the order
//!   signature, the filter/congruence correspondence, quotients and their
//!   structure theory.
//! * [`catalog`]: exhaustive enumeration of small posets and lattices.
//! * [`iso`]: order isomorphism by backtracking search.
//! * [`samples`]: ready-made small structures used throughout the tests.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod congruence;
pub mod filter;
pub mod iso;
pub mod limits;
pub mod poset;
pub mod report;
pub mod samples;
pub mod star;
pub mod term;

pub use congruence::{BinRelation, Congruence, OpError, Signature};
pub use filter::Filter;
pub use limits::SizeGuard;
pub use poset::{ElementId, Poset, PosetError, SubsetMask};
pub use report::{Check, Outcome, Report, Verdict};
pub use star::{Mode, ModeError, SpcStructure, StarTable};
pub use term::{PartialValue, TermExpr};
