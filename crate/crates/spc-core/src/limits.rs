//! Size guards for the exponential parts of the toolkit.
//!
//! Everything in this crate scans exhaustively, so the costs are known up
//! front: subset enumeration is `2^n`, partition enumeration is the Bell
//! number of `n`. Constructors and enumerators refuse inputs beyond these
//! bounds unless the caller passes an explicit guard value.

use core::fmt;

/// Hard ceiling imposed by the 64-bit subset representation.
pub const MAX_ELEMENTS: usize = 64;

/// Default bound for poset construction.
pub const DEFAULT_SIZE_GUARD: usize = 24;

/// Default bound for partition (congruence) enumeration; Bell(12) is about
/// 4.2 million, which is still tractable, anything beyond is not.
pub const DEFAULT_PARTITION_GUARD: usize = 12;

/// Default bound for the exhaustive all-subsets filter enumeration path.
pub const DEFAULT_EXHAUSTIVE_GUARD: usize = 20;

/// Default bound for subset scans that run a term-closedness check per
/// subset; those cost far more per candidate than a membership test, so
/// the bound is tighter than [`DEFAULT_EXHAUSTIVE_GUARD`].
pub const DEFAULT_CLOSEDNESS_GUARD: usize = 12;

/// Default bound for the exhaustive catalogs of small orders; the count
/// of orders on `n` positions compatible with the positional order grows
/// past ninety thousand already at seven elements.
pub const DEFAULT_CATALOG_GUARD: usize = 7;

/// Default bound for the isomorphism search.
pub const DEFAULT_ISO_GUARD: usize = 12;

/// An input exceeded an enumeration bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    pub n: usize,
    pub limit: usize,
}

impl fmt::Display for SizeGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "structure has {} elements, exceeding the enumeration bound {}",
            self.n, self.limit
        )
    }
}

impl core::error::Error for SizeGuard {}
