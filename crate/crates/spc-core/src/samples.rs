//! Small ready-made structures used by tests, docs and the fixture files.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::poset::Poset;
use crate::star::SpcStructure;

/// The pentagon lattice: `0 < a < c < 1` and `0 < b < 1`.
pub fn n5() -> Poset {
    Poset::from_covers(&["0", "a", "b", "c", "1"], &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
        .unwrap()
}

/// A seven-element poset that is sectionally pseudocomplemented but not a
/// lattice: `0 < a, b`, `a < c`, and both `c` and `b` lie under the
/// incomparable pair `d, e`, which both lie under `1`.
pub fn fig2() -> Poset {
    Poset::from_covers(
        &["0", "a", "b", "c", "d", "e", "1"],
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (3, 4),
            (3, 5),
            (2, 4),
            (2, 5),
            (4, 6),
            (5, 6),
        ],
    )
    .unwrap()
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_covers(&labels, &covers).unwrap()
}

/// `n` pairwise incomparable elements.
pub fn antichain(n: usize) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    Poset::from_covers(&labels, &[]).unwrap()
}

/// The four-element Boolean lattice `0 < a, b < 1`.
pub fn boolean4() -> Poset {
    Poset::from_covers(&["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

/// Two minimal elements under two maximal elements, with no greatest
/// element; not sectionally pseudocomplemented.
pub fn bowtie() -> Poset {
    Poset::from_covers(&["a", "b", "x", "y"], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

/// The pentagon with its sectional pseudocomplement table.
pub fn n5_structure() -> SpcStructure {
    SpcStructure::derive(n5()).unwrap()
}

/// The seven-element sample poset with its table.
pub fn fig2_structure() -> SpcStructure {
    SpcStructure::derive(fig2()).unwrap()
}
