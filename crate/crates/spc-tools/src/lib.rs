//! Batch tooling around [`spc_core`]: file formats, diagram and JSON
//! export, seeded random generation, and the command implementations
//! behind the `spc` binary.
//!
//! The library half is all pure plumbing — parse a structure, run the
//! core verifiers, render a deterministic report — so everything here is
//! testable without spawning the binary. The binary adds argument
//! parsing, the `SPC_SIZE_GUARD` environment override and exit-code
//! mapping, nothing else.

pub mod dot;
pub mod format;
pub mod gen;
pub mod jsonio;
pub mod runner;
