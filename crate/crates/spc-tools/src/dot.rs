//! DOT export of Hasse diagrams.

use std::fmt::Write as _;

use spc_core::Poset;

/// Renders the Hasse diagram as a DOT digraph, one node per element and
/// one edge per cover, drawn bottom-to-top. Output is deterministic:
/// nodes in element order, edges in the canonical cover order.
pub fn to_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for e in p.elements() {
        let _ = writeln!(out, "  \"{}\";", p.label(e));
    }
    for (a, b) in p.hasse_covers() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", p.label(a), p.label(b));
    }
    out.push_str("}\n");
    out
}
