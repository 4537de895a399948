//! Graphviz output for orders, trees and set families.

use std::fmt::Write;

use crate::family::SeparatingFamily;
use crate::order::{inclusion_covers, FilterLattice, FinalSegmentLattice};
use crate::tree::{FiniteForest, PathSpace};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram, bottom to top, from node labels and cover pairs.
pub fn hasse(name: &str, labels: &[String], covers: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(l)).unwrap();
    }
    for &(a, b) in covers {
        writeln!(out, "  n{a} -> n{b} [arrowhead=none];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// `FS(P)` ordered by inclusion.
pub fn final_segments(fs: &FinalSegmentLattice) -> String {
    let labels: Vec<String> = fs.segments().iter().map(|s| s.to_string()).collect();
    hasse("FS", &labels, &inclusion_covers(fs.segments()))
}

/// `Fil(M)` ordered by inclusion.
pub fn filters(l: &FilterLattice) -> String {
    let labels: Vec<String> = l.filters().iter().map(|s| s.to_string()).collect();
    hasse("Fil", &labels, &inclusion_covers(l.filters()))
}

/// `σT` ordered by inclusion.
pub fn paths(p: &PathSpace) -> String {
    let labels: Vec<String> = p.paths().iter().map(|s| s.to_string()).collect();
    hasse("paths", &labels, &inclusion_covers(p.paths()))
}

/// Parent-to-child edges, roots on top.
pub fn forest(f: &FiniteForest) -> String {
    let mut out = String::from("digraph \"tree\" {\n");
    for t in 0..f.size() {
        writeln!(out, "  n{t} [label=\"{t}\"];").unwrap();
    }
    for t in 0..f.size() {
        if let Some(p) = f.parent(t) {
            writeln!(out, "  n{p} -> n{t};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Bipartite membership graph: points on one side, members on the other.
pub fn family(f: &SeparatingFamily) -> String {
    let mut out = String::from("graph \"family\" {\n  rankdir=LR;\n");
    out.push_str("  subgraph cluster_points {\n    label=\"points\";\n");
    for x in 0..f.size() {
        writeln!(
            out,
            "    p{x} [shape=circle, label={}];",
            quote(&f.points().label(x))
        )
        .unwrap();
    }
    out.push_str("  }\n  subgraph cluster_members {\n    label=\"members\";\n");
    for (j, m) in f.members().iter().enumerate() {
        writeln!(out, "    m{j} [shape=box, label={}];", quote(&m.label)).unwrap();
    }
    out.push_str("  }\n");
    for (j, m) in f.members().iter().enumerate() {
        for x in m.set.ones() {
            writeln!(out, "  p{x} -- m{j};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::order::FinitePoset;

    #[test]
    fn chain_hasse_has_one_edge_per_cover() {
        let fs = FinitePoset::chain(3)
            .final_segments(&Limits::default())
            .unwrap();
        let d = final_segments(&fs);
        assert_eq!(d.matches("->").count(), 3);
        assert!(d.starts_with("digraph \"FS\""));
    }

    #[test]
    fn family_edges() {
        let f = SeparatingFamily::from_index_sets(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(family(&f).matches(" -- ").count(), 3);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }

    #[test]
    fn forest_edges() {
        let d = forest(&FiniteForest::complete_binary(2));
        assert_eq!(d.matches("->").count(), 2);
        let p = paths(&FiniteForest::complete_binary(2).paths());
        assert_eq!(p.matches("->").count(), 3);
    }
}
