//! Graphviz output for directed decompositions.

use std::fmt::Write as _;

use mutvis_core::directed::DirectedDecomposition;
use mutvis_core::split::BagType;

fn bag_kind(kind: &BagType) -> &'static str {
    match kind {
        BagType::K => "K",
        BagType::S { .. } => "S",
    }
}

/// Bags as clusters, unmarked edges thin, marked edges bold. Arrows are
/// directed edges from tail to head; marked edges that carry no arrow are
/// drawn undirected. `labels[v]` is the name printed for original vertex `v`.
pub fn decomposition_dot(dd: &DirectedDecomposition, labels: &[usize]) -> String {
    let d = dd.base();
    let mut out = String::new();
    out.push_str("digraph decomposition {\n");
    out.push_str("  compound=true;\n  node [shape=circle];\n");
    for bag in d.bags() {
        writeln!(out, "  subgraph cluster_{} {{", bag.id).unwrap();
        writeln!(
            out,
            "    label=\"bag {} ({})\";",
            bag.id,
            bag_kind(&bag.kind)
        )
        .unwrap();
        for &p in &bag.members {
            match d.vertex(p).original() {
                Some(v) if dd.sigma().contains(v) => writeln!(
                    out,
                    "    p{p} [label=\"{}\", shape=doublecircle, xlabel=\"sigma\"];",
                    labels[v]
                )
                .unwrap(),
                Some(v) => writeln!(out, "    p{p} [label=\"{}\"];", labels[v]).unwrap(),
                None => writeln!(out, "    p{p} [label=\"\", shape=point, width=0.12];").unwrap(),
            }
        }
        for (i, &p) in bag.members.iter().enumerate() {
            for &q in &bag.members[i + 1..] {
                if bag.adjacent(p, q) {
                    writeln!(out, "    p{p} -> p{q} [dir=none];").unwrap();
                }
            }
        }
        out.push_str("  }\n");
    }
    let mut arrows_on = vec![Vec::new(); d.marked_edges().len()];
    for a in dd.arrows() {
        arrows_on[a.marked_edge].push(a);
    }
    for (id, (p, q)) in d.marked_edges().into_iter().enumerate() {
        if arrows_on[id].is_empty() {
            writeln!(out, "  p{p} -> p{q} [style=bold, dir=none];").unwrap();
        }
        for a in &arrows_on[id] {
            writeln!(out, "  p{} -> p{} [style=bold];", a.tail, a.head).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// The decomposition tree: one node per bag, one edge per marked edge.
pub fn tree_dot(dd: &DirectedDecomposition) -> String {
    let d = dd.base();
    let mut out = String::from("graph tree {\n  node [shape=box];\n");
    for bag in d.bags() {
        writeln!(
            out,
            "  b{} [label=\"{} {} ({})\"];",
            bag.id,
            bag.id,
            bag_kind(&bag.kind),
            bag.members.len()
        )
        .unwrap();
    }
    for &(a, b, _) in dd.tree().edges() {
        writeln!(out, "  b{a} -- b{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mutvis_core::directed::orient;
    use mutvis_core::generators::family;
    use mutvis_core::oracle::recognize_dh;
    use mutvis_core::split::canonical_decomposition;
    use mutvis_core::Graph;

    fn directed(g: &Graph) -> DirectedDecomposition {
        let seq = recognize_dh(g).unwrap().into_sequence().unwrap();
        orient(canonical_decomposition(g, &seq).unwrap())
    }

    fn identity(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn k23_has_two_clusters_and_opposing_arrows() {
        let g = family("complete-bipartite", &[2, 3]).unwrap();
        let dot = decomposition_dot(&directed(&g), &identity(5));
        assert_eq!(dot.matches("subgraph cluster_").count(), 2);
        let bold: Vec<&str> = dot.lines().filter(|l| l.contains("style=bold")).collect();
        assert_eq!(bold.len(), 2);
        assert!(bold.iter().all(|l| !l.contains("dir=none")));
    }

    #[test]
    fn clique_has_one_cluster() {
        let g = family("clique", &[4]).unwrap();
        let dot = decomposition_dot(&directed(&g), &identity(4));
        assert_eq!(dot.matches("subgraph cluster_").count(), 1);
        assert!(!dot.contains("style=bold"));
    }

    #[test]
    fn path_tree_is_a_path() {
        let g = family("path", &[6]).unwrap();
        let dot = tree_dot(&directed(&g));
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("[label=").count(), 4);
        let dot = decomposition_dot(&directed(&g), &identity(6));
        assert_eq!(dot.matches("xlabel=\"sigma\"").count(), 4);
    }
}
