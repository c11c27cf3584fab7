//! Modular decomposition: print the tree, the top-level quotient and compare
//! the strong modules against the brute-force oracle.

use clusterkit::md::top_partition;
use clusterkit::{build_graph, md_tree, quotient_of, strong_modules_oracle, Graph, MdNode};

fn show(g: &Graph, node: &MdNode, depth: usize) {
    let labels: Vec<&str> = node.vertices.iter().map(|v| g.label(v)).collect();
    println!("{:indent$}{:?} {{{}}}", "", node.kind, labels.join(" "), indent = 2 * depth);
    for child in &node.children {
        show(g, child, depth + 1);
    }
}

fn main() -> clusterkit::Result<()> {
    // P4 on modules {a1, a2}, {b}, {c1, c2, c3}, {d}; the c's form a clique
    let g = build_graph(
        &[
            ("a1", "b"), ("a2", "b"),
            ("b", "c1"), ("b", "c2"), ("b", "c3"),
            ("c1", "c2"), ("c2", "c3"), ("c1", "c3"),
            ("c1", "d"), ("c2", "d"), ("c3", "d"),
        ],
        None,
    )?;

    let tree = md_tree(&g)?;
    show(&g, &tree, 0);

    let (kind, parts) = top_partition(&g);
    let q = quotient_of(&g, &parts)?;
    println!("top node is {kind:?} with {} parts; quotient has {} edges", q.len(), q.graph.m());

    let agree = tree.strong_modules() == strong_modules_oracle(&g)?;
    println!("strong modules match the oracle: {agree}");
    Ok(())
}
