//! The forbidden patterns: each needs two deletions, is recognised by the
//! classifier, and certifies itself against the host graph.

use clusterkit::witness::classify_ordered;
use clusterkit::{exact_association, find_forbidden_bruteforce, tp_check, Graph, Kind, TpCheck, VertexSet};

fn main() -> clusterkit::Result<()> {
    for kind in Kind::ALL {
        let g = kind.graph();
        let all = VertexSet::full(g.n());
        let w = classify_ordered(&g, &all)?.expect("pattern classifies as itself");
        let (_, opt) = exact_association(&g)?;
        println!(
            "{kind:>4}: {} vertices, {} edges, forbidden {}, optimum {opt}, witness order {:?}",
            g.n(),
            g.m(),
            kind.is_forbidden(),
            w.vertices
        );
    }

    // trivially perfect graphs have no induced P4 or C4; otherwise a
    // certified obstruction comes back
    for (name, g) in [("star", Graph::new(4, [(0, 1), (0, 2), (0, 3)])?), ("C5", Graph::cycle(5))] {
        match tp_check(&g) {
            TpCheck::TriviallyPerfect => println!("{name}: trivially perfect"),
            TpCheck::Obstruction(w) => println!("{name}: {} on {:?}", w.kind, w.vertices),
        }
    }

    let fox_inside = Graph::new(6, Kind::Fox.edges().iter().copied().chain([(4, 5)]))?;
    if let Some(w) = find_forbidden_bruteforce(&fox_inside) {
        println!("brute force finds a {} on {:?}", w.kind, w.vertices);
    }
    Ok(())
}
