//! Build a labelled graph, delete vertices until every component is a
//! clique, and check the answer independently.

use clusterkit::{build_graph, exact_association, solve, validate_solution, Mode};

fn main() -> clusterkit::Result<()> {
    // two triangles bridged by a path, plus a pendant vertex
    let g = build_graph(
        &[
            ("a", "b"), ("b", "c"), ("a", "c"),
            ("c", "d"), ("d", "e"),
            ("e", "f"), ("f", "g"), ("e", "g"),
            ("g", "h"),
        ],
        None,
    )?;

    let sol = solve(&g)?;
    let deleted: Vec<&str> = sol.deleted.iter().map(|v| g.label(v)).collect();
    println!("deleted {deleted:?}");
    for (v, rule) in &sol.provenance {
        println!("  {} <- {rule}", g.label(*v));
    }

    let check = validate_solution(&g, &sol.deleted, Mode::Association)?;
    let lower = sol.lower_bound.unwrap_or(0.0);
    println!("valid {}, size {}, certified lower bound {lower}", check.valid, sol.size());
    assert!(check.valid && sol.size() as f64 <= 2.5 * lower);

    let (_, opt) = exact_association(&g)?;
    println!("optimum {opt}");
    Ok(())
}
