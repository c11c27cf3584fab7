//! The reduction: peel vertex-disjoint forbidden patterns until the rest is
//! in reduced form, recording which step produced each pattern.

use clusterkit::generate::gnp;
use clusterkit::{reduce, reduced_form_violation, solve};

fn main() -> clusterkit::Result<()> {
    let g = gnp(40, 0.15, 3)?;
    let red = reduce(&g)?;
    println!("removed {} of {} vertices in {} patterns", red.removed.len(), g.n(), red.witnesses.len());
    for (step, w) in &red.witnesses {
        println!("  step {step}: {} {:?} certified {}", w.kind, w.vertices, w.recheck(&g));
    }

    let rest = g.without(&red.removed).graph;
    match reduced_form_violation(&rest) {
        None => println!("remaining graph is in reduced form"),
        Some(why) => println!("unexpected: {why}"),
    }

    let sol = solve(&g)?;
    println!(
        "solve deletes {} with lower bound {:?} (quotient part {:?})",
        sol.size(),
        sol.lower_bound,
        sol.quotient_lower_bound
    );
    Ok(())
}
