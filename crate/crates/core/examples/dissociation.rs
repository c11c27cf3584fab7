//! Weighted dissociation sets: the local-ratio 2-approximation with its
//! certified lower bound, against the exact optimum.

use clusterkit::generate::{gnp, random_weights};
use clusterkit::{approx_dissociation_2, exact_dissociation, validate_solution, Mode};

fn main() -> clusterkit::Result<()> {
    for seed in 0..5 {
        let g = gnp(14, 0.3, seed)?.with_weights(random_weights(14, 1, 100, seed))?;
        let r = approx_dissociation_2(&g);
        let (_, opt) = exact_dissociation(&g)?;
        let valid = validate_solution(&g, &r.deleted, Mode::Dissociation)?.valid;
        println!(
            "seed {seed}: weight {:>4} optimum {opt:>4} bound {:>6.1} rounds {:>2} valid {valid}",
            r.weight,
            r.lower_bound,
            r.trace.len()
        );
    }

    // the first rounds of one run
    let g = gnp(10, 0.4, 9)?;
    let r = approx_dissociation_2(&g);
    for step in r.trace.iter().take(3) {
        println!("center {} degree {} eps {}", step.center, step.degree, step.epsilon);
    }
    Ok(())
}
