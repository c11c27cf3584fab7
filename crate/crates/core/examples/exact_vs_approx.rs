//! Head-to-head on seeded random graphs: the 2.5-approximation, the naive
//! 3-approximation and the exact optimum.

use clusterkit::generate::gnp;
use clusterkit::{exact_association, naive_3_approx, solve};

fn main() -> clusterkit::Result<()> {
    println!("{:>5} {:>4} {:>6} {:>6} {:>6}", "p", "seed", "exact", "solve", "naive");
    let (mut sum_solve, mut sum_naive, mut count) = (0.0, 0.0, 0);
    for p in [0.2, 0.4, 0.6] {
        for seed in 0..4 {
            let g = gnp(16, p, seed)?;
            let (_, opt) = exact_association(&g)?;
            let a = solve(&g)?.size();
            let b = naive_3_approx(&g).size();
            println!("{p:>5} {seed:>4} {opt:>6} {a:>6} {b:>6}");
            if opt > 0 {
                sum_solve += a as f64 / opt as f64;
                sum_naive += b as f64 / opt as f64;
                count += 1;
            }
        }
    }
    println!("mean ratio: solve {:.3}, naive {:.3}", sum_solve / count as f64, sum_naive / count as f64);
    Ok(())
}
