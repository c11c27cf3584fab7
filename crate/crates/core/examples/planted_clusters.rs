//! Planted clusters with noise vertices: deleting the planted noise restores
//! a cluster graph, so the optimum is at most the noise count.

use clusterkit::generate::{generate, GenSpec, Model};
use clusterkit::{solve, validate_solution, Mode};

fn main() -> clusterkit::Result<()> {
    let spec = GenSpec {
        model: Model::Planted {
            cluster_sizes: vec![6, 5, 5, 4],
            noise_vertices: 3,
            noise_p: 0.4,
        },
        seed: 7,
    };
    let gen = generate(&spec)?;
    let noise = gen.noise.expect("planted graphs report their noise");
    println!("{} vertices, {} edges, noise {:?}", gen.graph.n(), gen.graph.m(), noise.as_slice());
    assert!(validate_solution(&gen.graph, &noise, Mode::Association)?.valid);

    let sol = solve(&gen.graph)?;
    let recovered = sol.deleted.intersection(&noise).len();
    println!(
        "solve deletes {} vertices ({} of them planted noise); the planted bound is {}",
        sol.size(),
        recovered,
        noise.len()
    );
    Ok(())
}
