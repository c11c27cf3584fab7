//! Seeded random instances. All randomness comes from `ChaCha8Rng` seeded
//! with `seed_from_u64`, so a spec and seed give the same graph everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum Model {
    /// Every pair is an edge with probability `p`.
    Gnp { n: usize, p: f64 },
    /// Disjoint cliques of the given sizes plus `noise_vertices` extra
    /// vertices, each adjacent to every other vertex with probability
    /// `noise_p`.
    Planted {
        cluster_sizes: Vec<usize>,
        noise_vertices: usize,
        noise_p: f64,
    },
    /// Random bipartite graph between `0..left` and `left..left + right`.
    Bipartite { left: usize, right: usize, p: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub model: Model,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    /// The planted model's noise vertices; deleting them leaves a cluster graph.
    pub noise: Option<VertexSet>,
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("probability {p} outside [0, 1]")))
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    let mut rng = rng(spec.seed);
    match &spec.model {
        &Model::Gnp { n, p } => {
            check_probability(p)?;
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random::<f64>() < p {
                        edges.push((a, b));
                    }
                }
            }
            Ok(Generated {
                graph: Graph::new(n, edges)?,
                noise: None,
            })
        }
        Model::Planted {
            cluster_sizes,
            noise_vertices,
            noise_p,
        } => {
            check_probability(*noise_p)?;
            if cluster_sizes.contains(&0) {
                return Err(Error::InvalidSpec("empty cluster".into()));
            }
            let base: usize = cluster_sizes.iter().sum();
            let n = base + noise_vertices;
            let mut edges = Vec::new();
            let mut start = 0;
            for &size in cluster_sizes {
                for a in start..start + size {
                    for b in a + 1..start + size {
                        edges.push((a, b));
                    }
                }
                start += size;
            }
            for v in base..n {
                for u in 0..v {
                    if rng.random::<f64>() < *noise_p {
                        edges.push((u, v));
                    }
                }
            }
            Ok(Generated {
                graph: Graph::new(n, edges)?,
                noise: Some((base..n).collect()),
            })
        }
        &Model::Bipartite { left, right, p } => {
            check_probability(p)?;
            let mut edges = Vec::new();
            for a in 0..left {
                for b in left..left + right {
                    if rng.random::<f64>() < p {
                        edges.push((a, b));
                    }
                }
            }
            Ok(Generated {
                graph: Graph::new(left + right, edges)?,
                noise: None,
            })
        }
    }
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    Ok(generate(&GenSpec {
        model: Model::Gnp { n, p },
        seed,
    })?
    .graph)
}

/// Uniform integer weights in `lo..=hi`.
pub fn random_weights(n: usize, lo: u32, hi: u32, seed: u64) -> Vec<f64> {
    let mut rng = rng(seed);
    (0..n).map(|_| rng.random_range(lo..=hi) as f64).collect()
}

/// The graph on `n` vertices whose edges are the set bits of `mask`, pairs
/// taken in lexicographic order `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    let edges = pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
    Graph::new(n, edges).expect("pairs are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        assert_eq!(gnp(5, 0.0, 1).unwrap().m(), 0);
        assert!(gnp(5, 1.0, 1).unwrap().is_clique());
        assert!(gnp(5, 1.5, 1).is_err());
    }

    #[test]
    fn planted_noise_restores_clusters() {
        let spec = GenSpec {
            model: Model::Planted {
                cluster_sizes: vec![4, 4, 4],
                noise_vertices: 2,
                noise_p: 0.3,
            },
            seed: 7,
        };
        let out = generate(&spec).unwrap();
        assert_eq!(out.graph.n(), 14);
        let noise = out.noise.unwrap();
        assert!(out.graph.without(&noise).graph.is_cluster());
    }

    #[test]
    fn seeds_reproduce() {
        assert_eq!(gnp(30, 0.3, 42).unwrap(), gnp(30, 0.3, 42).unwrap());
        assert_ne!(gnp(30, 0.3, 42).unwrap(), gnp(30, 0.3, 43).unwrap());
    }

    #[test]
    fn bipartite_is_triangle_free() {
        for seed in 0..20 {
            let spec = GenSpec {
                model: Model::Bipartite { left: 5, right: 6, p: 0.6 },
                seed,
            };
            assert!(generate(&spec).unwrap().graph.is_triangle_free());
        }
    }

    #[test]
    fn mask_enumeration() {
        assert_eq!(graph_from_mask(3, 0b011).m(), 2);
        assert!(graph_from_mask(4, 0b111111).is_clique());
    }
}
