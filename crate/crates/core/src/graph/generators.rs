use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;

/// Seeded random forest on `num_vertices` vertices.
///
/// Vertices are visited in a random order; each one after the first is attached
/// to a uniformly chosen earlier vertex with probability `edge_density_hint`
/// (clamped to `[0, 1]`). Attaching only to earlier vertices keeps it acyclic.
pub fn random_forest(num_vertices: usize, edge_density_hint: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = edge_density_hint.clamp(0.0, 1.0);
    let mut order: Vec<usize> = (0..num_vertices).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 1..num_vertices {
        if rng.random::<f64>() < p {
            let j = rng.random_range(0..i);
            edges.push((order[j], order[i]));
        }
    }
    Graph::from_edges(num_vertices, edges).expect("ids in range")
}

/// Seeded Erdős–Rényi graph: each pair is an edge independently with probability `p`.
pub fn random_graph(num_vertices: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..num_vertices {
        for v in u + 1..num_vertices {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(num_vertices, edges).expect("ids in range")
}
