//! Random multigraph instances in the style of the DIMACS `sprand`
//! generator: a fixed number of edges drawn at random, possibly producing
//! parallel edges and self-loops.
//!
//! The first `n` edges form a random Hamiltonian cycle so that every node
//! lies on some s-t walk regardless of the sampled endpoints; the remaining
//! `m - n` edges are uniform over ordered node pairs. Weights are uniform
//! integers in `[1, max_weight]`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("need m >= n >= 2, got n={n}, m={m}")]
    TooFewEdges { n: usize, m: usize },
    #[error("max_weight must be >= 1")]
    ZeroMaxWeight,
}

/// Deterministic for a fixed `(n, m, max_weight, seed)` tuple.
pub fn random_multigraph(
    n: usize,
    m: usize,
    max_weight: u32,
    seed: u64,
) -> Result<Graph, GenError> {
    if n < 2 || m < n {
        return Err(GenError::TooFewEdges { n, m });
    }
    if max_weight == 0 {
        return Err(GenError::ZeroMaxWeight);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<NodeId> = (0..n as NodeId).collect();
    order.shuffle(&mut rng);

    let mut edges = Vec::with_capacity(m);
    for i in 0..n {
        let tail = order[i];
        let head = order[(i + 1) % n];
        let w = rng.random_range(1..=max_weight) as f64;
        edges.push((tail, head, w));
    }
    for _ in n..m {
        let tail = rng.random_range(0..n as NodeId);
        let head = rng.random_range(0..n as NodeId);
        let w = rng.random_range(1..=max_weight) as f64;
        edges.push((tail, head, w));
    }

    Ok(Graph::from_edges(n, &edges).expect("generated edges are always valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_node_case_is_a_cycle() {
        let g = random_multigraph(2, 2, 10, 99).unwrap();
        assert_eq!(g.edge_count(), 2);
        let tails: Vec<_> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
        assert!(tails.contains(&(0, 1)));
        assert!(tails.contains(&(1, 0)));
        for e in g.edges() {
            assert!(e.weight >= 1.0 && e.weight <= 10.0);
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = random_multigraph(50, 200, 1000, 7).unwrap();
        let b = random_multigraph(50, 200, 1000, 7).unwrap();
        assert_eq!(a, b);
        let c = random_multigraph(50, 200, 1000, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn large_instance_is_strongly_connected() {
        let g = random_multigraph(2000, 8000, 10000, 3).unwrap();
        assert_eq!(g.node_count(), 2000);
        assert_eq!(g.edge_count(), 8000);
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            random_multigraph(5, 4, 10, 0),
            Err(GenError::TooFewEdges { n: 5, m: 4 })
        );
        assert_eq!(
            random_multigraph(1, 4, 10, 0),
            Err(GenError::TooFewEdges { n: 1, m: 4 })
        );
        assert_eq!(random_multigraph(2, 2, 0, 0), Err(GenError::ZeroMaxWeight));
    }
}
