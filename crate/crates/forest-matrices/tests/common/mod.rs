//! Shared fixtures and seeded random generators for the integration suites.

// each integration test compiles this module separately and uses a subset
#![allow(dead_code)]

use forest_matrices::linalg::Matrix;
use forest_matrices::markov::StochasticMatrix;
use forest_matrices::WeightedDigraph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SUITE_SEED: u64 = 0x5EED_F0E5;

pub fn g0() -> WeightedDigraph {
    WeightedDigraph::new(2, []).unwrap()
}

pub fn g1() -> WeightedDigraph {
    WeightedDigraph::new(2, [(1, 2, 2.0)]).unwrap()
}

pub fn g2() -> WeightedDigraph {
    WeightedDigraph::new(2, [(1, 2, 1.0), (2, 1, 1.0)]).unwrap()
}

pub fn g3() -> WeightedDigraph {
    WeightedDigraph::new(3, [(1, 2, 1.0), (2, 3, 1.0)]).unwrap()
}

pub fn fixtures() -> Vec<WeightedDigraph> {
    vec![g0(), g1(), g2(), g3()]
}

/// One random digraph: every ordered pair gets an arc with probability
/// `arc_prob`, weights uniform in `[w_lo, w_hi]`.
pub fn random_digraph(
    rng: &mut ChaCha8Rng,
    n: usize,
    arc_prob: f64,
    w_lo: f64,
    w_hi: f64,
) -> WeightedDigraph {
    let mut arcs = Vec::new();
    for tail in 1..=n {
        for head in 1..=n {
            if tail != head && rng.gen_bool(arc_prob) {
                arcs.push((tail, head, rng.gen_range(w_lo..w_hi)));
            }
        }
    }
    WeightedDigraph::new(n, arcs).unwrap()
}

/// The fixed random suite used by the acceptance criteria: `count` digraphs
/// with `n` cycling through 2..=5, arc probability 0.5, weights in
/// `[0.1, 10]`.
pub fn random_suite(count: usize) -> Vec<WeightedDigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..count)
        .map(|i| random_digraph(&mut rng, 2 + i % 4, 0.5, 0.1, 10.0))
        .collect()
}

/// Random digraphs up to `n = 8` for the eigen checks.
pub fn random_suite_large(count: usize) -> Vec<WeightedDigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0xBEEF);
    (0..count)
        .map(|i| random_digraph(&mut rng, 2 + i % 7, 0.5, 0.1, 10.0))
        .collect()
}

/// Random symmetric digraphs (undirected graphs encoded as arc pairs).
pub fn random_symmetric_suite(count: usize) -> Vec<WeightedDigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0x51EE);
    (0..count)
        .map(|i| {
            let n = 2 + i % 4;
            let mut arcs = Vec::new();
            for tail in 1..=n {
                for head in tail + 1..=n {
                    if rng.gen_bool(0.6) {
                        let w = rng.gen_range(0.1..10.0);
                        arcs.push((tail, head, w));
                        arcs.push((head, tail, w));
                    }
                }
            }
            WeightedDigraph::new(n, arcs).unwrap()
        })
        .collect()
}

/// Random unichain transition matrix: a cycle skeleton guarantees a single
/// sink component, random extra probability mass (including self-loops)
/// fills in the rest, rows normalized to sum exactly to 1.
pub fn random_unichain(rng: &mut ChaCha8Rng, n: usize) -> StochasticMatrix {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0.0; n];
        row[(i + 1) % n] = rng.gen_range(0.2..1.0);
        for value in row.iter_mut() {
            if rng.gen_bool(0.5) {
                *value += rng.gen_range(0.0..1.0);
            }
        }
        let total: f64 = row.iter().sum();
        for value in &mut row {
            *value /= total;
        }
        rows.push(row);
    }
    let data: Vec<f64> = rows.into_iter().flatten().collect();
    StochasticMatrix::new(Matrix::from_vec(n, n, data).unwrap()).unwrap()
}

pub fn random_unichains(count: usize) -> Vec<StochasticMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0xCAFE);
    (0..count)
        .map(|i| random_unichain(&mut rng, 2 + i % 7))
        .collect()
}
