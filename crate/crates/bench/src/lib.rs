//! Seeded inputs for the benchmarks.

use pcrank_core::PcMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An `n x n` reciprocal matrix with upper entries drawn log-uniformly from `[1/9, 9]`.
pub fn random_matrix(n: usize, seed: u64) -> PcMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ln9 = 9f64.ln();
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            upper.push((i, j, rng.random_range(-ln9..=ln9).exp()));
        }
    }
    PcMatrix::from_upper_triangle(n, &upper).expect("generated matrix is valid")
}
