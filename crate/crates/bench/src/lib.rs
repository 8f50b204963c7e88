//! Deterministic inputs shared by the benchmarks.

use pcgrass::{AdditiveMatrix, VectorN};

/// Reproducible pseudo-random values in `[-1, 1)` (64-bit LCG).
pub fn values(seed: u64, len: usize) -> Vec<f64> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..len)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 52) as f64 - 1.0
        })
        .collect()
}

pub fn matrix(n: usize, seed: u64) -> AdditiveMatrix {
    AdditiveMatrix::from_upper(n, values(seed, n * (n - 1) / 2)).expect("finite values")
}

pub fn vector(n: usize, seed: u64) -> VectorN {
    VectorN::new(values(seed, n)).expect("finite values")
}
