//! Instance generators shared by the benchmarks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tvcode_core::NominalDistribution;

/// A random strictly positive distribution over `n` symbols.
pub fn random_distribution(n: usize, seed: u64) -> NominalDistribution {
    let mut rng = StdRng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(1e-3..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let probs: Vec<f64> = raw.iter().map(|x| x / total).collect();
    NominalDistribution::new(&probs).expect("generated distribution is valid")
}

/// Geometric distribution `∝ 2^{-i}`, the worst case for the event loop
/// when `alpha` sits just below the uniform point.
pub fn geometric_distribution(n: usize) -> NominalDistribution {
    let raw: Vec<f64> = (0..n).map(|i| 0.5f64.powi(i as i32).max(1e-300)).collect();
    let total: f64 = raw.iter().sum();
    let probs: Vec<f64> = raw.iter().map(|x| x / total).collect();
    NominalDistribution::new(&probs).expect("generated distribution is valid")
}
