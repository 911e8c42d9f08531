//! Brute-force verifiers, independent of the waterfill and merge solvers.
//!
//! * [`maximize_over_ball`] solves the inner linear program over the
//!   total-variation ball exactly by greedy mass transfer.
//! * [`enumerate_partitions`] tries every top/bottom group split and keeps the
//!   one whose induced lengths have the smallest worst-case pay-off.
//! * [`sample_ball`] draws feasible distributions for dominance checks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::types::{BallSpec, CodeLengthVector, NominalDistribution};

/// Largest alphabet accepted by [`enumerate_partitions`].
pub const MAX_ENUMERATION_SIZE: usize = 12;

/// Slack on the ordering filters of [`enumerate_partitions`].
const FILTER_SLACK: f64 = 1e-12;

/// Maximizing distribution of a linear objective over the ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallMaximizerResult {
    pub nu_star: Vec<f64>,
    pub payoff: f64,
    /// Total variation distance from the nominal distribution actually used.
    pub tv_used: f64,
}

/// Maximizes `Σ l(x) ν(x)` over distributions within TV distance `R` of `μ`.
///
/// Up to `R/2` units of mass move from the shortest codewords (donors,
/// ascending length, each drained at most to zero) to the longest ones
/// (recipients, descending length, each filled at most to one). Ties are
/// broken by the lower internal index on both sides. Vectors are aligned to
/// the internal order of `mu`.
pub fn maximize_over_ball(
    lengths: &CodeLengthVector,
    mu: &NominalDistribution,
    spec: &BallSpec,
) -> Result<BallMaximizerResult> {
    let l = lengths.lengths();
    if l.len() != mu.len() {
        return Err(Error::DimensionMismatch {
            left: l.len(),
            right: mu.len(),
        });
    }
    let mut nu = mu.probs().to_vec();

    let mut donors: Vec<usize> = (0..l.len()).collect();
    donors.sort_by(|&a, &b| l[a].total_cmp(&l[b]).then(a.cmp(&b)));
    let mut recipients: Vec<usize> = (0..l.len()).collect();
    recipients.sort_by(|&a, &b| l[b].total_cmp(&l[a]).then(a.cmp(&b)));

    let mut budget = spec.alpha();
    let mut moved = 0.0;
    let (mut d, mut r) = (0, 0);
    while budget > 0.0 && d < donors.len() && r < recipients.len() {
        let (from, to) = (donors[d], recipients[r]);
        if l[to] <= l[from] {
            break;
        }
        let room = 1.0 - nu[to];
        let amount = budget.min(nu[from]).min(room);
        nu[from] -= amount;
        nu[to] += amount;
        budget -= amount;
        moved += amount;
        if nu[from] <= 0.0 {
            d += 1;
        }
        if nu[to] >= 1.0 {
            r += 1;
        }
    }

    let payoff = l.iter().zip(&nu).map(|(a, b)| a * b).sum();
    Ok(BallMaximizerResult {
        nu_star: nu,
        payoff,
        tv_used: 2.0 * moved,
    })
}

/// Best partition found by [`enumerate_partitions`].
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOptimum {
    /// Weights of the winning candidate, internal order.
    pub best_weights: Vec<f64>,
    /// Worst-case average length of the lengths `-log_D` of those weights.
    pub best_payoff: f64,
    /// `(top, bottom)` group sizes of the winner; `None` for the flat code.
    pub partition: Option<(usize, usize)>,
    /// Number of candidates that survived the filters.
    pub candidates: usize,
}

/// Exhaustive search over top/bottom group sizes.
///
/// For every split with `t` top and `b` bottom symbols the candidate weights
/// pool the top group at `(Σ top μ - α)/t` and the bottom group at
/// `(Σ bottom μ + α)/b`. Candidates outside `(0, 1]`, or whose pooled weights
/// cross a neighbouring middle symbol or one of their own members, are
/// dropped. The flat code is always a candidate. Each candidate is scored by
/// the exact worst-case pay-off of its lengths `-log_D ν`, evaluated here
/// directly, and the smallest score wins.
pub fn enumerate_partitions(mu: &NominalDistribution, spec: &BallSpec) -> Result<PartitionOptimum> {
    let n = mu.len();
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::AlphabetTooLarge {
            len: n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let probs = mu.probs();
    let alpha = spec.alpha();
    let ln_base = f64::from(spec.base()).ln();

    let score = |weights: &[f64]| -> f64 {
        let lengths: Vec<f64> = weights.iter().map(|w| -w.ln() / ln_base).collect();
        let max = lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = lengths.iter().copied().fold(f64::INFINITY, f64::min);
        let nominal: f64 = lengths.iter().zip(probs).map(|(l, p)| l * p).sum();
        alpha * (max - min) + nominal
    };

    let flat = vec![1.0 / n as f64; n];
    let mut best = PartitionOptimum {
        best_payoff: score(&flat),
        best_weights: flat,
        partition: None,
        candidates: 1,
    };

    for t in 1..n {
        for b in 1..=(n - t) {
            let top_sum: f64 = probs[..t].iter().sum();
            let bottom_sum: f64 = probs[n - b..].iter().sum();
            let top_w = (top_sum - alpha) / t as f64;
            let bottom_w = (bottom_sum + alpha) / b as f64;
            if !(top_w > 0.0 && top_w <= 1.0 && bottom_w > 0.0 && bottom_w <= 1.0) {
                continue;
            }
            // pooled weights may not pass their own members
            if top_w > probs[t - 1] + FILTER_SLACK || bottom_w < probs[n - b] - FILTER_SLACK {
                continue;
            }
            let ordered = if t + b < n {
                top_w >= probs[t] - FILTER_SLACK && bottom_w <= probs[n - b - 1] + FILTER_SLACK
            } else {
                top_w >= bottom_w - FILTER_SLACK
            };
            if !ordered {
                continue;
            }

            let mut weights = probs.to_vec();
            weights[..t].fill(top_w);
            weights[n - b..].fill(bottom_w);
            let payoff = score(&weights);
            best.candidates += 1;
            if payoff < best.best_payoff {
                best.best_payoff = payoff;
                best.best_weights = weights;
                best.partition = Some((t, b));
            }
        }
    }
    Ok(best)
}

/// Deterministic pseudo-random distributions inside the ball.
///
/// Each sample mixes `μ` with a random Dirichlet(1,…,1) draw, shrunk toward
/// `μ` so that its TV distance is at most `R`; a uniform factor spreads the
/// samples through the interior.
pub fn sample_ball(mu: &NominalDistribution, spec: &BallSpec, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let probs = mu.probs();
    let radius = spec.radius();
    (0..count)
        .map(|_| {
            let raw: Vec<f64> = probs.iter().map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let total: f64 = raw.iter().sum();
            let direction: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let distance: f64 = direction.iter().zip(probs).map(|(a, b)| (a - b).abs()).sum();
            let cap = if distance > 0.0 {
                (radius / distance).min(1.0)
            } else {
                0.0
            };
            // slightly inside the ball so rounding cannot push it out
            let t = cap * rng.gen::<f64>() * (1.0 - 1e-12);
            probs.iter().zip(&direction).map(|(&p, &d)| p + t * (d - p)).collect()
        })
        .collect()
}
