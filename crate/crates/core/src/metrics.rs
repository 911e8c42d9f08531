//! Distances, divergences and entropy on finite probability vectors.

use crate::error::{Error, Result};
use crate::types::CodeLengthVector;

fn check_dims(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// Total variation distance `Σ |p(x) - q(x)|`, in `[0, 2]` for distributions.
///
/// Note the convention: no factor 1/2.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    check_dims(p, q)?;
    Ok(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum())
}

/// Relative entropy `Σ p ln(p/q)` in nats.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    check_dims(p, q)?;
    let mut total = 0.0;
    for (index, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        if pi <= 0.0 {
            continue;
        }
        if qi <= 0.0 {
            return Err(Error::SupportViolation { index });
        }
        total += pi * (pi / qi).ln();
    }
    // Rounding can push the sum of near-identical vectors slightly negative.
    Ok(total.max(0.0))
}

/// Entropy `-Σ p log_D p` with `0 log 0 = 0`.
pub fn entropy(p: &[f64], base: u32) -> Result<f64> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let ln_base = f64::from(base).ln();
    let nats: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum();
    Ok((nats / ln_base).max(0.0))
}

/// Kraft sum `Σ D^{-l(x)}`.
pub fn kraft_sum(lengths: &CodeLengthVector) -> f64 {
    let base = f64::from(lengths.base());
    lengths.lengths().iter().map(|&l| base.powf(-l)).sum()
}

/// `log_D(x)` via the natural-log ratio.
pub(crate) fn log_base(x: f64, base: u32) -> f64 {
    x.ln() / f64::from(base).ln()
}
