//! Code lengths from weights, pay-off evaluation, and the end-to-end design.

use crate::error::{Error, Result};
use crate::merge::compute_weights;
use crate::metrics::{entropy, log_base};
use crate::types::{BallSpec, CodeLengthVector, NominalDistribution, WeightVector};

/// Real lengths closer than this to an integer are snapped before rounding
/// up, so that `-log_D(1/D^k)` evaluated as `k + ε` still rounds to `k`.
const INTEGER_SNAP: f64 = 1e-12;

/// Optimal real-valued lengths `-log_D ν(x)`.
///
/// Members of a merged group share a weight and therefore a length.
pub fn optimal_lengths(weights: &WeightVector, base: u32) -> Result<CodeLengthVector> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut lengths = Vec::with_capacity(weights.len());
    for (index, &w) in weights.weights().iter().enumerate() {
        if w <= 0.0 || !w.is_finite() {
            return Err(Error::ZeroWeight { index, value: w });
        }
        // weights above 1 cannot occur for valid input; clamp rounding noise
        lengths.push((-log_base(w, base)).max(0.0));
    }
    CodeLengthVector::build(lengths, base, false)
}

/// Rounds every length up to the next integer, keeping the Kraft inequality.
pub fn integerize(lengths: &CodeLengthVector) -> CodeLengthVector {
    let rounded = lengths
        .lengths()
        .iter()
        .map(|&l| {
            let nearest = l.round();
            if (l - nearest).abs() <= INTEGER_SNAP {
                nearest
            } else {
                l.ceil()
            }
        })
        .collect();
    CodeLengthVector::build(rounded, lengths.base(), true).expect("ceil keeps lengths non-negative")
}

/// Average length `Σ l(x) p(x)`.
pub fn average_length(lengths: &CodeLengthVector, p: &[f64]) -> Result<f64> {
    if lengths.len() != p.len() {
        return Err(Error::DimensionMismatch {
            left: lengths.len(),
            right: p.len(),
        });
    }
    Ok(lengths.lengths().iter().zip(p).map(|(l, q)| l * q).sum())
}

/// Largest average length over the ball, in closed form:
/// `(R/2)(l_max - l_min) + Σ l(x) μ(x)`.
pub fn worst_case_payoff(lengths: &CodeLengthVector, mu: &NominalDistribution, spec: &BallSpec) -> Result<f64> {
    let nominal = average_length(lengths, mu.probs())?;
    Ok(spec.alpha() * (lengths.max_length() - lengths.min_length()) + nominal)
}

/// A complete robust code design, aligned to the nominal distribution's
/// internal order.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeDesign {
    pub weights: WeightVector,
    pub real_lengths: CodeLengthVector,
    pub integer_lengths: CodeLengthVector,
    /// Worst-case average length of `real_lengths` over the ball.
    pub worst_case_avg_length: f64,
    /// `H(ν)` in base-`D` units.
    pub entropy_of_weights: f64,
}

impl CodeDesign {
    /// Average length of the integer code under the weights.
    pub fn integer_average_under_weights(&self) -> f64 {
        average_length(&self.integer_lengths, self.weights.weights()).expect("aligned by construction")
    }
}

/// Weights, real lengths and integer lengths for the minimax code.
pub fn design(mu: &NominalDistribution, spec: &BallSpec) -> Result<CodeDesign> {
    let weights = compute_weights(mu, spec);
    let real_lengths = optimal_lengths(&weights, spec.base())?;
    let integer_lengths = integerize(&real_lengths);
    let worst_case_avg_length = worst_case_payoff(&real_lengths, mu, spec)?;
    let entropy_of_weights = entropy(weights.weights(), spec.base())?;
    Ok(CodeDesign {
        weights,
        real_lengths,
        integer_lengths,
        worst_case_avg_length,
        entropy_of_weights,
    })
}
