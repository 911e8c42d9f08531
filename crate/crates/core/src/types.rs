//! Domain types shared by the solvers.
//!
//! All vectors produced by the solvers are aligned to the *internal* order of
//! a [`NominalDistribution`]: probabilities sorted non-increasing, with ties
//! kept in caller order. [`NominalDistribution::to_caller_order`] maps any
//! aligned vector back to the order the caller supplied.

use crate::error::{Error, Result};

/// Tolerance on `|sum - 1|` accepted by [`NominalDistribution::new`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A validated nominal source distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct NominalDistribution {
    probs: Vec<f64>,
    order: Vec<usize>,
}

impl NominalDistribution {
    /// Validates `raw`, sorts it non-increasing (stable) and renormalizes it.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::TooSmallAlphabet { len: raw.len() });
        }
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if value <= 0.0 {
                return Err(Error::NonPositiveProbability { index, value });
            }
        }

        let mut order: Vec<usize> = (0..raw.len()).collect();
        // sort_by is stable: ties keep caller order
        order.sort_by(|&a, &b| raw[b].total_cmp(&raw[a]));
        let mut probs: Vec<f64> = order.iter().map(|&i| raw[i]).collect();

        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }
        // Within summation rounding of 1 the input is kept bit-for-bit, which
        // makes validation idempotent.
        if (sum - 1.0).abs() > probs.len() as f64 * f64::EPSILON {
            for p in probs.iter_mut() {
                *p /= sum;
            }
            absorb_residual(&mut probs);
        }
        Ok(Self { probs, order })
    }

    /// Probabilities in internal (non-increasing) order.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `order()[i]` is the caller index of internal symbol `i`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always false; validation rejects alphabets smaller than two.
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Probabilities in the caller's original order.
    pub fn caller_probs(&self) -> Vec<f64> {
        self.to_caller_order(&self.probs)
    }

    /// Reorders a vector aligned to internal order back to caller order.
    ///
    /// Panics if `values` does not have one entry per symbol.
    pub fn to_caller_order<T: Clone>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(values.len(), self.len(), "vector not aligned to alphabet");
        let mut out: Vec<Option<T>> = vec![None; values.len()];
        for (internal, &caller) in self.order.iter().enumerate() {
            out[caller] = Some(values[internal].clone());
        }
        out.into_iter().map(|v| v.expect("order is a permutation")).collect()
    }

    /// Reorders a caller-ordered vector into internal order.
    pub fn to_internal_order<T: Clone>(&self, values: &[T]) -> Result<Vec<T>> {
        if values.len() != self.len() {
            return Err(Error::DimensionMismatch {
                left: values.len(),
                right: self.len(),
            });
        }
        Ok(self.order.iter().map(|&i| values[i].clone()).collect())
    }
}

/// Pushes the rounding residual of a renormalized vector into one entry so
/// that the sequential sum is exactly 1 where possible, without breaking the
/// non-increasing order.
fn absorb_residual(probs: &mut [f64]) {
    for _ in 0..4 {
        let sum: f64 = probs.iter().sum();
        let residual = 1.0 - sum;
        if residual == 0.0 {
            return;
        }
        // Raising the head or lowering the tail keeps the order intact.
        if residual > 0.0 {
            probs[0] += residual;
        } else {
            let last = probs.len() - 1;
            let lowered = probs[last] + residual;
            if lowered <= 0.0 {
                return;
            }
            probs[last] = lowered;
        }
    }
}

/// Radius of the total-variation ball and the code alphabet size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallSpec {
    radius: f64,
    alpha: f64,
    base: u32,
}

impl BallSpec {
    pub fn new(radius: f64, base: u32) -> Result<Self> {
        if !(0.0..=2.0).contains(&radius) {
            return Err(Error::InvalidRadius(radius));
        }
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        Ok(Self {
            radius,
            alpha: radius / 2.0,
            base,
        })
    }

    /// Builds the ball from its half-radius `alpha = R/2`.
    pub fn from_alpha(alpha: f64, base: u32) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        Self::new(alpha * 2.0, base)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Half the radius: the probability mass an adversary may move.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn base(&self) -> u32 {
        self.base
    }
}

/// Which part of the three-way partition a symbol belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    /// Merged high-probability symbols that gave up mass.
    Top,
    /// Symbols whose weight equals their nominal probability.
    Middle,
    /// Merged low-probability symbols that received mass.
    Bottom,
}

impl Group {
    pub fn as_str(&self) -> &'static str {
        match self {
            Group::Top => "top",
            Group::Middle => "middle",
            Group::Bottom => "bottom",
        }
    }
}

/// Re-normalized weights whose negative logarithms are the optimal lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
    alpha: f64,
    top_count: usize,
    bottom_count: usize,
}

impl WeightVector {
    pub(crate) fn new(weights: Vec<f64>, alpha: f64, top_count: usize, bottom_count: usize) -> Self {
        debug_assert!(top_count >= 1 && bottom_count >= 1);
        debug_assert!(top_count + bottom_count <= weights.len());
        Self {
            weights,
            alpha,
            top_count,
            bottom_count,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn top_count(&self) -> usize {
        self.top_count
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom_count
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Group of internal symbol `index`.
    pub fn group(&self, index: usize) -> Group {
        if index < self.top_count {
            Group::Top
        } else if index >= self.weights.len() - self.bottom_count {
            Group::Bottom
        } else {
            Group::Middle
        }
    }

    pub fn groups(&self) -> Vec<Group> {
        (0..self.weights.len()).map(|i| self.group(i)).collect()
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }
}

/// Codeword lengths for a `base`-ary prefix code.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeLengthVector {
    lengths: Vec<f64>,
    base: u32,
    integerized: bool,
}

impl CodeLengthVector {
    /// Real-valued lengths; every entry must be finite and non-negative.
    pub fn new(lengths: Vec<f64>, base: u32) -> Result<Self> {
        Self::build(lengths, base, false)
    }

    pub(crate) fn build(lengths: Vec<f64>, base: u32, integerized: bool) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if let Some((index, &value)) = lengths.iter().enumerate().find(|(_, l)| !l.is_finite() || **l < 0.0) {
            return Err(Error::InvalidLength { index, value });
        }
        Ok(Self {
            lengths,
            base,
            integerized,
        })
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn is_integerized(&self) -> bool {
        self.integerized
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn max_length(&self) -> f64 {
        self.lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_length(&self) -> f64 {
        self.lengths.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn kraft_sum(&self) -> f64 {
        crate::metrics::kraft_sum(self)
    }
}
