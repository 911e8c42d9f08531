//! Merge recursion for the optimal weights.
//!
//! As `alpha` grows from zero the smallest nominal probabilities are pooled
//! into a bottom group whose common weight rises linearly, and the largest
//! ones into a top group whose common weight falls linearly. Every other
//! symbol keeps its nominal probability. A symbol joins a group at the value
//! of `alpha` where the group weight reaches it:
//!
//! ```text
//! bottom event: β = (k1+1)·μ(next above bottom group) - Σ bottom group
//! top event:    γ = Σ top group - (k2+1)·μ(next below top group)
//! ```
//!
//! where `k1+1` and `k2+1` are the current group sizes. The events are
//! consumed in increasing order until the middle set is empty; the two group
//! weights then meet at `1/|Σ|`, which defines `alpha_max`.

use crate::error::{Error, Result};
use crate::types::{BallSpec, NominalDistribution, WeightVector};

/// Absolute tolerance for treating a bottom and a top event as simultaneous.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// `alpha` at which a bottom group of size `k1 + 1` with total nominal mass
/// `bottom_sum` reaches the next larger probability.
pub fn next_beta(mu: &NominalDistribution, k1: usize, bottom_sum: f64) -> Result<f64> {
    let n = mu.len();
    if k1 + 1 > n - 1 {
        return Err(Error::IndexOutOfRange {
            index: k1,
            limit: n - 2,
        });
    }
    let next = mu.probs()[n - k1 - 2];
    Ok((k1 + 1) as f64 * next - bottom_sum)
}

/// `alpha` at which a top group of size `k2 + 1` with total nominal mass
/// `top_sum` falls to the next smaller probability.
pub fn next_gamma(mu: &NominalDistribution, k2: usize, top_sum: f64) -> Result<f64> {
    let n = mu.len();
    if k2 + 1 > n - 1 {
        return Err(Error::IndexOutOfRange {
            index: k2,
            limit: n - 2,
        });
    }
    let next = mu.probs()[k2 + 1];
    Ok(top_sum - (k2 + 1) as f64 * next)
}

/// Which group grew at an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Top,
}

/// One merge: a symbol joins a group at `alpha`. Counts are taken after the
/// merge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeEvent {
    pub alpha: f64,
    pub side: Side,
    pub top_count: usize,
    pub bottom_count: usize,
}

/// Every merge event for a distribution, plus the uniform point.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakpointSchedule {
    events: Vec<MergeEvent>,
    alpha_max: f64,
    len: usize,
}

impl BreakpointSchedule {
    pub fn events(&self) -> &[MergeEvent] {
        &self.events
    }

    /// Bottom-group merge values, ascending.
    pub fn betas(&self) -> Vec<f64> {
        self.side_alphas(Side::Bottom)
    }

    /// Top-group merge values, ascending.
    pub fn gammas(&self) -> Vec<f64> {
        self.side_alphas(Side::Top)
    }

    /// All merge values in the order they occur.
    pub fn alphas(&self) -> Vec<f64> {
        self.events.iter().map(|e| e.alpha).collect()
    }

    pub fn alpha_max(&self) -> f64 {
        self.alpha_max
    }

    /// Group sizes `(top, bottom)` after event `k` (1-based); `k = 0` gives
    /// the initial singletons.
    pub fn group_sizes_at(&self, k: usize) -> Option<(usize, usize)> {
        match k {
            0 => Some((1, 1)),
            _ => self.events.get(k - 1).map(|e| (e.top_count, e.bottom_count)),
        }
    }

    /// Distinct breakpoints including `0` and `alpha_max`, ascending.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut points = vec![0.0];
        for a in self.alphas().into_iter().chain(std::iter::once(self.alpha_max)) {
            if a > *points.last().expect("non-empty") {
                points.push(a);
            }
        }
        points
    }

    pub fn alphabet_size(&self) -> usize {
        self.len
    }

    fn side_alphas(&self, side: Side) -> Vec<f64> {
        self.events.iter().filter(|e| e.side == side).map(|e| e.alpha).collect()
    }
}

/// Running state of the recursion.
struct MergeState<'a> {
    mu: &'a NominalDistribution,
    top: usize,
    bottom: usize,
    top_sum: f64,
    bottom_sum: f64,
    last_alpha: f64,
    /// Second half of a simultaneous bottom/top pair, already computed.
    pending: Option<MergeEvent>,
}

impl<'a> MergeState<'a> {
    fn new(mu: &'a NominalDistribution) -> Self {
        let probs = mu.probs();
        Self {
            mu,
            top: 1,
            bottom: 1,
            top_sum: probs[0],
            bottom_sum: probs[probs.len() - 1],
            last_alpha: 0.0,
            pending: None,
        }
    }

    fn middle(&self) -> usize {
        self.mu.len() - self.top - self.bottom
    }

    fn absorb(&mut self, side: Side, alpha: f64) -> MergeEvent {
        let probs = self.mu.probs();
        match side {
            Side::Bottom => {
                self.bottom_sum += probs[probs.len() - self.bottom - 1];
                self.bottom += 1;
            }
            Side::Top => {
                self.top_sum += probs[self.top];
                self.top += 1;
            }
        }
        // events are non-decreasing; clamp rounding noise
        let alpha = alpha.max(self.last_alpha);
        self.last_alpha = alpha;
        MergeEvent {
            alpha,
            side,
            top_count: self.top,
            bottom_count: self.bottom,
        }
    }

    /// Next merge event, or `None` once the middle set is empty.
    fn next_event(&mut self) -> Option<MergeEvent> {
        if let Some(event) = self.pending.take() {
            return Some(event);
        }
        if self.middle() == 0 {
            return None;
        }
        let beta = next_beta(self.mu, self.bottom - 1, self.bottom_sum).expect("middle non-empty");
        let gamma = next_gamma(self.mu, self.top - 1, self.top_sum).expect("middle non-empty");

        if (beta - gamma).abs() <= TIE_TOLERANCE && self.middle() >= 2 {
            let first = self.absorb(Side::Bottom, beta);
            let second = self.absorb(Side::Top, beta);
            self.pending = Some(second);
            Some(first)
        } else if beta <= gamma + TIE_TOLERANCE {
            // a lone middle symbol reached by both groups at once goes to the bottom
            Some(self.absorb(Side::Bottom, beta))
        } else {
            Some(self.absorb(Side::Top, gamma))
        }
    }

    /// `alpha` at which the top and bottom group weights meet. Only
    /// meaningful once the middle set is empty.
    fn meeting_alpha(&self) -> f64 {
        let t = self.top as f64;
        let b = self.bottom as f64;
        let n = self.mu.len() as f64;
        ((b * self.top_sum - t * self.bottom_sum) / n).max(self.last_alpha)
    }

    fn weights_at(&self, alpha: f64) -> WeightVector {
        let probs = self.mu.probs();
        let n = probs.len();
        let top_weight = (self.top_sum - alpha) / self.top as f64;
        let bottom_weight = (self.bottom_sum + alpha) / self.bottom as f64;
        let mut weights = probs.to_vec();
        weights[..self.top].fill(top_weight);
        weights[n - self.bottom..].fill(bottom_weight);
        WeightVector::new(weights, alpha, self.top, self.bottom)
    }

    fn uniform(&self, alpha: f64) -> WeightVector {
        let n = self.mu.len();
        WeightVector::new(vec![1.0 / n as f64; n], alpha, self.top, self.bottom)
    }
}

/// Runs the recursion to exhaustion.
pub fn build_schedule(mu: &NominalDistribution) -> BreakpointSchedule {
    let mut state = MergeState::new(mu);
    let mut events = Vec::with_capacity(mu.len().saturating_sub(2));
    while let Some(event) = state.next_event() {
        events.push(event);
    }
    BreakpointSchedule {
        events,
        alpha_max: state.meeting_alpha(),
        len: mu.len(),
    }
}

/// Work done by [`compute_weights_with_stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MergeStats {
    /// Merge events generated before stopping.
    pub iterations: usize,
}

/// Optimal weights at `spec.alpha()` by the merge recursion.
pub fn compute_weights(mu: &NominalDistribution, spec: &BallSpec) -> WeightVector {
    compute_weights_with_stats(mu, spec).0
}

/// Same as [`compute_weights`], also reporting how many events were generated.
///
/// Events are generated lazily and the loop stops at the first event beyond
/// `alpha`, so the work is at most `|Σ| - 2` events.
pub fn compute_weights_with_stats(mu: &NominalDistribution, spec: &BallSpec) -> (WeightVector, MergeStats) {
    let alpha = spec.alpha();
    let mut state = MergeState::new(mu);
    let mut stats = MergeStats::default();

    loop {
        if state.middle() == 0 && state.pending.is_none() {
            if alpha >= state.meeting_alpha() {
                return (state.uniform(alpha), stats);
            }
            return (state.weights_at(alpha), stats);
        }
        // Look ahead without committing: groups update at the breakpoint itself.
        let snapshot = (
            state.top,
            state.bottom,
            state.top_sum,
            state.bottom_sum,
            state.last_alpha,
        );
        let pending = state.pending;
        let event = state.next_event().expect("middle non-empty or pending");
        stats.iterations += 1;
        if event.alpha > alpha {
            (
                state.top,
                state.bottom,
                state.top_sum,
                state.bottom_sum,
                state.last_alpha,
            ) = snapshot;
            state.pending = pending;
            return (state.weights_at(alpha), stats);
        }
    }
}

/// Optimal weights at `alpha` read off a precomputed schedule.
///
/// Useful when many values of `alpha` are evaluated for one distribution.
pub fn weights_from_schedule(mu: &NominalDistribution, schedule: &BreakpointSchedule, alpha: f64) -> WeightVector {
    let probs = mu.probs();
    let n = probs.len();
    let passed = schedule.events.partition_point(|e| e.alpha <= alpha);
    let (top, bottom) = schedule.group_sizes_at(passed).expect("index within events");
    if alpha >= schedule.alpha_max {
        return WeightVector::new(vec![1.0 / n as f64; n], alpha, top, bottom);
    }
    let top_sum: f64 = probs[..top].iter().sum();
    let bottom_sum: f64 = probs[n - bottom..].iter().sum();
    let mut weights = probs.to_vec();
    weights[..top].fill((top_sum - alpha) / top as f64);
    weights[n - bottom..].fill((bottom_sum + alpha) / bottom as f64);
    WeightVector::new(weights, alpha, top, bottom)
}
