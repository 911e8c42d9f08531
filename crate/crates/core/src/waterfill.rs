//! Two-level waterfilling.
//!
//! The adversary moves `alpha` units of mass. Optimal weights are obtained by
//! raising the smallest probabilities to a common lower level and cutting the
//! largest ones down to a common upper level, each absorbing exactly `alpha`:
//!
//! ```text
//! Σ (lower - μ(x))⁺ = alpha        Σ (μ(x) - upper)⁺ = alpha
//! ν(x) = clamp(μ(x), lower, upper)
//! ```
//!
//! On sorted input both levels have a closed form found by a prefix scan.
//! Once the levels would cross, every weight equals `1/|Σ|`.

use crate::types::{BallSpec, NominalDistribution, WeightVector};

/// Lower and upper water levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaterLevels {
    pub lower: f64,
    pub upper: f64,
}

impl WaterLevels {
    /// True when the levels have met at `1/|Σ|`.
    pub fn is_flat(&self) -> bool {
        self.lower == self.upper
    }
}

/// Level reached when `alpha` units are poured over the smallest probabilities,
/// without clamping at the crossing point.
fn raw_lower_level(probs: &[f64], alpha: f64) -> f64 {
    let n = probs.len();
    let mut filled = 0.0;
    // ascending scan: probs is non-increasing, so walk it backwards
    for k in 1..=n {
        filled += probs[n - k];
        let level = (alpha + filled) / k as f64;
        if k == n || level <= probs[n - k - 1] {
            return level;
        }
    }
    unreachable!("scan always returns at k == n")
}

/// Level left after `alpha` units are cut from the largest probabilities,
/// without clamping at the crossing point.
fn raw_upper_level(probs: &[f64], alpha: f64) -> f64 {
    let n = probs.len();
    let mut kept = 0.0;
    for k in 1..=n {
        kept += probs[k - 1];
        let level = (kept - alpha) / k as f64;
        if k == n || level >= probs[k] {
            return level;
        }
    }
    unreachable!("scan always returns at k == n")
}

/// Lower water level for `alpha`, clamped to `1/|Σ|` from above.
pub fn solve_lower_level(mu: &NominalDistribution, alpha: f64) -> f64 {
    water_levels(mu, alpha).lower
}

/// Upper water level for `alpha`, clamped to `1/|Σ|` from below.
pub fn solve_upper_level(mu: &NominalDistribution, alpha: f64) -> f64 {
    water_levels(mu, alpha).upper
}

/// Both water levels; flat at `1/|Σ|` once they would cross.
pub fn water_levels(mu: &NominalDistribution, alpha: f64) -> WaterLevels {
    let probs = mu.probs();
    let lower = raw_lower_level(probs, alpha);
    let upper = raw_upper_level(probs, alpha);
    if lower >= upper {
        let flat = 1.0 / probs.len() as f64;
        WaterLevels {
            lower: flat,
            upper: flat,
        }
    } else {
        WaterLevels { lower, upper }
    }
}

/// Optimal weights by clamping the nominal distribution between the levels.
///
/// A symbol sitting exactly on a level stays in the middle set. Group counts
/// are reported as at least one, matching the singleton groups at `alpha = 0`.
pub fn waterfill_weights(mu: &NominalDistribution, spec: &BallSpec) -> WeightVector {
    let alpha = spec.alpha();
    let probs = mu.probs();
    let n = probs.len();
    let levels = water_levels(mu, alpha);

    if levels.is_flat() {
        let flat = levels.lower;
        let top = probs.iter().filter(|&&p| p > flat).count().clamp(1, n - 1);
        return WeightVector::new(vec![flat; n], alpha, top, n - top);
    }

    let weights: Vec<f64> = probs.iter().map(|&p| p.clamp(levels.lower, levels.upper)).collect();
    let top = probs.iter().filter(|&&p| p > levels.upper).count().max(1);
    let bottom = probs.iter().filter(|&&p| p < levels.lower).count().max(1);
    WeightVector::new(weights, alpha, top, bottom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn halving4() -> NominalDistribution {
        NominalDistribution::new(&[8.0 / 15.0, 4.0 / 15.0, 2.0 / 15.0, 1.0 / 15.0]).unwrap()
    }

    /// Bisection on the monotone filled-mass function; slow but independent
    /// of the prefix structure.
    fn bisect_level(probs: &[f64], alpha: f64, lower: bool) -> f64 {
        let mass = |w: f64| -> f64 {
            probs
                .iter()
                .map(|&p| if lower { (w - p).max(0.0) } else { (p - w).max(0.0) })
                .sum()
        };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let too_much = if lower { mass(mid) > alpha } else { mass(mid) < alpha };
            if too_much {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn halving_levels_at_one_fifteenth() {
        let mu = halving4();
        let a = 1.0 / 15.0;
        let lower = solve_lower_level(&mu, a);
        let upper = solve_upper_level(&mu, a);
        assert!((lower - 2.0 / 15.0).abs() < 1e-15);
        assert!((upper - 7.0 / 15.0).abs() < 1e-15);
        assert!((lower - bisect_level(mu.probs(), a, true)).abs() < 1e-12);
        assert!((upper - bisect_level(mu.probs(), a, false)).abs() < 1e-12);
    }

    #[test]
    fn zero_alpha_levels_are_extremes() {
        let mu = halving4();
        assert_eq!(solve_lower_level(&mu, 0.0), mu.probs()[3]);
        assert_eq!(solve_upper_level(&mu, 0.0), mu.probs()[0]);
        let spec = BallSpec::new(0.0, 2).unwrap();
        assert_eq!(waterfill_weights(&mu, &spec).weights(), mu.probs());
    }

    #[test]
    fn uniform_is_already_level() {
        let mu = NominalDistribution::new(&[0.2; 5]).unwrap();
        for a in [0.01, 0.3, 1.0] {
            assert!((solve_lower_level(&mu, a) - 0.2).abs() < 1e-15);
            assert!((solve_upper_level(&mu, a) - 0.2).abs() < 1e-15);
        }
    }

    #[test]
    fn halving_weights() {
        let mu = halving4();
        let spec = BallSpec::new(2.0 / 15.0, 2).unwrap();
        let w = waterfill_weights(&mu, &spec);
        let expected = [7.0 / 15.0, 4.0 / 15.0, 2.0 / 15.0, 2.0 / 15.0];
        for (a, b) in w.weights().iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        // x3 sits on the lower level: middle set
        assert_eq!(w.top_count(), 1);
        assert_eq!(w.bottom_count(), 1);
    }

    #[test]
    fn beyond_crossing_is_uniform() {
        let mu = halving4();
        // half the TV distance to uniform: (1/4 - 2/15) + (1/4 - 1/15) = 3/10
        for a in [0.3, 0.5, 1.0] {
            let spec = BallSpec::from_alpha(a, 2).unwrap();
            let w = waterfill_weights(&mu, &spec);
            assert!(w.weights().iter().all(|&x| x == 0.25));
            assert_eq!(w.top_count() + w.bottom_count(), 4);
        }
        let spec = BallSpec::from_alpha(0.299, 2).unwrap();
        assert!(waterfill_weights(&mu, &spec).weights()[0] > 0.25);
    }

    fn instance() -> impl Strategy<Value = (NominalDistribution, f64)> {
        (prop::collection::vec(1e-3f64..1.0, 2..40), 0.0f64..=1.0).prop_map(|(v, a)| {
            let s: f64 = v.iter().sum();
            let p: Vec<f64> = v.into_iter().map(|x| x / s).collect();
            (NominalDistribution::new(&p).unwrap(), a)
        })
    }

    proptest! {
        #[test]
        fn filled_mass_identities((mu, a) in instance()) {
            let levels = water_levels(&mu, a);
            prop_assume!(!levels.is_flat());
            let filled: f64 = mu.probs().iter().map(|&p| (levels.lower - p).max(0.0)).sum();
            let cut: f64 = mu.probs().iter().map(|&p| (p - levels.upper).max(0.0)).sum();
            prop_assert!((filled - a).abs() < 1e-12);
            prop_assert!((cut - a).abs() < 1e-12);
            prop_assert!(levels.lower > 0.0 && levels.lower <= levels.upper && levels.upper <= 1.0);
        }

        #[test]
        fn levels_match_bisection((mu, a) in instance()) {
            let levels = water_levels(&mu, a);
            prop_assume!(!levels.is_flat());
            prop_assert!((levels.lower - bisect_level(mu.probs(), a, true)).abs() < 1e-10);
            prop_assert!((levels.upper - bisect_level(mu.probs(), a, false)).abs() < 1e-10);
        }

        #[test]
        fn weights_sum_to_one_and_stay_sorted((mu, a) in instance()) {
            let spec = BallSpec::from_alpha(a, 2).unwrap();
            let w = waterfill_weights(&mu, &spec);
            let sum: f64 = w.weights().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
            prop_assert!(w.weights().windows(2).all(|p| p[0] >= p[1]));
            let t = w.top_count();
            let b = w.bottom_count();
            let n = w.len();
            prop_assert!(w.weights()[..t].iter().all(|&x| x == w.weights()[0]));
            prop_assert!(w.weights()[n - b..].iter().all(|&x| x == w.weights()[n - 1]));
        }

        #[test]
        fn levels_are_monotone_in_alpha((mu, a) in instance(), b in 0.0f64..=1.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let l1 = water_levels(&mu, lo);
            let l2 = water_levels(&mu, hi);
            prop_assert!(l2.lower >= l1.lower - 1e-15);
            prop_assert!(l2.upper <= l1.upper + 1e-15);
        }
    }
}
