use serde::Serialize;
use tvcode_core::{build_schedule, design, BallSpec, NominalDistribution};

use crate::config::JobConfig;
use crate::error::{from_core, CliError};
use crate::input::{self, Input};
use crate::report::{print_json, round_all, round_sig};

/// Design report; every vector is in the caller's symbol order.
#[derive(Debug, Serialize)]
pub struct DesignReport {
    pub alphabet_size: usize,
    pub radius: f64,
    pub alpha: f64,
    pub base: u32,
    pub alpha_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbols: Option<Vec<String>>,
    pub nominal: Vec<f64>,
    pub weights: Vec<f64>,
    pub real_lengths: Vec<f64>,
    pub integer_lengths: Vec<u32>,
    pub groups: Vec<&'static str>,
    pub top_count: usize,
    pub bottom_count: usize,
    pub worst_case_average_length: f64,
    pub entropy_of_weights: f64,
    pub kraft_sum_real: f64,
    pub kraft_sum_integer: f64,
}

pub fn nominal(input: &Input) -> Result<NominalDistribution, CliError> {
    NominalDistribution::new(&input.probabilities).map_err(|e| from_core("probabilities", e))
}

pub fn build(input: &Input, spec: &BallSpec, digits: usize) -> Result<DesignReport, CliError> {
    let mu = nominal(input)?;
    let code = design(&mu, spec).map_err(|e| from_core("probabilities", e))?;
    let schedule = build_schedule(&mu);
    let groups: Vec<&'static str> = code.weights.groups().iter().map(|g| g.as_str()).collect();

    Ok(DesignReport {
        alphabet_size: mu.len(),
        radius: spec.radius(),
        alpha: spec.alpha(),
        base: spec.base(),
        alpha_max: round_sig(schedule.alpha_max(), digits),
        symbols: input.symbols.clone(),
        nominal: round_all(&mu.caller_probs(), digits),
        weights: round_all(&mu.to_caller_order(code.weights.weights()), digits),
        real_lengths: round_all(&mu.to_caller_order(code.real_lengths.lengths()), digits),
        integer_lengths: mu
            .to_caller_order(code.integer_lengths.lengths())
            .into_iter()
            .map(|l| l as u32)
            .collect(),
        groups: mu.to_caller_order(&groups),
        top_count: code.weights.top_count(),
        bottom_count: code.weights.bottom_count(),
        worst_case_average_length: round_sig(code.worst_case_avg_length, digits),
        entropy_of_weights: round_sig(code.entropy_of_weights, digits),
        kraft_sum_real: round_sig(code.real_lengths.kraft_sum(), digits),
        kraft_sum_integer: round_sig(code.integer_lengths.kraft_sum(), digits),
    })
}

pub fn run(cfg: &JobConfig) -> Result<(), CliError> {
    let digits = cfg.checked_precision()?;
    let spec = cfg.ball()?;
    let input = input::load(&cfg.input, cfg.format)?;
    print_json(&build(&input, &spec, digits)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn halving_input() -> Input {
        Input {
            probabilities: vec![1.0 / 15.0, 8.0 / 15.0, 2.0 / 15.0, 4.0 / 15.0],
            symbols: None,
            reference: None,
        }
    }

    #[test]
    fn halving_report_in_caller_order() {
        let spec = BallSpec::new(2.0 / 15.0, 2).unwrap();
        let r = build(&halving_input(), &spec, 12).unwrap();
        let expected = [2.0 / 15.0, 7.0 / 15.0, 2.0 / 15.0, 4.0 / 15.0];
        for (a, b) in r.weights.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(r.integer_lengths, vec![3, 2, 3, 2]);
        // alpha sits on the first breakpoint, where 2/15 has just joined the bottom group
        assert_eq!(r.groups, vec!["bottom", "top", "bottom", "middle"]);
        assert_eq!(r.alpha_max, 0.3);
    }

    #[test]
    fn zero_radius_is_shannon() {
        let spec = BallSpec::new(0.0, 2).unwrap();
        let input = halving_input();
        let r = build(&input, &spec, 12).unwrap();
        for (l, p) in r.real_lengths.iter().zip(&input.probabilities) {
            assert!((l + p.log2()).abs() < 1e-10);
        }
        assert_eq!(r.integer_lengths, vec![4, 1, 3, 2]);
    }

    #[test]
    fn invalid_probability_names_index() {
        let input = Input {
            probabilities: vec![0.5, -0.1, 0.6],
            symbols: None,
            reference: None,
        };
        let err = build(&input, &BallSpec::new(0.0, 2).unwrap(), 12).unwrap_err();
        assert!(err.to_string().starts_with("probabilities[1]:"), "{err}");
    }
}
