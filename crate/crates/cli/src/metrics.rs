use serde::Serialize;
use tvcode_core::{entropy, kl_divergence, tv_distance};

use crate::config::JobConfig;
use crate::error::CliError;
use crate::input::{self, Input};
use crate::report::{print_json, round_sig};

#[derive(Debug, Serialize)]
pub struct MetricsReport {
    pub base: u32,
    pub entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub entropy_reference: f64,
    pub tv_distance: f64,
    /// KL(p || reference) in nats; null when p is not absolutely continuous.
    pub kl_forward: Option<f64>,
    /// KL(reference || p) in nats.
    pub kl_reverse: Option<f64>,
    pub pinsker: Pinsker,
}

/// `tv² ≤ 2·KL` checked against the smaller finite direction.
#[derive(Debug, Serialize)]
pub struct Pinsker {
    pub tv_squared: f64,
    pub two_kl: Option<f64>,
    pub holds: bool,
}

/// Distributions for metrics may contain zeros but must be normalized.
fn check_distribution(field: &str, p: &[f64]) -> Result<(), CliError> {
    if p.is_empty() {
        return Err(CliError::invalid(field, "empty distribution"));
    }
    for (i, &x) in p.iter().enumerate() {
        if !x.is_finite() || x < 0.0 {
            return Err(CliError::invalid(
                format!("{field}[{i}]"),
                format!("invalid probability {x}"),
            ));
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(CliError::invalid(
            field,
            format!("probabilities sum to {sum}, expected 1"),
        ));
    }
    Ok(())
}

pub fn build(input: &Input, base: u32, digits: usize) -> Result<MetricsReport, CliError> {
    if base < 2 {
        return Err(CliError::invalid("--base", format!("{base} must be at least 2")));
    }
    let p = &input.probabilities;
    check_distribution("probabilities", p)?;
    let h = entropy(p, base).expect("base checked");

    let comparison = match &input.reference {
        None => None,
        Some(q) => {
            check_distribution("reference", q)?;
            let tv = tv_distance(p, q).expect("lengths checked at parse time");
            let forward = kl_divergence(p, q).ok();
            let reverse = kl_divergence(q, p).ok();
            let two_kl = [forward, reverse]
                .into_iter()
                .flatten()
                .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))));
            let holds = two_kl.is_none_or(|kl| tv * tv <= 2.0 * kl + 1e-12);
            Some(Comparison {
                entropy_reference: round_sig(entropy(q, base).expect("base checked"), digits),
                tv_distance: round_sig(tv, digits),
                kl_forward: forward.map(|x| round_sig(x, digits)),
                kl_reverse: reverse.map(|x| round_sig(x, digits)),
                pinsker: Pinsker {
                    tv_squared: round_sig(tv * tv, digits),
                    two_kl: two_kl.map(|x| round_sig(2.0 * x, digits)),
                    holds,
                },
            })
        }
    };

    Ok(MetricsReport {
        base,
        entropy: round_sig(h, digits),
        comparison,
    })
}

pub fn run(cfg: &JobConfig) -> Result<(), CliError> {
    let digits = cfg.checked_precision()?;
    let input = input::load(&cfg.input, cfg.format)?;
    print_json(&build(&input, cfg.base, digits)?)?;
    Ok(())
}
