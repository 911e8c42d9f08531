//! Piecewise-linear weight trajectories as CSV: `alpha,symbol_index,weight,breakpoint`.

use std::io::Write;

use tvcode_core::merge::weights_from_schedule;
use tvcode_core::{build_schedule, NominalDistribution};

use crate::config::JobConfig;
use crate::design::nominal;
use crate::error::CliError;
use crate::input;
use crate::report::{finish_output, format_num};

/// Sample points: every breakpoint plus `steps` evenly spaced interior values
/// of `(0, alpha_max)`, ascending and de-duplicated. Flag is true for breakpoints.
pub fn sample_points(breakpoints: &[f64], alpha_max: f64, steps: usize) -> Vec<(f64, bool)> {
    let mut points: Vec<(f64, bool)> = breakpoints.iter().map(|&a| (a, true)).collect();
    if alpha_max > 0.0 {
        for i in 1..=steps {
            points.push((alpha_max * i as f64 / (steps + 1) as f64, false));
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    points.dedup_by(|later, earlier| later.0 == earlier.0);
    points
}

pub fn write_csv(out: &mut impl Write, mu: &NominalDistribution, steps: usize, digits: usize) -> std::io::Result<()> {
    let schedule = build_schedule(mu);
    writeln!(out, "alpha,symbol_index,weight,breakpoint")?;
    for (alpha, is_breakpoint) in sample_points(&schedule.breakpoints(), schedule.alpha_max(), steps) {
        let weights = weights_from_schedule(mu, &schedule, alpha);
        let caller = mu.to_caller_order(weights.weights());
        for (index, w) in caller.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{}",
                format_num(alpha, digits),
                index,
                format_num(*w, digits),
                u8::from(is_breakpoint)
            )?;
        }
    }
    Ok(())
}

pub fn run(cfg: &JobConfig) -> Result<(), CliError> {
    let digits = cfg.checked_precision()?;
    let input = input::load(&cfg.input, cfg.format)?;
    let mu = nominal(&input)?;
    let stdout = std::io::stdout();
    finish_output(write_csv(&mut stdout.lock(), &mu, cfg.steps, digits))
}
