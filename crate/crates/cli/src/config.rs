use clap::{Args, ValueEnum};
use tvcode_core::BallSpec;

use crate::error::{from_core, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct JobConfig {
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,

    /// Input format. Defaults to the file extension, then to sniffing the content.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,

    /// Total-variation radius R in [0, 2].
    #[arg(long, conflicts_with = "alpha", allow_negative_numbers = true)]
    pub radius: Option<f64>,

    /// Half-radius alpha = R/2 in [0, 1].
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Code alphabet size D.
    #[arg(long, default_value_t = 2)]
    pub base: u32,

    /// Interior samples between 0 and alpha_max (trajectory).
    #[arg(long, default_value_t = 20)]
    pub steps: usize,

    /// Random instances checked in addition to the input (verify).
    #[arg(long, default_value_t = 100)]
    pub trials: usize,

    /// Seed for the random instances (verify).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Significant digits in printed numbers, 1 to 17.
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
}

impl JobConfig {
    /// The ball described by `--radius`/`--alpha` (zero radius when absent).
    pub fn ball(&self) -> Result<BallSpec, CliError> {
        let spec = match (self.radius, self.alpha) {
            (Some(_), Some(_)) => return Err(CliError::invalid("--alpha", "conflicts with --radius")),
            (Some(r), None) => BallSpec::new(r, self.base),
            (None, Some(a)) => BallSpec::from_alpha(a, self.base),
            (None, None) => BallSpec::new(0.0, self.base),
        };
        spec.map_err(|e| from_core("--radius", e))
    }

    pub fn checked_precision(&self) -> Result<usize, CliError> {
        if (1..=17).contains(&self.precision) {
            Ok(self.precision)
        } else {
            Err(CliError::invalid(
                "--precision",
                format!("{} outside [1, 17]", self.precision),
            ))
        }
    }
}
