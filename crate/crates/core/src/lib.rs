//! Minimax-robust lossless prefix codes for sources known only up to a
//! total-variation ball around a nominal distribution.
//!
//! The worst case over the ball of the average codeword length is
//! `(R/2)(l_max - l_min) + Σ l(x) μ(x)`. Its minimizer over real-valued
//! lengths satisfying the Kraft inequality is `l(x) = -log_D ν(x)` for a
//! weight vector `ν` obtained from `μ` by pooling the largest probabilities
//! into a group that loses `R/2` of mass and the smallest into a group that
//! gains it. Two independent solvers compute `ν`:
//!
//! * [`waterfill`]: two water levels found by a prefix scan,
//! * [`merge`]: the merge-event recursion, `O(|Σ|)` per query after sorting.
//!
//! [`oracle`] holds brute-force checks used by the tests and the CLI.
//!
//! ```
//! use tvcode_core::{design, BallSpec, NominalDistribution};
//!
//! let mu = NominalDistribution::new(&[8.0 / 15.0, 4.0 / 15.0, 2.0 / 15.0, 1.0 / 15.0]).unwrap();
//! let spec = BallSpec::new(2.0 / 15.0, 2).unwrap();
//! let code = design(&mu, &spec).unwrap();
//! assert!((code.weights.weights()[0] - 7.0 / 15.0).abs() < 1e-12);
//! assert_eq!(code.integer_lengths.lengths(), &[2.0, 2.0, 3.0, 3.0]);
//! ```

pub mod coding;
pub mod error;
pub mod merge;
pub mod metrics;
pub mod oracle;
pub mod types;
pub mod waterfill;

pub use coding::{average_length, design, integerize, optimal_lengths, worst_case_payoff, CodeDesign};
pub use error::{Error, Result};
pub use merge::{build_schedule, compute_weights, BreakpointSchedule, MergeEvent, Side};
pub use metrics::{entropy, kl_divergence, kraft_sum, tv_distance};
pub use types::{BallSpec, CodeLengthVector, Group, NominalDistribution, WeightVector};
pub use waterfill::{waterfill_weights, WaterLevels};
