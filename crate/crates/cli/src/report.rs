//! Output helpers: significant-digit rounding and JSON emission.

use std::io::{self, Write};

use serde::Serialize;

use crate::error::CliError;

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("formatted float parses")
}

pub fn round_all(values: &[f64], digits: usize) -> Vec<f64> {
    values.iter().map(|&x| round_sig(x, digits)).collect()
}

/// Shortest decimal text of `x` after rounding; never uses exponent notation
/// for ordinary magnitudes, always uses `.` as decimal point.
pub fn format_num(x: f64, digits: usize) -> String {
    format!("{}", round_sig(x, digits))
}

/// Maps a write failure to a CLI error. A closed pipe (`| head`) is not one.
pub fn finish_output(result: io::Result<()>) -> Result<(), CliError> {
    match result {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            Err(CliError::invalid("output", format!("cannot write: {e}")))
        }
        _ => Ok(()),
    }
}

pub fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    finish_output(
        serde_json::to_writer_pretty(&mut out, value)
            .map_err(io::Error::from)
            .and_then(|()| writeln!(out)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 15.0, 12), 0.0666666666667);
        assert_eq!(round_sig(7.0 / 15.0, 3), 0.467);
        assert_eq!(round_sig(0.0, 5), 0.0);
        assert_eq!(round_sig(123456.0, 2), 120000.0);
        assert_eq!(format_num(0.3, 12), "0.3");
        assert_eq!(format_num(4.0 / 15.0, 12), "0.266666666667");
    }
}
