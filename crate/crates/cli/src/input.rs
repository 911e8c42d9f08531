//! Input parsing.
//!
//! JSON: `{"probabilities": [...], "symbols": [...], "reference": [...]}` with
//! `symbols` and `reference` optional.
//!
//! CSV: one symbol per line, either `p`, `p,q`, `label,p` or `label,p,q`,
//! where `q` is the optional reference distribution. A first line without any
//! numeric field is treated as a header. Blank lines and lines starting with
//! `#` are skipped.

use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::config::InputFormat;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    pub probabilities: Vec<f64>,
    #[serde(default)]
    pub symbols: Option<Vec<String>>,
    #[serde(default)]
    pub reference: Option<Vec<f64>>,
}

impl Input {
    fn check_shape(self) -> Result<Self, CliError> {
        let n = self.probabilities.len();
        if let Some(symbols) = &self.symbols {
            if symbols.len() != n {
                return Err(CliError::invalid(
                    "symbols",
                    format!("{} labels for {n} probabilities", symbols.len()),
                ));
            }
        }
        if let Some(reference) = &self.reference {
            if reference.len() != n {
                return Err(CliError::invalid(
                    "reference",
                    format!("{} entries for {n} probabilities", reference.len()),
                ));
            }
        }
        Ok(self)
    }
}

/// Reads and parses `path` (`-` for standard input).
pub fn load(path: &str, format: Option<InputFormat>) -> Result<Input, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::invalid("--input", format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::invalid("--input", format!("cannot read {path}: {e}")))?
    };
    let format = format.unwrap_or_else(|| detect(path, &text));
    parse(&text, format)
}

fn detect(path: &str, text: &str) -> InputFormat {
    match Path::new(path).extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
        Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::Csv,
        _ if text.trim_start().starts_with('{') => InputFormat::Json,
        _ => InputFormat::Csv,
    }
}

pub fn parse(text: &str, format: InputFormat) -> Result<Input, CliError> {
    match format {
        InputFormat::Json => parse_json(text),
        InputFormat::Csv => parse_csv(text),
    }
}

fn parse_json(text: &str) -> Result<Input, CliError> {
    let input: Input =
        serde_json::from_str(text).map_err(|e| CliError::invalid("input", format!("invalid JSON: {e}")))?;
    input.check_shape()
}

fn parse_csv(text: &str) -> Result<Input, CliError> {
    let mut probabilities = Vec::new();
    let mut reference = Vec::new();
    let mut symbols = Vec::new();
    let mut labelled: Option<bool> = None;
    let mut columns: Option<usize> = None;
    let mut seen_data = false;

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let numeric: Vec<Option<f64>> = fields.iter().map(|f| f.parse::<f64>().ok()).collect();
        if !seen_data && numeric.iter().all(Option::is_none) {
            // header
            seen_data = true;
            continue;
        }
        seen_data = true;
        let field = format!("line {}", lineno + 1);

        let has_label = numeric[0].is_none();
        if *labelled.get_or_insert(has_label) != has_label {
            return Err(CliError::invalid(field, "label column present on some lines only"));
        }
        let values = &numeric[usize::from(has_label)..];
        if values.is_empty() || values.len() > 2 {
            return Err(CliError::invalid(
                field,
                format!("expected 1 or 2 numeric fields, got {}", values.len()),
            ));
        }
        if *columns.get_or_insert(values.len()) != values.len() {
            return Err(CliError::invalid(field, "inconsistent number of columns"));
        }
        let mut nums = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            let raw = fields[i + usize::from(has_label)];
            nums.push(v.ok_or_else(|| CliError::invalid(field.clone(), format!("not a number: {raw:?}")))?);
        }
        if has_label {
            symbols.push(fields[0].to_string());
        }
        probabilities.push(nums[0]);
        if let Some(&q) = nums.get(1) {
            reference.push(q);
        }
    }

    Input {
        probabilities,
        symbols: labelled.unwrap_or(false).then_some(symbols),
        reference: (columns == Some(2)).then_some(reference),
    }
    .check_shape()
}
