use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input data or flags; names the offending field.
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },

    #[error("{0} invariant violation(s) found")]
    Violations(usize),
}

impl CliError {
    pub fn invalid(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Invalid {
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } => 2,
            CliError::Violations(_) => 1,
        }
    }
}

/// Attributes a core validation error to the input field it came from.
pub fn from_core(field: &str, err: tvcode_core::Error) -> CliError {
    use tvcode_core::Error as E;
    let field = match &err {
        E::NonPositiveProbability { index, .. } | E::NonFinite { index, .. } => format!("{field}[{index}]"),
        E::InvalidRadius(_) => "--radius".to_string(),
        E::InvalidAlpha(_) => "--alpha".to_string(),
        E::InvalidBase(_) => "--base".to_string(),
        _ => field.to_string(),
    };
    CliError::invalid(field, err)
}
