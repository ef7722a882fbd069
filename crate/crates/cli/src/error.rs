use std::fmt;

use heun::HeunError;

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn internal(e: impl fmt::Display) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

impl From<HeunError> for CliError {
    fn from(e: HeunError) -> Self {
        let code = match e {
            HeunError::Domain(_)
            | HeunError::InvalidParams(_)
            | HeunError::Branch(_)
            | HeunError::Pole(_)
            | HeunError::Denominator { .. }
            | HeunError::Degenerate(_)
            | HeunError::NotDegenerate => EXIT_USAGE,
            HeunError::NotQes(_) | HeunError::Condition(_) => EXIT_PRECONDITION,
            _ => EXIT_INTERNAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<String> for CliError {
    fn from(message: String) -> Self {
        CliError::usage(message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
