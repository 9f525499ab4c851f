use std::fmt::Display;
use std::path::PathBuf;

use thiserror::Error;

fn at_line(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown key `{key}`{}", at_line(.line))]
    UnknownKey { key: String, line: Option<usize> },

    #[error("malformed entry `{text}`{}: expected key = value", at_line(&Some(*.line)))]
    Malformed { text: String, line: usize },

    #[error("invalid value `{value}` for `{key}`{}: {reason}", at_line(.line))]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
        line: Option<usize>,
    },

    #[error("cannot read config file {}: {source}", .path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ConfigError {
    pub fn invalid(key: &str, value: impl Display, reason: impl Into<String>) -> Self {
        Self::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
            reason: reason.into(),
            line: None,
        }
    }

    /// Attaches a source line to errors that do not carry one yet.
    pub fn on_line(self, at: usize) -> Self {
        match self {
            Self::UnknownKey { key, line: None } => Self::UnknownKey { key, line: Some(at) },
            Self::InvalidValue {
                key,
                value,
                reason,
                line: None,
            } => Self::InvalidValue {
                key,
                value,
                reason,
                line: Some(at),
            },
            other => other,
        }
    }
}
