use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A polynomial ring `Q[x_1, ..., x_d]` with standard grading, identified by
/// its ordered variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

/// Shared handle used by ideals and polynomials.
pub type RingRef = Arc<Ring>;

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::EmptyRing);
        }
        let mut vars: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::parse(0, format!("invalid variable name `{name}`")));
            }
            if vars.iter().any(|v| v == name) {
                return Err(Error::DuplicateVariable(name.to_string()));
            }
            vars.push(name.to_string());
        }
        Ok(Ring { vars })
    }

    /// Ring on `x1, ..., xn`-style names with the given prefix.
    pub fn indexed(prefix: &str, n: usize) -> Ring {
        Ring {
            vars: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn shared(self) -> RingRef {
        Arc::new(self)
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {}", self.vars.join(", "))
    }
}
