//! Resource caps for the unbounded searches, overridable through the
//! `COXMUT_CAPS` environment variable.

use std::env;
use std::str::FromStr;

use thiserror::Error;

pub const CAPS_ENV: &str = "COXMUT_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest mutation class enumerated before giving up.
    pub max_size: usize,
    /// Edge labels above this certify mutation-infiniteness in rank ≥ 3.
    pub max_weight: u64,
    /// Coset-table size limit for Todd–Coxeter.
    pub cosets: usize,
    /// Element limit for closure enumeration of affine groups.
    pub closure: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_size: 100_000, max_weight: 4, cosets: 1_000_000, closure: 100_000 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CapsError {
    #[error("expected key=value, found {0:?}")]
    Syntax(String),
    #[error("unknown cap {0:?} (known: max_size, max_weight, cosets, closure)")]
    UnknownKey(String),
    #[error("cap {key} needs a non-negative integer, found {value:?}")]
    BadValue { key: String, value: String },
}

impl FromStr for Caps {
    type Err = CapsError;

    /// Parses a list such as `max_size=5000, cosets=200000`; unspecified caps
    /// keep their defaults. Items may be separated by commas, semicolons or
    /// whitespace.
    fn from_str(s: &str) -> Result<Self, CapsError> {
        let mut caps = Caps::default();
        for item in s.split(|c: char| c == ',' || c == ';' || c.is_whitespace()) {
            if item.is_empty() {
                continue;
            }
            let (key, value) = item.split_once('=').ok_or_else(|| CapsError::Syntax(item.into()))?;
            let bad = || CapsError::BadValue { key: key.into(), value: value.into() };
            let v: u64 = value.parse().map_err(|_| bad())?;
            match key {
                "max_size" => caps.max_size = v as usize,
                "max_weight" => caps.max_weight = v,
                "cosets" | "todd_coxeter" => caps.cosets = v as usize,
                "closure" => caps.closure = v as usize,
                _ => return Err(CapsError::UnknownKey(key.into())),
            }
        }
        Ok(caps)
    }
}

impl Caps {
    /// Defaults overridden by `COXMUT_CAPS` when it is set.
    pub fn from_env() -> Result<Self, CapsError> {
        match env::var(CAPS_ENV) {
            Ok(text) => text.parse(),
            Err(_) => Ok(Caps::default()),
        }
    }
}
