//! Reading JSON inputs and enforcing the instance size cap.

use std::path::Path;

use serde::de::DeserializeOwned;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Environment variable holding the largest accepted number of simplices.
pub const SIZE_CAP_VAR: &str = "CIRCUITSMITH_MAX_SIMPLICES";
pub const DEFAULT_SIZE_CAP: usize = 100_000;

/// The cap from the environment, or the default when unset or unparsable.
pub fn size_cap() -> usize {
    std::env::var(SIZE_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

pub fn check_size(k: &SimplicialComplex) -> Result<()> {
    let cap = size_cap();
    if k.len() > cap {
        return Err(Error::TooLarge { actual: k.len(), cap });
    }
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))
}
