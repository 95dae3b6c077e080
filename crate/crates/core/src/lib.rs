//! PL circuits, singular sets, integer homology and the limit-set calculus.

pub mod circuits;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod limit;
pub mod psi;
pub mod recognition;

pub use error::{Error, Result};
