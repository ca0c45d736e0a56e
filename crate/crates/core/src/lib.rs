//! Ulrich ideals of one-dimensional local rings k ⊆ R ⊆ k[[t]] over small prime fields.

pub mod cli;
pub mod coeffcore;
pub mod error;
pub mod ggl;
pub mod ideals;
pub mod semigroup;
pub mod ulrich;

pub use error::{Error, Result};
