//! Exact arithmetic in k[t]/(t^N) over a prime field and echelon-form subspaces.

mod field;
pub(crate) mod linalg;
mod series;
mod subspace;

pub use field::{PrimeField, MAX_PRIME};
pub use series::{series_mul, TruncatedSeries};
pub use subspace::{echelonize, module_closure, Subspace};

pub(crate) use series::{convolve_into, unit_inverse_coeffs, write_terms};
