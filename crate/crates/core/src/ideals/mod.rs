//! Rings between R and k[[t]], and their fractional ideals.

mod condition;
mod elem;
mod lattice;
mod profile;
mod ring;

pub use condition::{check_condition_c, ConditionReport};
pub use elem::Elem;
pub use lattice::FractionalIdeal;
pub use profile::{canonical_ideal, ring_profile, RingProfile};
pub use ring::{default_trunc, LocalRing, MAX_TRUNC};

pub(crate) use ring::complement_gens;
