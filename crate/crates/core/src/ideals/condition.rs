use serde::{Deserialize, Serialize};

use super::lattice::FractionalIdeal;
use super::ring::LocalRing;
use crate::error::{Error, Result};

/// Outcome of testing `A = I:I` against `A = R:I` and `A/R ≅ (R/I)^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub endo_equals_dual: bool,
    pub quotient_free: bool,
    /// μ_R(A/R); the rank when the quotient is free.
    pub rank: usize,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.endo_equals_dual && self.quotient_free && self.rank > 0
    }
}

pub fn check_condition_c(ring: &LocalRing, i: &FractionalIdeal) -> Result<ConditionReport> {
    if !ring.is_proper_ideal(i) {
        return Err(Error::Domain(format!("{i} is not an m-primary ideal of R")));
    }
    let a = ring.colon(i, i)?;
    let dual = ring.colon(ring.carrier(), i)?;
    let endo_equals_dual = a == dual;
    // A/R is killed by I since IA ⊆ I ⊆ R; freeness by lengths
    let len_quot = ring.carrier().colength_in(&a)?;
    let rank = ring.mu(&a)?.saturating_sub(1);
    let base = ring.colength(i)?;
    let quotient_free = rank * base == len_quot;
    Ok(ConditionReport {
        endo_equals_dual,
        quotient_free,
        rank,
    })
}
