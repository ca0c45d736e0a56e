use std::fmt;

use crate::error::{Error, Result};
use crate::ideals::{Elem, FractionalIdeal, LocalRing};

/// Why an m-primary ideal is not Ulrich.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    /// I equals its reduction (a).
    Principal,
    /// I² ≠ aI.
    NotStable,
    /// I/(a) is not free over R/I.
    NotFree,
}

impl Failure {
    pub fn reason(self) -> &'static str {
        match self {
            Failure::Principal => "I = (a)",
            Failure::NotStable => "I^2 != aI",
            Failure::NotFree => "I/(a) is not free over R/I",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.reason())
    }
}

/// A re-checkable witness that `ideal` is an Ulrich ideal.
///
/// Any element of least order in I works as the reduction: if I = aA with
/// A = I:I, a least-order b ∈ I is a times a unit of the local ring A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UlrichCertificate {
    pub ideal: FractionalIdeal,
    pub reduction: Elem,
    /// t with I/(a) ≅ (R/I)^t.
    pub rank: usize,
    pub mu: usize,
    pub colength: usize,
    pub not_principal: bool,
    pub stable: bool,
    pub free: bool,
}

impl UlrichCertificate {
    /// Replays the three checks against `ring`.
    pub fn recheck(&self, ring: &LocalRing) -> Result<bool> {
        let fresh = is_ulrich(ring, &self.ideal)?;
        Ok(
            matches!(fresh, Ok(c) if c.rank == self.rank && c.reduction.order() == self.reduction.order()),
        )
    }
}

pub type Verdict = std::result::Result<UlrichCertificate, Failure>;

/// Tests `I` against the definition, after checking it is an m-primary ideal.
pub fn is_ulrich(ring: &LocalRing, i: &FractionalIdeal) -> Result<Verdict> {
    if !ring.is_proper_ideal(i) {
        return Err(Error::Domain(format!(
            "{i} is not contained in the maximal ideal"
        )));
    }
    if !ring.is_module(i)? {
        return Err(Error::Domain(format!("{i} is not an R-module")));
    }
    certify(ring, i)
}

/// Same as [`is_ulrich`] for inputs already known to be proper ideals.
pub(crate) fn certify(ring: &LocalRing, i: &FractionalIdeal) -> Result<Verdict> {
    let a = i.first_element();
    let q = ring.scaled(ring.carrier(), &a)?;
    if &q == i {
        return Ok(Err(Failure::Principal));
    }
    let ai = ring.scaled(i, &a)?;
    let square = ring.product(i, i)?;
    if square != ai {
        return Ok(Err(Failure::NotStable));
    }
    let mu = ring.mu(i)?;
    let colength = ring.colength(i)?;
    // I·(I/(a)) = 0 because I² = aI; freeness by lengths over the artinian ring R/I
    let quot = q.colength_in(i)?;
    let rank = mu - 1;
    if quot != rank * colength {
        return Ok(Err(Failure::NotFree));
    }
    let cond = crate::ideals::check_condition_c(ring, i)?;
    if !cond.holds() || cond.rank != rank {
        return Err(Error::InvariantViolation(format!(
            "Ulrich ideal {i} fails Condition (C): {cond:?}"
        )));
    }
    Ok(Ok(UlrichCertificate {
        ideal: i.clone(),
        reduction: a,
        rank,
        mu,
        colength,
        not_principal: true,
        stable: true,
        free: true,
    }))
}

/// Necessary condition read off value sets: v(I) + v(I) ⊆ ord(I) + v(I).
pub(crate) fn values_admit_stability(i: &FractionalIdeal) -> bool {
    let o = i.order();
    let c = i.conductor();
    let vals = i.values_below_conductor();
    for (k, &x) in vals.iter().enumerate() {
        for &y in &vals[k..] {
            let s = x + y - o;
            if s < c && !i.has_value(s) {
                return false;
            }
        }
    }
    true
}
