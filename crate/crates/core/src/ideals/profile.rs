use serde::{Deserialize, Serialize};

use super::elem::Elem;
use super::lattice::FractionalIdeal;
use super::ring::LocalRing;
use crate::error::{Error, Result};

/// Multiplicity, embedding dimension and Cohen-Macaulay type of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingProfile {
    pub e: u64,
    pub v: usize,
    pub r: usize,
    pub gorenstein: bool,
    pub min_mult: bool,
    pub conductor: u64,
    pub value_semigroup: Vec<u64>,
}

/// The canonical ideal R ⊆ K ⊆ k[[t]] of a monomial ring, spanned by t^(F-g) over the gaps g.
pub fn canonical_ideal(ring: &LocalRing) -> Result<FractionalIdeal> {
    if !ring.is_monomial() {
        return Err(Error::Domain(
            "canonical ideal is only available for semigroup rings".into(),
        ));
    }
    let h = ring.value_semigroup();
    let mut gens: Vec<Elem> = h
        .canonical_exponents()
        .into_iter()
        .map(|x| Elem::monomial(x as i64, 1))
        .collect();
    gens.push(Elem::monomial(0, 1));
    ring.ideal(&gens)
}

/// Type as dim((R:m)/R).
fn type_by_colon(ring: &LocalRing) -> Result<usize> {
    let rm = ring.colon(ring.carrier(), ring.maximal_ideal())?;
    ring.carrier().colength_in(&rm)
}

pub fn ring_profile(ring: &LocalRing) -> Result<RingProfile> {
    let e = ring.multiplicity();
    let v = ring.embedding_dimension();
    let by_colon = type_by_colon(ring)?;
    let r = if ring.is_monomial() {
        let k = canonical_ideal(ring)?;
        let by_k = ring.mu(&k)?;
        if by_k != by_colon {
            return Err(Error::InvariantViolation(format!(
                "type mismatch: mu(K) = {by_k} but dim((R:m)/R) = {by_colon}"
            )));
        }
        by_k
    } else {
        by_colon
    };
    let min_mult = v as u64 == e;
    if min_mult && e > 1 && r as u64 != e - 1 {
        return Err(Error::InvariantViolation(format!(
            "minimal multiplicity ring with e = {e} has type {r}"
        )));
    }
    let c = ring.conductor_order();
    Ok(RingProfile {
        e,
        v,
        r,
        gorenstein: r == 1,
        min_mult,
        conductor: c,
        value_semigroup: ring.value_semigroup().elements_below(c + 1).collect(),
    })
}
