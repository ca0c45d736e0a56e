use serde::Serialize;

use super::certificate::UlrichCertificate;
use super::enumerate::{enumerate_fallback, SearchOptions};
use super::minmult::enumerate_minmult;
use crate::error::Result;
use crate::ggl::{build_ggl_profile, enumerate_ggl};
use crate::ideals::LocalRing;

/// Which search produced an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    MinimalMultiplicity,
    Ggl,
    Fallback,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub strategy: Strategy,
    pub certificates: Vec<UlrichCertificate>,
    pub nodes: u64,
}

/// Picks a strategy for `ring`.
pub fn choose_strategy(ring: &LocalRing) -> Result<Strategy> {
    let e = ring.multiplicity();
    if e > 1 && ring.embedding_dimension() as u64 == e {
        return Ok(Strategy::MinimalMultiplicity);
    }
    if ring.is_monomial() && build_ggl_profile(ring)?.is_ggl {
        return Ok(Strategy::Ggl);
    }
    Ok(Strategy::Fallback)
}

/// The complete set of Ulrich ideals of `ring`, in report order.
pub fn enumerate_ulrich(ring: &LocalRing, opts: &SearchOptions) -> Result<Enumeration> {
    enumerate_with(ring, choose_strategy(ring)?, opts)
}

/// Runs a specific strategy; the fast paths reject rings they do not apply to.
pub fn enumerate_with(
    ring: &LocalRing,
    strategy: Strategy,
    opts: &SearchOptions,
) -> Result<Enumeration> {
    let walk = match strategy {
        Strategy::MinimalMultiplicity => enumerate_minmult(ring)?,
        Strategy::Ggl => {
            let profile = build_ggl_profile(ring)?;
            if !profile.is_ggl {
                return Err(crate::Error::Domain(format!(
                    "{} is not a GGL ring",
                    ring.describe()
                )));
            }
            enumerate_ggl(ring, &profile, opts)?
        }
        Strategy::Fallback => enumerate_fallback(ring, opts)?,
    };
    Ok(Enumeration {
        strategy,
        certificates: walk.certificates,
        nodes: walk.nodes,
    })
}
