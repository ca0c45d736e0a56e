use super::chain::adjacent_structure;
use super::dispatch::enumerate_ulrich;
use super::enumerate::SearchOptions;
use crate::error::{Error, Result};
use crate::ideals::{ring_profile, Elem, FractionalIdeal, LocalRing, RingProfile};

/// The correspondence 𝔞 ↦ 𝔞/b between {𝔞 ∈ 𝒳_R : I ⊆ 𝔞 ⊊ J} and {𝔟 ∈ 𝒳_B : I/b ⊆ 𝔟}.
#[derive(Clone, Debug)]
pub struct Transport {
    pub b: Elem,
    /// B = J:J.
    pub blowup: LocalRing,
    /// I/b.
    pub image: FractionalIdeal,
    /// (𝔞, 𝔞/b), ordered as 𝒳_R is reported.
    pub pairs: Vec<(FractionalIdeal, FractionalIdeal)>,
}

fn violation(what: String) -> Error {
    Error::InvariantViolation(what)
}

pub fn transport(
    ring: &LocalRing,
    i: &FractionalIdeal,
    j: &FractionalIdeal,
    opts: &SearchOptions,
) -> Result<Transport> {
    let adj = adjacent_structure(ring, i, j)?;
    let b = adj.b;
    let blowup = ring.endo_ring(j)?;
    let image = ring.divided(i, &b)?;
    if ring.carrier().sum(&image) != *blowup.carrier() {
        return Err(violation(format!("J:J != R + I/b for J = {j}")));
    }
    if ring.colon(i, j)? != image {
        return Err(violation("I/b != I:J".into()));
    }
    if ring.maximal_ideal().sum(&image) != *blowup.maximal_ideal() {
        return Err(violation("maximal ideal of J:J is not m + I/b".into()));
    }
    let image_cert = super::is_ulrich(&blowup, &image)?
        .map_err(|why| violation(format!("I/b is not Ulrich over J:J: {why}")))?;
    let mu_i = ring.mu(i)?;
    if image_cert.mu != mu_i {
        return Err(violation(format!(
            "μ_B(I/b) = {} but μ_R(I) = {mu_i}",
            image_cert.mu
        )));
    }

    let left: Vec<FractionalIdeal> = enumerate_ulrich(ring, opts)?
        .certificates
        .into_iter()
        .map(|c| c.ideal)
        .filter(|a| i.is_subset_of(a) && a.is_subset_of(j) && a != j)
        .collect();
    let mut right: Vec<FractionalIdeal> = enumerate_ulrich(&blowup, opts)?
        .certificates
        .into_iter()
        .map(|c| c.ideal)
        .filter(|x| image.is_subset_of(x))
        .collect();
    let mut pairs = Vec::with_capacity(left.len());
    for a in left {
        let q = ring.divided(&a, &b)?;
        pairs.push((a, q));
    }
    let mut mapped: Vec<FractionalIdeal> = pairs.iter().map(|(_, q)| q.clone()).collect();
    mapped.sort();
    mapped.dedup();
    right.sort();
    if mapped.len() != pairs.len() || mapped != right {
        return Err(violation(format!(
            "division by b maps {} ideals onto {} ideals of J:J, expected {}",
            pairs.len(),
            mapped.len(),
            right.len()
        )));
    }
    Ok(Transport {
        b,
        blowup,
        image,
        pairs,
    })
}

/// Profiles of R and of B = J:J.
#[derive(Clone, Debug)]
pub struct BlowupComparison {
    pub ring: RingProfile,
    pub blowup: RingProfile,
    /// An Ulrich ideal strictly inside J, when one exists; e and r agree then.
    pub inner: Option<FractionalIdeal>,
}

pub fn blowup_invariants(
    ring: &LocalRing,
    j: &FractionalIdeal,
    opts: &SearchOptions,
) -> Result<BlowupComparison> {
    super::is_ulrich(ring, j)?.map_err(|why| Error::Domain(format!("{j} is not Ulrich: {why}")))?;
    let blowup = ring.endo_ring(j)?;
    let pr = ring_profile(ring)?;
    let pb = ring_profile(&blowup)?;
    let inner = enumerate_ulrich(ring, opts)?
        .certificates
        .into_iter()
        .map(|c| c.ideal)
        .find(|i| i.is_subset_of(j) && i != j);
    if inner.is_some() && (pr.e != pb.e || pr.r != pb.r || pr.min_mult != pb.min_mult) {
        return Err(violation(format!(
            "blow-up at {j}: (e, r) = ({}, {}) but J:J has ({}, {})",
            pr.e, pr.r, pb.e, pb.r
        )));
    }
    Ok(BlowupComparison {
        ring: pr,
        blowup: pb,
        inner,
    })
}
