use super::certificate::{certify, UlrichCertificate};
use super::enumerate::Walk;
use crate::error::{Error, Result};
use crate::ideals::{complement_gens, Elem, FractionalIdeal, LocalRing};

fn require_minimal_multiplicity(ring: &LocalRing) -> Result<()> {
    let (e, v) = (ring.multiplicity(), ring.embedding_dimension());
    if e <= 1 || v as u64 != e {
        return Err(Error::Domain(format!(
            "{} does not have minimal multiplicity (e = {e}, v = {v})",
            ring.describe()
        )));
    }
    Ok(())
}

/// The chain m = I_1 ⊋ I_2 ⊋ ..., with I_{i+1} = I_i·𝔫_i for 𝔫_i the maximal
/// ideal of I_i:I_i, cut at the first link that is not Ulrich.
pub fn enumerate_minmult(ring: &LocalRing) -> Result<Walk> {
    require_minimal_multiplicity(ring)?;
    let mut certs = Vec::new();
    let mut current = ring.maximal_ideal().clone();
    let mut nodes = 0;
    loop {
        nodes += 1;
        let Ok(cert) = certify(ring, &current)? else {
            break;
        };
        certs.push(cert);
        let endo = ring.endo_ring(&current)?;
        current = current.times_elems(endo.max_ideal_generators(), ring.trunc())?;
    }
    Ok(Walk {
        certificates: certs,
        nodes,
    })
}

/// Checked structure of 𝒳_R for a ring of minimal multiplicity.
#[derive(Clone, Debug)]
pub struct MinMultReport {
    /// I_1 = m ⊋ I_2 ⊋ ... ⊋ I_ℓ.
    pub chain: Vec<UlrichCertificate>,
    /// Reduction of m; α^i is a reduction of I_i.
    pub alpha: Elem,
    /// x_2, ..., x_v with I_i = (α^i, x_2, ..., x_v).
    pub tail_generators: Vec<Elem>,
    /// Endomorphism rings I_i:I_i.
    pub blowups: Vec<LocalRing>,
}

fn violation(what: String) -> Error {
    Error::InvariantViolation(what)
}

pub fn minmult_report(ring: &LocalRing) -> Result<MinMultReport> {
    require_minimal_multiplicity(ring)?;
    let chain = enumerate_minmult(ring)?.certificates;
    let v = ring.embedding_dimension();
    let m = ring.maximal_ideal();
    let f = ring.field();
    let alpha = m.first_element();
    if ring.product(m, m)? != ring.scaled(m, &alpha)? {
        return Err(violation(format!("m^2 != αm for α = {alpha}")));
    }
    let Some(last) = chain.last() else {
        return Err(violation("m itself is not Ulrich".into()));
    };
    let ell = chain.len();
    if last.colength != ell {
        return Err(violation(format!(
            "#X = {ell} but ℓ(R/I_min) = {}",
            last.colength
        )));
    }

    let mut power = ring.one();
    let mut powers = Vec::with_capacity(ell);
    for _ in 0..ell {
        power = power.mul(&alpha, f);
        powers.push(power.clone());
    }
    let i_min = &last.ideal;
    let floor = ring
        .scaled(ring.carrier(), &powers[ell - 1])?
        .sum(&ring.max_times(i_min)?);
    let tail_generators = complement_gens(i_min, &floor);
    if tail_generators.len() + 1 != v {
        return Err(violation(format!(
            "I_min needs {} generators besides α^ℓ, expected {}",
            tail_generators.len(),
            v - 1
        )));
    }

    let mut blowups = Vec::with_capacity(ell);
    let mut prev_max: FractionalIdeal = m.clone();
    for (k, cert) in chain.iter().enumerate() {
        let i = &cert.ideal;
        let ai = &powers[k];
        if ring.product(i, i)? != ring.scaled(i, ai)? {
            return Err(violation(format!("α^{} is not a reduction of {i}", k + 1)));
        }
        let mut gens = vec![ai.clone()];
        gens.extend(tail_generators.iter().cloned());
        if &ring.ideal(&gens)? != i {
            return Err(violation(format!("{i} != (α^{}, x_2, ..., x_v)", k + 1)));
        }
        if cert.mu != v || ring.socle_dim(i)? != 1 {
            return Err(violation(format!(
                "{i}: μ = {} or R/I not Gorenstein",
                cert.mu
            )));
        }
        let endo = ring.endo_ring(i)?;
        let stable = LocalRing::from_carrier(ring.colon(&prev_max, &prev_max)?, ring.trunc())?;
        if stable != endo {
            return Err(violation(format!(
                "I_{}:I_{} differs from 𝔫:𝔫 one step down",
                k + 1,
                k + 1
            )));
        }
        if k + 1 < ell
            && (endo.multiplicity() != ring.multiplicity()
                || endo.embedding_dimension() as u64 != endo.multiplicity())
        {
            return Err(violation(format!(
                "blow-up at {i} lost minimal multiplicity"
            )));
        }
        if k + 1 < ell {
            let next = &chain[k + 1].ideal;
            if next.colength_in(i)? != 1 {
                return Err(violation(format!("ℓ({i}/{next}) != 1")));
            }
            if &i.times_elems(endo.max_ideal_generators(), ring.trunc())? != next {
                return Err(violation(format!("{next} != {i}·𝔫")));
            }
        }
        prev_max = endo.maximal_ideal().clone();
        blowups.push(endo);
    }
    for (k, a) in chain.iter().enumerate() {
        for b in &chain[k + 1..] {
            if !b.ideal.is_subset_of(&a.ideal) {
                return Err(violation("Ulrich ideals are not totally ordered".into()));
            }
        }
    }
    Ok(MinMultReport {
        chain,
        alpha,
        tail_generators,
        blowups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffcore::PrimeField;
    use crate::ulrich::{enumerate_fallback, SearchOptions};

    fn ring(p: u32, gens: &[u64]) -> LocalRing {
        LocalRing::monomial(PrimeField::new(p).unwrap(), gens, None).unwrap()
    }

    #[test]
    fn chains_match_fallback() {
        for gens in [
            &[3, 5, 7][..],
            &[3, 7, 8],
            &[4, 5, 6, 7],
            &[4, 9, 10, 11],
            &[3, 4, 5],
        ] {
            let r = ring(2, gens);
            let rep = minmult_report(&r).unwrap();
            let full = enumerate_fallback(&r, &SearchOptions::default()).unwrap();
            let mut a: Vec<_> = rep.chain.iter().map(|c| c.ideal.clone()).collect();
            let mut b: Vec<_> = full.certificates.iter().map(|c| c.ideal.clone()).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{gens:?}");
        }
    }

    #[test]
    fn three_seven_eight_has_two_links() {
        // m ⊋ (t^6, t^7, t^8)
        let rep = minmult_report(&ring(3, &[3, 7, 8])).unwrap();
        assert_eq!(rep.chain.len(), 2);
        assert_eq!(rep.chain[1].colength, 2);
    }

    #[test]
    fn non_minimal_multiplicity_rejected() {
        assert!(matches!(
            minmult_report(&ring(2, &[3, 7])),
            Err(Error::Domain(_))
        ));
    }
}
