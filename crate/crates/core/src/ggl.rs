//! The algebra S = R[K] and its conductor 𝔠 = R:S, which decide the GGL property
//! and locate the Ulrich ideals above 𝔠.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideals::{
    canonical_ideal, check_condition_c, complement_gens, FractionalIdeal, LocalRing,
};
use crate::ulrich::{
    enumerate_two_generated, sort_certificates, SearchOptions, UlrichCertificate, Walk,
};

/// Everything the GGL classification needs about a monomial ring.
#[derive(Clone, Debug)]
pub struct GglProfile {
    pub canonical: FractionalIdeal,
    pub blowup: LocalRing,
    /// 𝔠 = R:S.
    pub conductor: FractionalIdeal,
    pub gorenstein: bool,
    pub is_ggl: bool,
    pub s_gorenstein: bool,
    pub c_ulrich: bool,
    /// Cohen-Macaulay type of R.
    pub r: usize,
    /// Least n with K^n = K^{n+1}.
    pub stable_power: usize,
}

fn violation(what: impl Into<String>) -> Error {
    Error::InvariantViolation(what.into())
}

/// Generator of `l` as a principal module over `over`, if there is one.
pub(crate) fn principal_generator(
    over: &LocalRing,
    l: &FractionalIdeal,
) -> Result<Option<crate::ideals::Elem>> {
    let beta = l.first_element();
    let span = over.scaled(over.carrier(), &beta)?;
    Ok((&span == l).then_some(beta))
}

pub fn build_ggl_profile(ring: &LocalRing) -> Result<GglProfile> {
    let k = canonical_ideal(ring)?;
    let r_ideal = ring.carrier();
    if &ring.colon(&k, &k)? != r_ideal {
        return Err(violation(format!("K:K != R for K = {k}")));
    }
    let m = ring.maximal_ideal();
    if &ring.colon(&k, &ring.colon(&k, m)?)? != m {
        return Err(violation("K:(K:m) != m"));
    }
    let r = ring.mu(&k)?;

    let cap = ring.value_semigroup().genus() + 1;
    let mut power = k.clone();
    let mut n = 1;
    loop {
        let next = ring.product(&power, &k)?;
        if next == power {
            break;
        }
        if n >= cap {
            return Err(violation(format!("K^n did not stabilize by n = {cap}")));
        }
        power = next;
        n += 1;
    }
    let s = LocalRing::from_carrier(power, ring.trunc())?;
    let c = ring.colon(r_ideal, s.carrier())?;
    if ring.colon(&k, s.carrier())? != c {
        return Err(violation("𝔠 != K:S"));
    }
    if &ring.colon(&c, &c)? != s.carrier() || &ring.colon(r_ideal, &c)? != s.carrier() {
        return Err(violation("S != 𝔠:𝔠 or S != R:𝔠"));
    }

    let gorenstein = r == 1;
    let s_gorenstein = principal_generator(&s, &c)?.is_some();
    if gorenstein {
        return Ok(GglProfile {
            canonical: k,
            blowup: s,
            conductor: c,
            gorenstein,
            is_ggl: true,
            s_gorenstein,
            c_ulrich: false,
            r,
            stable_power: n,
        });
    }

    let rc = ring.colength(&c)?;
    let is_ggl = r_ideal.colength_in(&k)? == (r - 1) * rc;
    if is_ggl {
        if ring.socle_dim(&c)? != 1 {
            return Err(violation(format!(
                "R/𝔠 is not Gorenstein for the GGL ring {}",
                ring.describe()
            )));
        }
        let s_gens = ring.mu(s.carrier())?;
        if s_gens != r + 1 || r_ideal.colength_in(s.carrier())? != r * rc {
            return Err(violation(format!("S/R is not free of rank {r} over R/𝔠")));
        }
    }
    let c_ulrich = crate::ulrich::is_ulrich(ring, &c)?.is_ok();
    if c_ulrich != (is_ggl && s_gorenstein) {
        return Err(violation(format!(
            "𝔠 Ulrich = {c_ulrich} but GGL = {is_ggl}, S Gorenstein = {s_gorenstein}"
        )));
    }
    Ok(GglProfile {
        canonical: k,
        blowup: s,
        conductor: c,
        gorenstein,
        is_ggl,
        s_gorenstein,
        c_ulrich,
        r,
        stable_power: n,
    })
}

/// Ulrich ideals strictly containing 𝔠, as (a) + 𝔠 with 𝔠 = abS for some b ∈ m.
///
/// 𝔠 = abS says that 𝔠/a is a principal S-module generated by an element of m.
pub fn ulrich_above_c(ring: &LocalRing, profile: &GglProfile) -> Result<Vec<UlrichCertificate>> {
    if profile.gorenstein {
        return Ok(Vec::new());
    }
    let c = &profile.conductor;
    if !profile.is_ggl {
        // Without GGL the emptiness argument still works when 𝔠 satisfies (C) with rank >= 2.
        let cond = check_condition_c(ring, c)?;
        if !profile.c_ulrich && cond.holds() && cond.rank >= 2 {
            return Ok(Vec::new());
        }
        return Err(Error::Domain(format!(
            "{} is not a GGL ring",
            ring.describe()
        )));
    }
    let s = &profile.blowup;
    let basis = complement_gens(ring.maximal_ideal(), c);
    let points = crate::ulrich::projective_points(ring, &basis);
    let accepted: Vec<Option<FractionalIdeal>> = points
        .par_iter()
        .map(|a| -> Result<Option<FractionalIdeal>> {
            let l = ring.divided(c, a)?;
            let Some(beta) = principal_generator(s, &l)? else {
                return Ok(None);
            };
            let o = beta.order().unwrap_or(0);
            if o <= 0 || !l.intersection(ring.carrier()).has_value(o) {
                return Ok(None);
            }
            Ok(Some(ring.ideal(std::slice::from_ref(a))?.sum(c)))
        })
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in accepted.into_iter().flatten() {
        if !seen.insert(i.clone()) {
            continue;
        }
        let cert = crate::ulrich::is_ulrich(ring, &i)?
            .map_err(|why| violation(format!("{i} passes the 𝔠 = abS test but {why}")))?;
        if cert.mu != profile.r + 1 {
            return Err(violation(format!(
                "{i} above 𝔠 has μ = {} != r + 1",
                cert.mu
            )));
        }
        out.push(cert);
    }
    sort_certificates(&mut out);
    Ok(out)
}

/// Ulrich ideals split by whether they contain 𝔠.
#[derive(Clone, Debug, Default)]
pub struct Dichotomy {
    pub containing_c: Vec<FractionalIdeal>,
    pub two_generated: Vec<FractionalIdeal>,
}

pub fn mu_dichotomy(
    ring: &LocalRing,
    profile: &GglProfile,
    certs: &[UlrichCertificate],
) -> Result<Dichotomy> {
    if !profile.is_ggl {
        return Err(Error::Domain(format!(
            "{} is not a GGL ring",
            ring.describe()
        )));
    }
    let c = &profile.conductor;
    let mut out = Dichotomy::default();
    for cert in certs {
        let i = &cert.ideal;
        if !profile.gorenstein && i.is_subset_of(c) && i != c {
            return Err(violation(format!(
                "Ulrich ideal {i} lies strictly inside 𝔠"
            )));
        }
        let contains = c.is_subset_of(i);
        if contains != (cert.mu != 2) {
            return Err(violation(format!(
                "{i}: μ = {} but 𝔠 ⊆ I is {contains}",
                cert.mu
            )));
        }
        if contains {
            if cert.mu != profile.r + 1 {
                return Err(violation(format!("{i} contains 𝔠 with μ = {}", cert.mu)));
            }
            out.containing_c.push(i.clone());
        } else {
            out.two_generated.push(i.clone());
        }
    }
    Ok(out)
}

/// 𝒳_R for a GGL ring: the ideals containing 𝔠 plus the two-generated ones.
pub fn enumerate_ggl(ring: &LocalRing, profile: &GglProfile, opts: &SearchOptions) -> Result<Walk> {
    let mut certs = ulrich_above_c(ring, profile)?;
    if profile.c_ulrich {
        certs.extend(crate::ulrich::is_ulrich(ring, &profile.conductor)?.ok());
    }
    let pairs = enumerate_two_generated(ring, opts)?;
    let mut seen: HashSet<FractionalIdeal> = certs.iter().map(|c| c.ideal.clone()).collect();
    for c in pairs.certificates {
        if seen.insert(c.ideal.clone()) {
            certs.push(c);
        }
    }
    sort_certificates(&mut certs);
    mu_dichotomy(ring, profile, &certs)?;
    Ok(Walk {
        certificates: certs,
        nodes: pairs.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffcore::PrimeField;
    use crate::ideals::Elem;

    fn ring(p: u32, gens: &[u64]) -> LocalRing {
        LocalRing::monomial(PrimeField::new(p).unwrap(), gens, None).unwrap()
    }

    #[test]
    fn five_seven_nine_thirteen() {
        for p in [2, 3] {
            let r = ring(p, &[5, 7, 9, 13]);
            let g = build_ggl_profile(&r).unwrap();
            assert_eq!(g.blowup.value_semigroup().generators(), &[3, 5, 7]);
            let c = r
                .ideal(&[7, 9, 10, 13].map(|e| Elem::monomial(e, 1)))
                .unwrap();
            assert_eq!(g.conductor, c);
            assert!(g.is_ggl && !g.s_gorenstein && !g.c_ulrich);
            let w = enumerate_ggl(&r, &g, &SearchOptions::default()).unwrap();
            assert!(w.certificates.is_empty());
        }
    }

    #[test]
    fn four_nine_fifteen_conductor_is_principal_over_s() {
        let r = ring(2, &[4, 9, 15]);
        let g = build_ggl_profile(&r).unwrap();
        let s = &g.blowup;
        assert_eq!(
            g.conductor,
            s.scaled(s.carrier(), &Elem::monomial(9, 1)).unwrap()
        );
        assert!(g.c_ulrich);
        assert!(ulrich_above_c(&r, &g).unwrap().is_empty());
        let w = enumerate_ggl(&r, &g, &SearchOptions::default()).unwrap();
        assert_eq!(w.certificates.len(), 1);
        assert_eq!(w.certificates[0].ideal, g.conductor);
        assert_eq!(w.certificates[0].mu, 3);
    }

    #[test]
    fn six_thirteen_twenty_eight() {
        let r = ring(2, &[6, 13, 28]);
        let g = build_ggl_profile(&r).unwrap();
        assert_eq!(g.blowup.value_semigroup().generators(), &[2, 13]);
        let s = &g.blowup;
        assert_eq!(
            g.conductor,
            s.scaled(s.carrier(), &Elem::monomial(24, 1)).unwrap()
        );
        let above = ulrich_above_c(&r, &g).unwrap();
        assert_eq!(above.len(), 8);
        assert!(above.iter().all(|c| c.mu == 3));
        let w = enumerate_ggl(&r, &g, &SearchOptions::default()).unwrap();
        assert_eq!(w.certificates.len(), 9);
    }

    #[test]
    fn gorenstein_ring_is_trivially_ggl() {
        let r = ring(3, &[3, 7]);
        let g = build_ggl_profile(&r).unwrap();
        assert!(g.gorenstein && g.is_ggl && !g.c_ulrich);
        assert_eq!(&g.conductor, r.carrier());
        let w = enumerate_ggl(&r, &g, &SearchOptions::default()).unwrap();
        assert_eq!(w.certificates.len(), 2);
        let d = mu_dichotomy(&r, &g, &w.certificates).unwrap();
        assert!(d.containing_c.is_empty());
    }
}
