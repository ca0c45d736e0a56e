use super::certificate::{certify, UlrichCertificate};
use crate::error::{Error, Result};
use crate::ideals::{complement_gens, Elem, FractionalIdeal, LocalRing};

/// Data attached to Ulrich ideals I ⊊ J: J = (b) + I, I :_R J = (c) + I, I = bcA.
#[derive(Clone, Debug)]
pub struct AdjacentStructure {
    pub b: Elem,
    pub c: Elem,
    /// A = I:I.
    pub endo: LocalRing,
}

/// An Ulrich chain I_1 ⊋ ... ⊋ I_n with I_i = (a_1⋯a_i) + I_n and I_n = a_1⋯a_n·A.
#[derive(Clone, Debug)]
pub struct ChainReport {
    /// I_1 first.
    pub links: Vec<UlrichCertificate>,
    pub factors: Vec<Elem>,
    /// A = I_n:I_n.
    pub endo: LocalRing,
}

fn violation(what: String) -> Error {
    Error::InvariantViolation(what)
}

fn require_ulrich(ring: &LocalRing, i: &FractionalIdeal) -> Result<UlrichCertificate> {
    super::is_ulrich(ring, i)?.map_err(|why| Error::Domain(format!("{i} is not Ulrich: {why}")))
}

fn in_maximal_ideal(ring: &LocalRing, x: &Elem) -> bool {
    x.order().is_some_and(|o| o > 0) && ring.carrier().contains_elem(x)
}

pub fn adjacent_structure(
    ring: &LocalRing,
    i: &FractionalIdeal,
    j: &FractionalIdeal,
) -> Result<AdjacentStructure> {
    if !i.is_subset_of(j) || i == j {
        return Err(Error::Domain(format!("{i} is not strictly inside {j}")));
    }
    let ci = require_ulrich(ring, i)?;
    let cj = require_ulrich(ring, j)?;
    if ci.mu != cj.mu {
        return Err(violation(format!(
            "μ({i}) = {} but μ({j}) = {}",
            ci.mu, cj.mu
        )));
    }
    split(ring, i, j, j.first_element())
}

/// Adjacent structure for a given reduction `b` of J.
fn split(
    ring: &LocalRing,
    i: &FractionalIdeal,
    j: &FractionalIdeal,
    b: Elem,
) -> Result<AdjacentStructure> {
    if &ring.ideal(std::slice::from_ref(&b))?.sum(i) != j {
        return Err(violation(format!("{j} != ({b}) + {i}")));
    }
    let q = ring.colon_in_ring(i, j)?;
    let extra = complement_gens(&q, &i.sum(&ring.max_times(&q)?));
    if extra.len() != 1 {
        return Err(violation(format!(
            "(I :_R J)/I needs {} generators",
            extra.len()
        )));
    }
    if i.colength_in(&q)? != ring.colength(j)? {
        return Err(violation(format!(
            "ℓ((I :_R J)/I) != ℓ(R/J) for I = {i}, J = {j}"
        )));
    }
    // bq ⊆ I bounds ord q from below, so a least-order element of q works as c
    let c = q.first_element();
    if !in_maximal_ideal(ring, &c) {
        return Err(violation(format!("c = {c} is not in m")));
    }
    let endo = ring.endo_ring(i)?;
    let bc = b.mul(&c, ring.field());
    if &endo.scaled(endo.carrier(), &bc)? != i {
        return Err(violation(format!("{i} != bc·A for b = {b}, c = {c}")));
    }
    Ok(AdjacentStructure { b, c, endo })
}

/// Links (a_1⋯a_i) + I for i = 1..n, given I = a_1⋯a_n·A.
pub fn chain_build(ring: &LocalRing, i: &FractionalIdeal, factors: &[Elem]) -> Result<ChainReport> {
    let base = require_ulrich(ring, i)?;
    let f = ring.field();
    if let Some(bad) = factors.iter().find(|a| !in_maximal_ideal(ring, a)) {
        return Err(Error::Domain(format!("factor {bad} is not in m")));
    }
    let endo = ring.endo_ring(i)?;
    let mut prefix = Vec::with_capacity(factors.len());
    let mut p = ring.one();
    for a in factors {
        p = p.mul(a, f);
        prefix.push(p.clone());
    }
    if factors.is_empty() {
        return Ok(ChainReport {
            links: vec![base],
            factors: Vec::new(),
            endo,
        });
    }
    if &endo.scaled(endo.carrier(), &p)? != i {
        return Err(Error::Domain(format!(
            "the factors do not multiply to {i} over I:I"
        )));
    }
    let mut links: Vec<UlrichCertificate> = Vec::with_capacity(factors.len());
    for pre in &prefix {
        let link = ring.ideal(std::slice::from_ref(pre))?.sum(i);
        let cert = certify(ring, &link)?
            .map_err(|why| violation(format!("chain link {link} is not Ulrich: {why}")))?;
        if let Some(prev) = links.last() {
            if !link.is_subset_of(&prev.ideal) || link == prev.ideal {
                return Err(violation(format!(
                    "{link} is not strictly inside {}",
                    prev.ideal
                )));
            }
        }
        links.push(cert);
    }
    Ok(ChainReport {
        links,
        factors: factors.to_vec(),
        endo,
    })
}

/// Factors a_1, ..., a_n for a strictly descending Ulrich chain, in any input order.
pub fn chain_factorize(ring: &LocalRing, links: &[FractionalIdeal]) -> Result<ChainReport> {
    let mut certs = links
        .iter()
        .map(|i| require_ulrich(ring, i))
        .collect::<Result<Vec<_>>>()?;
    certs.sort_by_key(|a| a.colength);
    for w in certs.windows(2) {
        if !w[1].ideal.is_subset_of(&w[0].ideal) || w[1].ideal == w[0].ideal {
            return Err(Error::Domain(format!(
                "{} and {} do not form a strict chain",
                w[0].ideal, w[1].ideal
            )));
        }
    }
    let Some(last) = certs.last() else {
        return Err(Error::Domain("empty chain".into()));
    };
    let endo = ring.endo_ring(&last.ideal)?;
    if certs.len() == 1 {
        return Ok(ChainReport {
            links: certs,
            factors: Vec::new(),
            endo,
        });
    }
    let f = ring.field();
    let first = certs[0].ideal.first_element();
    let mut factors = vec![first.clone()];
    let mut prefix = first;
    for w in certs.windows(2) {
        let adj = split(ring, &w[1].ideal, &w[0].ideal, prefix.clone())?;
        prefix = prefix.mul(&adj.c, f);
        factors.push(adj.c);
    }
    let report = chain_build(ring, &last.ideal, &factors)?;
    let same = report
        .links
        .iter()
        .zip(&certs)
        .all(|(a, b)| a.ideal == b.ideal);
    if !same || report.links.len() != certs.len() {
        return Err(violation(
            "factorized chain does not rebuild the input".into(),
        ));
    }
    Ok(report)
}

/// Covering relations (smaller, larger) among the ideals of `certs`.
pub fn hasse_edges(certs: &[UlrichCertificate]) -> Vec<(usize, usize)> {
    let n = certs.len();
    let below = |a: usize, b: usize| a != b && certs[a].ideal.is_subset_of(&certs[b].ideal);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if below(a, b) && !(0..n).any(|m| below(a, m) && below(m, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Maximal chains of `certs`, each listed from its largest ideal down.
pub fn maximal_chains(certs: &[UlrichCertificate]) -> Vec<Vec<usize>> {
    let edges = hasse_edges(certs);
    let n = certs.len();
    let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut has_up = vec![false; n];
    for &(small, large) in &edges {
        down[large].push(small);
        has_up[small] = true;
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).filter(|&i| !has_up[i]).map(|i| vec![i]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        let tip = *path.last().unwrap_or(&0);
        if down[tip].is_empty() {
            out.push(path);
            continue;
        }
        for &next in down[tip].iter().rev() {
            let mut p = path.clone();
            p.push(next);
            stack.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffcore::PrimeField;
    use crate::ulrich::{enumerate_fallback, SearchOptions};

    fn ring(p: u32, gens: &[u64]) -> LocalRing {
        LocalRing::monomial(PrimeField::new(p).unwrap(), gens, None).unwrap()
    }

    fn t(e: i64) -> Elem {
        Elem::monomial(e, 1)
    }

    #[test]
    fn conductor_below_t6() {
        let r = ring(2, &[6, 13, 28]);
        let c = r.ideal(&[t(24), t(26), t(28)]).unwrap();
        let j = r.ideal(&[t(6)]).unwrap().sum(&c);
        let adj = adjacent_structure(&r, &c, &j).unwrap();
        assert_eq!(adj.b.order(), Some(6));
        assert_eq!(adj.c.order(), Some(18));
    }

    #[test]
    fn four_sixes_build_and_factorize() {
        let r = ring(2, &[6, 13, 28]);
        let c = r.ideal(&[t(24), t(26), t(28)]).unwrap();
        let rep = chain_build(&r, &c, &[t(6), t(6), t(6), t(6)]).unwrap();
        let orders: Vec<_> = rep.links.iter().map(|l| l.colength).collect();
        assert_eq!(orders, [2, 4, 6, 8]);
        let links: Vec<_> = rep.links.iter().map(|l| l.ideal.clone()).collect();
        let back = chain_factorize(&r, &links).unwrap();
        let fo: Vec<_> = back.factors.iter().map(|a| a.order().unwrap()).collect();
        assert_eq!(fo, [6, 6, 6, 6]);
    }

    #[test]
    fn factors_too_deep_are_rejected() {
        let r = ring(2, &[6, 13, 28]);
        let c = r.ideal(&[t(24), t(26), t(28)]).unwrap();
        let err = chain_build(&r, &c, &[t(6), t(6), t(6), t(6), t(6)]).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn hasse_of_6_13_28() {
        let r = ring(2, &[6, 13, 28]);
        let w = enumerate_fallback(&r, &SearchOptions::default()).unwrap();
        let chains = maximal_chains(&w.certificates);
        let bottom = w.certificates.iter().position(|c| c.colength == 8).unwrap();
        assert!(chains.iter().all(|ch| ch.last() == Some(&bottom)));
        assert_eq!(chains.iter().map(|ch| ch.len()).max(), Some(4));
        for ch in &chains {
            let links: Vec<_> = ch
                .iter()
                .map(|&k| w.certificates[k].ideal.clone())
                .collect();
            chain_factorize(&r, &links).unwrap();
        }
    }

    #[test]
    fn two_link_minimal_multiplicity_chain() {
        let r = ring(2, &[3, 7, 8]);
        let m = r.maximal_ideal().clone();
        let i = r.conductor_ideal();
        let rep = chain_factorize(&r, &[i, m]).unwrap();
        let fo: Vec<_> = rep.factors.iter().map(|a| a.order().unwrap()).collect();
        assert_eq!(fo, [3, 3]);
    }
}
