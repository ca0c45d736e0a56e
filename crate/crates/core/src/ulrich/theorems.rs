//! Structural properties of 𝒳_R, checked instance by instance on a concrete ring.

use serde::Serialize;

use super::certificate::{certify, UlrichCertificate};
use super::chain::{adjacent_structure, chain_factorize, maximal_chains};
use super::dispatch::{choose_strategy, enumerate_with, Strategy};
use super::enumerate::{projective_points, walk_submodules, SearchOptions};
use super::minmult::minmult_report;
use super::transport::transport;
use crate::error::{Error, Result};
use crate::ggl::{build_ggl_profile, mu_dichotomy, principal_generator, ulrich_above_c};
use crate::ideals::{
    canonical_ideal, check_condition_c, complement_gens, ring_profile, Elem, FractionalIdeal,
    LocalRing,
};

/// Outcome of one property over all instances found in a ring.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub tag: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl PropertyCheck {
    fn new(tag: &'static str) -> Self {
        PropertyCheck {
            tag,
            instances: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one instance; theorem violations and domain errors count as failures.
    fn record(&mut self, what: impl FnOnce() -> String, outcome: Result<bool>) -> Result<()> {
        self.instances += 1;
        match outcome {
            Ok(true) => Ok(()),
            Ok(false) => {
                self.failures.push(what());
                Ok(())
            }
            Err(Error::InvariantViolation(msg) | Error::Domain(msg)) => {
                self.failures.push(format!("{}: {msg}", what()));
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

/// Caps on the per-ring work of the suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteLimits {
    pub transport_pairs: usize,
    pub sample_elements: usize,
    pub lifting_modules: u64,
}

impl Default for SuiteLimits {
    fn default() -> Self {
        SuiteLimits {
            transport_pairs: 6,
            sample_elements: 24,
            lifting_modules: 20_000,
        }
    }
}

/// Ordered pairs (i, j) with ideal i strictly inside ideal j.
fn comparable_pairs(certs: &[UlrichCertificate]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (a, x) in certs.iter().enumerate() {
        for (b, y) in certs.iter().enumerate() {
            if a != b && x.ideal.is_subset_of(&y.ideal) {
                out.push((a, b));
            }
        }
    }
    out
}

fn sample(ring: &LocalRing, basis: &[Elem], cap: usize) -> Vec<Elem> {
    let mut pts = projective_points(ring, basis);
    pts.truncate(cap);
    pts
}

/// Runs every property that applies to `ring`.
pub fn property_suite(
    ring: &LocalRing,
    opts: &SearchOptions,
    limits: &SuiteLimits,
) -> Result<Vec<PropertyCheck>> {
    let strategy = choose_strategy(ring)?;
    let certs = enumerate_with(ring, strategy, opts)?.certificates;
    let pairs = comparable_pairs(&certs);
    let mut out = Vec::new();

    let mut agree = PropertyCheck::new("fast-path-agreement");
    if strategy != Strategy::Fallback {
        let slow = enumerate_with(ring, Strategy::Fallback, opts)?.certificates;
        let a: Vec<_> = certs.iter().map(|c| &c.ideal).collect();
        let b: Vec<_> = slow.iter().map(|c| &c.ideal).collect();
        agree.record(|| format!("{strategy:?} and fallback disagree"), Ok(a == b))?;
    }
    out.push(agree);

    let mut adjacent = PropertyCheck::new("adjacent-pairs");
    for &(i, j) in &pairs {
        let (ii, jj) = (&certs[i].ideal, &certs[j].ideal);
        let outcome = adjacent_structure(ring, ii, jj).and_then(|adj| {
            Ok(&ring.ideal(std::slice::from_ref(&adj.b))?.sum(ii) == jj
                && certs[i].mu == certs[j].mu)
        });
        adjacent.record(|| format!("{ii} ⊊ {jj}"), outcome)?;
    }
    out.push(adjacent);

    let mut criterion = PropertyCheck::new("reduction-criterion");
    for &(i, j) in &pairs {
        let (ii, jj) = (&certs[i].ideal, &certs[j].ideal);
        let square = ring.product(jj, jj)?;
        for alpha in sample(ring, &complement_gens(jj, ii), limits.sample_elements) {
            let generates = &ring.ideal(std::slice::from_ref(&alpha))?.sum(ii) == jj;
            let reduces = square == ring.scaled(jj, &alpha)?;
            criterion.record(
                || format!("α = {alpha} for {ii} ⊊ {jj}"),
                Ok(generates == reduces),
            )?;
        }
    }
    out.push(criterion);

    let mut above = PropertyCheck::new("extensions-above");
    for cert in &certs {
        let i = &cert.ideal;
        let endo = ring.endo_ring(i)?;
        let mut predicted: Vec<FractionalIdeal> = Vec::new();
        for b in projective_points(ring, &complement_gens(ring.maximal_ideal(), i)) {
            let l = ring.divided(i, &b)?;
            let Some(c) = principal_generator(&endo, &l)? else {
                continue;
            };
            let o = c.order().unwrap_or(0);
            if o > 0 && l.intersection(ring.carrier()).has_value(o) {
                predicted.push(ring.ideal(std::slice::from_ref(&b))?.sum(i));
            }
        }
        predicted.sort();
        predicted.dedup();
        let mut found: Vec<FractionalIdeal> = certs
            .iter()
            .map(|c| c.ideal.clone())
            .filter(|j| i.is_subset_of(j) && j != i)
            .collect();
        found.sort();
        above.record(
            || format!("Ulrich ideals above {i}"),
            Ok(predicted == found),
        )?;
    }
    out.push(above);

    let mut chains = PropertyCheck::new("chain-factorization");
    for chain in maximal_chains(&certs) {
        let links: Vec<FractionalIdeal> = chain.iter().map(|&k| certs[k].ideal.clone()).collect();
        let outcome = chain_factorize(ring, &links)
            .map(|rep| rep.factors.len() == if links.len() == 1 { 0 } else { links.len() });
        chains.record(|| format!("chain of length {}", links.len()), outcome)?;
    }
    out.push(chains);

    let mut moved = PropertyCheck::new("transport");
    for &(i, j) in pairs.iter().take(limits.transport_pairs) {
        let (ii, jj) = (&certs[i].ideal, &certs[j].ideal);
        moved.record(
            || format!("{ii} ⊊ {jj}"),
            transport(ring, ii, jj, opts).map(|_| true),
        )?;
    }
    out.push(moved);

    let mut blowup = PropertyCheck::new("blowup-invariants");
    let base = ring_profile(ring)?;
    let mut outer: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
    outer.sort_unstable();
    outer.dedup();
    for j in outer {
        let jj = &certs[j].ideal;
        let outcome = ring
            .endo_ring(jj)
            .and_then(|b| ring_profile(&b))
            .map(|p| p.e == base.e && p.r == base.r && p.min_mult == base.min_mult);
        blowup.record(|| format!("J:J for J = {jj}"), outcome)?;
    }
    out.push(blowup);

    let mut type_formula = PropertyCheck::new("type-formula");
    for cert in &certs {
        let soc = ring.socle_dim(&cert.ideal)?;
        type_formula.record(
            || format!("r(R) = t·r(R/I) at {}", cert.ideal),
            Ok(base.r == cert.rank * soc),
        )?;
    }
    out.push(type_formula);

    let mut robust = PropertyCheck::new("reduction-robustness");
    for cert in &certs {
        let i = &cert.ideal;
        let rows = i.kbasis_elems(i.conductor() + 4);
        let square = ring.product(i, i)?;
        let mut candidates = vec![rows[0].clone()];
        candidates.extend(
            sample(ring, &rows[1..rows.len().min(4)], limits.sample_elements)
                .into_iter()
                .map(|x| rows[0].add(&x, ring.field())),
        );
        for b in candidates {
            robust.record(
                || format!("b = {b} in {i}"),
                Ok(square == ring.scaled(i, &b)?),
            )?;
        }
    }
    out.push(robust);

    let mut colon = PropertyCheck::new("colon-reduction");
    let m_rows = ring.maximal_ideal().row_elems();
    for cert in &certs {
        let i = &cert.ideal;
        let endo = ring.endo_ring(i)?;
        for a in sample(ring, &m_rows, limits.sample_elements) {
            let lhs = endo
                .scaled(endo.carrier(), &a)?
                .intersection(ring.carrier());
            let rhs = ring.ideal(std::slice::from_ref(&a))?.sum(i);
            colon.record(
                || format!("a = {a} with I = {i}"),
                Ok(lhs.is_subset_of(&rhs)),
            )?;
        }
    }
    out.push(colon);

    out.push(lifting_check(ring, &certs, limits)?);

    let mut mm = PropertyCheck::new("minimal-multiplicity");
    if strategy == Strategy::MinimalMultiplicity {
        let outcome = minmult_report(ring).map(|rep| {
            let mut a: Vec<_> = rep.chain.iter().map(|c| &c.ideal).collect();
            let mut b: Vec<_> = certs.iter().map(|c| &c.ideal).collect();
            a.sort();
            b.sort();
            a == b
        });
        mm.record(|| format!("chain of {}", ring.describe()), outcome)?;
    }
    out.push(mm);

    let mut ggl = PropertyCheck::new("ggl-identities");
    let mut duality = PropertyCheck::new("canonical-duality");
    if ring.is_monomial() {
        let outcome = build_ggl_profile(ring).and_then(|g| {
            if !g.is_ggl {
                return Ok(true);
            }
            mu_dichotomy(ring, &g, &certs)?;
            let mut listed: Vec<FractionalIdeal> = ulrich_above_c(ring, &g)?
                .into_iter()
                .map(|c| c.ideal)
                .collect();
            listed.sort();
            let mut found: Vec<FractionalIdeal> = certs
                .iter()
                .map(|c| c.ideal.clone())
                .filter(|i| g.conductor.is_subset_of(i) && *i != g.conductor)
                .collect();
            found.sort();
            Ok(listed == found)
        });
        ggl.record(|| format!("GGL profile of {}", ring.describe()), outcome)?;

        let k = canonical_ideal(ring)?;
        let mut modules: Vec<FractionalIdeal> = certs.iter().map(|c| c.ideal.clone()).collect();
        modules.push(ring.maximal_ideal().clone());
        modules.push(ring.conductor_ideal());
        for i in modules {
            let back = ring.colon(&k, &ring.colon(&k, &i)?)?;
            duality.record(|| format!("K:(K:I) for I = {i}"), Ok(back == i))?;
        }
    }
    out.push(ggl);
    out.push(duality);
    Ok(out)
}

/// For I with Condition (C) and rank >= 2, and J ⊋ I with J² = bJ and J = (b):_R J,
/// I is Ulrich exactly when J is.
fn lifting_check(
    ring: &LocalRing,
    certs: &[UlrichCertificate],
    limits: &SuiteLimits,
) -> Result<PropertyCheck> {
    let mut check = PropertyCheck::new("condition-c-lifting");
    let mut bases: Vec<FractionalIdeal> = certs
        .iter()
        .filter(|c| c.rank >= 2)
        .map(|c| c.ideal.clone())
        .collect();
    if ring.is_monomial() {
        let g = build_ggl_profile(ring)?;
        if !g.gorenstein {
            bases.push(g.conductor.clone());
        }
    }
    bases.sort();
    bases.dedup();
    for i in bases {
        let cond = check_condition_c(ring, &i)?;
        if !cond.holds() || cond.rank < 2 {
            continue;
        }
        let i_ulrich = certify(ring, &i)?.is_ok();
        let mut pairs: Vec<(FractionalIdeal, bool)> = Vec::new();
        let walked = walk_submodules(ring, i.clone(), limits.lifting_modules, |level| {
            for j in level {
                if *j == i {
                    continue;
                }
                let b = j.first_element();
                if ring.product(j, j)? != ring.scaled(j, &b)? {
                    continue;
                }
                let bj = ring.colon_in_ring(&ring.scaled(ring.carrier(), &b)?, j)?;
                if &bj != j {
                    continue;
                }
                pairs.push((j.clone(), certify(ring, j)?.is_ok()));
            }
            Ok(())
        });
        match walked {
            Ok(_) | Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        for (j, j_ulrich) in pairs {
            check.record(|| format!("{i} ⊊ {j}"), Ok(i_ulrich == j_ulrich))?;
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffcore::PrimeField;

    #[test]
    fn suite_passes_on_6_13_28() {
        let r = LocalRing::monomial(PrimeField::new(2).unwrap(), &[6, 13, 28], None).unwrap();
        let checks =
            property_suite(&r, &SearchOptions::default(), &SuiteLimits::default()).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.tag, c.failures);
        }
        let lifting = checks
            .iter()
            .find(|c| c.tag == "condition-c-lifting")
            .unwrap();
        assert!(lifting.instances > 0);
    }

    #[test]
    fn suite_passes_on_minimal_multiplicity() {
        let r = LocalRing::monomial(PrimeField::new(3).unwrap(), &[3, 7, 8], None).unwrap();
        let checks =
            property_suite(&r, &SearchOptions::default(), &SuiteLimits::default()).unwrap();
        assert!(checks.iter().all(PropertyCheck::passed));
    }
}
