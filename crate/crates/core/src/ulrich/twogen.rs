use std::collections::HashSet;

use rayon::prelude::*;

use super::certificate::{certify, values_admit_stability, UlrichCertificate};
use super::enumerate::{sort_certificates, SearchOptions, Walk};
use crate::error::{Error, Result};
use crate::ideals::{Elem, FractionalIdeal, LocalRing};

/// `lead + sum d_k rest[k]` over all coefficient vectors.
fn combinations(ring: &LocalRing, lead: &Elem, rest: &[Elem]) -> Vec<Elem> {
    let f = ring.field();
    let q = f.modulus() as usize;
    let total = q.checked_pow(rest.len() as u32).unwrap_or(usize::MAX);
    let mut out = Vec::with_capacity(total.min(1 << 20));
    let mut digits = vec![0u32; rest.len()];
    loop {
        let mut a = lead.clone();
        for (d, r) in digits.iter().zip(rest) {
            if *d != 0 {
                a = a.add(&r.scale(*d, f), f);
            }
        }
        out.push(a);
        let mut k = 0;
        while k < digits.len() {
            digits[k] += 1;
            if digits[k] < f.modulus() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            break;
        }
    }
    out
}

/// All Ulrich ideals with two generators, as (a, x) + t^c k[[t]].
///
/// For such an ideal ℓ(R/(a)) = 2ℓ(R/I), so ord(a) is even and at most twice
/// the colength of the conductor. The module aR + t^c k[[t]] only depends on a
/// modulo a·m + t^c k[[t]], whose leading orders are ord(a) + v(m) whatever a
/// is, so a runs over the elements of R that vanish at those orders. The same
/// holds for the second generator x.
pub fn enumerate_two_generated(ring: &LocalRing, opts: &SearchOptions) -> Result<Walk> {
    opts.install(|| two_generated(ring, opts.budget))?
}

fn two_generated(ring: &LocalRing, budget: u64) -> Result<Walk> {
    let tail = ring.conductor_ideal();
    let max_colength = ring.colength(&tail)?;
    let rows = ring.carrier().row_elems();
    let values = ring.carrier().values_below_conductor();
    let mut reductions = Vec::new();
    for (j, r) in rows.iter().enumerate() {
        let o = r.order().unwrap_or(0);
        if o == 0 || o % 2 != 0 || (o / 2) as usize > max_colength {
            continue;
        }
        // R/I is a quotient of R/((a) + t^c) by a nonzero subspace
        let room = values
            .iter()
            .filter(|&&h| !ring.carrier().has_value(h - o))
            .count();
        if room < (o / 2) as usize + 1 {
            continue;
        }
        let m = ring.maximal_ideal();
        let free: Vec<Elem> = rows[j + 1..]
            .iter()
            .filter(|x| x.order().is_some_and(|p| !m.has_value(p - o)))
            .cloned()
            .collect();
        reductions.extend(combinations(ring, r, &free));
        if reductions.len() as u64 > budget {
            return Err(Error::BudgetExceeded {
                budget,
                stratum: format!("two-generated candidates with reduction order >= {o}"),
            });
        }
    }
    let m = ring.maximal_ideal();
    let m_rows = m.row_elems();
    let nodes = std::sync::atomic::AtomicU64::new(reductions.len() as u64);
    let found: Vec<Vec<UlrichCertificate>> = reductions
        .par_iter()
        .map(|a| -> Result<Vec<UlrichCertificate>> {
            let o = a.order().unwrap_or(0);
            let target = (o / 2) as usize;
            let q = ring.scaled(ring.carrier(), a)?.sum(&tail);
            // x likewise only matters modulo x·m + (a) + t^c
            let mut points = Vec::new();
            for (i, lead) in m_rows.iter().enumerate() {
                let p = lead.order().unwrap_or(0);
                if p <= o || q.has_value(p) {
                    continue;
                }
                let free: Vec<Elem> = m_rows[i + 1..]
                    .iter()
                    .filter(|y| {
                        y.order()
                            .is_some_and(|v| !q.has_value(v) && !m.has_value(v - p))
                    })
                    .cloned()
                    .collect();
                points.extend(combinations(ring, lead, &free));
            }
            let mut out = Vec::new();
            let seen = nodes.fetch_add(points.len() as u64, std::sync::atomic::Ordering::Relaxed);
            if seen > budget {
                return Err(Error::BudgetExceeded {
                    budget,
                    stratum: format!("two-generated candidates over a reduction of order {o}"),
                });
            }
            for x in points {
                let i = q.sum(&ring.ideal(std::slice::from_ref(&x))?);
                if ring.colength(&i)? != target || !values_admit_stability(&i) {
                    continue;
                }
                if ring.mu(&i)? != 2 {
                    continue;
                }
                if let Ok(c) = certify(ring, &i)? {
                    out.push(c);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut seen = HashSet::<FractionalIdeal>::new();
    let mut certs: Vec<UlrichCertificate> = found
        .into_iter()
        .flatten()
        .filter(|c| seen.insert(c.ideal.clone()))
        .collect();
    sort_certificates(&mut certs);
    Ok(Walk {
        certificates: certs,
        nodes: nodes.into_inner(),
    })
}
