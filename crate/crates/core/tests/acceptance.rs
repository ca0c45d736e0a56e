//! Acceptance run: one line per criterion, each under a fixed time limit.
//!
//! Every criterion returns a fingerprint of what it computed, so the last one can
//! replay the others at a wider truncation and with a different thread count.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ulrich_core::coeffcore::PrimeField;
use ulrich_core::ggl::{build_ggl_profile, ulrich_above_c};
use ulrich_core::ideals::{Elem, FractionalIdeal, LocalRing};
use ulrich_core::ulrich::{
    choose_strategy, enumerate_fallback, enumerate_ulrich, enumerate_with, maximal_chains,
    property_suite, SearchOptions, Strategy, SuiteLimits, UlrichCertificate,
};

#[derive(Clone, Copy, Debug)]
struct Setup {
    extra_trunc: usize,
    threads: Option<usize>,
}

impl Setup {
    const BASE: Setup = Setup {
        extra_trunc: 0,
        threads: Some(4),
    };

    fn ring(&self, p: u32, gens: &[u64]) -> LocalRing {
        let f = PrimeField::new(p).expect("prime");
        let r = LocalRing::monomial(f, gens, None).expect("ring");
        if self.extra_trunc == 0 {
            r
        } else {
            r.with_trunc(r.trunc() + self.extra_trunc)
                .expect("wider ring")
        }
    }

    fn opts(&self) -> SearchOptions {
        SearchOptions {
            threads: self.threads,
            ..SearchOptions::default()
        }
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn t(e: i64) -> Elem {
    Elem::monomial(e, 1)
}

fn poly(field: PrimeField, terms: &[(i64, u32)]) -> Elem {
    terms.iter().fold(Elem::zero(), |acc, &(e, c)| {
        acc.add(&Elem::monomial(e, c % field.modulus()), field)
    })
}

fn lattices(certs: &[UlrichCertificate]) -> BTreeSet<FractionalIdeal> {
    certs.iter().map(|c| c.ideal.clone()).collect()
}

fn fingerprint(certs: &[UlrichCertificate]) -> String {
    certs
        .iter()
        .map(|c| format!("{}|mu={}|len={}", c.ideal, c.mu, c.colength))
        .collect::<Vec<_>>()
        .join(";")
}

fn err(e: ulrich_core::Error) -> String {
    e.to_string()
}

fn criterion_1(s: Setup) -> Outcome {
    let mut fp = String::new();
    for p in [2, 3] {
        let r = s.ring(p, &[5, 7, 9, 13]);
        let g = build_ggl_profile(&r).map_err(err)?;
        ensure(g.blowup.value_semigroup().generators() == [3, 5, 7], || {
            format!(
                "F_{p}: S has semigroup {:?}",
                g.blowup.value_semigroup().generators()
            )
        })?;
        let c = r.ideal(&[t(7), t(9), t(10), t(13)]).map_err(err)?;
        ensure(g.conductor == c, || format!("F_{p}: 𝔠 = {}", g.conductor))?;
        ensure(g.is_ggl && !g.s_gorenstein, || {
            format!("F_{p}: is_ggl {} s_gorenstein {}", g.is_ggl, g.s_gorenstein)
        })?;
        let x = enumerate_ulrich(&r, &s.opts()).map_err(err)?;
        ensure(x.certificates.is_empty(), || {
            format!("F_{p}: {} Ulrich ideals", x.certificates.len())
        })?;
        fp += &format!(
            "p={p} S={:?} c={} X=[{}]\n",
            g.blowup.value_semigroup().generators(),
            g.conductor,
            fingerprint(&x.certificates)
        );
    }
    Ok(fp)
}

fn criterion_2(s: Setup) -> Outcome {
    let mut fp = String::new();
    for p in [2, 3, 5] {
        let r = s.ring(p, &[4, 9, 15]);
        let g = build_ggl_profile(&r).map_err(err)?;
        let t9s = g.blowup.scaled(g.blowup.carrier(), &t(9)).map_err(err)?;
        let listed = r.ideal(&[t(9), t(12), t(15)]).map_err(err)?;
        ensure(g.conductor == t9s && g.conductor == listed, || {
            format!("F_{p}: 𝔠 = {}", g.conductor)
        })?;
        let x = enumerate_ulrich(&r, &s.opts()).map_err(err)?.certificates;
        ensure(x.len() == 1 && x[0].ideal == g.conductor, || {
            format!("F_{p}: X = [{}]", fingerprint(&x))
        })?;
        ensure(x[0].mu == 3 && g.r + 1 == 3, || {
            format!("F_{p}: μ(𝔠) = {}, r = {}", x[0].mu, g.r)
        })?;
        fp += &format!("p={p} X=[{}] r={}\n", fingerprint(&x), g.r);
    }
    Ok(fp)
}

/// Position of an ideal in the displayed families above 𝔠.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Six(u32),
    Twelve(u32, u32),
    Eighteen(u32),
}

fn criterion_3(s: Setup) -> Outcome {
    let r = s.ring(2, &[6, 13, 28]);
    let f = r.field();
    let g = build_ggl_profile(&r).map_err(err)?;
    ensure(g.blowup.value_semigroup().generators() == [2, 13], || {
        "S != k[[t^2, t^13]]".into()
    })?;
    let c = g.conductor.clone();
    ensure(c == r.ideal(&[t(24), t(26), t(28)]).map_err(err)?, || {
        format!("𝔠 = {c}")
    })?;
    ensure(
        c == g.blowup.scaled(g.blowup.carrier(), &t(24)).map_err(err)?,
        || "𝔠 != t^24 S".into(),
    )?;

    let mut families: BTreeMap<FractionalIdeal, Family> = BTreeMap::new();
    let above =
        |x: Elem| -> Result<FractionalIdeal, String> { Ok(r.ideal(&[x]).map_err(err)?.sum(&c)) };
    for a in f.elements() {
        families.insert(above(poly(f, &[(6, 1), (13, a)]))?, Family::Six(a));
        families.insert(above(poly(f, &[(18, 1), (25, a)]))?, Family::Eighteen(a));
        for b in f.elements() {
            families.insert(
                above(poly(f, &[(12, 1), (13, a), (19, b)]))?,
                Family::Twelve(a, b),
            );
        }
    }
    ensure(families.len() == 8, || {
        format!("families give {} distinct ideals", families.len())
    })?;

    let structural = lattices(&ulrich_above_c(&r, &g).map_err(err)?);
    let expected: BTreeSet<_> = families.keys().cloned().collect();
    ensure(structural == expected, || {
        format!("ideals above 𝔠: {} found", structural.len())
    })?;

    let fast = enumerate_ulrich(&r, &s.opts()).map_err(err)?;
    let slow = enumerate_fallback(&r, &s.opts()).map_err(err)?;
    let mut all = expected.clone();
    all.insert(c.clone());
    ensure(lattices(&fast.certificates) == all, || {
        "structure path differs from families + 𝔠".into()
    })?;
    ensure(lattices(&slow.certificates) == all, || {
        "fallback differs from families + 𝔠".into()
    })?;

    let certs = &fast.certificates;
    let chains = maximal_chains(certs);
    let fam = |k: usize| families.get(&certs[k].ideal).copied();
    let mut seen = BTreeSet::new();
    for ch in &chains {
        let ends_at_c = ch.last().is_some_and(|&k| certs[k].ideal == c);
        let shape = match ch.as_slice() {
            [a, b, d, _] => matches!(
                (fam(*a), fam(*b), fam(*d)),
                (
                    Some(Family::Six(_)),
                    Some(Family::Twelve(0, _)),
                    Some(Family::Eighteen(_))
                )
            ),
            [a, _] => matches!(fam(*a), Some(Family::Twelve(x, _)) if x != 0),
            _ => false,
        };
        ensure(ends_at_c && shape, || {
            let names: Vec<String> = ch.iter().map(|&k| certs[k].ideal.to_string()).collect();
            format!("unexpected maximal chain {}", names.join(" ⊋ "))
        })?;
        seen.insert(
            ch.iter()
                .map(|&k| fam(k))
                .map(|x| format!("{x:?}"))
                .collect::<Vec<_>>(),
        );
    }
    for a in f.elements() {
        let displayed = vec![
            format!("{:?}", Some(Family::Six(a))),
            format!("{:?}", Some(Family::Twelve(0, a))),
            format!("{:?}", Some(Family::Eighteen(a))),
            "None".to_string(),
        ];
        ensure(seen.contains(&displayed), || {
            format!("chain through a = {a} missing")
        })?;
        for b in f.elements() {
            if a != 0 {
                let short = vec![
                    format!("{:?}", Some(Family::Twelve(a, b))),
                    "None".to_string(),
                ];
                ensure(seen.contains(&short), || {
                    format!("short chain a = {a}, b = {b} missing")
                })?;
            }
        }
    }
    Ok(format!("X=[{}]\nchains={chains:?}\n", fingerprint(certs)))
}

fn criterion_4(s: Setup) -> Outcome {
    let mut fp = String::new();
    for q in [2, 3, 5] {
        let r = s.ring(q, &[3, 7]);
        let f = r.field();
        let expected: BTreeSet<_> = f
            .elements()
            .filter(|&c| c != 0)
            .map(|c| r.ideal(&[poly(f, &[(6, 1), (7, f.neg(c))]), t(10)]))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let fast = enumerate_ulrich(&r, &s.opts()).map_err(err)?.certificates;
        let slow = enumerate_fallback(&r, &s.opts()).map_err(err)?.certificates;
        ensure(
            lattices(&fast) == expected && lattices(&slow) == expected,
            || {
                format!(
                    "F_{q}: found {} ideals, expected {}",
                    fast.len(),
                    expected.len()
                )
            },
        )?;
        ensure(expected.len() == q as usize - 1, || {
            format!("F_{q}: {} ideals", expected.len())
        })?;
        let total = fast.iter().all(|a| {
            fast.iter()
                .all(|b| a.ideal.is_subset_of(&b.ideal) || b.ideal.is_subset_of(&a.ideal))
        });
        ensure(total == (q == 2), || {
            format!("F_{q}: totally ordered = {total}")
        })?;
        fp += &format!("q={q} X=[{}]\n", fingerprint(&fast));
    }
    Ok(fp)
}

const SUITE_RINGS: &[&[u64]] = &[
    &[3, 7],
    &[4, 9, 15],
    &[5, 7, 9, 13],
    &[3, 5],
    &[4, 5],
    &[4, 6, 9],
    &[4, 6, 13],
    &[4, 7, 9],
    &[5, 8, 11],
    &[4, 10, 11],
    &[3, 5, 7],
    &[3, 7, 8],
    &[3, 4, 5],
    &[3, 8, 13],
    &[3, 10, 11],
    &[4, 5, 6, 7],
    &[4, 7, 9, 10],
    &[4, 9, 10, 11],
    &[5, 6, 7, 8, 9],
    &[5, 7, 8, 9, 11],
    &[6, 7, 8, 9, 10, 11],
];

/// Rings too slow to repeat over F_3; they run over F_2 only.
const SUITE_RINGS_F2: &[&[u64]] = &[&[6, 13, 28], &[4, 13, 18]];

const MIN_INSTANCES: usize = 20;

fn criterion_5(s: Setup) -> Outcome {
    let mut runs: Vec<(u32, &[u64])> = Vec::new();
    for p in [2, 3] {
        runs.extend(SUITE_RINGS.iter().map(|g| (p, *g)));
    }
    runs.extend(SUITE_RINGS_F2.iter().map(|g| (2, *g)));
    let mut totals: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut fp = String::new();
    for (p, gens) in runs {
        let r = s.ring(p, gens);
        let frob = r.value_semigroup().frobenius();
        ensure(frob <= 40, || {
            format!("{gens:?} has Frobenius number {frob}")
        })?;
        let checks = property_suite(&r, &s.opts(), &SuiteLimits::default())
            .map_err(|e| format!("{gens:?}/F_{p}: {e}"))?;
        for c in &checks {
            ensure(c.passed(), || {
                format!("{gens:?}/F_{p} {}: {}", c.tag, c.failures.join("; "))
            })?;
            *totals.entry(c.tag).or_default() += c.instances;
            fp += &format!("{gens:?}/{p} {} {}\n", c.tag, c.instances);
        }
    }
    for (tag, n) in &totals {
        ensure(*n >= MIN_INSTANCES, || format!("{tag}: only {n} instances"))?;
    }
    let summary: Vec<String> = totals.iter().map(|(t, n)| format!("{t}={n}")).collect();
    fp += &format!("instances: {}", summary.join(", "));
    Ok(fp)
}

fn criterion_6(s: Setup) -> Outcome {
    let mut rings: Vec<(u32, &[u64])> =
        vec![(2, &[5, 7, 9, 13]), (3, &[5, 7, 9, 13]), (2, &[6, 13, 28])];
    for p in [2, 3, 5] {
        rings.push((p, &[4, 9, 15]));
        rings.push((p, &[3, 7]));
    }
    for g in [&[4, 5, 6, 7][..], &[3, 4, 5], &[5, 6, 7, 8, 9], &[3, 7, 8]] {
        rings.push((2, g));
        rings.push((3, g));
    }
    let mut fp = String::new();
    for (p, gens) in rings {
        let r = s.ring(p, gens);
        let strategy = choose_strategy(&r).map_err(err)?;
        ensure(strategy != Strategy::Fallback, || {
            format!("{gens:?}/F_{p} has no fast path")
        })?;
        let fast = enumerate_with(&r, strategy, &s.opts())
            .map_err(err)?
            .certificates;
        let slow = enumerate_fallback(&r, &s.opts()).map_err(err)?.certificates;
        ensure(lattices(&fast) == lattices(&slow), || {
            format!("{gens:?}/F_{p}: {strategy:?} and fallback disagree")
        })?;
        if strategy == Strategy::Ggl {
            let g = build_ggl_profile(&r).map_err(err)?;
            let above = lattices(&ulrich_above_c(&r, &g).map_err(err)?);
            let filtered: BTreeSet<_> = slow
                .iter()
                .map(|c| c.ideal.clone())
                .filter(|i| g.conductor.is_subset_of(i) && *i != g.conductor)
                .collect();
            ensure(g.gorenstein || above == filtered, || {
                format!("{gens:?}/F_{p}: ideals above 𝔠 disagree")
            })?;
        }
        fp += &format!("{gens:?}/{p} {strategy:?} [{}]\n", fingerprint(&fast));
    }
    Ok(fp)
}

type Check = fn(Setup) -> Outcome;

const REPLAYED: [(usize, Check); 5] = [
    (1, criterion_1),
    (2, criterion_2),
    (3, criterion_3),
    (4, criterion_4),
    (5, criterion_5),
];

fn criterion_7(_: Setup) -> Outcome {
    let variants = [
        Setup {
            extra_trunc: 8,
            ..Setup::BASE
        },
        Setup {
            threads: Some(1),
            ..Setup::BASE
        },
    ];
    for (n, check) in REPLAYED {
        let base = check(Setup::BASE).map_err(|e| format!("criterion {n} at base setup: {e}"))?;
        for v in variants {
            let other = check(v).map_err(|e| format!("criterion {n} with {v:?}: {e}"))?;
            ensure(other == base, || {
                format!("criterion {n} differs with {v:?}")
            })?;
        }
    }
    Ok(String::new())
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, Check, u64); 7] = [
        (
            1,
            "<5,7,9,13> over F_2, F_3: S, 𝔠, GGL, empty set",
            criterion_1,
            10,
        ),
        (
            2,
            "<4,9,15> over F_2, F_3, F_5: the set is {𝔠 = t^9 S}",
            criterion_2,
            10,
        ),
        (
            3,
            "<6,13,28> over F_2: families above 𝔠 and maximal chains",
            criterion_3,
            300,
        ),
        (
            4,
            "<3,7> over F_2, F_3, F_5: q - 1 ideals, order",
            criterion_4,
            60,
        ),
        (
            5,
            "property suite, >= 20 instances per property",
            criterion_5,
            600,
        ),
        (
            6,
            "fast paths agree with the fallback enumerator",
            criterion_6,
            300,
        ),
        (
            7,
            "criteria 1-5 at N + 8 and with 1 thread",
            criterion_7,
            1800,
        ),
    ];
    let mut failed = 0;
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check(Setup::BASE);
        let elapsed = start.elapsed();
        if let (5, Ok(fp)) = (n, &outcome) {
            println!("    {}", fp.lines().last().unwrap_or_default());
        }
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("exceeded {limit} s")),
            other => other.map(|_| ()),
        };
        match outcome {
            Ok(()) => println!(
                "criterion {n}: PASS  {name}  ({:.2} s, limit {limit} s)",
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {n}: FAIL  {name}  ({:.2} s, limit {limit} s): {why}",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
