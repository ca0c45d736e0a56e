//! Report payloads and the text view derived from their JSON.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::ggl::GglProfile;
use crate::ideals::{Elem, FractionalIdeal, LocalRing, RingProfile};
use crate::ulrich::{PropertyCheck, Strategy, UlrichCertificate};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub spec_sha256: String,
}

#[derive(Serialize)]
pub struct RingSummary {
    pub field: u32,
    pub trunc: usize,
    pub generators: Vec<String>,
    pub lattice: String,
    pub profile: RingProfile,
}

impl RingSummary {
    pub fn new(ring: &LocalRing, profile: RingProfile) -> Self {
        RingSummary {
            field: ring.field().modulus(),
            trunc: ring.trunc(),
            generators: ring
                .max_ideal_generators()
                .iter()
                .map(Elem::to_string)
                .collect(),
            lattice: ring.describe(),
            profile,
        }
    }
}

/// An ideal with the data of its Ulrich certificate.
#[derive(Serialize)]
pub struct IdealReport {
    pub generators: Vec<String>,
    pub lattice: String,
    pub values: Vec<i64>,
    pub conductor: i64,
    pub colength: usize,
    pub mu: usize,
    pub rank: usize,
    pub reduction: String,
}

impl IdealReport {
    pub fn new(ring: &LocalRing, cert: &UlrichCertificate) -> Result<Self> {
        Ok(IdealReport {
            generators: ring.render_generators(&cert.ideal)?,
            lattice: cert.ideal.describe(),
            values: cert.ideal.values_below_conductor(),
            conductor: cert.ideal.conductor(),
            colength: cert.colength,
            mu: cert.mu,
            rank: cert.rank,
            reduction: cert.reduction.to_string(),
        })
    }

    pub fn all(ring: &LocalRing, certs: &[UlrichCertificate]) -> Result<Vec<Self>> {
        certs.iter().map(|c| IdealReport::new(ring, c)).collect()
    }
}

/// Strict inclusions (smaller, larger) by index; transitively closed.
pub fn inclusions(certs: &[UlrichCertificate]) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for (a, x) in certs.iter().enumerate() {
        for (b, y) in certs.iter().enumerate() {
            if a != b && x.ideal.is_subset_of(&y.ideal) {
                out.push([a, b]);
            }
        }
    }
    out
}

#[derive(Serialize)]
pub struct GglSummary {
    pub canonical: Vec<String>,
    pub blowup_generators: Vec<String>,
    pub blowup_semigroup: Vec<u64>,
    pub conductor: Vec<String>,
    pub gorenstein: bool,
    pub is_ggl: bool,
    pub s_gorenstein: bool,
    pub c_ulrich: bool,
    pub r: usize,
    pub stable_power: usize,
}

impl GglSummary {
    pub fn new(ring: &LocalRing, g: &GglProfile) -> Result<Self> {
        Ok(GglSummary {
            canonical: ring.render_generators(&g.canonical)?,
            blowup_generators: ring.render_generators(g.blowup.carrier())?,
            blowup_semigroup: g.blowup.value_semigroup().generators().to_vec(),
            conductor: ring.render_generators(&g.conductor)?,
            gorenstein: g.gorenstein,
            is_ggl: g.is_ggl,
            s_gorenstein: g.s_gorenstein,
            c_ulrich: g.c_ulrich,
            r: g.r,
            stable_power: g.stable_power,
        })
    }
}

#[derive(Serialize)]
pub struct Analysis {
    pub ggl: Option<GglSummary>,
    pub strategy: Strategy,
    pub nodes: u64,
    pub ulrich_set: Vec<IdealReport>,
    /// Index paths, largest ideal first.
    pub chains: Vec<Vec<usize>>,
    pub hasse: Vec<[usize; 2]>,
}

#[derive(Serialize)]
pub struct UlrichList {
    pub strategy: Strategy,
    pub nodes: u64,
    pub ulrich_set: Vec<IdealReport>,
}

#[derive(Serialize)]
pub struct CheckOutcome {
    pub input: String,
    pub lattice: String,
    pub ulrich: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<IdealReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
}

#[derive(Serialize)]
pub struct ChainEntry {
    pub links: Vec<Vec<String>>,
    pub factors: Vec<String>,
}

#[derive(Serialize)]
pub struct ChainOutcome {
    pub base: IdealReport,
    pub chains: Vec<ChainEntry>,
}

#[derive(Serialize)]
pub struct TransportPair {
    pub ideal: Vec<String>,
    pub image: Vec<String>,
}

#[derive(Serialize)]
pub struct TransportOutcome {
    pub b: String,
    pub blowup: RingSummary,
    pub image: Vec<String>,
    pub pairs: Vec<TransportPair>,
}

#[derive(Serialize)]
pub struct GglOutcome {
    #[serde(flatten)]
    pub summary: GglSummary,
    pub ulrich_set: Option<Vec<IdealReport>>,
}

#[derive(Serialize)]
pub struct SelftestOutcome {
    pub passed: bool,
    pub checks: Vec<PropertyCheck>,
}

/// The top-level report object.
#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub command: String,
    pub provenance: Provenance,
    pub ring: RingSummary,
    pub warnings: Vec<String>,
    pub result: T,
}

pub fn ideal_strings(ring: &LocalRing, i: &FractionalIdeal) -> Result<Vec<String>> {
    ring.render_generators(i)
}

/// Indented key/value view of a JSON report.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a)
            if a.iter().all(|x| {
                x.as_array()
                    .is_some_and(|y| y.iter().all(|z| z.is_number()))
            }) =>
        {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(" "))
        }
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (n, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}[{n}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{n}]\n"));
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
