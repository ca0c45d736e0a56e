//! The `ulrich` command line: ring specs in, versioned JSON reports out.

mod cache;
mod parse;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use cache::{cache_key, default_dir, sha256_hex, Cache, CACHE_DIR_ENV};
pub use parse::{parse_generators, parse_series, Parsed, RingSpec};
pub use report::{render_text, SCHEMA_VERSION};

use crate::error::{Error, Result};
use crate::ggl::{build_ggl_profile, enumerate_ggl};
use crate::ideals::{ring_profile, FractionalIdeal, LocalRing};
use crate::ulrich::{
    chain_factorize, enumerate_ulrich, is_ulrich, maximal_chains, property_suite, transport,
    SearchOptions, SuiteLimits,
};
use report::*;

#[derive(Debug, Parser)]
#[command(
    name = "ulrich",
    version,
    about = "Ulrich ideals of one-dimensional local rings over F_p"
)]
pub struct Cli {
    /// Ring specification file (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Ring generators, comma separated, e.g. "t^3, t^7".
    #[arg(long, global = true, value_name = "GENS", conflicts_with = "spec")]
    ring: Option<String>,
    /// Prime p of the coefficient field.
    #[arg(long, global = true)]
    field: Option<u32>,
    /// Truncation order N.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Cap on enumerated candidates.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Neither read nor write the report cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for the searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ring invariants together with every Ulrich ideal and its chains.
    Analyze,
    /// Ulrich ideal queries.
    Ulrich {
        #[command(subcommand)]
        action: UlrichAction,
    },
    /// Maximal Ulrich chains ending at an Ulrich ideal, with their factors.
    Chain {
        #[arg(long, value_name = "GENS")]
        ideal: String,
    },
    /// Division by b between Ulrich ideals I ⊊ J and the blow-up J:J.
    Transport {
        #[arg(long, value_name = "GENS")]
        inner: String,
        #[arg(long, value_name = "GENS")]
        outer: String,
    },
    /// GGL classification through S = R[K] and 𝔠 = R:S.
    Ggl,
    /// Runs the structural property suite on the ring.
    Selftest,
}

#[derive(Debug, Subcommand)]
enum UlrichAction {
    /// Every Ulrich ideal, in report order.
    List,
    /// Tests one ideal.
    Check {
        #[arg(long, value_name = "GENS")]
        ideal: String,
    },
}

impl Command {
    fn key(&self) -> String {
        match self {
            Command::Analyze => "analyze".into(),
            Command::Ulrich {
                action: UlrichAction::List,
            } => "ulrich list".into(),
            Command::Ulrich {
                action: UlrichAction::Check { ideal },
            } => format!("ulrich check --ideal {ideal}"),
            Command::Chain { ideal } => format!("chain --ideal {ideal}"),
            Command::Transport { inner, outer } => {
                format!("transport --inner {inner} --outer {outer}")
            }
            Command::Ggl => "ggl".into(),
            Command::Selftest => "selftest".into(),
        }
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub cached: bool,
}

impl Cli {
    fn resolve_spec(&self) -> Result<RingSpec> {
        let mut spec = match (&self.spec, &self.ring) {
            (Some(path), _) => RingSpec::from_json(&std::fs::read_to_string(path)?)?,
            (None, Some(gens)) => RingSpec {
                field: self
                    .field
                    .ok_or_else(|| Error::Config("--ring needs --field".into()))?,
                generators: gens.split(',').map(|g| g.trim().to_string()).collect(),
                trunc: None,
                budget: None,
            },
            (None, None) => {
                return Err(Error::Config(
                    "give a ring with --spec FILE or --ring GENS".into(),
                ))
            }
        };
        if let Some(p) = self.field {
            spec.field = p;
        }
        if self.trunc.is_some() {
            spec.trunc = self.trunc;
        }
        if self.budget.is_some() {
            spec.budget = self.budget;
        }
        Ok(spec)
    }
}

struct Context {
    ring: LocalRing,
    opts: SearchOptions,
    warnings: Vec<String>,
}

impl Context {
    fn ideal(&mut self, text: &str) -> Result<FractionalIdeal> {
        let parsed = parse_generators(text, self.ring.field(), Some(self.ring.trunc()))?;
        self.warnings.extend(parsed.warnings);
        self.ring.ideal(&parsed.value)
    }
}

/// Payload of a command and whether it represents a passing result.
fn compute(cmd: &Command, cx: &mut Context) -> Result<(serde_json::Value, bool)> {
    fn value<T: Serialize>(v: T) -> Result<serde_json::Value> {
        serde_json::to_value(v).map_err(|e| Error::InvariantViolation(e.to_string()))
    }
    let ring = cx.ring.clone();
    let opts = cx.opts;
    let payload = match cmd {
        Command::Analyze => {
            let ggl = if ring.is_monomial() {
                Some(GglSummary::new(&ring, &build_ggl_profile(&ring)?)?)
            } else {
                None
            };
            let en = enumerate_ulrich(&ring, &opts)?;
            value(Analysis {
                ggl,
                strategy: en.strategy,
                nodes: en.nodes,
                chains: maximal_chains(&en.certificates),
                hasse: inclusions(&en.certificates),
                ulrich_set: IdealReport::all(&ring, &en.certificates)?,
            })?
        }
        Command::Ulrich {
            action: UlrichAction::List,
        } => {
            let en = enumerate_ulrich(&ring, &opts)?;
            value(UlrichList {
                strategy: en.strategy,
                nodes: en.nodes,
                ulrich_set: IdealReport::all(&ring, &en.certificates)?,
            })?
        }
        Command::Ulrich {
            action: UlrichAction::Check { ideal },
        } => {
            let i = cx.ideal(ideal)?;
            let verdict = is_ulrich(&ring, &i)?;
            value(CheckOutcome {
                input: ideal.clone(),
                lattice: i.describe(),
                ulrich: verdict.is_ok(),
                certificate: verdict
                    .as_ref()
                    .ok()
                    .map(|c| IdealReport::new(&ring, c))
                    .transpose()?,
                reason: verdict.err().map(|f| f.reason()),
            })?
        }
        Command::Chain { ideal } => {
            let i = cx.ideal(ideal)?;
            let base = is_ulrich(&ring, &i)?
                .map_err(|why| Error::Domain(format!("{i} is not Ulrich: {why}")))?;
            let above: Vec<_> = enumerate_ulrich(&ring, &opts)?
                .certificates
                .into_iter()
                .filter(|c| i.is_subset_of(&c.ideal))
                .collect();
            let mut chains = Vec::new();
            for path in maximal_chains(&above) {
                let links: Vec<_> = path.iter().map(|&k| above[k].ideal.clone()).collect();
                let rep = chain_factorize(&ring, &links)?;
                chains.push(ChainEntry {
                    links: links
                        .iter()
                        .map(|l| ideal_strings(&ring, l))
                        .collect::<Result<_>>()?,
                    factors: rep.factors.iter().map(|a| a.to_string()).collect(),
                });
            }
            value(ChainOutcome {
                base: IdealReport::new(&ring, &base)?,
                chains,
            })?
        }
        Command::Transport { inner, outer } => {
            let i = cx.ideal(inner)?;
            let j = cx.ideal(outer)?;
            let t = transport(&ring, &i, &j, &opts)?;
            let pairs = t
                .pairs
                .iter()
                .map(|(a, q)| {
                    Ok(TransportPair {
                        ideal: ideal_strings(&ring, a)?,
                        image: ideal_strings(&t.blowup, q)?,
                    })
                })
                .collect::<Result<_>>()?;
            value(TransportOutcome {
                b: t.b.to_string(),
                image: ideal_strings(&t.blowup, &t.image)?,
                blowup: RingSummary::new(&t.blowup, ring_profile(&t.blowup)?),
                pairs,
            })?
        }
        Command::Ggl => {
            let g = build_ggl_profile(&ring)?;
            let ulrich_set = if g.is_ggl {
                let w = enumerate_ggl(&ring, &g, &opts)?;
                Some(IdealReport::all(&ring, &w.certificates)?)
            } else {
                None
            };
            value(GglOutcome {
                summary: GglSummary::new(&ring, &g)?,
                ulrich_set,
            })?
        }
        Command::Selftest => {
            let checks = property_suite(&ring, &opts, &SuiteLimits::default())?;
            let passed = checks.iter().all(|c| c.passed());
            return Ok((value(SelftestOutcome { passed, checks })?, passed));
        }
    };
    Ok((payload, true))
}

/// Builds the report JSON for a parsed command line.
fn report_json(cli: &Cli, spec: &RingSpec, spec_json: &str) -> Result<(String, bool)> {
    let built = spec.build()?;
    let mut cx = Context {
        opts: spec.search_options(cli.threads),
        ring: built.value,
        warnings: built.warnings,
    };
    let (result, passed) = compute(&cli.command, &mut cx)?;
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command: cli.command.key(),
        provenance: Provenance {
            tool: "ulrich",
            version: env!("CARGO_PKG_VERSION"),
            spec_sha256: sha256_hex(spec_json.as_bytes()),
        },
        ring: RingSummary::new(&cx.ring, ring_profile(&cx.ring)?),
        warnings: cx.warnings,
        result,
    };
    let mut text = serde_json::to_string_pretty(&envelope).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    Ok((text, passed))
}

fn error_json(e: &Error) -> String {
    let v = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "reason": e.reason(), "message": e.to_string(), "exit_code": e.exit_code() },
    });
    format!("{}\n", serde_json::to_string_pretty(&v).unwrap_or_default())
}

fn render(report: &str, json: bool) -> String {
    if json {
        return report.to_string();
    }
    match serde_json::from_str::<serde_json::Value>(report) {
        Ok(v) => render_text(&v),
        Err(_) => report.to_string(),
    }
}

/// Runs a parsed command line against an optional cache.
pub fn execute(cli: &Cli, cache: Option<&Cache>) -> Invocation {
    let mut out = Invocation {
        stdout: String::new(),
        stderr: String::new(),
        code: 0,
        cached: false,
    };
    let fail = |mut out: Invocation, e: Error| {
        if cli.json {
            out.stdout = error_json(&e);
        } else {
            out.stderr = format!("error: {e}\n");
        }
        out.code = e.exit_code();
        out
    };
    let spec = match cli.resolve_spec() {
        Ok(s) => s,
        Err(e) => return fail(out, e),
    };
    let spec_json = serde_json::to_string(&spec).unwrap_or_default();
    let key = cache_key(&spec_json, &cli.command.key());
    let cache = cache.filter(|_| !cli.no_cache);
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        let passed = serde_json::from_str::<serde_json::Value>(&hit)
            .ok()
            .and_then(|v| v["result"]["passed"].as_bool())
            .unwrap_or(true);
        out.stdout = render(&hit, cli.json);
        out.code = if passed { 0 } else { 1 };
        out.cached = true;
        return out;
    }
    match report_json(cli, &spec, &spec_json) {
        Ok((report, passed)) => {
            if let Some(c) = cache {
                if let Err(e) = c.put(&key, &report) {
                    out.stderr =
                        format!("warning: cache not written to {}: {e}\n", c.dir().display());
                }
            }
            out.stdout = render(&report, cli.json);
            out.code = if passed { 0 } else { 1 };
            out
        }
        Err(e) => fail(out, e),
    }
}

/// Parses `args` (including the program name) and runs them with the default cache.
pub fn run_args<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, Some(&Cache::new(default_dir()))),
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            Invocation {
                stdout,
                stderr,
                code,
                cached: false,
            }
        }
    }
}

pub fn main() -> std::process::ExitCode {
    use std::io::Write;
    let inv = run_args(std::env::args_os());
    let _ = std::io::stdout().write_all(inv.stdout.as_bytes());
    let _ = std::io::stderr().write_all(inv.stderr.as_bytes());
    std::process::ExitCode::from(inv.code.clamp(0, 255) as u8)
}
