//! Command-line front end: parse a job, dispatch it, report the outcome.
//!
//! Exit status is 0 for a true verdict or a successful construction, 1 for a
//! false verdict or nothing constructed, and 2 for input or bound errors.

mod input;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use input::{parse_input, InputError, JobOptions, JobSpec, SET_NAMES};
pub use report::{Certificate, Report, SCHEMA_VERSION};

use crate::acceptance;
use crate::construct::{general_position_tiling, prime_size_tiles_z, prime_tile_spectrum, LineDecision};
use crate::error::Error;
use crate::fourier::PointMultiset;
use crate::group::{equivalence_classes, GroupContext, DEFAULT_ENUMERATION_BOUND};
use crate::verify::{
    search_spectrum, search_tiling_complement, verify_spectral, verify_tiling, verify_tiling_direct, SearchOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyTiling,
    VerifySpectral,
    ConstructSpectrum,
    ConstructComplement,
    Classes,
    SearchComplement,
    SearchSpectrum,
    #[value(name = "check-1d")]
    #[serde(rename = "check-1d")]
    Check1d,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyTiling => "verify-tiling",
            Command::VerifySpectral => "verify-spectral",
            Command::ConstructSpectrum => "construct-spectrum",
            Command::ConstructComplement => "construct-complement",
            Command::Classes => "classes",
            Command::SearchComplement => "search-complement",
            Command::SearchSpectrum => "search-spectrum",
            Command::Check1d => "check-1d",
            Command::Selftest => "selftest",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::value_variants().iter().copied().find(|c| c.name() == name)
    }
}

/// Exact verification and construction of tiling and spectral pairs in Z_n^d.
#[derive(Debug, Parser)]
#[command(name = "fuglede", version)]
pub struct Cli {
    /// Command to run; inferred from the sets in the input when omitted.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Job file (JSON); standard input when omitted.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Emit the machine-readable report.
    #[arg(long)]
    pub json: bool,
    /// Largest group the command may enumerate or search.
    #[arg(long, value_name = "N")]
    pub bound: Option<u64>,
    /// Moduli tried by search-complement when the job has no `n`.
    #[arg(long, value_name = "A..B", value_parser = parse_range)]
    pub scan_n: Option<(u64, u64)>,
    /// Reject coordinates outside [0, n) instead of reducing them.
    #[arg(long)]
    pub strict: bool,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected A..B")?;
    let lo: u64 = lo.trim().parse().map_err(|e| format!("{lo}: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("{hi}: {e}"))?;
    if lo == 0 || lo > hi {
        return Err("expected 1 ≤ A ≤ B".into());
    }
    Ok((lo, hi))
}

#[derive(Debug)]
pub enum CliError {
    Input(InputError),
    Run(Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "input error: {e}"),
            CliError::Run(e) => write!(f, "error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

const SIZE_NOTE: &str = "the Fourier tiling criterion compares |A|·|B| with the group order n^d; \
                         the n² form is the special case d = 2";

/// Jobs exercised by `selftest`, with the exit code each must produce.
pub const FIXTURES: [(&str, i32); 10] = [
    (r#"{"n":3,"d":2,"A":[[0,0],[1,0],[0,2]],"B":[[0,0],[1,2],[2,1]]}"#, 0),
    (r#"{"n":6,"A":[0,1,5],"S":[0,2,4]}"#, 0),
    (r#"{"n":6,"A":[0,1,5]}"#, 0),
    (r#"{"command":"check-1d","A":[0,3,4]}"#, 1),
    (r#"{"command":"check-1d","A":[0,1,5]}"#, 0),
    (r#"{"points":[[0,0],[2,0],[0,1]]}"#, 0),
    (r#"{"command":"classes","n":6}"#, 0),
    (r#"{"command":"search-complement","n":8,"A":[0,1,3,4]}"#, 1),
    (r#"{"command":"search-spectrum","n":6,"A":[0,1,3]}"#, 1),
    (r#"{"command":"search-spectrum","n":6,"A":[0,1,5]}"#, 0),
];

struct Ctx {
    ctx: Option<GroupContext>,
    opts: SearchOptions,
}

impl Ctx {
    fn new(job: &JobSpec) -> Result<Ctx, CliError> {
        let mut opts = SearchOptions::default();
        if let Some(b) = job.options.bound {
            opts.max_group = b;
        }
        let ctx = match job.n {
            Some(n) => Some(
                GroupContext::new(n, job.d)?.with_bound(job.options.bound.unwrap_or(DEFAULT_ENUMERATION_BOUND)),
            ),
            None => None,
        };
        Ok(Ctx { ctx, opts })
    }

    fn group(&self) -> &GroupContext {
        self.ctx.as_ref().expect("validated jobs carry n")
    }

    fn mask(&self, job: &JobSpec, name: &str) -> Result<PointMultiset, CliError> {
        let g = self.group();
        let pts = job.set(name).expect("validated jobs carry their sets");
        let elems = pts.iter().map(|p| g.element(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(PointMultiset::from_set(g, elems)?)
    }
}

struct Outcome {
    verdict: bool,
    summary: String,
    certificates: Vec<Certificate>,
    constructed: Option<Value>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(verdict: bool, summary: impl Into<String>) -> Self {
        Outcome {
            verdict,
            summary: summary.into(),
            certificates: Vec::new(),
            constructed: None,
            notes: Vec::new(),
        }
    }

    fn cert(mut self, c: Certificate) -> Self {
        self.certificates.push(c);
        self
    }

    fn built<T: Serialize>(mut self, v: &T) -> Self {
        self.constructed = Some(serde_json::to_value(v).expect("constructed objects serialize"));
        self
    }
}

fn group_label(job: &JobSpec) -> String {
    match job.n {
        Some(n) => format!("Z_{n}^{}", job.d),
        None => format!("Z^{}", job.d),
    }
}

/// Runs a validated job.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let start = Instant::now();
    let env = Ctx::new(job)?;
    let label = group_label(job);
    let out = match job.command {
        Command::VerifyTiling => {
            let c = verify_tiling(&env.mask(job, "A")?, &env.mask(job, "B")?)?;
            let summary = if c.verdict {
                format!("A ⊕ B = {label}")
            } else {
                format!("A and B do not tile {label}")
            };
            let mut o = Outcome::new(c.verdict, summary).cert(Certificate::Tiling(c));
            o.notes.push(SIZE_NOTE.into());
            o
        }
        Command::VerifySpectral => {
            let c = verify_spectral(&env.mask(job, "A")?, &env.mask(job, "S")?.to_vec())?;
            let summary = if c.verdict {
                "S is a spectrum for A".to_string()
            } else {
                "S is not a spectrum for A".to_string()
            };
            Outcome::new(c.verdict, summary).cert(Certificate::Spectral(c))
        }
        Command::ConstructSpectrum => match prime_tile_spectrum(&env.mask(job, "A")?, &env.opts) {
            Ok(s) => Outcome::new(true, format!("spectrum from the class of {}", s.chosen_class.canonical))
                .cert(Certificate::Spectral(s.certificate.clone()))
                .built(&json!({"class": s.chosen_class, "spectrum": s.derived})),
            Err(e @ (Error::NotATile | Error::NoAnnihilatedClass(_))) => Outcome::new(false, e.to_string()),
            Err(e) => return Err(e.into()),
        },
        Command::ConstructComplement => {
            let pts = job.set("points").expect("validated");
            match general_position_tiling(pts, &env.opts) {
                Ok(r) => {
                    let mut o = Outcome::new(true, format!("complement {}", r.complement_descr))
                        .cert(Certificate::Tiling(r.image_pair.clone()))
                        .cert(Certificate::Spectral(r.spectral.clone()))
                        .built(&json!({
                            "functional_w": r.functional_w,
                            "modulus": r.modulus,
                            "route": r.route,
                            "complement": r.complement_descr,
                            "spectrum": r.spectrum,
                            "fallback_used": r.fallback_used,
                        }));
                    if r.fallback_used {
                        o.notes.push(format!(
                            "no functional separates the points mod {}; the adjugate lift into Z_{} was used",
                            pts.len(),
                            r.modulus
                        ));
                    }
                    o
                }
                Err(e @ Error::NotConstructed(_)) => Outcome::new(false, e.to_string()),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Classes => {
            let classes = equivalence_classes(env.group())?;
            Outcome::new(true, format!("{} classes in {label}", classes.len())).built(&classes)
        }
        Command::SearchComplement => search_complement(job, &env)?,
        Command::SearchSpectrum => {
            let a = env.mask(job, "A")?;
            match search_spectrum(&a, &env.opts)? {
                Some(s) => {
                    let c = verify_spectral(&a, &s)?;
                    Outcome::new(c.verdict, "spectrum found").cert(Certificate::Spectral(c)).built(&s)
                }
                None => Outcome::new(false, format!("A has no spectrum in {label}")),
            }
        }
        Command::Check1d => {
            let pts = job.set("A").or_else(|| job.set("points")).expect("validated");
            let ints: Vec<i64> = pts.iter().map(|p| p[0]).collect();
            match prime_size_tiles_z(&ints)? {
                LineDecision::Tiles {
                    k,
                    period,
                    complement,
                    certificate,
                } => Outcome::new(true, format!("tiles Z with complement {complement:?} + {period}Z"))
                    .cert(Certificate::Tiling(certificate))
                    .built(&json!({"decision": "tiles", "k": k, "period": period, "complement": complement})),
                LineDecision::NonTile => {
                    Outcome::new(false, "does not tile Z").built(&json!({"decision": "non_tile"}))
                }
            }
        }
        Command::Selftest => selftest()?,
    };
    let input: Value = serde_json::from_str(&job.emit()).expect("emitted jobs are JSON");
    Ok(Report {
        schema: SCHEMA_VERSION,
        command: job.command,
        input,
        verdict: out.verdict,
        summary: out.summary,
        certificates: out.certificates,
        constructed: out.constructed,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        notes: out.notes,
        warnings: Vec::new(),
    })
}

fn search_complement(job: &JobSpec, env: &Ctx) -> Result<Outcome, CliError> {
    if job.n.is_some() {
        let a = env.mask(job, "A")?;
        return Ok(match search_tiling_complement(&a, &env.opts)? {
            Some(b) => {
                let c = verify_tiling_direct(&a, &PointMultiset::from_set(a.ctx(), b.iter().cloned())?)?;
                Outcome::new(c.verdict, "complement found").cert(Certificate::Tiling(c)).built(&b)
            }
            None => Outcome::new(false, format!("A does not tile {}", group_label(job))),
        });
    }
    let (lo, hi) = job.options.scan_n.expect("validated");
    let pts = job.set("A").expect("validated");
    let mut skipped = 0;
    for n in lo..=hi {
        let g = GroupContext::new(n, job.d)?.with_bound(env.opts.max_group);
        let (a, injective) = PointMultiset::from_int_points(&g, pts)?;
        if !injective || g.size().is_err() {
            skipped += 1;
            continue;
        }
        match search_tiling_complement(&a, &env.opts) {
            Ok(Some(b)) => {
                let c = verify_tiling_direct(&a, &PointMultiset::from_set(&g, b.iter().cloned())?)?;
                let mut o = Outcome::new(c.verdict, format!("π_{n}(A) tiles Z_{n}^{}", job.d))
                    .cert(Certificate::Tiling(c))
                    .built(&json!({"n": n, "complement": b}));
                o.notes.push(format!(
                    "A tiles Z^{} with the periodic complement B + {n}Z^{}",
                    job.d, job.d
                ));
                return Ok(o);
            }
            Ok(None) => {}
            Err(Error::SearchBound { .. } | Error::NodeLimit { .. } | Error::EnumerationBound { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let mut o = Outcome::new(false, format!("inconclusive: no modulus in {lo}..{hi} gave a complement"));
    o.notes.push(format!(
        "a miss does not show that A fails to tile Z^{}; {skipped} moduli skipped (collision or bound)",
        job.d
    ));
    Ok(o)
}

/// Runs every fixture through parse, emit and report round trips, then the acceptance suite.
fn selftest() -> Result<Outcome, CliError> {
    let mut problems = Vec::new();
    for (text, expected) in FIXTURES {
        match fixture_roundtrip(text, expected) {
            Ok(()) => {}
            Err(e) => problems.push(format!("{text}: {e}")),
        }
    }
    let outcomes = acceptance::run_all();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut o = Outcome::new(
        problems.is_empty() && passed == outcomes.len(),
        format!(
            "{} of {} fixtures round-trip; {passed} of {} criteria pass",
            FIXTURES.len() - problems.len(),
            FIXTURES.len(),
            outcomes.len()
        ),
    )
    .built(&outcomes);
    o.notes = outcomes.iter().map(ToString::to_string).chain(problems).collect();
    Ok(o)
}

fn fixture_roundtrip(text: &str, expected: i32) -> Result<(), String> {
    let opts = JobOptions::default();
    let (job, _) = parse_input(text, None, &opts).map_err(|e| e.to_string())?;
    let emitted = job.emit();
    let (again, _) = parse_input(&emitted, None, &opts).map_err(|e| e.to_string())?;
    if again != job || again.emit() != emitted {
        return Err("emit/parse is not idempotent".into());
    }
    let report = run(&job).map_err(|e| e.to_string())?;
    if report.exit_code() != expected {
        return Err(format!("exit code {} (expected {expected})", report.exit_code()));
    }
    let parsed = Report::from_json(&report.to_json()).map_err(|e| e.to_string())?;
    if parsed != report {
        return Err("report does not survive a JSON round trip".into());
    }
    match parsed.recheck() {
        Ok(true) => Ok(()),
        Ok(false) => Err("certificates do not reproduce the verdict".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Parses and runs one invocation; returns the text to print and the exit status.
pub fn execute(cli: &Cli, stdin: impl FnOnce() -> std::io::Result<String>) -> (String, i32) {
    match execute_inner(cli, stdin) {
        Ok((report, warnings)) => {
            let mut report = report;
            report.warnings = warnings;
            let text = if cli.json { report.to_json() } else { report.render_text() };
            (text, report.exit_code())
        }
        Err(e) => (e.to_string(), 2),
    }
}

fn execute_inner(
    cli: &Cli,
    stdin: impl FnOnce() -> std::io::Result<String>,
) -> Result<(Report, Vec<String>), CliError> {
    let options = JobOptions {
        bound: cli.bound,
        strict: cli.strict,
        scan_n: cli.scan_n,
    };
    let (job, warnings) = if cli.command == Some(Command::Selftest) && cli.input.is_none() {
        let job = JobSpec {
            command: Command::Selftest,
            n: None,
            d: 1,
            sets: Default::default(),
            options,
        };
        (job, Vec::new())
    } else {
        let text = match &cli.input {
            Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => stdin().map_err(|e| CliError::Io(e.to_string()))?,
        };
        parse_input(&text, cli.command, &options)?
    };
    Ok((run(&job)?, warnings))
}
