//! `swfcalc`: evaluates Pin(2)-equivariant invariants of spaces of type SWF
//! and of Floer data from JSON input files.
//!
//! [`run`] is the whole program; `main` only forwards its streams and exit
//! code.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use swf_core::floer::{
    assemble_moy, brieskorn, cobordism_check, invariants, orientation_reverse, BrieskornFamily,
    CobordismData, FloerContext, InvariantReport,
};
use swf_core::selfcheck;
use swf_core::swfclass::{
    dualize, from_rep_sphere, from_unreduced_suspension, suspend, RepDesc, SwfClass,
};
use swf_core::Error;

pub mod cache;
pub mod input;
pub mod output;
pub mod render;

use cache::Cache;
use input::{InputFile, SpaceSpec};
use output::Degrees;
use render::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "swfcalc",
    version,
    about = "Invariants of spaces of type SWF and Pin(2)-equivariant Floer data"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "md")]
    format: Format,
    /// Degree range LO..HI of homology tables (default: a-12..a+8).
    #[arg(long, global = true, value_parser = parse_degrees, allow_hyphen_values = true)]
    degrees: Option<Degrees>,
    /// Cache directory (overrides SWFCALC_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an input file.
    Eval { file: PathBuf },
    /// Invariants of the Brieskorn sphere Σ(p, q, n).
    Brieskorn { p: u64, q: u64, n: u64 },
    /// Invariants of Σ(p, q, n) for the four families and k = 1..K.
    Table {
        p: u64,
        q: u64,
        #[arg(long)]
        k_max: u64,
    },
    /// Evaluate the V-dual of the space in an input file.
    Dualize {
        file: PathBuf,
        #[arg(long)]
        rtilde: u32,
        #[arg(long)]
        quat: u32,
    },
    /// Invariants of the orientation reversal.
    Reverse { file: PathBuf },
    /// Check the constraints a cobordism from file0 to file1 imposes.
    CheckCobordism {
        file0: PathBuf,
        file1: PathBuf,
        #[arg(long)]
        b2: u32,
        #[arg(long)]
        negative_definite: bool,
        #[arg(long)]
        spin: bool,
    },
    /// Run the randomized self-check suites.
    Verify {
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Inspect or empty the result cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum CacheAction {
    Stats,
    Clear,
}

fn parse_degrees(s: &str) -> Result<Degrees, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got \"{s}\""))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|e| format!("bad bound \"{x}\": {e}"))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    if hi - lo > 10_000 {
        return Err("ranges are limited to 10000 degrees".into());
    }
    Ok((lo, hi))
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Ambiguous { .. } => EXIT_AMBIGUOUS,
            Error::InvalidModule(_) | Error::NotStabilized(_) | Error::InvalidComplex(_) => {
                EXIT_INTERNAL
            }
            _ => EXIT_INPUT,
        };
        let message = if code == EXIT_INTERNAL {
            format!("internal error: {e}")
        } else {
            e.to_string()
        };
        Self { code, message }
    }
}

impl From<input::InputError> for Failure {
    fn from(e: input::InputError) -> Self {
        Self::input(e.to_string())
    }
}

/// Runs the program on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };

    let mut cache = if cli.no_cache {
        Cache::disabled()
    } else {
        match cache::resolve_dir(cli.cache_dir.clone(), std::env::var(cache::ENV_VAR).ok()) {
            Some(dir) => Cache::open(&dir),
            None => {
                let mut c = Cache::disabled();
                c.warnings
                    .push("warning: no cache directory available; continuing without cache".into());
                c
            }
        }
    };

    let mut stderr = String::new();
    let result = dispatch(&cli, &mut cache, &mut stderr);
    for w in &cache.warnings {
        stderr.push_str(w);
        stderr.push('\n');
    }
    match result {
        Ok((value, code)) => Outcome {
            code,
            stdout: render::render(&value, cli.format),
            stderr,
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n{stderr}", f.message),
        },
    }
}

fn dispatch(cli: &Cli, cache: &mut Cache, stderr: &mut String) -> Result<(Value, i32), Failure> {
    let degrees = cli.degrees;
    let deg_arg = json!(degrees.map(|(lo, hi)| [lo, hi]));
    let material = |command: &str, args: Value, input: Value| json!({ "command": command, "args": args, "input": input });
    let value = match &cli.command {
        Command::Eval { file } => {
            let input = read_input(file)?;
            let m = material(
                "eval",
                json!({ "degrees": deg_arg }),
                input.document.clone(),
            );
            cache.get_or_compute(&m, || evaluate(&input.space, input.context, degrees))?
        }
        Command::Brieskorn { p, q, n } => {
            let space = brieskorn_input(*p, *q, *n)?;
            let m = material(
                "eval",
                json!({ "degrees": deg_arg }),
                json!({ "construct": "brieskorn", "p": p, "q": q, "n": n }),
            );
            cache.get_or_compute(&m, || evaluate(&space, None, degrees))?
        }
        Command::Table { p, q, k_max } => {
            brieskorn_input(*p, *q, 1)?;
            if *k_max == 0 || *k_max > 100_000 {
                return Err(Failure::input("--k-max must be between 1 and 100000"));
            }
            let m = material(
                "table",
                json!({ "k_max": k_max }),
                json!({ "p": p, "q": q }),
            );
            cache.get_or_compute(&m, || table(*p, *q, *k_max))?
        }
        Command::Dualize { file, rtilde, quat } => {
            let input = read_input(file)?;
            if !input.space.is_space() {
                return Err(Failure::input(format!(
                    "dualize needs a space, got a {} input",
                    input.space.construct()
                )));
            }
            if input.context.is_some() {
                stderr.push_str("note: the input's context is not carried over to the dual\n");
            }
            let mut doc = input.document.clone();
            if let Some(o) = doc.as_object_mut() {
                o.remove("context");
            }
            let space = SpaceSpec::Dualize {
                of: Box::new(input.space),
                rtilde: *rtilde,
                quat: *quat,
            };
            let wrapped =
                json!({ "construct": "dualize", "rtilde": rtilde, "quat": quat, "of": doc });
            let m = material("eval", json!({ "degrees": deg_arg }), wrapped);
            cache.get_or_compute(&m, || evaluate(&space, None, degrees))?
        }
        Command::Reverse { file } => {
            let input = read_input(file)?;
            let m = material("reverse", Value::Null, input.document.clone());
            cache.get_or_compute(&m, || reverse(&input))?
        }
        Command::CheckCobordism {
            file0,
            file1,
            b2,
            negative_definite,
            spin,
        } => {
            let (y0, y1) = (read_input(file0)?, read_input(file1)?);
            let c = CobordismData {
                b2: *b2,
                spin: *spin,
                negative_definite: *negative_definite,
            };
            let args = json!({ "b2": b2, "spin": spin, "negative_definite": negative_definite });
            let m = material("check-cobordism", args, json!([y0.document, y1.document]));
            cache.get_or_compute(&m, || check_cobordism(&y0, &y1, c))?
        }
        Command::Verify { iters, seed } => {
            let (value, failed) = verify(*iters, *seed, stderr);
            return Ok((value, if failed { EXIT_INTERNAL } else { EXIT_OK }));
        }
        Command::Cache { action } => {
            let Some(dir) = cache.dir().map(|d| d.display().to_string()) else {
                return Err(Failure::input("no usable cache directory"));
            };
            let io = |e: std::io::Error| Failure::input(format!("cache: {e}"));
            match action {
                CacheAction::Stats => {
                    let (entries, bytes) = cache.stats().map_err(io)?;
                    json!({ "kind": "cache", "directory": dir, "entries": entries, "bytes": bytes })
                }
                CacheAction::Clear => {
                    let removed = cache.clear().map_err(io)?;
                    json!({ "kind": "cache", "directory": dir, "removed": removed })
                }
            }
        }
    };
    Ok((value, EXIT_OK))
}

fn read_input(path: &PathBuf) -> Result<InputFile, Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    input::parse_input(&bytes).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn brieskorn_input(p: u64, q: u64, n: u64) -> Result<SpaceSpec, Failure> {
    if (p, q) != (2, 3) {
        return Err(Failure::input(format!(
            "only Σ(2, 3, n) is supported, got Σ({p}, {q}, n)"
        )));
    }
    Ok(SpaceSpec::Brieskorn { n })
}

fn build_class(s: &SpaceSpec) -> Result<SwfClass, Failure> {
    Ok(match s {
        SpaceSpec::RepSphere { rtilde, quat } => from_rep_sphere(*rtilde, *quat),
        SpaceSpec::UnreducedSuspension(k) => from_unreduced_suspension(k)?,
        SpaceSpec::Suspend { of, rtilde, quat } => {
            suspend(&build_class(of)?, RepDesc::new(*rtilde, *quat))
        }
        SpaceSpec::Dualize { of, rtilde, quat } => {
            dualize(&build_class(of)?, RepDesc::new(*rtilde, *quat))?
        }
        SpaceSpec::Moy(_) | SpaceSpec::Brieskorn { .. } => {
            return Err(Failure::input(format!(
                "a {} input is not a space",
                s.construct()
            )))
        }
    })
}

/// The invariant report of any input, with extra fields describing it.
fn report_of(
    s: &SpaceSpec,
    context: Option<FloerContext>,
) -> Result<(InvariantReport, Map<String, Value>), Failure> {
    let mut extra = Map::new();
    let report = match s {
        SpaceSpec::Moy(data) => {
            let a = assemble_moy(data)?;
            let (before, after) = a.euler_ledger();
            extra.insert("g_rank".into(), json!(a.g_rank));
            extra.insert("s1_rank".into(), json!(a.s1_rank));
            extra.insert("euler_before".into(), json!(before));
            extra.insert("euler_after".into(), json!(after));
            a.report()
        }
        SpaceSpec::Brieskorn { n } => {
            let r = brieskorn(*n)?;
            let (fam, k) = BrieskornFamily::classify(*n)?;
            extra.insert("family".into(), json!(fam.label()));
            extra.insert("k".into(), json!(k));
            r
        }
        _ => {
            let x = build_class(s)?;
            let ctx = context.unwrap_or(FloerContext {
                dim_v0tau: x.level,
                n: Default::default(),
            });
            extra.insert(
                "context".into(),
                json!({ "dim_v0tau": ctx.dim_v0tau, "n": output::eighths(ctx.n) }),
            );
            invariants(&x, ctx)?
        }
    };
    Ok((report, extra))
}

/// Centre of the default homology window: the degree of `a` in table degrees.
fn swfh_centre(r: &InvariantReport, context: Option<FloerContext>) -> i64 {
    let fractional = r
        .swfh
        .as_ref()
        .is_some_and(|t| t.fractional_shift.is_some());
    let n = context.map_or(Default::default(), |c| c.n);
    let doubled = if fractional { r.alpha + n } else { r.alpha };
    doubled.0.div_euclid(4)
}

fn evaluate(
    s: &SpaceSpec,
    context: Option<FloerContext>,
    degrees: Option<Degrees>,
) -> Result<Value, Failure> {
    let mut out = Map::new();
    let kind = if s.is_space() { "space" } else { "floer" };
    out.insert("kind".into(), json!(kind));
    out.insert("construct".into(), json!(s.construct()));
    let class = if s.is_space() {
        Some(build_class(s)?)
    } else {
        None
    };
    if let Some(x) = &class {
        output::class_fields(&mut out, x);
    }
    let (report, extra) = report_of(s, context)?;
    output::report_fields(&mut out, &report);
    out.extend(extra);
    if let Some(x) = &class {
        let range = output::window(x.abc().a, degrees);
        out.insert("borel".into(), output::borel_table(&x.borel, range));
    }
    output::swfh_fields(&mut out, &report, swfh_centre(&report, context), degrees);
    output::provenance(&mut out, &report.provenance);
    Ok(Value::Object(out))
}

fn reverse(input: &InputFile) -> Result<Value, Failure> {
    let (report, _) = report_of(&input.space, input.context)?;
    let r = orientation_reverse(&report);
    let mut out = Map::new();
    out.insert("kind".into(), json!("floer"));
    out.insert(
        "construct".into(),
        json!(format!("reverse({})", input.space.construct())),
    );
    output::report_fields(&mut out, &r);
    out.insert("swfh".into(), Value::Null);
    output::provenance(&mut out, &r.provenance);
    Ok(Value::Object(out))
}

fn check_cobordism(y0: &InputFile, y1: &InputFile, c: CobordismData) -> Result<Value, Failure> {
    let (r0, _) = report_of(&y0.space, y0.context)?;
    let (r1, _) = report_of(&y1.space, y1.context)?;
    let verdict = cobordism_check(&r0, &r1, c)?;
    let numbers = |r: &InvariantReport| {
        json!({
            "alpha": output::eighths(r.alpha),
            "beta": output::eighths(r.beta),
            "gamma": output::eighths(r.gamma),
        })
    };
    let violations = match &verdict {
        swf_core::swfclass::Verdict::Consistent => Vec::new(),
        swf_core::swfclass::Verdict::Violated(v) => v.clone(),
    };
    Ok(json!({
        "kind": "cobordism",
        "b2": c.b2,
        "spin": c.spin,
        "negative_definite": c.negative_definite,
        "y0": numbers(&r0),
        "y1": numbers(&r1),
        "verdict": if verdict.is_consistent() { "consistent" } else { "violated" },
        "violations": output::violations(&violations),
    }))
}

fn table(p: u64, q: u64, k_max: u64) -> Result<Value, Failure> {
    let mut rows = Vec::new();
    for k in 1..=k_max {
        for fam in BrieskornFamily::ALL {
            let n = fam.n(k);
            let r = brieskorn(n as u64)?;
            let mut row = Map::new();
            row.insert("n".into(), json!(n));
            row.insert("family".into(), json!(fam.label()));
            row.insert("k".into(), json!(k));
            output::report_fields(&mut row, &r);
            rows.push(Value::Object(row));
        }
    }
    Ok(json!({ "kind": "table", "p": p, "q": q, "k_max": k_max, "rows": rows }))
}

fn verify(iters: usize, seed: u64, stderr: &mut String) -> (Value, bool) {
    let reports = selfcheck::run_all(iters, seed);
    let mut failed = false;
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            for f in r.failures.iter().take(5) {
                stderr.push_str(&format!("{}: {f}\n", r.name));
            }
            failed |= !r.passed();
            json!({
                "suite": r.name,
                "cases": r.cases,
                "failures": r.failures.len(),
                "status": if r.passed() { "pass" } else { "FAIL" },
            })
        })
        .collect();
    let value = json!({ "kind": "verify", "iters": iters, "seed": seed, "rows": rows });
    (value, failed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("-8..12"), Ok((-8, 12)));
        assert_eq!(parse_degrees("3..3"), Ok((3, 3)));
        assert!(parse_degrees("5..1").is_err());
        assert!(parse_degrees("5").is_err());
    }

    #[test]
    fn exit_codes_of_core_errors() {
        assert_eq!(
            Failure::from(Error::InvalidModule(vec![])).code,
            EXIT_INTERNAL
        );
        assert_eq!(
            Failure::from(Error::Ambiguous {
                what: "g_rank".into(),
                alternatives: vec![0, 1]
            })
            .code,
            EXIT_AMBIGUOUS
        );
        assert_eq!(
            Failure::from(Error::DualityRange(String::new())).code,
            EXIT_INPUT
        );
    }

    #[test]
    fn help_and_usage_errors() {
        assert_eq!(run(["swfcalc", "--help"]).code, EXIT_OK);
        assert_eq!(run(["swfcalc", "--version"]).code, EXIT_OK);
        assert_eq!(run(["swfcalc", "frobnicate"]).code, EXIT_INPUT);
    }

    #[test]
    fn brieskorn_json() {
        let o = run([
            "swfcalc",
            "--no-cache",
            "brieskorn",
            "2",
            "3",
            "11",
            "--format",
            "json",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["alpha"]["value"], "2");
        assert_eq!(v["lambda"], -2);
    }
}
