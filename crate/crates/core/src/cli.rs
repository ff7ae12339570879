//! The `pathforge` command line.
//!
//! Output is JSON on stdout by default (`--format csv` where tabular). Exit
//! codes: 0 success, 1 an identity failed (or an internal invariant broke),
//! 2 usage or input error.

use std::io::Write;
use std::time::Duration;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::bijections::{self, BijectionError, Construction, FiveTuple};
use crate::identities::{sweep, IdentityId, RhsIndex};
use crate::moments::{self, Ensemble};
use crate::numeric::format_rational;
use crate::paths::{self, check_level_parity, expectation_vectors, stats, Path, PathKind, StatsRow, Weighting};
use crate::walks::{self, Walk};

pub const THREADS_ENV: &str = "PATHFORGE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "pathforge", version, about = "Dyck and alternating Motzkin path toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every path of one kind and half-length.
    Enumerate {
        #[arg(long)]
        kind: PathKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Altitude statistics of one path.
    Stats {
        #[arg(long)]
        path: String,
        #[arg(long)]
        kind: PathKind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apply a construction to a five-tuple given as JSON.
    Map {
        #[arg(long)]
        construction: Construction,
        #[arg(long)]
        input: String,
    },
    /// Recover the five-tuple behind a path.
    Invert {
        #[arg(long)]
        construction: Construction,
        #[arg(long)]
        path: String,
    },
    /// Check an identity exhaustively for k up to --k-max.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        identity: u8,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        rhs_index: Option<RhsIndex>,
        /// Stop after this many seconds and flag the report as partial.
        #[arg(long)]
        budget_secs: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Translate between a path and its closed walk on the halfline.
    #[command(group(ArgGroup::new("direction").required(true).args(["to", "from"])))]
    Walk {
        /// Path to walk (--path holds U/D/L steps).
        #[arg(long)]
        to: bool,
        /// Walk to path (--path holds comma-separated node labels).
        #[arg(long)]
        from: bool,
        #[arg(long)]
        path: String,
        /// Inferred from the presence of level steps or loops when omitted.
        #[arg(long)]
        kind: Option<PathKind>,
        /// Start node for Dyck walks.
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// Monte Carlo moment of a random matrix ensemble.
    Mc {
        #[arg(long)]
        ensemble: Ensemble,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Expectation vectors and walk-vocabulary identity summary for one k.
    Report {
        #[arg(long)]
        k: usize,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn flag<E: std::fmt::Display>(name: &'static str) -> impl Fn(E) -> Failure {
    move |e| usage(format!("{name}: {e}"))
}

impl From<BijectionError> for Failure {
    fn from(e: BijectionError) -> Self {
        let code = if matches!(e, BijectionError::Broken(_)) { 1 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: format!("write failed: {e}") }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(io_failure)?;
    writeln!(out, "{text}").map_err(io_failure)
}

fn emit_csv<T: Serialize>(out: &mut dyn Write, rows: impl IntoIterator<Item = T>) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(io_failure)?;
    }
    w.flush().map_err(io_failure)
}

fn stats_json(p: &Path) -> Json {
    let s = stats(p);
    let mut v = json!({
        "kind": p.kind(),
        "k": p.k(),
        "path": p.render(),
        "R": s.rises,
        "V": s.vertices,
        "L": s.even_levels,
        "r": s.rise_count,
    });
    if p.kind() == PathKind::AltMotzkin {
        if let Ok(report) = check_level_parity(p) {
            v["level_parity"] = json!(report);
        }
    }
    v
}

fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Serialize)]
struct CountRow {
    kind: PathKind,
    k: usize,
    count: usize,
}

#[derive(Serialize)]
struct VerifyCsvRow {
    id: u8,
    k: usize,
    rhs_index: String,
    expected: bool,
    lhs: String,
    rhs: String,
    equal: bool,
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Enumerate { kind, k, count_only, format } => {
            if count_only {
                let count = paths::enumerate(kind, k).count();
                match format {
                    Format::Json => emit_json(out, &json!({ "kind": kind, "k": k, "count": count }))?,
                    Format::Csv => emit_csv(out, [CountRow { kind, k, count }])?,
                }
            } else {
                match format {
                    Format::Json => {
                        let rows: Vec<Json> = paths::enumerate(kind, k).map(|p| stats_json(&p)).collect();
                        emit_json(out, &json!({ "kind": kind, "k": k, "count": rows.len(), "paths": rows }))?;
                    }
                    Format::Csv => emit_csv(out, paths::enumerate(kind, k).map(|p| StatsRow::new(&p)))?,
                }
            }
            Ok(0)
        }
        Command::Stats { path, kind, format } => {
            let p = Path::parse(&path, kind).map_err(flag("--path"))?;
            match format {
                Format::Json => emit_json(out, &stats_json(&p))?,
                Format::Csv => emit_csv(out, [StatsRow::new(&p)])?,
            }
            Ok(0)
        }
        Command::Map { construction, input } => {
            let t: FiveTuple = serde_json::from_str(&input).map_err(|e| usage(format!("--input: {e}")))?;
            if t.construction != construction {
                return Err(usage(format!(
                    "--construction {construction} does not match input construction {}",
                    t.construction
                )));
            }
            let m = bijections::construct(&t)?;
            emit_json(
                out,
                &json!({
                    "construction": construction,
                    "path": m.path,
                    "middle_altitude": m.middle_altitude,
                    "rises": m.path.rise_count(),
                }),
            )?;
            Ok(0)
        }
        Command::Invert { construction, path } => {
            let p = Path::parse(&path, construction.kind()).map_err(flag("--path"))?;
            let t = bijections::invert(construction, &p)?;
            emit_json(out, &t)?;
            Ok(0)
        }
        Command::Verify { identity, k_max, rhs_index, budget_secs, format } => {
            let id = IdentityId::from_number(identity).map_err(usage)?;
            let report = sweep(&[id], k_max, rhs_index, budget_secs.map(Duration::from_secs));
            let passed = report.passed();
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({ "rows": report.rows, "partial": report.partial, "passed": passed }),
                )?,
                Format::Csv => emit_csv(
                    out,
                    report.rows.iter().map(|r| VerifyCsvRow {
                        id: r.id,
                        k: r.k,
                        rhs_index: r.rhs_index.map(|x| x.as_str().to_string()).unwrap_or_default(),
                        expected: r.expected,
                        lhs: r.lhs.to_string(),
                        rhs: r.rhs.to_string(),
                        equal: r.equal,
                    }),
                )?,
            }
            Ok(if passed { 0 } else { 1 })
        }
        Command::Walk { to, from: _, path, kind, start } => {
            if to {
                let kind = kind.unwrap_or(if path.contains('L') { PathKind::AltMotzkin } else { PathKind::Dyck });
                let p = Path::parse(&path, kind).map_err(flag("--path"))?;
                let w = match kind {
                    PathKind::Dyck => walks::dyck_to_walk(&p, start),
                    PathKind::AltMotzkin => walks::alt_motzkin_to_walk(&p),
                };
                emit_json(
                    out,
                    &json!({
                        "kind": kind,
                        "path": p.render(),
                        "walk": w.to_string(),
                        "statistics": walks::walk_statistics(&w),
                    }),
                )?;
            } else {
                let w: Walk = path.parse().map_err(flag("--path"))?;
                let has_loop = w.nodes().windows(2).any(|p| p[0] == p[1]);
                let kind = kind.unwrap_or(if has_loop { PathKind::AltMotzkin } else { PathKind::Dyck });
                let p = match kind {
                    PathKind::Dyck => walks::walk_to_dyck(&w),
                    PathKind::AltMotzkin => walks::walk_to_alt_motzkin(&w),
                }
                .map_err(flag("--path"))?;
                emit_json(
                    out,
                    &json!({
                        "kind": kind,
                        "walk": w.to_string(),
                        "path": p.render(),
                        "statistics": walks::walk_statistics(&w),
                    }),
                )?;
            }
            Ok(0)
        }
        Command::Mc { ensemble, k, n, m, trials, seed, format } => {
            let est = match (ensemble, m) {
                (Ensemble::Wigner, None) => moments::wigner_moment(k, n, trials, seed),
                (Ensemble::Wigner, Some(_)) => return Err(usage("--m applies only to --ensemble wishart")),
                (Ensemble::Wishart, Some(m)) => moments::wishart_moment(k, n, m, trials, seed),
                (Ensemble::Wishart, None) => return Err(usage("--ensemble wishart requires --m")),
            }
            .map_err(usage)?;
            match format {
                Format::Json => emit_json(out, &est)?,
                Format::Csv => emit_csv(out, [&est])?,
            }
            Ok(0)
        }
        Command::Report { k } => {
            let summary = walks::walk_identity_summary(k).map_err(flag("--k"))?;
            let one = BigRational::one();
            let dyck = expectation_vectors(k, PathKind::Dyck, Weighting::Uniform).at(&one);
            let am = expectation_vectors(k, PathKind::AltMotzkin, Weighting::Gamma);
            emit_json(
                out,
                &json!({
                    "k": k,
                    "square_average_advances": format_rational(&summary.square_average_advances),
                    "advances_closed_form": format_rational(&summary.advances_closed_form),
                    "square_average_time": format_rational(&summary.square_average_time),
                    "time_closed_form": format_rational(&summary.time_closed_form),
                    "dyck_expectations": {
                        "R": rationals(&dyck.rises),
                        "V": rationals(&dyck.vertices),
                    },
                    "altmotzkin_weighted_sums": am,
                }),
            )?;
            Ok(0)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Sizes the global rayon pool from `PATHFORGE_THREADS` (unset or 0 = automatic).
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {raw:?}"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}
