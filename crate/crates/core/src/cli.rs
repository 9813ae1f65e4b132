//! The `petal` command line. Output is JSON (one record per line) unless
//! `--pretty` is given. Exit codes: 0 success, 1 usage, validation or I/O
//! error, 2 failed bound or conformance check.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::expansion::{expand, to_gauss_code, to_pd_code, ClassicalDiagram};
use crate::front::{enumerate_closures, front_verdict, rainbow_closure};
use crate::geometry::{render_svg, RenderOptions};
use crate::invariants::identify;
use crate::petal::{canonical_twists, rotation_number, thurston_bennequin, PetalPermutation};
use crate::search::{
    exhaustive_scan, lambda_audit, oracle_conformance_with, square_property_scan, ScanMode,
    SigmaVariant,
};

#[derive(Debug, Parser)]
#[command(
    name = "petal",
    version,
    about = "Legendrian invariants of Lagrangian petal projections"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Over/under convention for classical diagrams.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Standard)]
    convention: Convention,
    /// Report wall-clock time of searches.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    Standard,
    Mirror,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pd,
    Gauss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Bound,
    Histogram,
    Max,
    Conformance,
    LambdaAudit,
    Squares,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Closures {
    All,
    Rainbow,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Thurston–Bennequin number of the standard diagram.
    Tb { perm: String },
    /// Rotation number of the standard diagram.
    Rot { perm: String },
    /// PD or Gauss code of the expanded classical diagram.
    Expand {
        perm: String,
        #[arg(long, value_enum, default_value_t = Format::Pd)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SVG drawing of the realized diagram.
    Render {
        perm: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        no_labels: bool,
        #[arg(long, default_value_t = 48)]
        segments: usize,
    },
    /// Scans over all permutations with h(1) = 1.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Bound)]
        mode: Mode,
    },
    /// Verdicts for half-twist front closures.
    Front {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Closures::All)]
        closures: Closures,
    },
    /// Determinant, Jones polynomial and matching small knots.
    Identify { perm: String },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Ctx<'a> {
    pretty: bool,
    mirror: bool,
    timing: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(
        &mut self,
        record: &impl Serialize,
        pretty: impl FnOnce() -> String,
    ) -> std::io::Result<()> {
        if self.pretty {
            writeln!(self.out, "{}", pretty())
        } else {
            writeln!(
                self.out,
                "{}",
                serde_json::to_string(record).expect("serializable")
            )
        }
    }

    fn diagram(&self, perm: &PetalPermutation) -> ClassicalDiagram {
        let d = expand(&canonical_twists(perm));
        if self.mirror {
            d.mirror()
        } else {
            d
        }
    }
}

fn parse_perm(text: &str) -> Result<PetalPermutation, Error> {
    text.parse()
}

#[derive(Serialize)]
struct InvariantRecord {
    n: usize,
    k: i64,
    sigma_sum: i64,
    tb: i64,
    rot: i64,
}

fn cmd_invariants(ctx: &mut Ctx, perm: &str) -> Outcome {
    let perm = parse_perm(perm)?;
    let diag = canonical_twists(&perm);
    let tb = thurston_bennequin(&diag);
    let r = InvariantRecord {
        n: perm.n(),
        k: tb.k,
        sigma_sum: tb.sigma_sum,
        tb: tb.tb,
        rot: rotation_number(&diag),
    };
    ctx.emit(&r, || {
        format!(
            "n = {}  k = {}  sigma_sum = {}  tb = {}  rot = {}",
            r.n, r.k, r.sigma_sum, r.tb, r.rot
        )
    })?;
    Ok(0)
}

fn write_or_print(ctx: &mut Ctx, output: Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text),
        None => ctx.out.write_all(text.as_bytes()),
    }
}

fn cmd_expand(ctx: &mut Ctx, perm: &str, format: Format, output: Option<PathBuf>) -> Outcome {
    let d = ctx.diagram(&parse_perm(perm)?);
    let code = match format {
        Format::Pd => to_pd_code(&d)?,
        Format::Gauss => to_gauss_code(&d)?,
    };
    write_or_print(ctx, output, &format!("{code}\n"))?;
    Ok(0)
}

fn cmd_render(
    ctx: &mut Ctx,
    perm: &str,
    output: Option<PathBuf>,
    labels: bool,
    segments: usize,
) -> Outcome {
    let diag = canonical_twists(&parse_perm(perm)?);
    let opts = RenderOptions {
        labels,
        segments_per_lobe: segments,
        ..RenderOptions::default()
    };
    let svg = render_svg(&diag, &opts)?;
    write_or_print(ctx, output, &svg)?;
    Ok(0)
}

fn with_runtime(mut record: Value, timing: bool, started: Instant) -> Value {
    if timing {
        record["runtime_ms"] = json!(started.elapsed().as_millis() as u64);
    }
    record
}

fn cmd_search(ctx: &mut Ctx, n: usize, mode: Mode) -> Outcome {
    let started = Instant::now();
    let timing = ctx.timing;
    let mut code = 0;
    match mode {
        Mode::Bound | Mode::Histogram | Mode::Max => {
            let scan = match mode {
                Mode::Bound => ScanMode::Bound,
                Mode::Histogram => ScanMode::Histogram,
                _ => ScanMode::Maximizers,
            };
            let report = pooled(|| exhaustive_scan(n, scan))??;
            if !report.bound_satisfied || report.parity_violations > 0 {
                code = 2;
            }
            let record = with_runtime(
                serde_json::to_value(&report).expect("serializable"),
                timing,
                started,
            );
            ctx.emit(&record, || {
                let mut s = format!(
                    "n = {}  scanned = {}  max sigma_sum = {} (bound {})  max tb = {} (bound {})  satisfied = {}",
                    report.n,
                    report.permutations_scanned,
                    report.max_sigma_sum,
                    report.sigma_bound,
                    report.max_tb,
                    report.bound,
                    report.bound_satisfied
                );
                if let Some(h) = &report.histogram {
                    for (tb, count) in h {
                        s.push_str(&format!("\n  tb {tb:>4}: {count}"));
                    }
                }
                if let Some(argmax) = &report.argmax {
                    s.push_str(&format!("\n  maximizers ({}):", report.argmax_count.unwrap_or(0)));
                    for p in argmax {
                        s.push_str(&format!("\n    ({p})"));
                    }
                }
                s
            })?;
        }
        Mode::Conformance => {
            let mirror = ctx.mirror;
            let report = pooled(|| oracle_conformance_with(n, SigmaVariant::Standard, mirror))??;
            if !report.all_agree {
                code = 2;
            }
            for row in &report.rows {
                ctx.emit(row, || {
                    format!(
                        "n = {}  perms = {}  sigma {:.1}%  rotation {:.1}%  heights {:.1}%  max defect {:.1e}",
                        row.n,
                        row.permutations,
                        row.sigma_agreement,
                        row.rotation_agreement,
                        row.height_agreement,
                        row.max_closure_defect
                    )
                })?;
            }
            let summary = with_runtime(
                json!({
                    "summary": "conformance",
                    "convention_flip": report.convention_flip,
                    "all_agree": report.all_agree,
                    "witnesses": report.witnesses,
                }),
                timing,
                started,
            );
            ctx.emit(&summary, || {
                format!(
                    "all agree = {}  convention flip = {}",
                    report.all_agree, report.convention_flip
                )
            })?;
        }
        Mode::LambdaAudit => {
            let audit = pooled(|| lambda_audit(n))??;
            if !audit.rows.iter().all(|r| r.k_ok) || !audit.oracle_agrees {
                code = 2;
            }
            if ctx.pretty {
                writeln!(
                    ctx.out,
                    "{:>3}  {:>8}  {:>9}  {:>8}  {:>6}  {:>3}  match",
                    "n", "claimed", "sum expr", "computed", "writhe", "k"
                )?;
            }
            for r in &audit.rows {
                ctx.emit(r, || {
                    format!(
                        "{:>3}  {:>8}  {:>9}  {:>8}  {:>6}  {:>3}  {}",
                        r.n,
                        r.claimed_tb,
                        r.claimed_sum_expression,
                        r.computed_tb,
                        r.oracle_tb,
                        r.k,
                        r.matches_claim
                    )
                })?;
            }
            let summary = with_runtime(
                json!({
                    "summary": "lambda_audit",
                    "claimed_strictly_increasing": audit.claimed_strictly_increasing,
                    "computed_strictly_increasing": audit.computed_strictly_increasing,
                    "oracle_agrees": audit.oracle_agrees,
                }),
                timing,
                started,
            );
            ctx.emit(&summary, || {
                format!(
                    "claimed increasing = {}  computed increasing = {}  writhe agrees = {}",
                    audit.claimed_strictly_increasing,
                    audit.computed_strictly_increasing,
                    audit.oracle_agrees
                )
            })?;
        }
        Mode::Squares => {
            let report = pooled(|| square_property_scan(n))??;
            if report.violation_count > 0 || report.tiling_blocks != report.expected_tiling_blocks {
                code = 2;
            }
            let record = with_runtime(
                serde_json::to_value(&report).expect("serializable"),
                timing,
                started,
            );
            ctx.emit(&record, || {
                format!(
                    "n = {}  checked = {} ({})  violations = {}  blocks = {} (expected {})",
                    report.n,
                    report.permutations_checked,
                    if report.exhaustive {
                        "exhaustive"
                    } else {
                        "sampled"
                    },
                    report.violation_count,
                    report.tiling_blocks,
                    report.expected_tiling_blocks
                )
            })?;
        }
    }
    Ok(code)
}

fn cmd_front(ctx: &mut Ctx, n: usize, closures: Closures) -> Outcome {
    use rayon::prelude::*;
    let patterns = match closures {
        Closures::All => enumerate_closures(n)?,
        Closures::Rainbow => vec![rainbow_closure(n)],
    };
    let mirror = ctx.mirror;
    let reports: Vec<_> = pooled(|| {
        patterns
            .par_iter()
            .map(|p| front_verdict(p, mirror))
            .collect()
    })?;
    let mut code = 0;
    for r in &reports {
        if !r.consistent() {
            code = 2;
        }
        ctx.emit(r, || {
            format!(
                "{:<40} components = {}  {}",
                r.pattern,
                r.components,
                match r.verdict {
                    crate::front::FrontVerdict::Unknot => "unknot".to_string(),
                    crate::front::FrontVerdict::Link { components } =>
                        format!("link ({components} components)"),
                }
            )
        })?;
    }
    Ok(code)
}

fn cmd_identify(ctx: &mut Ctx, perm: &str) -> Outcome {
    let perm = parse_perm(perm)?;
    let id = identify(&ctx.diagram(&perm));
    let record = json!({
        "n": perm.n(),
        "crossings": id.crossings,
        "components": id.components,
        "determinant": id.determinant.as_ref().map(|d| d.to_string()),
        "jones": id.jones.as_ref().map(|v| v.to_string()),
        "jones_capped": id.jones.is_none(),
        "candidates": id.candidates,
    });
    ctx.emit(&record, || {
        format!(
            "crossings = {}  determinant = {}  jones = {}  candidates = [{}]",
            id.crossings,
            id.determinant
                .as_ref()
                .map_or("capped".to_string(), |d| d.to_string()),
            id.jones
                .as_ref()
                .map_or("capped".to_string(), |v| v.to_string()),
            id.candidates.join(", ")
        )
    })?;
    Ok(0)
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("PETAL_THREADS") {
        let threads: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| Failure {
                code: 1,
                message: format!("PETAL_THREADS must be a positive integer, got {value:?}"),
            })?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })
}

/// Runs `f` on a worker pool sized by `PETAL_THREADS` (default: all cores).
fn pooled<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    Ok(thread_pool()?.install(f))
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        pretty: cli.pretty,
        mirror: cli.convention == Convention::Mirror,
        timing: cli.timing,
        out,
    };
    let result = match cli.command {
        Command::Tb { perm } | Command::Rot { perm } => cmd_invariants(&mut ctx, &perm),
        Command::Expand {
            perm,
            format,
            output,
        } => cmd_expand(&mut ctx, &perm, format, output),
        Command::Render {
            perm,
            output,
            no_labels,
            segments,
        } => cmd_render(&mut ctx, &perm, output, !no_labels, segments),
        Command::Search { n, mode } => cmd_search(&mut ctx, n, mode),
        Command::Front { n, closures } => cmd_front(&mut ctx, n, closures),
        Command::Identify { perm } => cmd_identify(&mut ctx, &perm),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
