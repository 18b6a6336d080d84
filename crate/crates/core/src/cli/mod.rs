//! The `qflag` command line: single values, tables, and verification suites.
//!
//! Every command prints JSON records with a top-level `"schema": 1`. Exit
//! codes: 0 on success, 1 when a verification check fails, 2 on bad
//! arguments or cap violations.

mod record;
mod table;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use record::{OutputRecord, Status, SCHEMA_VERSION};
pub use table::{build_table, Format, Table, TableKind};
pub use verify::{run_verify, Caps, Counterexample, Fault, Kernel, Suite, VerifyReport};

use crate::bigpoly::MPoly;
use crate::cyclotomic::rs_eval_roots;
use crate::error::{invalid, Error, Result};
use crate::ffspace::{build_field, count_flags, visit_flags, FlagChain};
use crate::qkernel::{galois, galois_general, qbinomial, qmultinomial, Composition};
use crate::rogers_szego::{rs, rs_homogeneous};
use record::inputs;

/// Most flags `flagcount --list` will print.
pub const MAX_LISTED_FLAGS: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(name = "qflag", version, about = "Rogers-Szegő polynomials, q-multinomials and flag counts")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gaussian binomial coefficient [n choose k]_q.
    Qbinom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: ValueOpts,
    },
    /// q-multinomial coefficient of a composition such as 1,2,1.
    Qmultinom {
        #[arg(long)]
        comp: Composition,
        #[command(flatten)]
        common: ValueOpts,
    },
    /// Rogers-Szegő polynomial H_n(t_1, ..., t_(m-1)).
    Rs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Homogeneous form in t_1, ..., t_m.
        #[arg(long)]
        homogeneous: bool,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Galois number G_n.
    Galois {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: ValueOpts,
    },
    /// Generalized Galois number G_n^(m).
    Gengal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: ValueOpts,
    },
    /// H_n at t_i = w^i (or w^i q with --scaled), w a primitive m-th root of unity.
    Special {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        scaled: bool,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Count flags of a given type in F_q^n, q = p^e, by enumeration.
    Flagcount {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        comp: Composition,
        /// Also print every flag (at most 10000).
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Emit a table of values over a parameter grid.
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct OutOpts {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print only the value.
    #[arg(long)]
    plain: bool,
}

#[derive(Args, Debug)]
struct ValueOpts {
    /// Evaluate at this integer q.
    #[arg(long, allow_negative_numbers = true)]
    q: Option<i64>,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_m: Option<usize>,
    /// Field characteristic for the enumeration suites.
    #[arg(long)]
    p: Option<u32>,
    /// Field extension degree for the enumeration suites.
    #[arg(long)]
    e: Option<u32>,
    /// Truncation in x for the series suites.
    #[arg(long)]
    xcap: Option<usize>,
    /// Truncation in q for the series suites.
    #[arg(long)]
    qcap: Option<u32>,
    #[arg(long, hide = true)]
    inject_fault: Option<Fault>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    kind: TableKind,
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 4)]
    max_m: usize,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// A verification check failed; exit code 1.
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

fn emit(text: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn poly_value(p: &MPoly, q: Option<i64>) -> Result<Value> {
    Ok(match q {
        Some(q) => json!(p.eval_q(q)?.to_string()),
        None => json!(p.to_string()),
    })
}

fn emit_record(rec: &OutputRecord, opts: &OutOpts, stdout: &mut dyn Write) -> std::io::Result<()> {
    let line = if opts.plain {
        match &rec.value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    } else {
        rec.to_json_line()
    };
    emit(&format!("{line}\n"), opts.out.as_ref(), stdout)
}

fn value_record(kind: &str, inputs: std::collections::BTreeMap<String, Value>, value: Value) -> OutputRecord {
    OutputRecord::new(kind, inputs, value).with_status(true)
}

/// Worker count from `QFLAG_THREADS`, if set.
fn thread_count() -> Result<Option<usize>> {
    match std::env::var("QFLAG_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(invalid(format!("QFLAG_THREADS must be a positive integer, got {s:?}"))),
        },
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    thread_count()?;
    match cli.command {
        Command::Qbinom { n, k, common } => {
            let v = poly_value(&qbinomial(n, k)?, common.q)?;
            let rec = value_record("qbinom", inputs!("n" => n, "k" => k, "q" => common.q), v);
            emit_record(&rec, &common.out, stdout)?;
        }
        Command::Qmultinom { comp, common } => {
            let v = poly_value(&qmultinomial(&comp), common.q)?;
            let rec = value_record("qmultinom", inputs!("comp" => comp.to_string(), "q" => common.q), v);
            emit_record(&rec, &common.out, stdout)?;
        }
        Command::Rs { n, m, homogeneous, out } => {
            let value = if homogeneous {
                rs_homogeneous(n, m)?.value().to_string()
            } else {
                rs(n, m)?.value().to_string()
            };
            let rec = value_record(
                "rs",
                inputs!("n" => n, "m" => m, "homogeneous" => homogeneous),
                json!(value),
            );
            emit_record(&rec, &out, stdout)?;
        }
        Command::Galois { n, common } => {
            let v = poly_value(&galois(n), common.q)?;
            let rec = value_record("galois", inputs!("n" => n, "q" => common.q), v);
            emit_record(&rec, &common.out, stdout)?;
        }
        Command::Gengal { n, m, common } => {
            let v = poly_value(&galois_general(n, m)?, common.q)?;
            let rec = value_record("gengal", inputs!("n" => n, "m" => m, "q" => common.q), v);
            emit_record(&rec, &common.out, stdout)?;
        }
        Command::Special { n, m, scaled, out } => {
            let v = rs_eval_roots(n, m, scaled)?;
            let rec = value_record(
                "special",
                inputs!("n" => n, "m" => m, "scaled" => scaled),
                json!(v.to_string()),
            );
            emit_record(&rec, &out, stdout)?;
        }
        Command::Flagcount { p, e, comp, list, out } => {
            let field = build_field(p, e)?;
            let count = with_pool(|| count_flags(&field, &comp))?;
            let mut rec = value_record(
                "flagcount",
                inputs!("p" => p, "e" => e, "comp" => comp.to_string()),
                json!(count),
            );
            if list {
                if count > MAX_LISTED_FLAGS {
                    return Err(Failure::Usage(format!(
                        "{count} flags is more than the {MAX_LISTED_FLAGS} that --list prints"
                    )));
                }
                let mut flags = Vec::new();
                visit_flags(&field, &comp, |chain| {
                    let flag = FlagChain::new(&field, comp.clone(), chain.to_vec()).expect("enumerated flags are valid");
                    flags.push(serde_json::to_value(flag.to_record()).expect("flags serialize"));
                });
                rec.flags = Some(Value::Array(flags));
            }
            emit_record(&rec, &out, stdout)?;
        }
        Command::Verify(args) => {
            let caps = Caps {
                max_n: args.max_n,
                max_m: args.max_m,
                p: args.p,
                e: args.e,
                xcap: args.xcap,
                qcap: args.qcap,
            };
            let kernel = Kernel::new(args.inject_fault);
            let report = with_pool(|| run_verify(args.suite, &caps, &kernel))??;
            let mut text = String::new();
            for rec in &report.records {
                text.push_str(&rec.to_json_line());
                text.push('\n');
            }
            emit(&text, args.out.as_ref(), stdout)?;
            for c in &report.failures {
                writeln!(stderr, "verify: {c}")?;
            }
            if !report.ok() {
                return Err(Failure::Verify);
            }
        }
        Command::Table(args) => {
            let table = with_pool(|| build_table(args.kind, args.max_n, args.max_m, args.q))??;
            let text = match args.format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json(
                    args.kind,
                    json!({"max_n": args.max_n, "max_m": args.max_m, "q": args.q}),
                ),
            };
            emit(&text, args.out.as_ref(), stdout)?;
        }
    }
    Ok(())
}

/// Runs `f` on a thread pool sized by `QFLAG_THREADS` (or rayon's default).
fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| invalid(format!("cannot start worker threads: {e}")))?;
    Ok(pool.install(f))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
                return 0;
            }
            let _ = stderr.write_all(rendered.as_bytes());
            return 2;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(Failure::Verify) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
