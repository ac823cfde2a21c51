//! `lhardy`: evaluate Laguerre functions and kernels, run verification
//! suites and merge their reports.
//!
//! Exit codes: 0 pass, 1 assertion failure, 2 configuration error, 3 budget
//! exhausted.

mod config;
mod eval;
mod merge;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use laguerre_hardy::report::{ScanReport, Table, Timestamp};
use laguerre_hardy::verify::{run_suite, Suite, SuiteConfig};

use config::{
    config_err, parse_f64, parse_f64_list, parse_int, parse_k, pick, pick_scalar, CliResult, Failure,
    FileConfig, Format,
};

#[derive(Parser)]
#[command(name = "lhardy", version, about = "Laguerre functions of Hermite type and Hardy-type coefficient checks")]
struct Cli {
    /// TOML file with default values for the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format: json or csv. Defaults to the --out extension, then json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output file. Existing files are not overwritten unless --force is given.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, env = "LHARDY_THREADS")]
    threads: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    seed: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate φ_k^α, derivatives, envelopes and kernel values.
    Eval(EvalArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Merge JSON reports into CSV files and plot data.
    Report(ReportArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// `a..b` (inclusive), a list, or one index.
    #[arg(long)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Smoothing parameters; adds a kernel table over u × y.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Constant in the pointwise envelope.
    #[arg(long, allow_hyphen_values = true)]
    envelope_c: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// orthonormality, kernel-equality, norm-scaling, atom-integral,
    /// hardy-atoms, sharpness, trig-series or l1-uniform.
    suite: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    nmax: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long = "K")]
    big_k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long)]
    count: Option<String>,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON reports written by `eval` or `verify`.
    inputs: Vec<PathBuf>,
    #[arg(long, default_value = "report")]
    out_dir: PathBuf,
}

fn opt_f64(field: &str, s: Option<String>) -> CliResult<Option<f64>> {
    s.map(|v| parse_f64(field, &v)).transpose()
}

fn opt_list(field: &str, s: Option<String>) -> CliResult<Option<Vec<f64>>> {
    s.map(|v| parse_f64_list(field, &v)).transpose()
}

fn opt_int(field: &str, s: Option<String>) -> CliResult<Option<u64>> {
    s.map(|v| parse_int(field, &v)).transpose()
}

fn write_csv_table<W: Write>(w: W, t: &Table) -> CliResult<()> {
    let mut c = csv::Writer::from_writer(w);
    let io = |e: csv::Error| Failure::Io(e.to_string());
    c.write_record(&t.columns).map_err(io)?;
    for row in t.string_rows() {
        c.write_record(&row).map_err(io)?;
    }
    c.flush().map_err(|e| Failure::Io(e.to_string()))
}

/// CSV goes to `out` for the first table and `<stem>-<table>.csv` for the
/// rest; on stdout only the first table is printed.
fn emit(rep: &ScanReport, format: Format, out: Option<&Path>, force: bool) -> CliResult<()> {
    let check = |p: &Path| {
        if p.exists() && !force {
            Err(Failure::Io(format!("{} exists; reports are not overwritten without --force", p.display())))
        } else {
            Ok(())
        }
    };
    let create = |p: &Path| std::fs::File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())));
    match (format, out) {
        (Format::Json, None) => {
            println!("{}", rep.to_json());
            Ok(())
        }
        (Format::Json, Some(p)) => {
            check(p)?;
            std::fs::write(p, rep.to_json() + "\n").map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        (Format::Csv, None) => match rep.tables.first() {
            Some(t) => write_csv_table(std::io::stdout().lock(), t),
            None => Ok(()),
        },
        (Format::Csv, Some(p)) => {
            let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("report").to_string();
            let paths: Vec<PathBuf> = rep
                .tables
                .iter()
                .enumerate()
                .map(|(i, t)| if i == 0 { p.to_path_buf() } else { p.with_file_name(format!("{stem}-{}.csv", t.name)) })
                .collect();
            for q in &paths {
                check(q)?;
            }
            for (t, q) in rep.tables.iter().zip(&paths) {
                write_csv_table(create(q)?, t)?;
            }
            Ok(())
        }
    }
}

fn status(rep: &ScanReport) -> i32 {
    if rep.failed().any(|a| !a.budget) {
        1
    } else if rep.failed().any(|a| a.budget) {
        3
    } else {
        0
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    let start = Instant::now();
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    if let Some(t) = pick_scalar(&cli.threads, &file.threads) {
        let n = parse_int("threads", &t)?;
        if n == 0 {
            return Err(config_err("threads", "must be at least 1"));
        }
        laguerre_hardy::exec::set_threads(n as usize);
    }
    let seed = opt_int("seed", pick_scalar(&cli.seed, &file.seed))?.unwrap_or(0);
    let out = cli.out.clone().or(file.out.clone());
    let format = Format::resolve(cli.format.as_deref().or(file.format.as_deref()), out.as_deref())?;

    let mut rep = match cli.command {
        Command::Report(a) => {
            for p in merge::run(&a.inputs, &a.out_dir)? {
                eprintln!("wrote {}", p.display());
            }
            return Ok(0);
        }
        Command::Eval(a) => {
            let cfg = eval::EvalConfig {
                alpha: opt_list("alpha", pick(&a.alpha, &file.alpha))?.unwrap_or_else(|| vec![0.5]),
                k: match pick(&a.k, &file.k) {
                    Some(s) => parse_k(&s)?,
                    None => (0..=10).collect(),
                },
                u: opt_list("u", pick(&a.u, &file.u))?.unwrap_or_else(|| vec![0.5, 1.0, 2.0]),
                r: opt_list("r", pick(&a.r, &file.r))?,
                y: opt_list("y", pick(&a.y, &file.y))?,
                envelope_c: opt_f64("envelope_c", pick_scalar(&a.envelope_c, &file.envelope_c))?.unwrap_or(1.0),
            };
            eval::run(&cfg, seed)?
        }
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse()?;
            let cfg = SuiteConfig {
                alpha: opt_list("alpha", pick(&a.alpha, &file.alpha))?,
                nmax: opt_int("nmax", pick_scalar(&a.nmax, &file.nmax))?.map(|v| v as usize),
                r: opt_list("r", pick(&a.r, &file.r))?,
                p: opt_f64("p", pick_scalar(&a.p, &file.p))?,
                t: opt_f64("t", pick_scalar(&a.t, &file.t))?,
                k: opt_int("K", pick_scalar(&a.big_k, &file.big_k))?,
                eps: opt_f64("eps", pick_scalar(&a.eps, &file.eps))?,
                count: opt_int("count", pick_scalar(&a.count, &file.count))?.map(|v| v as usize),
                seed,
            };
            run_suite(suite, &cfg)?
        }
    };
    rep.timestamp = Timestamp::now(start.elapsed().as_secs_f64());
    for a in &rep.assertions {
        let tag = if a.pass {
            "PASS"
        } else if a.budget {
            "BUDGET"
        } else {
            "FAIL"
        };
        let val = a.value.map(|v| format!(" value={v:e}")).unwrap_or_default();
        let thr = a.threshold.map(|v| format!(" threshold={v:e}")).unwrap_or_default();
        if a.pass {
            eprintln!("{tag} {}{val}{thr}", a.name);
        } else {
            eprintln!("{tag} {}{val}{thr} [{}]{}", a.name, a.anchor, a.detail.as_ref().map(|d| format!(" {d}")).unwrap_or_default());
        }
    }
    emit(&rep, format, out.as_deref(), cli.force)?;
    Ok(status(&rep))
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(c) => c,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    };
    std::process::exit(code);
}
