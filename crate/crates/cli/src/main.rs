//! Command-line harness for the bound calculus and the sieve engines.
//!
//! Exit codes: 0 on success, 1 on a verification failure (a check battery or
//! hard invariant came back red), 2 on a usage error (bad flags or parameter
//! ranges). Output is byte-identical across runs with the same configuration.

mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use render::{Format, Table};
use smoothspan_core::{
    self as core, bounds, calibration, pairs, scan, sieve, sums, verify, Rational,
};

#[derive(Parser)]
#[command(
    name = "smoothspan",
    about = "Exponent-pair bound tables and sieve verification for smooth numbers in short intervals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Output path (standard output when omitted)
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Args, Clone)]
struct CatalogArgs {
    /// Flat cap theta, as p/q or a decimal (alternative record: 131/416)
    #[arg(long, default_value = "517/1648")]
    theta: String,

    /// Maximum A/B word length over the Bourgain seed
    #[arg(long, default_value_t = 3)]
    max_word_len: usize,

    /// Largest Heath-Brown index m in the catalog
    #[arg(long, default_value_t = 64)]
    max_hb_m: u32,

    /// Include the conjectural pair (0, 1/2)
    #[arg(long)]
    conjecture: bool,
}

impl CatalogArgs {
    fn theta(&self) -> Result<Rational, CliError> {
        let theta = parse_rational(&self.theta)?;
        if theta <= core::rat_int(0) || theta >= core::rat_int(1) {
            return Err(CliError::usage(format!(
                "theta must lie in (0, 1), got {}",
                self.theta
            )));
        }
        Ok(theta)
    }

    fn catalog(&self) -> Result<Vec<pairs::ExponentPair>, CliError> {
        if self.max_hb_m < 3 || self.max_hb_m > 100_000 {
            return Err(CliError::usage("max-hb-m must lie in [3, 100000]"));
        }
        if self.max_word_len > 12 {
            return Err(CliError::usage("max-word-len must be <= 12"));
        }
        Ok(pairs::build_catalog(&pairs::CatalogOptions {
            max_word_len: self.max_word_len,
            max_hb_m: self.max_hb_m,
            include_conjectural: self.conjecture,
        }))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the piecewise lower envelope of admissible b(a) lines
    BoundsTable(BoundsTableArgs),
    /// Evaluate the best admissible b at one abscissa a
    BoundsBest(BoundsBestArgs),
    /// Apply an A/B process word to a seed pair
    PairsApply(PairsApplyArgs),
    /// Count y-smooth integers up to x
    SievePsi(SievePsiArgs),
    /// Count y-smooth integers in the window (x - z, x]
    SieveInterval(SieveIntervalArgs),
    /// Sawtooth-sum, divisor-sum and divisor-moment reports
    SumReport(SumReportArgs),
    /// Scan short intervals for dense-set member counts vs the threshold
    ScanCor5(ScanArgs),
    /// Grid data for the four bound curves
    Figure1(FigureArgs),
    /// Run the verification batteries
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BoundsTableArgs {
    #[command(flatten)]
    catalog: CatalogArgs,
}

#[derive(Args)]
struct BoundsBestArgs {
    /// Abscissa a in [1/2, 1], as p/q or a decimal
    #[arg(long)]
    a: String,

    #[command(flatten)]
    catalog: CatalogArgs,
}

#[derive(Args)]
struct PairsApplyArgs {
    /// Word over {A, B}, applied right to left (empty word = the seed)
    #[arg(long, default_value = "")]
    word: String,

    /// Seed pair: bourgain, trivial, or hb:<m>
    #[arg(long)]
    seed: String,
}

#[derive(Args)]
struct SievePsiArgs {
    #[arg(long)]
    x: u64,

    /// Smoothness cutoff y (rational or decimal string)
    #[arg(long, conflicts_with = "y_power")]
    y: Option<String>,

    /// Use y = x^a for this exponent a
    #[arg(long)]
    y_power: Option<String>,
}

#[derive(Args)]
struct SieveIntervalArgs {
    #[arg(long)]
    x: u64,

    /// Window width z (rational or decimal string)
    #[arg(long)]
    z: String,

    /// Smoothness cutoff y (rational or decimal string)
    #[arg(long, conflicts_with = "y_power")]
    y: Option<String>,

    /// Use y = x^a for this exponent a
    #[arg(long)]
    y_power: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SumKind {
    /// Sum of sawtooth values psi(x/n) over N <= n <= 2N
    Psi,
    /// Divisor double-count over the window (x - z, x]
    S,
    /// Divisor moment sum over [x - z, x]
    Tau,
}

#[derive(Args)]
struct SumReportArgs {
    #[arg(long, value_enum)]
    kind: SumKind,

    #[arg(long)]
    x: u64,

    /// Range start N (kind = psi)
    #[arg(long)]
    n: Option<u64>,

    /// y (kind = s), rational or decimal
    #[arg(long)]
    y: Option<String>,

    /// z (kind = s or tau), rational or decimal
    #[arg(long)]
    z: Option<String>,

    /// Moment exponent u (kind = tau)
    #[arg(long)]
    u: Option<f64>,

    /// Exponent pair for the psi-sum comparison bound
    #[arg(long, default_value = "bourgain")]
    pair: String,

    /// Flat cap for the psi-sum comparison bound
    #[arg(long, default_value = "517/1648")]
    theta: String,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    lo: u64,

    #[arg(long)]
    hi: u64,

    /// Window exponent e (window is [x - x^e, x])
    #[arg(long, default_value = "0.4872")]
    exponent: String,

    /// Logarithm power w (threshold is x^e (ln x)^-w)
    #[arg(long, default_value_t = 9.557)]
    log_power: f64,

    /// Also test the real-x boundary-crossing points
    #[arg(long)]
    crossings: bool,

    /// Emit only the failing rows
    #[arg(long)]
    failures_only: bool,

    /// Plain-text resume file, updated every 10^6 integers
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Grid step over [1/2, 1]
    #[arg(long, default_value = "1/200")]
    step: String,

    #[command(flatten)]
    catalog: CatalogArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Constants,
    Calculus,
    Sieve,
    Sets,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,

    /// Reduced limits for a fast smoke run
    #[arg(long)]
    quick: bool,

    /// Location of the recorded regression calibration
    #[arg(long)]
    calibration: Option<PathBuf>,
}

/// Errors with their exit code: 1 = verification failure, 2 = usage.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    fn failure(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 1,
        }
    }
}

impl From<core::Error> for CliError {
    fn from(e: core::Error) -> CliError {
        match e {
            // domain violations inside the calculus are verification errors
            core::Error::InvalidPair { .. } | core::Error::NoWitness(_) => {
                CliError::failure(e.to_string())
            }
            _ => CliError::usage(e.to_string()),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    core::parse_rational(s).map_err(|e| CliError::usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(workers) = std::env::var("SMOOTHSPAN_WORKERS") {
        if let Ok(n) = workers.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let format = Format::from(cli.format);
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => match fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("smoothspan: cannot open {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(std::io::stdout().lock()),
    };
    match dispatch(&cli.command, format, &mut sink) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("smoothspan: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn dispatch(command: &Command, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::BoundsTable(args) => bounds_table(args, format, out),
        Command::BoundsBest(args) => bounds_best(args, format, out),
        Command::PairsApply(args) => pairs_apply(args, format, out),
        Command::SievePsi(args) => sieve_psi(args, format, out),
        Command::SieveInterval(args) => sieve_interval(args, format, out),
        Command::SumReport(args) => sum_report(args, format, out),
        Command::ScanCor5(args) => scan_cor5(args, format, out),
        Command::Figure1(args) => figure1(args, format, out),
        Command::Verify(args) => run_verify(args, format, out),
    }
}

fn fail_io(e: anyhow::Error) -> CliError {
    CliError::usage(format!("output error: {e}"))
}

fn rat_str(r: &Rational) -> String {
    core::format_rational(r)
}

fn bounds_table(
    args: &BoundsTableArgs,
    format: Format,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let theta = args.catalog.theta()?;
    let catalog = args.catalog.catalog()?;
    let env = bounds::envelope(&catalog, &theta)?;
    let mut table = Table::new(vec![
        "a_lo",
        "a_hi",
        "slope",
        "intercept",
        "source",
        "needs_eps",
    ]);
    for (a_lo, a_hi, line) in env.segments() {
        table.push(vec![
            rat_str(a_lo),
            rat_str(a_hi),
            rat_str(&line.slope),
            rat_str(&line.intercept),
            line.source.to_string(),
            line.source.needs_eps().to_string(),
        ]);
    }
    table.write(format, out).map_err(fail_io)?;
    Ok(0)
}

fn bounds_best(args: &BoundsBestArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let a = parse_rational(&args.a)?;
    if a < core::rat(1, 2) || a > core::rat_int(1) {
        return Err(CliError::usage(format!("a must lie in [1/2, 1], got {a}")));
    }
    let theta = args.catalog.theta()?;
    let catalog = args.catalog.catalog()?;
    let (value, source) = bounds::best_bound(&a, &catalog, &theta)?;
    let mut table = Table::new(vec!["a", "value", "value_dec", "source", "needs_eps"]);
    table.push(vec![
        rat_str(&a),
        rat_str(&value),
        core::decimal_string(&value, 10),
        source.to_string(),
        source.needs_eps().to_string(),
    ]);
    table.write(format, out).map_err(fail_io)?;
    Ok(0)
}

fn parse_seed(seed: &str) -> Result<pairs::ExponentPair, CliError> {
    match seed {
        "bourgain" => Ok(pairs::ExponentPair::bourgain()),
        "trivial" => Ok(pairs::ExponentPair::trivial()),
        _ => match seed.strip_prefix("hb:") {
            Some(m) => {
                let m: u32 = m
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad Heath-Brown index `{m}`")))?;
                Ok(pairs::ExponentPair::heath_brown(m)?)
            }
            None => Err(CliError::usage(format!(
                "unknown seed `{seed}` (expected bourgain, trivial, or hb:<m>)"
            ))),
        },
    }
}

fn pairs_apply(args: &PairsApplyArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut pair = parse_seed(&args.seed)?;
    // right-to-left: the word names the outermost process first
    for c in args.word.chars().rev() {
        pair = match c {
            'A' | 'a' => pair.a_process(),
            'B' | 'b' => pair.b_process()?,
            _ => {
                return Err(CliError::usage(format!(
                    "invalid word character `{c}` (word is over {{A, B}})"
                )))
            }
        };
    }
    let line = bounds::pair_line(&pair);
    let mut table = Table::new(vec![
        "derivation",
        "k",
        "l",
        "k_dec",
        "l_dec",
        "needs_eps",
        "b_line",
    ]);
    table.push(vec![
        pair.derivation().to_string(),
        rat_str(pair.k()),
        rat_str(pair.l()),
        core::decimal_string(pair.k(), 10),
        core::decimal_string(pair.l(), 10),
        pair.needs_eps().to_string(),
        line.canonical_form(),
    ]);
    table.write(format, out).map_err(fail_io)?;
    Ok(0)
}

/// Resolves a smoothness cutoff: either an explicit rational y, or x^a with
/// the floor pinned exactly when the float lands near an integer.
fn resolve_cutoff(x: u64, y: &Option<String>, y_power: &Option<String>) -> Result<u64, CliError> {
    match (y, y_power) {
        (Some(y), None) => {
            let y = parse_rational(y)?;
            if y < core::rat_int(1) {
                return Err(CliError::usage(format!("y must be >= 1, got {y}")));
            }
            Ok(num_floor_u64(&y))
        }
        (None, Some(a)) => {
            let a = parse_rational(a)?;
            if a <= core::rat_int(0) || a > core::rat_int(1) {
                return Err(CliError::usage(format!(
                    "y-power must lie in (0, 1], got {a}"
                )));
            }
            Ok(sieve::floor_pow(x, &a))
        }
        _ => Err(CliError::usage(
            "exactly one of --y / --y-power is required",
        )),
    }
}

fn num_floor_u64(r: &Rational) -> u64 {
    core::floor_u64(r)
}

fn sieve_psi(args: &SievePsiArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let ycut = resolve_cutoff(args.x, &args.y, &args.y_power)?;
    let count = sieve::psi_count(args.x, ycut)?;
    let mut table = sieve_table();
    table.push(vec![
        args.x.to_string(),
        ycut.to_string(),
        String::new(),
        count.count.to_string(),
        String::new(),
        String::new(),
    ]);
    table.write(format, out).map_err(fail_io)?;
    Ok(0)
}

fn sieve_table() -> Table {
    Table::new(vec!["x", "y", "z", "count", "threshold", "ratio"])
}

fn sieve_interval(
    args: &SieveIntervalArgs,
    format: Format,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let ycut = resolve_cutoff(args.x, &args.y, &args.y_power)?;
    let z = parse_rational(&args.z)?;
    let zf = core::to_f64(&z);
    let count = sieve::interval_smooth_count(args.x, zf, ycut)?;
    let mut table = sieve_table();
    table.push(vec![
        args.x.to_string(),
        ycut.to_string(),
        rat_str(&z),
        count.to_string(),
        String::new(),
        String::new(),
    ]);
    table.write(format, out).map_err(fail_io)?;
    Ok(0)
}

fn sum_report(args: &SumReportArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut table = sieve_table();
    match args.kind {
        SumKind::Psi => {
            let n = args
                .n
                .ok_or_else(|| CliError::usage("--n is required for --kind psi"))?;
            let pair = parse_seed(&args.pair)?;
            let theta = parse_rational(&args.theta)?;
            let report = sums::psi_sum_report(args.x, n, &pair, &theta)?;
            table.push(vec![
                args.x.to_string(),
                n.to_string(),
                String::new(),
                core::decimal_string(&report.sum, 8),
                format!("{:.6}", report.theta_bound.min(report.pair_bound)),
                format!("{:.6}", report.ratio),
            ]);
        }
        SumKind::S => {
            let y = parse_rational(
                args.y
                    .as_deref()
                    .ok_or_else(|| CliError::usage("--y is required for --kind s"))?,
            )?;
            let z = parse_rational(
                args.z
                    .as_deref()
                    .ok_or_else(|| CliError::usage("--z is required for --kind s"))?,
            )?;
            let s = sums::divisor_window_sum(args.x, &y, &z)?;
            if s.direct != s.floor_form {
                return Err(CliError::failure(format!(
                    "double-counting identity failed: direct {} != floor form {}",
                    s.direct, s.floor_form
                )));
            }
            table.push(vec![
                args.x.to_string(),
                rat_str(&y),
                rat_str(&z),
                s.direct.to_string(),
                rat_str(&s.z_over_4),
                format!("{:.6}", s.direct as f64 / core::to_f64(&s.z_over_4)),
            ]);
        }
        SumKind::Tau => {
            let z = parse_rational(
                args.z
                    .as_deref()
                    .ok_or_else(|| CliError::usage("--z is required for --kind tau"))?,
            )?;
            let u = args
                .u
                .ok_or_else(|| CliError::usage("--u is required for --kind tau"))?;
            let z = num_floor_u64(&z);
            let report = sums::tau_moment(args.x, z, u)?;
            table.push(vec![
                args.x.to_string(),
                format!("{u}"),
                z.to_string(),
                format!("{:.6}", report.sum),
                format!("{:.6}", report.bound),
                format!("{:.6}", report.ratio),
            ]);
        }
    }
    table.write(format, out).map_err(fail_io)?;
    Ok(0)
}

#[derive(Serialize)]
struct ScanJsonSummary {
    range: [u64; 2],
    checked: u64,
    failures: Vec<u64>,
    largest_failure: Option<u64>,
    crossing_checked: Option<u64>,
    crossing_failures: Option<Vec<u64>>,
}

const CHECKPOINT_STRIDE: u64 = 1_000_000;

fn read_checkpoint(path: &PathBuf) -> Option<u64> {
    let text = fs::read_to_string(path).ok()?;
    text.trim().strip_prefix("last_x=")?.parse().ok()
}

fn write_checkpoint(path: &PathBuf, x: u64) -> Result<(), CliError> {
    fs::write(path, format!("last_x={x}\n"))
        .map_err(|e| CliError::usage(format!("cannot write checkpoint {}: {e}", path.display())))
}

fn scan_cor5(args: &ScanArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let exponent = parse_rational(&args.exponent)?;
    if exponent <= core::rat_int(0) || exponent >= core::rat_int(1) {
        return Err(CliError::usage("exponent must lie in (0, 1)"));
    }
    if args.log_power < 0.0 {
        return Err(CliError::usage("log-power must be >= 0"));
    }
    if args.lo < 3 || args.lo > args.hi {
        return Err(CliError::usage("scan requires 3 <= lo <= hi"));
    }
    let params = scan::ScanParams::new(exponent, args.log_power);

    let mut start = args.lo;
    if let Some(path) = &args.checkpoint {
        if let Some(last) = read_checkpoint(path) {
            start = start.max(last + 1);
        }
    }

    // CSV rows stream straight to the sink; JSON needs only the summary.
    // The chunking drives the checkpoint cadence.
    let run_chunks = |row: &mut dyn FnMut(&scan::ScanReport)| -> Result<(u64, Vec<u64>), CliError> {
        let mut failures: Vec<u64> = Vec::new();
        let mut checked = 0u64;
        let mut cursor = start;
        while cursor <= args.hi {
            let chunk_hi = (cursor + CHECKPOINT_STRIDE - 1).min(args.hi);
            let summary = scan::density_scan_with(cursor, chunk_hi, &params, &mut *row)?;
            checked += summary.checked;
            failures.extend(summary.failures);
            if let Some(path) = &args.checkpoint {
                write_checkpoint(path, chunk_hi)?;
            }
            cursor = chunk_hi + 1;
        }
        Ok((checked, failures))
    };

    let (checked, failures) = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["x", "interval_lo", "count_A", "threshold", "pass"])
                .map_err(|e| fail_io(e.into()))?;
            let mut row_error: Option<csv::Error> = None;
            let result = run_chunks(&mut |r| {
                if row_error.is_none() && (!args.failures_only || !r.pass) {
                    if let Err(e) = w.write_record([
                        r.x.to_string(),
                        format!("{:.6}", r.interval_lo),
                        r.count_a.to_string(),
                        format!("{:.6}", r.threshold),
                        r.pass.to_string(),
                    ]) {
                        row_error = Some(e);
                    }
                }
            })?;
            if let Some(e) = row_error {
                return Err(fail_io(e.into()));
            }
            w.flush().map_err(|e| fail_io(e.into()))?;
            result
        }
        Format::Json => run_chunks(&mut |_| {})?,
    };

    let crossing = if args.crossings && args.hi > args.lo {
        Some(scan::crossing_scan(args.lo, args.hi, &params)?)
    } else {
        None
    };

    if format == Format::Json {
        let summary = ScanJsonSummary {
            range: [args.lo, args.hi],
            checked,
            largest_failure: failures.last().copied(),
            failures,
            crossing_checked: crossing.as_ref().map(|c| c.checked),
            crossing_failures: crossing.as_ref().map(|c| c.failures.clone()),
        };
        render::write_json_value(&summary, out).map_err(fail_io)?;
    }
    Ok(0)
}

fn figure1(args: &FigureArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let step = parse_rational(&args.step)?;
    let theta = args.catalog.theta()?;
    let catalog = args.catalog.catalog()?;
    let env = bounds::envelope(&catalog, &theta)?;
    let rows = bounds::curve_table(&env, &step)?;
    let mut table = Table::new(vec![
        "a",
        "envelope",
        "margin",
        "one_minus_a",
        "half_one_minus_a",
    ]);
    for row in rows {
        table.push(vec![
            rat_str(&row.a),
            rat_str(&row.envelope),
            rat_str(&row.margin),
            rat_str(&row.one_minus_a),
            rat_str(&row.half_one_minus_a),
        ]);
    }
    table.write(format, out).map_err(fail_io)?;
    Ok(0)
}

fn run_verify(args: &VerifyArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let suite = match args.suite {
        SuiteArg::Constants => verify::Suite::Constants,
        SuiteArg::Calculus => verify::Suite::Calculus,
        SuiteArg::Sieve => verify::Suite::Sieve,
        SuiteArg::Sets => verify::Suite::Sets,
        SuiteArg::All => verify::Suite::All,
    };
    let opts = if args.quick {
        verify::VerifyOptions::quick()
    } else {
        verify::VerifyOptions::default()
    };
    let path = args
        .calibration
        .clone()
        .unwrap_or_else(calibration::default_path);
    let checks = verify::run_suite(suite, &opts, &path);
    let failed = checks.iter().filter(|c| !c.pass).count();

    match format {
        Format::Csv => {
            let mut table = Table::new(vec!["suite", "check", "expected", "actual", "status"]);
            for c in &checks {
                table.push(vec![
                    c.suite.to_string(),
                    c.id.clone(),
                    c.expected.clone(),
                    c.actual.clone(),
                    if c.pass { "pass" } else { "FAIL" }.to_string(),
                ]);
            }
            table.write_csv(out).map_err(fail_io)?;
            writeln!(out, "# {} checks, {} failed", checks.len(), failed)
                .map_err(|e| fail_io(e.into()))?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct JsonCheck<'a> {
                suite: &'a str,
                check: &'a str,
                expected: &'a str,
                actual: &'a str,
                pass: bool,
            }
            #[derive(Serialize)]
            struct JsonReport<'a> {
                checks: Vec<JsonCheck<'a>>,
                total: usize,
                failed: usize,
            }
            let report = JsonReport {
                checks: checks
                    .iter()
                    .map(|c| JsonCheck {
                        suite: c.suite,
                        check: &c.id,
                        expected: &c.expected,
                        actual: &c.actual,
                        pass: c.pass,
                    })
                    .collect(),
                total: checks.len(),
                failed,
            };
            render::write_json_value(&report, out).map_err(fail_io)?;
        }
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
