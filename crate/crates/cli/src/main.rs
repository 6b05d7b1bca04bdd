//! Command-line front end: analyze finite semigroups, compute classifying
//! space homology and group completions, and run the verification suites.
//!
//! Inputs are constructor expressions (`RB(2,2)`, `M(3)`, `J(C(2))`,
//! `W(e1,e2)`, `I(e)`, `Z(e)`, `P(e1,e2)`) or paths to multiplication-table
//! files in the text or JSON format.
//!
//! Exit codes: 0 success, 1 failed assertion, 2 usage or parse error,
//! 3 resource cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bsemi_core::completion::{self, CompletionError};
use bsemi_core::expr;
use bsemi_core::homology::{bar_complex, HomologyError, HomologyGroup, DEFAULT_COLUMN_CAP};
use bsemi_core::io as table_io;
use bsemi_core::semigroup::FiniteSemigroup;
use bsemi_core::theorems::{self, CheckReport, TheoremError};

const COLUMN_CAP_ENV: &str = "BSEMI_COLUMN_CAP";

#[derive(Parser)]
#[command(name = "bsemi", version, about = "Finite semigroups and the topology of their classifying spaces", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: human-readable text or a single JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Structural analysis: identity/zero, idempotents, minimal ideal,
    /// regularity, aperiodicity, principal series.
    Analyze {
        /// Constructor expression or table-file path.
        input: String,
    },
    /// Integral homology of the classifying space through degree qmax-1.
    Homology {
        /// Constructor expression or table-file path.
        input: String,
        /// Build the bar complex through this degree.
        #[arg(long, default_value_t = 3)]
        qmax: usize,
        /// Use the unnormalized complex (|S|^q columns, works for any
        /// semigroup) instead of the normalized one.
        #[arg(long)]
        unnormalized: bool,
        /// Cap on chain-group columns (also via BSEMI_COLUMN_CAP).
        #[arg(long)]
        column_cap: Option<usize>,
        /// Write each boundary matrix to `<prefix>.d<q>.txt` in the sparse
        /// text format.
        #[arg(long, value_name = "PREFIX")]
        dump_boundaries: Option<PathBuf>,
    },
    /// Group completion G(S), i.e. the fundamental group of BS.
    Completion {
        /// Constructor expression or table-file path.
        input: String,
        /// Coset cap for the enumeration (default 4 |S|).
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Run a verification suite; exits 0 iff every assertion passes.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Resolution exactness and homology (Z, 0, Z/n, 0) for a range of n.
    Moore {
        /// Range of moduli, e.g. 2..6 (inclusive).
        #[arg(long, default_value = "2..6")]
        n: String,
    },
    /// Suspension shift: H_q(BJ(S)) = H_{q-1}(BS) below qmax.
    Suspension {
        input: String,
        #[arg(long, default_value_t = 4)]
        qmax: usize,
        #[arg(long)]
        column_cap: Option<usize>,
    },
    /// Wedge additivity: reduced homology of the wedge is the direct sum.
    Wedge {
        m: String,
        n: String,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
        #[arg(long)]
        column_cap: Option<usize>,
    },
    /// Vanishing for regular monoids on a degree range, e.g. 5..5.
    RegularVanishing {
        input: String,
        /// Degree range `lo..hi` (inclusive) or a single degree.
        #[arg(long)]
        q: String,
        #[arg(long)]
        column_cap: Option<usize>,
    },
}

enum Failure {
    Assertion(String),
    Usage(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Assertion(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Assertion(m) | Failure::Usage(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<expr::BuildError> for Failure {
    fn from(e: expr::BuildError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<table_io::TableIoError> for Failure {
    fn from(e: table_io::TableIoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::DegreeTooLarge { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CompletionError> for Failure {
    fn from(e: CompletionError) -> Self {
        Failure::Resource(format!("{e}; raise the cap with --max-cosets"))
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::ExactnessFailure { .. } => Failure::Assertion(e.to_string()),
            TheoremError::InfeasibleDegree { .. } => Failure::Resource(e.to_string()),
            TheoremError::Homology(HomologyError::DegreeTooLarge { .. }) => {
                Failure::Resource(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Analyze { input } => cmd_analyze(input, cli.format),
        Command::Homology {
            input,
            qmax,
            unnormalized,
            column_cap,
            dump_boundaries,
        } => cmd_homology(
            input,
            *qmax,
            !*unnormalized,
            resolve_cap(*column_cap),
            dump_boundaries.as_deref(),
            cli.format,
        ),
        Command::Completion { input, max_cosets } => {
            cmd_completion(input, *max_cosets, cli.format)
        }
        Command::Verify { suite } => cmd_verify(suite, cli.format),
    }
}

fn resolve_cap(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var(COLUMN_CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_COLUMN_CAP)
}

fn load_input(input: &str) -> Result<FiniteSemigroup, Failure> {
    if Path::new(input).exists() {
        Ok(table_io::load_table_file(Path::new(input))?)
    } else {
        Ok(expr::build(input)?)
    }
}

fn parse_range(raw: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("bad range {raw:?}; expected `lo..hi` or a single value"));
    if let Some((lo, hi)) = raw.split_once("..") {
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let v = raw.trim().parse().map_err(|_| bad())?;
        Ok((v, v))
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

#[derive(Serialize)]
struct AnalyzeReport {
    input: String,
    order: usize,
    identity: Option<usize>,
    zero: Option<usize>,
    idempotent_count: usize,
    minimal_ideal_size: usize,
    minimal_ideal_rectangular: bool,
    regular: bool,
    aperiodic: bool,
    principal_series_length: usize,
    principal_series_certified: bool,
    elapsed_ms: u128,
}

fn cmd_analyze(input: &str, format: Format) -> Result<ExitCode, Failure> {
    let started = Instant::now();
    let s = load_input(input)?;
    let minimal = s.minimal_ideal();
    let series = s.principal_series();
    let report = AnalyzeReport {
        input: input.to_string(),
        order: s.order(),
        identity: s.identity(),
        zero: s.zero(),
        idempotent_count: s.idempotents().len(),
        minimal_ideal_size: minimal.elements.len(),
        minimal_ideal_rectangular: s.is_rectangular_band_on(&minimal.elements),
        regular: s.is_regular(),
        aperiodic: s.is_aperiodic(),
        principal_series_length: series.ideals.len(),
        principal_series_certified: series.certified,
        elapsed_ms: started.elapsed().as_millis(),
    };
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            println!("input: {}", report.input);
            println!("order: {}", report.order);
            match report.identity {
                Some(e) => println!("identity: {} ({})", e, s.name(e)),
                None => println!("identity: none"),
            }
            match report.zero {
                Some(z) => println!("zero: {} ({})", z, s.name(z)),
                None => println!("zero: none"),
            }
            println!("idempotents: {}", report.idempotent_count);
            println!(
                "minimal ideal: size {}, rectangular band: {}",
                report.minimal_ideal_size, report.minimal_ideal_rectangular
            );
            println!("regular: {}", report.regular);
            println!("aperiodic: {}", report.aperiodic);
            println!(
                "principal series: length {} ({})",
                report.principal_series_length,
                if report.principal_series_certified {
                    "certified"
                } else {
                    "uncertified"
                }
            );
            println!("elapsed: {} ms", report.elapsed_ms);
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BoundaryInfo {
    q: usize,
    rows: usize,
    cols: usize,
    nnz: usize,
}

#[derive(Serialize)]
struct HomologyReport {
    input: String,
    order: usize,
    identity_adjoined: bool,
    normalized: bool,
    qmax: usize,
    ranks: Vec<usize>,
    boundaries: Vec<BoundaryInfo>,
    groups: Vec<HomologyGroup>,
    elapsed_ms: u128,
}

fn cmd_homology(
    input: &str,
    qmax: usize,
    normalized: bool,
    column_cap: usize,
    dump_prefix: Option<&Path>,
    format: Format,
) -> Result<ExitCode, Failure> {
    let started = Instant::now();
    let loaded = load_input(input)?;
    // BS and BS^1 are homotopy equivalent; normalized mode needs the monoid.
    let identity_adjoined = normalized && !loaded.is_monoid();
    let s = if identity_adjoined {
        loaded.adjoin_identity()
    } else {
        loaded
    };
    let complex = bar_complex(&s, qmax, normalized, column_cap)?;
    let boundaries: Vec<BoundaryInfo> = (1..=complex.qmax())
        .map(|q| BoundaryInfo {
            q,
            rows: complex.boundary(q).rows(),
            cols: complex.boundary(q).cols(),
            nnz: complex.boundary(q).nnz(),
        })
        .collect();
    // Dimensions go out before elimination starts, so the cost is visible
    // up front; in JSON mode they go to stderr to keep stdout a single
    // document.
    let dims_line = format!("C_q ranks: {:?}", complex.dims());
    match format {
        Format::Text => {
            println!("input: {input} (order {}, normalized: {normalized})", s.order());
            if identity_adjoined {
                println!("identity adjoined: true");
            }
            println!("{dims_line}");
            for b in &boundaries {
                println!("d_{}: {} x {} ({} nonzero)", b.q, b.rows, b.cols, b.nnz);
            }
        }
        Format::Json => eprintln!("{dims_line}"),
    }
    if let Some(prefix) = dump_prefix {
        for q in 1..=complex.qmax() {
            let path = dump_path(prefix, q);
            std::fs::write(&path, table_io::sparse_matrix_to_text(complex.boundary(q)))
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    let groups = complex.homology_all();
    let report = HomologyReport {
        input: input.to_string(),
        order: s.order(),
        identity_adjoined,
        normalized,
        qmax,
        ranks: complex.dims().to_vec(),
        boundaries,
        groups,
        elapsed_ms: started.elapsed().as_millis(),
    };
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            for (q, g) in report.groups.iter().enumerate() {
                println!("H_{q} = {g}");
            }
            println!("elapsed: {} ms", report.elapsed_ms);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn dump_path(prefix: &Path, q: usize) -> PathBuf {
    let mut name = prefix.file_name().map_or_else(
        || "boundaries".to_string(),
        |n| n.to_string_lossy().into_owned(),
    );
    name.push_str(&format!(".d{q}.txt"));
    prefix.with_file_name(name)
}

#[derive(Serialize)]
struct CompletionReport {
    input: String,
    order: usize,
    group_order: usize,
    generator_images: Vec<usize>,
    simply_connected: bool,
    elapsed_ms: u128,
}

fn cmd_completion(
    input: &str,
    max_cosets: Option<usize>,
    format: Format,
) -> Result<ExitCode, Failure> {
    let started = Instant::now();
    let s = load_input(input)?;
    let presentation = completion::presentation(&s);
    let cap = max_cosets.unwrap_or(4 * s.order());
    let group = completion::todd_coxeter(&presentation, cap)?;
    let report = CompletionReport {
        input: input.to_string(),
        order: s.order(),
        group_order: group.order,
        generator_images: group.generator_images.clone(),
        simply_connected: group.order == 1,
        elapsed_ms: started.elapsed().as_millis(),
    };
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            println!("input: {} (order {})", report.input, report.order);
            println!("group completion order: {}", report.group_order);
            let images: Vec<String> = report
                .generator_images
                .iter()
                .enumerate()
                .map(|(s_el, g_el)| format!("{s_el}->{g_el}"))
                .collect();
            println!("generator images: {}", images.join(" "));
            println!("simply_connected: {}", report.simply_connected);
            println!("elapsed: {} ms", report.elapsed_ms);
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SuiteReport {
    suite: String,
    passed: bool,
    checks: Vec<CheckReport>,
    elapsed_ms: u128,
}

fn cmd_verify(suite: &Suite, format: Format) -> Result<ExitCode, Failure> {
    let started = Instant::now();
    let (name, checks) = match suite {
        Suite::Moore { n } => {
            let (lo, hi) = parse_range(n)?;
            if lo < 2 {
                return Err(Failure::Usage("Moore moduli start at 2".into()));
            }
            let mut all = Vec::new();
            for n in lo..=hi {
                all.extend(theorems::verify_moore(n)?);
            }
            (format!("moore {lo}..{hi}"), all)
        }
        Suite::Suspension {
            input,
            qmax,
            column_cap,
        } => {
            let s = load_input(input)?;
            let checks =
                theorems::check_suspension_shift(&s, *qmax, resolve_cap(*column_cap))?;
            (format!("suspension {input} qmax={qmax}"), checks)
        }
        Suite::Wedge {
            m,
            n,
            qmax,
            column_cap,
        } => {
            let sm = load_input(m)?;
            let sn = load_input(n)?;
            let checks =
                theorems::check_wedge_additivity(&sm, &sn, *qmax, resolve_cap(*column_cap))?;
            (format!("wedge {m} {n} qmax={qmax}"), checks)
        }
        Suite::RegularVanishing {
            input,
            q,
            column_cap,
        } => {
            let (lo, hi) = parse_range(q)?;
            let s = load_input(input)?;
            let checks =
                theorems::check_regular_vanishing(&s, lo, hi, resolve_cap(*column_cap))?;
            (format!("regular-vanishing {input} q={lo}..{hi}"), checks)
        }
    };
    let passed = theorems::all_pass(&checks);
    let report = SuiteReport {
        suite: name,
        passed,
        checks,
        elapsed_ms: started.elapsed().as_millis(),
    };
    match format {
        Format::Json => emit_json(&report),
        Format::Text => {
            for check in &report.checks {
                let mark = if check.passed() { "PASS" } else { "FAIL" };
                let params: Vec<String> = check
                    .parameters
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                println!(
                    "{mark} {} [{}] expected={} computed={} ({} ms)",
                    check.claim,
                    params.join(", "),
                    check.expected,
                    check.computed,
                    check.elapsed_ms
                );
            }
            println!(
                "suite {}: {} ({} ms)",
                report.suite,
                if passed { "pass" } else { "FAIL" },
                report.elapsed_ms
            );
        }
    }
    if passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
