//! `hamtorus`: hamiltonicity tests and explicit cycles for directed torus
//! digraphs with a pushed vertex or a deleted rectangle.
//!
//! Exit codes: 0 hamiltonian/success, 1 not hamiltonian (or verification
//! mismatch), 2 usage error, 3 size limit exceeded. Diagnostics go to
//! stderr, data to stdout.

use std::io::{BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hamtorus::{
    build_deleted_ham_cycle_with_limit, build_pushed_ham_cycles_with_limit,
    is_deleted_rect_hamiltonian, is_pushed_product_hamiltonian, BigInt, Error, HamCycle, Moduli,
    Verdict, DEFAULT_CONSTRUCTION_LIMIT, DEFAULT_ORACLE_LIMIT,
};
use hamtorus_cli::records::{
    BuildRecord, ScanRecord, VerdictRecord, VerifyRecord, SCHEMA_VERSION,
};
use hamtorus_cli::verify;
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "hamtorus", version, about = "Hamiltonicity of directed torus digraphs with a pushed vertex or a deleted rectangle", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the pushed product P(C_m x C_n) is hamiltonian.
    Test {
        /// First cycle length (decimal, >= 2; any number of digits).
        m: String,
        /// Second cycle length.
        n: String,
        /// Emit one machine-readable JSON record instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether (C_m x C_n) \ R_{a,b} is hamiltonian.
    TestDeleted {
        m: String,
        n: String,
        /// Rectangle height (1 <= a < m).
        a: String,
        /// Rectangle width (1 <= b < n).
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Construct the explicit hamiltonian cycle(s) and print them.
    Build {
        m: String,
        n: String,
        /// Which digraph to build cycles for: the pushed product (two
        /// cycles) or the R_{2,2}-deleted product (one cycle).
        #[arg(long, value_enum)]
        target: Target,
        /// Output format: an edge list of "i j" lines (cycles separated by a
        /// blank line, first vertex repeated at the end), or one JSON record.
        #[arg(long, value_enum, default_value_t = OutputFormat::Edgelist)]
        format: OutputFormat,
        /// Refuse instances with more than this many vertices.
        #[arg(long, default_value_t = DEFAULT_CONSTRUCTION_LIMIT)]
        limit: u64,
    },
    /// Cross-check fast verdicts, constructions, cover uniqueness, and
    /// knot-class predictions against exhaustive enumeration.
    Verify {
        /// Check every instance with m * n up to this bound.
        #[arg(default_value_t = 56)]
        limit: u64,
        /// Oracle vertex-count cap (must be >= the limit).
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        cap: u64,
        #[arg(long)]
        json: bool,
        /// Deliberately corrupt the fast verdict (negative control).
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Evaluate the pushed-product verdict over ranges of m and n.
    Scan {
        /// Range for m: a single value "3" or an inclusive range "3..8".
        m_range: String,
        /// Range for n, same syntax.
        n_range: String,
        /// Evaluate rows on this many worker threads (output order is
        /// unaffected).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Pushed,
    Deleted,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Edgelist,
    Machine,
}

const EXIT_NOT_HAMILTONIAN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: EXIT_USAGE,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SizeLimitExceeded { .. } => EXIT_LIMIT,
            Error::NotHamiltonian { .. } => EXIT_NOT_HAMILTONIAN,
            _ => EXIT_USAGE,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Test { m, n, json } => cmd_test(&m, &n, json),
        Command::TestDeleted { m, n, a, b, json } => cmd_test_deleted(&m, &n, &a, &b, json),
        Command::Build {
            m,
            n,
            target,
            format,
            limit,
        } => cmd_build(&m, &n, target, format, limit),
        Command::Verify {
            limit,
            cap,
            json,
            corrupt,
        } => cmd_verify(limit, cap, corrupt, json),
        Command::Scan {
            m_range,
            n_range,
            jobs,
            json,
        } => cmd_scan(&m_range, &n_range, jobs, json),
    }
}

/// Lengths are accepted only as unsigned decimal strings.
fn parse_length(what: &str, s: &str) -> Result<BigInt, Failure> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Failure::usage(format!(
            "{what} must be an unsigned decimal integer, got {s:?}"
        )));
    }
    Ok(s.parse().expect("digits parse"))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn verdict_record(
    command: &str,
    m: &str,
    n: &str,
    a: Option<&str>,
    b: Option<&str>,
    verdict: &Verdict,
    elapsed: f64,
) -> VerdictRecord {
    VerdictRecord {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        m: m.to_string(),
        n: n.to_string(),
        a: a.map(str::to_string),
        b: b.map(str::to_string),
        hamiltonian: verdict.hamiltonian(),
        failed_condition: verdict.failed_condition().map(|c| c.to_string()),
        swapped_orientation: verdict.swapped_orientation(),
        witnesses: verdict
            .witnesses()
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect(),
        elapsed_ms: elapsed,
    }
}

fn print_verdict_text(verdict: &Verdict) {
    match verdict.failed_condition() {
        None if verdict.swapped_orientation() => {
            println!("hamiltonian: true (swapped orientation)")
        }
        None => println!("hamiltonian: true"),
        Some(condition) => println!("hamiltonian: false ({condition})"),
    }
    for (name, value) in verdict.witnesses() {
        println!("  {name} = {value}");
    }
}

fn cmd_test(m: &str, n: &str, json: bool) -> Result<u8, Failure> {
    let moduli = Moduli::new(parse_length("m", m)?, parse_length("n", n)?)?;
    let start = Instant::now();
    let verdict = is_pushed_product_hamiltonian(&moduli);
    let elapsed = elapsed_ms(start);
    if json {
        let record = verdict_record("test", m, n, None, None, &verdict, elapsed);
        println!("{}", serde_json::to_string(&record).expect("serializable"));
    } else {
        print_verdict_text(&verdict);
    }
    Ok(if verdict.hamiltonian() { 0 } else { EXIT_NOT_HAMILTONIAN })
}

fn cmd_test_deleted(m: &str, n: &str, a: &str, b: &str, json: bool) -> Result<u8, Failure> {
    let moduli = Moduli::new(parse_length("m", m)?, parse_length("n", n)?)?;
    let ra = parse_length("a", a)?;
    let rb = parse_length("b", b)?;
    let start = Instant::now();
    let verdict = is_deleted_rect_hamiltonian(&moduli, &ra, &rb)?;
    let elapsed = elapsed_ms(start);
    if json {
        let record = verdict_record("test-deleted", m, n, Some(a), Some(b), &verdict, elapsed);
        println!("{}", serde_json::to_string(&record).expect("serializable"));
    } else {
        print_verdict_text(&verdict);
        if verdict.hamiltonian() {
            let orientation = if verdict.swapped_orientation() {
                "swapped"
            } else {
                "original"
            };
            println!("  orientation: {orientation}");
        }
    }
    Ok(if verdict.hamiltonian() { 0 } else { EXIT_NOT_HAMILTONIAN })
}

fn cmd_build(
    m: &str,
    n: &str,
    target: Target,
    format: OutputFormat,
    limit: u64,
) -> Result<u8, Failure> {
    let moduli = Moduli::new(parse_length("m", m)?, parse_length("n", n)?)?;
    let start = Instant::now();
    let cycles: Vec<HamCycle> = match target {
        Target::Deleted => vec![build_deleted_ham_cycle_with_limit(&moduli, limit)?],
        Target::Pushed => {
            let (first, second) = build_pushed_ham_cycles_with_limit(&moduli, limit)?;
            vec![first, second]
        }
    };
    let elapsed = elapsed_ms(start);

    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match format {
        OutputFormat::Edgelist => {
            for (index, cycle) in cycles.iter().enumerate() {
                if index > 0 {
                    writeln!(out).expect("stdout");
                }
                for v in cycle.vertices() {
                    writeln!(out, "{} {}", v.i, v.j).expect("stdout");
                }
                let first = cycle.vertices()[0];
                writeln!(out, "{} {}", first.i, first.j).expect("stdout");
            }
        }
        OutputFormat::Machine => {
            let record = BuildRecord {
                schema_version: SCHEMA_VERSION,
                command: "build".to_string(),
                m: m.to_string(),
                n: n.to_string(),
                target: match target {
                    Target::Pushed => "pushed".to_string(),
                    Target::Deleted => "deleted".to_string(),
                },
                cycles: cycles
                    .iter()
                    .map(|c| c.vertices().iter().map(|v| [v.i, v.j]).collect())
                    .collect(),
                elapsed_ms: elapsed,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&record).expect("serializable")
            )
            .expect("stdout");
        }
    }
    out.flush().expect("stdout");
    Ok(0)
}

fn cmd_verify(limit: u64, cap: u64, corrupt: bool, json: bool) -> Result<u8, Failure> {
    if limit > cap {
        return Err(Failure::usage(format!(
            "limit {limit} exceeds the oracle size cap {cap}"
        )));
    }
    let start = Instant::now();
    let outcome = verify::run(limit, cap, corrupt);
    let elapsed = elapsed_ms(start);
    let all_match = outcome.discrepancies.is_empty();
    if json {
        let record = VerifyRecord {
            schema_version: SCHEMA_VERSION,
            command: "verify".to_string(),
            limit,
            cap,
            instances_checked: outcome.instances,
            discrepancies: outcome.discrepancies.clone(),
            all_match,
            elapsed_ms: elapsed,
        };
        println!("{}", serde_json::to_string(&record).expect("serializable"));
    } else {
        for discrepancy in &outcome.discrepancies {
            println!("mismatch {discrepancy}");
        }
        if all_match {
            println!(
                "verified {} instances with m*n <= {limit}: all match",
                outcome.instances
            );
        } else {
            println!(
                "verified {} instances with m*n <= {limit}: {} discrepancies",
                outcome.instances,
                outcome.discrepancies.len()
            );
        }
    }
    Ok(if all_match { 0 } else { EXIT_NOT_HAMILTONIAN })
}

/// "3" or "3..8", both endpoints included.
fn parse_range(what: &str, s: &str) -> Result<(BigInt, BigInt), Failure> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (
            parse_length(&format!("{what} range start"), lo)?,
            parse_length(&format!("{what} range end"), hi)?,
        ),
        None => {
            let v = parse_length(what, s)?;
            (v.clone(), v)
        }
    };
    if lo < BigInt::from(2) {
        return Err(Failure::usage(format!("{what} range must start at 2 or above")));
    }
    if hi < lo {
        return Err(Failure::usage(format!("{what} range is empty: {s}")));
    }
    Ok((lo, hi))
}

fn range_values((lo, hi): &(BigInt, BigInt)) -> Vec<BigInt> {
    let mut values = Vec::new();
    let mut v = lo.clone();
    while v <= *hi {
        values.push(v.clone());
        v += 1;
    }
    values
}

fn cmd_scan(m_range: &str, n_range: &str, jobs: usize, json: bool) -> Result<u8, Failure> {
    const MAX_ROWS: u64 = 1_000_000;
    let mr = parse_range("m", m_range)?;
    let nr = parse_range("n", n_range)?;
    let rows = (&mr.1 - &mr.0 + 1) * (&nr.1 - &nr.0 + 1);
    if rows > BigInt::from(MAX_ROWS) {
        return Err(Failure::usage(format!(
            "scan would emit {rows} rows; the maximum is {MAX_ROWS}"
        )));
    }

    let mut pairs = Vec::new();
    for m in range_values(&mr) {
        for n in range_values(&nr) {
            pairs.push((m.clone(), n));
        }
    }

    let evaluate = |(m, n): &(BigInt, BigInt)| -> ScanRecord {
        let start = Instant::now();
        let verdict =
            is_pushed_product_hamiltonian(&Moduli::new(m.clone(), n.clone()).expect("m, n >= 2"));
        ScanRecord {
            schema_version: SCHEMA_VERSION,
            command: "scan".to_string(),
            m: m.to_string(),
            n: n.to_string(),
            hamiltonian: verdict.hamiltonian(),
            failed_condition: verdict.failed_condition().map(|c| c.to_string()),
            elapsed_ms: elapsed_ms(start),
        }
    };

    // Row order is the sorted pair order regardless of worker count.
    let records: Vec<ScanRecord> = if jobs <= 1 {
        pairs.iter().map(evaluate).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::usage(format!("cannot build worker pool: {e}")))?;
        pool.install(|| pairs.par_iter().map(evaluate).collect())
    };

    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for record in &records {
        if json {
            writeln!(
                out,
                "{}",
                serde_json::to_string(record).expect("serializable")
            )
            .expect("stdout");
        } else {
            match &record.failed_condition {
                None => writeln!(out, "{} {} true", record.m, record.n).expect("stdout"),
                Some(c) => {
                    writeln!(out, "{} {} false ({c})", record.m, record.n).expect("stdout")
                }
            }
        }
    }
    out.flush().expect("stdout");
    Ok(0)
}
