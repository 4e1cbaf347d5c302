use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use modpk::oracle::OracleBudget;
use modpk::parse::parse_poly;
use modpk::report::{count_report, factor_report, lifts_report, roots_report};
use modpk::verify::{run_grid, GridConfig};
use modpk::{Error, PrimePower};

const EXIT_IRREDUCIBLE: u8 = 2;

/// Factoring and root finding for polynomials modulo prime powers.
#[derive(Parser, Debug)]
#[command(name = "modpk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a nontrivial factor of f modulo p^k, or report IRREDUCIBLE (exit 2).
    Factor(FactorArgs),
    /// Describe and count the monic lifts of a residue factor that divide f.
    Lifts(LiftsArgs),
    /// Count the monic divisors of f modulo p^k.
    Count(FactorArgs),
    /// Find all roots in Z/p^k, or in F_p[x]/(g^k) when -g is given.
    Roots(RootsArgs),
    /// Compare factor against exhaustive search over a grid of moduli.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(short = 'p', long = "prime")]
    p: u64,
    #[arg(short = 'k', long = "power")]
    k: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct FactorArgs {
    #[command(flatten)]
    common: Common,
    /// Polynomial, as "x^3+12*x^2+3*x+36" or "[36,3,12,1]".
    #[arg(allow_hyphen_values = true)]
    f: String,
}

#[derive(Args, Debug)]
struct LiftsArgs {
    #[command(flatten)]
    common: Common,
    /// A power of the residue factor of f, read modulo p.
    #[arg(short = 'g', long = "factor", allow_hyphen_values = true)]
    g: String,
    /// List up to N lifts.
    #[arg(long, default_value_t = 0)]
    expand: usize,
    #[arg(allow_hyphen_values = true)]
    f: String,
}

#[derive(Args, Debug)]
struct RootsArgs {
    #[command(flatten)]
    common: Common,
    /// Irreducible g over F_p; roots are then taken in F_p[x]/(g^k) and the
    /// polynomial is read in y with coefficients in x.
    #[arg(short = 'g', long = "factor", allow_hyphen_values = true)]
    g: Option<String>,
    /// List up to N individual roots.
    #[arg(long, default_value_t = 0)]
    expand: usize,
    #[arg(allow_hyphen_values = true)]
    f: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    pmax: u64,
    #[arg(long, default_value_t = 4)]
    degmax: usize,
    #[arg(long, default_value_t = 4)]
    kmax: u32,
    /// Random polynomials per (p, k) cell.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oracle timeout per case, in seconds.
    #[arg(long, default_value_t = 120)]
    timeout: u64,
    /// Flip the first verdict to exercise the mismatch path.
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct ErrorReport {
    status: &'static str,
    message: String,
}

fn emit<T: Serialize + std::fmt::Display>(format: Format, r: &T) {
    match format {
        Format::Text => println!("{r}"),
        Format::Json => println!("{}", serde_json::to_string(r).expect("serializable")),
    }
}

fn fail(format: Format, e: &Error) -> ExitCode {
    match format {
        Format::Text => eprintln!("error: {e}"),
        Format::Json => {
            let r = ErrorReport { status: "error", message: e.to_string() };
            println!("{}", serde_json::to_string(&r).expect("serializable"));
        }
    }
    ExitCode::FAILURE
}

fn modulus(c: &Common) -> Result<PrimePower, Error> {
    PrimePower::new(c.p, c.k)
}

fn run_factor(a: &FactorArgs) -> Result<ExitCode, Error> {
    let pp = modulus(&a.common)?;
    let f = parse_poly(&a.f, pp.modulus())?;
    let r = factor_report(&f, &pp, a.common.seed)?;
    emit(a.common.format, &r);
    Ok(if r.is_irreducible() { ExitCode::from(EXIT_IRREDUCIBLE) } else { ExitCode::SUCCESS })
}

fn run_lifts(a: &LiftsArgs) -> Result<ExitCode, Error> {
    let pp = modulus(&a.common)?;
    let f = parse_poly(&a.f, pp.modulus())?;
    let g = parse_poly(&a.g, pp.p() as u128)?;
    emit(a.common.format, &lifts_report(&f, &g, &pp, a.expand, a.common.seed)?);
    Ok(ExitCode::SUCCESS)
}

fn run_count(a: &FactorArgs) -> Result<ExitCode, Error> {
    let pp = modulus(&a.common)?;
    let f = parse_poly(&a.f, pp.modulus())?;
    emit(a.common.format, &count_report(&f, &pp, a.common.seed)?);
    Ok(ExitCode::SUCCESS)
}

fn run_roots(a: &RootsArgs) -> Result<ExitCode, Error> {
    let c = &a.common;
    emit(c.format, &roots_report(&a.f, c.p, c.k, a.g.as_deref(), a.expand, c.seed)?);
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: &VerifyArgs) -> Result<ExitCode, Error> {
    let cfg = GridConfig {
        samples: a.samples,
        seed: a.seed,
        inject_fault: a.inject_fault,
        budget: OracleBudget { timeout: std::time::Duration::from_secs(a.timeout), ..Default::default() },
        ..GridConfig::new(a.pmax, a.degmax, a.kmax)
    };
    let text = a.format == Format::Text;
    let report = run_grid(&cfg, |c| {
        if text {
            println!(
                "p={} k={}: {} cases, {} reducible, {} mismatches, {} ms",
                c.p, c.k, c.cases, c.reducible, c.mismatches, c.millis
            );
        }
    })?;
    if text {
        for m in &report.mismatches {
            println!("MISMATCH p={} k={} f = {}: {}", m.p, m.k, m.f, m.detail);
        }
        match report.minimal() {
            Some(m) => println!("FAIL: {} mismatches; reproduce with\n  {}", report.mismatches.len(), m.reproducer),
            None => println!("PASS: {} cases", report.cases()),
        }
    } else {
        #[derive(Serialize)]
        struct Out<'a> {
            status: &'static str,
            cases: usize,
            cells: &'a [modpk::verify::CellReport],
            mismatches: Vec<serde_json::Value>,
            reproducer: Option<&'a str>,
            seed: u64,
        }
        let out = Out {
            status: if report.passed() { "pass" } else { "fail" },
            cases: report.cases(),
            cells: &report.cells,
            mismatches: report
                .mismatches
                .iter()
                .map(|m| {
                    serde_json::json!({
                        "modulus": { "p": m.p, "k": m.k },
                        "f": m.f.to_string(),
                        "detail": m.detail,
                        "reproducer": m.reproducer,
                    })
                })
                .collect(),
            reproducer: report.minimal().map(|m| m.reproducer.as_str()),
            seed: a.seed,
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, res) = match &cli.command {
        Command::Factor(a) => (a.common.format, run_factor(a)),
        Command::Lifts(a) => (a.common.format, run_lifts(a)),
        Command::Count(a) => (a.common.format, run_count(a)),
        Command::Roots(a) => (a.common.format, run_roots(a)),
        Command::Verify(a) => (a.format, run_verify(a)),
    };
    res.unwrap_or_else(|e| fail(format, &e))
}
