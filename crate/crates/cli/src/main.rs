//! Command-line front end: gcd / xgcd / half-gcd over polynomial files,
//! the built-in self-test suite, and the operation-counting benchmark.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 parse or usage error,
//! 3 unsupported field or transform length.

mod bench;
mod polyfile;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use halfgcd::counter::CostCounter;
use halfgcd::field::{PrimeField, Rationals};
use halfgcd::gcd::{self, Algorithm, GcdConfig};
use halfgcd::hgcd;
use halfgcd::ntt::TransformPlan;
use halfgcd::poly::Karatsuba;

use polyfile::{FieldSpec, FileError};

#[derive(Parser)]
#[command(name = "halfgcd", version, about = "polynomial gcd via half-gcd matrix recursion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monic gcd of the two polynomials in FILE
    Gcd(GcdArgs),
    /// Extended gcd: prints g, u, v with u P + v Q = g
    Xgcd(GcdArgs),
    /// The half-gcd matrix B*_(1;k+1) of the two polynomials in FILE
    Hgcd(HgcdArgs),
    /// Operation-counting benchmark; CSV on stdout
    Bench(BenchArgs),
    /// Built-in fixture suite
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct GcdArgs {
    /// Input file: field line, then two polynomials separated by a blank line
    file: PathBuf,
    /// Algorithm override (prime fields only)
    #[arg(long, value_parser = parse_algorithm, default_value = "auto")]
    alg: Algorithm,
    /// Half-gcd recursion cutoff
    #[arg(long, default_value_t = hgcd::DEFAULT_THRESHOLD)]
    threshold: usize,
}

#[derive(Args)]
struct HgcdArgs {
    file: PathBuf,
    /// Number of re-indexed Euclidean steps
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = hgcd::DEFAULT_THRESHOLD)]
    threshold: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated algorithm tags (see --help for the list)
    #[arg(long, value_delimiter = ',', required = true, help = bench_alg_help())]
    alg: Vec<String>,
    /// Sizes: comma-separated, entries are numbers or power-of-two ranges a..b
    #[arg(long, required = true)]
    sizes: String,
    /// Comma-separated seeds
    #[arg(long, value_delimiter = ',', default_value = "1")]
    seeds: Vec<u64>,
    /// Input generator regime
    #[arg(long = "gen", value_parser = ["normal", "general"], default_value = "normal")]
    generator: String,
    /// Force threshold = 1 so per-node accounting matches the analysis
    #[arg(long)]
    exact_accounting: bool,
    /// Threshold override (ignored under --exact-accounting)
    #[arg(long, default_value_t = hgcd::DEFAULT_THRESHOLD)]
    threshold: usize,
    /// Suppress the wall_time_ns column for byte-stable output
    #[arg(long)]
    no_timing: bool,
    /// Field modulus
    #[arg(long, default_value_t = halfgcd::DEFAULT_PRIME)]
    modulus: u64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only fixtures whose tag or name contains this string
    #[arg(long)]
    filter: Option<String>,
    /// Corrupt a twiddle table first; the suite is then expected to fail
    #[arg(long, hide = true)]
    inject_twiddle_fault: bool,
}

fn bench_alg_help() -> String {
    format!("Algorithms: {}", bench::BenchAlg::all_tags())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    Ok(match s {
        "auto" => Algorithm::Auto,
        "euclid-ref" => Algorithm::EuclidRef,
        "hgcd-normal-basic" => Algorithm::NormalBasic,
        "hgcd-normal-basic-mp" => Algorithm::NormalBasicMiddleProduct,
        "hgcd-normal-fft" => Algorithm::NormalFft,
        "hgcd-normal-any" => Algorithm::NormalAny,
        "hgcd-general" => Algorithm::General,
        "hgcd-general-fft" => Algorithm::GeneralFft,
        _ => return Err(format!("unknown algorithm {s:?}")),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::UnsupportedField(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum CliError {
    Usage(String),
    UnsupportedField(String),
    Runtime(String),
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Parse(m) => CliError::Usage(format!("parse error: {m}")),
            FileError::UnsupportedField(m) => CliError::UnsupportedField(m),
        }
    }
}

impl From<halfgcd::Error> for CliError {
    fn from(e: halfgcd::Error) -> Self {
        match e {
            halfgcd::Error::UnsupportedLength => CliError::UnsupportedField(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gcd(args) => cmd_gcd(args, false),
        Command::Xgcd(args) => cmd_gcd(args, true),
        Command::Hgcd(args) => cmd_hgcd(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Selftest(args) => {
            let failures = selftest::run(args.filter.as_deref(), args.inject_twiddle_fault);
            Ok(if failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn read_two_polys(path: &PathBuf) -> Result<polyfile::PolyFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let pf = polyfile::parse(&text)?;
    if pf.sections.len() != 2 {
        return Err(CliError::Usage(format!(
            "expected two polynomials, found {}",
            pf.sections.len()
        )));
    }
    Ok(pf)
}

/// Plan sized for every transform a full gcd at degree d can request.
fn plan_for_degree(f: &PrimeField, d: usize) -> Result<TransformPlan, CliError> {
    let need = (4 * d.max(1)).next_power_of_two();
    let max_log2 = need.trailing_zeros().min(f.two_adicity());
    TransformPlan::new(f, max_log2).map_err(Into::into)
}

fn cmd_gcd(args: GcdArgs, extended: bool) -> Result<ExitCode, CliError> {
    let pf = read_two_polys(&args.file)?;
    let mut c = CostCounter::new();
    match pf.field {
        FieldSpec::Prime(p) => {
            let f = polyfile::prime_field(p)?;
            let a = polyfile::parse_prime_poly(&f, &pf.sections[0])?;
            let b = polyfile::parse_prime_poly(&f, &pf.sections[1])?;
            let d = a.len().max(b.len());
            let plan = plan_for_degree(&f, d)?;
            let cfg = GcdConfig { algorithm: args.alg, threshold: args.threshold };
            let r = gcd::xgcd(&plan, &a, &b, &cfg, &mut c)?;
            if extended {
                print!("{}", polyfile::emit_prime(p, &[&r.g, &r.u, &r.v]));
            } else {
                print!("{}", polyfile::emit_prime(p, &[&r.g]));
            }
        }
        FieldSpec::Rational => {
            let a = polyfile::parse_rational_poly(&pf.sections[0])?;
            let b = polyfile::parse_rational_poly(&pf.sections[1])?;
            let r = gcd::xgcd_generic(&Rationals, &a, &b, &mut c)?;
            if extended {
                print!("{}", polyfile::emit_rational(&[&r.g, &r.u, &r.v]));
            } else {
                print!("{}", polyfile::emit_rational(&[&r.g]));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hgcd(args: HgcdArgs) -> Result<ExitCode, CliError> {
    let pf = read_two_polys(&args.file)?;
    let mut c = CostCounter::new();
    match pf.field {
        FieldSpec::Prime(p) => {
            let f = polyfile::prime_field(p)?;
            let a = polyfile::parse_prime_poly(&f, &pf.sections[0])?;
            let b = polyfile::parse_prime_poly(&f, &pf.sections[1])?;
            if a.deg() <= b.deg() {
                return Err(CliError::Usage("hgcd requires deg P > deg Q".into()));
            }
            let d = a.deg().expect_finite() as usize;
            if args.k > d {
                return Err(CliError::Usage(format!("k = {} exceeds deg P = {d}", args.k)));
            }
            let plan = plan_for_degree(&f, d)?;
            let ell = args.k.next_power_of_two().max(1);
            let m = if plan.supports(ell) {
                hgcd::hgcd_general_fft(&plan, &a, &b, args.k, ell, args.threshold, &mut c)?.matrix
            } else {
                hgcd::hgcd_general(&f, &Karatsuba::default(), &a, &b, args.k, args.threshold, &mut c)?
            };
            // row-major entry order: m11, m12, m21, m22
            print!("{}", polyfile::emit_prime(p, &[&m.m11, &m.m12, &m.m21, &m.m22]));
        }
        FieldSpec::Rational => {
            let a = polyfile::parse_rational_poly(&pf.sections[0])?;
            let b = polyfile::parse_rational_poly(&pf.sections[1])?;
            if a.deg() <= b.deg() {
                return Err(CliError::Usage("hgcd requires deg P > deg Q".into()));
            }
            let d = a.deg().expect_finite() as usize;
            if args.k > d {
                return Err(CliError::Usage(format!("k = {} exceeds deg P = {d}", args.k)));
            }
            let m = hgcd::hgcd_general(
                &Rationals,
                &Karatsuba::default(),
                &a,
                &b,
                args.k,
                args.threshold,
                &mut c,
            )?;
            print!("{}", polyfile::emit_rational(&[&m.m11, &m.m12, &m.m21, &m.m22]));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, CliError> {
    let mut algs = Vec::new();
    for tag in &args.alg {
        let alg = bench::BenchAlg::parse(tag).ok_or_else(|| {
            CliError::Usage(format!("unknown algorithm {tag:?}; known: {}", bench::BenchAlg::all_tags()))
        })?;
        algs.push(alg);
    }
    let sizes = bench::parse_sizes(&args.sizes).map_err(CliError::Usage)?;
    if sizes.is_empty() {
        return Err(CliError::Usage("empty size list".into()));
    }
    if args.seeds.is_empty() {
        return Err(CliError::Usage("empty seed list".into()));
    }
    let f = polyfile::prime_field(args.modulus)?;
    for &k in &sizes {
        if !k.is_power_of_two() || k < 2 {
            return Err(CliError::Usage(format!("size {k} is not a power of two >= 2")));
        }
        // a half-gcd at k works on degree-2k inputs and needs transforms a
        // little past 2k; 4k covers every internal product
        if (4 * k).next_power_of_two().trailing_zeros() > f.two_adicity() {
            return Err(CliError::UnsupportedField(format!(
                "size {k} exceeds the two-adicity of the field (t = {})",
                f.two_adicity()
            )));
        }
    }
    let max_k = *sizes.iter().max().unwrap();
    let plan = plan_for_degree(&f, 2 * max_k)?;
    let cfg = bench::BenchConfig {
        algs,
        sizes,
        seeds: args.seeds.clone(),
        input: if args.generator == "general" {
            bench::InputKind::General
        } else {
            bench::InputKind::Normal
        },
        threshold: if args.exact_accounting { 1 } else { args.threshold },
        timing: !args.no_timing,
    };
    let rows = bench::run(&f, &plan, &cfg).map_err(CliError::Runtime)?;
    print!("{}", bench::to_csv(&rows, cfg.timing));
    Ok(ExitCode::SUCCESS)
}
