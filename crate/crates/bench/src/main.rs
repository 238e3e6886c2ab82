use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rfpk::{Transr, Uplo};
use rfpk_bench::matfile::{parse_transr, parse_uplo};
use rfpk_bench::{convert, emit_csv, run_suite, write_csv, Format, MatrixFile, NrhsRule, Routine, Storage, SuiteConfig};
use rfpk_bench::{EXIT_CHECK, EXIT_DATA, EXIT_IO, EXIT_USAGE};

const LARGE_N: usize = 4000;

#[derive(Parser)]
#[command(name = "rfpk", version, about = "Benchmarks, conversions and self-checks for RFP storage")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time factor/solve/invert across storage formats and write CSV.
    Bench(BenchArgs),
    /// Convert a matrix file between full, packed and RFP storage.
    Convert(ConvertArgs),
    /// Run the built-in property checks.
    Verify,
}

#[derive(Args)]
struct BenchArgs {
    /// Matrix orders.
    #[arg(long, value_delimiter = ',', default_values_t = rfpk_bench::suite::DEFAULT_SIZES)]
    sizes: Vec<usize>,
    /// Also run n = 4000.
    #[arg(long)]
    large: bool,
    #[arg(long, value_delimiter = ',', default_value = "factor,solve,invert")]
    routines: Vec<Routine>,
    #[arg(long, value_delimiter = ',', default_value = "full,packed,rfp")]
    formats: Vec<Format>,
    #[arg(long, value_delimiter = ',', default_value = "L,U", value_parser = parse_uplo)]
    uplo: Vec<Uplo>,
    #[arg(long, value_delimiter = ',', default_value = "N,T", value_parser = parse_transr)]
    transr: Vec<Transr>,
    /// Right-hand sides for `--nrhs-rule fixed`.
    #[arg(long, default_value_t = 100)]
    nrhs: usize,
    /// `scaled` uses max(100, n/10) right-hand sides.
    #[arg(long, default_value = "scaled", value_parser = ["scaled", "fixed"])]
    nrhs_rule: String,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Condition number of the generated matrices.
    #[arg(long, default_value_t = 100.0)]
    kappa: f64,
    /// CSV output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep running after a failed residual check.
    #[arg(long)]
    keep_going: bool,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Expected input storage.
    #[arg(long)]
    from: Option<Storage>,
    #[arg(long)]
    to: Storage,
    /// Triangle of the output; defaults to the input's.
    #[arg(long, value_parser = parse_uplo)]
    uplo: Option<Uplo>,
    #[arg(long, default_value = "N", value_parser = parse_transr)]
    transr: Transr,
    /// Expected matrix order.
    #[arg(long)]
    n: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Bench(args) => bench(args),
        Command::Convert(args) => convert_cmd(args),
        Command::Verify => verify(),
    };
    ExitCode::from(code as u8)
}

fn bench(mut args: BenchArgs) -> i32 {
    if args.large && !args.sizes.contains(&LARGE_N) {
        args.sizes.push(LARGE_N);
    }
    let cfg = SuiteConfig {
        sizes: args.sizes,
        routines: args.routines,
        formats: args.formats,
        cases: args.uplo.iter().flat_map(|&u| args.transr.iter().map(move |&t| (u, t))).collect(),
        nrhs_rule: if args.nrhs_rule == "fixed" { NrhsRule::Fixed(args.nrhs) } else { NrhsRule::Scaled },
        reps: args.reps,
        seed: args.seed,
        kappa: args.kappa,
        keep_going: args.keep_going,
    };
    let records = match run_suite(&cfg) {
        Ok(r) => r,
        Err(rfpk_bench::SuiteError::Config(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK;
        }
    };
    let written = match &args.out {
        Some(path) => emit_csv(&records, path),
        None => write_csv(&records, std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write CSV: {e}");
        return EXIT_IO;
    }
    let failed = records.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        eprintln!("error: {failed} residual check(s) failed");
        return EXIT_CHECK;
    }
    0
}

fn convert_cmd(args: ConvertArgs) -> i32 {
    let input = match MatrixFile::read(&args.input) {
        Ok(f) => f,
        Err(e) => return report(e),
    };
    if let Some(from) = args.from {
        if from != input.storage {
            eprintln!("error: input holds {} storage, not {}", input.storage.as_str(), from.as_str());
            return EXIT_DATA;
        }
    }
    if let Some(n) = args.n {
        if n != input.n {
            eprintln!("error: input has order {}, not {n}", input.n);
            return EXIT_DATA;
        }
    }
    let uplo = args.uplo.unwrap_or(input.uplo);
    match convert(&input, args.to, uplo, args.transr).and_then(|out| out.write(&args.out)) {
        Ok(()) => 0,
        Err(e) => report(e),
    }
}

fn report(e: rfpk_bench::FileError) -> i32 {
    eprintln!("error: {e}");
    match e {
        rfpk_bench::FileError::Io(_) => EXIT_IO,
        rfpk_bench::FileError::Format(_) => EXIT_DATA,
    }
}

fn verify() -> i32 {
    let results = rfpk_bench::verify::run_all();
    let mut failed = 0;
    for r in &results {
        match &r.outcome {
            Ok(()) => println!("PASS {}", r.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}: {msg}", r.name);
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        0
    } else {
        EXIT_CHECK
    }
}
