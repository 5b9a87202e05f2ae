//! Command-line front end: database ingestion, search runs, verification
//! sweeps, QASM export, and resource statistics.
//!
//! Exit codes: 0 on completion (found or not), 1 on usage or parse errors,
//! 2 on invariant violations or failed verification checks.

mod report;
mod verify_cmd;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use qgrover_core::circuit::gate_stats;
use qgrover_core::grover::{
    build_diffusion, build_initial_circuit, iteration_count, run_search,
};
use qgrover_core::oracle::build_double_query;
use qgrover_core::qasm::export_qasm;
use qgrover_core::qmem::{build_load_circuit, parse_bits, parse_database};
use qgrover_core::verify::multiplicity;
use qgrover_core::{Circuit, Database, Error, Iterations, QubitLayout, SearchOptions};

use report::JsonReport;

#[derive(Parser)]
#[command(name = "qgrover", version, about = "Grover search of a real classical database, simulated on a statevector")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the search and report success probabilities and measurements
    Run(RunArgs),
    /// Check the built circuits against independent oracles
    Verify(VerifyArgs),
    /// Export the full search circuit as OpenQASM 3
    Export(ExportArgs),
    /// Report qubit, gate, and arity statistics
    Stats(StatsArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Database file (`n m` header, then 2^n bit-string records)
    #[arg(long)]
    db: PathBuf,
    /// Target record, MSB-left bits
    #[arg(long)]
    target: String,
    /// `auto` or an explicit iteration count
    #[arg(long, default_value = "auto")]
    iterations: String,
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fold the target register and constant wire out of the simulation
    #[arg(long)]
    fold: bool,
    /// Write a JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "sweep")]
    db: Option<PathBuf>,
    #[arg(long, required_unless_present = "sweep")]
    target: Option<String>,
    /// Run the built-in sweep instead of a single database (`small`)
    #[arg(long)]
    sweep: Option<String>,
    /// Deliberately corrupt the oracle before checking (self-test hook)
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    db: PathBuf,
    #[arg(long)]
    target: String,
    #[arg(long, default_value = "auto")]
    iterations: String,
    /// Output format; only `qasm3`
    #[arg(long, default_value = "qasm3")]
    format: String,
    /// Write here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    db: PathBuf,
    /// Optional target; without it the schedule assumes a unique solution
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Invariant(String),
}

impl From<Error> for CliError {
    fn from(err: Error) -> CliError {
        match err {
            Error::NormDrift { .. } => CliError::Invariant(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> CliError {
        CliError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap help/version requests are not errors
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Verify(args) => verify_cmd::cmd_verify(&args),
        Command::Export(args) => cmd_export(&args),
        Command::Stats(args) => cmd_stats(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Invariant(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_database(path: &PathBuf) -> Result<Database, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("--db {}: {e}", path.display())))?;
    parse_database(&text).map_err(|e| CliError::Usage(format!("--db: {e}")))
}

fn parse_target(db: &Database, text: &str) -> Result<u64, CliError> {
    parse_bits(text, db.m()).map_err(|e| CliError::Usage(format!("--target: {e}")))
}

fn parse_iterations(text: &str) -> Result<Iterations, CliError> {
    if text == "auto" {
        Ok(Iterations::Auto)
    } else {
        text.parse()
            .map(Iterations::Explicit)
            .map_err(|_| CliError::Usage("--iterations: expected `auto` or a count".into()))
    }
}

fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let db = load_database(&args.db)?;
    let s = parse_target(&db, &args.target)?;
    let options = SearchOptions {
        iterations: parse_iterations(&args.iterations)?,
        shots: args.shots,
        seed: args.seed,
        fold: args.fold,
    };
    let started = Instant::now();
    let report = run_search(&db, s, &options)?;
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;

    println!(
        "database: {} (n={}, m={}, N={})",
        args.db.display(),
        report.n,
        report.m,
        db.record_count()
    );
    println!("target: {} (M={})", args.target, report.multiplicity);
    println!(
        "iterations: {} ({}), queries: {}",
        report.iterations, args.iterations, report.query_count
    );
    for (i, p) in report.success_probabilities.iter().enumerate() {
        println!("  success probability after iteration {}: {p:.9}", i + 1);
    }
    println!(
        "measured mode address: {} over {} shots (found: {})",
        report.reported_address, args.shots, report.found
    );
    let stats = &report.gate_stats;
    println!(
        "gates: {} total (h={}, x={}, mcx={}), max arity {}, {} qubits",
        stats.total(),
        stats.hadamard,
        stats.pauli_x,
        stats.mcx,
        stats.max_arity,
        stats.qubit_count
    );
    println!("wall time: {wall_time_ms:.3} ms");

    if let Some(out) = &args.out {
        let json = JsonReport::new(&report, &args.target, wall_time_ms);
        let text = serde_json::to_string_pretty(&json)
            .map_err(|e| CliError::Invariant(e.to_string()))?;
        std::fs::write(out, text + "\n")?;
    }
    Ok(())
}

fn schedule(db: &Database, s: Option<u64>, iterations: &Iterations) -> Result<u64, CliError> {
    Ok(match iterations {
        Iterations::Explicit(r) => *r,
        Iterations::Auto => {
            let solutions = s.map(|s| multiplicity(db, s)).unwrap_or(1).max(1);
            iteration_count(db.record_count(), solutions)?
        }
    })
}

/// The complete search circuit: initialization, then r repetitions of the
/// double query and the diffusion operator.
fn build_full_circuit(db: &Database, s: u64, r: u64) -> Result<Circuit, CliError> {
    let layout = QubitLayout::for_database(db);
    let mut circuit = build_initial_circuit(s, &layout)?;
    let block = build_double_query(db, s, &layout)?;
    let diffusion = build_diffusion(&layout);
    for _ in 0..r {
        circuit.extend(&block.double_query)?;
        circuit.extend(&diffusion)?;
    }
    Ok(circuit)
}

fn cmd_export(args: &ExportArgs) -> Result<(), CliError> {
    if args.format != "qasm3" {
        return Err(CliError::Usage(format!(
            "--format: unknown format `{}` (only qasm3)",
            args.format
        )));
    }
    let db = load_database(&args.db)?;
    let s = parse_target(&db, &args.target)?;
    let iterations = parse_iterations(&args.iterations)?;
    let r = schedule(&db, Some(s), &iterations)?;
    let circuit = build_full_circuit(&db, s, r)?;
    let text = export_qasm(&circuit);
    match &args.out {
        Some(out) => std::fs::write(out, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_stats(args: &StatsArgs) -> Result<(), CliError> {
    let db = load_database(&args.db)?;
    let s = args
        .target
        .as_deref()
        .map(|t| parse_target(&db, t))
        .transpose()?;
    let layout = QubitLayout::for_database(&db);
    let load_stats = gate_stats(&build_load_circuit(&db, &layout)?);
    // comparator structure does not depend on the target value
    let query = qgrover_core::oracle::build_oracle_query(&db, 0, &layout)?;
    let query_stats = gate_stats(&query);
    let r = schedule(&db, s, &Iterations::Auto)?;
    let full = build_full_circuit(&db, s.unwrap_or(0), r)?;
    let total_stats = gate_stats(&full);

    let mut text = String::new();
    text.push_str(&format!(
        "qubits: {} (n={} address + m={} data + m target + kickback + c + one)\n",
        layout.qubit_count(),
        db.n(),
        db.m()
    ));
    text.push_str(&format!("load gates: {}\n", load_stats.total()));
    text.push_str(&format!("max arity: {}\n", total_stats.max_arity.max(load_stats.max_arity)));
    text.push_str(&format!("gates per query: {}\n", query_stats.total()));
    text.push_str(&format!(
        "total gates for r={} iterations: {}\n",
        r,
        total_stats.total()
    ));
    print!("{text}");
    if let Some(out) = &args.out {
        std::fs::write(out, text)?;
    }
    Ok(())
}
