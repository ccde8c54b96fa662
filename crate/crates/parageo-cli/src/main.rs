use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parageo_cli::{run, OutputFormat, RunConfig, Suite};

/// Para-complex Riemannian geometry checks over problem files.
#[derive(Parser)]
#[command(name = "parageo", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a metric file: symmetry, para-holomorphy, Norden realization.
    MetricCheck(RunArgs),
    /// Christoffel symbols, fundamental tensors and the characteristic
    /// connection axioms.
    Connection(RunArgs),
    /// Curvature, Ricci, scalar and Einstein-tensor diagnostics.
    Curvature(RunArgs),
    /// Einstein-constant extraction and real/para-complex correspondence.
    Einstein(RunArgs),
    /// Lie-group pipeline from structure constants.
    Liegroup(RunArgs),
    /// Every suite applicable to the input file.
    All(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Override the file's tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Gravitational constant in the Einstein equation.
    #[arg(long = "constant-c", default_value_t = 1.0)]
    constant_c: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suite, args) = match cli.command {
        Command::MetricCheck(a) => (Suite::MetricCheck, a),
        Command::Connection(a) => (Suite::Connection, a),
        Command::Curvature(a) => (Suite::Curvature, a),
        Command::Einstein(a) => (Suite::Einstein, a),
        Command::Liegroup(a) => (Suite::LieGroup, a),
        Command::All(a) => (Suite::All, a),
    };
    let config = RunConfig {
        suite,
        input: args.input,
        tolerance: args.tolerance,
        output: args.output,
        format: match args.format {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        },
        constant_c: args.constant_c,
    };
    match run(&config) {
        Ok((_, code)) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
