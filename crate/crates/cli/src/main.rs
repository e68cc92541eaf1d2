use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unitfield_cli::config::parse_resolution;
use unitfield_cli::{catalog, exit, output, report_status, run_experiment, write_outputs, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "unitfield", version, about = "Energy, bending and volume checks for unit vector fields on hypersurfaces")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite of checks and report the outcome.
    Verify(VerifyArgs),
    /// List the catalog surfaces, fields and suites.
    List {
        /// Print JSON instead of a table.
        #[arg(long)]
        machine: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON config file; flags given here override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// sphere | ellipsoid | tube-torus
    #[arg(long)]
    surface: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    semi_axes: Option<Vec<f64>>,
    /// Major radius of the tube torus.
    #[arg(long = "R")]
    major: Option<f64>,
    /// Tube radius of the tube torus.
    #[arg(long)]
    rho: Option<f64>,
    /// hopf | circle | projected-hopf | perturbed | natural
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Nodes per axis, e.g. 48,48,64; repeat for a convergence sequence.
    #[arg(long, value_parser = parse_resolution)]
    resolution: Vec<Vec<usize>>,
    /// energy | bending | volume | degree | all
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Print the JSON report on stdout instead of the summary table.
    #[arg(long)]
    machine: bool,
}

impl VerifyArgs {
    fn flags(&self) -> ExperimentConfig {
        ExperimentConfig {
            surface: self.surface.clone(),
            n: self.n,
            radius: self.radius,
            semi_axes: self.semi_axes.clone(),
            major: self.major,
            rho: self.rho,
            field: self.field.clone(),
            amplitude: self.amplitude,
            seed: self.seed,
            resolution: (!self.resolution.is_empty()).then(|| self.resolution.clone()),
            suite: self.suite.clone(),
            out_json: self.out_json.clone(),
            out_csv: self.out_csv.clone(),
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let file = match &args.config {
        Some(p) => ExperimentConfig::from_file(p)?,
        None => ExperimentConfig::default(),
    };
    let config = file.merge(args.flags());
    let experiment = config.resolve()?;
    let report = run_experiment(&experiment)?;
    write_outputs(&config, &report)?;
    if args.machine {
        let mut out = std::io::stdout().lock();
        output::write_json(&report, &mut out)?;
        let _ = writeln!(out);
    } else {
        emit(&output::render_summary(&report));
    }
    Ok(report_status(&report))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::List { machine } => {
            let c = catalog::catalog();
            if machine {
                emit(&(serde_json::to_string_pretty(&c).expect("catalog serializes") + "\n"));
            } else {
                emit(&catalog::render_text(&c));
            }
            exit::OK
        }
        Command::Verify(args) => verify(&args).unwrap_or_else(|e| {
            eprintln!("unitfield: {e}");
            e.exit_code()
        }),
    };
    ExitCode::from(code as u8)
}
