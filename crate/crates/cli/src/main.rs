use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wernerq_cli::{
    run_bench, run_discord_curve, run_negativity_curve, run_verify, BenchOptions, CliError, Mode,
    SweepConfig, VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "wernerq",
    version,
    about = "Discord and negativity curves for the n-qubit Werner family"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discord over a p-grid per qubit count (closed form, dense, or both)
    DiscordCurve(CurveArgs),
    /// Logarithmic negativity over a p-grid per qubit count (closed form)
    NegativityCurve(CurveArgs),
    /// Cross-check the closed forms against the dense pipeline
    Verify(VerifyArgs),
    /// Wall-clock comparison of the structured and dense pipelines
    Bench(BenchArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// Qubit counts, comma separated (each 2..=1024)
    #[arg(long = "n", value_name = "LIST", value_delimiter = ',', required = true)]
    n: Vec<u32>,
    /// Low end of the mixing-parameter grid
    #[arg(long, default_value_t = 0.0)]
    p_min: f64,
    /// High end of the mixing-parameter grid
    #[arg(long, default_value_t = 1.0)]
    p_max: f64,
    /// Grid points including both endpoints (at least 2)
    #[arg(long, default_value_t = 21)]
    steps: usize,
    /// Which discord route(s) to evaluate
    #[arg(long, value_enum, default_value_t = Mode::Analytic)]
    mode: Mode,
    /// Measurement-sweep resolution along theta (numeric modes)
    #[arg(long, default_value_t = 32)]
    theta_steps: usize,
    /// Measurement-sweep resolution along phi (numeric modes)
    #[arg(long, default_value_t = 32)]
    phi_steps: usize,
    /// Write CSV to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest qubit count to cross-check densely (2..=12)
    #[arg(long, default_value_t = 6)]
    n_max: u32,
    /// Measurement-sweep resolution along theta
    #[arg(long, default_value_t = 16)]
    theta_steps: usize,
    /// Measurement-sweep resolution along phi
    #[arg(long, default_value_t = 16)]
    phi_steps: usize,
    /// Shift dense eigenvalues by EPS before comparison (fault injection)
    #[arg(long, hide = true, value_name = "EPS")]
    inject_spectrum_error: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    /// Qubit counts, comma separated (each 2..=1024)
    #[arg(long = "n", value_name = "LIST", value_delimiter = ',', required = true)]
    n: Vec<u32>,
    /// Timing repetitions per row (at least 1)
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Write CSV to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Cmd::DiscordCurve(a) => {
            let cfg = curve_config(&a)?;
            write_to(a.output, |out| run_discord_curve(&cfg, out))
        }
        Cmd::NegativityCurve(a) => {
            // Reject the unsupported mode before the numeric-capacity check
            // can fire, so the exit code reflects the actual mistake.
            if a.mode != Mode::Analytic {
                return Err(CliError::Usage(
                    "negativity-curve supports --mode analytic only; \
                     dense partial-transpose cross-checks run under `verify`"
                        .into(),
                ));
            }
            let cfg = curve_config(&a)?;
            write_to(a.output, |out| run_negativity_curve(&cfg, out))
        }
        Cmd::Verify(a) => {
            let opts = VerifyOptions {
                n_max: a.n_max,
                theta_steps: a.theta_steps,
                phi_steps: a.phi_steps,
                inject_spectrum_error: a.inject_spectrum_error,
            };
            write_to(None, |out| run_verify(&opts, out))
        }
        Cmd::Bench(a) => {
            let opts = BenchOptions { n_list: a.n, reps: a.reps };
            write_to(a.output, |out| run_bench(&opts, out))
        }
    }
}

fn curve_config(a: &CurveArgs) -> Result<SweepConfig, CliError> {
    SweepConfig::new(
        a.n.clone(),
        a.p_min,
        a.p_max,
        a.steps,
        a.mode,
        a.theta_steps,
        a.phi_steps,
    )
}

fn write_to<F>(path: Option<PathBuf>, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(p) => {
            let file = File::create(&p)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", p.display())))?;
            let mut out = BufWriter::new(file);
            f(&mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            f(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}
