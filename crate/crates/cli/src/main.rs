use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ri_cli::{CliError, RunConfig};

#[derive(Parser)]
#[command(name = "ri", version, about = "Dilation indices and shift spectra of Lorentz and Orlicz spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override `n_max`
    #[arg(long, global = true)]
    nmax: Option<u32>,

    /// Override `k_radius` (weights are taken on [-k, k])
    #[arg(long, global = true)]
    krange: Option<i64>,

    /// Override the random seed
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Estimated and closed-form dilation exponents
    Indices,
    /// Approximate eigenvalues, F(X) and per-lambda classification
    Spectrum,
    /// CSV of probe minima and residuals per (lambda, n)
    Probe,
    /// CSV of approximate-eigenvector residual curves
    Residuals,
    /// Distortion of disjoint equimeasurable families
    Witness,
    /// All of the above as one JSON document
    Report,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("missing `--config`".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(n) = cli.nmax {
        cfg.n_max = n;
    }
    if let Some(k) = cli.krange {
        cfg.k_radius = k;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate()?;

    let output = match cli.command {
        Command::Indices => ri_cli::cmd_indices(&cfg)?,
        Command::Spectrum => ri_cli::cmd_spectrum(&cfg)?,
        Command::Probe => ri_cli::cmd_probe(&cfg)?,
        Command::Residuals => ri_cli::cmd_residuals(&cfg)?,
        Command::Witness => ri_cli::cmd_witness(&cfg)?,
        Command::Report => ri_cli::cmd_report(&cfg)?,
    };
    match &cli.out {
        Some(p) => std::fs::write(p, output).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ri: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
