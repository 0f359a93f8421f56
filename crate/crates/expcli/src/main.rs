use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sealab_exp::cli;
use sealab_exp::config::Config;
use sealab_exp::report::emit_report;

#[derive(Parser, Debug)]
#[command(name = "sealab", version, about = "Run SEA simulation experiments and write JSON Lines results")]
struct Args {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file; defaults to `<experiment>.jsonl`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Flat `key = value` config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override one config key, e.g. `--set samples=50`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// VQE energy traces for several ansatz families.
    Vqe,
    /// Gradient variance against qubit count.
    BpScan,
    /// Single-parameter variance inside SEA with Haar-random blocks.
    HaarBlockVar,
    /// Frame potential of SEA variants.
    FramePotential,
    /// Second moment of SEA against global Haar.
    TwoDesignCheck,
    /// Exact SEA construction fidelities.
    SchmidtConstruct,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Vqe => "vqe",
            Command::BpScan => "bp-scan",
            Command::HaarBlockVar => "haar-block-var",
            Command::FramePotential => "frame-potential",
            Command::TwoDesignCheck => "two-design-check",
            Command::SchmidtConstruct => "schmidt-construct",
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let experiment = args.command.name();
    let result = (|| -> Result<PathBuf, String> {
        let mut config = match &args.config {
            Some(p) => Config::load(p).map_err(|e| format!("{}: {e}", p.display()))?,
            None => Config::new(),
        };
        for pair in &args.overrides {
            config.set_pair(pair)?;
        }
        let report = cli::run(experiment, &config, args.seed).map_err(|e| e.to_string())?;
        let out = args.out.clone().unwrap_or_else(|| PathBuf::from(format!("{experiment}.jsonl")));
        emit_report(&report, &out).map_err(|e| format!("{}: {e}", out.display()))?;
        Ok(out)
    })();
    match result {
        Ok(out) => {
            eprintln!("wrote {}", out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("sealab {experiment}: {e}");
            ExitCode::FAILURE
        }
    }
}
