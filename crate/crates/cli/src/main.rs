use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pcclone::cloner::Scheme;
use pcclone::statekit::PlaneId;
use pcclone_cli::{run, CliError, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "pcclone", version, about = "Phase-covariant cloning simulator and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compare γ(P) with its closed form for every odd M up to --max-m.
    FidelitySweep {
        #[arg(long = "max-m")]
        max_m: usize,
        /// Print exact rationals instead of decimals.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run one cloning scheme and report per-clone fidelities.
    Simulate {
        #[arg(long = "M", visible_alias = "m")]
        m: Option<usize>,
        #[arg(long = "P", visible_alias = "p")]
        p: Option<usize>,
        #[arg(long, default_value = "XZ")]
        plane: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
        #[arg(long, default_value = "A")]
        scheme: String,
        /// Seed for randomly sampled covariance probe phases.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run invariant checks and report each defect.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Parametric amplifier: first-order output and truncated evolution.
    Opa {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        gain: f64,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "text")]
    format: String,
    /// Overrides the numerical agreement threshold.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Also write the report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn build(cmd: Cmd) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let (mut config, common) = match cmd {
        Cmd::FidelitySweep { max_m, exact, common } => {
            let mut c = RunConfig::new(Command::FidelitySweep);
            c.max_m = Some(max_m);
            c.exact = exact;
            (c, common)
        }
        Cmd::Simulate { m, p, plane, phase, scheme, seed, common } => {
            let mut c = RunConfig::new(Command::Simulate);
            c.m = m;
            c.p = p;
            c.plane = plane
                .parse::<PlaneId>()
                .map_err(|e| CliError::Config(format!("plane: {e}")))?;
            c.scheme = scheme
                .parse::<Scheme>()
                .map_err(|e| CliError::Config(format!("scheme: {e}")))?;
            c.phase = phase;
            c.seed = seed;
            (c, common)
        }
        Cmd::Verify { suite, common } => {
            let mut c = RunConfig::new(Command::Verify);
            c.suite = Some(suite);
            (c, common)
        }
        Cmd::Opa { phase, gain, order, common } => {
            let mut c = RunConfig::new(Command::Opa);
            c.phase = phase;
            c.gain = Some(gain);
            c.order = Some(order);
            (c, common)
        }
    };
    config.output_format = common.format.parse::<OutputFormat>()?;
    config.tolerance = common.tolerance;
    Ok((config.validate()?, common.output))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = build(cli.command).and_then(|(config, output)| {
        let out = run(&config)?;
        if let Some(path) = output {
            std::fs::write(path, &out.body)?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            print!("{}", out.body);
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
