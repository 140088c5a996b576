use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qimem_cli::{modes, CliError, Format, Mode, SweepConfig};

#[derive(Parser)]
#[command(name = "qimem", version, about = "Quantum illumination with a lossy idler memory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grid sweep; runs whatever mode the config names (default: tmst).
    Sweep(Common),
    /// Closed-form optima next to a numeric maximizer.
    Optimize(Common),
    /// Receiver advantage against signal energy.
    Receiver(Common),
    /// Monte-Carlo error probability of the threshold test.
    Montecarlo(Common),
    /// Fiber transmission against length.
    Range(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (default: config output.path, else stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn load(mode: Option<Mode>, args: &Common) -> Result<SweepConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => SweepConfig::from_file(path)?,
        None => SweepConfig::default_for(mode.unwrap_or(Mode::Tmst)),
    };
    if let Some(expected) = mode {
        if cfg.mode != expected {
            return Err(CliError::config(
                Some("mode".into()),
                format!("subcommand {} needs mode {}, config has {}", expected.name(), expected.name(), cfg.mode.name()),
            ));
        }
    }
    if let Some(seed) = args.seed {
        cfg.fixed.seed = seed;
    }
    if let Some(path) = &args.out {
        cfg.output.path = Some(path.clone());
    }
    if let Some(format) = args.format {
        cfg.output.format = format;
    }
    cfg.resolve()?;
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (mode, args) = match &cli.command {
        Command::Sweep(a) => (None, a),
        Command::Optimize(a) => (Some(Mode::Optimize), a),
        Command::Receiver(a) => (Some(Mode::Receiver), a),
        Command::Montecarlo(a) => (Some(Mode::Montecarlo), a),
        Command::Range(a) => (Some(Mode::Range), a),
    };
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(CliError::config(Some("--threads".into()), "must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(Some("--threads".into()), e.to_string()))?;
    }
    let cfg = load(mode, args)?;
    let ds = modes::run(&cfg)?;

    match &cfg.output.path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Output(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            ds.write(&cfg, cfg.output.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            ds.write(&cfg, cfg.output.format, stdout.lock())?;
        }
    }
    if cfg.output.format == Format::Csv && !ds.summary.is_empty() {
        eprintln!("{}", serde_json::json!({ "summary": ds.summary }));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::config(Some("arguments".into()), e.render().to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
