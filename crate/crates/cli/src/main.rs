use clap::Parser;
use fracstable_cli::output::{config_hash, manifest_path, write_outputs, RunInfo};
use fracstable_cli::{commands, Command, Failure, RunConfig};
use std::path::PathBuf;
use std::time::Instant;

/// Stable subordinators, their inverses and multi-term fractional diffusion.
#[derive(Parser, Debug)]
#[command(name = "fracstable", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one configuration entry, e.g. `--set telegraph.lambda=2`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// CSV output path; the manifest goes next to it with a `.json` extension.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Verification suite for `verify`.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, env = "FRACSTABLE_WORKERS")]
    workers: Option<usize>,
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    let start = Instant::now();
    let mut config = RunConfig::load(cli.config.as_deref(), &cli.set)?;
    if let Some(c) = config.command.filter(|c| *c != cli.command) {
        return Err(Failure::Validation(format!("config is for '{}' but '{}' was requested", c.name(), cli.command.name())));
    }
    config.command = Some(cli.command);
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(suite) = cli.suite {
        config.suite = suite;
    }
    let workers = cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        return Err(Failure::Validation("workers must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| Failure::Io(e.to_string()))?;
    let table = pool.install(|| commands::run(&config))?;
    let csv = cli.out.unwrap_or_else(|| PathBuf::from(format!("{}.csv", cli.command.name())));
    let hash = config_hash(&config);
    let info = RunInfo { config: &config, hash: &hash, workers, wall_time: start.elapsed().as_secs_f64(), csv: &csv };
    write_outputs(&table, &info)?;
    print!("{}", table.summary);
    eprintln!("wrote {} and {}", csv.display(), manifest_path(&csv).display());
    if table.verdict == Some(false) {
        let f = Failure::Verification(format!("suite {} has failing checks", config.suite));
        eprintln!("{}", f.diagnostic());
        return Ok(f.exit_code());
    }
    Ok(0)
}

fn main() {
    let code = execute(Cli::parse()).unwrap_or_else(|f| {
        eprintln!("{}", f.diagnostic());
        f.exit_code()
    });
    std::process::exit(code);
}
