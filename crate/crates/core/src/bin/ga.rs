use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ga_engine::cli::{
    cmd_oracle, cmd_reproduce, cmd_run, cmd_string_demo, exit_code_for, Overrides,
    StringDemoOptions,
};

/// Seedable genetic-algorithm engine: round-trip tours over a distance
/// matrix, target-string evolution, and an exhaustive small-instance solver.
#[derive(Parser)]
#[command(name = "ga", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configured experiment; writes `run-<seed>.csv` and `run-<seed>.json`
    Run {
        /// JSON run configuration
        config: PathBuf,
        /// Override the config's seed
        #[arg(long)]
        seed: Option<u64>,
        /// Override the generation backstop
        #[arg(long)]
        generations: Option<u32>,
        /// Override the population size
        #[arg(long)]
        population: Option<usize>,
        /// Override the crossover rate
        #[arg(long)]
        crossover_rate: Option<f64>,
        /// Override the mutation rate
        #[arg(long)]
        mutation_rate: Option<f64>,
        /// Override the elite count
        #[arg(long)]
        elitism: Option<usize>,
        /// Directory for run artifacts
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Execute this many consecutive seeds concurrently
        #[arg(long, default_value_t = 1)]
        runs: u32,
    },
    /// Solve a small instance exactly by enumerating every tour
    Oracle {
        /// Edge-list CSV (`From,To,Distance` with `P<k>` labels)
        matrix: PathBuf,
    },
    /// Recompute the bundled worked example and diff it against its recorded values
    Reproduce,
    /// Evolve a target string from random candidates
    StringDemo {
        /// The string to evolve towards
        target: String,
        /// Restrict genes to these characters (default: printable ASCII)
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, default_value_t = 200)]
        population: usize,
        #[arg(long, default_value_t = 0.9)]
        crossover_rate: f64,
        #[arg(long, default_value_t = 0.8)]
        mutation_rate: f64,
        #[arg(long, default_value_t = 2)]
        elitism: usize,
        /// Generation backstop
        #[arg(long, default_value_t = 2000)]
        generations: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();

    let outcome = match cli.command {
        Command::Run {
            config,
            seed,
            generations,
            population,
            crossover_rate,
            mutation_rate,
            elitism,
            out_dir,
            runs,
        } => {
            let overrides = Overrides {
                seed,
                generations,
                population,
                crossover_rate,
                mutation_rate,
                elitism,
            };
            cmd_run(&config, &overrides, &out_dir, runs, &mut stdout)
        }
        Command::Oracle { matrix } => cmd_oracle(&matrix, &mut stdout),
        Command::Reproduce => cmd_reproduce(&mut stdout),
        Command::StringDemo {
            target,
            alphabet,
            population,
            crossover_rate,
            mutation_rate,
            elitism,
            generations,
            seed,
        } => {
            let options = StringDemoOptions {
                population,
                crossover_rate,
                mutation_rate,
                elitism,
                generations,
                seed,
            };
            cmd_string_demo(&target, alphabet.as_deref(), &options, &mut stdout)
        }
    };

    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error) as u8)
        }
    }
}
