//! `rmnk`: generate, evaluate and analyze rho-MNK landscape instances.

mod config;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use rmnk_core::{
    enumerate_plo_with, read_csv, read_instance_file, run_grid, walk_campaign, write_csv,
    write_instance_file, EnumerationOptions, Instance, Solution, DEFAULT_ENUMERATION_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "rmnk",
    version,
    about = "Multiobjective NK-landscapes with tunable objective correlation"
)]
struct Cli {
    /// Worker threads (0 = one per core). Outputs are identical for any value.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it in the versioned text format
    Gen {
        /// Bit-string length
        #[arg(long)]
        n: usize,
        /// Epistatic links per bit
        #[arg(long)]
        k: usize,
        /// Number of objectives
        #[arg(long)]
        m: usize,
        /// Pairwise objective correlation
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        /// Master seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output instance file
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a solution on an instance
    Eval {
        /// Instance file
        instance: PathBuf,
        /// Solution as a 0/1 string, first character is bit 0
        #[arg(long)]
        bits: String,
    },
    /// Exhaustively count Pareto local optima and the Pareto optimal set
    Enum {
        /// Instance file
        instance: PathBuf,
        /// Lift the default N <= 24 guard
        #[arg(long)]
        force_enum: bool,
        /// Write the CSV row here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the Pareto local optima, one solution per line
        #[arg(long)]
        plo_out: Option<PathBuf>,
        /// Write the Pareto optimal set, one solution per line
        #[arg(long)]
        pareto_out: Option<PathBuf>,
    },
    /// Run a campaign of Pareto hill-climbing walks
    Walk {
        /// Instance file
        instance: PathBuf,
        /// Number of independent walks
        #[arg(long, default_value_t = 1000)]
        walks: usize,
        /// Master seed for the campaign
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-walk lengths here, one per line
        #[arg(long)]
        lengths_out: Option<PathBuf>,
    },
    /// Run a parameter grid from a config file and write a results CSV
    Grid {
        /// Flat `key = value` configuration file
        #[arg(long)]
        config: PathBuf,
        /// Output CSV
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize a results CSV: regressions, cell means and plot scripts
    Report {
        /// Results CSV produced by `grid`
        #[arg(long)]
        results: PathBuf,
        /// Directory for the summary and plot scripts
        #[arg(long, default_value = "report")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_instance(path: &Path) -> anyhow::Result<Instance<f64>> {
    let instance = read_instance_file::<f64>(path)
        .with_context(|| format!("reading instance {}", path.display()))?;
    eprintln!("instance seed: {}", instance.seed());
    Ok(instance)
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gen {
            n,
            k,
            m,
            rho,
            seed,
            out,
        } => {
            eprintln!("master seed: {seed}");
            let instance = Instance::<f64>::generate(n, k, m, rho, seed)?;
            write_instance_file(&instance, &out)
                .with_context(|| format!("writing {}", out.display()))?;
            eprintln!("wrote {}", out.display());
            Ok(())
        }
        Command::Eval { instance, bits } => {
            let instance = load_instance(&instance)?;
            let solution: Solution = bits.parse()?;
            let objectives = instance.evaluate(&solution)?;
            let formatted: Vec<String> =
                objectives.iter().map(|v| format!("{v:.16e}")).collect();
            println!("{}", formatted.join(" "));
            Ok(())
        }
        Command::Enum {
            instance,
            force_enum,
            out,
            plo_out,
            pareto_out,
        } => {
            let instance = load_instance(&instance)?;
            let keep_lists = plo_out.is_some() || pareto_out.is_some();
            let options = EnumerationOptions {
                keep_lists,
                limit: if force_enum {
                    instance.n()
                } else {
                    DEFAULT_ENUMERATION_LIMIT
                },
                ..EnumerationOptions::default()
            };
            let summary = enumerate_plo_with(&instance, &options)?;
            let mut row = String::new();
            row.push_str("N,K,M,rho,seed,space_size,n_plo,plo_fraction,n_pareto\n");
            row.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                instance.n(),
                instance.k(),
                instance.m(),
                instance.rho(),
                instance.seed(),
                summary.space_size,
                summary.n_plo,
                summary.plo_fraction,
                summary.n_pareto,
            ));
            write_text(out.as_deref(), &row)?;
            if let Some(path) = plo_out {
                write_solutions(&path, summary.plo_list.as_deref().unwrap_or(&[]))?;
            }
            if let Some(path) = pareto_out {
                write_solutions(&path, summary.pareto_list.as_deref().unwrap_or(&[]))?;
            }
            Ok(())
        }
        Command::Walk {
            instance,
            walks,
            seed,
            lengths_out,
        } => {
            eprintln!("master seed: {seed}");
            let instance = load_instance(&instance)?;
            let stats = walk_campaign(&instance, walks, seed)?;
            println!("N,K,M,rho,seed,walks,mean_length,sd_length");
            println!(
                "{},{},{},{},{},{},{},{}",
                instance.n(),
                instance.k(),
                instance.m(),
                instance.rho(),
                seed,
                stats.n_walks,
                stats.mean_length,
                stats.sd_length,
            );
            if let Some(path) = lengths_out {
                let mut text = String::new();
                for length in stats.lengths.as_deref().unwrap_or(&[]) {
                    text.push_str(&length.to_string());
                    text.push('\n');
                }
                fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(())
        }
        Command::Grid { config, out } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading config {}", config.display()))?;
            let grid_config = config::parse_grid_config(&text)?;
            eprintln!("master seed: {}", grid_config.master_seed);
            let cells = grid_config.cells().len();
            eprintln!(
                "cells: {cells}, instances per cell: {}, walks per instance: {}",
                grid_config.instances_per_cell, grid_config.walks_per_instance
            );
            let rows = run_grid(&grid_config);
            let mut bytes = Vec::new();
            write_csv(&rows, &mut bytes)?;
            fs::write(&out, bytes).with_context(|| format!("writing {}", out.display()))?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(())
        }
        Command::Report { results, out_dir } => {
            let file = fs::File::open(&results)
                .with_context(|| format!("reading results {}", results.display()))?;
            let rows = read_csv(std::io::BufReader::new(file))?;
            let outputs = report::build_report(&rows)?;
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            fs::write(out_dir.join("summary.txt"), &outputs.summary)?;
            for (name, content) in &outputs.files {
                fs::write(out_dir.join(name), content)?;
            }
            print!("{}", outputs.summary);
            eprintln!(
                "wrote summary.txt and {} data/plot files to {}",
                outputs.files.len(),
                out_dir.display()
            );
            Ok(())
        }
    }
}

fn write_text(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn write_solutions(path: &Path, solutions: &[Solution]) -> anyhow::Result<()> {
    if solutions.is_empty() {
        bail!("no solution lists were retained");
    }
    let mut text = String::new();
    for solution in solutions {
        text.push_str(&solution.to_string());
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
