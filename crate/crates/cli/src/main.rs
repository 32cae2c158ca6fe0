//! `kcasteljau`: regenerate the accuracy experiments as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kcasteljau::experiments::{
    condition_sweep, cubic_comparison, flop_report, root_neighborhood, table_reproduction,
    write_csv, write_flop_report, Experiment, ExperimentConfig,
};

#[derive(Parser)]
#[command(
    name = "kcasteljau",
    version,
    about = "K-fold compensated de Casteljau experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// (s - 1)(s - 3/4)^7 on 401 points around its multiple root.
    RootNeighborhood(Common),
    /// Relative error against condition number on the 3/4 - 1.3^j grid.
    ConditionSweep(Common),
    /// Term-by-term check of the compensated evaluation at 1/2 + 1001u.
    Table1(Common),
    /// Horner vs de Casteljau on (2s - 1)^3 and compensated orders on (2s - 1)^3 (s - 1).
    CubicCompare(Common),
    /// Analytic vs instrumented flop counts, n = 2..8 and K = 1..5.
    Flops(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Args)]
struct Common {
    /// Comma-separated compensation orders, e.g. `1,2,3`.
    #[arg(long = "k", value_delimiter = ',')]
    k: Option<Vec<usize>>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of evaluation points.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl Common {
    fn config(&self, experiment: Experiment) -> ExperimentConfig {
        ExperimentConfig {
            experiment,
            k_list: self.k.clone(),
            points: self.points,
        }
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::RootNeighborhood(c) => {
            let rows = root_neighborhood(&c.config(Experiment::RootNeighborhood))?;
            write_csv(&rows, c.writer()?)?;
        }
        Command::ConditionSweep(c) => {
            let rows = condition_sweep(&c.config(Experiment::ConditionSweep))?;
            write_csv(&rows, c.writer()?)?;
        }
        Command::CubicCompare(c) => {
            let rows = cubic_comparison(&c.config(Experiment::CubicCompare))?;
            write_csv(&rows, c.writer()?)?;
        }
        Command::Table1(c) => {
            let report = table_reproduction()?;
            let mut w = c.writer()?;
            w.write_all(report.render().as_bytes())?;
            w.flush()?;
            report.verify()?;
        }
        Command::Flops(c) => {
            let cfg = c.config(Experiment::Flops);
            cfg.validate()?;
            let orders: Vec<u64> = cfg
                .k_list
                .clone()
                .unwrap_or_else(|| (1..=5).collect())
                .into_iter()
                .map(|k| k as u64)
                .collect();
            let rows = flop_report(2..=8, orders);
            let mut w = c.writer()?;
            let result = write_flop_report(&rows, &mut w);
            w.flush()?;
            result?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
