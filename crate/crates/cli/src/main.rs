//! `pairgap`: exact correlation and pairwise-independence gaps from the command line.
//!
//! Exit codes: 0 success, 1 a scan found a ratio above its bound, 2 invalid
//! input, 3 a ground-set cap was exceeded.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pairgap::gap::ScanConfig;
use pairgap::Rational;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "pairgap", version, about = "Exact pairwise-independence and correlation gaps of set functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every extension value by LP, with the closed forms beside them when n <= 3.
    Eval(FnArgs),
    /// Full gap report: extensions, ratios, witnesses, certificates and bound verdicts.
    Gap(FnArgs),
    /// Dual certificates and their feasibility, plus the tabulated duals when n = 3.
    Certify(FnArgs),
    /// Pairwise independent constructions and their dependence diagnostics.
    Dists {
        #[arg(long, value_name = "LIST|PATH")]
        x: String,
        /// Point of the three-element ω family.
        #[arg(long, value_parser = input::rational)]
        omega: Option<Rational>,
        /// Adds the optimal ω for this function.
        #[arg(long = "fn", value_name = "PATH")]
        func: Option<PathBuf>,
    },
    /// Region of x for each three-element family, and the subpolytopes of f.
    Regions {
        #[arg(long, value_name = "LIST|PATH")]
        x: String,
        #[arg(long = "fn", value_name = "PATH")]
        func: Option<PathBuf>,
    },
    /// Maximum of f+/f++ over generated instances.
    Scan {
        /// extremal-mix-n3, coverage-random(n,m), matroid-rank(n,k) or corpus:PATH.
        #[arg(long)]
        generator: String,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_parser = input::rational, default_value = "4/3")]
        bound: Rational,
    },
    /// Reproduces a named anchor instance.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
}

#[derive(clap::Args, Debug)]
struct FnArgs {
    #[arg(long = "fn", value_name = "PATH")]
    func: PathBuf,
    #[arg(long, value_name = "LIST|PATH")]
    x: String,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// The two three-element functions whose optimal distributions differ.
    #[command(name = "table1")]
    FunctionDependence,
    /// min(|S|, 1) on two elements at x = (1/2, 1/2): ratio 4/3.
    TightN2,
    /// min(|S|, 1) on three elements at x = (1/2, 1/4, 1/4): ratio 4/3.
    TightRank1,
    /// min(|S|, k) with identical marginals p.
    TightKuniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = input::rational, default_value = "1/2")]
        p: Rational,
    },
    /// Unbounded f+/F without monotonicity or without submodularity.
    #[command(name = "appendix-a1")]
    UnboundedGaps {
        #[arg(long, value_parser = input::rational, default_value = "1/10")]
        epsilon: Rational,
        #[arg(long, value_parser = input::rational, default_value = "1/2")]
        eta: Rational,
    },
    /// f++ of min(|S|, 1) at x = 1/n against its explicit witness.
    #[command(name = "appendix-a2")]
    Rank1Witness {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn emit(value: &Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let value = match cli.command {
        Command::Eval(a) => {
            let (f, x) = (input::read_setfn(&a.func)?, input::read_marginals(&a.x)?);
            commands::eval(&f, &x, &commands::caps(a.cap))?
        }
        Command::Gap(a) => {
            let (f, x) = (input::read_setfn(&a.func)?, input::read_marginals(&a.x)?);
            commands::gap_report(&f, &x, commands::caps(a.cap))?
        }
        Command::Certify(a) => {
            let (f, x) = (input::read_setfn(&a.func)?, input::read_marginals(&a.x)?);
            commands::certify(&f, &x, &commands::caps(a.cap))?
        }
        Command::Dists { x, omega, func } => {
            let x = input::read_marginals(&x)?;
            let f = func.as_deref().map(input::read_setfn).transpose()?;
            commands::dists(&x, omega.as_ref(), f.as_ref())?
        }
        Command::Regions { x, func } => {
            let x = input::read_marginals(&x)?;
            let f = func.as_deref().map(input::read_setfn).transpose()?;
            commands::regions(&x, f.as_ref())?
        }
        Command::Scan { generator, count, seed, workers, format, cap, bound } => {
            let mut config = ScanConfig::new(input::generator(&generator)?, count, seed);
            config.workers = workers;
            config.bound = bound;
            if let Some(c) = cap {
                config.caps = commands::caps(Some(c));
            }
            let result = commands::scan(&config)?;
            match format {
                Format::Json => emit(&serde_json::to_value(&result)?)?,
                Format::Csv => std::io::stdout().lock().write_all(commands::scan_csv(&result)?.as_bytes())?,
            }
            return Ok(if result.violations.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Demo { demo } => match demo {
            Demo::FunctionDependence => commands::demo_function_dependence()?,
            Demo::TightN2 => commands::demo_tight_n2()?,
            Demo::TightRank1 => commands::demo_tight_rank1()?,
            Demo::TightKuniform { n, k, p } => commands::demo_tight_kuniform(n, k, &p)?,
            Demo::UnboundedGaps { epsilon, eta } => commands::demo_unbounded_gaps(&epsilon, &eta)?,
            Demo::Rank1Witness { n } => commands::demo_rank1_witness(n)?,
        },
    };
    emit(&value).context("writing output")?;
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<pairgap::Error>()) {
        Some(pairgap::Error::CapExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn cap_errors_map_to_three() {
        let err = anyhow::Error::from(pairgap::Error::CapExceeded { n: 20, cap: 12 }).context("while solving");
        assert_eq!(exit_code(&err), 3);
        assert_eq!(exit_code(&anyhow::Error::from(pairgap::Error::Parse("bad".into()))), 2);
    }
}
