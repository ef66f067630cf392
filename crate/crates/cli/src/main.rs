use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use epl_core::gof::PValueMethod;
use epl_core::{EplParams, SeriesConfig};
use epl_cli::commands::{self, CurveSource, FamilyArg, FitOptions, Outcome};
use epl_cli::input;

/// Exponential Poisson-Lindley fitting, table reproduction and curve data.
#[derive(Debug, Parser)]
#[command(name = "epl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PValue {
    Exact,
    Asymptotic,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Gradient-norm tolerance of the optimizer.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,

    #[arg(long, default_value_t = 500)]
    max_iters: usize,

    /// KS p-value: exact finite-sample or Kolmogorov limit.
    #[arg(long, value_enum, default_value_t = PValue::Exact)]
    p_value: PValue,
}

impl FitArgs {
    fn options(&self) -> FitOptions {
        let p_value = match self.p_value {
            PValue::Exact => PValueMethod::Exact,
            PValue::Asymptotic => PValueMethod::Asymptotic,
        };
        FitOptions { tol: self.tol, max_iters: self.max_iters, p_value }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit one or all families to a data set and run KS tests.
    Fit {
        /// Data file, or the fixture name `aircon` or `vinyl`.
        #[arg(long)]
        data: String,

        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,

        #[command(flatten)]
        fit: FitArgs,
    },
    /// Recompute a published table next to its printed values.
    Tables {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,

        /// Last series index for the order-statistic moments.
        #[arg(long, env = "EPL_SERIES_MAX_TERMS")]
        series_max_terms: Option<usize>,

        #[command(flatten)]
        fit: FitArgs,
    },
    /// Emit pdf, hazard, cdf and empirical cdf on a grid.
    Curves {
        /// Data to fit; the fitted curves are evaluated.
        #[arg(long, conflicts_with_all = ["beta", "theta"])]
        data: Option<String>,

        #[arg(long, value_enum, default_value_t = FamilyArg::Epl)]
        family: FamilyArg,

        #[arg(long, requires = "theta")]
        beta: Option<f64>,

        #[arg(long, requires = "beta")]
        theta: Option<f64>,

        /// `lo:hi:points`, both ends included.
        #[arg(long)]
        grid: Option<String>,

        #[command(flatten)]
        fit: FitArgs,
    },
    /// Draw a seeded sample, one value per line.
    Sample {
        #[arg(short, long)]
        n: usize,

        #[arg(long)]
        beta: f64,

        #[arg(long)]
        theta: f64,

        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Fit { data, family, fit } => Ok(commands::cmd_fit(&input::load(data)?, *family, &fit.options())),
        Command::Tables { which, series_max_terms, fit } => {
            let mut series = SeriesConfig::table_reproduction();
            if let Some(m) = series_max_terms {
                series = series.with_max_terms(*m);
            }
            commands::cmd_tables(*which, &series, &fit.options())
        }
        Command::Curves { data, family, beta, theta, grid, fit } => {
            let loaded;
            let source = match (data, beta, theta) {
                (Some(d), _, _) => {
                    loaded = input::load(d)?;
                    CurveSource::Data { data: &loaded, family: *family }
                }
                (None, Some(b), Some(t)) => {
                    if *family != FamilyArg::Epl {
                        bail!("--beta/--theta give EPL parameters; use --data to fit other families");
                    }
                    CurveSource::Params(EplParams::new(*b, *t)?)
                }
                _ => bail!("curves needs --data or both --beta and --theta"),
            };
            commands::cmd_curves(source, grid.as_deref(), &fit.options())
        }
        Command::Sample { n, beta, theta, seed } => commands::cmd_sample(*n, *beta, *theta, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Table => outcome.text,
        Format::JsonLines => outcome.report.to_json_lines(),
    };
    let mut out = io::stdout().lock();
    if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: not every fit converged");
        ExitCode::FAILURE
    }
}
