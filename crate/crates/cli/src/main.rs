//! `thermwerner` — evolve, solve and sweep two atoms in a thermal reservoir.
//!
//! Exit status: 0 on success, 2 for usage, parse and input errors, 3 when
//! the numerics fail.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thermwerner::config::{GridRange, RunConfig};
use thermwerner::figures::{figure_table, FigureId};
use thermwerner::runs::{evolve_table, steady_report};
use thermwerner::state::StateSpec;
use thermwerner::sweep::{sweep_table, SweepParam};
use thermwerner::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "thermwerner", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trace ρ(t) in the collective basis as CSV.
    Evolve(Common),
    /// Report the stationary state reached from the initial state.
    Steady(Common),
    /// Tabulate the data behind one of the figures.
    Figure {
        /// fig1 … fig5
        id: FigureId,
        /// Horizontal grid `start:stop:step` (T/ω, or T₀/ω for fig3).
        #[arg(long)]
        grid: Option<GridRange>,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one parameter and tabulate the derived quantities.
    Sweep {
        /// temp, G, F, alpha, z, a or theta
        param: SweepParam,
        /// `start:stop:step`
        range: GridRange,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Initial state: e|g|s|a|product:θA,φA,θB,φB|gibbs:T0|maxent:a,th1,th2|xclass:x,z|eta:η|file:PATH
    #[arg(long, default_value = "e")]
    state: StateSpec,
    /// Reservoir correlation G in [0, 1].
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    g: f64,
    /// Reservoir temperature T/ω (0 for zero temperature).
    #[arg(long, conflicts_with = "beta_omega", allow_negative_numbers = true)]
    temp: Option<f64>,
    /// Inverse temperature βω (`inf` for zero temperature).
    #[arg(long, allow_negative_numbers = true)]
    beta_omega: Option<f64>,
    /// Atomic transition frequency ω.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega: f64,
    /// Single-atom spontaneous emission rate γ₀.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma0: f64,
    /// Dipole-dipole coupling Ω.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    cap_omega: f64,
    /// Final time in units of 1/γ₀.
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    t_max: f64,
    /// Output interval in units of 1/γ₀.
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    dt_out: f64,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<RunConfig, Error> {
        let beta_omega = match (self.temp, self.beta_omega) {
            (Some(t), _) if t.is_nan() || t < 0.0 => {
                return Err(Error::Domain {
                    name: "temp",
                    value: t,
                    reason: "must be >= 0",
                })
            }
            (Some(t), _) => 1.0 / t,
            (None, Some(b)) => b,
            (None, None) => RunConfig::default().beta_omega,
        };
        Ok(RunConfig {
            state: self.state.clone(),
            omega: self.omega,
            gamma0: self.gamma0,
            g: self.g,
            cap_omega: self.cap_omega,
            beta_omega,
            t_max: self.t_max,
            dt_out: self.dt_out,
            out: self.out.clone(),
        })
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Evolve(common) => {
            let config = common.config()?;
            emit(&evolve_table(&config)?.to_csv(), config.out.as_ref())
        }
        Command::Steady(common) => {
            let config = common.config()?;
            let report = steady_report(&config)?;
            emit(&report.to_string(), None)?;
            if let Some(path) = &config.out {
                emit(&report.to_table()?.to_csv(), Some(path))?;
            }
            Ok(())
        }
        Command::Figure { id, grid, out } => {
            let grid = grid.unwrap_or_else(|| id.default_grid());
            emit(&figure_table(id, &grid)?.to_csv(), out.as_ref())
        }
        Command::Sweep {
            param,
            range,
            common,
        } => {
            let config = common.config()?;
            emit(
                &sweep_table(param, &range, &config)?.to_csv(),
                config.out.as_ref(),
            )
        }
    }
}

fn main() -> ExitCode {
    // clap reports its own usage errors with exit status 2
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            })
        }
    }
}
