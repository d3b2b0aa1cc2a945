//! `mqed`: Green tensors, fluctuation spectra and duality transformations
//! for general linear absorbing media, driven by JSON medium models.

mod commands;
mod grid;
mod output;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use mqed_core::constants::UnitSystem;
use mqed_core::media::{MediumModel, CLASSIFY_TOL};

use output::Format;
use suites::Suite;

const GRID_HELP: &str = "\
Default grids: frequency sweeps cover [0.1, 10] x the model's lowest \
resonance with 50 log-spaced points (100 for the schwarz suite); wave \
vectors run along the three axes plus one generic direction at |k| = 0.8. \
Randomized suite checks use a fixed seed, so reports are reproducible. \
Set MQED_THREADS to bound the worker pool.";

#[derive(Parser)]
#[command(
    name = "mqed",
    version,
    about = "Macroscopic QED in non-local, bianisotropic and Onsager-violating media",
    after_help = GRID_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonIo {
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (data commands default to csv, verify to json)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Unit system for the physical constants
    #[arg(long, value_enum, default_value = "scaled")]
    units: Units,
}

impl CommonIo {
    fn data_format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    fn report_format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Units {
    Scaled,
    Si,
}

impl Units {
    fn system(self) -> UnitSystem {
        match self {
            Units::Scaled => UnitSystem::Scaled,
            Units::Si => UnitSystem::Si,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a medium model and report its reciprocity flags
    Classify {
        /// Medium model JSON file
        #[arg(long)]
        model: PathBuf,
        /// Reference frequency (single value)
        #[arg(long, default_value = "1.0")]
        omega: String,
        /// Classification tolerance (relative)
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Tabulate the response tensors over a frequency grid
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        /// Frequency grid START:STOP:N[:log] or a single value
        #[arg(long)]
        omega: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Solve the k-space Green tensor over a frequency grid
    Green {
        #[arg(long)]
        model: PathBuf,
        /// Wave vector X,Y,Z
        #[arg(long)]
        k: String,
        #[arg(long)]
        omega: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Field fluctuation spectrum over a frequency grid
    Spectrum {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        k: String,
        #[arg(long)]
        omega: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Tabulate duality-rotated responses
    Dualize {
        #[arg(long)]
        model: PathBuf,
        /// Duality angle in radians
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        omega: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Solve the 1-D non-local slab and report FDT diagnostics
    Sim1d {
        /// Interior grid points (>= 16)
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Domain length
        #[arg(long, default_value_t = 10.0)]
        length: f64,
        /// Gaussian smoothing length (>= 2h)
        #[arg(long, default_value_t = 0.7)]
        ell: f64,
        /// Drude plasma frequency (sigma = eps0 wp^2 / (gamma - i omega))
        #[arg(long, default_value_t = 1.0)]
        wp: f64,
        /// Drude damping rate (> 0)
        #[arg(long, default_value_t = 0.3)]
        gamma: f64,
        #[arg(long)]
        omega: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Run a verification suite and write its report
    Verify {
        #[arg(long)]
        model: PathBuf,
        /// Suite to run
        #[arg(long, value_enum)]
        suite: Suite,
        /// Override the suite's primary tolerance
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        io: CommonIo,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("MQED_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// 0 = pass, 1 = computation/verification failure, 2 = invalid input.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(core) = cause.downcast_ref::<mqed_core::Error>() {
            return match core {
                mqed_core::Error::ModelParse(_) | mqed_core::Error::InvalidInput(_) => 2,
                _ => 1,
            };
        }
        // argument parsing helpers (grids, k vectors) predate computation
        if cause.to_string().contains("must be")
            || cause.to_string().contains("invalid omega")
            || cause.to_string().contains("invalid k")
            || cause.to_string().contains("grid")
        {
            return 2;
        }
    }
    1
}

fn load_model(path: &std::path::Path) -> Result<MediumModel> {
    MediumModel::from_path(path).with_context(|| format!("loading model {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify {
            model,
            omega,
            tol,
            io,
        } => {
            let model = load_model(&model)?;
            let grid = grid::parse_omega_grid(&omega)?;
            let text =
                commands::classify_json(&model, grid[0], tol.unwrap_or(CLASSIFY_TOL))?;
            output::emit(&text, io.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Evaluate { model, omega, io } => {
            let model = load_model(&model)?;
            let grid = grid::parse_omega_grid(&omega)?;
            let table = commands::evaluate_table(&model, &grid)?;
            emit_table(&table, &io)
        }
        Command::Green {
            model,
            k,
            omega,
            io,
        } => {
            let model = load_model(&model)?;
            let kvec = grid::parse_k(&k)?;
            let grid = grid::parse_omega_grid(&omega)?;
            let kc = io.units.system().constants();
            let table = commands::green_table(&model, &kvec, &grid, &kc)?;
            emit_table(&table, &io)
        }
        Command::Spectrum {
            model,
            k,
            omega,
            io,
        } => {
            let model = load_model(&model)?;
            let kvec = grid::parse_k(&k)?;
            let grid = grid::parse_omega_grid(&omega)?;
            let kc = io.units.system().constants();
            let table = commands::spectrum_table(&model, &kvec, &grid, &kc)?;
            emit_table(&table, &io)
        }
        Command::Dualize {
            model,
            theta,
            omega,
            io,
        } => {
            let model = load_model(&model)?;
            let grid = grid::parse_omega_grid(&omega)?;
            let table = commands::dualize_table(&model, theta, &grid)?;
            emit_table(&table, &io)
        }
        Command::Sim1d {
            n,
            length,
            ell,
            wp,
            gamma,
            omega,
            io,
        } => {
            let grid = grid::parse_omega_grid(&omega)?;
            let kc = io.units.system().constants();
            let table = commands::sim1d_table(n, length, ell, wp, gamma, &grid, &kc)?;
            emit_table(&table, &io)
        }
        Command::Verify {
            model,
            suite,
            tol,
            io,
        } => {
            let model = load_model(&model)?;
            let kc = io.units.system().constants();
            let report = suites::run_suite(suite, &model, &kc, tol)?;
            eprint!("{}", report.summary());
            let text = report.render(io.report_format());
            output::emit(&text, io.out.as_deref())?;
            Ok(if report.overall_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn emit_table(table: &output::Table, io: &CommonIo) -> Result<ExitCode> {
    let text = match io.data_format() {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    output::emit(&text, io.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
