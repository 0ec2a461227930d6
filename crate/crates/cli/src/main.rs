use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use persistor::document::{write_atomic, BarcodeDocument};
use persistor::error::{CliError, Result};
use persistor::input::Source;
use persistor::plot::emit_plot;
use persistor::run::{self, Coeff, Via};

/// Persistent homology bar codes.
#[derive(Parser)]
#[command(name = "persistor", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Output {
    /// JSON output path; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also draw the bar code as SVG.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct MapInput {
    /// Maximal simplices, one per line.
    complex: PathBuf,
    /// `vertex_id value` lines.
    values: PathBuf,
    /// Break ties in the values by a tiny id-dependent nudge.
    #[arg(long, num_args = 0..=1, default_missing_value = "1e-9")]
    perturb: Option<f64>,
}

#[derive(Copy, Clone, ValueEnum)]
enum CoeffArg {
    Gf2,
    Real,
}

#[derive(Copy, Clone, ValueEnum)]
enum ViaArg {
    Direct,
    Level,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rips bar codes of a point cloud.
    Rips {
        points: PathBuf,
        /// Top simplex dimension m; bars are valid below m.
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 50)]
        max_steps: usize,
        #[arg(long, value_enum, default_value = "gf2")]
        coeff: CoeffArg,
        #[command(flatten)]
        output: Output,
    },
    /// Level persistence bar codes of a PL map.
    Level {
        #[command(flatten)]
        input: MapInput,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        method: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Positive and negative bar codes at one level.
    Posneg {
        #[command(flatten)]
        input: MapInput,
        /// `k` or `k+1/2`.
        #[arg(long)]
        level: String,
        #[command(flatten)]
        output: Output,
    },
    /// Sub-level persistence of a PL map.
    Sublevel {
        #[command(flatten)]
        input: MapInput,
        #[arg(long, value_enum, default_value = "direct")]
        via: ViaArg,
        #[command(flatten)]
        output: Output,
    },
}

fn sources(input: &MapInput) -> Result<(Source, Source)> {
    Ok((Source::read(&input.complex)?, Source::read(&input.values)?))
}

fn emit(doc: &BarcodeDocument, output: &Output) -> Result<()> {
    let json = doc.to_json();
    match &output.out {
        Some(path) => write_atomic(path, &json)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(json.as_bytes())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
        }
    }
    if let Some(path) = &output.plot {
        emit_plot(doc, path)?;
    }
    Ok(())
}

fn dispatch(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Rips { points, max_dim, max_steps, coeff, output } => {
            let coeff = match coeff {
                CoeffArg::Gf2 => Coeff::Gf2,
                CoeffArg::Real => Coeff::Real,
            };
            let doc = run::cmd_rips(&Source::read(&points)?, max_dim, max_steps, coeff, run::rank_tol()?)?;
            emit(&doc, &output)
        }
        Cmd::Level { input, method, output } => {
            let (k, v) = sources(&input)?;
            emit(&run::cmd_level(&k, &v, method, input.perturb)?, &output)
        }
        Cmd::Posneg { input, level, output } => {
            let (k, v) = sources(&input)?;
            emit(&run::cmd_posneg(&k, &v, &level, input.perturb)?, &output)
        }
        Cmd::Sublevel { input, via, output } => {
            let (k, v) = sources(&input)?;
            let via = match via {
                ViaArg::Direct => Via::Direct,
                ViaArg::Level => Via::Level,
            };
            emit(&run::cmd_sublevel(&k, &v, via, input.perturb)?, &output)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("persistor: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
