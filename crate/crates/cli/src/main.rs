use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod docs;
mod error;
mod input;

/// Qubit masking toolkit. Angles are radians. States are `x,y` or a JSON
/// `{x, y}` file; maskers are `alpha,theta` or a JSON `{alpha, theta}` file.
#[derive(Debug, Parser)]
#[command(name = "qmask", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a masker to a state and print the output and both marginals
    Mask {
        #[arg(long)]
        masker: String,
        #[arg(long)]
        state: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maskable circle of an anchor state, with sampled points as CSV
    Circle {
        #[arg(long)]
        masker: String,
        #[arg(long)]
        anchor: String,
        #[arg(long, default_value_t = 360)]
        samples: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the circle document here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the maskable set of a general linear operator
    Analyze {
        #[arg(long, conflicts_with = "masker")]
        operator: Option<PathBuf>,
        /// Analyze the masker with these parameters instead
        #[arg(long)]
        masker: Option<String>,
        #[arg(long)]
        anchor: String,
        /// Cross-check against a brute-force scan on an n × 2n grid
        #[arg(long)]
        scan: Option<usize>,
    },
    /// Brute-force grid search for states masked together with the anchor
    Scan {
        #[arg(long, conflicts_with = "masker")]
        operator: Option<PathBuf>,
        #[arg(long)]
        masker: Option<String>,
        #[arg(long)]
        anchor: String,
        /// Polar resolution; the azimuth gets twice as many nodes
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Fixed tolerance instead of κ·h
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Resolutions for the masked-fraction table, e.g. 50,100,200,400
        #[arg(long, value_delimiter = ',')]
        fractions: Option<Vec<usize>>,
        /// Restrict to (x−x₀)² + (y−y₀)² < δ, given as x0,y0,delta
        #[arg(long, allow_hyphen_values = true)]
        neighborhood: Option<String>,
    },
    /// Split a message into one share file per receiver
    Share {
        #[arg(long)]
        message: String,
        /// fig1_axes, fig3_pole:N, fig2_vertical:N, general:N or a scheme file
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pool share files and recover the message
    Decode {
        #[arg(required = true)]
        shares: Vec<PathBuf>,
    },
    /// List the preset schemes
    Presets,
}

fn run(cli: Cli) -> error::Result<String> {
    match cli.command {
        Command::Mask { masker, state, out } => commands::mask(&masker, &state, out.as_deref()),
        Command::Circle {
            masker,
            anchor,
            samples,
            csv,
            out,
        } => commands::circle(&masker, &anchor, samples, csv.as_deref(), out.as_deref()),
        Command::Analyze {
            operator,
            masker,
            anchor,
            scan,
        } => commands::analyze(operator.as_deref(), masker.as_deref(), &anchor, scan),
        Command::Scan {
            operator,
            masker,
            anchor,
            n,
            tol,
            csv,
            fractions,
            neighborhood,
        } => commands::scan(&commands::ScanArgs {
            operator: operator.as_deref(),
            masker: masker.as_deref(),
            anchor: &anchor,
            n,
            tol,
            csv: csv.as_deref(),
            fractions: fractions.as_deref(),
            neighborhood: neighborhood.as_deref(),
        }),
        Command::Share { message, scheme, out } => commands::share(&message, &scheme, &out),
        Command::Decode { shares } => commands::decode_files(&shares),
        Command::Presets => Ok(commands::presets()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qmask: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
