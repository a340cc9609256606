//! `mfrac`: command-line access to monoid boundaries, operators and fractals.
//!
//! Exit codes: 0 success, 1 usage error, 2 malformed input, 3 capacity
//! exceeded. Output goes to stdout in full once a command succeeds;
//! diagnostics go to stderr.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mfrac", version, about = "Finite-depth boundaries of graded monoids and their fractals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Presentation file with `generators:` and `commute:` lines.
    #[arg(short, long, value_name = "FILE")]
    pub presentation: PathBuf,

    /// Largest sphere any enumeration may build.
    #[arg(long, value_name = "N", default_value_t = mfrac_core::monoid::DEFAULT_MAX_SPHERE)]
    pub max_sphere: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normalized presentation and its spheres up to a depth.
    Presentation {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Split the commutation graph into coconnected components.
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// Exact lower bound for the boundary mass of a cylinder.
    Measure {
        #[command(flatten)]
        common: Common,
        /// Element whose cylinder is measured, e.g. `xy` or `x.y`.
        #[arg(long)]
        element: String,
        #[arg(long)]
        depth: usize,
    },
    /// Relation defects of the truncated operator models, as CSV.
    Defects {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        depth: usize,
    },
    /// Compare two eventually periodic boundary words such as `x(yz)^inf`.
    BoundaryLeq {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Number of terms `g(n)` for which witnesses are listed.
        #[arg(long, default_value_t = 5)]
        horizon: usize,
        /// Multiplier in the search bound on `f`'s prefix length.
        #[arg(long, default_value_t = mfrac_core::boundary::DEFAULT_SEARCH_FACTOR)]
        search_factor: usize,
        #[arg(long, value_enum, default_value_t = Relation::Leq)]
        relation: Relation,
    },
    /// Render the contact measure of an affine action on a grid.
    FractalRender {
        #[command(flatten)]
        common: Common,
        /// Affine maps file with a `dim:` line and one `map` line per generator.
        #[arg(long, value_name = "FILE")]
        ifs: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Cells per axis.
        #[arg(long)]
        grid: usize,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Output format; defaults to csv for a `.csv` path and pgm otherwise.
        #[arg(long, value_enum)]
        format: Option<ImageFormat>,
        /// Base point as comma-separated coordinates; defaults to the centre
        /// of the invariant ball.
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
        /// Also report mass bounds for the box `lo0,lo1,..:hi0,hi1,..`.
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
        /// Largest number of grid cells.
        #[arg(long, default_value_t = mfrac_core::fractal::DEFAULT_MAX_CELLS)]
        max_cells: usize,
    },
    /// Attractor points at a depth, or one boundary point with `--word`.
    Attractor {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "FILE")]
        ifs: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Base point as comma-separated coordinates; defaults to the centre
        /// of the invariant ball.
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
        /// Boundary word to follow instead of listing the whole sphere.
        #[arg(long)]
        word: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Relation {
    /// `left ⪯ right`
    Leq,
    /// both directions
    Equiv,
    /// either direction
    Tilde,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    Pgm,
    Csv,
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
    match commands::run(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mfrac: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
