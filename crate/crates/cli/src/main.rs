mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::{BoxSize, IntList, RealList};
use output::Format;
use watermelon::BoundaryCondition;

#[derive(Parser, Debug)]
#[command(name = "watermelon", version, about = "Exact and numeric watermelon probabilities for spanning forests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output to PATH (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Exact,
    Finite,
    Mc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    Kernel,
    Sums,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Check {
    Powerlaw,
    Log,
    Kernel,
    Lemma,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact potential kernel g(m,n) for 0 ≤ n ≤ m ≤ max.
    Kernel {
        #[arg(long)]
        max: usize,
    },
    /// Half-plane Green function G(x; y1, y2).
    Green {
        #[arg(long)]
        bc: BoundaryCondition,
        #[arg(long, allow_hyphen_values = true)]
        x: IntList,
        #[arg(long, default_value_t = 1)]
        y1: i64,
        #[arg(long, default_value_t = 1)]
        y2: i64,
        /// Row-one values can also come from the hypergeometric sums.
        #[arg(long, value_enum, default_value = "kernel")]
        route: Route,
    },
    /// Determinant polynomials of the boundary Green matrices.
    Tables {
        #[arg(long)]
        bc: BoundaryCondition,
        #[arg(long)]
        k: IntList,
    },
    /// Amplitudes of the large-r power laws.
    Constants {
        #[arg(long)]
        bc: BoundaryCondition,
        #[arg(long)]
        k: IntList,
    },
    /// Watermelon probabilities over a range of r.
    Prob {
        #[arg(long)]
        bc: BoundaryCondition,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: IntList,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        #[arg(long = "box")]
        box_size: Option<BoxSize>,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Finite-box probabilities over nested boxes of width `size` and height ⌈size/2⌉.
    Finite {
        #[arg(long)]
        bc: BoundaryCondition,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        sizes: IntList,
    },
    /// Monte Carlo estimate from Wilson's algorithm.
    Sample {
        #[arg(long)]
        bc: BoundaryCondition,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "box")]
        box_size: BoxSize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Numerical checks of the determinant asymptotics and the kernel expansion.
    Asympt {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long)]
        r: Option<RealList>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<RealList>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<RealList>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c1: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        c2: f64,
        /// Series cutoff for the lemma check.
        #[arg(long, default_value_t = 4)]
        cutoff: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fit value ≈ C·r^{-p} to a CSV or JSON sweep.
    Fit {
        #[arg(long)]
        input: PathBuf,
        /// Restrict to these r values.
        #[arg(long)]
        r: Option<IntList>,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli, argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
