use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "gcdb-lab",
    version,
    about = "Experiments on generalized gcd lattice visibility"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunFlags,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. None of them except `--workers` can
/// change the output, and `--workers` only changes how fast it appears.
#[derive(Args, Debug, Clone)]
pub struct RunFlags {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, env = "GCDB_LAB_WORKERS", default_value_t = 0)]
    pub workers: usize,
    /// Seed for randomized probe functions.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of spheres summed by `zeta-lambda`.
    #[arg(long = "trunc-K", global = true, default_value_t = 20)]
    pub trunc_k: u64,
    /// Time allowed for splitting each number while realizing a pattern.
    #[arg(long = "factor-budget-ms", global = true, default_value_t = 5000)]
    pub factor_budget_ms: u64,
    /// Search bound for translate searches, or trial-division bound when verifying.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Density of points with gcd_b = k in T_N.
    Density {
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long = "N")]
        n: u64,
    },
    /// Window mean of f(gcd_b) over T_N.
    MeanValue {
        /// unit, indicator-<k>, floor-inverse, phi, mobius or linear.
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long = "N")]
        n: u64,
    },
    /// Sum of gcd_b over 0 < r ≤ x, 0 < s ≤ x^b against its main term.
    AvgGcd {
        #[arg(long, default_value_t = 2)]
        b: u32,
        #[arg(long)]
        x: u64,
    },
    /// Pattern realizability.
    Pattern {
        #[command(subcommand)]
        action: PatternAction,
    },
    /// Closed-form realizability conditions against the residue criterion.
    Corollary {
        #[command(subcommand)]
        family: CorollaryFamily,
    },
    /// The unit-distance graph on b-visible points.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// The Riemann zeta function at real s > 1.
    Zeta {
        #[arg(long)]
        s: f64,
    },
    /// Sphere decomposition of a window mean of a bounded point function.
    ZetaLambda {
        /// parity (r mod 2) or random-sign (±1 from --seed).
        #[arg(long, default_value = "parity")]
        f: String,
        #[arg(long, default_value_t = 2)]
        b: u32,
        #[arg(long = "N")]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum PatternAction {
    /// Residue criterion with the missing class per prime.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
    /// Explicit translate by the Chinese remainder construction.
    Realize {
        #[arg(long)]
        file: PathBuf,
    },
    /// Checks a given translate cell by cell.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Smallest translate with u, v ≤ --bound.
    Brute {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorollaryFamily {
    /// The all-circle N × N square.
    Square {
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 2)]
        b: u32,
    },
    /// The M × N rectangle with circles on the edge and crosses inside.
    Boundary {
        #[arg(long = "M")]
        m: u64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 2)]
        b: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum GraphAction {
    /// Mean number of visible neighbors over T_N.
    Connectivity {
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long = "N")]
        n: u64,
    },
    /// Components of the graph in T_N.
    Components {
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long = "N")]
        n: u64,
        /// Writes the visibility bitmap as plain PBM.
        #[arg(long)]
        pbm: Option<PathBuf>,
        /// Writes component labels as plain PGM.
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Largest-component statistics over a schedule of windows.
    Trend {
        #[arg(long, default_value_t = 1)]
        b: u32,
        /// Comma-separated window sizes, each at least 100.
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// A visible point whose eight surrounding points are invisible.
    Lonesome {
        #[arg(long, default_value_t = 2)]
        b: u32,
        /// Scans T_N; without it the point is constructed.
        #[arg(long = "N")]
        n: Option<u64>,
    },
}
