use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "twcolor",
    version,
    about = "Coloring graphs of bounded tree-width online: runs, adversaries, verification, suites"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Color a graph by driving an online algorithm over its tree
    /// decomposition; exits 0 iff the coloring is proper and within the
    /// palette bound (the bound check is skipped with a warning when the
    /// graph is not triangle-free).
    Color {
        /// Graph file in PACE .gr format
        graph: PathBuf,
        /// Tree decomposition file in PACE .td format
        td: PathBuf,
        /// Width parameter (palette size ceil((t+3)/2)); defaults to the
        /// decomposition width
        #[arg(long)]
        t: Option<usize>,
        /// Algorithm name: first-fit, bounded-palette, least-used, shuffle
        #[arg(long, default_value = "bounded-palette")]
        algorithm: String,
        /// Seed for seeded algorithms
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Play the adversary against a victim and emit the forced instance;
    /// exits 0 iff the victim was forced to at least g(t,k) colors and all
    /// verification flags pass.
    Adversary {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        /// Victim name: first-fit, bounded-palette, least-used, shuffle
        #[arg(long, default_value = "first-fit")]
        victim: String,
        /// Seed for seeded victims
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output prefix; writes PREFIX.gr, PREFIX.td, PREFIX.transcript.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a graph (and optionally a decomposition) and run the exact
    /// oracles where the size caps allow.
    Verify { graph: PathBuf, td: Option<PathBuf> },
    /// Run an experiment matrix and emit a machine-readable report.
    Suite {
        /// JSON config file; omitted runs the default matrix
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output prefix; writes PREFIX.json and PREFIX.csv
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format printed to stdout when --out is not given
        #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
        format: String,
    },
    /// Generate a random triangle-free instance with a width-t decomposition.
    Gen {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output prefix; writes PREFIX.gr and PREFIX.td (stdout otherwise)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
