use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "knset",
    version,
    about = "Moment-angle complexes of simplicial fans and simple polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the input and report its combinatorial type.
    Validate,
    /// Betti numbers, torsion and bigraded table of the moment-angle complex.
    Betti,
    /// Additive generators as u/v cocycles, optionally with products.
    Ring {
        /// Multiply the generators of the chosen degree pairwise.
        #[arg(long)]
        products: bool,
    },
    /// Quadric presentation of the moment-angle manifold of a polytope.
    Quadrics {
        /// Verify sampled points numerically.
        #[arg(long)]
        check: bool,
        /// Number of sampled points for --check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Triple Massey product of three cocycles, e.g. `u_1v_4`.
    Massey { a: String, b: String, c: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Fan,
    Polytope,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input JSON file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Input kind; detected from the JSON keys when omitted.
    #[arg(long, global = true, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Absolute residual tolerance for numeric checks.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_float)]
    pub tol: f64,
    /// Seed for sampling and randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the subset sweep (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Facet order for the quadric system, e.g. `1,2,3,4,5,6,7,8`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub facet_order: Option<Vec<usize>>,
    /// Restrict generator listings to one degree.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Cache directory for subcomplex cohomology (overrides KNSET_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Do not read or write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

fn positive_float(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err("tolerance must be a positive number".into())
    }
}
