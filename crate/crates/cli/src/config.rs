use std::path::PathBuf;

use checkerboard::rational::parse_rational;
use checkerboard::{Direction, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(version, about = "Quadratic checkerboard propagators on a rational spacetime")]
pub struct Cli {
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweeps (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Largest P + Q accepted by exhaustive enumeration
    #[arg(long, global = true, default_value_t = checkerboard::paths::DEFAULT_ENUMERATION_CAP)]
    pub cap: u32,
    /// Relative stopping tolerance of the Bessel series (propagator command)
    #[arg(long, global = true, default_value_t = 1e-16)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Quadratic,
    Linear,
}

/// Rational flags take `a/b`, integers, or exact decimals such as `0.25`.
fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn direction(s: &str) -> Result<Direction, String> {
    s.parse().map_err(|e: checkerboard::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test whether (t, x) lies in M and print a witness (n, m, p, q)
    Member {
        /// time, rational (a/b, integer or decimal)
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        t: Rational,
        /// space, rational
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Rational,
    },
    /// Boost matrix generated by (p, q), optionally applied to a point
    Boost(BoostArgs),
    /// Admissible velocities (p² − q²)/(p² + q²) for 1 ≤ p, q ≤ max
    Spectrum {
        #[arg(long)]
        max_pq: u64,
    },
    /// List every lattice path of a sector with its bends and amplitude
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// first segment: R or L
        #[arg(long, value_parser = direction)]
        start: Direction,
        /// last segment: R or L
        #[arg(long, value_parser = direction)]
        end: Direction,
    },
    /// Exact lattice propagator for P right and Q left segments
    Exact {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// endpoint time, rational
        #[arg(long, value_parser = rational)]
        t: Rational,
    },
    /// Closed Bessel forms of the propagator at (t, x)
    Propagator {
        /// time, decimal
        #[arg(long)]
        t: f64,
        /// space, decimal
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    /// Deviation of a lattice model from the closed forms as the lattice refines
    Converge(ConvergeArgs),
    /// Finite-difference residual of the Dirac equation for both spinors
    DiracCheck {
        #[arg(long, default_value_t = 0.5)]
        t0: f64,
        #[arg(long, default_value_t = 3.0)]
        t1: f64,
        /// sample |x| ≤ xfrac · t
        #[arg(long, default_value_t = 0.4)]
        xfrac: f64,
        /// finite-difference step; the report compares h with 2h
        #[arg(long, default_value_t = 0.01)]
        h: f64,
    },
}

#[derive(Debug, Args)]
pub struct BoostArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
    /// apply to the point (t, x)
    #[arg(long, value_parser = rational, allow_hyphen_values = true, requires = "x")]
    pub t: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, requires = "t")]
    pub x: Option<Rational>,
    /// also check the group laws on this many random generator pairs
    #[arg(long, default_value_t = 0)]
    pub sample: usize,
    /// bound on |p|, |q| for sampled generators
    #[arg(long, default_value_t = 1_000_000)]
    pub bound: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_enum, default_value_t = Model::Quadratic)]
    pub model: Model,
    /// velocity x/t, rational; must be in the spectrum for the quadratic model
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub v: Rational,
    #[arg(long, value_parser = rational)]
    pub t: Rational,
    /// right-segment counts P (quadratic model)
    #[arg(long, value_delimiter = ',', required_if_eq("model", "quadratic"))]
    pub p: Vec<u32>,
    /// total segment counts N (linear model)
    #[arg(long, value_delimiter = ',', required_if_eq("model", "linear"))]
    pub n: Vec<u32>,
}
