//! Command-line syntax. Everything here is echoed into the result document, except the flags that
//! only affect presentation or scheduling.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "legendre", version, about = "Character sums, point counts, L-polynomials and periods of generalized Legendre curves")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    #[serde(skip)]
    pub format: Format,
    /// Worker threads for independent items (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    #[serde(skip)]
    pub jobs: Option<u16>,
    /// Report wall-clock time (makes output run-dependent).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Point count of the smooth model over F_{p^s}.
    Count(CountArgs),
    /// L-polynomial at p, coefficients from low to high degree.
    Lpoly(LpolyArgs),
    /// Exact Gauss, Jacobi and finite-field hypergeometric sums.
    Charsum {
        #[command(subcommand)]
        mode: CharsumMode,
    },
    /// High-precision periods, period matrix and endomorphism relations.
    Periods(PeriodsArgs),
    /// Quaternionic-multiplication verdict for N in {3, 4, 6}.
    QmCheck(QmArgs),
    /// Run a verification suite against the shipped expectations.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: u64,
    #[arg(long)]
    pub i: u64,
    #[arg(long)]
    pub j: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    Hgf,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    /// λ as u/v, an integer or a decimal.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
}

#[derive(Debug, Args, Serialize)]
pub struct LpolyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    /// Defaults to 2 for [5;1,4,1], the tabulated value; required otherwise.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub p: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Via {
    Def,
    Sum,
    Both,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CharsumMode {
    /// g(η^a) for η of order M over F_p.
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long = "M")]
        #[serde(rename = "M")]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// J(η^a, η^b), and the quotient by J(η^c, η^d) when both are given.
    Jacobi {
        #[arg(long)]
        p: u64,
        #[arg(long = "M")]
        #[serde(rename = "M")]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true, requires = "d")]
        c: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "c")]
        d: Option<i64>,
        /// Express a character-like quotient as η^t(x) for this x.
        #[arg(long, allow_hyphen_values = true, requires = "c")]
        argument: Option<i64>,
    },
    /// ₂F₁(η^A, η^B; η^C | λ) over F_p.
    Hgf {
        #[arg(long)]
        p: u64,
        #[arg(long = "M")]
        #[serde(rename = "M")]
        m: u64,
        #[arg(long = "A", allow_hyphen_values = true)]
        #[serde(rename = "A")]
        big_a: i64,
        #[arg(long = "B", allow_hyphen_values = true)]
        #[serde(rename = "B")]
        big_b: i64,
        #[arg(long = "C", allow_hyphen_values = true)]
        #[serde(rename = "C")]
        big_c: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Via::Both)]
        via: Via,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct PeriodsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    /// λ in (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Significant decimal digits.
    #[arg(long, default_value_t = 50)]
    pub precision: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct QmArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    /// Primes for the finite-field test: `7,13,19`, `5..50` or `5..=50`.
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub precision: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// greene, hasse-davenport, jacobi-example, count, trace-identity, elliptic-factor, duodecic,
    /// l-table, periods, qm, weil or all.
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub primes: Option<String>,
    /// Inclusive upper bound for prime sweeps.
    #[arg(long)]
    pub pmax: Option<u64>,
    #[arg(long, default_value_t = 20240229)]
    pub seed: u64,
    /// Draws in the randomized L-polynomial sweep.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 50)]
    pub precision: u32,
}
