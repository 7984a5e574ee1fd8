//! Command-line declaration and validation.
//!
//! Numeric inputs are bounded by default (n <= 64, p <= 97, degree/weight
//! bounds <= 512, k-max <= 20000) because weights grow like powers of p;
//! `--unsafe-large` lifts the caps for a run that is allowed to take long.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confstab_core::hilbert::Coefficients;
use confstab_core::ops::{AmbientDim, Prime};

use crate::CliError;

pub const MAX_N: u32 = 64;
pub const MAX_P: u32 = 97;
pub const MAX_BOUND: u64 = 512;
pub const MAX_K_MAX: u64 = 20_000;

#[derive(Parser, Debug)]
#[command(
    name = "confstab",
    version,
    about = "Exact homology tables and stability ranges for configuration spaces of R^n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate operation-word generators up to degree/weight bounds
    Generators(GeneratorsArgs),
    /// Bigraded dimension table; both engines run and must agree
    Hilbert(HilbertArgs),
    /// Stability checks on one coefficient field: instability facts,
    /// the slope-1 range, and dimension monotonicity
    Stability(StabilityArgs),
    /// Aggregate sampled odd primes plus Q into the Z[1/2] verdict
    ZHalf(ZHalfArgs),
    /// Certify a stability range for an R^n-minus-complement profile
    Certify(CertifyArgs),
    /// Cellular homology of RP^(n-1), the independent k=2 oracle
    OracleRp(OracleArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Args, Debug)]
pub struct CoeffOpts {
    /// Odd prime p for F_p coefficients
    #[arg(long)]
    pub p: Option<u32>,
    /// Coefficient field: an odd prime or "Q"
    #[arg(long)]
    pub coeff: Option<String>,
}

#[derive(Args, Debug)]
pub struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Write output to this path (atomically) instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GeneratorsArgs {
    /// Ambient dimension of R^n
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub coeff: CoeffOpts,
    /// Maximum homological degree (default: n * max-weight)
    #[arg(long)]
    pub max_degree: Option<u64>,
    /// Maximum weight (particle count)
    #[arg(long)]
    pub max_weight: u64,
    /// Lift the numeric guardrails
    #[arg(long)]
    pub unsafe_large: bool,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub coeff: CoeffOpts,
    /// Maximum homological degree (default: n * max-weight)
    #[arg(long)]
    pub max_degree: Option<u64>,
    #[arg(long)]
    pub max_weight: u64,
    #[arg(long)]
    pub unsafe_large: bool,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct StabilityArgs {
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub coeff: CoeffOpts,
    /// Degree and weight bound (D = K = max)
    #[arg(long)]
    pub max: u64,
    #[arg(long)]
    pub unsafe_large: bool,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct ZHalfArgs {
    #[arg(long)]
    pub n: u32,
    /// Degree and weight bound (D = K = max)
    #[arg(long)]
    pub max: u64,
    /// Comma-separated odd primes to sample
    #[arg(long, default_value_t = default_primes())]
    pub primes: String,
    #[arg(long)]
    pub unsafe_large: bool,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub n: u32,
    /// Codimension of the complement X (q = n - dim X, 1 <= q <= n)
    #[arg(long)]
    pub q: u32,
    /// Largest weight to certify
    #[arg(long)]
    pub k_max: u64,
    /// Input stability slope for R^n, as "a" or "a/b"; alternative to
    /// deriving it from --p / --coeff
    #[arg(long)]
    pub input_slope: Option<String>,
    #[command(flatten)]
    pub coeff: CoeffOpts,
    /// Record the orientation-twisted coefficient variant (same numerics)
    #[arg(long)]
    pub twisted: bool,
    #[arg(long)]
    pub unsafe_large: bool,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub coeff: CoeffOpts,
    #[command(flatten)]
    pub output: OutputOpts,
}

fn default_primes() -> String {
    confstab_core::stability::DEFAULT_SAMPLED_PRIMES
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn check_cap(name: &str, value: u64, cap: u64, unsafe_large: bool) -> Result<(), CliError> {
    if value > cap && !unsafe_large {
        return Err(CliError::Config(format!(
            "{name} = {value} exceeds the guardrail {cap}; pass --unsafe-large to override"
        )));
    }
    Ok(())
}

pub fn ambient_dim(n: u32, unsafe_large: bool) -> Result<AmbientDim, CliError> {
    check_cap("n", u64::from(n), u64::from(MAX_N), unsafe_large)?;
    AmbientDim::new(n).map_err(|e| CliError::Config(e.to_string()))
}

pub fn odd_prime(p: u32, unsafe_large: bool) -> Result<Prime, CliError> {
    check_cap("p", u64::from(p), u64::from(MAX_P), unsafe_large)?;
    Prime::new(p).map_err(|e| CliError::Config(e.to_string()))
}

/// Resolves --p / --coeff into a coefficient field. Exactly one of the two
/// flags must be present.
pub fn resolve_coeff(opts: &CoeffOpts, unsafe_large: bool) -> Result<Coefficients, CliError> {
    match (&opts.p, &opts.coeff) {
        (Some(_), Some(_)) => Err(CliError::Config(
            "pass either --p or --coeff, not both".to_string(),
        )),
        (Some(p), None) => Ok(Coefficients::Fp(odd_prime(*p, unsafe_large)?)),
        (None, Some(c)) if c.eq_ignore_ascii_case("q") => Ok(Coefficients::Rational),
        (None, Some(c)) => {
            let p: u32 = c.parse().map_err(|_| {
                CliError::Config(format!(
                    "--coeff must be an odd prime or \"Q\", got \"{c}\""
                ))
            })?;
            Ok(Coefficients::Fp(odd_prime(p, unsafe_large)?))
        }
        (None, None) => Err(CliError::Config(
            "a coefficient field is required: pass --p <odd prime> or --coeff <odd prime|Q>"
                .to_string(),
        )),
    }
}

/// The degree bound, defaulting to n * max_weight, which covers every
/// nonzero entry of the table.
pub fn degree_bound(
    n: AmbientDim,
    max_degree: Option<u64>,
    max_weight: u64,
    unsafe_large: bool,
) -> Result<u64, CliError> {
    let d = match max_degree {
        Some(d) => d,
        None => u64::from(n.get())
            .checked_mul(max_weight)
            .ok_or_else(|| CliError::Config("n * max-weight overflows".to_string()))?,
    };
    check_cap("max-degree", d, MAX_BOUND, unsafe_large)?;
    Ok(d)
}

pub fn parse_primes(list: &str, unsafe_large: bool) -> Result<Vec<Prime>, CliError> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let p: u32 = part
            .parse()
            .map_err(|_| CliError::Config(format!("invalid prime \"{part}\" in --primes")))?;
        out.push(odd_prime(p, unsafe_large)?);
    }
    if out.is_empty() {
        return Err(CliError::Config(
            "--primes must name at least one odd prime".to_string(),
        ));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Parses "a" or "a/b" into an exact non-negative rational.
pub fn parse_slope(text: &str) -> Result<num_rational::Ratio<u64>, CliError> {
    let bad = || {
        CliError::Config(format!(
            "--input-slope must be \"a\" or \"a/b\", got \"{text}\""
        ))
    };
    match text.split_once('/') {
        None => {
            let a: u64 = text.trim().parse().map_err(|_| bad())?;
            Ok(num_rational::Ratio::from_integer(a))
        }
        Some((a, b)) => {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(num_rational::Ratio::new(a, b))
        }
    }
}
