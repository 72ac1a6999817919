use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rzl_core::riesz::Spacing;
use rzl_core::{CkMethod, RieszMethod};

#[derive(Debug, Parser)]
#[command(name = "rzl", version, about = "High-precision Riesz function and Baez-Duarte sequence")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Decimal digits wanted in results (at least 15).
    #[arg(long, global = true, env = "RZL_DIGITS", default_value_t = 40)]
    pub digits: u32,
    /// Largest Möbius table a command may build.
    #[arg(long, global = true, env = "RZL_MOBIUS_LIMIT", default_value_t = 1_000_000)]
    pub mobius_limit: u64,
    /// Zero ordinates file, one per line (default: the bundled first 100).
    #[arg(long, global = true, env = "RZL_ZEROS_FILE")]
    pub zeros_file: Option<PathBuf>,
    /// Significant digits of floats in CSV and printed values.
    #[arg(long, global = true, env = "RZL_FLOAT_DIGITS", default_value_t = 17)]
    pub float_digits: usize,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true, env = "RZL_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Riesz function R(x).
    #[command(subcommand)]
    Riesz(RieszCmd),
    /// The Baez-Duarte sequence c_k.
    #[command(subcommand)]
    Ck(CkCmd),
    /// Checks that print PASS/FAIL and exit 1 on any failure.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Partial sums of c_k.
    #[command(subcommand)]
    Sums(SumsCmd),
    /// Zeta zeros and their spectral coefficients.
    #[command(subcommand)]
    Zeros(ZerosCmd),
    /// Power-law fits.
    #[command(subcommand)]
    Fit(FitCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RieszMethodArg {
    Series,
    Kummer1,
    Kummer2,
}

impl From<RieszMethodArg> for RieszMethod {
    fn from(m: RieszMethodArg) -> Self {
        match m {
            RieszMethodArg::Series => RieszMethod::Series,
            RieszMethodArg::Kummer1 => RieszMethod::Kummer1,
            RieszMethodArg::Kummer2 => RieszMethod::Kummer2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Log,
}

impl From<SpacingArg> for Spacing {
    fn from(s: SpacingArg) -> Self {
        match s {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CkMethodArg {
    Binomial,
    Moebius,
    Difftable,
    Spectral,
}

impl From<CkMethodArg> for CkMethod {
    fn from(m: CkMethodArg) -> Self {
        match m {
            CkMethodArg::Binomial => CkMethod::Binomial,
            CkMethodArg::Moebius => CkMethod::Moebius,
            CkMethodArg::Difftable => CkMethod::DiffTable,
            CkMethodArg::Spectral => CkMethod::Spectral,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum RieszCmd {
    /// Evaluate R at one point.
    Eval {
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = RieszMethodArg::Kummer2)]
        method: RieszMethodArg,
    },
    /// First positive zero of R.
    Zero,
    /// Sample R on a grid; CSV `x,R,err,method,terms`.
    Sweep {
        #[arg(long)]
        xmax: f64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, value_enum, default_value_t = SpacingArg::Linear)]
        spacing: SpacingArg,
        /// Start of a log grid (default 1 when xmax > 10, else xmax/1000).
        #[arg(long)]
        xmin: Option<f64>,
        #[arg(long, value_enum, default_value_t = RieszMethodArg::Kummer2)]
        method: RieszMethodArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CkCmd {
    /// Evaluate c_k at one index.
    Compute {
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = CkMethodArg::Moebius)]
        method: CkMethodArg,
        /// Zeros in the spectral model.
        #[arg(long, default_value_t = 1)]
        zeros: usize,
    },
    /// c_k for k = 0, S, 2S, ... up to kmax; CSV `k,c_k,err,method`.
    Sweep {
        #[arg(long)]
        kmax: u64,
        #[arg(long, default_value_t = 1)]
        stride: u64,
        #[arg(long, value_enum, default_value_t = CkMethodArg::Moebius)]
        method: CkMethodArg,
        /// Zeros in the spectral model.
        #[arg(long, default_value_t = 1)]
        zeros: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum IdentityArg {
    /// Generating function of c_k against e^x R(x)/x.
    Gf,
    /// Σ (-1)^k c_k as Σ 2^-k/ζ(2k).
    Altsum,
    /// The Abel-summation integral against the alternating sum.
    Abel,
    /// Power series Σ c_k s^k against its ζ form.
    Powerseries,
    /// |R(k)/k - c_k| against the bound.
    Approx33,
    /// The generating identity with c_k replaced by R(k)/k.
    Approx34,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Check |R(k)/k - c_k| against its bound for every k in [kmin, kmax].
    Bound {
        #[arg(long, default_value_t = 17)]
        kmin: u64,
        #[arg(long, default_value_t = 10_000)]
        kmax: u64,
        /// Per-index CSV `k,lhs,rhs_leading,rhs_full,holds`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary CSV `check,status,detail`.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Check one identity.
    Identity {
        #[arg(long, value_enum)]
        which: IdentityArg,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        k: Option<u64>,
        /// Truncation of the series side where one applies.
        #[arg(long)]
        kmax: Option<u64>,
        /// Summary CSV `check,status,detail`.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    All {
        /// Only these criteria (comma-separated numbers).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u32>,
        /// Summary CSV `check,status,detail`.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SumsCmd {
    /// S_K and A_K for K ≤ kmax; CSV `K,S_plain,S_alt,dist_plain,dist_alt`.
    Partial {
        #[arg(long)]
        kmax: u64,
        /// Write every stride-th row only.
        #[arg(long, default_value_t = 1)]
        stride: u64,
        /// Also print the exploratory envelope fits over [kmax/100, kmax].
        #[arg(long)]
        envelopes: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZerosCmd {
    /// Spectral coefficients; CSV `i,gamma,a,b,modulus`.
    Coeffs {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FitCmd {
    /// Envelope A·x^p through the peaks of a sweep CSV (`x,R` or `k,c_k`).
    Envelope {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        window: Vec<f64>,
        /// Fewest peaks accepted.
        #[arg(long, default_value_t = rzl_core::analysis::MIN_EXTREMA)]
        min_extrema: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Power law of |c_k - R(k)/k| over [kmin, kmax].
    Ckdiff {
        #[arg(long)]
        kmin: u64,
        #[arg(long)]
        kmax: u64,
        #[arg(long, default_value_t = 400)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
