use std::path::PathBuf;

use rzl_core::sieve::MAX_MOBIUS_LIMIT;
use rzl_core::zeros::{bundled_zeros, coefficients_for, load_zeros};
use rzl_core::{build_mobius, MobiusTable, PrecisionContext, ZeroCoefficient};

use crate::args::GlobalArgs;
use crate::error::{CliError, CliResult};

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ctx: PrecisionContext,
    /// Largest Möbius table a command may build.
    pub mobius_limit: u64,
    pub zeros_file: Option<PathBuf>,
    /// Significant digits of every float written to CSV or printed.
    pub float_digits: usize,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> CliResult<Self> {
        if g.mobius_limit == 0 || g.mobius_limit > MAX_MOBIUS_LIMIT {
            return Err(CliError::Usage(format!("--mobius-limit must be in [1, {MAX_MOBIUS_LIMIT}]")));
        }
        if !(1..=1000).contains(&g.float_digits) {
            return Err(CliError::Usage("--float-digits must be in [1, 1000]".into()));
        }
        Ok(RunConfig {
            ctx: PrecisionContext::new(g.digits)?,
            mobius_limit: g.mobius_limit,
            zeros_file: g.zeros_file.clone(),
            float_digits: g.float_digits,
        })
    }

    /// A Möbius table up to `size`, refused beyond `mobius_limit`.
    pub fn table(&self, size: u64) -> CliResult<MobiusTable> {
        if size > self.mobius_limit {
            return Err(rzl_core::Error::Resource(format!(
                "this run needs a Möbius table up to {size}, above --mobius-limit {}",
                self.mobius_limit
            ))
            .into());
        }
        Ok(build_mobius(size)?)
    }

    /// Coefficients for the first `count` zeros of the configured file.
    pub fn coefficients(&self, count: usize) -> CliResult<Vec<ZeroCoefficient>> {
        let ordinates = match &self.zeros_file {
            Some(p) => load_zeros(p, count)?,
            None => bundled_zeros(count)?,
        };
        Ok(coefficients_for(&ordinates, &self.ctx)?)
    }
}
