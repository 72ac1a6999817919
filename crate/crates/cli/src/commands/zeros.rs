use crate::args::ZerosCmd;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{big, csv_writer};

pub fn run(cmd: &ZerosCmd, cfg: &RunConfig) -> CliResult {
    let ZerosCmd::Coeffs { count, out } = cmd;
    if *count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let coeffs = cfg.coefficients(*count)?;
    let d = cfg.float_digits;
    let mut w = csv_writer(out.as_deref())?;
    w.write_record(["i", "gamma", "a", "b", "modulus"])?;
    for c in &coeffs {
        w.write_record([c.index.to_string(), big(&c.gamma, d), big(&c.a, d), big(&c.b, d), big(&c.modulus, d)])?;
    }
    w.flush()?;
    Ok(())
}
