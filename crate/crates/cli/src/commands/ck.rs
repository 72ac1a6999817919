use std::path::Path;

use rzl_core::baez::{
    ck_binomial, ck_difftable, ck_moebius, ck_spectral, ck_sweep, moebius_cutoff, MIN_SPECTRAL_INDEX,
};
use rzl_core::{CkMethod, CkRecord};

use crate::args::CkCmd;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{big, csv_writer, note};

pub fn run(cmd: &CkCmd, cfg: &RunConfig) -> CliResult {
    match cmd {
        CkCmd::Compute { k, method, zeros } => {
            let r = compute(*k, (*method).into(), *zeros, cfg)?;
            println!(
                "c_{} = {} ± {} ({})",
                r.k,
                big(&r.value, cfg.ctx.digits() as usize),
                big(&r.err_estimate, 3),
                r.method.as_str()
            );
            Ok(())
        }
        CkCmd::Sweep { kmax, stride, method, zeros, out } => {
            sweep(*kmax, *stride, (*method).into(), *zeros, out.as_deref(), cfg)
        }
    }
}

fn spectral(k: u64, zeros: usize, cfg: &RunConfig) -> CliResult<CkRecord> {
    if zeros == 0 {
        return Err(CliError::Usage("--zeros must be at least 1".into()));
    }
    Ok(ck_spectral(k + 1, &cfg.coefficients(zeros)?)?)
}

fn compute(k: u64, method: CkMethod, zeros: usize, cfg: &RunConfig) -> CliResult<CkRecord> {
    let ctx = &cfg.ctx;
    Ok(match method {
        CkMethod::Binomial => ck_binomial(k, ctx)?,
        CkMethod::DiffTable => ck_difftable(k, ctx)?.record(k, ctx),
        CkMethod::Moebius => ck_moebius(k, &cfg.table(moebius_cutoff(k, ctx))?, ctx)?,
        CkMethod::Spectral => spectral(k, zeros, cfg)?,
    })
}

fn sweep(kmax: u64, stride: u64, method: CkMethod, zeros: usize, out: Option<&Path>, cfg: &RunConfig) -> CliResult {
    if stride == 0 {
        return Err(CliError::Usage("--stride must be positive".into()));
    }
    let ctx = &cfg.ctx;
    let records = match method {
        CkMethod::Spectral => {
            let coeffs = cfg.coefficients(zeros.max(1))?;
            (0..=kmax)
                .step_by(stride as usize)
                .filter(|&k| k + 1 >= MIN_SPECTRAL_INDEX)
                .map(|k| ck_spectral(k + 1, &coeffs))
                .collect::<Result<Vec<_>, _>>()?
        }
        CkMethod::Moebius => ck_sweep(kmax, method, stride, &cfg.table(moebius_cutoff(kmax, ctx))?, ctx)?,
        _ => ck_sweep(kmax, method, stride, &cfg.table(1)?, ctx)?,
    };
    let d = cfg.float_digits;
    let mut w = csv_writer(out)?;
    w.write_record(["k", "c_k", "err", "method"])?;
    for r in &records {
        w.write_record([r.k.to_string(), big(&r.value, d), big(&r.err_estimate, d), r.method.as_str().into()])?;
    }
    w.flush()?;
    let peak = records
        .iter()
        .filter(|r| r.k >= 1000)
        .map(|r| r.value.to_f64().abs() * (r.k as f64).powf(0.75))
        .fold(0.0, f64::max);
    let mut line = format!("{} records", records.len());
    if peak > 0.0 {
        line += &format!(", max |c_k|·k^(3/4) for k ≥ 1000: {peak:.4e}");
    }
    note(out.is_some(), &line);
    Ok(())
}
