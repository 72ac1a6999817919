use std::path::Path;

use rzl_core::riesz::{first_zero, required_table, riesz, riesz_kummer_batch, riesz_series, SweepGrid};
use rzl_core::{RieszMethod, RieszSample};

use crate::args::RieszCmd;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{big, csv_writer, note, real};

pub fn run(cmd: &RieszCmd, cfg: &RunConfig) -> CliResult {
    match cmd {
        RieszCmd::Eval { x, method } => eval(*x, (*method).into(), cfg),
        RieszCmd::Zero => {
            let z = first_zero(&cfg.ctx)?;
            println!("{}", big(&z, cfg.ctx.digits() as usize));
            Ok(())
        }
        RieszCmd::Sweep { xmax, points, spacing, xmin, method, out } => {
            let mut grid = SweepGrid::new(*xmax, *points, (*spacing).into());
            if let Some(a) = xmin {
                grid = grid.with_xmin(*a);
            }
            sweep(&grid, (*method).into(), out.as_deref(), cfg)
        }
    }
}

fn table_for(xmax: f64, method: RieszMethod, cfg: &RunConfig) -> CliResult<rzl_core::MobiusTable> {
    let size = match method {
        RieszMethod::Series => 1,
        m => required_table(xmax, m, &cfg.ctx),
    };
    cfg.table(size)
}

fn eval(x: f64, method: RieszMethod, cfg: &RunConfig) -> CliResult {
    let table = table_for(x.abs(), method, cfg)?;
    let s = riesz(x, method, &table, &cfg.ctx)?;
    println!(
        "R({x}) = {} ± {} ({}, {} terms)",
        big(&s.value, cfg.ctx.digits() as usize),
        big(&s.err_estimate, 3),
        s.method.as_str(),
        s.terms_used
    );
    Ok(())
}

fn sweep(grid: &SweepGrid, method: RieszMethod, out: Option<&Path>, cfg: &RunConfig) -> CliResult {
    let xs = grid.positions()?;
    let samples: Vec<RieszSample> = match method {
        RieszMethod::Series => xs.iter().map(|&x| riesz_series(x, &cfg.ctx)).collect::<Result<_, _>>()?,
        m => riesz_kummer_batch(&xs, m, &table_for(grid.xmax, m, cfg)?, &cfg.ctx)?,
    };
    let d = cfg.float_digits;
    let mut w = csv_writer(out)?;
    w.write_record(["x", "R", "err", "method", "terms"])?;
    for s in &samples {
        w.write_record([
            real(s.x, d),
            big(&s.value, d),
            big(&s.err_estimate, d),
            s.method.as_str().into(),
            s.terms_used.to_string(),
        ])?;
    }
    w.flush()?;
    let changes = samples.windows(2).filter(|p| p[0].value.is_sign_negative() != p[1].value.is_sign_negative()).count();
    note(out.is_some(), &format!("{} samples, sign changes: {changes}", samples.len()));
    Ok(())
}
