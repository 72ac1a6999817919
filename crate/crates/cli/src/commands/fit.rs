use std::path::Path;

use rzl_core::analysis::bound::bound_table_size;
use rzl_core::analysis::{fit_ckdiff, fit_extrema, FitResult};

use crate::args::FitCmd;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{csv_writer, note, real};

pub fn run(cmd: &FitCmd, cfg: &RunConfig) -> CliResult {
    match cmd {
        FitCmd::Envelope { input, window, min_extrema, out } => {
            let (xs, ys, label) = read_series(input)?;
            let fit = fit_extrema(&xs, &ys, (window[0], window[1]), *min_extrema)?;
            report(&fit, label, out.as_deref(), cfg)
        }
        FitCmd::Ckdiff { kmin, kmax, points, out } => {
            let table = cfg.table(bound_table_size(*kmax, &cfg.ctx))?;
            let (fit, _) = fit_ckdiff(*kmin, *kmax, *points, &table, &cfg.ctx)?;
            report(&fit, "|c_k - R(k)/k|", out.as_deref(), cfg)
        }
    }
}

/// Reads `(x, R)` or `(k, c_k)` columns from a sweep CSV.
fn read_series(path: &Path) -> CliResult<(Vec<f64>, Vec<f64>, &'static str)> {
    let mut r = csv::Reader::from_path(path)?;
    let headers = r.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (ix, iy, label) = match (col("x"), col("R"), col("k"), col("c_k")) {
        (Some(x), Some(y), _, _) => (x, y, "|R(x)|"),
        (_, _, Some(x), Some(y)) => (x, y, "|c_k|"),
        _ => return Err(CliError::Input(format!("{} has neither x,R nor k,c_k columns", path.display()))),
    };
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let parse = |i: usize| {
            rec.get(i).and_then(|v| v.parse::<f64>().ok()).ok_or_else(|| {
                CliError::Input(format!("{}: unreadable number on data row {}", path.display(), line + 1))
            })
        };
        xs.push(parse(ix)?);
        ys.push(parse(iy)?);
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Input(format!("{}: abscissae must increase", path.display())));
    }
    Ok((xs, ys, label))
}

fn report(fit: &FitResult, label: &str, out: Option<&Path>, cfg: &RunConfig) -> CliResult {
    let d = cfg.float_digits;
    let mut w = csv_writer(out)?;
    w.write_record(["amplitude", "exponent", "residual"])?;
    w.write_record([real(fit.amplitude, d), real(fit.exponent, d), real(fit.residual, d)])?;
    w.flush()?;
    note(
        out.is_some(),
        &format!(
            "{label} ≈ {:.6e}·x^{:.4} over [{}, {}] ({}, {} points)",
            fit.amplitude,
            fit.exponent,
            fit.window.0,
            fit.window.1,
            fit.method.as_str(),
            fit.points
        ),
    );
    Ok(())
}
