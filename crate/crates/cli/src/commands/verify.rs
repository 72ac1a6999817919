use std::path::Path;

use rug::Float;
use rzl_core::analysis::bound::{bound_rhs, bound_table_size};
use rzl_core::analysis::identities::IDENTITY_TOLERANCE;
use rzl_core::analysis::{
    abel_integral, alternating_sum, approx_identity_33, approx_identity_34, power_series_identity, verify_bound,
    verify_generating_identity,
};
use rzl_core::suite::{run_criterion, ALTERNATING_SUM, CRITERION_COUNT};

use crate::args::{IdentityArg, VerifyCmd};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{big, csv_writer};

/// One printed and summarized check.
struct Outcome {
    name: String,
    passed: bool,
    detail: String,
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn finish(outcomes: &[Outcome], summary: Option<&Path>) -> CliResult {
    for o in outcomes {
        println!("{} {}: {}", status(o.passed), o.name, o.detail);
    }
    conclude(outcomes, summary)
}

/// Writes the summary CSV and maps any failure to the verification exit code.
fn conclude(outcomes: &[Outcome], summary: Option<&Path>) -> CliResult {
    if let Some(p) = summary {
        let mut w = csv_writer(Some(p))?;
        w.write_record(["check", "status", "detail"])?;
        for o in outcomes {
            w.write_record([o.name.as_str(), status(o.passed), o.detail.as_str()])?;
        }
        w.flush()?;
    }
    if outcomes.iter().all(|o| o.passed) {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

pub fn run(cmd: &VerifyCmd, cfg: &RunConfig) -> CliResult {
    match cmd {
        VerifyCmd::Bound { kmin, kmax, out, summary } => {
            let o = bound(*kmin, *kmax, out.as_deref(), cfg)?;
            finish(&[o], summary.as_deref())
        }
        VerifyCmd::Identity { which, x, s, k, kmax, summary } => {
            let o = identity(*which, *x, *s, *k, *kmax, cfg)?;
            finish(&[o], summary.as_deref())
        }
        VerifyCmd::All { criteria, summary } => all(criteria, summary.as_deref()),
    }
}

fn bound(kmin: u64, kmax: u64, out: Option<&Path>, cfg: &RunConfig) -> CliResult<Outcome> {
    let table = cfg.table(bound_table_size(kmax, &cfg.ctx))?;
    let reports = verify_bound(kmin, kmax, &table, &cfg.ctx)?;
    if let Some(p) = out {
        let d = cfg.float_digits;
        let mut w = csv_writer(Some(p))?;
        w.write_record(["k", "lhs", "rhs_leading", "rhs_full", "holds"])?;
        for r in &reports {
            w.write_record([
                r.k.to_string(),
                big(&r.lhs, d),
                big(&r.rhs_leading, d),
                big(&r.rhs_full, d),
                r.holds.to_string(),
            ])?;
        }
        w.flush()?;
    }
    let failing: Vec<u64> = reports.iter().filter(|r| !r.holds).map(|r| r.k).collect();
    let detail = match failing.first() {
        None => format!("|R(k)/k - c_k| within the bound for every k in [{kmin}, {kmax}]"),
        Some(k) => format!("{} of {} indices violate the bound, first k = {k}", failing.len(), reports.len()),
    };
    Ok(Outcome { name: "bound".into(), passed: failing.is_empty(), detail })
}

fn identity(
    which: IdentityArg,
    x: Option<f64>,
    s: Option<f64>,
    k: Option<u64>,
    kmax: Option<u64>,
    cfg: &RunConfig,
) -> CliResult<Outcome> {
    let ctx = &cfg.ctx;
    let digits = ctx.digits() as usize;
    let e = |v: &Float| format!("{:.2e}", v.to_f64());
    Ok(match which {
        IdentityArg::Gf => {
            let x = x.unwrap_or(5.0);
            let c = verify_generating_identity(x, kmax.unwrap_or(100), ctx)?;
            let passed = c.residual.to_f64() < IDENTITY_TOLERANCE;
            Outcome {
                name: "generating identity".into(),
                passed,
                detail: format!("x = {x}, {} terms, relative residual {}", c.terms, e(&c.residual)),
            }
        }
        IdentityArg::Altsum => {
            let sum = alternating_sum(ctx)?;
            let reference = Float::with_val(ctx.bits(), Float::parse(ALTERNATING_SUM).expect("valid literal"));
            let d = Float::with_val(ctx.bits(), &sum - &reference).abs();
            // the reference carries 24 decimals
            let tol = 10f64.powi(-(ctx.digits().min(25) as i32 - 1));
            Outcome {
                name: "alternating sum".into(),
                passed: d.to_f64() < tol,
                detail: format!("{} (reference {ALTERNATING_SUM}, |Δ| = {})", big(&sum, digits), e(&d)),
            }
        }
        IdentityArg::Abel => {
            let (integral, err) = abel_integral(ctx)?;
            let sum = alternating_sum(ctx)?;
            let d = Float::with_val(ctx.bits(), &integral - &sum).abs();
            Outcome {
                name: "Abel integral".into(),
                passed: d.to_f64() < 1e-12,
                detail: format!("{} (quadrature error {err:.1e}, |Δ| to the sum = {})", big(&integral, digits), e(&d)),
            }
        }
        IdentityArg::Powerseries => {
            let s = s.unwrap_or(-1.0);
            let c = power_series_identity(s, kmax, ctx)?;
            Outcome {
                name: "power series".into(),
                passed: c.residual.to_f64() < IDENTITY_TOLERANCE,
                detail: format!("s = {s}, value {}, residual {}", big(&c.rhs, digits), e(&c.residual)),
            }
        }
        IdentityArg::Approx33 => {
            let k = k.unwrap_or(100);
            let d = approx_identity_33(k, ctx)?;
            let (_, rhs) = bound_rhs(k, ctx.bits());
            Outcome {
                name: "R(k)/k ≈ c_k".into(),
                passed: d <= rhs,
                detail: format!("k = {k}, |R(k)/k - c_k| = {}, bound {}", e(&d), e(&rhs)),
            }
        }
        IdentityArg::Approx34 => {
            let x = x.unwrap_or(10.0);
            let near = approx_identity_34(x, kmax, ctx)?;
            let far = approx_identity_34(10.0 * x, None, ctx)?;
            Outcome {
                name: "generating identity with R(k)/k".into(),
                passed: far.residual < near.residual,
                detail: format!(
                    "relative residual {} at x = {x}, {} at x = {}",
                    e(&near.residual),
                    e(&far.residual),
                    10.0 * x
                ),
            }
        }
    })
}

fn all(criteria: &[u32], summary: Option<&Path>) -> CliResult {
    let ids: Vec<u32> = if criteria.is_empty() { (1..=CRITERION_COUNT).collect() } else { criteria.to_vec() };
    if let Some(bad) = ids.iter().find(|i| !(1..=CRITERION_COUNT).contains(*i)) {
        return Err(CliError::Usage(format!("criteria are numbered 1 to {CRITERION_COUNT}, got {bad}")));
    }
    let mut outcomes = Vec::new();
    for id in ids {
        let r = run_criterion(id)?;
        let lines = r.lines();
        for line in &lines {
            println!("{line}");
        }
        outcomes.push(Outcome {
            name: format!("criterion {id} ({})", r.title),
            passed: r.passed(),
            detail: lines.join(" | "),
        });
    }
    conclude(&outcomes, summary)
}
