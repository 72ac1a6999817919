use rzl_core::analysis::partial::partial_sums_table_size;
use rzl_core::analysis::{partial_sum_envelopes, partial_sums};

use crate::args::SumsCmd;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{csv_writer, note, real};

pub fn run(cmd: &SumsCmd, cfg: &RunConfig) -> CliResult {
    let SumsCmd::Partial { kmax, stride, envelopes, out } = cmd;
    if *stride == 0 {
        return Err(CliError::Usage("--stride must be positive".into()));
    }
    let table = cfg.table(partial_sums_table_size(*kmax, &cfg.ctx))?;
    let ps = partial_sums(*kmax, &table, &cfg.ctx)?;
    let d = cfg.float_digits;
    let mut w = csv_writer(out.as_deref())?;
    w.write_record(["K", "S_plain", "S_alt", "dist_plain", "dist_alt"])?;
    for t in ps.traces.iter().step_by(*stride as usize) {
        w.write_record([
            t.k.to_string(),
            real(t.s_plain, d),
            real(t.s_alt, d),
            real(t.distance_plain, d),
            real(t.distance_alt, d),
        ])?;
    }
    w.flush()?;
    let to_stdout = out.is_some();
    match ps.first_crossing {
        Some(k) => note(to_stdout, &format!("first K with S_K < -2: {k}")),
        None => note(to_stdout, &format!("S_K stays above -2 for K ≤ {kmax}")),
    }
    note(to_stdout, &format!("alternating limit {}, Möbius cutoff {}", real(ps.alt_limit, d), ps.cutoff));
    if *envelopes {
        let window = (*kmax as f64 / 100.0, *kmax as f64);
        match partial_sum_envelopes(&ps.traces, (window, window)) {
            Ok((alt, plain)) => {
                for (name, f) in [("alternating", alt), ("plain", plain)] {
                    note(
                        to_stdout,
                        &format!(
                            "{name} distance envelope over [{}, {}]: amplitude {:.6e}, exponent {:.4} ({} peaks)",
                            window.0, window.1, f.amplitude, f.exponent, f.points
                        ),
                    );
                }
            }
            Err(e) => note(to_stdout, &format!("envelope fits unavailable: {e}")),
        }
    }
    Ok(())
}
