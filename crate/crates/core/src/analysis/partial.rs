//! Partial sums `S_K = Σ_{k≤K} c_k` and `A_K = Σ_{k≤K} (-1)^k c_k`.
//!
//! Summing the Möbius form of `c_k` over `k` first gives
//!
//! - `S_K = Σ_n μ(n) (1 - q_n^(K+1))`
//! - `A_K = Σ_n μ(n)/(2n² - 1) · (1 - (-q_n)^(K+1))`
//!
//! with `q_n = 1 - 1/n²`. Both are truncated at `N` and the part beyond `N`
//! is recovered from the tail moments `T_m`. With `u = 1/n²`,
//! `1 - (1-u)^(K+1) = Σ_{j≥1} (-1)^(j+1) C(K+1, j) u^j`,
//! `u/(2 - u) = Σ_{i≥1} 2^-i u^i`, and
//! `(1-u)^(K+1) u/(2-u) = Σ_{m≥1} d_m u^m` where `d_1 = 1/2` and
//! `d_m = (d_(m-1) + (-1)^(m-1) C(K+1, m-1))/2`. The expansions converge
//! quickly once `K ≪ N²`, which the cutoff `N ≈ 4√K` ensures.
//!
//! One cutoff serves the whole trace. Every `K` is produced by walking the
//! powers `q_n^(K+1)` multiplicatively inside fixed blocks, each started from
//! freshly computed powers, so the trace does not depend on scheduling.

use rayon::prelude::*;
use rug::Float;

use crate::analysis::fit::{fit_extrema, FitResult};
use crate::analysis::identities::alternating_sum;
use crate::baez::moebius_cutoff;
use crate::error::{domain, numeric, resource, Result};
use crate::precision::{digits_to_bits, PrecisionContext};
use crate::sieve::MobiusTable;
use crate::zeta::{plan_tail, MobiusTail, TailPlan};

/// Records per independently started block.
const PARTIAL_BLOCK: usize = 1024;

/// Level that the plain partial sums are compared against.
pub const PLAIN_LEVEL: f64 = -2.0;

/// Minimum peaks for the exploratory partial-sum envelope fits.
pub const PARTIAL_MIN_EXTREMA: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialSumTrace {
    pub k: u64,
    pub s_plain: f64,
    pub s_alt: f64,
    /// `|S_K + 2|`.
    pub distance_plain: f64,
    /// `|A_K - Σ_{k≥1} 2^-k/ζ(2k)|`.
    pub distance_alt: f64,
}

#[derive(Clone, Debug)]
pub struct PartialSums {
    pub traces: Vec<PartialSumTrace>,
    /// First `K` with `S_K < -2`.
    pub first_crossing: Option<u64>,
    /// The alternating limit `Σ_{k≥1} 2^-k/ζ(2k)`.
    pub alt_limit: f64,
    pub cutoff: u64,
}

/// Möbius table size needed for partial sums up to `kmax`.
pub fn partial_sums_table_size(kmax: u64, ctx: &PrecisionContext) -> u64 {
    moebius_cutoff(kmax, ctx)
}

struct Plan {
    cutoff: u64,
    tail: TailPlan,
    main_prec: u32,
    tail_prec: u32,
}

fn plan(kmax: u64, ctx: &PrecisionContext) -> Result<Plan> {
    let cutoff = moebius_cutoff(kmax, ctx);
    let w = ctx.working_digits() as f64;
    let k1 = (kmax + 1) as f64;
    // max_{j≤i+1} C(K+1, j) bounds the plain coefficient, |d_(i+1)| and 2^-(i+1);
    // it stays flat once the binomials pass their peak
    let tail =
        plan_tail(cutoff, 1, k1.log10(), |i| ((k1 - i as f64 - 1.0) / (i as f64 + 2.0)).log10().max(0.0), -w - 1.0)?;
    let ln = (cutoff as f64).log10();
    let main = w + ln + (PARTIAL_BLOCK as f64).log10() + 3.0;
    let tail_digits = w + tail.extra_digits + ln + 5.0;
    Ok(Plan {
        cutoff,
        tail,
        main_prec: digits_to_bits(main.ceil() as u32),
        tail_prec: digits_to_bits(tail_digits.ceil() as u32),
    })
}

/// Per-`n` data below the cutoff.
struct Terms {
    mu: Vec<i8>,
    q: Vec<Float>,
    /// `1/(2n² - 1)`.
    alt_w: Vec<Float>,
    mertens: i64,
    alt_head: Float,
}

impl Terms {
    fn new(table: &MobiusTable, cutoff: u64, prec: u32) -> Self {
        let (mut mu, mut q, mut alt_w) = (Vec::new(), Vec::new(), Vec::new());
        let mut mertens = 0i64;
        let mut alt_head = Float::new(prec);
        for (n, m) in table.squarefree(cutoff) {
            let inv = Float::with_val(prec, Float::with_val(prec, n).square().recip_ref());
            let w = Float::with_val(prec, n * n * 2 - 1).recip();
            if m > 0 {
                alt_head += &w;
            } else {
                alt_head -= &w;
            }
            mertens += m as i64;
            mu.push(m);
            q.push(Float::with_val(prec, 1 - inv));
            alt_w.push(w);
        }
        Terms { mu, q, alt_w, mertens, alt_head }
    }
}

/// The two tail corrections at `K`:
/// `Σ_{j≥1} (-1)^(j+1) C(K+1, j) T_j` and
/// `Σ_{i≥1} 2^-i T_i - (-1)^(K+1) Σ_{m≥1} d_m T_m`.
fn tails(k: u64, terms: u32, tail: &MobiusTail, prec: u32) -> (Float, Float) {
    let k1 = k + 1;
    let mut plain = Float::new(prec);
    let mut geo = Float::new(prec);
    let mut mixed = Float::new(prec);
    // binom = C(K+1, m-1) at the start of step m; d = d_m
    let mut binom = Float::with_val(prec, 1);
    let mut d = Float::with_val(prec, 0.5);
    for m in 1..=terms {
        let t = tail.moment(m);
        // C(K+1, m) from C(K+1, m-1)
        let next =
            if (m as u64) <= k1 { Float::with_val(prec, &binom * (k1 - m as u64 + 1)) / m } else { Float::new(prec) };
        if m % 2 == 1 {
            plain += Float::with_val(prec, &next * t);
        } else {
            plain -= Float::with_val(prec, &next * t);
        }
        geo += Float::with_val(prec, t >> m);
        mixed += Float::with_val(prec, &d * t);
        // d_(m+1) = (d_m + (-1)^m C(K+1, m))/2
        if m % 2 == 0 {
            d += &next;
        } else {
            d -= &next;
        }
        d >>= 1;
        binom = next;
    }
    let alt = if k1 % 2 == 0 { geo - mixed } else { geo + mixed };
    (plain, alt)
}

/// `S_K` and `A_K` for every `0 ≤ K ≤ kmax`, with the first crossing of −2.
pub fn partial_sums(kmax: u64, table: &MobiusTable, ctx: &PrecisionContext) -> Result<PartialSums> {
    let plan = plan(kmax, ctx)?;
    if plan.cutoff > table.limit() {
        return Err(resource!(
            "partial sums to K = {kmax} need a Möbius table up to N = {}, but it stops at {}",
            plan.cutoff,
            table.limit()
        ));
    }
    let tail = MobiusTail::new(table, plan.cutoff, plan.tail.terms + 1, plan.tail_prec)?;
    let terms = Terms::new(table, plan.cutoff, plan.main_prec);
    let alt_limit = alternating_sum(ctx)?.to_f64();
    let p = plan.main_prec;

    let ks: Vec<u64> = (0..=kmax).collect();
    let blocks: Vec<Vec<PartialSumTrace>> = ks
        .par_chunks(PARTIAL_BLOCK)
        .map(|chunk| {
            // powers[i] = q_i^(K+1)
            let mut powers: Vec<Float> =
                terms.q.iter().map(|q| Float::with_val(p, rug::ops::Pow::pow(q, chunk[0] + 1))).collect();
            let mut out = Vec::with_capacity(chunk.len());
            let mut t = Float::new(p);
            for (i, &k) in chunk.iter().enumerate() {
                if i > 0 {
                    for (pw, q) in powers.iter_mut().zip(&terms.q) {
                        *pw *= q;
                    }
                }
                let mut plain = Float::with_val(p, terms.mertens);
                let mut alt_body = Float::new(p);
                for ((pw, w), &m) in powers.iter().zip(&terms.alt_w).zip(&terms.mu) {
                    use rug::Assign;
                    t.assign(pw * w);
                    if m > 0 {
                        plain -= pw;
                        alt_body += &t;
                    } else {
                        plain += pw;
                        alt_body -= &t;
                    }
                }
                // A_K = head - (-1)^(K+1) body
                let mut alt = terms.alt_head.clone();
                if (k + 1) % 2 == 0 {
                    alt -= &alt_body;
                } else {
                    alt += &alt_body;
                }
                let (tp, ta) = tails(k, plan.tail.terms, &tail, plan.tail_prec);
                plain += tp;
                alt += ta;
                let (s_plain, s_alt) = (plain.to_f64(), alt.to_f64());
                out.push(PartialSumTrace {
                    k,
                    s_plain,
                    s_alt,
                    distance_plain: (s_plain - PLAIN_LEVEL).abs(),
                    distance_alt: (s_alt - alt_limit).abs(),
                });
            }
            out
        })
        .collect();
    let traces: Vec<PartialSumTrace> = blocks.into_iter().flatten().collect();
    let first_crossing = traces.iter().find(|t| t.s_plain < PLAIN_LEVEL).map(|t| t.k);
    Ok(PartialSums { traces, first_crossing, alt_limit, cutoff: plan.cutoff })
}

/// Exploratory envelope fits `|A_K - s*| ~ K^p` over `windows.0` and
/// `|S_K + 2| ~ K^p` over `windows.1`, each through the peaks of the trace.
pub fn partial_sum_envelopes(
    trace: &[PartialSumTrace],
    windows: ((f64, f64), (f64, f64)),
) -> Result<(FitResult, FitResult)> {
    let (first, last) = match (trace.iter().find(|t| t.k > 0), trace.last()) {
        (Some(a), Some(b)) => (a.k as f64, b.k as f64),
        _ => return Err(numeric!("partial-sum trace is empty")),
    };
    if last < 100.0 * first {
        return Err(numeric!("partial-sum trace spans less than two decades ({first} to {last})"));
    }
    for w in [windows.0, windows.1] {
        if !(w.0 > 0.0 && w.0 < w.1) {
            return Err(domain!("fit window [{}, {}] is empty", w.0, w.1));
        }
    }
    let xs: Vec<f64> = trace.iter().map(|t| t.k as f64).collect();
    let alt: Vec<f64> = trace.iter().map(|t| t.distance_alt).collect();
    let plain: Vec<f64> = trace.iter().map(|t| t.distance_plain).collect();
    Ok((
        fit_extrema(&xs, &alt, windows.0, PARTIAL_MIN_EXTREMA)?,
        fit_extrema(&xs, &plain, windows.1, PARTIAL_MIN_EXTREMA)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baez::{ck_sweep, CkMethod};
    use crate::sieve::build_mobius;
    use crate::Error;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(20).unwrap()
    }

    #[test]
    fn matches_direct_summation() {
        let c = ctx();
        let kmax = 2000;
        let table = build_mobius(partial_sums_table_size(kmax, &c)).unwrap();
        let ps = partial_sums(kmax, &table, &c).unwrap();
        let cks = ck_sweep(kmax, CkMethod::Moebius, 1, &table, &c).unwrap();
        let (mut s, mut a) = (0.0f64, 0.0f64);
        for (t, r) in ps.traces.iter().zip(&cks) {
            let v = r.value.to_f64();
            s += v;
            a += if r.k % 2 == 0 { v } else { -v };
            assert_eq!(t.k, r.k);
            assert!((t.s_plain - s).abs() < 1e-10, "K = {}: {} vs {s}", t.k, t.s_plain);
            assert!((t.s_alt - a).abs() < 1e-10, "K = {}: {} vs {a}", t.k, t.s_alt);
        }
        // S_0 = c_0 = 6/π², A_1 = c_0 - c_1
        assert!((ps.traces[0].s_plain - 6.0 / std::f64::consts::PI.powi(2)).abs() < 1e-15);
        assert!((ps.traces[1].s_alt - (0.607_927_101_854_026_6 + 0.316_011_301_067_563_5)).abs() < 1e-14);
        assert!(ps.first_crossing.is_none());
    }

    #[test]
    fn tails_are_consistent_across_cutoffs() {
        // tail(N₀) = Σ_{N₀<n≤N₁} (direct terms) + tail(N₁)
        let table = build_mobius(4096).unwrap();
        let (n0, n1, k) = (64u64, 4096u64, 500u64);
        let prec = 1024;
        let t0 = MobiusTail::new(&table, n0, 200, prec).unwrap();
        let t1 = MobiusTail::new(&table, n1, 200, prec).unwrap();
        let (p0, a0) = tails(k, 199, &t0, prec);
        let (p1, a1) = tails(k, 199, &t1, prec);
        let (mut dp, mut da) = (Float::new(prec), Float::new(prec));
        for (n, m) in table.squarefree(n1).filter(|(n, _)| *n > n0) {
            let inv = Float::with_val(prec, Float::with_val(prec, n).square().recip_ref());
            let qk = Float::with_val(prec, rug::ops::Pow::pow(Float::with_val(prec, 1 - &inv), k + 1));
            let w = Float::with_val(prec, n * n * 2 - 1).recip();
            let alt = if (k + 1) % 2 == 0 { Float::with_val(prec, 1 - &qk) } else { Float::with_val(prec, 1 + &qk) };
            let plain = Float::with_val(prec, 1 - qk);
            if m > 0 {
                dp += plain;
                da += alt * w;
            } else {
                dp -= plain;
                da -= alt * w;
            }
        }
        let ep = Float::with_val(prec, &p0 - (dp + &p1)).abs();
        let ea = Float::with_val(prec, &a0 - (da + &a1)).abs();
        assert!(ep < 1e-60, "{}", ep.to_f64());
        assert!(ea < 1e-60, "{}", ea.to_f64());
    }

    #[test]
    fn block_boundaries_and_threads_do_not_matter() {
        let c = ctx();
        let kmax = 3000;
        let table = build_mobius(partial_sums_table_size(kmax, &c)).unwrap();
        let a = partial_sums(kmax, &table, &c).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| partial_sums(kmax, &table, &c).unwrap());
        assert_eq!(a.traces, b.traces);
        // values straddling a block edge stay smooth
        let edge = &a.traces[PARTIAL_BLOCK - 2..PARTIAL_BLOCK + 2];
        for w in edge.windows(2) {
            assert!((w[1].s_plain - w[0].s_plain).abs() < 1e-3);
        }
    }

    #[test]
    fn short_traces_keep_the_alternating_tail() {
        let c = ctx();
        let table = build_mobius(partial_sums_table_size(3, &c)).unwrap();
        let ps = partial_sums(3, &table, &c).unwrap();
        let big = build_mobius(partial_sums_table_size(2000, &c)).unwrap();
        let long = partial_sums(2000, &big, &c).unwrap();
        for (a, b) in ps.traces.iter().zip(&long.traces) {
            assert!((a.s_plain - b.s_plain).abs() < 1e-14 && (a.s_alt - b.s_alt).abs() < 1e-14, "K = {}", a.k);
        }
    }

    #[test]
    fn small_table_is_a_resource_error() {
        let c = ctx();
        let table = build_mobius(100).unwrap();
        assert!(matches!(partial_sums(10_000, &table, &c), Err(Error::Resource(_))));
    }

    #[test]
    fn envelope_fit_preconditions() {
        let flat: Vec<PartialSumTrace> = (0..=1000)
            .map(|k| PartialSumTrace { k, s_plain: -1.0, s_alt: 0.5, distance_plain: 1.0, distance_alt: 0.1 })
            .collect();
        assert!(partial_sum_envelopes(&flat, ((1.0, 1000.0), (1.0, 1000.0))).is_err());
        assert!(partial_sum_envelopes(&flat[..50], ((1.0, 40.0), (1.0, 40.0))).is_err());
    }
}
