//! Symbolic and numeric verification runs.

use std::time::Instant;

use pgcensus_core::census::{
    check_capacity,    count_planes_and_x, count_planes_and_x_reference, enumerate::plane_count, sample_w,
    CensusCounts, CensusPlan, Sampled, TildeCounts, WSystem,
};
use pgcensus_core::motivic::{self, class_grassmannian, kernel_split_fiber};
use pgcensus_core::{FieldCtx, LPoly};

use crate::report::{Check, Counts, Mode, Sampling, VerificationReport};
use crate::HarnessError;

/// Fields accepted by `verify numeric`.
pub const NUMERIC_FIELDS: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Length of the plane subsample recounted for the determinism check.
pub const DETERMINISM_SAMPLE: u64 = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Level {
    /// N1, N4, N5, N6, N7
    #[default]
    Fast,
    /// adds the brute-force checks N2, N3, N8 where q permits
    Full,
}

#[derive(Debug, Clone)]
pub struct NumericOptions {
    pub q: u32,
    pub seed: u64,
    pub level: Level,
    pub workers: usize,
    pub max_retries: u32,
    pub timing: bool,
}

impl NumericOptions {
    pub fn new(q: u32, seed: u64, level: Level) -> Self {
        Self {
            q,
            seed,
            level,
            workers: 1,
            max_retries: 100,
            timing: false,
        }
    }
}

pub fn run_symbolic(timing: bool) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let mut report = VerificationReport::new(Mode::Symbolic);
    report.checks = motivic::verify_symbolic()?
        .into_iter()
        .map(Check::from)
        .collect();
    if timing {
        report
            .timing_ms
            .insert("symbolic".into(), start.elapsed().as_millis().to_string());
    }
    Ok(report.seal())
}

/// Validates `q` for numeric runs.
pub fn numeric_field(q: u32) -> Result<FieldCtx, HarnessError> {
    let ctx = FieldCtx::new(q).map_err(|e| HarnessError::Usage(e.to_string()))?;
    if !NUMERIC_FIELDS.contains(&q) {
        return Err(HarnessError::Usage(format!(
            "q={q} is not one of {NUMERIC_FIELDS:?}"
        )));
    }
    Ok(ctx)
}

/// Samples `W`, counts, and checks. Also returns the sampled system.
pub fn run_numeric(opts: &NumericOptions) -> Result<(VerificationReport, Sampled), HarnessError> {
    numeric_field(opts.q)?;
    check_capacity(opts.q)?;
    let t0 = Instant::now();
    let sampled = sample_w(opts.q, opts.seed, opts.max_retries, opts.workers)?;
    let sample_ms = t0.elapsed().as_millis();
    let mut report = census_report(&sampled.w, opts.level, opts.workers, opts.timing)?;
    report.seed = Some(opts.seed.to_string());
    report.sampling = Some(Sampling::from(&sampled.stats));
    if opts.timing {
        report.timing_ms.insert("sample".into(), sample_ms.to_string());
    }
    Ok((report, sampled))
}

/// Counts and checks for an already certified `W`.
pub fn census_report(
    w: &WSystem,
    level: Level,
    workers: usize,
    timing: bool,
) -> Result<VerificationReport, HarnessError> {
    let q = w.q();
    let full = level == Level::Full;
    let plan = CensusPlan {
        workers,
        brute_h: full && q <= pgcensus_core::census::DEFAULT_MAX_BRUTE_H_Q,
        triple_brute: full && q == 2,
        ..CensusPlan::default()
    };
    let t0 = Instant::now();
    let counts = plan.run(w)?;
    let census_ms = t0.elapsed().as_millis();

    let t1 = Instant::now();
    let mut checks = numeric_checks(q, &counts, level)?;
    checks.push(determinism_check(w, workers)?);
    if let Some(brute) = &counts.tilde_brute {
        checks.push(Check::new("N8", render_tilde(brute), render_tilde(&counts.tilde)));
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let check_ms = t1.elapsed().as_millis();

    let mut report = VerificationReport::new(Mode::Numeric);
    report.q = Some(q);
    report.seed = Some(w.seed().to_string());
    report.counts = Some(Counts::from(&counts));
    report.checks = checks;
    if timing {
        report.timing_ms.insert("census".into(), census_ms.to_string());
        report.timing_ms.insert("checks".into(), check_ms.to_string());
    }
    Ok(report.seal())
}

fn render_tilde(t: &TildeCounts) -> String {
    format!(
        "n_tH={} n_tH1={} n_tH2={} n_tH11={} n_tH12={}",
        t.n_th, t.n_th1, t.n_th2, t.n_th11, t.n_th12
    )
}

fn overflow(what: &str) -> HarnessError {
    HarnessError::Overflow(what.to_string())
}

fn mul(a: i128, b: i128, what: &str) -> Result<i128, HarnessError> {
    a.checked_mul(b).ok_or_else(|| overflow(what))
}

fn add(a: i128, b: i128, what: &str) -> Result<i128, HarnessError> {
    a.checked_add(b).ok_or_else(|| overflow(what))
}

fn at(poly: &LPoly, q: u32) -> Result<i128, HarnessError> {
    Ok(poly.eval_at(q as i128)?)
}

/// N1-N6 from the counts. N2 needs the brute `#H`. N3 (full level only)
/// prefers the triple-level `#H~` and the brute `#H`, falling back to the
/// pair-level `#H~` and the right side of N2.
pub fn numeric_checks(q: u32, c: &CensusCounts, level: Level) -> Result<Vec<Check>, HarnessError> {
    let qi = q as i128;
    let mut checks = Vec::new();

    let n_g_expected = at(&class_grassmannian(2, 7)?, q)?;
    checks.push(Check::new("N1", c.n_g, n_g_expected));

    let q6 = qi.pow(6);
    let h_rhs = add(
        mul(c.n_g as i128, c.n_p5 as i128, "N2")?,
        mul(c.n_x as i128, q6, "N2")?,
        "N2",
    )?;
    if let Some(n_h) = c.n_h {
        checks.push(Check::new("N2", n_h, h_rhs));
    }

    if level == Level::Full {
        let frame = at(&motivic::frame_factor()?, q)?;
        let n_h = c.n_h.map(|n| n as i128).unwrap_or(h_rhs);
        let n_th = c.tilde_brute.unwrap_or(c.tilde).n_th;
        checks.push(Check::new("N3", n_th, mul(n_h, frame, "N3")?));
    }

    let fiber_y = at(&kernel_split_fiber(3)?, q)?;
    checks.push(Check::new("N4", c.tilde.n_th1, mul(c.n_y as i128, fiber_y, "N4")?));

    let fiber_rest = at(&kernel_split_fiber(1)?, q)?;
    let rest = c.n_p6 as i128 - c.n_y as i128;
    checks.push(Check::new("N5", c.tilde.n_th2, mul(rest, fiber_rest, "N5")?));

    checks.push(Check::new("N6", c.n_x, c.n_y));
    Ok(checks)
}

/// N7: a fixed plane subsample counted by the chunked parallel walker and by
/// the one-plane-at-a-time reference path.
pub fn determinism_check(w: &WSystem, workers: usize) -> Result<Check, HarnessError> {
    let total = plane_count(w.q() as u64);
    let len = total.min(DETERMINISM_SAMPLE);
    let start = (total - len) / 2;
    let range = start..start + len;
    let (n, x) = count_planes_and_x(w, range.clone(), workers)?;
    let (n_ref, x_ref) = count_planes_and_x_reference(w, range.clone());
    let render = |n: u64, x: u64| format!("planes[{}..{}]={n} x={x}", range.start, range.end);
    Ok(Check::new("N7", render(n, x), render(n_ref, x_ref)))
}
