//! Acceptance criteria AC1-AC8. Each test prints one PASS/FAIL line.
//!
//! AC5 (q = 7) takes minutes and is `#[ignore]`d; run it with
//! `cargo test -p pgcensus --test acceptance -- --ignored`.

use std::process::Command;
use std::time::{Duration, Instant};

use pgcensus::{run_numeric, run_symbolic, Level, NumericOptions, VerificationReport};
use pgcensus_core::altform::AlternatingForm;
use pgcensus_core::census::enumerate::{plane_count, ProjectiveSpace};
use pgcensus_core::census::{
    check_genericity, count_planes_and_x, rank_census, sample_w, CensusError, WSystem,
};
use pgcensus_core::motivic::{class_grassmannian, class_projective};

fn verdict(ac: &str, pass: bool, detail: impl AsRef<str>) {
    println!("{} {ac}: {}", if pass { "PASS" } else { "FAIL" }, detail.as_ref());
    assert!(pass, "{ac} failed: {}", detail.as_ref());
}

fn failing(r: &VerificationReport) -> Vec<String> {
    r.checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} {} != {}", c.name, c.lhs, c.rhs))
        .collect()
}

fn names(r: &VerificationReport) -> Vec<&str> {
    r.checks.iter().map(|c| c.name.as_str()).collect()
}

fn count(r: &VerificationReport, f: impl Fn(&pgcensus::report::Counts) -> &String) -> u64 {
    f(r.counts.as_ref().unwrap()).parse().unwrap()
}

fn numeric(q: u32, seed: u64, level: Level, workers: usize) -> (VerificationReport, Duration) {
    let mut opts = NumericOptions::new(q, seed, level);
    opts.workers = workers;
    let start = Instant::now();
    let (report, _) = run_numeric(&opts).unwrap();
    (report, start.elapsed())
}

#[test]
fn ac1_symbolic_suite() {
    let start = Instant::now();
    let r = run_symbolic(false).unwrap();
    let elapsed = start.elapsed();
    let s4 = r.check("S4").unwrap();
    let pass = r.verdict
        && names(&r) == ["S1", "S2", "S3", "S4"]
        && s4.rhs == "(0) + (1*L^10 - 1*L^9 - 1*L^8 + 1*L^7)*[X] + (-1*L^10 + 1*L^9 + 1*L^8 - 1*L^7)*[Y]"
        && elapsed < Duration::from_secs(1);
    verdict("AC1", pass, format!("S1-S4 exact, S4 = ([X]-[Y])(L^2-1)(L-1)L^7, {elapsed:?} < 1s"));
}

#[test]
fn ac2_q2_full_suite() {
    let (r, elapsed) = numeric(2, 1, Level::Full, 1);
    let attempts: u32 = r.sampling.as_ref().unwrap().attempts.parse().unwrap();
    let n_x = count(&r, |c| &c.n_x);
    let n_y = count(&r, |c| &c.n_y);
    let pass = r.verdict
        && names(&r) == ["N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8"]
        && attempts <= 100
        && count(&r, |c| &c.n_g) == 2667
        && count(&r, |c| &c.n_p6) == 127
        && n_x == n_y
        && count(&r, |c| &c.n_th) == 6 * count(&r, |c| c.n_h.as_ref().unwrap())
        && elapsed < Duration::from_secs(10);
    verdict(
        "AC2",
        pass,
        format!("q=2 N1-N8 pass, n_X=n_Y={n_x}, {attempts} attempt(s), {elapsed:?} < 10s {:?}", failing(&r)),
    );
}

#[test]
fn ac3_q3_suite() {
    let (r, elapsed) = numeric(3, 1, Level::Full, 1);
    let required = ["N1", "N2", "N4", "N5", "N6"];
    let pass = r.verdict
        && required.iter().all(|n| r.check(n).is_some_and(|c| c.pass))
        && count(&r, |c| &c.n_g) == 99463
        && elapsed < Duration::from_secs(60);
    verdict(
        "AC3",
        pass,
        format!(
            "q=3 99463 planes, N2 brute + N4/N5/N6 pass, n_X=n_Y={}, {elapsed:?} < 60s {:?}",
            count(&r, |c| &c.n_x),
            failing(&r)
        ),
    );
}

#[test]
fn ac4_q5_fast_suite() {
    let (r, elapsed) = numeric(5, 7, Level::Fast, 1);
    let n_g = count(&r, |c| &c.n_g);
    let pass = r.verdict
        && ["N1", "N4", "N5", "N6"].iter().all(|n| r.check(n).is_some_and(|c| c.pass))
        && n_g == 12_714_681
        && elapsed < Duration::from_secs(300);
    verdict(
        "AC4",
        pass,
        format!(
            "q=5 {n_g} planes, N1/N4/N5/N6 pass, n_X=n_Y={}, {elapsed:?} < 300s {:?}",
            count(&r, |c| &c.n_x),
            failing(&r)
        ),
    );
}

#[test]
#[ignore = "long: q=7 census, several minutes"]
fn ac5_q7_fast_suite() {
    let (r, elapsed) = numeric(7, 1, Level::Fast, 8);
    let n_g = count(&r, |c| &c.n_g);
    let s = sample_w(7, 1, 100, 1).unwrap();
    let total = plane_count(7);
    let sub = total / 2..total / 2 + 5_000_000;
    let one = count_planes_and_x(&s.w, sub.clone(), 1).unwrap();
    let eight = count_planes_and_x(&s.w, sub.clone(), 8).unwrap();
    let pass = r.verdict
        && r.check("N6").is_some_and(|c| c.pass)
        && r.check("N7").is_some_and(|c| c.pass)
        && n_g == 336_416_907
        && one == eight
        && elapsed < Duration::from_secs(900);
    verdict(
        "AC5",
        pass,
        format!(
            "q=7 {n_g} planes, n_X=n_Y={}, subsample {sub:?} 1 vs 8 workers {one:?}, {elapsed:?} < 900s {:?}",
            count(&r, |c| &c.n_x),
            failing(&r)
        ),
    );
}

#[test]
fn ac6_negative_control() {
    let s = sample_w(2, 1, 100, 1).unwrap();
    let mut forms = *s.w.forms();
    forms[3] = AlternatingForm::elementary(0, 1);
    let degenerate = WSystem::new(s.w.ctx().clone(), forms, 1).unwrap();
    let g = check_genericity(&degenerate, 1).unwrap();
    let witness = g.witness.expect("rank-2 witness");
    let witness_ok = witness.rank == 2 && degenerate.combination(&witness.coeffs).rank(degenerate.ctx()) == 2;

    // the sampler rejects such systems and never certifies one
    let mut rank_two_rejections = 0;
    let mut certified_ok = true;
    for seed in 0..150u64 {
        match sample_w(2, seed, 100, 1) {
            Ok(sampled) => {
                rank_two_rejections += sampled
                    .stats
                    .rejected_for
                    .iter()
                    .filter(|r| r.starts_with("rank 2"))
                    .count();
                let ranks = rank_census(&sampled.w, 1).unwrap();
                let space = ProjectiveSpace::new(2, 6);
                let recount = space
                    .collect7()
                    .iter()
                    .all(|c| matches!(sampled.w.combination(c).rank(sampled.w.ctx()), 4 | 6));
                certified_ok &= ranks.witness.is_none() && recount;
            }
            Err(CensusError::SamplingExhausted { .. }) => certified_ok = false,
            Err(e) => panic!("{e}"),
        }
    }
    let pass = !g.histogram.is_empty() && witness_ok && certified_ok && rank_two_rejections > 0;
    verdict(
        "AC6",
        pass,
        format!("degenerate W rejected with witness [{witness}]; 150 seeds certified only {{4,6}} systems after {rank_two_rejections} rank-2 rejections"),
    );
}

#[test]
fn ac7_cross_module_oracle() {
    let g = class_grassmannian(2, 7).unwrap();
    let p6 = class_projective(6).unwrap();
    let mut detail = Vec::new();
    let mut pass = true;
    for q in [2u32, 3, 5] {
        let s = sample_w(q, 1, 100, 1).unwrap();
        let (planes, _) = count_planes_and_x(&s.w, 0..u64::MAX, 1).unwrap();
        let points = rank_census(&s.w, 1).unwrap().points();
        let g_q = g.eval_at(q as i128).unwrap();
        let p_q = p6.eval_at(q as i128).unwrap();
        pass &= planes as i128 == g_q && points as i128 == p_q;
        detail.push(format!("q={q}: {planes}={g_q}, {points}={p_q}"));
    }
    verdict("AC7", pass, detail.join("; "));
}

#[test]
fn ac8_golden_report() {
    let run = |workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_pgcensus"))
            .args(["verify", "numeric", "--q", "2", "--seed", "1", "--level", "full", "--workers", workers])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let one = run("1");
    let again = run("1");
    let four = run("4");
    let golden = include_bytes!("golden/numeric_q2_seed1_full.json");
    let pass = one == again && one == four && one.as_slice() == golden.as_slice();
    verdict("AC8", pass, "q=2 seed=1 full report byte-identical across runs, --workers 1/4 and golden file");
}
