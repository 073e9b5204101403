//! Acceptance run: one line per criterion, nonzero exit on any failure.
//!
//! The seed defaults to a fixed value and can be overridden with
//! `SKEL_ACCEPTANCE_SEED`.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::pow;
use skeleton_ideals::verify::{self, Report};
use skeleton_ideals::{count_standard, parking_ideal, skeleton_ideal, Multigraph};

const DEFAULT_SEED: u64 = 20_251_016;

struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Check {
            ok,
            detail: detail.into(),
        }
    }
}

fn summarize(report: &Report) -> String {
    let first = report
        .failures()
        .next()
        .map(|t| format!("; first failure #{}: {}", t.id, t.instance))
        .unwrap_or_default();
    format!(
        "{} trials, {} failed, {} ms{first}",
        report.summary.total, report.summary.failed, report.summary.elapsed_ms
    )
}

fn family_passes(
    report: &Report,
    family: &str,
    expected: usize,
    keep: impl Fn(&serde_json::Value) -> bool,
) -> Check {
    let trials: Vec<_> = report
        .trials
        .iter()
        .filter(|t| t.instance["family"] == family && keep(&t.instance))
        .collect();
    let failed = trials.iter().filter(|t| !t.pass).count();
    Check::new(
        trials.len() == expected && failed == 0,
        format!(
            "{} {family} trials (want {expected}), {failed} failed",
            trials.len()
        ),
    )
}

fn criterion_1() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 2..=5usize {
        let g = Multigraph::complete(n, 1, 1).unwrap();
        let parking = BigInt::from(count_standard(&parking_ideal(&g).unwrap()).unwrap());
        let skel = BigInt::from(count_standard(&skeleton_ideal(&g, 1).unwrap()).unwrap());
        let det = g.truncated_signless::<BigInt>().det();
        let trees = pow(BigInt::from(n + 1), n - 1);
        let closed = pow(BigInt::from(n - 1), n - 1) * BigInt::from(2 * n - 1);
        ok &= parking == trees && skel == closed && det == closed;
        parts.push(format!("n={n}: {parking}, {skel}"));
    }
    Check::new(ok, parts.join("; "))
}

fn run(report: Result<Report, skeleton_ideals::Error>) -> Report {
    report.expect("suite parameters are valid")
}

fn main() -> ExitCode {
    let seed = std::env::var("SKEL_ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let started = Instant::now();
    let rc = run(verify::suite_rc(5, 3, 3, 100, seed));
    let ineq = run(verify::suite_ineq(5, 3, 200, seed));
    let mt = run(verify::suite_mt(5, 6, 100, seed));
    let steck = run(verify::suite_steck(4, 4, 5, 3));
    let lemma = run(verify::suite_lemma1(5, 5));
    let remark = run(verify::suite_remark(5, 5, 8));
    let decomp = run(verify::suite_decomp(50, seed));
    let props = run(verify::suite_props(5, 30, seed));

    let mut checks: Vec<(u32, &str, Check)> = Vec::new();
    checks.push((
        1,
        "complete graph counts and signless determinant",
        criterion_1(),
    ));
    checks.push((
        2,
        "complete multigraph grid: enumeration = closed form = det",
        family_passes(&rc, "complete", 36, |i| i["n"].as_u64().unwrap() <= 4),
    ));
    let g31 = rc
        .trials
        .iter()
        .find(|t| t.instance["family"] == "g_n_r" && t.instance["n"] == 3 && t.instance["r"] == 1);
    let mut c3 = family_passes(&rc, "g_n_r", 18, |_| true);
    let g31_ok =
        g31.is_some_and(|t| t.dim == "12" && t.det == "12" && t.formula.as_deref() == Some("12"));
    c3.ok &= g31_ok;
    c3.detail += &format!("; G_(3,1) gives 12/12/12: {g31_ok}");
    checks.push((3, "G_(n,r) grid: enumeration = Bareiss = closed form", c3));
    checks.push((
        4,
        "random root deletions: dim = det",
        family_passes(&rc, "root-deletion", 100, |_| true),
    ));

    let witness = ineq.trials.iter().find(|t| t.instance["family"] == "path");
    let witness_ok = witness.is_some_and(|t| t.dim == "2" && t.det == "1");
    let randoms = ineq
        .trials
        .iter()
        .filter(|t| t.instance["family"] == "random")
        .count();
    checks.push((
        5,
        "one-skeleton dimension bounds the signless determinant",
        Check::new(
            ineq.passed() && witness_ok && randoms == 200,
            format!("{}; path witness (2, 1): {witness_ok}", summarize(&ineq)),
        ),
    ));

    let accepted = mt
        .trials
        .iter()
        .filter(|t| t.instance["strategy"] != "fixed")
        .count();
    let certified = mt.trials.iter().all(|t| t.instance["psd"] == true);
    checks.push((
        6,
        "dim R/J_H >= det H on certified PSD matrices",
        Check::new(
            mt.passed() && accepted == 100 && certified,
            format!(
                "{}; {accepted} random accepted, {} discarded",
                summarize(&mt),
                mt.summary.skipped
            ),
        ),
    ));
    checks.push((
        7,
        "Steck determinants, brute force, standard monomials",
        Check::new(steck.passed(), summarize(&steck)),
    ));
    checks.push((
        8,
        "colon equality, recurrence and alternating sum",
        Check::new(lemma.passed(), summarize(&lemma)),
    ));
    checks.push((
        9,
        "I_(n,n)^<a> = I_(n,0)^<a-1> and the numeric identity",
        Check::new(remark.passed(), summarize(&remark)),
    ));

    let mut per_identity = Vec::new();
    let mut decomp_ok = decomp.passed();
    for id in [
        "det-root-split",
        "dim-root-split",
        "det-entry-split",
        "dim-colon-split",
    ] {
        let count = decomp
            .trials
            .iter()
            .filter(|t| t.instance["identity"] == id)
            .count();
        decomp_ok &= count == 50;
        per_identity.push(format!("{id} x{count}"));
    }
    checks.push((
        10,
        "decomposition identities",
        Check::new(
            decomp_ok,
            format!("{}; {}", summarize(&decomp), per_identity.join(", ")),
        ),
    ));
    checks.push((
        11,
        "property suite",
        Check::new(props.passed(), summarize(&props)),
    ));

    let mut all = true;
    for (n, name, c) in &checks {
        all &= c.ok;
        println!(
            "[{}] criterion {n}: {name} ({})",
            if c.ok { "PASS" } else { "FAIL" },
            c.detail
        );
    }
    println!("seed {seed}, total {} ms", started.elapsed().as_millis());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
