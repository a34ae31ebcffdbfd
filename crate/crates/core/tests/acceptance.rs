//! The acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p glr-fock --test acceptance`. Every comparison is
//! an exact equality of rationals. The process exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use glr_fock::glhat::RSetup;
use glr_fock::model::Model;
use glr_fock::verify::{check, CheckOptions, CheckReport, Truncation};

struct Run {
    check: &'static str,
    parts: Vec<u32>,
    trunc: Truncation,
    model: Model,
}

fn run(check: &'static str, parts: &[u32], trunc: Truncation) -> Run {
    Run { check, parts: parts.to_vec(), trunc, model: Model::Geometric }
}

struct Criterion {
    number: u32,
    title: &'static str,
    runs: Vec<Run>,
    /// Wall-clock limit per run, where the criterion sets one.
    budget: Option<Duration>,
}

/// Setups with at most three colours and parts at most three.
fn small_setups() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 1..=3 {
        out.push(vec![a]);
        for b in a..=3 {
            out.push(vec![a, b]);
            for c in b..=3 {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// `(r)`, `(1,…,1)` and mixed partitions for `r ∈ {2, 3, 4}`.
fn chevalley_setups() -> Vec<Vec<u32>> {
    vec![vec![2], vec![1, 1], vec![3], vec![1, 1, 1], vec![1, 2], vec![4], vec![1, 1, 1, 1], vec![1, 3], vec![2, 2], vec![1, 1, 2]]
}

fn criteria() -> Vec<Criterion> {
    let t = Truncation::new;
    let over = |check: &'static str, setups: &[Vec<u32>], trunc: Truncation| -> Vec<Run> {
        setups.iter().map(|p| run(check, p, trunc)).collect()
    };
    let chev = chevalley_setups();
    let mut rel = over("chevalley", &chev, t(4, 1, 0));
    rel.extend(over("loop-relations", &chev, t(4, 1, 0)));
    let mut alg = rel.iter().map(|r| Run { model: Model::Algebraic, ..run(r.check, &r.parts, r.trunc) }).collect();
    rel.append(&mut alg);
    vec![
        Criterion {
            number: 1,
            title: "Clifford anticommutators, s ≤ 3, E ≤ 5, w = 2, index windows of width 8",
            // The fermionic operators see only the number of colours, so one
            // run per s covers every setup with that s.
            runs: vec![run("clifford", &[1], t(5, 2, 0)), run("clifford", &[1, 1], t(5, 2, 0)), run("clifford", &[1, 1, 1], t(5, 2, 0))],
            budget: Some(Duration::from_secs(60)),
        },
        Criterion {
            number: 2,
            title: "oscillator relations, bosonic and geometric, |n|,|m| ≤ 5, degree ≤ 6",
            runs: vec![run("oscillator", &[1], t(6, 1, 0)), run("oscillator", &[1, 2], t(6, 0, 0)), run("oscillator", &[1, 1, 1], t(4, 0, 0))],
            budget: None,
        },
        Criterion {
            number: 3,
            title: "single-box coefficients of P(-1) and F^l_k, |λ| ≤ 6, every small setup",
            runs: small_setups().iter().map(|p| run("single-box", p, t(6, 0, 0))).collect(),
            budget: None,
        },
        Criterion {
            number: 4,
            title: "|A| - |R| counting identity, 1000 seeded partitions up to 40 boxes, r ≤ 5, c ∈ [-5,5]",
            runs: (1..=5).map(|r| run("efh-counting", &[r], t(40, 0, 0))).collect(),
            budget: Some(Duration::from_secs(10)),
        },
        Criterion {
            number: 5,
            title: "diagonal E/F equal the Clifford-bilinear sums, E ≤ 4",
            runs: small_setups().iter().map(|p| run("clifford-bilinear", p, t(4, 1, 0))).collect(),
            budget: None,
        },
        Criterion { number: 6, title: "ĝl_r relations and loop relations, E ≤ 4, w = 1", runs: rel, budget: None },
        Criterion {
            number: 7,
            title: "geometric operators equal the fermionic ones on every block, E ≤ 4, w = 1",
            runs: over("geo-vs-alg", &chev, t(4, 1, 0)),
            budget: None,
        },
        Criterion {
            number: 8,
            title: "boson–fermion triangle for P_l(n), degree ≤ 6",
            runs: vec![run("bf-triangle", &[1], t(6, 1, 0)), run("bf-triangle", &[1, 2], t(6, 0, 0)), run("bf-triangle", &[1, 1, 2], t(4, 0, 0))],
            budget: None,
        },
        Criterion {
            number: 9,
            title: "vacuum is highest weight and generates p(d) states in principal degree d ≤ 4",
            runs: over("highest-weight", &chev, t(4, 1, 0)),
            budget: None,
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let mut problems: Vec<String> = Vec::new();
        let mut relations = 0;
        for r in &c.runs {
            let setup = RSetup::new(r.parts.clone()).expect("valid setup");
            let opts = CheckOptions { model: r.model, seed: 1 };
            let report: CheckReport = check(r.check, &setup, &r.trunc, &opts).expect("known check");
            relations += report.relations_checked;
            if !report.passed {
                let first = &report.violations[0];
                problems.push(format!(
                    "{} {} [{}]: {} violations, e.g. {} on {}: {} vs {}",
                    r.check, setup, r.model, report.violation_count, first.relation, first.state, first.lhs, first.rhs
                ));
            }
            if let Some(budget) = c.budget {
                if report.elapsed > budget {
                    problems.push(format!("{} {} took {:.1?}, over the {:?} budget", r.check, setup, report.elapsed, budget));
                }
            }
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} — {} ({relations} relations, {:.1?})", c.number, c.title, start.elapsed());
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
