//! Acceptance criteria 1–8, one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use crystald_core::crystal_core::{reduce_signature, signature_to_string};
use crystald_core::foundations::{Column, DominantWeight, Letter};
use crystald_core::kn_model::KnTableau;
use crystald_core::kn_spinor_iso::psi_lambda;
use crystald_core::lusztig::xi_lambda_traced;
use crystald_core::separation::separate;
use crystald_core::spinor_model::{Factor, SpinorTuple};
use crystald_core::verify::{self, SuiteReport};

fn b(v: &[i32]) -> Vec<Letter> {
    v.iter().map(|&x| -x).collect()
}

struct Outcome {
    ok: bool,
    note: String,
}

fn check(failures: &mut Vec<String>, ok: bool, what: &str) {
    if !ok {
        failures.push(what.to_string());
    }
}

fn outcome(failures: Vec<String>, note: String) -> Outcome {
    let ok = failures.is_empty();
    Outcome { ok, note: if ok { note } else { failures.join("; ") } }
}

fn suite(reports: &[SuiteReport]) -> Outcome {
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    let failures: Vec<String> = reports.iter().flat_map(|r| r.violations.iter().take(3).cloned()).collect();
    outcome(failures, format!("{checks} checks"))
}

fn rows_of_tail(t: &crystald_core::foundations::ProfileTableau) -> Vec<Vec<Letter>> {
    let depth = t.columns.iter().map(Column::height).max().unwrap_or(0);
    (0..depth).map(|r| t.columns.iter().rev().filter_map(|c| c.entries.get(r).copied()).collect()).collect()
}

fn criterion_1() -> Outcome {
    let lambda = DominantWeight::parse("5/2,3/2,3/2,1/2,-1/2").unwrap();
    let t = KnTableau::new(lambda.clone(), vec![vec![2, 3, -5, -4, -1], vec![4, 5, -1], vec![-5]]);
    let mut f = Vec::new();
    let s = match psi_lambda(&t) {
        Ok(s) => s,
        Err(e) => return outcome(vec![format!("Ψ failed: {e}")], String::new()),
    };
    let expected = SpinorTuple::new(
        lambda,
        vec![
            Factor::pair(4, b(&[5, 3, 2, 1]), b(&[5, 4])),
            Factor::pair(2, b(&[2, 1]), b(&[3, 1])),
            Factor::spin(b(&[5, 4, 1])),
        ],
    );
    check(&mut f, s == expected, "Ψ image");
    let v = separate(&s).unwrap();
    let body: Vec<Vec<Letter>> = v.body().columns.iter().map(|c| c.entries.clone()).collect();
    check(&mut f, body == vec![b(&[5, 4, 3, 1]), b(&[5, 1])], "body");
    check(&mut f, rows_of_tail(&v.tail()) == vec![b(&[5, 4, 2]), b(&[3, 1]), b(&[2]), b(&[1])], "tail");
    let sigma = s.n_signature();
    check(&mut f, signature_to_string(&sigma) == "-++-.", "σ");
    check(&mut f, signature_to_string(&reduce_signature(&sigma)) == "-+...", "σ^red");
    let tau = reduce_signature(&v.tau());
    check(&mut f, signature_to_string(&tau[..5]) == "-.+..", "σ̄");
    match xi_lambda_traced(&t) {
        Ok(tr) => {
            check(&mut f, tr.biword.to_string() == "(5b 5b 3b / 4b 1b 1b)", "biword");
            check(&mut f, tr.datum.c == [1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1], "Ξ");
        }
        Err(e) => f.push(format!("Ξ failed: {e}")),
    }
    outcome(f, "Ψ, body, tail, σ, σ̄, biword and Ξ match".into())
}

fn criterion_2() -> Outcome {
    let lambda = DominantWeight::new(vec![8, 8, 8, 8, 8, 4, 0, 0]).unwrap();
    let t = KnTableau::new(
        lambda.clone(),
        vec![
            vec![1, 7, 8, -5, -3, -2],
            vec![1, 4, 5, 7, 8, -4],
            vec![3, 5, 7, 8, -6],
            vec![1, 2, 6, 8, -7],
        ],
    );
    let expected = SpinorTuple::new(
        lambda,
        vec![
            Factor::pair(3, b(&[7, 4, 3]), b(&[7, 5])),
            Factor::pair(3, b(&[6, 2, 1]), b(&[6, 4])),
            Factor::pair(2, b(&[4, 2]), b(&[6, 3])),
            Factor::pair(2, b(&[5, 4, 3, 2]), b(&[6, 5, 3, 2])),
        ],
    );
    let mut f = Vec::new();
    match psi_lambda(&t) {
        Ok(s) => {
            for (k, (x, y)) in s.factors.iter().zip(&expected.factors).enumerate() {
                check(&mut f, x == y, &format!("factor {k}: {x} vs {y}"));
            }
            check(&mut f, s.factors.len() == 4, "factor count");
        }
        Err(e) => f.push(format!("Ψ failed: {e}")),
    }
    outcome(f, "four factors match".into())
}

fn criterion_3() -> Outcome {
    let lambda = DominantWeight::new(vec![8, 8, 8, 8, 8, 4, 0, 0]).unwrap();
    let t = SpinorTuple::new(
        lambda,
        vec![
            Factor::pair(3, b(&[7, 4, 3]), b(&[7, 5])),
            Factor::pair(3, b(&[6, 2, 1]), b(&[6, 4])),
            Factor::pair(2, b(&[4, 2]), b(&[6, 3])),
            Factor::pair(2, b(&[5, 4, 3, 2]), b(&[6, 5, 3, 2])),
        ],
    );
    let mut f = Vec::new();
    let v = match separate(&t) {
        Ok(v) => v,
        Err(e) => return outcome(vec![format!("separation failed: {e}")], String::new()),
    };
    let profile: Vec<(Vec<Letter>, Vec<Letter>)> =
        v.columns.iter().rev().map(|c| (c.body().to_vec(), c.tail_part().to_vec())).collect();
    let expected: Vec<(Vec<Letter>, Vec<Letter>)> = vec![
        (b(&[]), b(&[7, 4, 3])),
        (b(&[]), b(&[7, 2, 1])),
        (b(&[]), b(&[5, 2])),
        (b(&[6, 4]), b(&[3, 2])),
        (b(&[6, 4]), b(&[])),
        (b(&[6, 4]), b(&[])),
        (b(&[5, 3]), b(&[])),
        (b(&[6, 5, 3, 2]), b(&[])),
        (b(&[]), b(&[])),
    ];
    check(&mut f, profile == expected, "final profile");
    check(&mut f, rows_of_tail(&v.tail()) == vec![b(&[7, 7, 5, 3]), b(&[4, 2, 2, 2]), b(&[3, 1])], "tail rows");
    let mu: Vec<usize> = rows_of_tail(&v.tail()).iter().map(Vec::len).collect();
    check(&mut f, mu == [4, 4, 2], "μ");
    check(&mut f, v.body().size() == 12, "12 body boxes");
    outcome(f, "profile, μ = (4,4,2) and 12-box body match".into())
}

fn run(k: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let ok = out.ok && took <= limit;
    let timing = if took <= limit { String::new() } else { format!(" (over the {limit:?} limit)") };
    println!(
        "criterion {k}: {} in {:.3}s{timing}: {}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        out.note
    );
    ok
}

fn main() -> ExitCode {
    let budget = 1_000_000;
    let smoke = verify::weights_for(4);
    let mut all = true;
    all &= run(1, Duration::from_secs(1), criterion_1);
    all &= run(2, Duration::from_secs(1), criterion_2);
    all &= run(3, Duration::from_secs(1), criterion_3);
    let mut comps = Vec::new();
    all &= run(4, Duration::from_secs(300), || match verify::components(&smoke, budget) {
        Ok(c) => {
            comps = c;
            suite(&[verify::dimension_suite(&comps)])
        }
        Err(e) => outcome(vec![format!("component generation failed: {e}")], String::new()),
    });
    all &= run(5, Duration::from_secs(300), || suite(&[verify::morphism_suite(&comps)]));
    all &= run(6, Duration::from_secs(120), || suite(&[verify::separation_suite(&comps, 2024, 500)]));
    all &= run(7, Duration::from_secs(120), || suite(&[verify::rsk_suite(4, 8)]));
    all &= run(8, Duration::from_secs(300), || suite(&[verify::sliding_suite(&comps)]));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
