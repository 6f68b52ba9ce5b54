//! Verification suites shared by the command line and the acceptance tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::crystal_core::{generate_component, verify_morphism, CrystalElement, CrystalGraph, MorphismOptions};
use crate::error::Result;
use crate::foundations::{DominantWeight, Letter, Weight};
use crate::kn_model::{kn_highest, KnTableau};
use crate::kn_spinor_iso::psi_lambda;
use crate::lusztig::{enumerate_body_tableaux, rsk_burge, rsk_burge_inverse, LusztigElement};
use crate::oracle::{dim_report, jdt_rectification, knuth_equivalent, row_insertion_tableau, weyl_dim, DimReport};
use crate::separation::{chi_lambda, expected_tail_columns, separate_traced, signatures_agree};
use crate::spinor_model::{highest_element, triangle_lt, SpinorTuple};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub violations: Vec<String>,
    pub details: serde_json::Value,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), checks: 0, violations: Vec::new(), details: serde_json::Value::Null }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.violations.len() < 50 {
            self.violations.push(msg());
        }
    }
}

/// Weights used for rank `n`: the fixed smoke list when `n = 4`, otherwise
/// the first two fundamental weights, `2ε_1` and both spin weights.
pub fn weights_for(n: usize) -> Vec<DominantWeight> {
    if n == 4 {
        return crate::oracle::smoke_weights();
    }
    let mut out = Vec::new();
    for d in [vec![2], vec![2, 2], vec![4]] {
        let mut v = vec![0; n];
        v[..d.len()].copy_from_slice(&d);
        out.push(DominantWeight::new(v).expect("dominant"));
    }
    out.push(DominantWeight::spin_plus(n));
    out.push(DominantWeight::spin_minus(n));
    out
}

pub struct Components {
    pub lambda: DominantWeight,
    pub kn: CrystalGraph<KnTableau>,
    pub spinor: CrystalGraph<SpinorTuple>,
}

pub fn components(weights: &[DominantWeight], budget: usize) -> Result<Vec<Components>> {
    weights
        .iter()
        .map(|lam| {
            Ok(Components {
                lambda: lam.clone(),
                kn: generate_component(kn_highest(lam), budget)?,
                spinor: generate_component(highest_element(lam), budget)?,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct DimRow {
    #[serde(flatten)]
    report: DimReport,
    spinor: usize,
}

pub fn dimension_suite(comps: &[Components]) -> SuiteReport {
    let mut rep = SuiteReport::new("dimension");
    let mut rows = Vec::new();
    for c in comps {
        let r = dim_report(&c.lambda, c.kn.len());
        let ok = r.matches && num_bigint::BigInt::from(c.spinor.len()) == weyl_dim(&c.lambda);
        rep.check(ok, || format!("{}: KN {} spinor {} Weyl {}", c.lambda, c.kn.len(), c.spinor.len(), r.predicted));
        rows.push(DimRow { report: r, spinor: c.spinor.len() });
    }
    rep.details = serde_json::to_value(rows).expect("rows serialize");
    rep
}

pub fn morphism_suite(comps: &[Components]) -> SuiteReport {
    let mut rep = SuiteReport::new("morphism");
    let mut rows = Vec::new();
    for c in comps {
        let n = c.lambda.n();
        let embedding = MorphismOptions { strict_f: false, shift: Weight::zero(n) };
        let psi = verify_morphism(&c.kn, |t| psi_lambda(t).ok(), &MorphismOptions::isomorphism(n));
        let chi = verify_morphism(&c.spinor, |t| chi_lambda(t).ok(), &embedding);
        let xi = verify_morphism(&c.kn, |t| LusztigElement::from_kn(t).ok(), &embedding);
        for (name, r) in [("psi", &psi), ("chi", &chi), ("xi", &xi)] {
            rep.checks += r.checks;
            for f in &r.failures {
                rep.violations.push(format!("{name} {}: {f}", c.lambda));
            }
        }
        rows.push(serde_json::json!({
            "lambda": c.lambda.to_string(),
            "psi": psi.passed(), "chi": chi.passed(), "xi": xi.passed(),
        }));
    }
    rep.details = serde_json::Value::Array(rows);
    rep
}

/// Word reading used for Knuth classes: columns left to right, each bottom to top.
fn plactic_word(cols_right_to_left: &[crate::foundations::Column]) -> Vec<Letter> {
    let mut w = crate::foundations::word(cols_right_to_left);
    w.reverse();
    w
}

pub fn knuth_suite(comps: &[Components], seed: u64, pairs: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("knuth");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        for _ in 0..2 {
            let len = rng.gen_range(0..=10);
            let w: Vec<Letter> = (0..len).map(|_| -rng.gen_range(1..=5)).collect();
            rep.check(row_insertion_tableau(&w) == jdt_rectification(&w), || format!("rectifications differ on {w:?}"));
        }
    }
    for c in comps {
        for t in &c.spinor.nodes {
            let ok = chi_lambda(t).is_ok_and(|v| {
                let mut before = t.flatten();
                before.reverse();
                knuth_equivalent(&plactic_word(&before), &plactic_word(&v.columns))
            });
            rep.check(ok, || format!("{}: word class changed for {t}", c.lambda));
        }
    }
    rep
}

pub fn rsk_suite(n: usize, max_size: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("rsk");
    let all = enumerate_body_tableaux(n, max_size);
    for t in &all {
        let ok = rsk_burge(t).is_ok_and(|(w, d)| {
            let mut letters: Vec<Letter> = t.word();
            let mut from_biword: Vec<Letter> = w.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            letters.sort();
            from_biword.sort();
            letters == from_biword && rsk_burge_inverse(n, d.upper()).is_ok_and(|u| &u == t)
        });
        rep.check(ok, || format!("round trip or letters fail on {:?}", t.columns));
    }
    rep.details = serde_json::json!({ "tableaux": all.len() });
    rep
}

pub fn signatures_suite(comps: &[Components]) -> SuiteReport {
    let mut rep = SuiteReport::new("signatures");
    for c in comps {
        let n = c.lambda.n();
        for t in &c.spinor.nodes {
            match chi_lambda(t) {
                Ok(v) => {
                    rep.check(signatures_agree(t, &v), || format!("{}: σ/τ disagree at {t}", c.lambda));
                    let back = v.f(n).and_then(|w| w.e(n));
                    rep.check(back.as_ref() == Some(&v), || format!("{}: e_n f_n ≠ id at {v}", c.lambda));
                }
                Err(e) => rep.check(false, || format!("{}: {e}", c.lambda)),
            }
        }
    }
    rep
}

/// Uniform draws of `(λ, element)` pairs across the components.
fn sample(comps: &[Components], seed: u64, count: usize) -> Vec<(&Components, &SpinorTuple)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c = comps.choose(&mut rng).expect("nonempty weight list");
            (c, c.spinor.nodes.choose(&mut rng).expect("nonempty component"))
        })
        .collect()
}

pub fn separation_suite(comps: &[Components], seed: u64, count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("separation");
    let results: Vec<(String, Vec<(bool, &'static str)>)> = sample(comps, seed, count)
        .par_iter()
        .map(|(c, t)| {
            let label = format!("{} {t}", c.lambda);
            let Ok(v) = chi_lambda(t) else {
                return (label, vec![(false, "separation failed")]);
            };
            let mut before = t.flatten();
            before.reverse();
            let (tail, _, shape_ok) = v.shape_report();
            let checks = vec![
                (knuth_equivalent(&plactic_word(&before), &plactic_word(&v.columns)), "Knuth class"),
                (shape_ok, "body shape"),
                (tail == expected_tail_columns(t), "tail shape"),
                (signatures_agree(t, &v), "signature"),
            ];
            (label, checks)
        })
        .collect();
    for (label, checks) in results {
        for (ok, what) in checks {
            rep.check(ok, || format!("{what}: {label}"));
        }
    }
    rep
}

pub fn sliding_suite(comps: &[Components]) -> SuiteReport {
    let mut rep = SuiteReport::new("sliding");
    let mut pairs = 0;
    for c in comps {
        let n = c.lambda.n();
        for t in &c.spinor.nodes {
            match separate_traced(t) {
                Ok(s) => {
                    for st in &s.steps {
                        rep.check(st.semistandard, || format!("{}: quadruple at j={} not semistandard in {t}", c.lambda, st.j));
                    }
                }
                Err(e) => rep.check(false, || format!("{}: {e} on {t}", c.lambda)),
            }
            for k in 1..n {
                let Some(s) = t.e(k) else { continue };
                for (w, v) in t.factors.windows(2).zip(s.factors.windows(2)) {
                    if let (Ok(a), Ok(b)) = (triangle_lt(&w[0], &w[1]), triangle_lt(&v[0], &v[1])) {
                        pairs += 1;
                        rep.check(a == b, || format!("{}: ◁ changes under e_{k} at {t}", c.lambda));
                    }
                }
            }
        }
    }
    rep.details = serde_json::json!({ "triangle_pairs": pairs });
    rep
}
