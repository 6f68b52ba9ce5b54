//! Independent checks: the Weyl dimension formula, Knuth equivalence by two
//! unrelated algorithms, and component comparison by canonical forms.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::crystal_core::{canonical_form, CrystalElement, CrystalGraph};
use crate::foundations::{DominantWeight, Letter};

/// Weights checked by the dimension and morphism suites (`n = 4`), doubled.
pub const SMOKE_WEIGHTS: [&str; 11] = [
    "1,0,0,0",
    "1,1,0,0",
    "1,1,1,0",
    "2,0,0,0",
    "2,1,0,0",
    "1/2,1/2,1/2,1/2",
    "1/2,1/2,1/2,-1/2",
    "3/2,1/2,1/2,1/2",
    "3/2,1/2,1/2,-1/2",
    "1,1,1,-1",
    "2,1,1,-1",
];

pub fn smoke_weights() -> Vec<DominantWeight> {
    SMOKE_WEIGHTS.iter().map(|s| DominantWeight::parse(s).expect("smoke weight")).collect()
}

/// `∏_{i<j} (λ+ρ, ε_i∓ε_j) / (ρ, ε_i∓ε_j)` with `ρ = (n−1, …, 1, 0)`.
pub fn weyl_dim(lambda: &DominantWeight) -> BigInt {
    let n = lambda.n();
    let half = |x: i64| BigRational::new(BigInt::from(x), BigInt::from(2));
    let rho: Vec<i64> = (0..n).map(|i| 2 * (n - 1 - i) as i64).collect();
    let lr: Vec<i64> = (0..n).map(|i| lambda.doubled[i] as i64 + rho[i]).collect();
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for i in 0..n {
        for j in i + 1..n {
            acc *= half(lr[i] - lr[j]) / half(rho[i] - rho[j]);
            acc *= half(lr[i] + lr[j]) / half(rho[i] + rho[j]);
        }
    }
    assert!(acc.is_integer(), "Weyl product is not integral for {lambda}");
    acc.to_integer()
}

#[derive(Debug, Clone, Serialize)]
pub struct DimReport {
    pub lambda: String,
    pub predicted: String,
    pub enumerated: usize,
    pub matches: bool,
}

pub fn dim_report(lambda: &DominantWeight, enumerated: usize) -> DimReport {
    let predicted = weyl_dim(lambda);
    DimReport {
        lambda: lambda.to_string(),
        predicted: predicted.to_string(),
        enumerated,
        matches: predicted == BigInt::from(enumerated),
    }
}

/// Insertion tableau of `w` by Schensted row insertion (rows top to bottom).
pub fn row_insertion_tableau(w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut rows: Vec<Vec<Letter>> = Vec::new();
    for &x in w {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            match rows[r].iter().position(|&y| y > x) {
                Some(k) => {
                    std::mem::swap(&mut rows[r][k], &mut x);
                    r += 1;
                }
                None => {
                    rows[r].push(x);
                    break;
                }
            }
        }
    }
    rows
}

/// Rectification by jeu de taquin of the antidiagonal skew tableau whose
/// row reading word (bottom row first) is `w`.
pub fn jdt_rectification(w: &[Letter]) -> Vec<Vec<Letter>> {
    let k = w.len();
    let mut cells: BTreeMap<(usize, usize), Letter> = BTreeMap::new();
    for (p, &x) in w.iter().enumerate() {
        cells.insert((k - 1 - p, p), x);
    }
    // Inner shape: row r has k-1-r empty cells on its left.
    let mut inner: Vec<usize> = (0..k).map(|r| k - 1 - r).collect();
    // An inner corner: the last row r with inner[r] > 0 and inner[r+1] < inner[r].
    while let Some(r) = (0..k).rev().find(|&r| inner[r] > 0 && (r + 1 == k || inner[r + 1] < inner[r])) {
        let (mut hr, mut hc) = (r, inner[r] - 1);
        inner[r] -= 1;
        loop {
            let right = cells.get(&(hr, hc + 1)).copied();
            let below = cells.get(&(hr + 1, hc)).copied();
            let next = match (right, below) {
                (None, None) => break,
                (Some(_), None) => (hr, hc + 1),
                (None, Some(_)) => (hr + 1, hc),
                (Some(a), Some(b)) => {
                    if b <= a {
                        (hr + 1, hc)
                    } else {
                        (hr, hc + 1)
                    }
                }
            };
            let v = cells.remove(&next).unwrap();
            cells.insert((hr, hc), v);
            (hr, hc) = next;
        }
    }
    let mut rows: Vec<Vec<Letter>> = Vec::new();
    for ((r, _), x) in cells {
        if rows.len() <= r {
            rows.resize(r + 1, Vec::new());
        }
        rows[r].push(x);
    }
    rows.retain(|r| !r.is_empty());
    rows
}

/// Equal rectifications; both internal algorithms must agree or this panics.
pub fn knuth_equivalent(w1: &[Letter], w2: &[Letter]) -> bool {
    let (p1, p2) = (row_insertion_tableau(w1), row_insertion_tableau(w2));
    let (q1, q2) = (jdt_rectification(w1), jdt_rectification(w2));
    assert_eq!(p1, q1, "rectification algorithms disagree on {w1:?}");
    assert_eq!(p2, q2, "rectification algorithms disagree on {w2:?}");
    p1 == p2
}

pub fn compare_components<A: CrystalElement, B: CrystalElement>(g1: &CrystalGraph<A>, g2: &CrystalGraph<B>) -> bool {
    g1.len() == g2.len() && canonical_form(g1) == canonical_form(g2)
}

/// Weight multiplicities of a component, keyed by doubled weight.
pub fn weight_multiset<E: CrystalElement>(g: &CrystalGraph<E>) -> HashMap<Vec<i32>, usize> {
    let mut m = HashMap::new();
    for x in &g.nodes {
        *m.entry(x.weight().0).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal_core::{generate_component, OnePoint};
    use crate::foundations::Weight;
    use proptest::prelude::*;

    fn dim(s: &str) -> i64 {
        weyl_dim(&DominantWeight::parse(s).unwrap()).try_into().unwrap()
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(dim("1,0,0,0"), 8);
        assert_eq!(dim("1,1,0,0"), 28);
        assert_eq!(dim("1/2,1/2,1/2,1/2"), 8);
        assert_eq!(dim("1/2,1/2,1/2,-1/2"), 8);
        assert_eq!(dim("0,0,0,0"), 1);
        assert_eq!(dim("1,1,1,1"), 35);
        assert_eq!(dim("1,0,0,0,0"), 10);
    }

    #[test]
    fn knuth_examples() {
        assert!(knuth_equivalent(&[-2, -1, -3], &[-2, -1, -3]));
        // 2̄ 1̄ 3̄ vs 2̄ 3̄ 1̄: x = 3̄ < y = 2̄ ≤ z = 1̄ gives y z x ≡ y x z.
        assert!(knuth_equivalent(&[-2, -3, -1], &[-2, -1, -3]));
        assert!(!knuth_equivalent(&[-1, -2], &[-2, -1]));
    }

    #[test]
    fn components_compare() {
        let g = generate_component(OnePoint(Weight::zero(4)), 10).unwrap();
        assert!(compare_components(&g, &g));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn rectifications_agree(w in proptest::collection::vec(-5i32..=-1, 0..10)) {
            prop_assert_eq!(row_insertion_tableau(&w), jdt_rectification(&w));
        }
    }
}
