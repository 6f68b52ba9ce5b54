//! KN tableaux of type D_n in the rotated convention: columns listed right to
//! left, entries top to bottom, the optional half-width spin column rightmost.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal_core::{tensor_site, CrystalElement, Op};
use crate::error::{CrystalError, Result};
use crate::foundations::{compare, letter_rank, letter_to_string, Column, DominantWeight, Letter, LetterOrder, Partition, Weight};

/// `f_i` on a single letter of the vector crystal.
pub fn letter_f(x: Letter, i: usize, n: usize) -> Option<Letter> {
    let (i, n) = (i as i32, n as i32);
    if i < n {
        if x == i {
            Some(i + 1)
        } else if x == -(i + 1) {
            Some(-i)
        } else {
            None
        }
    } else if x == n - 1 {
        Some(-n)
    } else if x == n {
        Some(-(n - 1))
    } else {
        None
    }
}

pub fn letter_e(x: Letter, i: usize, n: usize) -> Option<Letter> {
    let (ii, nn) = (i as i32, n as i32);
    let candidates = if ii < nn { [ii, -(ii + 1)] } else { [nn - 1, nn] };
    candidates.into_iter().find(|&y| letter_f(y, i, n) == Some(x))
}

pub fn letter_weight(x: Letter, n: usize) -> Weight {
    let mut w = vec![0; n];
    w[(x.unsigned_abs() - 1) as usize] = if x > 0 { 2 } else { -2 };
    Weight(w)
}

/// A spin column: for every `k` exactly one of `k`, `k̄`, sorted in the letter order.
pub fn spin_column_from_signs(barred: &[bool]) -> Vec<Letter> {
    let n = barred.len();
    let mut col: Vec<Letter> = (1..=n as i32).map(|k| if barred[k as usize - 1] { -k } else { k }).collect();
    col.sort_by_key(|&x| letter_rank(x, n));
    col
}

fn spin_has(col: &[Letter], x: Letter) -> bool {
    col.contains(&x)
}

pub fn spin_f(col: &[Letter], i: usize, n: usize) -> Option<Vec<Letter>> {
    let ii = i as i32;
    let (from, to): ([Letter; 2], [Letter; 2]) = if i < n {
        ([ii, -(ii + 1)], [ii + 1, -ii])
    } else {
        ([ii - 1, ii], [-ii, -(ii - 1)])
    };
    if spin_has(col, from[0]) && spin_has(col, from[1]) {
        let mut out: Vec<Letter> = col.iter().map(|&x| if x == from[0] { to[0] } else if x == from[1] { to[1] } else { x }).collect();
        out.sort_by_key(|&x| letter_rank(x, n));
        Some(out)
    } else {
        None
    }
}

pub fn spin_e(col: &[Letter], i: usize, n: usize) -> Option<Vec<Letter>> {
    let ii = i as i32;
    let (from, to): ([Letter; 2], [Letter; 2]) = if i < n {
        ([ii + 1, -ii], [ii, -(ii + 1)])
    } else {
        ([-ii, -(ii - 1)], [ii - 1, ii])
    };
    if spin_has(col, from[0]) && spin_has(col, from[1]) {
        let mut out: Vec<Letter> = col.iter().map(|&x| if x == from[0] { to[0] } else if x == from[1] { to[1] } else { x }).collect();
        out.sort_by_key(|&x| letter_rank(x, n));
        Some(out)
    } else {
        None
    }
}

/// Column heights of `λ^π` right to left, excluding the spin column.
pub fn column_heights(lambda: &DominantWeight) -> Vec<usize> {
    let n = lambda.n();
    let shift = if lambda.is_integral() { 0 } else { 1 };
    let parts: Vec<usize> = (0..n)
        .map(|k| {
            let v = if k + 1 == n { lambda.doubled[k].abs() } else { lambda.doubled[k] };
            ((v - shift) / 2) as usize
        })
        .collect();
    Partition { parts }.conjugate().parts
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "KnJson", try_from = "KnJson")]
pub struct KnTableau {
    pub n: usize,
    pub lambda: DominantWeight,
    /// Right to left, each top to bottom. With `spin`, `columns[0]` is the
    /// half-width column.
    pub columns: Vec<Vec<Letter>>,
    pub spin: bool,
}

#[derive(Serialize, Deserialize)]
struct KnJson {
    n: usize,
    lambda2: Vec<i32>,
    columns: Vec<Column>,
    spin: bool,
}

impl From<KnTableau> for KnJson {
    fn from(t: KnTableau) -> Self {
        KnJson {
            n: t.n,
            lambda2: t.lambda.doubled,
            columns: t.columns.into_iter().map(Column::body_only).collect(),
            spin: t.spin,
        }
    }
}

impl TryFrom<KnJson> for KnTableau {
    type Error = CrystalError;
    fn try_from(j: KnJson) -> Result<Self> {
        let lambda = DominantWeight::new(j.lambda2)?;
        if lambda.n() != j.n {
            return Err(CrystalError::Shape(format!("n = {} but λ has {} parts", j.n, lambda.n())));
        }
        Ok(KnTableau { n: j.n, lambda, columns: j.columns.into_iter().map(|c| c.entries).collect(), spin: j.spin })
    }
}

/// One failed clause of the validity conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

/// Which clauses [`validate_kn`] evaluates.
#[derive(Debug, Clone, Copy, Default)]
pub struct KnCheck {
    pub d7: bool,
}

impl KnTableau {
    pub fn new(lambda: DominantWeight, columns: Vec<Vec<Letter>>) -> Self {
        let n = lambda.n();
        let spin = !lambda.is_integral();
        KnTableau { n, lambda, columns, spin }
    }

    /// Non-spin columns, right to left.
    pub fn ordinary(&self) -> &[Vec<Letter>] {
        if self.spin {
            &self.columns[1..]
        } else {
            &self.columns
        }
    }

    pub fn spin_column(&self) -> Option<&[Letter]> {
        if self.spin {
            Some(&self.columns[0])
        } else {
            None
        }
    }

    /// Reading word of the non-spin letters: columns right to left, top to bottom.
    pub fn letters(&self) -> Vec<Letter> {
        self.ordinary().iter().flatten().copied().collect()
    }

    fn act(&self, i: usize, op: Op) -> Option<Self> {
        let n = self.n;
        let mut stats = Vec::new();
        if let Some(sc) = self.spin_column() {
            let eps = spin_e(sc, i, n).is_some() as usize;
            let phi = spin_f(sc, i, n).is_some() as usize;
            stats.push(Some((eps, phi)));
        }
        let word = self.letters();
        for &x in &word {
            stats.push(Some((letter_e(x, i, n).is_some() as usize, letter_f(x, i, n).is_some() as usize)));
        }
        let site = tensor_site(&stats, op)?;
        let mut out = self.clone();
        let mut k = site;
        if self.spin {
            if k == 0 {
                out.columns[0] = match op {
                    Op::F => spin_f(&self.columns[0], i, n)?,
                    Op::E => spin_e(&self.columns[0], i, n)?,
                };
                return Some(out);
            }
            k -= 1;
        }
        let start = usize::from(self.spin);
        for col in out.columns[start..].iter_mut() {
            if k < col.len() {
                col[k] = match op {
                    Op::F => letter_f(col[k], i, n)?,
                    Op::E => letter_e(col[k], i, n)?,
                };
                return Some(out);
            }
            k -= col.len();
        }
        None
    }

    pub fn kn_f(&self, i: usize) -> Option<Self> {
        self.act(i, Op::F)
    }

    pub fn kn_e(&self, i: usize) -> Option<Self> {
        self.act(i, Op::E)
    }

    pub fn weight_of(&self) -> Weight {
        let mut w = vec![0; self.n];
        for &x in &self.letters() {
            w[(x.unsigned_abs() - 1) as usize] += if x > 0 { 2 } else { -2 };
        }
        if let Some(sc) = self.spin_column() {
            for &x in sc {
                w[(x.unsigned_abs() - 1) as usize] += if x > 0 { 1 } else { -1 };
            }
        }
        Weight(w)
    }

    /// Entry `T(i, j)`: row `i` from the bottom, column `j` from the right,
    /// both 1-based, counted among the non-spin columns.
    fn at(&self, i: usize, j: usize) -> Option<Letter> {
        let col = self.ordinary().get(j - 1)?;
        let h = col.len();
        if i == 0 || i > h {
            None
        } else {
            Some(col[h - i])
        }
    }
}

impl CrystalElement for KnTableau {
    fn rank(&self) -> usize {
        self.n
    }
    fn e(&self, i: usize) -> Option<Self> {
        self.kn_e(i)
    }
    fn f(&self, i: usize) -> Option<Self> {
        self.kn_f(i)
    }
    fn weight(&self) -> Weight {
        self.weight_of()
    }
    fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for KnTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| c.iter().map(|&x| letter_to_string(x)).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", cols.join("|"))
    }
}

/// Highest weight element: `[1, …, h]` per column, full columns ending in `n`
/// (or `n̄` when `λ_n < 0`), spin column `[1, …, n−1, n]` or `[1, …, n−1, n̄]`.
pub fn kn_highest(lambda: &DominantWeight) -> KnTableau {
    let n = lambda.n();
    let negative = lambda.doubled[n - 1] < 0;
    let mut columns = Vec::new();
    let full = |neg: bool| -> Vec<Letter> {
        let mut c: Vec<Letter> = (1..=n as i32).collect();
        if neg {
            c[n - 1] = -(n as i32);
        }
        c
    };
    if !lambda.is_integral() {
        columns.push(full(negative));
    }
    for h in column_heights(lambda) {
        if h == n {
            columns.push(full(negative));
        } else {
            columns.push((1..=h as i32).collect());
        }
    }
    KnTableau::new(lambda.clone(), columns)
}

fn is_n_letter(x: Letter, n: usize) -> bool {
    x.unsigned_abs() as usize == n
}

/// Evaluates the defining conditions. Returns the list of violated clauses.
pub fn validate_kn(t: &KnTableau, check: KnCheck) -> Result<Vec<Violation>> {
    let n = t.n;
    let lam = &t.lambda;
    if lam.n() != n || t.spin != !lam.is_integral() {
        return Err(CrystalError::Shape("spin flag or rank does not match λ".into()));
    }
    let heights = column_heights(lam);
    let got: Vec<usize> = t.ordinary().iter().map(Vec::len).collect();
    if got != heights || (t.spin && t.columns[0].len() != n) {
        return Err(CrystalError::Shape(format!("column heights {got:?}, expected {heights:?}")));
    }
    let mut v = Vec::new();
    macro_rules! push {
        ($clause:expr, $detail:expr) => {
            v.push(Violation { clause: $clause.into(), detail: $detail })
        };
    }

    for (c, col) in t.columns.iter().enumerate() {
        if col.iter().any(|&x| x == 0 || x.unsigned_abs() as usize > n) {
            push!("letters", format!("column {c} has letters outside [n] ∪ [n̄]"));
        }
    }
    if !v.is_empty() {
        return Ok(v);
    }

    // (1) and (2): columns strictly increase downward, n/n̄ may alternate.
    for (c, col) in t.columns.iter().enumerate() {
        let is_spin = t.spin && c == 0;
        for (k, w) in col.windows(2).enumerate() {
            match compare(w[0], w[1], n) {
                LetterOrder::Less => {}
                LetterOrder::Incomparable if !is_spin => {}
                _ => push!("(1)", format!("column {c}, rows {k},{}: {} over {}", k + 1, w[0], w[1])),
            }
        }
    }
    // (3): a spin column holds exactly one of k, k̄ for every k.
    if let Some(sc) = t.spin_column() {
        for k in 1..=n as i32 {
            if sc.contains(&k) == sc.contains(&-k) {
                push!("(3)", format!("spin column must contain exactly one of {k}, {}", letter_to_string(-k)));
            }
        }
        let barred = sc.iter().filter(|&&x| x < 0).count();
        let want_even = lam.doubled[n - 1] > 0;
        if (barred % 2 == 0) != want_even {
            push!("(3)", "spin column parity does not match the sign of λ_n".into());
        }
    }
    // (1): rows weakly increase left to right (bottom aligned).
    for c in 0..t.columns.len().saturating_sub(1) {
        let (right, left) = (&t.columns[c], &t.columns[c + 1]);
        for i in 1..=left.len().min(right.len()) {
            let (r, l) = (right[right.len() - i], left[left.len() - i]);
            if !matches!(compare(l, r, n), LetterOrder::Less | LetterOrder::Equal) {
                push!("(1)", format!("row {i} from the bottom, columns {c} and {}: {l} left of {r}", c + 1));
            }
        }
    }

    let cols = t.ordinary();
    let hts: Vec<usize> = cols.iter().map(Vec::len).collect();
    let negative = lam.doubled[n - 1] < 0;
    for j in 1..=cols.len() {
        let h = hts[j - 1];
        // (𝔡-1)
        for p in 1..=h {
            let x = t.at(p, j).unwrap();
            if x >= 0 {
                continue;
            }
            let i = -x;
            for q in p + 1..=h {
                if t.at(q, j) == Some(i) && (q - p) as i32 + i <= h as i32 {
                    push!("(d-1)", format!("column {j}: {} at row {p}, {i} at row {q}", letter_to_string(x)));
                }
            }
        }
        // (𝔡-2), (𝔡-3)
        if h == n {
            for k in 1..=h {
                let x = t.at(k, j).unwrap();
                if !is_n_letter(x, n) {
                    continue;
                }
                let want_odd = (x > 0) != negative;
                if (k % 2 == 1) != want_odd {
                    let clause = if negative { "(d-3)" } else { "(d-2)" };
                    push!(clause, format!("column {j}: {} at row {k}", letter_to_string(x)));
                }
            }
        }
    }
    for j in 1..cols.len() {
        let hj = hts[j - 1];
        let hl = hts[j];
        let col = |jj: usize, r: usize| t.at(r, jj);
        // (𝔡-4)
        for a in 1..n as i32 {
            for b in a..n as i32 {
                for p in 1..=hj {
                    if col(j, p) != Some(-a) {
                        continue;
                    }
                    for s in 1..=hl {
                        if col(j + 1, s) != Some(a) {
                            continue;
                        }
                        for q in p..=hj.max(hl) {
                            for r in q + 1..=s {
                                let first = col(j, q) == Some(-b) && col(j, r) == Some(b);
                                let second = col(j + 1, q) == Some(-b) && col(j + 1, r) == Some(b);
                                if (first || second) && (q - p) + (s - r) >= (b - a) as usize {
                                    push!("(d-4)", format!("columns {j},{}: a={a}, b={b}, p={p}, q={q}, r={r}, s={s}", j + 1));
                                }
                            }
                        }
                    }
                }
            }
        }
        // (𝔡-5) and (𝔡-7)
        for p in 1..=hj {
            let Some(x) = col(j, p) else { continue };
            if x >= 0 {
                continue;
            }
            let a = -x;
            for s in p + 1..=hl {
                if col(j + 1, s) != Some(a) {
                    continue;
                }
                let alternates = |jj: usize, q: usize| match (col(jj, q), col(jj, q + 1)) {
                    (Some(u), Some(w)) => is_n_letter(u, n) && is_n_letter(w, n) && u != w,
                    _ => false,
                };
                if (p..s).any(|q| alternates(j, q) || alternates(j + 1, q)) && s - p > n - a as usize {
                    push!("(d-5)", format!("columns {j},{}: a={a}, p={p}, s={s}", j + 1));
                }
                if check.d7 && (a as usize) < n {
                    for q in p..=s {
                        for r in q + 1..=s {
                            let hit = col(j + 1, q).is_some_and(|u| is_n_letter(u, n))
                                && col(j, r).is_some_and(|u| is_n_letter(u, n));
                            if hit && s - p >= n - a as usize {
                                push!("(d-7)", format!("columns {j},{}: a={a}, p={p}, q={q}, r={r}, s={s}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        // (𝔡-6)
        for p in 1..=hj {
            if !col(j, p).is_some_and(|u| is_n_letter(u, n)) {
                continue;
            }
            for s in p + 1..=hl {
                if col(j + 1, s).is_some_and(|u| is_n_letter(u, n)) {
                    push!("(d-6)", format!("columns {j},{}: rows {p} and {s}", j + 1));
                }
            }
        }
    }
    Ok(v)
}

pub fn is_valid_kn(t: &KnTableau) -> bool {
    validate_kn(t, KnCheck::default()).map(|v| v.is_empty()).unwrap_or(false)
}

/// All columns of height `h` satisfying the column conditions.
fn all_columns(n: usize, h: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = {
        let mut l: Vec<Letter> = (1..=n as i32).chain((1..=n as i32).map(|k| -k)).collect();
        l.sort_by_key(|&x| letter_rank(x, n));
        l
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(letters: &[Letter], n: usize, h: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for &x in letters {
            let ok = match cur.last() {
                None => true,
                Some(&y) => matches!(compare(y, x, n), LetterOrder::Less | LetterOrder::Incomparable),
            };
            if ok {
                cur.push(x);
                rec(letters, n, h, cur, out);
                cur.pop();
            }
        }
    }
    rec(&letters, n, h, &mut cur, &mut out);
    out
}

/// Every filling of `λ^π` passing [`validate_kn`], by exhaustive search.
pub fn enumerate_kn_brute_force(lambda: &DominantWeight, check: KnCheck) -> Vec<KnTableau> {
    let n = lambda.n();
    let mut choices: Vec<Vec<Vec<Letter>>> = Vec::new();
    if !lambda.is_integral() {
        let spins = (0..1u32 << n)
            .map(|m| spin_column_from_signs(&(0..n).map(|k| m >> k & 1 == 1).collect::<Vec<_>>()))
            .collect();
        choices.push(spins);
    }
    for h in column_heights(lambda) {
        choices.push(all_columns(n, h));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let columns: Vec<Vec<Letter>> = idx.iter().enumerate().map(|(c, &k)| choices[c][k].clone()).collect();
        let t = KnTableau::new(lambda.clone(), columns);
        if validate_kn(&t, check).map(|v| v.is_empty()).unwrap_or(false) {
            out.push(t);
        }
        let mut c = 0;
        loop {
            if c == idx.len() {
                return out;
            }
            idx[c] += 1;
            if idx[c] < choices[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal_core::generate_component;

    fn lam(s: &str) -> DominantWeight {
        DominantWeight::parse(s).unwrap()
    }

    #[test]
    fn letter_graph() {
        let n = 4;
        assert_eq!(letter_f(1, 1, n), Some(2));
        assert_eq!(letter_f(3, 3, n), Some(4));
        assert_eq!(letter_f(-4, 3, n), Some(-3));
        assert_eq!(letter_f(3, 4, n), Some(-4));
        assert_eq!(letter_f(4, 4, n), Some(-3));
        assert_eq!(letter_f(4, 3, n), None);
        for x in [1, 2, 3, 4, -4, -3, -2, -1] {
            for i in 1..=n {
                if let Some(y) = letter_f(x, i, n) {
                    assert_eq!(letter_e(y, i, n), Some(x));
                    let d = &letter_weight(x, n) - &letter_weight(y, n);
                    assert_eq!(d, Weight::alpha(n, i));
                }
            }
        }
    }

    #[test]
    fn box_one_generates_vector_crystal() {
        let hw = kn_highest(&lam("1,0,0,0"));
        assert_eq!(hw.columns, vec![vec![1]]);
        assert_eq!(hw.kn_f(1).unwrap().columns, vec![vec![2]]);
        let g = generate_component(hw, 100).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g.edges.len(), 8);
    }

    #[test]
    fn spin_highest() {
        let hw = kn_highest(&DominantWeight::spin_plus(4));
        assert_eq!(hw.columns, vec![vec![1, 2, 3, 4]]);
        assert_eq!(hw.weight_of(), Weight::fundamental(4, 4));
        let g = generate_component(hw, 100).unwrap();
        assert_eq!(g.len(), 8);
    }

    #[test]
    fn worked_tableaux_validate() {
        let t = KnTableau::new(lam("5/2,3/2,3/2,1/2,-1/2"), vec![vec![2, 3, -5, -4, -1], vec![4, 5, -1], vec![-5]]);
        assert_eq!(validate_kn(&t, KnCheck::default()).unwrap(), vec![]);
        let t = KnTableau::new(
            lam("4,4,4,4,4,2,0,0"),
            vec![vec![1, 7, 8, -5, -3, -2], vec![1, 4, 5, 7, 8, -4], vec![3, 5, 7, 8, -6], vec![1, 2, 6, 8, -7]],
        );
        assert_eq!(validate_kn(&t, KnCheck::default()).unwrap(), vec![]);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let t = KnTableau::new(lam("1,0,0,0"), vec![vec![1, 2]]);
        assert!(matches!(validate_kn(&t, KnCheck::default()), Err(CrystalError::Shape(_))));
    }

    #[test]
    fn highest_is_killed_by_every_e() {
        for s in ["1,0,0,0", "1,1,0,0", "1,1,1,0", "2,1,0,0", "1,1,1,-1", "2,1,1,-1", "3/2,1/2,1/2,-1/2"] {
            let hw = kn_highest(&lam(s));
            assert!(is_valid_kn(&hw), "{s}");
            for i in 1..=4 {
                assert!(hw.kn_e(i).is_none(), "{s}, e_{i}");
            }
            assert_eq!(hw.weight_of(), lam(s).weight());
        }
    }

    #[test]
    fn e_inverts_f() {
        let g = generate_component(kn_highest(&lam("2,1,1,-1")), 100_000).unwrap();
        for t in &g.nodes {
            for i in 1..=4 {
                if let Some(u) = t.kn_f(i) {
                    assert_eq!(u.kn_e(i).as_ref(), Some(t));
                    assert_eq!(&t.weight_of() - &u.weight_of(), Weight::alpha(4, i));
                }
            }
        }
    }
}
