//! Separation of a spinor tuple into a body above L and a tail below L by
//! sliding tails to the left, and the crystal `V_λ` that receives the result.

use std::fmt;

use serde::Serialize;

use crate::crystal_core::{reduce_signature, tensor_site, CrystalElement, Op, Sign};
use crate::error::{CrystalError, Result};
use crate::foundations::{word, Column, Letter, ProfileTableau, Weight};
use crate::kn_model::{letter_e, letter_f};
use crate::spinor_model::{pair_e, pair_f, triangle_lt, Factor, FactorKind, SpinorTuple};

/// `X_j` on a flattened tuple given left to right: acts on `(U_{j+1}, U_j)`.
pub fn bicrystal(cols: &[Column], j: usize, op: Op) -> Option<Vec<Column>> {
    let len = cols.len();
    if j + 1 >= len {
        return None;
    }
    let (li, ri) = (len - 2 - j, len - 1 - j);
    let (l, r) = match op {
        Op::F => pair_f(&cols[li].entries, &cols[ri].entries)?,
        Op::E => pair_e(&cols[li].entries, &cols[ri].entries)?,
    };
    let mut out = cols.to_vec();
    out[li].entries = l;
    out[ri].entries = r;
    Some(out)
}

fn fx(b: &[Letter], c: &[Letter]) -> Result<(Vec<Letter>, Vec<Letter>)> {
    pair_f(b, c).ok_or_else(|| CrystalError::SlideBlocked(format!("F vanished on {b:?} | {c:?}")))
}

fn ex(b: &[Letter], c: &[Letter]) -> Result<(Vec<Letter>, Vec<Letter>)> {
    pair_e(b, c).ok_or_else(|| CrystalError::SlideBlocked(format!("E vanished on {b:?} | {c:?}")))
}

/// `S_j` on the quadruple `(A, B, C, D)`: returns the new `(B, C)` with their
/// tails moved (`B` takes `a`, `C` becomes tail-free).
pub fn s_op(b: &Column, c: &Column, d: &Column, triangle: bool) -> Result<(Column, Column)> {
    let a = c.tail;
    if a == 0 {
        return Ok((b.clone(), c.clone()));
    }
    let (mut bb, mut cc) = (b.entries.clone(), c.entries.clone());
    if triangle {
        for _ in 0..a {
            (bb, cc) = fx(&bb, &cc)?;
        }
    } else {
        let (c1, d1) = fx(&cc, &d.entries)?;
        cc = c1;
        for _ in 0..a - 1 {
            (bb, cc) = fx(&bb, &cc)?;
        }
        let (c3, d2) = ex(&cc, &d1)?;
        if d2 != d.entries {
            return Err(CrystalError::SlideBlocked(format!("D changed: {:?} -> {d2:?}", d.entries)));
        }
        (bb, cc) = ex(&bb, &c3)?;
    }
    Ok((Column::new(bb, a), Column::new(cc, 0)))
}

/// One application of some `S_j` during separation.
#[derive(Debug, Clone, Serialize)]
pub struct SlideStep {
    pub round: usize,
    /// Index `j` of `C = U_j` in the tuple of the current round.
    pub j: usize,
    pub triangle: bool,
    pub a: usize,
    /// The quadruple is semistandard along L afterwards.
    pub semistandard: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Separation {
    pub element: VermaElement,
    pub steps: Vec<SlideStep>,
    /// Columns left to right after each round.
    pub rounds: Vec<Vec<Column>>,
}

fn quadruple_semistandard(n: usize, cols: &[&Column]) -> bool {
    let mut v: Vec<Column> = cols.iter().map(|c| (*c).clone()).collect();
    v.reverse();
    ProfileTableau::new(n, v).is_semistandard_along_l()
}

/// `H_{(1^n)}`, the padding column for slides on a spin column.
fn padding(n: usize) -> Column {
    Column::body_only((1..=n as i32).rev().map(|i| -i).collect())
}

pub fn separate(t: &SpinorTuple) -> Result<VermaElement> {
    Ok(separate_traced(t)?.element)
}

/// Counts `(p, k)`: pairs `T(a)` and tail-one columns of the spin block.
fn round_counts(t: &SpinorTuple) -> (usize, usize) {
    let p = t.factors.iter().filter(|f| matches!(f.kind, FactorKind::T(_))).count();
    let k = t
        .factors
        .iter()
        .map(|f| match f.kind {
            FactorKind::TBar => 2,
            FactorKind::SpMinus => 1,
            _ => 0,
        })
        .sum();
    (p, k)
}

fn next_counts(p: usize, k: usize) -> (usize, usize) {
    if k >= 1 {
        (p, k - 1)
    } else {
        (p - 1, k)
    }
}

/// One round on `cols`, whose first column is the leftmost one still in play:
/// every quadruple leftmost first, then the slide onto the spin column.
fn one_round(cols: &mut [Column], p: usize, k: usize, n: usize, round: usize, steps: &mut Vec<SlideStep>) -> Result<()> {
    let pair = |cols: &[Column], i: usize| Factor {
        kind: FactorKind::T(cols[2 * i].tail),
        left: cols[2 * i].clone(),
        right: cols[2 * i + 1].clone(),
    };
    let mut tri = Vec::with_capacity(p);
    for i in 0..p - 1 {
        tri.push(triangle_lt(&pair(cols, i), &pair(cols, i + 1))?);
    }
    if k >= 1 {
        let s = Factor { kind: FactorKind::SpMinus, left: cols[2 * p].clone(), right: Column::default() };
        tri.push(triangle_lt(&pair(cols, p - 1), &s)?);
    }
    let len = cols.len();
    let pad = padding(n);
    for (i, &triangle) in tri.iter().enumerate() {
        let x = 2 * i;
        let d = if i + 1 == p { pad.clone() } else { cols[x + 3].clone() };
        let a = cols[x + 2].tail;
        let (b2, c2) = s_op(&cols[x + 1], &cols[x + 2], &d, triangle)?;
        cols[x + 1] = b2;
        cols[x + 2] = c2;
        let semistandard = quadruple_semistandard(n, &[&cols[x], &cols[x + 1], &cols[x + 2], &d]);
        steps.push(SlideStep { round, j: len - 3 - x, triangle, a, semistandard });
    }
    Ok(())
}

fn finish(t: &SpinorTuple, mut columns: Vec<Column>) -> VermaElement {
    columns.reverse();
    VermaElement::new(t.n, columns, !t.has_spin(), t.factors.iter().map(|f| f.kind.weight_units()).sum())
}

/// Separation with a record of every slide.
pub fn separate_traced(t: &SpinorTuple) -> Result<Separation> {
    t.validate()?;
    let n = t.n;
    let mut cols = t.flatten();
    let (mut p, mut k) = round_counts(t);
    let mut steps = Vec::new();
    let mut rounds = Vec::new();
    let mut lo = 0;
    while p >= 1 && n >= 4 {
        one_round(&mut cols[lo..], p, k, n, lo, &mut steps)?;
        rounds.push(cols.clone());
        (p, k) = next_counts(p, k);
        lo += 1;
    }
    Ok(Separation { element: finish(t, cols), steps, rounds })
}

/// Reference form of [`separate`]: one round, then recurse on the tuple with
/// its leftmost column detached.
pub fn separate_recursive(t: &SpinorTuple) -> Result<VermaElement> {
    fn go(cols: &mut [Column], p: usize, k: usize, n: usize, depth: usize) -> Result<()> {
        if p == 0 || n < 4 {
            return Ok(());
        }
        one_round(cols, p, k, n, depth, &mut Vec::new())?;
        let (p2, k2) = next_counts(p, k);
        go(&mut cols[1..], p2, k2, n, depth + 1)
    }
    t.validate()?;
    let mut cols = t.flatten();
    let (p, k) = round_counts(t);
    go(&mut cols, p, k, t.n, 0)?;
    Ok(finish(t, cols))
}

/// Expected tail shape `μ` (as column heights, left to right).
pub fn expected_tail_columns(t: &SpinorTuple) -> Vec<usize> {
    let mut out: Vec<usize> = t
        .factors
        .iter()
        .filter_map(|f| match f.kind {
            FactorKind::T(a) if a > 0 => Some(a),
            _ => None,
        })
        .collect();
    let ones = t.factors.iter().map(|f| match f.kind {
        FactorKind::TBar => 2,
        FactorKind::SpMinus => 1,
        _ => 0,
    });
    out.extend(std::iter::repeat_n(1, ones.sum()));
    out
}

impl FactorKind {
    /// Multiple of `ω_n` carried by a factor: 2 for pairs, 1 for spin columns.
    pub fn weight_units(self) -> usize {
        if self.is_spin() {
            1
        } else {
            2
        }
    }
}

/// An element of `V_λ ⊗ t_{rω_n}` kept as columns on L, index 0 rightmost.
/// When `placeholder` is set, column 0 is the frozen empty slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VermaElement {
    pub n: usize,
    pub columns: Vec<Column>,
    pub placeholder: bool,
    pub r: usize,
}

#[derive(Serialize)]
struct VermaJson {
    body: ProfileTableau,
    tail: ProfileTableau,
    r: usize,
}

impl Serialize for VermaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VermaJson { body: self.body(), tail: self.tail(), r: self.r }.serialize(s)
    }
}

fn n_sign(col: &Column, n: usize) -> Sign {
    let nn = n as i32;
    let e = &col.entries;
    if e.len() >= 2 && e[0] == -nn && e[1] == -(nn - 1) {
        Sign::Minus
    } else if e.first().is_none_or(|&x| x > -(nn - 1)) {
        Sign::Plus
    } else {
        Sign::Dot
    }
}

impl VermaElement {
    pub fn new(n: usize, columns: Vec<Column>, placeholder: bool, r: usize) -> Self {
        let mut v = VermaElement { n, columns, placeholder, r };
        v.trim();
        v
    }

    fn trim(&mut self) {
        while self.columns.len() > 1 && self.columns.last().is_some_and(|c| c.height() == 0) {
            self.columns.pop();
        }
    }

    /// Body parts above L, nonempty ones, right to left.
    pub fn body(&self) -> ProfileTableau {
        let cols = self
            .columns
            .iter()
            .map(|c| Column::body_only(c.body().to_vec()))
            .filter(|c| c.height() > 0)
            .collect();
        ProfileTableau::new(self.n, cols)
    }

    /// Tail parts below L, nonempty ones, right to left.
    pub fn tail(&self) -> ProfileTableau {
        let cols = self
            .columns
            .iter()
            .map(|c| Column::new(c.tail_part().to_vec(), c.tail))
            .filter(|c| c.height() > 0)
            .collect();
        ProfileTableau::new(self.n, cols)
    }

    /// Rows of the tail, top row first, each read left to right.
    pub fn tail_rows(&self) -> Vec<Vec<Letter>> {
        let t = self.tail();
        let depth = t.columns.iter().map(Column::height).max().unwrap_or(0);
        (0..depth as i32)
            .map(|row| t.columns.iter().rev().filter_map(|c| c.at_row(row)).collect())
            .collect()
    }

    /// Reading word of the glued columns, right to left, each top to bottom.
    pub fn word(&self) -> Vec<Letter> {
        word(&self.columns)
    }

    /// `τ` over the stored columns; further columns are all `+`.
    pub fn tau(&self) -> Vec<Sign> {
        self.columns
            .iter()
            .enumerate()
            .map(|(k, c)| if k == 0 && self.placeholder { Sign::Dot } else { n_sign(c, self.n) })
            .collect()
    }

    /// Cells `(column, entry)` in the order of the word of body ⊗ tail: the
    /// body reading word, then the tail reading word.
    fn tensor_cells(&self) -> Vec<(usize, usize)> {
        let body = self.columns.iter().enumerate().flat_map(|(c, col)| (0..col.body().len()).map(move |p| (c, p)));
        let tail = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| (col.body().len()..col.entries.len()).map(move |p| (c, p)));
        body.chain(tail).collect()
    }

    /// `τ` read from the body parts only: the signature of `V` in `V ⊗ S_μ`,
    /// where `S_μ` is inert for `i = n`.
    fn body_tau(&self) -> Vec<Sign> {
        self.columns
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k == 0 && self.placeholder {
                    Sign::Dot
                } else {
                    n_sign(&Column::body_only(c.body().to_vec()), self.n)
                }
            })
            .collect()
    }

    /// The body occupies consecutive slots from the first free one, with even
    /// heights weakly increasing to the right, and is semistandard.
    pub fn body_ok(&self) -> bool {
        let start = usize::from(self.placeholder);
        let heights: Vec<usize> = self.columns.iter().skip(start).map(|c| c.body().len()).collect();
        let len = heights.iter().take_while(|&&h| h > 0).count();
        heights[len..].iter().all(|&h| h == 0)
            && heights.iter().all(|h| h % 2 == 0)
            && heights[..len].windows(2).all(|w| w[0] >= w[1])
            && self.body().is_semistandard_along_l()
    }

    /// Tail heights left to right; body heights are even and weakly increase
    /// to the right; the glued profile is semistandard along L.
    pub fn shape_report(&self) -> (Vec<usize>, Vec<usize>, bool) {
        let tail: Vec<usize> = self.tail().columns.iter().rev().map(Column::height).collect();
        let body: Vec<usize> = self.body().columns.iter().rev().map(Column::height).collect();
        let ok = body.iter().all(|h| h % 2 == 0)
            && body.windows(2).all(|w| w[0] <= w[1])
            && tail.windows(2).all(|w| w[0] >= w[1])
            && ProfileTableau::new(self.n, self.columns.clone()).is_semistandard_along_l()
            && self.body().is_semistandard_along_l();
        (tail, body, ok)
    }

    fn act(&self, i: usize, op: Op) -> Option<Self> {
        let n = self.n;
        let mut out = self.clone();
        if i < n {
            let cells = self.tensor_cells();
            let stats: Vec<_> = cells
                .iter()
                .map(|&(c, p)| {
                    let x = self.columns[c].entries[p];
                    Some((letter_e(x, i, n).is_some() as usize, letter_f(x, i, n).is_some() as usize))
                })
                .collect();
            let (c, p) = cells[tensor_site(&stats, op)?];
            let x = &mut out.columns[c].entries[p];
            *x = match op {
                Op::F => letter_f(*x, i, n)?,
                Op::E => letter_e(*x, i, n)?,
            };
            return Some(out);
        }
        let mut signs = self.body_tau();
        signs.push(Sign::Plus);
        let stats: Vec<_> = signs
            .iter()
            .map(|s| match s {
                Sign::Plus => Some((0, 1)),
                Sign::Minus => Some((1, 0)),
                Sign::Dot => Some((0, 0)),
            })
            .collect();
        let site = tensor_site(&stats, op)?;
        if site >= out.columns.len() {
            out.columns.resize(site + 1, Column::default());
        }
        let nn = n as i32;
        let col = &mut out.columns[site];
        match op {
            Op::F => {
                col.entries.splice(0..0, [-nn, -(nn - 1)]);
            }
            Op::E => {
                col.entries.drain(0..2);
            }
        }
        out.trim();
        debug_assert!(out.body_ok(), "body left the δ^π shapes after {op:?}_n: {self} -> {out}");
        Some(out)
    }

    pub fn verma_f(&self, i: usize) -> Option<Self> {
        self.act(i, Op::F)
    }

    pub fn verma_e(&self, i: usize) -> Option<Self> {
        self.act(i, Op::E)
    }

    pub fn weight_of(&self) -> Weight {
        let mut w = vec![self.r as i32; self.n];
        for &x in &self.word() {
            w[(-x - 1) as usize] -= 2;
        }
        Weight(w)
    }
}

impl CrystalElement for VermaElement {
    fn rank(&self) -> usize {
        self.n
    }
    fn e(&self, i: usize) -> Option<Self> {
        self.verma_e(i)
    }
    fn f(&self, i: usize) -> Option<Self> {
        self.verma_f(i)
    }
    fn weight(&self) -> Weight {
        self.weight_of()
    }
    fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for VermaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.columns.iter().rev().map(|c| c.to_string()).collect();
        write!(f, "{} +{}w", parts.join(""), self.r)
    }
}

/// `σ^red` of the tuple against `σ̄^red`, where `σ̄` is the head of `τ^red` of
/// its image of the same length; dots are ignored.
pub fn signatures_agree(t: &SpinorTuple, v: &VermaElement) -> bool {
    let sigma = reduce_signature(&t.n_signature());
    let mut tau = v.tau();
    tau.resize(tau.len().max(sigma.len()), Sign::Plus);
    let bar = reduce_signature(&reduce_signature(&tau)[..sigma.len()]);
    let signs = |s: &[Sign]| s.iter().copied().filter(|&x| x != Sign::Dot).collect::<Vec<_>>();
    signs(&sigma) == signs(&bar)
}

/// `χ_λ`.
pub fn chi_lambda(t: &SpinorTuple) -> Result<VermaElement> {
    separate(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal_core::{generate_component, signature_to_string, verify_morphism, MorphismOptions};
    use crate::spinor_model::highest_element;
    use crate::spinor_model::tests::{b, negative_example, spinor_example};

    fn parts(cols: &[Column]) -> Vec<(Vec<Letter>, Vec<Letter>)> {
        cols.iter().map(|c| (c.body().to_vec(), c.tail_part().to_vec())).collect()
    }

    fn bt(body: &[i32], tail: &[i32]) -> (Vec<Letter>, Vec<Letter>) {
        (b(body), b(tail))
    }

    fn left_to_right(v: &VermaElement) -> Vec<(Vec<Letter>, Vec<Letter>)> {
        let mut c = v.columns.clone();
        c.reverse();
        parts(&c)
    }

    #[test]
    fn positive_example() {
        let s = separate_traced(&spinor_example()).unwrap();
        assert_eq!(
            parts(&s.rounds[0]),
            vec![
                bt(&[], &[7, 4, 3]),
                bt(&[], &[7, 2, 1]),
                bt(&[6, 5], &[]),
                bt(&[], &[4, 2]),
                bt(&[6, 4], &[]),
                bt(&[6, 4], &[3, 2]),
                bt(&[5, 3], &[]),
                bt(&[6, 5, 3, 2], &[]),
                bt(&[], &[]),
            ]
        );
        assert_eq!(
            left_to_right(&s.element),
            vec![
                bt(&[], &[7, 4, 3]),
                bt(&[], &[7, 2, 1]),
                bt(&[], &[5, 2]),
                bt(&[6, 4], &[3, 2]),
                bt(&[6, 4], &[]),
                bt(&[6, 4], &[]),
                bt(&[5, 3], &[]),
                bt(&[6, 5, 3, 2], &[]),
                bt(&[], &[]),
            ]
        );
        assert_eq!(s.element.tail_rows(), vec![b(&[7, 7, 5, 3]), b(&[4, 2, 2, 2]), b(&[3, 1])]);
        assert_eq!(s.element.body().size(), 12);
        assert!(s.steps.iter().all(|st| st.semistandard));
        let tri: Vec<bool> = s.steps.iter().filter(|st| st.round == 0).map(|st| st.triangle).collect();
        assert_eq!(tri, vec![false, false, true]);
    }

    #[test]
    fn negative_example_separates() {
        let s = separate_traced(&negative_example()).unwrap();
        assert_eq!(
            parts(&s.rounds[0]),
            vec![
                bt(&[], &[5, 3, 2, 1]),
                bt(&[], &[4, 1]),
                bt(&[5, 2], &[]),
                bt(&[], &[1]),
                bt(&[5, 4, 3, 1], &[]),
            ]
        );
        let v = &s.element;
        assert_eq!(
            left_to_right(v),
            vec![
                bt(&[], &[5, 3, 2, 1]),
                bt(&[], &[4, 1]),
                bt(&[], &[2]),
                bt(&[5, 1], &[]),
                bt(&[5, 4, 3, 1], &[]),
            ]
        );
        assert_eq!(signature_to_string(&v.tau()), "-.+..");
        let (tail, body, ok) = v.shape_report();
        assert_eq!(tail, vec![4, 2, 1]);
        assert_eq!(body, vec![2, 4]);
        assert!(ok);
        assert_eq!(v.r, 5);
    }

    #[test]
    fn separation_keeps_knuth_class() {
        for t in [spinor_example(), negative_example()] {
            let v = separate(&t).unwrap();
            let mut w: Vec<Letter> = crate::foundations::word(&{
                let mut c = t.flatten();
                c.reverse();
                c
            });
            w.reverse();
            let mut w2 = v.word();
            w2.reverse();
            assert!(crate::oracle::knuth_equivalent(&w, &w2));
        }
    }

    #[test]
    fn highest_separates_to_superstandard_tail() {
        for lam in crate::oracle::smoke_weights() {
            let h = highest_element(&lam);
            let v = chi_lambda(&h).unwrap();
            assert_eq!(v.body().size(), 0, "{lam}");
            for (k, row) in v.tail_rows().iter().enumerate() {
                assert!(row.iter().all(|&x| x == -(4 - k as i32)), "{lam}: {row:?}");
            }
        }
    }

    #[test]
    fn recursive_reference_agrees() {
        for lam in crate::oracle::smoke_weights() {
            let g = generate_component(highest_element(&lam), 100_000).unwrap();
            for t in &g.nodes {
                let v = separate(t).unwrap();
                assert_eq!(separate_recursive(t).unwrap(), v);
                assert!(signatures_agree(t, &v), "{t} {:?} {:?}", t.n_signature(), v.tau());
            }
        }
    }

    #[test]
    fn f_n_on_empty_adds_a_body_column() {
        let v = VermaElement::new(4, vec![Column::default()], true, 0);
        let w = v.verma_f(4).unwrap();
        assert_eq!(w.columns[1].entries, b(&[4, 3]));
        assert_eq!(w.verma_e(4).unwrap(), v);
    }

    #[test]
    fn tail_shape_matches_decomposition() {
        for t in [spinor_example(), negative_example()] {
            let v = separate(&t).unwrap();
            assert_eq!(v.shape_report().0, expected_tail_columns(&t));
        }
    }

    #[test]
    fn bicrystal_slot_acts_on_neighbours() {
        let cols = negative_example().flatten();
        for j in 0..cols.len() - 1 {
            if let Some(out) = bicrystal(&cols, j, Op::F) {
                assert_eq!(bicrystal(&out, j, Op::E).unwrap(), cols);
                let len = cols.len();
                for k in 0..len {
                    if k != len - 2 - j && k != len - 1 - j {
                        assert_eq!(out[k], cols[k]);
                    }
                }
            }
        }
        assert!(bicrystal(&cols, 4, Op::F).is_none());
    }

    #[test]
    fn chi_is_a_morphism_on_smoke_weights() {
        for lam in crate::oracle::smoke_weights() {
            let g = generate_component(highest_element(&lam), 100_000).unwrap();
            let opts = MorphismOptions { strict_f: false, shift: crate::foundations::Weight::zero(4) };
            let rep = verify_morphism(&g, |t| chi_lambda(t).ok(), &opts);
            assert!(rep.passed(), "{lam}: {:?}", rep.failures);
        }
    }
}
