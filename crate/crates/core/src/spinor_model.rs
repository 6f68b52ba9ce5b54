//! The spinor model: two-column factors over the barred alphabet, their
//! residue and E/F slides, admissibility, the order ◁, and the crystal of
//! admissible tuples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal_core::{tensor_site, CrystalElement, Op};
use crate::error::{CrystalError, Result};
use crate::foundations::{letter_to_string, Column, DominantWeight, Letter, Weight};
use crate::kn_model::{letter_e, letter_f};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// `T(a)`, `0 ≤ a ≤ n−1`.
    T(usize),
    /// `T̄(0)`.
    TBar,
    SpPlus,
    SpMinus,
}

impl FactorKind {
    pub fn is_spin(self) -> bool {
        matches!(self, FactorKind::SpPlus | FactorKind::SpMinus)
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::T(a) => write!(f, "T({a})"),
            FactorKind::TBar => write!(f, "Tbar(0)"),
            FactorKind::SpPlus => write!(f, "sp+"),
            FactorKind::SpMinus => write!(f, "sp-"),
        }
    }
}

impl std::str::FromStr for FactorKind {
    type Err = CrystalError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Tbar(0)" => Ok(FactorKind::TBar),
            "sp+" => Ok(FactorKind::SpPlus),
            "sp-" => Ok(FactorKind::SpMinus),
            t => t
                .strip_prefix("T(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|a| a.parse().ok())
                .map(FactorKind::T)
                .ok_or_else(|| CrystalError::Parse(format!("unknown factor kind {t:?}"))),
        }
    }
}

impl Serialize for FactorKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FactorKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Two-column slides

/// The top `c` entries of `l` sit beside the bottom `c` entries of `r`.
pub fn overlap_ok(l: &[Letter], r: &[Letter], c: usize) -> bool {
    c <= l.len() && c <= r.len() && (0..c).all(|i| l[i] <= r[r.len() - c + i])
}

/// Largest semistandard overlap; every smaller overlap is semistandard too.
pub fn max_overlap(l: &[Letter], r: &[Letter]) -> usize {
    let mut c = 0;
    while overlap_ok(l, r, c + 1) {
        c += 1;
    }
    c
}

/// Two columns placed in a grid: `right` occupies rows `0..hR`, `left`
/// occupies rows `off..off+hL`. Column 0 is the left one.
struct Pair {
    cols: [Vec<Option<Letter>>; 2],
    base: i32,
}

impl Pair {
    fn new(l: &[Letter], r: &[Letter], off: i32) -> Self {
        let lo = off.min(0) - 1;
        let hi = (off + l.len() as i32).max(r.len() as i32) + 1;
        let size = (hi - lo) as usize;
        let mut cols = [vec![None; size], vec![None; size]];
        for (k, &x) in l.iter().enumerate() {
            cols[0][(off + k as i32 - lo) as usize] = Some(x);
        }
        for (k, &x) in r.iter().enumerate() {
            cols[1][(k as i32 - lo) as usize] = Some(x);
        }
        Pair { cols, base: lo }
    }

    fn get(&self, c: usize, row: i32) -> Option<Letter> {
        let k = row - self.base;
        if k < 0 {
            return None;
        }
        self.cols[c].get(k as usize).copied().flatten()
    }

    fn set(&mut self, c: usize, row: i32, v: Option<Letter>) {
        let k = (row - self.base) as usize;
        self.cols[c][k] = v;
    }

    fn forward(&mut self, mut c: usize, mut row: i32) {
        loop {
            let right = if c == 0 { self.get(1, row) } else { None };
            let below = self.get(c, row + 1);
            let (fc, fr) = match (right, below) {
                (None, None) => return,
                (Some(_), None) => (1, row),
                (None, Some(_)) => (c, row + 1),
                (Some(x), Some(y)) => {
                    if x < y {
                        (1, row)
                    } else {
                        (c, row + 1)
                    }
                }
            };
            let v = self.get(fc, fr);
            self.set(c, row, v);
            self.set(fc, fr, None);
            c = fc;
            row = fr;
        }
    }

    fn backward(&mut self, mut c: usize, mut row: i32) {
        loop {
            let left = if c == 1 { self.get(0, row) } else { None };
            let above = self.get(c, row - 1);
            let (fc, fr) = match (left, above) {
                (None, None) => return,
                (Some(_), None) => (0, row),
                (None, Some(_)) => (c, row - 1),
                (Some(x), Some(y)) => {
                    if x > y {
                        (0, row)
                    } else {
                        (c, row - 1)
                    }
                }
            };
            let v = self.get(fc, fr);
            self.set(c, row, v);
            self.set(fc, fr, None);
            c = fc;
            row = fr;
        }
    }

    fn into_columns(self) -> (Vec<Letter>, Vec<Letter>) {
        let [l, r] = self.cols;
        (l.into_iter().flatten().collect(), r.into_iter().flatten().collect())
    }
}

/// `F` on the pair `(left, right)` after normalizing to zero residue:
/// a forward slide into the cell above the top of the left column.
pub fn pair_f(l: &[Letter], r: &[Letter]) -> Option<(Vec<Letter>, Vec<Letter>)> {
    let c = max_overlap(l, r);
    let b = r.len() - c;
    if b == 0 {
        return None;
    }
    let mut p = Pair::new(l, r, b as i32);
    p.forward(0, b as i32 - 1);
    Some(p.into_columns())
}

/// `E` on the pair `(left, right)` after normalizing to zero residue:
/// a backward slide into the cell below the bottom of the right column.
pub fn pair_e(l: &[Letter], r: &[Letter]) -> Option<(Vec<Letter>, Vec<Letter>)> {
    let c = max_overlap(l, r);
    let a = l.len() - c;
    if a == 0 {
        return None;
    }
    let b = r.len() - c;
    let mut p = Pair::new(l, r, b as i32);
    p.backward(1, r.len() as i32);
    Some(p.into_columns())
}

// ---------------------------------------------------------------------------
// Factors

/// A factor of a spinor tuple. For `T(a)` the left column has tail `a` and
/// the right column sits just above L; for `T̄(0)` both columns have tail 1;
/// a spin factor keeps its column in `left` (tail = height mod 2) and leaves
/// `right` empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub left: Column,
    pub right: Column,
}

/// Columns attached to a factor: `(T^{L*}, T^{R*})` when the residue is 1,
/// and `(^L T, ^R T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedColumns {
    pub star: Option<(Vec<Letter>, Vec<Letter>)>,
    pub hat_left: Vec<Letter>,
    pub hat_right: Vec<Letter>,
}

impl Factor {
    pub fn pair(a: usize, left: Vec<Letter>, right: Vec<Letter>) -> Self {
        Factor { kind: FactorKind::T(a), left: Column::new(left, a), right: Column::body_only(right) }
    }

    pub fn tbar(left: Vec<Letter>, right: Vec<Letter>) -> Self {
        Factor { kind: FactorKind::TBar, left: Column::new(left, 1), right: Column::new(right, 1) }
    }

    pub fn spin(col: Vec<Letter>) -> Self {
        let odd = col.len() % 2;
        let kind = if odd == 1 { FactorKind::SpMinus } else { FactorKind::SpPlus };
        Factor { kind, left: Column::new(col, odd), right: Column::default() }
    }

    pub fn l(&self) -> &[Letter] {
        &self.left.entries
    }

    pub fn r(&self) -> &[Letter] {
        &self.right.entries
    }

    /// `r_T`: for a pair, how far the right column can slide down and stay
    /// semistandard; for a spin column, its height mod 2.
    pub fn residue(&self) -> usize {
        match self.kind {
            FactorKind::SpPlus | FactorKind::SpMinus => self.left.height() % 2,
            FactorKind::TBar => 0,
            FactorKind::T(a) => {
                let c = self.l().len().saturating_sub(a);
                max_overlap(self.l(), self.r()).saturating_sub(c)
            }
        }
    }

    /// Kind-specific shape and content checks over `[n̄]`.
    pub fn check(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(CrystalError::Kind(format!("{}: {m}", self)));
        if !self.left.is_strict_barred(n) || !self.right.is_strict_barred(n) {
            return bad("columns must strictly increase over the barred letters".into());
        }
        let (hl, hr) = (self.l().len(), self.r().len());
        match self.kind {
            FactorKind::SpPlus | FactorKind::SpMinus => {
                let odd = (self.kind == FactorKind::SpMinus) as usize;
                if hl % 2 != odd || self.left.tail != odd || hr != 0 {
                    return bad("spin column parity or placement".into());
                }
            }
            FactorKind::TBar => {
                if hl % 2 != 1 || hr % 2 != 1 || hr < hl || self.left.tail != 1 || self.right.tail != 1 {
                    return bad("shape is not λ(0,b,c+1) with b, c even".into());
                }
                if !overlap_ok(self.l(), self.r(), hl) {
                    return bad("rows are not weakly increasing".into());
                }
            }
            FactorKind::T(a) => {
                if a >= n || self.left.tail != a || self.right.tail != 0 || hl < a {
                    return bad("placement along L".into());
                }
                let c = hl - a;
                if c > hr || c % 2 != 0 || (hr - c) % 2 != 0 {
                    return bad("b and c must be even".into());
                }
                if !overlap_ok(self.l(), self.r(), c) {
                    return bad("rows are not weakly increasing".into());
                }
                if self.residue() > 1 {
                    return bad("residue exceeds 1".into());
                }
            }
        }
        Ok(())
    }

    pub fn derived(&self) -> Result<DerivedColumns> {
        match self.kind {
            FactorKind::SpPlus | FactorKind::SpMinus => Ok(DerivedColumns {
                star: Some((self.l().to_vec(), Vec::new())),
                hat_left: self.l().to_vec(),
                hat_right: Vec::new(),
            }),
            FactorKind::TBar => Ok(DerivedColumns {
                star: None,
                hat_left: self.l().to_vec(),
                hat_right: self.r().to_vec(),
            }),
            FactorKind::T(a) => {
                let r = self.residue();
                let star = if r == 1 { pair_f(self.l(), self.r()) } else { None };
                let (mut l, mut rt) = (self.l().to_vec(), self.r().to_vec());
                for _ in 0..a.saturating_sub(r) {
                    (l, rt) = pair_e(&l, &rt)
                        .ok_or_else(|| CrystalError::Kind(format!("{self}: E vanished early")))?;
                }
                Ok(DerivedColumns { star, hat_left: l, hat_right: rt })
            }
        }
    }

    /// `(T^{L*}, T^{R*})`.
    pub fn starred(&self) -> Result<(Vec<Letter>, Vec<Letter>)> {
        if self.residue() != 1 {
            return Err(CrystalError::Residue);
        }
        self.derived()?.star.ok_or(CrystalError::Residue)
    }

    /// Doubled weight: `2ω_n` (or `ω_n` for spin) minus the barred content.
    pub fn weight(&self, n: usize) -> Weight {
        let base = if self.kind.is_spin() { 1 } else { 2 };
        let mut w = vec![base; n];
        for &x in self.l().iter().chain(self.r()) {
            w[(-x - 1) as usize] -= 2;
        }
        Weight(w)
    }

    pub fn highest(kind: FactorKind, n: usize) -> Factor {
        let nn = n as i32;
        match kind {
            FactorKind::T(a) => Factor::pair(a, (0..a as i32).map(|k| -nn + k).collect(), Vec::new()),
            FactorKind::TBar => Factor::tbar(vec![-nn], vec![-nn]),
            FactorKind::SpPlus => Factor::spin(Vec::new()),
            FactorKind::SpMinus => Factor::spin(vec![-nn]),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |c: &[Letter]| c.iter().map(|&x| letter_to_string(x)).collect::<Vec<_>>().join(" ");
        if self.kind.is_spin() {
            write!(f, "{}[{}]", self.kind, s(self.l()))
        } else {
            write!(f, "{}[{}/{}]", self.kind, s(self.l()), s(self.r()))
        }
    }
}

/// `x(i) ≤ y(j)` for 1-based bottom indices, vacuous when either is missing.
fn le_from_bottom(x: &[Letter], i: usize, y: &[Letter], j: usize) -> bool {
    if i == 0 || j == 0 || i > x.len() || j > y.len() {
        return true;
    }
    x[x.len() - i] <= y[y.len() - j]
}

/// Case (1) of admissibility. `s` is a pair `T(a')` or a spin column.
fn admissible_case1(t: &Factor, a: usize, s: &Factor) -> Result<bool> {
    let (ap, eps) = match s.kind {
        FactorKind::T(b) => (b, 0),
        FactorKind::SpPlus => (0, 0),
        FactorKind::SpMinus => (1, 1),
        FactorKind::TBar => return Err(CrystalError::Kind("case (1) needs T(a') or a spin column".into())),
    };
    let (rt, rs) = (t.residue(), s.residue());
    let both = rt * rs == 1;
    if (t.r().len() as i64) > s.l().len() as i64 - ap as i64 + 2 * (rt * rs) as i64 {
        return Ok(false);
    }
    let dt = t.derived()?;
    let ds = s.derived()?;
    let (tr, sl_star): (Vec<Letter>, Vec<Letter>) = if both {
        (t.starred()?.1, if s.kind.is_spin() { s.l().to_vec() } else { s.starred()?.0 })
    } else {
        (t.r().to_vec(), s.l().to_vec())
    };
    let len = tr.len().max(ds.hat_left.len()).max(dt.hat_right.len()).max(sl_star.len()) + a + 2;
    let shift = a - ap + if both { eps } else { 0 };
    for i in 1..=len {
        if !le_from_bottom(&tr, i, &ds.hat_left, i) {
            return Ok(false);
        }
        if !le_from_bottom(&dt.hat_right, i + shift, &sl_star, i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T ≺ S`.
pub fn is_admissible(t: &Factor, s: &Factor) -> Result<bool> {
    match (t.kind, s.kind) {
        (FactorKind::T(a), FactorKind::T(b)) if b <= a => admissible_case1(t, a, s),
        (FactorKind::T(a), FactorKind::SpPlus | FactorKind::SpMinus) => admissible_case1(t, a, s),
        (FactorKind::T(a), FactorKind::TBar) => admissible_case1(t, a, &Factor::spin(s.l().to_vec())),
        (FactorKind::TBar, FactorKind::TBar | FactorKind::SpMinus) => {
            let (l, r) = (t.r(), s.l());
            Ok(l.len() % 2 == 1 && r.len() % 2 == 1 && r.len() >= l.len() && overlap_ok(l, r, l.len()))
        }
        _ => Err(CrystalError::Kind(format!("no admissibility rule for {} then {}", t.kind, s.kind))),
    }
}

/// Tail height of `S^L` used by ◁.
fn left_tail(s: &Factor) -> usize {
    match s.kind {
        FactorKind::T(b) => b,
        FactorKind::TBar | FactorKind::SpMinus => 1,
        FactorKind::SpPlus => 0,
    }
}

/// `(left, right)` placed along L form a semistandard tableau of skew shape.
pub fn skew_semistandard(left: &Column, right: &Column) -> bool {
    if left.height() > 0 && right.height() > 0
        && (left.top_row() < right.top_row() || left.tail < right.tail) {
            return false;
        }
    crate::foundations::rows_weakly_increase(left, right)
}

/// `T ◁ S` for `T ∈ T(a)`: `^R T` with tail `a` beside `S^L`.
pub fn triangle_lt(t: &Factor, s: &Factor) -> Result<bool> {
    let FactorKind::T(a) = t.kind else {
        return Err(CrystalError::Kind(format!("◁ needs T(a) on the left, got {}", t.kind)));
    };
    let rt = t.derived()?.hat_right;
    if rt.len() < a {
        return Err(CrystalError::Kind(format!("{t}: ^R T shorter than its tail")));
    }
    let b = left_tail(s);
    Ok(skew_semistandard(&Column::new(rt, a), &Column::new(s.l().to_vec(), b.min(s.l().len()))))
}

// ---------------------------------------------------------------------------
// Shapes and tuples

/// Factor kinds of the product for `λ`, leftmost first.
pub fn shape_decomposition(lambda: &DominantWeight) -> Vec<FactorKind> {
    let n = lambda.n();
    let d = &lambda.doubled;
    let neg = d[n - 1] < 0;
    let mut mu: Vec<i32> = d.clone();
    let mut spin = None;
    if !lambda.is_integral() {
        spin = Some(if neg { FactorKind::SpMinus } else { FactorKind::SpPlus });
        for (k, x) in mu.iter_mut().enumerate() {
            *x -= if neg && k == n - 1 { -1 } else { 1 };
        }
    }
    let last = mu[n - 1] / 2;
    let full = last.unsigned_abs() as usize;
    for (k, x) in mu.iter_mut().enumerate() {
        *x /= 2;
        *x -= if k == n - 1 { last } else { last.abs() };
    }
    let mut kinds = Vec::new();
    let mut h = n - 1;
    while h >= 1 {
        let cols = (mu[h - 1] - if h < n { mu[h] } else { 0 }) as usize;
        for _ in 0..cols {
            kinds.push(FactorKind::T(n - h));
        }
        h -= 1;
    }
    kinds.sort_by(|x, y| y.cmp(x));
    let fill = if neg { FactorKind::TBar } else { FactorKind::T(0) };
    kinds.extend(std::iter::repeat_n(fill, full));
    kinds.extend(spin);
    kinds
}

/// An element of `T_λ`, factors leftmost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinorTuple {
    pub n: usize,
    pub lambda: DominantWeight,
    pub factors: Vec<Factor>,
}

#[derive(Serialize, Deserialize)]
struct SpinorJson {
    n: usize,
    lambda2: Vec<i32>,
    factors: Vec<Factor>,
}

impl Serialize for SpinorTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpinorJson { n: self.n, lambda2: self.lambda.doubled.clone(), factors: self.factors.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpinorTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SpinorJson::deserialize(d)?;
        let lambda = DominantWeight::new(j.lambda2).map_err(serde::de::Error::custom)?;
        if lambda.n() != j.n {
            return Err(serde::de::Error::custom("n does not match lambda2"));
        }
        Ok(SpinorTuple { n: j.n, lambda, factors: j.factors })
    }
}

pub fn highest_element(lambda: &DominantWeight) -> SpinorTuple {
    let n = lambda.n();
    let factors = shape_decomposition(lambda).into_iter().map(|k| Factor::highest(k, n)).collect();
    SpinorTuple { n, lambda: lambda.clone(), factors }
}

/// `σ` entry for one column and `i = n`: `(ε, φ)`.
fn n_stats(col: &[Letter], n: usize) -> (usize, usize) {
    let nn = n as i32;
    if col.len() >= 2 && col[0] == -nn && col[1] == -(nn - 1) {
        (1, 0)
    } else if col.first().is_none_or(|&x| x > -(nn - 1)) {
        (0, 1)
    } else {
        (0, 0)
    }
}

impl SpinorTuple {
    pub fn new(lambda: DominantWeight, factors: Vec<Factor>) -> Self {
        SpinorTuple { n: lambda.n(), lambda, factors }
    }

    pub fn has_spin(&self) -> bool {
        self.factors.last().is_some_and(|f| f.kind.is_spin())
    }

    /// `(U_{2l}, …, U_1, U_0)` left to right; `U_0` is the empty placeholder
    /// when there is no spin factor.
    pub fn flatten(&self) -> Vec<Column> {
        let mut out = Vec::new();
        for f in &self.factors {
            if f.kind.is_spin() {
                out.push(f.left.clone());
            } else {
                out.push(f.left.clone());
                out.push(f.right.clone());
            }
        }
        if !self.has_spin() {
            out.push(Column::default());
        }
        out
    }

    /// Factor kinds match the shape, every factor is well formed and every
    /// neighbouring pair is admissible.
    pub fn validate(&self) -> Result<()> {
        let kinds: Vec<FactorKind> = self.factors.iter().map(|f| f.kind).collect();
        let expected = shape_decomposition(&self.lambda);
        if kinds != expected {
            return Err(CrystalError::Kind(format!("factor kinds {kinds:?}, expected {expected:?}")));
        }
        for f in &self.factors {
            f.check(self.n)?;
        }
        for w in self.factors.windows(2) {
            if !is_admissible(&w[0], &w[1])? {
                return Err(CrystalError::NotAdmissible(format!("{} then {}", w[0], w[1])));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Columns in tensor order `U_0, U_1, …` as `(factor index, is right column)`.
    fn tensor_columns(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for (k, f) in self.factors.iter().enumerate().rev() {
            if f.kind.is_spin() {
                out.push((k, false));
            } else {
                out.push((k, true));
                out.push((k, false));
            }
        }
        out
    }

    fn column(&self, (k, right): (usize, bool)) -> &Column {
        if right {
            &self.factors[k].right
        } else {
            &self.factors[k].left
        }
    }

    fn column_mut(&mut self, (k, right): (usize, bool)) -> &mut Column {
        if right {
            &mut self.factors[k].right
        } else {
            &mut self.factors[k].left
        }
    }

    fn act(&self, i: usize, op: Op) -> Option<Self> {
        let n = self.n;
        let cols = self.tensor_columns();
        let mut out = self.clone();
        if i < n {
            let mut stats = Vec::new();
            let mut owner = Vec::new();
            for (slot, &c) in cols.iter().enumerate() {
                for (p, &x) in self.column(c).entries.iter().enumerate() {
                    stats.push(Some((letter_e(x, i, n).is_some() as usize, letter_f(x, i, n).is_some() as usize)));
                    owner.push((slot, p));
                }
            }
            let (slot, p) = owner[tensor_site(&stats, op)?];
            let col = out.column_mut(cols[slot]);
            col.entries[p] = match op {
                Op::F => letter_f(col.entries[p], i, n)?,
                Op::E => letter_e(col.entries[p], i, n)?,
            };
            return Some(out);
        }
        let mut stats: Vec<Option<(usize, usize)>> = Vec::new();
        if !self.has_spin() {
            stats.push(None);
        }
        for &c in &cols {
            stats.push(Some(n_stats(&self.column(c).entries, n)));
        }
        let mut site = tensor_site(&stats, op)?;
        if !self.has_spin() {
            site -= 1;
        }
        let col = out.column_mut(cols[site]);
        let nn = n as i32;
        match op {
            Op::F => {
                col.entries.splice(0..0, [-nn, -(nn - 1)]);
            }
            Op::E => {
                col.entries.drain(0..2);
            }
        }
        Some(out)
    }

    pub fn spinor_f(&self, i: usize) -> Option<Self> {
        self.act(i, Op::F)
    }

    pub fn spinor_e(&self, i: usize) -> Option<Self> {
        self.act(i, Op::E)
    }

    /// `σ = (σ_0, …, σ_{2l})` for `i = n`.
    pub fn n_signature(&self) -> Vec<crate::crystal_core::Sign> {
        use crate::crystal_core::Sign;
        let mut out = Vec::new();
        if !self.has_spin() {
            out.push(Sign::Dot);
        }
        for c in self.tensor_columns() {
            out.push(match n_stats(&self.column(c).entries, self.n) {
                (1, _) => Sign::Minus,
                (_, 1) => Sign::Plus,
                _ => Sign::Dot,
            });
        }
        out
    }

    pub fn weight_of(&self) -> Weight {
        let mut w = Weight::zero(self.n);
        for f in &self.factors {
            w = &w + &f.weight(self.n);
        }
        w
    }
}

impl CrystalElement for SpinorTuple {
    fn rank(&self) -> usize {
        self.n
    }
    fn e(&self, i: usize) -> Option<Self> {
        self.spinor_e(i)
    }
    fn f(&self, i: usize) -> Option<Self> {
        self.spinor_f(i)
    }
    fn weight(&self) -> Weight {
        self.weight_of()
    }
    fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SpinorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::crystal_core::generate_component;
    use proptest::prelude::*;

    pub(crate) fn b(v: &[i32]) -> Vec<Letter> {
        v.iter().map(|&x| -x).collect()
    }

    /// The n = 8 tuple of shape (4,4,4,4,4,2).
    pub(crate) fn spinor_example() -> SpinorTuple {
        let lambda = DominantWeight::new(vec![8, 8, 8, 8, 8, 4, 0, 0]).unwrap();
        SpinorTuple::new(
            lambda,
            vec![
                Factor::pair(3, b(&[7, 4, 3]), b(&[7, 5])),
                Factor::pair(3, b(&[6, 2, 1]), b(&[6, 4])),
                Factor::pair(2, b(&[4, 2]), b(&[6, 3])),
                Factor::pair(2, b(&[5, 4, 3, 2]), b(&[6, 5, 3, 2])),
            ],
        )
    }

    pub(crate) fn negative_example() -> SpinorTuple {
        let lambda = DominantWeight::new(vec![5, 3, 3, 1, -1]).unwrap();
        SpinorTuple::new(
            lambda,
            vec![
                Factor::pair(4, b(&[5, 3, 2, 1]), b(&[5, 4])),
                Factor::pair(2, b(&[2, 1]), b(&[3, 1])),
                Factor::spin(b(&[5, 4, 1])),
            ],
        )
    }

    #[test]
    fn single_f_example() {
        assert_eq!(pair_f(&b(&[1]), &b(&[3, 2, 1])), Some((b(&[2, 1]), b(&[3, 1]))));
    }

    #[test]
    fn double_f_example() {
        let (l, r) = pair_f(&b(&[7]), &b(&[7, 5, 4, 3])).unwrap();
        assert_eq!(pair_f(&l, &r), Some((b(&[7, 4, 3]), b(&[7, 5]))));
    }

    #[test]
    fn e_and_f_vanish_at_the_ends() {
        assert_eq!(pair_e(&b(&[3]), &b(&[4, 3])), None);
        assert_eq!(pair_f(&b(&[3, 2]), &b(&[2])), None);
    }

    #[test]
    fn example_residues_and_derived_columns() {
        let t = spinor_example();
        let t1 = &t.factors[3];
        assert_eq!(t1.residue(), 1);
        let d = t1.derived().unwrap();
        assert_eq!(d.hat_left, b(&[5, 3, 2]));
        assert_eq!(d.hat_right, b(&[6, 5, 4, 3, 2]));
        assert_eq!(Factor::spin(b(&[5, 4, 1])).residue(), 1);
        assert_eq!(t.factors[2].residue(), 1);
        assert_eq!(Factor::highest(FactorKind::T(2), 8).starred().unwrap_err(), CrystalError::Residue);
    }

    #[test]
    fn example_tuples_are_admissible() {
        spinor_example().validate().unwrap();
        negative_example().validate().unwrap();
    }

    #[test]
    fn triangle_examples() {
        let t = spinor_example();
        let f = &t.factors;
        assert!(!triangle_lt(&f[0], &f[1]).unwrap());
        assert!(!triangle_lt(&f[1], &f[2]).unwrap());
        assert!(triangle_lt(&f[2], &f[3]).unwrap());
        let s = negative_example();
        let g = &s.factors;
        assert!(!triangle_lt(&g[0], &g[1]).unwrap());
        assert!(!triangle_lt(&g[1], &g[2]).unwrap());
    }

    #[test]
    fn decompositions() {
        let l = DominantWeight::new(vec![8, 8, 8, 8, 8, 4, 0, 0]).unwrap();
        let k: Vec<_> = shape_decomposition(&l);
        assert_eq!(k, vec![FactorKind::T(3), FactorKind::T(3), FactorKind::T(2), FactorKind::T(2)]);
        let l = DominantWeight::new(vec![5, 3, 3, 1, -1]).unwrap();
        assert_eq!(shape_decomposition(&l), vec![FactorKind::T(4), FactorKind::T(2), FactorKind::SpMinus]);
        assert!(shape_decomposition(&DominantWeight::new(vec![0; 4]).unwrap()).is_empty());
        let l = DominantWeight::new(vec![4, 2, 2, -2]).unwrap();
        assert_eq!(shape_decomposition(&l), vec![FactorKind::T(3), FactorKind::TBar]);
        let l = DominantWeight::new(vec![3, 3, 3, 3]).unwrap();
        assert_eq!(shape_decomposition(&l), vec![FactorKind::T(0), FactorKind::SpPlus]);
    }

    #[test]
    fn highest_weights() {
        let n = 5;
        for a in 2..n {
            assert_eq!(Factor::highest(FactorKind::T(a), n).weight(n), Weight::fundamental(n, n - a));
        }
        let tb = Factor::highest(FactorKind::TBar, n);
        assert_eq!(tb.weight(n), Weight(vec![2, 2, 2, 2, -2]));
        assert_eq!(Factor::highest(FactorKind::T(0), n).weight(n), Weight(vec![2; 5]));
    }

    #[test]
    fn n_signature_of_negative_example() {
        let s = negative_example().n_signature();
        assert_eq!(crate::crystal_core::signature_to_string(&s), "-++-.");
    }

    #[test]
    fn spin_plus_f_n_adds_domino() {
        let t = highest_element(&DominantWeight::spin_plus(4));
        let u = t.spinor_f(4).unwrap();
        assert_eq!(u.factors[0].l(), &[-4, -3]);
    }

    #[test]
    fn highest_is_killed_and_valid() {
        for s in ["1,1,0,0", "2,1,1,-1", "3/2,1/2,1/2,-1/2", "2,2,1,0", "3,2,2,2"] {
            let l = DominantWeight::parse(s).unwrap();
            let h = highest_element(&l);
            h.validate().unwrap();
            assert!((1..=4).all(|i| h.spinor_e(i).is_none()), "{s}");
            assert_eq!(h.weight_of(), l.weight());
        }
    }

    #[test]
    fn closure_for_2110() {
        let l = DominantWeight::parse("2,1,1,0").unwrap();
        let g = generate_component(highest_element(&l), 100_000).unwrap();
        for x in &g.nodes {
            x.validate().unwrap();
        }
    }

    proptest! {
        #[test]
        fn e_inverts_f(l in proptest::sample::subsequence((1..=6).map(|x: i32| -x).collect::<Vec<_>>(), 0..=6),
                       r in proptest::sample::subsequence((1..=6).map(|x: i32| -x).collect::<Vec<_>>(), 0..=6)) {
            let mut l = l; l.sort(); let mut r = r; r.sort();
            let c = max_overlap(&l, &r);
            if let Some((l2, r2)) = pair_f(&l, &r) {
                let (l3, r3) = pair_e(&l2, &r2).unwrap();
                prop_assert_eq!((l3, r3), (l.clone(), r.clone()));
                prop_assert!(c <= l.len());
            }
        }
    }
}
