//! Letters, partitions, weights, columns on a horizontal line, jeu de taquin
//! and reverse column insertion.
//!
//! A letter is a nonzero `i32`: `k` stands for the unbarred letter k and `-k`
//! for its barred partner. On barred letters the type D order is plain integer
//! order.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};

pub type Letter = i32;

/// The barred letter `ī`.
pub fn bar(i: usize) -> Letter {
    -(i as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LetterOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Position of a letter in `1 < … < n−1 < {n, n̄} < n−1̄ < … < 1̄`.
/// `n` and `n̄` get adjacent ranks; callers must special-case them.
pub fn letter_rank(x: Letter, n: usize) -> i32 {
    if x > 0 {
        x
    } else {
        2 * n as i32 + 1 + x
    }
}

pub fn compare(a: Letter, b: Letter, n: usize) -> LetterOrder {
    let n = n as i32;
    if a == b {
        return LetterOrder::Equal;
    }
    if a.abs() == n && b.abs() == n {
        return LetterOrder::Incomparable;
    }
    let (ra, rb) = (letter_rank(a, n as usize), letter_rank(b, n as usize));
    if ra < rb {
        LetterOrder::Less
    } else {
        LetterOrder::Greater
    }
}

/// `a ≤ b` in the type D order (false on the incomparable pair).
pub fn letter_le(a: Letter, b: Letter, n: usize) -> bool {
    matches!(compare(a, b, n), LetterOrder::Less | LetterOrder::Equal)
}

pub fn letter_to_string(x: Letter) -> String {
    if x < 0 {
        format!("{}b", -x)
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CrystalError::Shape(format!("parts not weakly decreasing: {parts:?}")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// Partition whose conjugate is the given list of column heights (any order).
    pub fn from_column_heights(heights: &[usize]) -> Self {
        let mut h: Vec<usize> = heights.iter().copied().filter(|&x| x > 0).collect();
        h.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: h }.conjugate()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=m).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    /// Every column has even length.
    pub fn has_even_columns(&self) -> bool {
        self.conjugate().parts.iter().all(|c| c % 2 == 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A weight in the ε basis, every coordinate doubled.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `ε_i`, 1-based.
    pub fn epsilon(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        w[i - 1] = 2;
        Weight(w)
    }

    /// Simple root `α_i`.
    pub fn alpha(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        if i < n {
            w[i - 1] = 2;
            w[i] = -2;
        } else {
            w[n - 2] = 2;
            w[n - 1] = 2;
        }
        Weight(w)
    }

    /// Fundamental weight `Λ_i`.
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        if i + 2 <= n {
            for x in w.iter_mut().take(i) {
                *x = 2;
            }
        } else {
            for x in w.iter_mut() {
                *x = 1;
            }
            if i == n - 1 {
                w[n - 1] = -1;
            }
        }
        Weight(w)
    }

    pub fn scale(&self, k: i32) -> Self {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    /// Four times the pairing `(self, other)`.
    pub fn pairing4(&self, other: &Weight) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (*a as i64) * (*b as i64)).sum()
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", halves_to_string(&self.0))
    }
}

fn halves_to_string(v: &[i32]) -> String {
    v.iter()
        .map(|x| if x % 2 == 0 { (x / 2).to_string() } else { format!("{x}/2") })
        .collect::<Vec<_>>()
        .join(",")
}

/// A dominant weight `λ = (λ_1, …, λ_n)`, stored doubled.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DominantWeight {
    pub doubled: Vec<i32>,
}

impl DominantWeight {
    pub fn new(doubled: Vec<i32>) -> Result<Self> {
        let n = doubled.len();
        if n < 2 {
            return Err(CrystalError::NotDominant(format!("{doubled:?}: need n >= 2")));
        }
        let parity = doubled[0].rem_euclid(2);
        if doubled.iter().any(|x| x.rem_euclid(2) != parity) {
            return Err(CrystalError::NotDominant(format!("{doubled:?}: mixed parity")));
        }
        if doubled.windows(2).any(|w| w[0] < w[1]) {
            return Err(CrystalError::NotDominant(format!("{doubled:?}: not weakly decreasing")));
        }
        if doubled[n - 2] < doubled[n - 1].abs() {
            return Err(CrystalError::NotDominant(format!("{doubled:?}: λ_(n-1) < |λ_n|")));
        }
        Ok(Self { doubled })
    }

    /// Parse `"5/2,3/2,1/2,-1/2"` or `"1,1,0,0"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut doubled = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v = if let Some((num, den)) = tok.split_once('/') {
                let num: i32 = num.trim().parse().map_err(|_| CrystalError::Parse(tok.into()))?;
                match den.trim() {
                    "2" => num,
                    "1" => 2 * num,
                    _ => return Err(CrystalError::Parse(format!("{tok}: only halves allowed"))),
                }
            } else {
                2 * tok.parse::<i32>().map_err(|_| CrystalError::Parse(tok.into()))?
            };
            doubled.push(v);
        }
        Self::new(doubled)
    }

    pub fn n(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_integral(&self) -> bool {
        self.doubled[0] % 2 == 0
    }

    pub fn weight(&self) -> Weight {
        Weight(self.doubled.clone())
    }

    pub fn spin_plus(n: usize) -> Self {
        Self { doubled: vec![1; n] }
    }

    pub fn spin_minus(n: usize) -> Self {
        let mut d = vec![1; n];
        d[n - 1] = -1;
        Self { doubled: d }
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", halves_to_string(&self.doubled))
    }
}

/// A column on the line L: entries top to bottom, the last `tail` of them below L.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Column {
    pub entries: Vec<Letter>,
    pub tail: usize,
}

impl Column {
    pub fn new(entries: Vec<Letter>, tail: usize) -> Self {
        debug_assert!(tail <= entries.len());
        Self { entries, tail }
    }

    pub fn body_only(entries: Vec<Letter>) -> Self {
        Self { entries, tail: 0 }
    }

    pub fn height(&self) -> usize {
        self.entries.len()
    }

    pub fn body(&self) -> &[Letter] {
        &self.entries[..self.entries.len() - self.tail]
    }

    pub fn tail_part(&self) -> &[Letter] {
        &self.entries[self.entries.len() - self.tail..]
    }

    /// `U[i]`, 1-based from the top.
    pub fn from_top(&self, i: usize) -> Option<Letter> {
        if i == 0 {
            return None;
        }
        self.entries.get(i - 1).copied()
    }

    /// `U(i)`, 1-based from the bottom.
    pub fn from_bottom(&self, i: usize) -> Option<Letter> {
        let h = self.entries.len();
        if i == 0 || i > h {
            None
        } else {
            Some(self.entries[h - i])
        }
    }

    /// Row of the top entry; row 0 is the first row below L.
    pub fn top_row(&self) -> i32 {
        self.tail as i32 - self.entries.len() as i32
    }

    /// Entry in the given row, if the column occupies it.
    pub fn at_row(&self, row: i32) -> Option<Letter> {
        let k = row - self.top_row();
        if k >= 0 && (k as usize) < self.entries.len() {
            Some(self.entries[k as usize])
        } else {
            None
        }
    }

    /// Strictly increasing top to bottom over the barred alphabet.
    pub fn is_strict_barred(&self, n: usize) -> bool {
        self.entries.iter().all(|&x| x < 0 && x >= -(n as i32))
            && self.entries.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.body().iter().map(|&x| letter_to_string(x)).collect();
        let t: Vec<String> = self.tail_part().iter().map(|&x| letter_to_string(x)).collect();
        write!(f, "[{}|{}]", b.join(" "), t.join(" "))
    }
}

/// Columns placed along L, index 0 the rightmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProfileTableau {
    pub n: usize,
    pub columns: Vec<Column>,
}

/// A cell position: column index (0 = rightmost) and row (0 = first row below L).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub col: usize,
    pub row: i32,
}

impl ProfileTableau {
    pub fn new(n: usize, columns: Vec<Column>) -> Self {
        Self { n, columns }
    }

    pub fn word(&self) -> Vec<Letter> {
        word(&self.columns)
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(Column::height).sum()
    }

    /// Row-wise weak increase left to right between adjacent columns, and
    /// strict increase down every column.
    pub fn is_semistandard_along_l(&self) -> bool {
        if !self.columns.iter().all(|c| c.is_strict_barred(self.n)) {
            return false;
        }
        self.columns.windows(2).all(|w| rows_weakly_increase(&w[1], &w[0]))
    }

    pub fn get(&self, cell: Cell) -> Option<Letter> {
        self.columns.get(cell.col).and_then(|c| c.at_row(cell.row))
    }
}

/// Reading word: columns right to left, each top to bottom.
pub fn word(columns: &[Column]) -> Vec<Letter> {
    columns.iter().flat_map(|c| c.entries.iter().copied()).collect()
}

/// `left` and `right` adjacent, compared row by row where both are present.
pub fn rows_weakly_increase(left: &Column, right: &Column) -> bool {
    let lo = left.top_row().max(right.top_row());
    let hi = (left.tail as i32).min(right.tail as i32);
    (lo..hi).all(|r| left.at_row(r).unwrap() <= right.at_row(r).unwrap())
}

struct Grid {
    cells: HashMap<(usize, i32), Letter>,
    ncols: usize,
}

impl Grid {
    fn from_profile(t: &ProfileTableau) -> Self {
        let mut cells = HashMap::new();
        for (c, col) in t.columns.iter().enumerate() {
            let top = col.top_row();
            for (k, &x) in col.entries.iter().enumerate() {
                cells.insert((c, top + k as i32), x);
            }
        }
        Grid { cells, ncols: t.columns.len() }
    }

    fn get(&self, col: Option<usize>, row: i32) -> Option<Letter> {
        col.and_then(|c| self.cells.get(&(c, row)).copied())
    }

    fn into_profile(self, n: usize) -> Result<ProfileTableau> {
        let mut columns = Vec::with_capacity(self.ncols);
        for c in 0..self.ncols {
            let mut rows: Vec<(i32, Letter)> =
                self.cells.iter().filter(|((cc, _), _)| *cc == c).map(|((_, r), x)| (*r, *x)).collect();
            rows.sort_unstable();
            if rows.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
                return Err(CrystalError::InvalidHole(format!("column {c} split by the slide")));
            }
            let tail = rows.iter().filter(|(r, _)| *r >= 0).count();
            columns.push(Column::new(rows.into_iter().map(|(_, x)| x).collect(), tail));
        }
        Ok(ProfileTableau { n, columns })
    }
}

/// One jeu de taquin slide into `hole`.
///
/// A hole whose left and upper neighbours are empty and which touches the
/// tableau on the right or below is slid forward (entries move up/left); a hole
/// whose right and lower neighbours are empty and which touches the tableau on
/// the left or above is slid backward (entries move down/right).
pub fn jdt_slide(t: &ProfileTableau, hole: Cell) -> Result<ProfileTableau> {
    let mut g = Grid::from_profile(t);
    if hole.col >= g.ncols {
        g.ncols = hole.col + 1;
    }
    if g.cells.contains_key(&(hole.col, hole.row)) {
        return Err(CrystalError::InvalidHole(format!("{hole:?} is occupied")));
    }
    let right = |c: usize| c.checked_sub(1);
    let left = |c: usize| Some(c + 1);
    let occ = |g: &Grid, c: Option<usize>, r: i32| g.get(c, r).is_some();
    let (c0, r0) = (hole.col, hole.row);
    let forward = (occ(&g, right(c0), r0) || occ(&g, Some(c0), r0 + 1))
        && !occ(&g, left(c0), r0)
        && !occ(&g, Some(c0), r0 - 1);
    let backward = (occ(&g, left(c0), r0) || occ(&g, Some(c0), r0 - 1))
        && !occ(&g, right(c0), r0)
        && !occ(&g, Some(c0), r0 + 1);
    let (mut c, mut r) = (c0, r0);
    if forward {
        loop {
            let x = g.get(right(c), r);
            let y = g.get(Some(c), r + 1);
            let from = match (x, y) {
                (None, None) => break,
                (Some(_), None) => (c - 1, r),
                (None, Some(_)) => (c, r + 1),
                (Some(a), Some(b)) => {
                    if a < b {
                        (c - 1, r)
                    } else {
                        (c, r + 1)
                    }
                }
            };
            let v = g.cells.remove(&from).unwrap();
            g.cells.insert((c, r), v);
            (c, r) = from;
        }
    } else if backward {
        loop {
            let x = g.get(left(c), r);
            let y = g.get(Some(c), r - 1);
            let from = match (x, y) {
                (None, None) => break,
                (Some(_), None) => (c + 1, r),
                (None, Some(_)) => (c, r - 1),
                (Some(a), Some(b)) => {
                    if a > b {
                        (c + 1, r)
                    } else {
                        (c, r - 1)
                    }
                }
            };
            let v = g.cells.remove(&from).unwrap();
            g.cells.insert((c, r), v);
            (c, r) = from;
        }
    } else {
        return Err(CrystalError::InvalidHole(format!("{hole:?} is not a corner")));
    }
    let mut out = g.into_profile(t.n)?;
    while out.columns.len() > t.columns.len() && out.columns.last().is_some_and(|c| c.height() == 0) {
        out.columns.pop();
    }
    Ok(out)
}

/// `V ← x`: reverse column insertion into bottom-aligned columns (index 0 the
/// rightmost). Returns the index of the column that received the new box.
pub fn reverse_column_insert(cols: &mut Vec<Vec<Letter>>, x: Letter) -> usize {
    let mut x = x;
    let mut c = 0;
    loop {
        if c == cols.len() {
            cols.push(vec![x]);
            return c;
        }
        let col = &mut cols[c];
        match col.iter().rposition(|&y| y <= x) {
            Some(k) => {
                std::mem::swap(&mut col[k], &mut x);
                c += 1;
            }
            None => {
                col.insert(0, x);
                return c;
            }
        }
    }
}

/// Inverse of [`reverse_column_insert`]: removes the top box of column `c`
/// and returns the letter ejected from the rightmost column.
pub fn reverse_column_eject(cols: &mut Vec<Vec<Letter>>, c: usize) -> Letter {
    let mut v = cols[c].remove(0);
    for k in (0..c).rev() {
        let col = &mut cols[k];
        let pos = col.iter().position(|&y| y >= v).expect("ejection path broken");
        std::mem::swap(&mut col[pos], &mut v);
    }
    while cols.last().is_some_and(Vec::is_empty) {
        cols.pop();
    }
    v
}

/// Bottom-aligned columns with heights weakly decreasing to the left, strictly
/// increasing down, weakly increasing along rows.
pub fn is_rotated_sst(cols: &[Vec<Letter>], n: usize) -> bool {
    if cols.windows(2).any(|w| w[0].len() < w[1].len()) {
        return false;
    }
    let profile: Vec<Column> = cols.iter().map(|c| Column::body_only(c.clone())).collect();
    ProfileTableau::new(n, profile).is_semistandard_along_l()
}
