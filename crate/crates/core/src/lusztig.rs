//! Lusztig data for the convex order `i_0`: the Burge correspondence on the
//! body, row multiplicities on the tail and the embedding `Ξ_λ`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::crystal_core::{reduce_signature, tensor_site, CrystalElement, Op, Sign};
use crate::error::{CrystalError, Result};
use crate::foundations::{is_rotated_sst, letter_to_string, reverse_column_eject, reverse_column_insert, Column, Letter, ProfileTableau, Weight};
use crate::kn_model::{letter_e, letter_f, KnTableau};
use crate::kn_spinor_iso::psi_lambda;
use crate::separation::chi_lambda;

/// A positive root of `D_n`, indices 1-based with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Root {
    Sum(usize, usize),
    Diff(usize, usize),
}

impl Root {
    pub fn weight(self, n: usize) -> Weight {
        let mut w = vec![0; n];
        match self {
            Root::Sum(i, j) => {
                w[i - 1] = 2;
                w[j - 1] = 2;
            }
            Root::Diff(i, j) => {
                w[i - 1] = 2;
                w[j - 1] = -2;
            }
        }
        Weight(w)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Sum(i, j) => write!(f, "e{i}+e{j}"),
            Root::Diff(i, j) => write!(f, "e{i}-e{j}"),
        }
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `β_1 ≺ … ≺ β_N`: the roots `ε_i+ε_j` first, then `ε_i−ε_j`.
#[derive(Debug, Clone, Serialize)]
pub struct RootOrder {
    pub n: usize,
    pub beta: Vec<Root>,
}

pub fn convex_order(n: usize) -> Result<RootOrder> {
    if n < 4 {
        return Err(CrystalError::Rank(n));
    }
    let mut beta = Vec::with_capacity(n * n - n);
    for j in (2..=n).rev() {
        for i in (1..j).rev() {
            beta.push(Root::Sum(i, j));
        }
    }
    for i in 1..n {
        for j in i + 1..=n {
            beta.push(Root::Diff(i, j));
        }
    }
    Ok(RootOrder { n, beta })
}

impl RootOrder {
    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    /// `M`, the number of roots of the nilradical.
    pub fn m(&self) -> usize {
        self.beta.len() / 2
    }

    /// 0-based position of a root.
    pub fn index(&self, r: Root) -> usize {
        let n = self.n;
        match r {
            // j descending, then i descending.
            Root::Sum(i, j) => (j + 1..=n).map(|l| l - 1).sum::<usize>() + (j - 1 - i),
            Root::Diff(i, j) => self.m() + (1..i).map(|k| n - k).sum::<usize>() + (j - i - 1),
        }
    }
}

/// `c = (c_{β_1}, …, c_{β_N})` together with a weight shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LusztigDatum {
    pub n: usize,
    pub c: Vec<u32>,
    pub shift: Weight,
}

#[derive(Serialize)]
struct LusztigJson<'a> {
    n: usize,
    c: &'a [u32],
    shift2: &'a [i32],
}

impl Serialize for LusztigDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LusztigJson { n: self.n, c: &self.c, shift2: &self.shift.0 }.serialize(s)
    }
}

impl LusztigDatum {
    pub fn zero(n: usize, shift: Weight) -> Self {
        LusztigDatum { n, c: vec![0; n * n - n], shift }
    }

    /// `shift − Σ c_β β`.
    pub fn weight(&self) -> Weight {
        let order = convex_order(self.n).expect("datum of rank ≥ 4");
        let mut w = self.shift.clone();
        for (k, &m) in self.c.iter().enumerate() {
            w = &w - &order.beta[k].weight(self.n).scale(m as i32);
        }
        w
    }

    pub fn upper(&self) -> &[u32] {
        &self.c[..self.c.len() / 2]
    }

    pub fn lower(&self) -> &[u32] {
        &self.c[self.c.len() / 2..]
    }
}

impl fmt::Display for LusztigDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.c.iter().map(u32::to_string).collect();
        write!(f, "({}) ⊗ t{}", c.join(","), self.shift)
    }
}

/// Coordinatewise concatenation of a datum supported on `Φ^+(J)` and one
/// supported on `Φ_J`.
pub fn concat(upper: &LusztigDatum, lower: &LusztigDatum) -> Result<LusztigDatum> {
    let m = upper.c.len() / 2;
    if upper.n != lower.n {
        return Err(CrystalError::Support("ranks differ".into()));
    }
    if upper.c[m..].iter().any(|&x| x > 0) || lower.c[..m].iter().any(|&x| x > 0) {
        return Err(CrystalError::Support("supports overlap".into()));
    }
    let c = upper.c[..m].iter().chain(&lower.c[m..]).copied().collect();
    Ok(LusztigDatum { n: upper.n, c, shift: &upper.shift + &lower.shift })
}

/// Pairs `(a, b)` of barred letters with `a < b`, listed with `a` ascending
/// and, for equal `a`, `b` ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Biword {
    pub pairs: Vec<(Letter, Letter)>,
}

impl Biword {
    pub fn new(mut pairs: Vec<(Letter, Letter)>) -> Self {
        pairs.sort();
        Biword { pairs }
    }

    /// `c_{ε_i+ε_j}` counts the pairs `(j̄, ī)`.
    pub fn to_upper(&self, order: &RootOrder) -> Vec<u32> {
        let mut c = vec![0; order.m()];
        for &(a, b) in &self.pairs {
            c[order.index(Root::Sum((-b) as usize, (-a) as usize))] += 1;
        }
        c
    }

    pub fn from_upper(c: &[u32], order: &RootOrder) -> Self {
        let mut pairs = Vec::new();
        for (k, &m) in c.iter().enumerate() {
            if let Root::Sum(i, j) = order.beta[k] {
                for _ in 0..m {
                    pairs.push((-(j as i32), -(i as i32)));
                }
            }
        }
        Biword::new(pairs)
    }

    /// The order in which the Burge steps emit the pairs: `a` ascending and,
    /// for equal `a`, `b` descending.
    pub fn emission_order(&self) -> Vec<(Letter, Letter)> {
        let mut p = self.pairs.clone();
        p.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        p
    }
}

impl fmt::Display for Biword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.pairs.iter().map(|p| letter_to_string(p.0)).collect();
        let b: Vec<String> = self.pairs.iter().map(|p| letter_to_string(p.1)).collect();
        write!(f, "({} / {})", a.join(" "), b.join(" "))
    }
}

fn body_columns(t: &ProfileTableau) -> Result<Vec<Vec<Letter>>> {
    let cols: Vec<Vec<Letter>> = t.columns.iter().filter(|c| c.height() > 0).map(|c| c.entries.clone()).collect();
    if let Some(c) = cols.iter().find(|c| c.len() % 2 == 1) {
        return Err(CrystalError::Shape(format!("body column {c:?} has odd height")));
    }
    if !is_rotated_sst(&cols, t.n) {
        return Err(CrystalError::Shape("body is not a rotated semistandard tableau".into()));
    }
    Ok(cols)
}

/// `κ`: the Burge correspondence on a body tableau, with its biword.
pub fn rsk_burge(t: &ProfileTableau) -> Result<(Biword, LusztigDatum)> {
    let order = convex_order(t.n)?;
    let mut cols = body_columns(t)?;
    let mut pairs = Vec::new();
    while !cols.is_empty() {
        let x = cols.iter().map(|c| c[0]).min().unwrap();
        let c = (0..cols.len()).rev().find(|&k| cols[k][0] == x).unwrap();
        cols[c].remove(0);
        let z = reverse_column_eject(&mut cols, c);
        pairs.push((x, z));
    }
    let biword = Biword::new(pairs);
    let mut c = biword.to_upper(&order);
    c.resize(order.len(), 0);
    Ok((biword, LusztigDatum { n: t.n, c, shift: Weight::zero(t.n) }))
}

/// `κ^{-1}` on the first `M` coordinates.
pub fn rsk_burge_inverse(n: usize, upper: &[u32]) -> Result<ProfileTableau> {
    let order = convex_order(n)?;
    let mut cols: Vec<Vec<Letter>> = Vec::new();
    for &(x, z) in Biword::from_upper(upper, &order).emission_order().iter().rev() {
        let c = reverse_column_insert(&mut cols, z);
        cols[c].insert(0, x);
    }
    Ok(ProfileTableau::new(n, cols.into_iter().map(Column::body_only).collect()))
}

/// Every body tableau over `[n̄]` with even columns and at most `max_size` boxes.
pub fn enumerate_body_tableaux(n: usize, max_size: usize) -> Vec<ProfileTableau> {
    fn subsets(n: usize, h: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == h {
                out.push((0..n as i32).rev().filter(|k| mask & (1 << k) != 0).map(|k| -(k + 1)).collect());
            }
        }
        out
    }
    fn shapes(max_h: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(acc.clone());
        let mut h = 2;
        while h <= max_h && h <= left {
            acc.push(h);
            shapes(h, left - h, acc, out);
            acc.pop();
            h += 2;
        }
    }
    fn fill(n: usize, shape: &[usize], acc: &mut Vec<Column>, out: &mut Vec<ProfileTableau>) {
        if acc.len() == shape.len() {
            out.push(ProfileTableau::new(n, acc.clone()));
            return;
        }
        for e in subsets(n, shape[acc.len()]) {
            let col = Column::body_only(e);
            if acc.last().is_none_or(|r| crate::foundations::rows_weakly_increase(&col, r)) {
                acc.push(col);
                fill(n, shape, acc, out);
                acc.pop();
            }
        }
    }
    let mut all_shapes = Vec::new();
    shapes(n, max_size, &mut Vec::new(), &mut all_shapes);
    let mut out = Vec::new();
    for sh in all_shapes {
        fill(n, &sh, &mut Vec::new(), &mut out);
    }
    out
}

/// Rows of a straight tableau given by columns (index 0 rightmost, top aligned).
fn rows_of(t: &ProfileTableau) -> Vec<Vec<Letter>> {
    let depth = t.columns.iter().map(Column::height).max().unwrap_or(0);
    (0..depth).map(|r| t.columns.iter().rev().filter_map(|c| c.entries.get(r).copied()).collect()).collect()
}

/// `c_J`: `c_{ε_i−ε_j}` counts `ī` in row `n−j+1` of the tail.
pub fn c_lower(t: &ProfileTableau) -> Result<LusztigDatum> {
    let n = t.n;
    let order = convex_order(n)?;
    let mut c = vec![0; order.len()];
    let mut shift = vec![0; n];
    for (k, row) in rows_of(t).iter().enumerate() {
        let j = n - k;
        shift[j - 1] -= 2 * row.len() as i32;
        for &x in row {
            let i = (-x) as usize;
            if i != j {
                c[order.index(Root::Diff(i, j))] += 1;
            }
        }
    }
    Ok(LusztigDatum { n, c, shift: Weight(shift) })
}

/// Inverse of [`c_lower`] on tableaux with the given column heights (left to right).
pub fn c_lower_inverse(n: usize, lower: &[u32], heights: &[usize]) -> Result<ProfileTableau> {
    let order = convex_order(n)?;
    let m = order.m();
    let depth = heights.first().copied().unwrap_or(0);
    let mut rows = Vec::with_capacity(depth);
    for k in 0..depth {
        let j = n - k;
        let len = heights.iter().filter(|&&h| h > k).count();
        let mut row = Vec::with_capacity(len);
        for i in 1..j {
            for _ in 0..lower[order.index(Root::Diff(i, j)) - m] {
                row.push(-(i as i32));
            }
        }
        if row.len() > len {
            return Err(CrystalError::Shape(format!("row {} overfull", k + 1)));
        }
        while row.len() < len {
            row.insert(0, -(j as i32));
        }
        row.sort();
        rows.push(row);
    }
    let cols: Vec<Column> = heights
        .iter()
        .enumerate()
        .rev()
        .map(|(p, &h)| {
            let e: Vec<Letter> = (0..h).map(|k| rows[k][p]).collect();
            Column::new(e.clone(), e.len())
        })
        .collect();
    let t = ProfileTableau::new(n, cols);
    if !t.is_semistandard_along_l() {
        return Err(CrystalError::Shape("datum is not in the image of c_J".into()));
    }
    Ok(t)
}

/// Intermediate values of `Ξ_λ`.
#[derive(Debug, Clone, Serialize)]
pub struct XiTrace {
    pub biword: Biword,
    pub upper: LusztigDatum,
    pub lower: LusztigDatum,
    pub datum: LusztigDatum,
}

pub fn xi_lambda(t: &KnTableau) -> Result<LusztigDatum> {
    Ok(xi_lambda_traced(t)?.datum)
}

pub fn xi_lambda_traced(t: &KnTableau) -> Result<XiTrace> {
    let v = chi_lambda(&psi_lambda(t)?)?;
    let (biword, upper) = rsk_burge(&v.body())?;
    let lower = c_lower(&v.tail())?;
    let mut datum = concat(&upper, &lower)?;
    datum.shift = t.lambda.weight();
    Ok(XiTrace { biword, upper, lower, datum })
}

/// `ε_i, φ_i` of a word under the signature rule.
fn word_stats(w: &[Letter], i: usize, n: usize) -> (usize, usize) {
    let mut s = Vec::new();
    for &x in w {
        if letter_e(x, i, n).is_some() {
            s.push(Sign::Minus);
        }
        if letter_f(x, i, n).is_some() {
            s.push(Sign::Plus);
        }
    }
    let red = reduce_signature(&s);
    (red.iter().filter(|&&x| x == Sign::Minus).count(), red.iter().filter(|&&x| x == Sign::Plus).count())
}

/// `e_i` or `f_i`, `i < n`, on columns read right to left, top to bottom.
fn word_act(cols: &mut [Column], i: usize, n: usize, op: Op) -> Option<()> {
    let w: Vec<Letter> = cols.iter().flat_map(|c| c.entries.iter().copied()).collect();
    let stats: Vec<_> =
        w.iter().map(|&x| Some((letter_e(x, i, n).is_some() as usize, letter_f(x, i, n).is_some() as usize))).collect();
    let mut site = tensor_site(&stats, op)?;
    for col in cols.iter_mut() {
        if site < col.entries.len() {
            let x = col.entries[site];
            col.entries[site] = match op {
                Op::F => letter_f(x, i, n)?,
                Op::E => letter_e(x, i, n)?,
            };
            return Some(());
        }
        site -= col.entries.len();
    }
    None
}

/// `e_n` or `f_n` on a body tableau: `τ` over its own columns padded by `+`.
fn body_act_n(cols: &mut Vec<Column>, n: usize, op: Op) -> Option<()> {
    let nn = n as i32;
    let mut stats: Vec<_> = cols
        .iter()
        .map(|c| {
            let e = &c.entries;
            Some(if e.len() >= 2 && e[0] == -nn && e[1] == -(nn - 1) {
                (1, 0)
            } else if e.first().is_none_or(|&x| x > -(nn - 1)) {
                (0, 1)
            } else {
                (0, 0)
            })
        })
        .collect();
    stats.push(Some((0, 1)));
    let site = tensor_site(&stats, op)?;
    if site == cols.len() {
        cols.push(Column::default());
    }
    match op {
        Op::F => {
            cols[site].entries.splice(0..0, [-nn, -(nn - 1)]);
        }
        Op::E => {
            cols[site].entries.drain(0..2);
            if cols[site].entries.is_empty() && site + 1 == cols.len() {
                cols.pop();
            }
        }
    }
    Some(())
}

/// A point of `B^J ⊗ B_J ⊗ t_{ω_λ}` with the crystal structure carried over
/// from the body crystal through `κ` and from `S_μ` through `c_J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LusztigElement {
    pub datum: LusztigDatum,
    /// Column heights of `μ`, left to right.
    pub mu: Vec<usize>,
}

impl LusztigElement {
    pub fn from_kn(t: &KnTableau) -> Result<Self> {
        let v = chi_lambda(&psi_lambda(t)?)?;
        let datum = xi_lambda(t)?;
        let mu = v.tail().columns.iter().rev().map(Column::height).collect();
        Ok(LusztigElement { datum, mu })
    }

    fn decode(&self) -> Result<(Vec<Column>, Vec<Column>)> {
        let n = self.datum.n;
        let body = rsk_burge_inverse(n, self.datum.upper())?.columns;
        let tail = c_lower_inverse(n, self.datum.lower(), &self.mu)?.columns;
        Ok((body, tail))
    }

    fn encode(&self, body: Vec<Column>, tail: Vec<Column>) -> Option<Self> {
        let n = self.datum.n;
        let (_, upper) = rsk_burge(&ProfileTableau::new(n, body)).ok()?;
        let lower = c_lower(&ProfileTableau::new(n, tail)).ok()?;
        let mut datum = concat(&upper, &lower).ok()?;
        datum.shift = self.datum.shift.clone();
        Some(LusztigElement { datum, mu: self.mu.clone() })
    }

    fn act(&self, i: usize, op: Op) -> Option<Self> {
        let n = self.datum.n;
        let (mut body, mut tail) = self.decode().ok()?;
        if i == n {
            body_act_n(&mut body, n, op)?;
            return self.encode(body, tail);
        }
        let wb: Vec<Letter> = body.iter().flat_map(|c| c.entries.iter().copied()).collect();
        let wt: Vec<Letter> = tail.iter().flat_map(|c| c.entries.iter().copied()).collect();
        let stats = [Some(word_stats(&wb, i, n)), Some(word_stats(&wt, i, n))];
        match tensor_site(&stats, op)? {
            0 => word_act(&mut body, i, n, op)?,
            _ => word_act(&mut tail, i, n, op)?,
        }
        self.encode(body, tail)
    }
}

impl CrystalElement for LusztigElement {
    fn rank(&self) -> usize {
        self.datum.n
    }
    fn e(&self, i: usize) -> Option<Self> {
        self.act(i, Op::E)
    }
    fn f(&self, i: usize) -> Option<Self> {
        self.act(i, Op::F)
    }
    fn weight(&self) -> Weight {
        self.datum.weight()
    }
    fn key(&self) -> String {
        self.datum.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal_core::{generate_component, verify_morphism, MorphismOptions};
    use crate::foundations::DominantWeight;
    use crate::kn_model::kn_highest;

    fn b(v: &[i32]) -> Vec<Letter> {
        v.iter().map(|&x| -x).collect()
    }

    fn section_example() -> KnTableau {
        let lambda = DominantWeight::parse("5/2,3/2,3/2,1/2,-1/2").unwrap();
        KnTableau::new(lambda, vec![vec![2, 3, -5, -4, -1], vec![4, 5, -1], vec![-5]])
    }

    #[test]
    fn convex_order_examples() {
        let o = convex_order(5).unwrap();
        assert_eq!(o.len(), 20);
        assert_eq!(o.beta[0], Root::Sum(4, 5));
        assert_eq!(o.beta[10], Root::Diff(1, 2));
        assert_eq!(o.beta[14], Root::Diff(2, 3));
        assert_eq!(o.beta[17], Root::Diff(3, 4));
        assert_eq!(o.beta[19], Root::Diff(4, 5));
        for (k, &r) in o.beta.iter().enumerate() {
            assert_eq!(o.index(r), k);
        }
        assert!(matches!(convex_order(3), Err(CrystalError::Rank(3))));
    }

    #[test]
    fn burge_example() {
        let body = ProfileTableau::new(5, vec![Column::body_only(b(&[5, 4, 3, 1])), Column::body_only(b(&[5, 1]))]);
        let (w, c) = rsk_burge(&body).unwrap();
        assert_eq!(w.pairs, vec![(-5, -4), (-5, -1), (-3, -1)]);
        let ones: Vec<usize> = c.c.iter().enumerate().filter(|(_, &x)| x == 1).map(|(k, _)| k + 1).collect();
        assert_eq!(ones, vec![1, 4, 9]);
        assert_eq!(rsk_burge_inverse(5, c.upper()).unwrap(), body);
    }

    #[test]
    fn burge_single_column() {
        let body = ProfileTableau::new(5, vec![Column::body_only(b(&[5, 1]))]);
        let (w, c) = rsk_burge(&body).unwrap();
        assert_eq!(w.pairs, vec![(-5, -1)]);
        assert_eq!(c.c[convex_order(5).unwrap().index(Root::Sum(1, 5))], 1);
    }

    #[test]
    fn odd_body_column_is_rejected() {
        let body = ProfileTableau::new(5, vec![Column::body_only(b(&[5]))]);
        assert!(matches!(rsk_burge(&body), Err(CrystalError::Shape(_))));
    }

    #[test]
    fn c_lower_example() {
        let tail = ProfileTableau::new(
            5,
            vec![Column::new(b(&[2]), 1), Column::new(b(&[4, 1]), 2), Column::new(b(&[5, 3, 2, 1]), 4)],
        );
        let d = c_lower(&tail).unwrap();
        let ones: Vec<usize> = d.c.iter().enumerate().filter(|(_, &x)| x == 1).map(|(k, _)| k + 1).collect();
        assert_eq!(ones, vec![11, 13, 15, 17, 18, 20]);
        assert_eq!(c_lower_inverse(5, d.lower(), &[4, 2, 1]).unwrap(), tail);
    }

    #[test]
    fn concat_rejects_overlap() {
        let mut a = LusztigDatum::zero(4, Weight::zero(4));
        a.c[11] = 1;
        assert!(matches!(concat(&a, &LusztigDatum::zero(4, Weight::zero(4))), Err(CrystalError::Support(_))));
    }

    #[test]
    fn end_to_end_example() {
        let tr = xi_lambda_traced(&section_example()).unwrap();
        assert_eq!(tr.biword.pairs, vec![(-5, -4), (-5, -1), (-3, -1)]);
        assert_eq!(tr.datum.c, vec![1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1]);
        assert_eq!(tr.datum.weight(), section_example().weight_of());
    }

    #[test]
    fn highest_maps_to_zero() {
        for lam in crate::oracle::smoke_weights() {
            let d = xi_lambda(&kn_highest(&lam)).unwrap();
            assert!(d.c.iter().all(|&x| x == 0), "{lam}");
            assert_eq!(d.shift, lam.weight());
        }
    }

    #[test]
    fn xi_is_a_morphism_on_smoke_weights() {
        for lam in crate::oracle::smoke_weights() {
            let g = generate_component(kn_highest(&lam), 100_000).unwrap();
            let opts = MorphismOptions { strict_f: false, shift: Weight::zero(4) };
            let rep = verify_morphism(&g, |t| LusztigElement::from_kn(t).ok(), &opts);
            assert!(rep.passed(), "{lam}: {:?}", rep.failures);
        }
    }
}
