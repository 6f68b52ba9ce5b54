//! The isomorphisms between KN tableaux and spinor tuples: `Φ` sends a
//! factor to a single KN column, `Ψ_h` sends a KN column of height `h` back.

use crate::error::{CrystalError, Result};
use crate::foundations::{DominantWeight, Letter};
use crate::kn_model::{validate_kn, KnCheck, KnTableau};
use crate::spinor_model::{pair_f, shape_decomposition, Factor, FactorKind, SpinorTuple};

/// Unbarred letters `i` with `ī ∉ col`, ascending.
fn complement(col: &[Letter], n: usize) -> Vec<Letter> {
    (1..=n as i32).filter(|i| !col.contains(&-i)).collect()
}

/// `Φ(T)`: the KN column of a factor.
pub fn phi(t: &Factor, n: usize) -> Result<Vec<Letter>> {
    if t.kind.is_spin() {
        let mut out = complement(t.l(), n);
        out.extend_from_slice(t.l());
        return Ok(out);
    }
    let d = t.derived()?;
    let (b, r) = match t.kind {
        FactorKind::T(a) => (t.r().len() + a - t.l().len(), t.residue()),
        _ => (t.r().len() - t.l().len(), 0),
    };
    let mut out = complement(&d.hat_right, n);
    for _ in 0..(b - 2 * r) / 2 {
        out.extend([-(n as i32), n as i32]);
    }
    out.extend_from_slice(&d.hat_left);
    Ok(out)
}

/// Splits a KN column into `(T_+, T_−)` after removing `n̄` directly above `n`.
fn split_dominos(col: &[Letter], n: usize) -> (Vec<Letter>, Vec<Letter>) {
    let nn = n as i32;
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    let mut k = 0;
    while k < col.len() {
        if col[k] == -nn && col.get(k + 1) == Some(&nn) {
            k += 2;
            continue;
        }
        if col[k] > 0 {
            plus.push(col[k]);
        } else {
            minus.push(col[k]);
        }
        k += 1;
    }
    (plus, minus)
}

/// `Ψ_h` for a non-spin KN column of height `h`. A full column goes to `T(0)`,
/// or to `T̄(0)` when `negative`.
pub fn psi_column(col: &[Letter], n: usize, negative: bool) -> Result<Factor> {
    let h = col.len();
    let (plus, minus) = split_dominos(col, n);
    let comp: Vec<Letter> = (1..=n as i32).rev().filter(|i| !plus.contains(i)).map(|i| -i).collect();
    if h == n {
        return Ok(if negative { Factor::tbar(minus, comp) } else { Factor::pair(0, minus, comp) });
    }
    let a = n - h;
    let eps = minus.len() % 2;
    let (mut l, mut r) = (minus, comp);
    for _ in 0..a - eps {
        (l, r) = pair_f(&l, &r)
            .ok_or_else(|| CrystalError::InvalidKn(format!("column {col:?}: F vanished early")))?;
    }
    Ok(Factor::pair(a, l, r))
}

/// `Ψ_sp±`: the barred part of a spin column.
pub fn psi_spin(col: &[Letter]) -> Factor {
    Factor::spin(col.iter().copied().filter(|&x| x < 0).collect())
}

/// `Ψ_λ`: KN columns right to left (spin first) become factors leftmost first.
pub fn psi_lambda(t: &KnTableau) -> Result<SpinorTuple> {
    let violations = validate_kn(t, KnCheck::default())?;
    if let Some(v) = violations.first() {
        return Err(CrystalError::InvalidKn(format!("{} {}", v.clause, v.detail)));
    }
    psi_lambda_unchecked(t)
}

/// `Ψ_λ` without validating the input first.
pub fn psi_lambda_unchecked(t: &KnTableau) -> Result<SpinorTuple> {
    let n = t.n;
    let negative = t.lambda.doubled[n - 1] < 0;
    let mut factors: Vec<Factor> =
        t.ordinary().iter().rev().map(|c| psi_column(c, n, negative)).collect::<Result<_>>()?;
    if let Some(sc) = t.spin_column() {
        factors.push(psi_spin(sc));
    }
    Ok(SpinorTuple::new(t.lambda.clone(), factors))
}

/// `Ψ_λ^{-1}` through `Φ`.
pub fn psi_lambda_inverse(s: &SpinorTuple) -> Result<KnTableau> {
    let n = s.n;
    let expected = shape_decomposition(&s.lambda);
    if s.factors.iter().map(|f| f.kind).ne(expected.iter().copied()) {
        return Err(CrystalError::Kind("factor kinds do not match λ".into()));
    }
    let mut columns = Vec::new();
    if s.has_spin() {
        columns.push(phi(s.factors.last().unwrap(), n)?);
    }
    for f in s.factors.iter().rev().filter(|f| !f.kind.is_spin()) {
        columns.push(phi(f, n)?);
    }
    Ok(KnTableau::new(s.lambda.clone(), columns))
}

/// Dimension check helper: the weight λ with the KN and spinor highest elements.
pub fn highest_pair(lambda: &DominantWeight) -> (KnTableau, SpinorTuple) {
    (crate::kn_model::kn_highest(lambda), crate::spinor_model::highest_element(lambda))
}
