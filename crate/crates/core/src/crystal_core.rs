//! Crystal contract, signature rule, tensor rule, component generation and
//! morphism checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CrystalError, Result};
use crate::foundations::Weight;

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// An element of a finite-rank type D_n crystal, indices `1..=n`.
pub trait CrystalElement: Clone + Eq + Hash + Send + Sync {
    fn rank(&self) -> usize;
    fn e(&self, i: usize) -> Option<Self>;
    fn f(&self, i: usize) -> Option<Self>;
    fn weight(&self) -> Weight;
    /// Compact serialization used for deduplication and output.
    fn key(&self) -> String;

    fn epsilon(&self, i: usize) -> usize {
        let mut k = 0;
        let mut b = self.clone();
        while let Some(c) = b.e(i) {
            b = c;
            k += 1;
        }
        k
    }

    fn phi(&self, i: usize) -> usize {
        let mut k = 0;
        let mut b = self.clone();
        while let Some(c) = b.f(i) {
            b = c;
            k += 1;
        }
        k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
    Dot,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Dot => '.',
        }
    }
}

pub fn signature_to_string(s: &[Sign]) -> String {
    s.iter().map(|x| x.symbol()).collect()
}

/// Cancels `+` at a smaller index against `−` at a larger index, ignoring dots,
/// until no such neighbouring pair is left.
pub fn reduce_signature(s: &[Sign]) -> Vec<Sign> {
    let mut out = s.to_vec();
    let mut open: Vec<usize> = Vec::new();
    for k in 0..out.len() {
        match out[k] {
            Sign::Plus => open.push(k),
            Sign::Minus => {
                if let Some(p) = open.pop() {
                    out[p] = Sign::Dot;
                    out[k] = Sign::Dot;
                }
            }
            Sign::Dot => {}
        }
    }
    out
}

/// Index where `f` acts on a reduced signature: the smallest surviving `+`.
pub fn f_site(reduced: &[Sign]) -> Option<usize> {
    reduced.iter().position(|&x| x == Sign::Plus)
}

/// Index where `e` acts on a reduced signature: the largest surviving `−`.
pub fn e_site(reduced: &[Sign]) -> Option<usize> {
    reduced.iter().rposition(|&x| x == Sign::Minus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    E,
    F,
}

/// Tensor rule on `b_0 ⊗ b_1 ⊗ …` given `(ε, φ)` per factor (`None` for −∞).
/// Each factor contributes `ε` minuses followed by `φ` pluses; after
/// reduction `f` acts at the leftmost `+` and `e` at the rightmost `−`.
/// Returns the index of the acting factor.
pub fn tensor_site(stats: &[Option<(usize, usize)>], op: Op) -> Option<usize> {
    let mut signs = Vec::new();
    let mut owner = Vec::new();
    for (k, st) in stats.iter().enumerate() {
        if let Some((eps, phi)) = st {
            for _ in 0..*eps {
                signs.push(Sign::Minus);
                owner.push(k);
            }
            for _ in 0..*phi {
                signs.push(Sign::Plus);
                owner.push(k);
            }
        }
    }
    let red = reduce_signature(&signs);
    let site = match op {
        Op::F => f_site(&red),
        Op::E => e_site(&red),
    };
    site.map(|p| owner[p])
}

/// Element of the one-point crystal `t_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OnePoint(pub Weight);

impl CrystalElement for OnePoint {
    fn rank(&self) -> usize {
        self.0.n()
    }
    fn e(&self, _i: usize) -> Option<Self> {
        None
    }
    fn f(&self, _i: usize) -> Option<Self> {
        None
    }
    fn weight(&self) -> Weight {
        self.0.clone()
    }
    fn key(&self) -> String {
        format!("t{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct CrystalGraph<E> {
    pub nodes: Vec<E>,
    pub index: HashMap<E, usize>,
    /// `(source, i, target)` with `target = f_i(source)`.
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Serialize)]
struct GraphJson {
    nodes: Vec<String>,
    edges: Vec<(usize, usize, usize)>,
}

impl<E: CrystalElement> CrystalGraph<E> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            nodes: self.nodes.iter().map(CrystalElement::key).collect(),
            edges: self.edges.clone(),
        })
        .expect("graph serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n");
        for (k, v) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{k} [label=\"{}\"];", v.key().replace('"', "'"));
        }
        for (u, i, v) in &self.edges {
            let _ = writeln!(s, "  n{u} -> n{v} [label=\"{i}\"];");
        }
        s.push_str("}\n");
        s
    }

    /// Edge colours out of every node, with targets.
    pub fn out_edges(&self) -> Vec<BTreeMap<usize, usize>> {
        let mut out = vec![BTreeMap::new(); self.nodes.len()];
        for &(u, i, v) in &self.edges {
            out[u].insert(i, v);
        }
        out
    }
}

/// Budget from `CRYSTALD_BUDGET`, else the default.
pub fn budget_from_env() -> usize {
    std::env::var("CRYSTALD_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|v| *v >= 1.0)
        .map(|v| v as usize)
        .unwrap_or(DEFAULT_BUDGET)
}

/// Closure of `hw` under all `f_i`, breadth first. Each frontier is expanded
/// in parallel; node order is deterministic.
pub fn generate_component<E: CrystalElement>(hw: E, budget: usize) -> Result<CrystalGraph<E>> {
    let n = hw.rank();
    let mut nodes = vec![hw.clone()];
    let mut index = HashMap::new();
    index.insert(hw, 0usize);
    let mut edges = Vec::new();
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let expanded: Vec<Vec<(usize, usize, E)>> = frontier
            .par_iter()
            .map(|&u| (1..=n).filter_map(|i| nodes[u].f(i).map(|v| (u, i, v))).collect())
            .collect();
        let mut next = Vec::new();
        for (u, i, v) in expanded.into_iter().flatten() {
            let t = match index.get(&v) {
                Some(&t) => t,
                None => {
                    let t = nodes.len();
                    if t >= budget {
                        return Err(CrystalError::TooLarge(budget));
                    }
                    index.insert(v.clone(), t);
                    nodes.push(v);
                    next.push(t);
                    t
                }
            };
            edges.push((u, i, t));
        }
        frontier = next;
    }
    Ok(CrystalGraph { nodes, index, edges })
}

/// Labels every node by its lexicographically smallest f-path from node 0 and
/// returns the sorted edge list in those labels.
pub fn canonical_form<E: CrystalElement>(g: &CrystalGraph<E>) -> Vec<(Vec<usize>, usize, Vec<usize>)> {
    let out = g.out_edges();
    let mut label: Vec<Option<Vec<usize>>> = vec![None; g.len()];
    if g.is_empty() {
        return Vec::new();
    }
    label[0] = Some(Vec::new());
    // BFS visits shorter paths first; within a level, parents are processed in
    // label order and colours ascending, which yields lexicographic minima.
    let mut level = vec![0usize];
    while !level.is_empty() {
        level.sort_by(|a, b| label[*a].cmp(&label[*b]));
        let mut next = Vec::new();
        for &u in &level {
            for (&i, &v) in &out[u] {
                if label[v].is_none() {
                    let mut p = label[u].clone().unwrap();
                    p.push(i);
                    label[v] = Some(p);
                    next.push(v);
                }
            }
        }
        level = next;
    }
    let mut edges: Vec<_> = g
        .edges
        .iter()
        .map(|&(u, i, v)| (label[u].clone().unwrap(), i, label[v].clone().unwrap()))
        .collect();
    edges.sort();
    edges
}

/// Result of [`verify_morphism`].
#[derive(Debug, Clone, Default, Serialize)]
pub struct MorphismReport {
    pub nodes: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

#[derive(Debug, Clone)]
pub struct MorphismOptions {
    /// Require `f_i x = 0 ⇒ f_i map(x) = 0`.
    pub strict_f: bool,
    /// `wt(map(x)) = wt(x) + shift`.
    pub shift: Weight,
}

impl MorphismOptions {
    /// Isomorphism onto a component: strict on `f`, no weight shift.
    pub fn isomorphism(n: usize) -> Self {
        MorphismOptions { strict_f: true, shift: Weight::zero(n) }
    }
}

/// Checks that `map` commutes with every `e_i` and with every nonzero `f_i`
/// (and with zero `f_i` too when `strict_f`), shifts weights by a constant and
/// is injective on the component.
pub fn verify_morphism<E, T, M>(g: &CrystalGraph<E>, map: M, opts: &MorphismOptions) -> MorphismReport
where
    E: CrystalElement,
    T: CrystalElement,
    M: Fn(&E) -> Option<T> + Sync,
{
    let images: Vec<Option<T>> = g.nodes.par_iter().map(&map).collect();
    let mut rep = MorphismReport { nodes: g.len(), ..Default::default() };
    let n = g.nodes.first().map(|x| x.rank()).unwrap_or(0);
    let mut seen: HashMap<&T, usize> = HashMap::new();
    for (k, x) in g.nodes.iter().enumerate() {
        let Some(y) = &images[k] else {
            rep.fail(format!("map undefined on {}", x.key()));
            continue;
        };
        if let Some(prev) = seen.insert(y, k) {
            rep.fail(format!("not injective: {} and {} ↦ {}", g.nodes[prev].key(), x.key(), y.key()));
        }
        rep.checks += 1;
        let expect = &x.weight() + &opts.shift;
        if y.weight() != expect {
            rep.fail(format!("weight of {}: {} vs {}", x.key(), y.weight(), expect));
        }
        for i in 1..=n {
            rep.checks += 2;
            let ex = x.e(i).map(|z| g.index.get(&z).and_then(|&t| images[t].as_ref()));
            let ey = y.e(i);
            match (ex, &ey) {
                (None, None) => {}
                (Some(Some(a)), Some(b)) if a == b => {}
                _ => rep.fail(format!("e_{i} does not commute at {}", x.key())),
            }
            let fx = x.f(i);
            match fx {
                Some(z) => {
                    let want = g.index.get(&z).and_then(|&t| images[t].as_ref());
                    if want != y.f(i).as_ref() || want.is_none() {
                        rep.fail(format!("f_{i} does not commute at {}", x.key()));
                    }
                }
                None => {
                    if opts.strict_f && y.f(i).is_some() {
                        rep.fail(format!("f_{i} vanishes at {} but not on its image", x.key()));
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use Sign::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_signature(&[Minus, Plus, Plus, Minus, Dot]), vec![Minus, Plus, Dot, Dot, Dot]);
        assert_eq!(reduce_signature(&[Minus, Dot, Plus, Dot, Dot]), vec![Minus, Dot, Plus, Dot, Dot]);
        assert_eq!(reduce_signature(&[Dot, Dot]), vec![Dot, Dot]);
    }

    fn sign_strategy() -> impl Strategy<Value = Vec<Sign>> {
        prop::collection::vec(prop_oneof![Just(Plus), Just(Minus), Just(Dot)], 0..24)
    }

    /// Cancels a randomly chosen neighbouring (+, −) pair at each step.
    fn reduce_random(s: &[Sign], seed: u64) -> Vec<Sign> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut out = s.to_vec();
        loop {
            let live: Vec<usize> = (0..out.len()).filter(|&k| out[k] != Dot).collect();
            let pairs: Vec<(usize, usize)> = live
                .windows(2)
                .filter(|w| out[w[0]] == Plus && out[w[1]] == Minus)
                .map(|w| (w[0], w[1]))
                .collect();
            match pairs.choose(&mut rng) {
                Some(&(p, m)) => {
                    out[p] = Dot;
                    out[m] = Dot;
                }
                None => return out,
            }
        }
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(s in sign_strategy(), seed in any::<u64>()) {
            prop_assert_eq!(reduce_signature(&s), reduce_random(&s, seed));
        }

        #[test]
        fn reduced_word_is_minus_then_plus(s in sign_strategy()) {
            let r = reduce_signature(&s);
            let live: Vec<Sign> = r.into_iter().filter(|&x| x != Dot).collect();
            let first_plus = live.iter().position(|&x| x == Plus).unwrap_or(live.len());
            prop_assert!(live[first_plus..].iter().all(|&x| x == Plus));
        }
    }

    #[test]
    fn tensor_freeze() {
        assert_eq!(tensor_site(&[Some((0, 1)), None], Op::F), Some(0));
        assert_eq!(tensor_site(&[None, Some((0, 0))], Op::F), None);
        assert_eq!(tensor_site(&[Some((0, 1)), Some((1, 0))], Op::F), None);
        assert_eq!(tensor_site(&[Some((1, 0)), Some((0, 1))], Op::F), Some(1));
        assert_eq!(tensor_site(&[Some((1, 0)), Some((0, 1))], Op::E), Some(0));
    }

    #[test]
    fn one_point_component() {
        let g = generate_component(OnePoint(Weight::zero(4)), 10).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.edges.is_empty());
    }
}
