use std::sync::OnceLock;

use proptest::prelude::*;

use crystald_core::crystal_core::{CrystalElement, Op};
use crystald_core::foundations::{is_rotated_sst, reverse_column_eject, reverse_column_insert, Letter, ProfileTableau, Weight};
use crystald_core::lusztig::{c_lower, c_lower_inverse, enumerate_body_tableaux, rsk_burge, rsk_burge_inverse};
use crystald_core::separation::{bicrystal, chi_lambda, VermaElement};
use crystald_core::verify::{components, weights_for, Components};

fn smoke() -> &'static [Components] {
    static COMPS: OnceLock<Vec<Components>> = OnceLock::new();
    COMPS.get_or_init(|| components(&weights_for(4), 1_000_000).expect("smoke components"))
}

fn bodies() -> &'static [ProfileTableau] {
    static BODIES: OnceLock<Vec<ProfileTableau>> = OnceLock::new();
    BODIES.get_or_init(|| enumerate_body_tableaux(4, 8))
}

fn bottom_aligned(t: &ProfileTableau) -> Vec<Vec<Letter>> {
    t.columns.iter().map(|c| c.entries.clone()).collect()
}

/// A smoke component and one of its spinor elements.
fn spinor_pick() -> impl Strategy<Value = (usize, usize)> {
    (0..smoke().len()).prop_flat_map(|c| (Just(c), 0..smoke()[c].spinor.len()))
}

/// Walk down from χ of a spinor element by the given colours, skipping dead ends.
fn verma_walk(c: usize, k: usize, walk: &[usize]) -> VermaElement {
    let mut v = chi_lambda(&smoke()[c].spinor.nodes[k]).expect("χ defined on the component");
    for &i in walk {
        if let Some(w) = v.f(i) {
            v = w;
        }
    }
    v
}

fn tail_weight(t: &ProfileTableau) -> Weight {
    let mut w = vec![0; t.n];
    for x in t.word() {
        w[(-x) as usize - 1] -= 2;
    }
    Weight(w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn insert_then_eject_is_identity(k in 0..bodies().len(), x in -4i32..=-1) {
        let before = bottom_aligned(&bodies()[k]);
        let mut cols = before.clone();
        let c = reverse_column_insert(&mut cols, x);
        prop_assert!(is_rotated_sst(&cols, 4));
        prop_assert_eq!(cols.iter().map(Vec::len).sum::<usize>(), before.iter().map(Vec::len).sum::<usize>() + 1);
        prop_assert_eq!(reverse_column_eject(&mut cols, c), x);
        prop_assert_eq!(cols, before);
    }

    #[test]
    fn burge_round_trip(k in 0..bodies().len()) {
        let t = &bodies()[k];
        let (_, d) = rsk_burge(t).unwrap();
        prop_assert_eq!(&rsk_burge_inverse(4, d.upper()).unwrap(), t);
    }

    #[test]
    fn kn_and_spinor_operators_are_partial_inverses((c, k) in spinor_pick(), i in 1usize..=4) {
        let comp = &smoke()[c];
        let s = &comp.spinor.nodes[k];
        if let Some(fs) = s.f(i) {
            prop_assert_eq!(fs.e(i), Some(s.clone()));
            let drop = &s.weight() - &fs.weight();
            prop_assert_eq!(drop, Weight::alpha(4, i));
        }
        if let Some(es) = s.e(i) {
            prop_assert_eq!(es.f(i), Some(s.clone()));
        }
        let t = &comp.kn.nodes[k % comp.kn.len()];
        if let Some(ft) = t.f(i) {
            prop_assert_eq!(ft.e(i), Some(t.clone()));
            let drop = &t.weight() - &ft.weight();
            prop_assert_eq!(drop, Weight::alpha(4, i));
        }
    }

    #[test]
    fn bicrystal_e_undoes_f((c, k) in spinor_pick(), j in 0usize..12) {
        let cols = smoke()[c].spinor.nodes[k].flatten();
        if let Some(after) = bicrystal(&cols, j, Op::F) {
            prop_assert_eq!(bicrystal(&after, j, Op::E), Some(cols));
        }
    }

    #[test]
    fn verma_e_n_undoes_f_n((c, k) in spinor_pick(), walk in proptest::collection::vec(1usize..=4, 0..12)) {
        let v = verma_walk(c, k, &walk);
        let fv = v.f(4).expect("f_n never vanishes on the Verma crystal");
        prop_assert_eq!(fv.e(4), Some(v));
    }

    #[test]
    fn verma_operators_shift_weight((c, k) in spinor_pick(), walk in proptest::collection::vec(1usize..=4, 0..12), i in 1usize..=4) {
        let v = verma_walk(c, k, &walk);
        if let Some(fv) = v.f(i) {
            let drop = &v.weight() - &fv.weight();
            prop_assert_eq!(drop, Weight::alpha(4, i));
            prop_assert_eq!(fv.e(i), Some(v.clone()));
        }
    }

    #[test]
    fn c_lower_inverts_and_keeps_weight((c, k) in spinor_pick(), walk in proptest::collection::vec(1usize..=4, 0..12)) {
        let tail = verma_walk(c, k, &walk).tail();
        let d = c_lower(&tail).unwrap();
        prop_assert_eq!(d.weight(), tail_weight(&tail));
        let mut heights: Vec<usize> = tail.columns.iter().map(|c| c.height()).collect();
        heights.reverse();
        let back = c_lower_inverse(4, d.lower(), &heights).unwrap();
        prop_assert_eq!(back.word(), tail.word());
    }
}

#[test]
fn highest_elements_are_killed_by_every_e() {
    for comp in smoke() {
        for i in 1..=4 {
            assert!(comp.kn.nodes[0].e(i).is_none(), "{} e_{i}", comp.lambda);
            assert!(comp.spinor.nodes[0].e(i).is_none(), "{} e_{i}", comp.lambda);
        }
    }
}
