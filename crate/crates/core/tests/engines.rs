mod common;

use std::collections::BTreeMap;

use common::*;
use letterplace::check::betas_to_poly;
use letterplace::multidegree::enumerate_multidegrees;
use letterplace::oracle::{beta_r_oracle, betti_table_oracle, multigraded_oracle, Oracle};
use letterplace::strand::{
    betti_table_fast, multigraded_fast, x_complex, y_complex, y_reduced_homology, YComplex,
};
use letterplace::tree::{betti_table_tree, tree_multigraded_beta, TreeMemo};
use letterplace::{ElemSet, Error, FieldSpec, HPoly, Multidegree, Poset};
use proptest::prelude::*;

fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|k| {
        proptest::collection::vec(any::<bool>(), k * (k - 1) / 2).prop_map(move |bits| {
            let mut rel = Vec::new();
            let mut it = bits.into_iter();
            for i in 0..k {
                for j in i + 1..k {
                    if it.next().unwrap() {
                        rel.push((i, j));
                    }
                }
            }
            Poset::from_relations((0..k).map(|i| format!("p{i}")).collect::<Vec<_>>(), &rel)
                .unwrap()
        })
    })
}

#[test]
fn y_matches_x_on_every_pair() {
    for k in 1..=3 {
        for p in labeled_posets(k) {
            for n in [2, 3] {
                for r in enumerate_multidegrees(n, &p, true).unwrap() {
                    for i in 1..n {
                        for c in [0, 2] {
                            let f = FieldSpec::char(c);
                            let x = x_complex(&p, &r, i)
                                .unwrap()
                                .reduced_homology_direct(f)
                                .unwrap();
                            let y = y_reduced_homology(&p, &r, i, f).unwrap();
                            assert_eq!(x, y, "{p:?} R={} i={i} over {f}", r.format(&p));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn y_never_exceeds_width() {
    for p in (1..=4)
        .flat_map(labeled_posets)
        .chain([p1(), p8(), rp2_poset()])
    {
        let c = p.width();
        let sets: Vec<ElemSet> = if p.len() <= 5 {
            (1..1u64 << p.len()).map(ElemSet).collect()
        } else {
            vec![p.all()]
        };
        for &a in &sets {
            for &b in &sets {
                let (ma, mb) = (p.max_of(a), p.min_of(b));
                if !p.subset_leq(a, b).unwrap() {
                    continue;
                }
                if let (_, YComplex::Complex { complex, .. }) = y_complex(&p, ma, mb).unwrap() {
                    assert!(
                        complex.num_vertices() <= c,
                        "{p:?}: {} > {c}",
                        complex.num_vertices()
                    );
                }
            }
        }
    }
}

#[test]
fn zero_shortcut_is_sound() {
    let q = FieldSpec::RATIONALS;
    for k in 1..=3 {
        for p in labeled_posets(k) {
            for n in [2, 3] {
                let oracle = Oracle::new(n, &p).unwrap();
                for r in enumerate_multidegrees(n, &p, false).unwrap() {
                    if !r.is_chain(&p) {
                        assert!(
                            oracle.beta_r(&r, q).unwrap().is_empty(),
                            "{p:?} R={}",
                            r.format(&p)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn pruning_matches_unpruned_oracle() {
    for k in 1..=3 {
        for p in labeled_posets(k) {
            for n in [1, 2] {
                for c in [0, 2] {
                    let f = FieldSpec::char(c);
                    assert_eq!(
                        betti_table_oracle(n, &p, f, true).unwrap(),
                        betti_table_oracle(n, &p, f, false).unwrap(),
                        "{p:?} n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn tree_is_field_independent_and_memo_transparent() {
    for k in 1..=5 {
        for p in forest_shapes(k) {
            for n in 1..=4 {
                let plain = betti_table_tree(n, &p, None).unwrap();
                let memo = TreeMemo::new();
                assert_eq!(betti_table_tree(n, &p, Some(&memo)).unwrap(), plain);
                assert_eq!(betti_table_tree(n, &p, Some(&memo)).unwrap(), plain);
                for c in [0, 2, 3] {
                    assert_eq!(
                        betti_table_fast(n, &p, FieldSpec::char(c)).unwrap(),
                        plain,
                        "{p:?} n={n} char {c}"
                    );
                }
            }
        }
    }
}

#[test]
fn tree_multigraded_values_match_strand() {
    for k in 1..=5 {
        for p in forest_shapes(k)
            .into_iter()
            .filter(|p| p.unique_min().is_some())
        {
            for n in [2, 3] {
                let fast: BTreeMap<Multidegree, HPoly> =
                    multigraded_fast(n, &p, FieldSpec::RATIONALS)
                        .unwrap()
                        .into_iter()
                        .collect();
                for r in enumerate_multidegrees(n, &p, true).unwrap() {
                    let expected = match tree_multigraded_beta(n, &p, &r).unwrap() {
                        Some((strand, _)) => HPoly::monomial(strand as i32, 1),
                        None => HPoly::zero(),
                    };
                    let got = fast.get(&r).cloned().unwrap_or_else(HPoly::zero);
                    assert_eq!(got, expected, "{p:?} R={}", r.format(&p));
                }
            }
        }
    }
}

#[test]
fn tree_engine_refuses_other_posets() {
    let diamond = Poset::parse("a\nb\nc\nd\na < b < d\na < c < d").unwrap();
    assert_eq!(betti_table_tree(2, &diamond, None), Err(Error::NotForest));
    let r = Multidegree::parse(&diamond, 2, "a;d").unwrap();
    assert_eq!(tree_multigraded_beta(2, &diamond, &r), Err(Error::NotTree));
}

#[test]
fn euler_characteristic_per_multidegree_is_field_independent() {
    for p in (1..=3).flat_map(labeled_posets).chain([v(), p1()]) {
        for n in [2, 3] {
            let q: BTreeMap<_, _> = multigraded_oracle(n, &p, FieldSpec::char(0), true)
                .unwrap()
                .into_iter()
                .collect();
            let two: BTreeMap<_, _> = multigraded_oracle(n, &p, FieldSpec::char(2), true)
                .unwrap()
                .into_iter()
                .collect();
            for r in enumerate_multidegrees(n, &p, true).unwrap() {
                let chi = |m: &BTreeMap<Multidegree, BTreeMap<usize, u64>>| -> i64 {
                    m.get(&r)
                        .map(|b| {
                            b.iter()
                                .map(|(&i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
                                .sum()
                        })
                        .unwrap_or(0)
                };
                assert_eq!(chi(&q), chi(&two), "{p:?} R={}", r.format(&p));
            }
        }
    }
}

#[test]
fn characteristic_dependence_in_strand_form() {
    let p = rp2_poset();
    let r = Multidegree::new(vec![p.min_of(p.all()), p.max_of(p.all())]);
    let two = beta_r_oracle(2, &p, &r, FieldSpec::char(2)).unwrap();
    assert_eq!(betas_to_poly(&r, &two), HPoly::from_terms([(4, 1), (5, 1)]));
    assert!(beta_r_oracle(2, &p, &r, FieldSpec::char(3))
        .unwrap()
        .is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn strand_matches_oracle_on_random_posets(p in arb_poset(5), n in 2usize..=3, c in prop::sample::select(vec![0u64, 2, 3])) {
        prop_assume!(n * p.len() <= 15);
        let f = FieldSpec::char(c);
        prop_assert_eq!(betti_table_fast(n, &p, f).unwrap(), betti_table_oracle(n, &p, f, true).unwrap());
    }

    #[test]
    fn projective_dimension_and_regularity(p in arb_poset(6), n in 1usize..=4) {
        let t = betti_table_fast(n, &p, FieldSpec::RATIONALS).unwrap();
        prop_assert_eq!(t.projective_dimension(), Some(p.len() - 1));
        prop_assert_eq!(t.regularity(), Some(p.width() * (n - 1) + 1));
    }
}
