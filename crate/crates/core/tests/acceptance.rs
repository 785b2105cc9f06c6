//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Run alone for meaningful timings:
//! `cargo test -p letterplace --test acceptance -- --nocapture`

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use letterplace::check::betas_to_poly;
use letterplace::classify::classify_strands;
use letterplace::generators::{colp_generators, delta_complex, multiplicity};
use letterplace::multidegree::{enumerate_multidegrees, Multidegree};
use letterplace::oracle::{beta_r_oracle, betti_table_oracle, multigraded_oracle};
use letterplace::strand::{beta_poly, betti_table_fast, multigraded_fast};
use letterplace::tree::{betti_table_tree, v_closed_form, TreeMemo};
use letterplace::{FieldSpec, HPoly, Poset};
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn criterion_1() -> Outcome {
    let q = FieldSpec::RATIONALS;
    let mut notes = Vec::new();
    for (name, p, expected) in [
        ("P1", p1(), p1_table()),
        ("7-element", p7(), p7_table()),
        ("8-element", p8(), p8_table()),
    ] {
        let start = Instant::now();
        let tree = betti_table_tree(2, &p, Some(&TreeMemo::new())).map_err(|e| e.to_string())?;
        let t_tree = within(start, Duration::from_secs(5))?;
        ensure(tree == expected, || {
            format!("{name} tree table:\n{}", tree.render_text())
        })?;
        let start = Instant::now();
        let fast = betti_table_fast(2, &p, q).map_err(|e| e.to_string())?;
        let t_fast = within(start, Duration::from_secs(5))?;
        ensure(fast == expected, || {
            format!("{name} strand table:\n{}", fast.render_text())
        })?;
        notes.push(format!("{name} tree {t_tree:.1?} strand {t_fast:.1?}"));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let v = v();
    let memo = TreeMemo::new();
    for n in 2..=6 {
        let t = betti_table_tree(n, &v, Some(&memo)).map_err(|e| e.to_string())?;
        let closed = v_closed_form(n).map_err(|e| e.to_string())?;
        ensure(t == closed, || format!("n = {n}:\n{}", t.render_text()))?;
    }
    let oracle =
        betti_table_oracle(2, &v, FieldSpec::RATIONALS, false).map_err(|e| e.to_string())?;
    ensure(oracle == v_closed_form(2).unwrap(), || {
        format!("oracle at n = 2:\n{}", oracle.render_text())
    })?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("n = 2..6 in {t:.1?}"))
}

fn all_small_posets() -> Vec<Poset> {
    (1..=4).flat_map(labeled_posets).collect()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let posets = all_small_posets();
    let mut compared = 0usize;
    for p in &posets {
        for n in [2, 3] {
            for c in [0, 2] {
                let field = FieldSpec::char(c);
                let oracle = betti_table_oracle(n, p, field, false).map_err(|e| e.to_string())?;
                let fast = betti_table_fast(n, p, field).map_err(|e| e.to_string())?;
                ensure(oracle == fast, || {
                    format!("{p:?} n={n} {field}: graded tables differ")
                })?;
                let values: BTreeMap<Multidegree, HPoly> = multigraded_oracle(n, p, field, false)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .map(|(r, b)| {
                        let poly = betas_to_poly(&r, &b);
                        (r, poly)
                    })
                    .collect();
                for r in enumerate_multidegrees(n, p, false).unwrap() {
                    let fast = beta_poly(n, p, &r, field).map_err(|e| e.to_string())?;
                    let expected = values.get(&r).cloned().unwrap_or_else(HPoly::zero);
                    ensure(fast == expected, || {
                        format!(
                            "{p:?} n={n} {field} R={}: strand {fast}, oracle {expected}",
                            r.format(p)
                        )
                    })?;
                    compared += 1;
                }
            }
        }
    }
    let t = within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{} posets, {compared} multidegrees in {t:.1?}",
        posets.len()
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let q = FieldSpec::RATIONALS;
    let memo = TreeMemo::new();
    let mut count = 0;
    for k in 1..=5 {
        for p in forest_shapes(k) {
            for n in [2, 3] {
                let tree = betti_table_tree(n, &p, Some(&memo)).map_err(|e| e.to_string())?;
                let oracle = betti_table_oracle(n, &p, q, false).map_err(|e| e.to_string())?;
                ensure(tree == oracle, || {
                    format!("{p:?} n={n}: tree and oracle differ")
                })?;
                count += 1;
            }
        }
    }
    let t = within(start, Duration::from_secs(300))?;
    Ok(format!("{count} (forest, n) cases in {t:.1?}"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for p in all_small_posets() {
        let is_chain = p.width() == 1;
        let is_antichain = p.is_antichain(p.all());
        for n in 1..=3 {
            let facets = delta_complex(n, &p)
                .and_then(|d| d.facets())
                .map_err(|e| e.to_string())?
                .len() as u128;
            let gens = colp_generators(&p, n).map_err(|e| e.to_string())?.len() as u128;
            let m = multiplicity(n, &p);
            ensure(facets == gens && gens == m.value, || {
                format!(
                    "{p:?} n={n}: {facets} facets, {gens} generators, multiplicity {}",
                    m.value
                )
            })?;
            ensure(m.within_bounds(), || format!("{p:?} n={n}: bounds {m:?}"))?;
            if n >= 2 {
                ensure((m.value == m.lower) == is_chain, || {
                    format!("{p:?} n={n}: lower bound {m:?}")
                })?;
                ensure((m.value == m.upper) == is_antichain, || {
                    format!("{p:?} n={n}: upper bound {m:?}")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} (poset, n) cases"))
}

fn criterion_6() -> Outcome {
    let q = FieldSpec::RATIONALS;
    let mut cases: Vec<(usize, Poset)> = Vec::new();
    for p in all_small_posets() {
        for n in 1..=3 {
            cases.push((n, p.clone()));
        }
    }
    for n in 2..=4 {
        cases.push((n, v()));
    }
    for p in [p1(), p7(), p8()] {
        cases.push((2, p));
    }
    let mut multidegrees = 0;
    for (n, p) in &cases {
        let m = multigraded_fast(*n, p, q).map_err(|e| e.to_string())?;
        let t = betti_table_fast(*n, p, q).map_err(|e| e.to_string())?;
        let report = classify_strands(*n, p, &m, &t).map_err(|e| e.to_string())?;
        if let Some(f) = report.findings.iter().find(|f| !f.passed) {
            return Err(format!("{p:?} n={n}: {} failed: {}", f.name, f.detail));
        }
        multidegrees += m.len();
    }
    Ok(format!(
        "{} tables, {multidegrees} nonzero multidegrees",
        cases.len()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let p = rp2_poset();
    let r = Multidegree::new(vec![p.min_of(p.all()), p.max_of(p.all())]);
    let q = beta_r_oracle(2, &p, &r, FieldSpec::char(0)).map_err(|e| e.to_string())?;
    let two = beta_r_oracle(2, &p, &r, FieldSpec::char(2)).map_err(|e| e.to_string())?;
    let at: Vec<usize> = two
        .iter()
        .filter(|&(i, &b)| b > q.get(i).copied().unwrap_or(0))
        .map(|(&i, _)| i)
        .collect();
    ensure(!at.is_empty(), || format!("QQ {q:?}, GF(2) {two:?}"))?;
    for (c, oracle) in [(0, &q), (2, &two)] {
        let fast = beta_poly(2, &p, &r, FieldSpec::char(c)).map_err(|e| e.to_string())?;
        ensure(fast == betas_to_poly(&r, oracle), || {
            format!("strand disagrees over char {c}: {fast}")
        })?;
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "GF(2) exceeds QQ at i = {at:?} (GF(2): {two:?}, QQ: {q:?}) in {t:.1?}"
    ))
}

fn criterion_8() -> Outcome {
    const SAMPLES: usize = 60;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = [0usize; 4];
    for c in [0, 2, 3] {
        let f = FieldSpec::char(c);
        for _ in 0..SAMPLES {
            let x = random_complex(&mut rng, "x", 6);
            let y = random_complex(&mut rng, "y", 6);
            let hx = x.reduced_homology_direct(f).unwrap();
            let hy = y.reduced_homology_direct(f).unwrap();
            let j = x.join(&y).unwrap().reduced_homology_direct(f).unwrap();
            ensure(j.shift(1) == &hx.shift(1) * &hy.shift(1), || {
                format!("join law over {f}: {x:?} * {y:?}")
            })?;
            checked[0] += 1;

            let z = random_complex(&mut rng, "z", 8);
            let hz = z.reduced_homology_direct(f).unwrap();
            let s = z.suspension().unwrap().reduced_homology_direct(f).unwrap();
            ensure(s == hz.shift(1), || format!("suspension over {f}: {z:?}"))?;
            checked[1] += 1;

            let (b, left, right) = random_bipartite(&mut rng, 8);
            let reduced = b.reduce_dominated(&left, &right).unwrap();
            ensure(
                reduced.reduced_homology_direct(f).unwrap()
                    == b.reduced_homology_direct(f).unwrap(),
                || format!("reduce_dominated over {f}: {b:?}"),
            )?;
            checked[2] += 1;

            for w in [&z, &b] {
                let chi = reduced_euler_characteristic(w);
                let h = w.reduced_homology_direct(f).unwrap();
                ensure(h.alternating_sum() == chi, || {
                    format!("Euler characteristic over {f}: {w:?}")
                })?;
                let h0 = w.reduced_homology_direct(FieldSpec::RATIONALS).unwrap();
                ensure(h0.alternating_sum() == chi, || {
                    format!("Euler characteristic over QQ: {w:?}")
                })?;
            }
            checked[3] += 1;
        }
    }
    Ok(format!(
        "join {}, suspension {}, domination {}, Euler {} samples over QQ, GF(2), GF(3)",
        checked[0], checked[1], checked[2], checked[3]
    ))
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = Vec::new();
    for (k, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("[criterion {k}] PASS {detail}"),
            Err(detail) => {
                println!("[criterion {k}] FAIL {detail}");
                failed.push(k);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn tree_table_renders_aligned() {
    let text = p1_table().render_text();
    assert!(text.contains("    2: 8 12  6 1"), "{text}");
    assert!(text.contains("    3: .  3  5 2"), "{text}");
}
