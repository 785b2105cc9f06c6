#![allow(dead_code)]

use std::collections::BTreeSet;

use letterplace::{BettiTable, Poset, SComplex};
use rand::rngs::StdRng;
use rand::Rng;

pub fn v() -> Poset {
    Poset::parse("a\nb\nc\na < b\na < c").unwrap()
}

/// Four-element tree: b < c < d, b < e.
pub fn p1() -> Poset {
    Poset::parse("b\nc\nd\ne\nb < c < d\nb < e").unwrap()
}

/// `p1` next to the chain f < g < h.
pub fn p7() -> Poset {
    Poset::parse("b\nc\nd\ne\nf\ng\nh\nb < c < d\nb < e\nf < g < h").unwrap()
}

/// `p7` under a common root a.
pub fn p8() -> Poset {
    Poset::parse("a\nb\nc\nd\ne\nf\ng\nh\na < b\na < f\nb < c < d\nb < e\nf < g < h").unwrap()
}

pub fn p1_table() -> BettiTable {
    BettiTable::from_rows(2, &[&[8, 12, 6, 1], &[0, 3, 5, 2]])
}

pub fn p7_table() -> BettiTable {
    BettiTable::from_rows(
        2,
        &[
            &[14, 20, 9, 1],
            &[0, 51, 141, 158, 90, 26, 3],
            &[0, 0, 18, 54, 61, 31, 6],
        ],
    )
}

pub fn p8_table() -> BettiTable {
    BettiTable::from_rows(
        2,
        &[
            &[22, 62, 85, 80, 57, 28, 8, 1],
            &[0, 51, 192, 299, 248, 116, 29, 3],
            &[0, 0, 18, 72, 115, 92, 37, 6],
        ],
    )
}

/// Triangles of the six-vertex projective plane.
pub const RP2: [[usize; 3]; 10] = [
    [1, 2, 3],
    [1, 3, 4],
    [1, 4, 5],
    [1, 5, 6],
    [1, 2, 6],
    [2, 3, 5],
    [3, 4, 6],
    [2, 4, 5],
    [3, 5, 6],
    [2, 4, 6],
];

/// Minimal elements a1..a6, maximal b1..b10, with a_i < b_j iff vertex i
/// is not in triangle j.
pub fn rp2_poset() -> Poset {
    let mut text = String::new();
    for i in 1..=6 {
        text.push_str(&format!("a{i}\n"));
    }
    for j in 1..=10 {
        text.push_str(&format!("b{j}\n"));
    }
    for (j, f) in RP2.iter().enumerate() {
        for i in 1..=6 {
            if !f.contains(&i) {
                text.push_str(&format!("a{i} < b{}\n", j + 1));
            }
        }
    }
    Poset::parse(&text).unwrap()
}

/// All partial orders on `k` labeled elements.
pub fn labeled_posets(k: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << pairs.len() {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| bits >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let has = |i: usize, j: usize| rel.contains(&(i, j));
        let antisymmetric = rel.iter().all(|&(i, j)| !has(j, i));
        let transitive = rel.iter().all(|&(i, j)| {
            rel.iter()
                .filter(|&&(x, _)| x == j)
                .all(|&(_, l)| has(i, l))
        });
        if antisymmetric && transitive {
            let names: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
            out.push(Poset::from_relations(names, &rel).unwrap());
        }
    }
    out
}

/// Rooted forests on `k` nodes, one per isomorphism class.
pub fn forest_shapes(k: usize) -> Vec<Poset> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // parent[i] in {none} ∪ {0..i}: every labeled forest with a
    // topological labeling arises.
    let mut parent = vec![0usize; k];
    loop {
        let names: Vec<String> = (0..k).map(|i| format!("t{i}")).collect();
        let rel: Vec<(usize, usize)> = (1..k)
            .filter(|&i| parent[i] > 0)
            .map(|i| (parent[i] - 1, i))
            .collect();
        let p = Poset::from_relations(names, &rel).unwrap();
        if seen.insert(p.forest_canonical_form().unwrap()) {
            out.push(p);
        }
        // Odometer over parent[i] in 0..=i, where 0 means a root.
        let mut i = 1;
        while i < k && parent[i] == i {
            parent[i] = 0;
            i += 1;
        }
        if i >= k {
            break;
        }
        parent[i] += 1;
    }
    out
}

pub fn vertex_names(prefix: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

/// A complex on `1..=max_vertices` vertices with up to five random nonfaces.
pub fn random_complex(rng: &mut StdRng, prefix: &str, max_vertices: usize) -> SComplex {
    let k = rng.gen_range(1..=max_vertices);
    let full = (1u64 << k) - 1;
    let count = rng.gen_range(0..=5);
    let nonfaces: Vec<u64> = (0..count).map(|_| rng.gen_range(1..=full)).collect();
    SComplex::from_masks(vertex_names(prefix, k), nonfaces).unwrap()
}

/// A bipartite edge-ideal complex; returns it with its two sides.
pub fn random_bipartite(
    rng: &mut StdRng,
    max_vertices: usize,
) -> (SComplex, Vec<String>, Vec<String>) {
    let total = rng.gen_range(2..=max_vertices);
    let left = rng.gen_range(1..total);
    let names = vertex_names("v", total);
    let mut nonfaces = Vec::new();
    for a in 0..left {
        for b in left..total {
            if rng.gen_bool(0.5) {
                nonfaces.push((1u64 << a) | (1u64 << b));
            }
        }
    }
    let (l, r) = names.split_at(left);
    let (l, r) = (l.to_vec(), r.to_vec());
    (SComplex::from_masks(names, nonfaces).unwrap(), l, r)
}

/// `Σ_k (-1)^{k-1} · #{faces with k vertices}`, the empty face included.
pub fn reduced_euler_characteristic(x: &SComplex) -> i64 {
    x.f_vector()
        .unwrap()
        .iter()
        .enumerate()
        .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
        .sum()
}
