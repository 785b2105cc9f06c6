//! The fast engine. For a multidegree `R` with layers `R_1, ..., R_n`,
//!
//! `β(R, t) = Σ_p β_{|R|-p, R} t^p = t^n · Π_{i<n} H̃(X_i(R), t)`
//!
//! where `X_i(R)` is the edge-ideal complex of the comparability graph
//! between `max(R_i)` and `min(R_{i+1})`. Each factor is computed from a
//! complex on at most `width(P)` vertices.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complex::SComplex;
use crate::error::{guard, Error, Result};
use crate::field::FieldSpec;
use crate::limits::limits;
use crate::multidegree::{enumerate_multidegrees, Multidegree};
use crate::poly::HPoly;
use crate::poset::{ElemSet, Poset};
use crate::table::{BettiTable, Convention};

/// Left-side vertex name in `X_i(R)`.
pub fn left_tag(p: &Poset, e: usize) -> String {
    format!("L:{}", p.name(e))
}

/// Right-side vertex name in `X_i(R)`.
pub fn right_tag(p: &Poset, e: usize) -> String {
    format!("R:{}", p.name(e))
}

fn check_layers(n: usize, r: &Multidegree) -> Result<()> {
    if r.n() != n {
        return Err(Error::LayerCount {
            expected: n,
            found: r.n(),
        });
    }
    Ok(())
}

fn sides(p: &Poset, r: &Multidegree, i: usize) -> Result<(ElemSet, ElemSet)> {
    if i == 0 || i >= r.n() {
        return Err(Error::InvalidN { min: 1, got: i });
    }
    for k in [i, i + 1] {
        if r.layer(k).is_empty() {
            return Err(Error::EmptyLayer(k));
        }
    }
    Ok((p.max_of(r.layer(i)), p.min_of(r.layer(i + 1))))
}

/// `X_i(R)`: tagged copies of `max(R_i)` and `min(R_{i+1})`, with a
/// nonface `{L:p, R:q}` for each `p <= q`.
pub fn x_complex(p: &Poset, r: &Multidegree, i: usize) -> Result<SComplex> {
    let (a, b) = sides(p, r, i)?;
    let left = a.to_vec();
    let right = b.to_vec();
    let mut vertices: Vec<String> = left.iter().map(|&e| left_tag(p, e)).collect();
    vertices.extend(right.iter().map(|&e| right_tag(p, e)));
    let mut nonfaces = Vec::new();
    for (x, &pe) in left.iter().enumerate() {
        for (y, &qe) in right.iter().enumerate() {
            if p.leq(pe, qe) {
                nonfaces.push((1u64 << x) | (1u64 << (left.len() + y)));
            }
        }
    }
    SComplex::from_masks(vertices, nonfaces)
}

/// The complex `Y` whose suspension is homotopy equivalent to `X` once the
/// shared elements `D = max ∩ min` are split off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YComplex {
    /// Both sides lie in `D`: `X` is an iterated suspension of `{∅}`.
    Void,
    /// One side of the remainder is empty: `X` is a cone.
    Cone,
    /// `Y` on the max side (`max_side = true`) or the min side.
    Complex { max_side: bool, complex: SComplex },
}

/// Splits `(max_a, min_b)` into `D` and builds `Y` on the smaller remaining
/// side (the max side on ties):
/// `Y_1 = { S ⊆ A' : S ∩ N(b) = ∅ for some b ∈ B' }`, dually `Y_2`.
pub fn y_complex(p: &Poset, max_a: ElemSet, min_b: ElemSet) -> Result<(usize, YComplex)> {
    let d = max_a.intersection(min_b);
    let a = max_a.difference(d);
    let b = min_b.difference(d);
    let y = match (a.is_empty(), b.is_empty()) {
        (true, true) => YComplex::Void,
        (true, false) | (false, true) => YComplex::Cone,
        _ => {
            let max_side = a.len() <= b.len();
            let (on, other) = if max_side { (a, b) } else { (b, a) };
            let verts = on.to_vec();
            let related = |x: usize, y: usize| if max_side { p.leq(x, y) } else { p.leq(y, x) };
            // Facets: on ∖ N(o) for each vertex o of the other side.
            let facets: Vec<u64> = other
                .iter()
                .map(|o| {
                    verts
                        .iter()
                        .enumerate()
                        .filter(|&(_, &x)| !related(x, o))
                        .fold(0u64, |m, (k, _)| m | (1 << k))
                })
                .collect();
            let names = verts
                .iter()
                .map(|&e| {
                    if max_side {
                        left_tag(p, e)
                    } else {
                        right_tag(p, e)
                    }
                })
                .collect();
            YComplex::Complex {
                max_side,
                complex: SComplex::from_facets(names, &facets)?,
            }
        }
    };
    Ok((d.len(), y))
}

/// `H̃(X, t)` for the comparability complex between `max_a` and `min_b`:
/// `t^{|D|} · t · H̃(Y, t)`.
pub fn pair_homology(p: &Poset, max_a: ElemSet, min_b: ElemSet, field: FieldSpec) -> Result<HPoly> {
    if !p.max_min_leq(max_a, min_b) {
        return Ok(HPoly::zero());
    }
    let (d, y) = y_complex(p, max_a, min_b)?;
    let h = match y {
        YComplex::Void => HPoly::monomial(-1, 1),
        YComplex::Cone => return Ok(HPoly::zero()),
        YComplex::Complex { complex, .. } => complex.reduced_homology(field)?.shift(1),
    };
    Ok(h.shift(d as i32))
}

/// `H̃(X_i(R), t)` through `Y`, without building `X_i(R)`.
pub fn y_reduced_homology(p: &Poset, r: &Multidegree, i: usize, field: FieldSpec) -> Result<HPoly> {
    let (a, b) = sides(p, r, i)?;
    pair_homology(p, a, b, field)
}

/// `β(R, t)`; zero when a layer is empty or consecutive layers are not
/// related in the subset order.
pub fn beta_poly(n: usize, p: &Poset, r: &Multidegree, field: FieldSpec) -> Result<HPoly> {
    check_layers(n, r)?;
    if r.first_empty_layer().is_some() {
        return Ok(HPoly::zero());
    }
    let mut poly = HPoly::monomial(n as i32, 1);
    for i in 1..n {
        poly = &poly * &pair_homology(p, p.max_of(r.layer(i)), p.min_of(r.layer(i + 1)), field)?;
        if poly.is_zero() {
            break;
        }
    }
    Ok(poly)
}

/// Places the coefficients of `β(R, t)` into the table: `t^p` contributes
/// to `β_{|R|-p, |R|}`.
pub fn add_poly(table: &mut BettiTable, r: &Multidegree, poly: &HPoly) {
    let size = r.total_degree() as i32;
    for (p, c) in poly.terms() {
        if size >= p {
            table.add((size - p) as usize, size as usize, c);
        }
    }
}

fn check_guards(n: usize, p: &Poset) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidN { min: 1, got: 0 });
    }
    let l = limits();
    guard("|P| for the strand engine", p.len(), l.max_strand_elements)?;
    guard("n for the strand engine", n, l.max_strand_n)
}

/// Nonzero `β(R, t)` over the pruned multidegrees, in enumeration order.
///
/// Each distinct pair `(max(R_i), min(R_{i+1}))` is evaluated once; the
/// pairs are evaluated in parallel.
pub fn multigraded_fast(
    n: usize,
    p: &Poset,
    field: FieldSpec,
) -> Result<Vec<(Multidegree, HPoly)>> {
    check_guards(n, p)?;
    let rs = enumerate_multidegrees(n, p, true)?;
    let key = |r: &Multidegree, i: usize| (p.max_of(r.layer(i)), p.min_of(r.layer(i + 1)));
    let mut pairs: Vec<(ElemSet, ElemSet)> = rs
        .iter()
        .flat_map(|r| (1..n).map(move |i| key(r, i)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let values = pairs
        .par_iter()
        .map(|&(a, b)| pair_homology(p, a, b, field))
        .collect::<Result<Vec<_>>>()?;
    let cache: HashMap<(ElemSet, ElemSet), HPoly> = pairs.into_iter().zip(values).collect();
    let mut out = Vec::new();
    for r in rs {
        let mut poly = HPoly::monomial(n as i32, 1);
        for i in 1..n {
            poly = &poly * &cache[&key(&r, i)];
        }
        if !poly.is_zero() {
            out.push((r, poly));
        }
    }
    Ok(out)
}

/// Graded Betti table of `L(n, P)` in the ideal convention.
pub fn betti_table_fast(n: usize, p: &Poset, field: FieldSpec) -> Result<BettiTable> {
    let mut t = BettiTable::new(Convention::Ideal);
    for (r, poly) in multigraded_fast(n, p, field)? {
        add_poly(&mut t, &r, &poly);
    }
    Ok(t)
}
