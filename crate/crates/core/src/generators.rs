//! Generators of the letterplace ideal `L(n, P)` and the co-letterplace
//! ideal `L(P, n)`, the Stanley-Reisner complex of `L(n, P)`, and its
//! multiplicity.

use std::collections::HashSet;
use std::fmt::Write;

use crate::complex::SComplex;
use crate::error::{guard, Error, Result};
use crate::limits::limits;
use crate::poset::{ElemSet, Poset};

/// The variable `x_{slot, elem}` of `k[x_{[n] × P}]`, with 1-based slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub slot: usize,
    pub elem: usize,
}

impl Variable {
    /// Bit position among the vertices `[n] × P`, slot-major.
    pub fn bit(self, poset_len: usize) -> usize {
        (self.slot - 1) * poset_len + self.elem
    }
}

/// A squarefree monomial, stored as its sorted support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPMonomial {
    support: Vec<Variable>,
}

impl LPMonomial {
    pub fn new(mut support: Vec<Variable>) -> Self {
        support.sort();
        support.dedup();
        LPMonomial { support }
    }

    pub fn support(&self) -> &[Variable] {
        &self.support
    }

    pub fn degree(&self) -> usize {
        self.support.len()
    }

    pub fn mask(&self, poset_len: usize) -> u64 {
        self.support
            .iter()
            .fold(0, |m, v| m | (1 << v.bit(poset_len)))
    }

    /// `x[i,p]*x[j,q]*...`, the letterplace variable naming.
    pub fn format_letterplace(&self, p: &Poset) -> String {
        self.join_vars(|v| format!("x[{},{}]", v.slot, p.name(v.elem)))
    }

    /// `x[p,i]*x[q,j]*...`, the co-letterplace variable naming.
    pub fn format_coletterplace(&self, p: &Poset) -> String {
        let mut vars = self.support.clone();
        vars.sort_by_key(|v| (v.elem, v.slot));
        let mut out = String::new();
        for (k, v) in vars.iter().enumerate() {
            if k > 0 {
                out.push('*');
            }
            let _ = write!(out, "x[{},{}]", p.name(v.elem), v.slot);
        }
        out
    }

    fn join_vars(&self, f: impl Fn(&Variable) -> String) -> String {
        self.support.iter().map(f).collect::<Vec<_>>().join("*")
    }
}

/// Generators `x_{1,p_1} ⋯ x_{n,p_n}` of `L(n, P)`, one per multichain
/// `p_1 <= ... <= p_n`, in lexicographic order of `(p_1, ..., p_n)`.
pub fn lp_generators(n: usize, p: &Poset) -> Result<Vec<LPMonomial>> {
    if n == 0 {
        return Err(Error::InvalidN { min: 1, got: 0 });
    }
    fn extend(p: &Poset, n: usize, chain: &mut Vec<usize>, out: &mut Vec<LPMonomial>) {
        if chain.len() == n {
            out.push(LPMonomial::new(
                chain
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| Variable {
                        slot: i + 1,
                        elem: e,
                    })
                    .collect(),
            ));
            return;
        }
        let candidates = match chain.last() {
            Some(&last) => p.up_set(last),
            None => p.all(),
        };
        for q in candidates.iter() {
            chain.push(q);
            extend(p, n, chain, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    extend(p, n, &mut Vec::with_capacity(n), &mut out);
    Ok(out)
}

/// Generators `∏_p x_{p, i_p}` of `L(P, n)`, one per isotone map
/// `P -> [n]`. The maps are built from chains of down-sets
/// `I_1 ⊆ ... ⊆ I_n = P` with `i_p = min { k : p ∈ I_k }`, and returned in
/// lexicographic order of `(i_p)_p`.
pub fn colp_generators(p: &Poset, n: usize) -> Result<Vec<LPMonomial>> {
    if n == 0 {
        return Err(Error::InvalidN { min: 1, got: 0 });
    }
    let ideals = down_sets(p);
    let mut maps: Vec<Vec<usize>> = Vec::new();
    fn nest(
        ideals: &[ElemSet],
        all: ElemSet,
        n: usize,
        chain: &mut Vec<ElemSet>,
        maps: &mut Vec<Vec<usize>>,
        len: usize,
    ) {
        let below = chain.last().copied().unwrap_or(ElemSet::EMPTY);
        if chain.len() == n - 1 {
            let mut img = vec![n; len];
            for (k, ideal) in chain.iter().enumerate().rev() {
                for e in ideal.iter() {
                    img[e] = k + 1;
                }
            }
            maps.push(img);
            return;
        }
        for &ideal in ideals
            .iter()
            .filter(|i| below.is_subset(**i) && i.is_subset(all))
        {
            chain.push(ideal);
            nest(ideals, all, n, chain, maps, len);
            chain.pop();
        }
    }
    nest(&ideals, p.all(), n, &mut Vec::new(), &mut maps, p.len());
    maps.sort();
    Ok(maps
        .into_iter()
        .map(|img| {
            LPMonomial::new(
                img.iter()
                    .enumerate()
                    .map(|(e, &slot)| Variable { slot, elem: e })
                    .collect(),
            )
        })
        .collect())
}

/// All down-closed subsets of `p`.
pub fn down_sets(p: &Poset) -> Vec<ElemSet> {
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut stack = vec![ElemSet::EMPTY];
    seen.insert(ElemSet::EMPTY);
    while let Some(d) = stack.pop() {
        for m in p.min_of(p.all().difference(d)).iter() {
            let mut e = d;
            e.insert(m);
            if seen.insert(e) {
                stack.push(e);
            }
        }
    }
    let mut out: Vec<ElemSet> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.0));
    out
}

/// Name of the vertex `(slot, elem)` of `Δ(n, P)`.
pub fn vertex_name(p: &Poset, slot: usize, elem: usize) -> String {
    format!("x[{},{}]", slot, p.name(elem))
}

/// The Stanley-Reisner complex `Δ(n, P)` of `L(n, P)` on the vertices
/// `[n] × P`, slot-major.
pub fn delta_complex(n: usize, p: &Poset) -> Result<SComplex> {
    guard(
        "n·|P| for the Stanley-Reisner complex",
        n * p.len(),
        limits().max_complex_vertices,
    )?;
    let vertices = (1..=n)
        .flat_map(|i| (0..p.len()).map(move |e| (i, e)))
        .map(|(i, e)| vertex_name(p, i, e))
        .collect();
    let nonfaces = lp_generators(n, p)?
        .iter()
        .map(|m| m.mask(p.len()))
        .collect();
    SComplex::from_masks(vertices, nonfaces)
}

/// Multiplicity `e(L(n, P)) = |Hom(P, [n])|` together with the bounds
/// `C(n+c-1, c) <= e <= n^c`, `c = |P|`, valid for Cohen-Macaulay ideals of
/// codimension `c` generated in degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub value: u128,
    pub lower: u128,
    pub upper: u128,
}

impl Multiplicity {
    pub fn within_bounds(&self) -> bool {
        self.lower <= self.value && self.value <= self.upper
    }
}

pub fn multiplicity(n: usize, p: &Poset) -> Multiplicity {
    let c = p.len() as u32;
    let m = Multiplicity {
        value: p.count_isotone_maps(&Poset::chain(n)),
        lower: binomial(n as u128 + c as u128 - 1, c as u128),
        upper: (n as u128).saturating_pow(c),
    };
    debug_assert!(
        n == 0 || m.within_bounds(),
        "multiplicity bounds violated: {m:?}"
    );
    m
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}
