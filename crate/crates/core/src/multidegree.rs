//! Multidegrees `R ⊆ [n] × P` presented by layers, and their enumeration.

use std::fmt;

use crate::error::{guard, Error, Result};
use crate::limits::limits;
use crate::poset::{ElemSet, Poset};

/// `R = ∪_i {i} × R_i`, with `layers[i - 1] = R_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree {
    layers: Vec<ElemSet>,
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.layers).finish()
    }
}

impl Multidegree {
    pub fn new(layers: Vec<ElemSet>) -> Self {
        Multidegree { layers }
    }

    /// Parses `"a,b;c"`: layers separated by `;`, elements by `,`. An empty
    /// layer is written as nothing between separators.
    pub fn parse(p: &Poset, n: usize, text: &str) -> Result<Self> {
        let layers = text
            .split(';')
            .map(|layer| {
                let names: Vec<&str> = layer
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect();
                p.subset(&names)
            })
            .collect::<Result<Vec<_>>>()?;
        if layers.len() != n {
            return Err(Error::LayerCount {
                expected: n,
                found: layers.len(),
            });
        }
        Ok(Multidegree { layers })
    }

    pub fn n(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[ElemSet] {
        &self.layers
    }

    /// `R_i` for `1 <= i <= n`.
    pub fn layer(&self, i: usize) -> ElemSet {
        self.layers[i - 1]
    }

    /// `|R| = Σ |R_i|`.
    pub fn total_degree(&self) -> usize {
        self.layers.iter().map(|l| l.len()).sum()
    }

    /// The support as a bitmask over `[n] × P`, slot-major (bit
    /// `(i - 1)·|P| + p`).
    pub fn support_mask(&self, poset_len: usize) -> u64 {
        self.layers
            .iter()
            .enumerate()
            .fold(0, |m, (i, l)| m | (l.0 << (i * poset_len)))
    }

    pub fn from_support_mask(mask: u64, n: usize, poset_len: usize) -> Self {
        let layer_mask = ElemSet::full(poset_len).0;
        Multidegree {
            layers: (0..n)
                .map(|i| ElemSet((mask >> (i * poset_len)) & layer_mask))
                .collect(),
        }
    }

    pub fn union(&self) -> ElemSet {
        self.layers.iter().fold(ElemSet::EMPTY, |u, &l| u.union(l))
    }

    /// Index of the first empty layer, 1-based.
    pub fn first_empty_layer(&self) -> Option<usize> {
        self.layers.iter().position(|l| l.is_empty()).map(|i| i + 1)
    }

    /// `R_1 <= R_2 <= ... <= R_n` in the subset order, all layers nonempty.
    pub fn is_chain(&self, p: &Poset) -> bool {
        self.first_empty_layer().is_none()
            && self
                .layers
                .windows(2)
                .all(|w| p.max_min_leq(p.max_of(w[0]), p.min_of(w[1])))
    }

    /// Both sides of `|R_1| + ... + |R_n| = |∪ R_i| + Σ |R_i ∩ R_{i+1}|`.
    pub fn cardinality_identity(&self) -> (usize, usize) {
        let overlaps: usize = self
            .layers
            .windows(2)
            .map(|w| w[0].intersection(w[1]).len())
            .sum();
        (self.total_degree(), self.union().len() + overlaps)
    }

    pub fn format(&self, p: &Poset) -> String {
        self.layers
            .iter()
            .map(|&l| p.format_set(l))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Lexicographic enumeration of multidegrees of `L(n, P)`.
///
/// With `prune`, only chains `R_1 <= ... <= R_n` of nonempty layers with
/// `|R| <= (|P| - 1) + c(n - 1) + 1` are produced, `c` the width of `P`;
/// all others have vanishing Betti numbers. Without it, every subset of
/// `[n] × P` is produced.
pub fn enumerate_multidegrees(n: usize, p: &Poset, prune: bool) -> Result<Vec<Multidegree>> {
    if n == 0 {
        return Err(Error::InvalidN { min: 1, got: 0 });
    }
    if !prune {
        guard(
            "n·|P| for unpruned enumeration",
            n * p.len(),
            limits().max_oracle_vertices,
        )?;
        let k = p.len();
        let per_layer = 1u64 << k;
        let total = 1u64 << (n * k);
        // Lexicographic in (R_1, ..., R_n): R_1 is the most significant digit.
        return Ok((0..total)
            .map(|x| {
                Multidegree::new(
                    (0..n)
                        .map(|i| ElemSet((x >> ((n - 1 - i) * k)) % per_layer))
                        .collect(),
                )
            })
            .collect());
    }
    let mut out = Vec::new();
    if p.is_empty() {
        return Ok(out);
    }
    let budget = p.len() + p.width() * (n - 1);
    let masks: Vec<ElemSet> = (1..1u64 << p.len()).map(ElemSet).collect();
    let maxes: Vec<ElemSet> = masks.iter().map(|&m| p.max_of(m)).collect();
    let mins: Vec<ElemSet> = masks.iter().map(|&m| p.min_of(m)).collect();
    let mut layers: Vec<usize> = Vec::with_capacity(n);
    fn dfs(
        p: &Poset,
        n: usize,
        budget: usize,
        used: usize,
        ctx: (&[ElemSet], &[ElemSet], &[ElemSet]),
        layers: &mut Vec<usize>,
        out: &mut Vec<Multidegree>,
    ) {
        let (masks, maxes, mins) = ctx;
        if layers.len() == n {
            out.push(Multidegree::new(layers.iter().map(|&k| masks[k]).collect()));
            return;
        }
        let remaining = n - layers.len() - 1;
        for k in 0..masks.len() {
            let size = masks[k].len();
            if used + size + remaining > budget {
                continue;
            }
            if let Some(&prev) = layers.last() {
                if !p.max_min_leq(maxes[prev], mins[k]) {
                    continue;
                }
            }
            layers.push(k);
            dfs(p, n, budget, used + size, ctx, layers, out);
            layers.pop();
        }
    }
    dfs(
        p,
        n,
        budget,
        0,
        (&masks, &maxes, &mins),
        &mut layers,
        &mut out,
    );
    Ok(out)
}
