//! Graded Betti tables for posets whose Hasse diagram is a rooted forest.
//!
//! For a tree with root `a`,
//! `β_{i,j}(n, P) = β_{i,j}(n, P∖a) + β_{i,j-1}(n-1, P) + β_{i-1,j-1}(n, P∖a)`,
//! and a forest's quotient table is the tensor product of the quotient
//! tables of its trees.

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::generators::binomial;
use crate::multidegree::Multidegree;
use crate::poset::Poset;
use crate::table::{tensor_tables, BettiTable, Convention};

/// Ideal-convention tables keyed by `(n, canonical forest code)`.
#[derive(Default)]
pub struct TreeMemo {
    map: DashMap<(usize, String), BettiTable>,
}

impl TreeMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn get(&self, key: &(usize, String)) -> Option<BettiTable> {
        // Clone out so no shard lock is held across the recursion.
        self.map.get(key).map(|e| e.value().clone())
    }

    fn insert(&self, key: (usize, String), t: BettiTable) {
        self.map.insert(key, t);
    }
}

/// Graded Betti table of `L(n, P)` in the ideal convention. `P` must be a
/// rooted forest.
pub fn betti_table_tree(n: usize, p: &Poset, memo: Option<&TreeMemo>) -> Result<BettiTable> {
    if n == 0 {
        return Err(Error::InvalidN { min: 1, got: 0 });
    }
    if !p.is_rooted_forest() {
        return Err(Error::NotForest);
    }
    forest(n, p, memo)
}

fn forest(n: usize, p: &Poset, memo: Option<&TreeMemo>) -> Result<BettiTable> {
    if p.is_empty() {
        return Ok(BettiTable::new(Convention::Ideal));
    }
    let key = (n, p.forest_canonical_form()?);
    if let Some(t) = memo.and_then(|m| m.get(&key)) {
        return Ok(t);
    }
    let components = p.components();
    let table = if components.len() == 1 {
        tree(n, p, memo)?
    } else {
        let mut q = BettiTable::from_entries(Convention::Quotient, [((0, 0), 1)]);
        for c in &components {
            q = tensor_tables(&q, &forest(n, c, memo)?.to_quotient())?;
        }
        q.to_ideal()
    };
    if let Some(m) = memo {
        m.insert(key, table.clone());
    }
    Ok(table)
}

fn tree(n: usize, p: &Poset, memo: Option<&TreeMemo>) -> Result<BettiTable> {
    let size = p.len();
    if n == 1 {
        // Koszul complex on |P| variables.
        return Ok(BettiTable::from_entries(
            Convention::Ideal,
            (0..size).map(|i| ((i, i + 1), binomial(size as u128, i as u128 + 1) as u64)),
        ));
    }
    if size == 1 {
        return Ok(BettiTable::from_entries(Convention::Ideal, [((0, n), 1)]));
    }
    let root = p.unique_min().ok_or(Error::NotTree)?;
    let rest = forest(n, &p.remove_element(p.name(root))?, memo)?;
    let shorter = forest(n - 1, p, memo)?;
    let mut t = rest.clone();
    for (&(i, j), &v) in shorter.entries() {
        t.add(i, j + 1, v);
    }
    for (&(i, j), &v) in rest.entries() {
        t.add(i + 1, j + 1, v);
    }
    Ok(t)
}

/// For a rooted tree `P` and a multidegree with nonempty layers, the unique
/// nonzero multigraded Betti number at `R`: `Some((p, i))` meaning
/// `β_{i,R} = 1` in the `p`-linear strand, `p = 1 + Σ_{i<n} |max(R_i)|`,
/// `i = |R| - p`. `None` when `R` is not a chain in the subset order.
pub fn tree_multigraded_beta(
    n: usize,
    p: &Poset,
    r: &Multidegree,
) -> Result<Option<(usize, usize)>> {
    if !p.is_rooted_forest() || p.unique_min().is_none() {
        return Err(Error::NotTree);
    }
    if r.n() != n {
        return Err(Error::LayerCount {
            expected: n,
            found: r.n(),
        });
    }
    if let Some(k) = r.first_empty_layer() {
        return Err(Error::EmptyLayer(k));
    }
    if !r.is_chain(p) {
        return Ok(None);
    }
    let strand = 1 + (1..n).map(|i| p.max_of(r.layer(i)).len()).sum::<usize>();
    Ok(r.total_degree().checked_sub(strand).map(|i| (strand, i)))
}

/// The table of `L(n, V)` for `V = {a < b, a < c}`: row `n` reads
/// `2n+1, 2n+1, 1` and rows `n+1, ..., 2n-1` read `., 1, 1`.
pub fn v_closed_form(n: usize) -> Result<BettiTable> {
    if n < 2 {
        return Err(Error::InvalidN { min: 2, got: n });
    }
    let g = 2 * n as u64 + 1;
    let mut t = BettiTable::from_entries(
        Convention::Ideal,
        [((0, n), g), ((1, n + 1), g), ((2, n + 2), 1)],
    );
    for j in n + 2..=2 * n {
        t.add(1, j, 1);
        t.add(2, j + 1, 1);
    }
    Ok(t)
}
