//! Ground truth by Hochster's formula:
//! `β_{i,R} = dim H̃_{|R|-i-2}(Δ(n,P)|_R)`, read off the restricted
//! Stanley-Reisner complex for every multidegree.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::complex::SComplex;
use crate::error::{guard, Error, Result};
use crate::field::FieldSpec;
use crate::generators::delta_complex;
use crate::limits::limits;
use crate::multidegree::{enumerate_multidegrees, Multidegree};
use crate::poset::Poset;
use crate::table::{BettiTable, Convention};

/// `Δ(n, P)` built once, queried per multidegree.
pub struct Oracle {
    n: usize,
    poset_len: usize,
    delta: SComplex,
}

impl Oracle {
    pub fn new(n: usize, p: &Poset) -> Result<Oracle> {
        if n == 0 {
            return Err(Error::InvalidN { min: 1, got: 0 });
        }
        Ok(Oracle {
            n,
            poset_len: p.len(),
            delta: delta_complex(n, p)?,
        })
    }

    pub fn complex(&self) -> &SComplex {
        &self.delta
    }

    /// `i -> β_{i,R}` for the nonzero values.
    pub fn beta_r(&self, r: &Multidegree, field: FieldSpec) -> Result<BTreeMap<usize, u64>> {
        if r.n() != self.n {
            return Err(Error::LayerCount {
                expected: self.n,
                found: r.n(),
            });
        }
        let size = r.total_degree() as i32;
        let h = self
            .delta
            .restrict_mask(r.support_mask(self.poset_len))
            .reduced_homology(field)?;
        Ok(h.terms()
            .filter_map(|(d, c)| {
                let i = size - d - 2;
                (i >= 0).then_some((i as usize, c))
            })
            .collect())
    }
}

/// `i -> β_{i,R}(L(n, P))` over `field`, by direct homology.
pub fn beta_r_oracle(
    n: usize,
    p: &Poset,
    r: &Multidegree,
    field: FieldSpec,
) -> Result<BTreeMap<usize, u64>> {
    Oracle::new(n, p)?.beta_r(r, field)
}

/// Nonzero multigraded Betti numbers in enumeration order.
pub fn multigraded_oracle(
    n: usize,
    p: &Poset,
    field: FieldSpec,
    prune: bool,
) -> Result<Vec<(Multidegree, BTreeMap<usize, u64>)>> {
    guard(
        "n·|P| for the oracle",
        n * p.len(),
        limits().max_oracle_vertices,
    )?;
    let oracle = Oracle::new(n, p)?;
    let rs = enumerate_multidegrees(n, p, prune)?;
    let values = rs
        .par_iter()
        .map(|r| oracle.beta_r(r, field))
        .collect::<Result<Vec<_>>>()?;
    Ok(rs
        .into_iter()
        .zip(values)
        .filter(|(_, b)| !b.is_empty())
        .collect())
}

/// Graded Betti table of `L(n, P)` in the ideal convention.
pub fn betti_table_oracle(
    n: usize,
    p: &Poset,
    field: FieldSpec,
    prune: bool,
) -> Result<BettiTable> {
    let mut t = BettiTable::new(Convention::Ideal);
    for (r, betas) in multigraded_oracle(n, p, field, prune)? {
        for (i, b) in betas {
            t.add(i, r.total_degree(), b);
        }
    }
    Ok(t)
}
