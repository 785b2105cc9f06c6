//! Exact rank of sparse integer matrices over QQ or GF(p).
//!
//! Columns are reduced left to right by cancelling their lowest nonzero
//! entry against earlier pivot columns with the same lowest row. Over QQ
//! the elimination is fraction-free on `i64` with overflow checks, and is
//! redone with big integers if any intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::FieldSpec;

/// Sparse column: `(row, value)` with strictly increasing rows.
pub type SparseCol = Vec<(u32, i64)>;

/// Rank of the matrix with the given columns.
pub fn rank(cols: &[SparseCol], nrows: usize, field: FieldSpec) -> usize {
    match field.characteristic() {
        0 => reduce(cols, nrows, &SmallInt).unwrap_or_else(|| {
            reduce(cols, nrows, &BigIntegers).expect("big integers do not overflow")
        }),
        p => reduce(cols, nrows, &PrimeField(p)).expect("modular arithmetic does not overflow"),
    }
}

trait Reducer {
    type E: Clone;
    fn lift(&self, v: i64) -> Self::E;
    fn is_zero(&self, e: &Self::E) -> bool;
    /// Returns `(alpha, beta)` with `alpha != 0` and
    /// `alpha * target_low + beta * pivot_low == 0`.
    fn multipliers(&self, target_low: &Self::E, pivot_low: &Self::E) -> Option<(Self::E, Self::E)>;
    fn mul_add(&self, alpha: &Self::E, x: &Self::E, beta: &Self::E, y: &Self::E)
        -> Option<Self::E>;
    fn scale(&self, alpha: &Self::E, x: &Self::E) -> Option<Self::E>;
    /// Called on every new pivot column.
    fn normalize(&self, _col: &mut [(u32, Self::E)]) {}
}

fn reduce<R: Reducer>(cols: &[SparseCol], nrows: usize, r: &R) -> Option<usize> {
    let mut owner: Vec<Option<u32>> = vec![None; nrows];
    let mut pivots: Vec<Vec<(u32, R::E)>> = Vec::new();
    for col in cols {
        let mut c: Vec<(u32, R::E)> = col
            .iter()
            .map(|&(row, v)| (row, r.lift(v)))
            .filter(|(_, v)| !r.is_zero(v))
            .collect();
        while let Some((low, low_val)) = c.last().cloned() {
            match owner[low as usize] {
                Some(k) => {
                    let pivot = &pivots[k as usize];
                    let (alpha, beta) = r.multipliers(&low_val, &pivot.last().unwrap().1)?;
                    c = combine(r, &alpha, &c, &beta, pivot)?;
                }
                None => {
                    r.normalize(&mut c);
                    owner[low as usize] = Some(pivots.len() as u32);
                    pivots.push(c);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// `alpha * x + beta * y`, merged by row.
fn combine<R: Reducer>(
    r: &R,
    alpha: &R::E,
    x: &[(u32, R::E)],
    beta: &R::E,
    y: &[(u32, R::E)],
) -> Option<Vec<(u32, R::E)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (row, v) = if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, r.scale(alpha, &x[i - 1].1)?)
        } else if i == x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, r.scale(beta, &y[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (
                x[i - 1].0,
                r.mul_add(alpha, &x[i - 1].1, beta, &y[j - 1].1)?,
            )
        };
        if !r.is_zero(&v) {
            out.push((row, v));
        }
    }
    Some(out)
}

struct PrimeField(u64);

impl PrimeField {
    fn inverse(&self, a: u64) -> u64 {
        // Fermat; p is prime.
        let p = self.0;
        let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

impl Reducer for PrimeField {
    type E = u64;

    fn lift(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }

    fn multipliers(&self, target_low: &u64, pivot_low: &u64) -> Option<(u64, u64)> {
        // Pivot columns are normalized to a lowest entry of 1.
        debug_assert_eq!(*pivot_low, 1);
        Some((1, (self.0 - target_low) % self.0))
    }

    fn mul_add(&self, alpha: &u64, x: &u64, beta: &u64, y: &u64) -> Option<u64> {
        Some((alpha * x % self.0 + beta * y % self.0) % self.0)
    }

    fn scale(&self, alpha: &u64, x: &u64) -> Option<u64> {
        Some(alpha * x % self.0)
    }

    fn normalize(&self, col: &mut [(u32, u64)]) {
        let inv = self.inverse(col.last().unwrap().1);
        for (_, v) in col.iter_mut() {
            *v = *v * inv % self.0;
        }
    }
}

struct SmallInt;

impl Reducer for SmallInt {
    type E = i64;

    fn lift(&self, v: i64) -> i64 {
        v
    }

    fn is_zero(&self, e: &i64) -> bool {
        *e == 0
    }

    fn multipliers(&self, target_low: &i64, pivot_low: &i64) -> Option<(i64, i64)> {
        let g = target_low.gcd(pivot_low);
        Some((pivot_low / g, (target_low / g).checked_neg()?))
    }

    fn mul_add(&self, alpha: &i64, x: &i64, beta: &i64, y: &i64) -> Option<i64> {
        alpha.checked_mul(*x)?.checked_add(beta.checked_mul(*y)?)
    }

    fn scale(&self, alpha: &i64, x: &i64) -> Option<i64> {
        alpha.checked_mul(*x)
    }

    fn normalize(&self, col: &mut [(u32, i64)]) {
        let g = col.iter().fold(0i64, |g, (_, v)| g.gcd(v));
        if g > 1 {
            for (_, v) in col.iter_mut() {
                *v /= g;
            }
        }
    }
}

struct BigIntegers;

impl Reducer for BigIntegers {
    type E = BigInt;

    fn lift(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }

    fn multipliers(&self, target_low: &BigInt, pivot_low: &BigInt) -> Option<(BigInt, BigInt)> {
        let g = target_low.gcd(pivot_low);
        Some((pivot_low / &g, -(target_low / &g)))
    }

    fn mul_add(&self, alpha: &BigInt, x: &BigInt, beta: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(alpha * x + beta * y)
    }

    fn scale(&self, alpha: &BigInt, x: &BigInt) -> Option<BigInt> {
        Some(alpha * x)
    }

    fn normalize(&self, col: &mut [(u32, BigInt)]) {
        let g = col.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        if g.abs() > BigInt::one() {
            for (_, v) in col.iter_mut() {
                *v = &*v / &g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_to_cols(m: &[Vec<i64>]) -> Vec<SparseCol> {
        let ncols = m.first().map_or(0, |r| r.len());
        (0..ncols)
            .map(|c| {
                m.iter()
                    .enumerate()
                    .filter(|(_, row)| row[c] != 0)
                    .map(|(r, row)| (r as u32, row[c]))
                    .collect()
            })
            .collect()
    }

    /// Dense rank by Gaussian elimination over exact rationals, kept as
    /// (numerator, denominator) pairs of big integers.
    fn dense_rational_rank(m: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut a: Vec<Vec<BigRational>> = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, |r| r.len()));
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..cols {
                        let sub = &f * &a[rank][k];
                        a[r][k] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn dense_mod_rank(m: &[Vec<i64>], p: i64) -> usize {
        let mut a: Vec<Vec<i64>> = m
            .iter()
            .map(|r| r.iter().map(|v| v.rem_euclid(p)).collect())
            .collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, |r| r.len()));
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
            for r in 0..rows {
                if r != rank && a[r][c] != 0 {
                    let f = a[r][c] * inv % p;
                    for k in 0..cols {
                        a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_examples() {
        let m = vec![vec![1, 1, 0], vec![-1, 0, 1], vec![0, -1, -1]];
        let cols = dense_to_cols(&m);
        assert_eq!(rank(&cols, 3, FieldSpec::char(0)), 2);
        // 2 * identity has full rank over QQ but rank 0 over GF(2).
        let m = vec![vec![2, 0], vec![0, 2]];
        let cols = dense_to_cols(&m);
        assert_eq!(rank(&cols, 2, FieldSpec::char(0)), 2);
        assert_eq!(rank(&cols, 2, FieldSpec::char(2)), 0);
        assert_eq!(rank(&cols, 2, FieldSpec::char(3)), 2);
    }

    #[test]
    fn big_integer_fallback() {
        // Entries large enough that the i64 path overflows.
        let big = 3_000_000_000i64;
        let m = vec![
            vec![big, big + 1, 1],
            vec![big - 1, big, 7],
            vec![1, 5, big],
        ];
        let cols = dense_to_cols(&m);
        assert!(reduce(&cols, 3, &SmallInt).is_none());
        assert_eq!(rank(&cols, 3, FieldSpec::char(0)), dense_rational_rank(&m));
    }

    proptest! {
        #[test]
        fn matches_dense_elimination(
            m in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 6), 1..7)
        ) {
            let cols = dense_to_cols(&m);
            prop_assert_eq!(rank(&cols, m.len(), FieldSpec::char(0)), dense_rational_rank(&m));
            for p in [2i64, 3, 5] {
                prop_assert_eq!(rank(&cols, m.len(), FieldSpec::char(p as u64)), dense_mod_rank(&m, p));
            }
        }
    }
}
