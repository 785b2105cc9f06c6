use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

/// A polynomial in `t` (Laurent only down to `t^-1`) with nonnegative
/// integer coefficients. Holds reduced homology Poincaré polynomials and
/// Betti polynomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct HPoly {
    coeffs: BTreeMap<i32, u64>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly::default()
    }

    /// The monomial `c * t^d`.
    pub fn monomial(d: i32, c: u64) -> Self {
        let mut p = HPoly::zero();
        p.add_term(d, c);
        p
    }

    /// `1 = t^0`.
    pub fn one() -> Self {
        HPoly::monomial(0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, u64)>>(terms: I) -> Self {
        let mut p = HPoly::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, d: i32, c: u64) {
        if c != 0 {
            *self.coeffs.entry(d).or_insert(0) += c;
        }
    }

    pub fn coefficient(&self, d: i32) -> u64 {
        self.coeffs.get(&d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        HPoly {
            coeffs: self.coeffs.iter().map(|(&d, &c)| (d + k, c)).collect(),
        }
    }

    /// Sum of `(-1)^d c_d`.
    pub fn alternating_sum(&self) -> i64 {
        self.terms()
            .map(|(d, c)| {
                if d.rem_euclid(2) == 0 {
                    c as i64
                } else {
                    -(c as i64)
                }
            })
            .sum()
    }
}

impl Mul for &HPoly {
    type Output = HPoly;

    fn mul(self, rhs: &HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for HPoly {
    type Output = HPoly;

    fn mul(self, rhs: HPoly) -> HPoly {
        &self * &rhs
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(d, c)| {
                let mono = match d {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{d}"),
                };
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = HPoly::from_terms([(-1, 1), (1, 2)]);
        let q = HPoly::monomial(1, 1);
        assert_eq!(&p * &q, HPoly::from_terms([(0, 1), (2, 2)]));
        assert_eq!(p.shift(2), HPoly::from_terms([(1, 1), (3, 2)]));
        assert_eq!(p.alternating_sum(), -3);
        assert!((&p * &HPoly::zero()).is_zero());
        assert_eq!(p.to_string(), "t^-1 + 2t");
        assert_eq!(HPoly::one().to_string(), "1");
    }
}
