//! Structural predictions for the multigraded Betti numbers of `L(n, P)`,
//! checked against computed values.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::Result;
use crate::multidegree::{enumerate_multidegrees, Multidegree};
use crate::poly::HPoly;
use crate::poset::{ElemSet, Poset};
use crate::table::BettiTable;

/// One verified prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrandReport {
    pub findings: Vec<Finding>,
}

impl StrandReport {
    pub fn all_passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.name == name)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.findings.push(Finding {
            name,
            passed,
            detail,
        });
    }
}

/// Every `p ∈ R_i`, `q ∈ R_{i+1}` satisfy `p <= q`.
pub fn first_strand_predicate(p: &Poset, r: &Multidegree) -> bool {
    r.layers()
        .windows(2)
        .all(|w| w[0].iter().all(|x| w[1].iter().all(|y| p.leq(x, y))))
}

/// `max(R_i)` and `min(R_{i+1})` both have `c` elements and their
/// comparabilities form a perfect matching.
pub fn last_strand_predicate(p: &Poset, r: &Multidegree, c: usize) -> bool {
    r.layers().windows(2).all(|w| {
        let (a, b) = (p.max_of(w[0]), p.min_of(w[1]));
        a.len() == c
            && b.len() == c
            && a.iter()
                .all(|x| b.iter().filter(|&y| p.leq(x, y)).count() == 1)
            && b.iter()
                .all(|y| a.iter().filter(|&x| p.leq(x, y)).count() == 1)
    })
}

pub fn is_maximal_antichain(p: &Poset, a: ElemSet) -> bool {
    p.is_antichain(a) && (0..p.len()).all(|x| a.iter().any(|y| p.comparable(x, y)))
}

/// `β_{|P|-1, R} != 0`: the layers cover `P` and every `max(R_i) = min(R_{i+1})`
/// is a maximal antichain.
pub fn top_degree_predicate(p: &Poset, r: &Multidegree) -> bool {
    r.is_chain(p)
        && r.union() == p.all()
        && r.layers().windows(2).all(|w| {
            let m = p.max_of(w[0]);
            m == p.min_of(w[1]) && is_maximal_antichain(p, m)
        })
}

fn describe(p: &Poset, rs: &BTreeSet<&Multidegree>, limit: usize) -> String {
    let mut s = String::new();
    for (k, r) in rs.iter().enumerate() {
        if k == limit {
            s.push_str(", ...");
            break;
        }
        if k > 0 {
            s.push_str(", ");
        }
        s.push_str(&r.format(p));
    }
    s
}

fn compare_sets<'a>(
    p: &Poset,
    predicted: BTreeSet<&'a Multidegree>,
    observed: BTreeSet<&'a Multidegree>,
    values_ok: bool,
) -> (bool, String) {
    let missing: BTreeSet<_> = predicted.difference(&observed).copied().collect();
    let extra: BTreeSet<_> = observed.difference(&predicted).copied().collect();
    let mut detail = format!("{} predicted, {} observed", predicted.len(), observed.len());
    if !missing.is_empty() {
        let _ = write!(
            detail,
            "; predicted but absent: {}",
            describe(p, &missing, 5)
        );
    }
    if !extra.is_empty() {
        let _ = write!(
            detail,
            "; observed but not predicted: {}",
            describe(p, &extra, 5)
        );
    }
    if !values_ok {
        detail.push_str("; some value differs from 1");
    }
    (missing.is_empty() && extra.is_empty() && values_ok, detail)
}

/// Checks the structural statements against the nonzero `β(R, t)` of the
/// pruned multidegrees and the graded table computed from them.
pub fn classify_strands(
    n: usize,
    p: &Poset,
    multigraded: &[(Multidegree, HPoly)],
    table: &BettiTable,
) -> Result<StrandReport> {
    let mut report = StrandReport::default();
    let size = p.len();
    let c = p.width();
    let top = size.saturating_sub(1);

    let pd = table.projective_dimension();
    report.push(
        "projective dimension",
        pd == Some(top),
        format!("observed {pd:?}, expected {top}"),
    );
    let reg_expected = c * (n - 1) + 1;
    let reg = table.regularity();
    report.push(
        "regularity",
        reg == Some(reg_expected),
        format!("observed {reg:?}, expected {reg_expected}"),
    );

    let pruned = enumerate_multidegrees(n, p, true)?;
    let coeff = |r: &Multidegree, poly: &HPoly, i: usize| {
        let strand = r.total_degree() as i32 - i as i32;
        poly.coefficient(strand)
    };

    // First strand: coefficient of t^n.
    let predicted = pruned
        .iter()
        .filter(|r| first_strand_predicate(p, r))
        .collect();
    let hits: Vec<_> = multigraded
        .iter()
        .filter(|(_, poly)| poly.coefficient(n as i32) != 0)
        .collect();
    let ok = hits.iter().all(|(_, poly)| poly.coefficient(n as i32) == 1);
    let (passed, detail) = compare_sets(p, predicted, hits.iter().map(|(r, _)| r).collect(), ok);
    report.push("first strand", passed, detail);

    // Last strand: coefficient of t^{c(n-1)+1}.
    let s = reg_expected as i32;
    let predicted = pruned
        .iter()
        .filter(|r| last_strand_predicate(p, r, c))
        .collect();
    let hits: Vec<_> = multigraded
        .iter()
        .filter(|(_, poly)| poly.coefficient(s) != 0)
        .collect();
    let ok = hits.iter().all(|(_, poly)| poly.coefficient(s) == 1);
    let (passed, detail) = compare_sets(p, predicted, hits.iter().map(|(r, _)| r).collect(), ok);
    report.push("last strand", passed, detail);

    // Strand starts, for n >= 2 and each antichain size i + 1 <= c.
    if n >= 2 {
        let mut failures = Vec::new();
        for i in 1..c {
            let s = (i + 1) * n - i;
            let start = table
                .entries()
                .keys()
                .filter(|&&(h, j)| j - h == s)
                .map(|&(h, _)| h)
                .min();
            if start != Some(i) {
                failures.push(format!("strand {s} starts at {start:?}, expected {i}"));
            }
            let bound = i * n - (i - 1);
            if let Some(&(h, j)) = table
                .entries()
                .keys()
                .find(|&&(h, j)| j - h > bound && h < i)
            {
                failures.push(format!(
                    "strand {} nonzero at degree {h} <= {}",
                    j - h,
                    i - 1
                ));
            }
        }
        let detail = if failures.is_empty() {
            format!("checked i = 1..{}", c.saturating_sub(1))
        } else {
            failures.join("; ")
        };
        report.push("strand starts", failures.is_empty(), detail);
    }

    // Top homological degree |P| - 1.
    let predicted = pruned
        .iter()
        .filter(|r| top_degree_predicate(p, r))
        .collect();
    let hits: Vec<_> = multigraded
        .iter()
        .filter(|(r, poly)| coeff(r, poly, top) != 0)
        .collect();
    let ok = hits.iter().all(|(r, poly)| coeff(r, poly, top) == 1);
    let (passed, detail) = compare_sets(p, predicted, hits.iter().map(|(r, _)| r).collect(), ok);
    report.push("top degree", passed, detail);

    // Level: all maximal antichains of one size. At n = 1 the ideal is
    // generated by variables and is always level.
    let sizes: BTreeSet<usize> = p.maximal_antichains()?.iter().map(|a| a.len()).collect();
    let level = n == 1 || sizes.len() == 1;
    let degrees = table.degrees_at(top);
    let expected_degree = size + (n - 1) * c;
    let passed = if level {
        degrees == [expected_degree]
    } else {
        degrees.len() > 1
    };
    report.push(
        "level",
        passed,
        format!(
            "predicted {}, top-degree internal degrees {:?}{}",
            if level { "level" } else { "not level" },
            degrees,
            if level {
                format!(", expected [{expected_degree}]")
            } else {
                String::new()
            }
        ),
    );

    let bad: Vec<&Multidegree> = pruned
        .iter()
        .filter(|r| {
            let (lhs, rhs) = r.cardinality_identity();
            lhs != rhs
        })
        .collect();
    report.push(
        "cardinality identity",
        bad.is_empty(),
        match bad.first() {
            None => format!("holds on {} multidegrees", pruned.len()),
            Some(r) => format!("fails on {} multidegrees, first {}", bad.len(), r.format(p)),
        },
    );
    Ok(report)
}
