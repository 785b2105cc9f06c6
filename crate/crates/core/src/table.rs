//! Graded Betti tables and their text, CSV and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which module a table describes: the ideal `I` (homological degree 0 holds
/// the generators) or the quotient `S/I` (an extra `(0,0)` entry and all
/// ideal entries shifted by one homological degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Ideal,
    Quotient,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Ideal => "ideal",
            Convention::Quotient => "quotient",
        }
    }
}

/// Nonzero graded Betti numbers `β_{i,j}`, keyed by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    convention: Convention,
    entries: BTreeMap<(usize, usize), u64>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    i: usize,
    j: usize,
    beta: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    convention: Convention,
    entries: Vec<JsonEntry>,
}

impl BettiTable {
    pub fn new(convention: Convention) -> Self {
        BettiTable {
            convention,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), u64)>>(
        convention: Convention,
        entries: I,
    ) -> Self {
        let mut t = BettiTable::new(convention);
        for ((i, j), v) in entries {
            t.add(i, j, v);
        }
        t
    }

    /// Ideal-convention table from rows as typeset in a Betti diagram: row
    /// `r` lists `β_{i, i + first_row + r}` for `i = 0, 1, ...`, with 0 for
    /// a dot.
    pub fn from_rows(first_row: usize, rows: &[&[u64]]) -> Self {
        let mut t = BettiTable::new(Convention::Ideal);
        for (r, row) in rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                t.add(i, i + first_row + r, v);
            }
        }
        t
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        if v != 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_ideal(&self) -> BettiTable {
        match self.convention {
            Convention::Ideal => self.clone(),
            Convention::Quotient => BettiTable {
                convention: Convention::Ideal,
                entries: self
                    .entries
                    .iter()
                    .filter(|(&(i, _), _)| i > 0)
                    .map(|(&(i, j), &v)| ((i - 1, j), v))
                    .collect(),
            },
        }
    }

    pub fn to_quotient(&self) -> BettiTable {
        match self.convention {
            Convention::Quotient => self.clone(),
            Convention::Ideal => {
                let mut entries: BTreeMap<_, _> = self
                    .entries
                    .iter()
                    .map(|(&(i, j), &v)| ((i + 1, j), v))
                    .collect();
                entries.insert((0, 0), 1);
                BettiTable {
                    convention: Convention::Quotient,
                    entries,
                }
            }
        }
    }

    pub fn with_convention(&self, c: Convention) -> BettiTable {
        match c {
            Convention::Ideal => self.to_ideal(),
            Convention::Quotient => self.to_quotient(),
        }
    }

    /// Largest homological degree with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Largest `j - i` over nonzero entries.
    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    /// Internal degrees `j` with `β_{i,j} != 0`.
    pub fn degrees_at(&self, i: usize) -> Vec<usize> {
        self.entries
            .keys()
            .filter(|&&(k, _)| k == i)
            .map(|&(_, j)| j)
            .collect()
    }

    /// Macaulay2-style diagram: columns are homological degrees, rows are
    /// `j - i`, zeros print as `.`.
    pub fn render_text(&self) -> String {
        if self.entries.is_empty() {
            return "0\n".to_string();
        }
        let cols = self.projective_dimension().unwrap() + 1;
        let lo = self.entries.keys().map(|&(i, j)| j - i).min().unwrap();
        let hi = self.regularity().unwrap();
        let mut totals = vec![0u64; cols];
        for (&(i, _), &v) in &self.entries {
            totals[i] += v;
        }
        let cell = |i: usize, row: usize| match self.get(i, i + row) {
            0 => ".".to_string(),
            v => v.to_string(),
        };
        let mut widths: Vec<usize> = (0..cols)
            .map(|i| i.to_string().len().max(totals[i].to_string().len()))
            .collect();
        for row in lo..=hi {
            for (i, w) in widths.iter_mut().enumerate() {
                *w = (*w).max(cell(i, row).len());
            }
        }
        let label_width = "total:".len().max(format!("{hi}:").len());
        let mut out = String::new();
        let mut line = |label: &str, cells: Vec<String>| {
            let _ = write!(out, "{label:>label_width$}");
            for (c, w) in cells.iter().zip(&widths) {
                let _ = write!(out, " {c:>w$}");
            }
            out.push('\n');
        };
        line("", (0..cols).map(|i| i.to_string()).collect());
        line("total:", totals.iter().map(|t| t.to_string()).collect());
        for row in lo..=hi {
            line(
                &format!("{row}:"),
                (0..cols).map(|i| cell(i, row)).collect(),
            );
        }
        out
    }

    /// `i,j,beta` lines under a header.
    pub fn render_csv(&self) -> String {
        let mut out = String::from("i,j,beta\n");
        for (&(i, j), &v) in &self.entries {
            let _ = writeln!(out, "{i},{j},{v}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let t = JsonTable {
            convention: self.convention,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &beta)| JsonEntry { i, j, beta })
                .collect(),
        };
        serde_json::to_string(&t).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<BettiTable> {
        let t: JsonTable = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Ok(BettiTable::from_entries(
            t.convention,
            t.entries.into_iter().map(|e| ((e.i, e.j), e.beta)),
        ))
    }
}

/// Betti table of `S/(I + J)` for ideals in disjoint sets of variables:
/// the convolution of the quotient tables.
pub fn tensor_tables(a: &BettiTable, b: &BettiTable) -> Result<BettiTable> {
    for t in [a, b] {
        if t.convention != Convention::Quotient {
            return Err(Error::ConventionMismatch {
                expected: Convention::Quotient.name(),
                found: t.convention.name(),
            });
        }
    }
    let mut out = BettiTable::new(Convention::Quotient);
    for (&(i1, j1), &v1) in &a.entries {
        for (&(i2, j2), &v2) in &b.entries {
            out.add(i1 + i2, j1 + j2, v1 * v2);
        }
    }
    Ok(out)
}
