//! The cross-validation suite behind `lpbetti check`.

use std::collections::BTreeMap;
use std::fmt;

use crate::classify::classify_strands;
use crate::error::{guard, Error, Result};
use crate::field::FieldSpec;
use crate::generators::{colp_generators, delta_complex, multiplicity};
use crate::limits::limits;
use crate::multidegree::Multidegree;
use crate::oracle::{betti_table_oracle, multigraded_oracle};
use crate::poly::HPoly;
use crate::poset::{ElemSet, Poset};
use crate::strand::{add_poly, multigraded_fast, pair_homology};
use crate::table::{BettiTable, Convention};
use crate::tree::{betti_table_tree, TreeMemo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    Oracle,
    Strand,
    Tree,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Oracle, Engine::Strand, Engine::Tree];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Oracle => "oracle",
            Engine::Strand => "strand",
            Engine::Tree => "tree",
        }
    }

    /// `tree` for rooted forests, `strand` otherwise.
    pub fn auto(p: &Poset) -> Engine {
        if p.is_rooted_forest() {
            Engine::Tree
        } else {
            Engine::Strand
        }
    }

    pub fn table(self, n: usize, p: &Poset, field: FieldSpec) -> Result<BettiTable> {
        match self {
            Engine::Oracle => betti_table_oracle(n, p, field, true),
            Engine::Strand => crate::strand::betti_table_fast(n, p, field),
            Engine::Tree => betti_table_tree(n, p, Some(&TreeMemo::new())),
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    fn verdict(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    /// Guard errors become skips; anything else is a failure.
    fn error(&mut self, name: impl Into<String>, e: &Error) {
        let status = if e.is_guard() {
            Status::Skipped
        } else {
            Status::Fail
        };
        self.push(name, status, e.to_string());
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            let tag = match i.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            writeln!(f, "{tag:<4}  {}: {}", i.name, i.detail)?;
        }
        let count = |s| self.items.iter().filter(|i| i.status == s).count();
        writeln!(
            f,
            "{} passed, {} failed, {} skipped",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        )
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub engines: Vec<Engine>,
    pub fields: Vec<FieldSpec>,
    /// Only the structural classifier.
    pub structural_only: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            engines: Engine::ALL.to_vec(),
            fields: vec![FieldSpec::RATIONALS],
            structural_only: false,
        }
    }
}

/// Most antichain pairs examined by the characteristic-dependence scan.
const PAIR_BUDGET: usize = 20_000;

pub fn run_check(n: usize, p: &Poset, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::default();
    if n == 0 {
        report.error("input", &Error::InvalidN { min: 1, got: 0 });
        return report;
    }
    let mut fields = opts.fields.clone();
    fields.dedup();
    for &field in &fields {
        if !opts.structural_only {
            engines(&mut report, n, p, &opts.engines, field);
        }
        structural(&mut report, n, p, field);
    }
    if opts.structural_only {
        return report;
    }
    duality(&mut report, n, p);
    for &field in &fields {
        ball_or_sphere(&mut report, n, p, field);
    }
    if fields.len() >= 2 {
        char_dependence(&mut report, n, p, &fields);
    }
    report
}

fn engines(report: &mut CheckReport, n: usize, p: &Poset, engines: &[Engine], field: FieldSpec) {
    let mut tables: Vec<(Engine, BettiTable)> = Vec::new();
    let mut skipped = Vec::new();
    for &e in engines {
        match e.table(n, p, field) {
            Ok(t) => tables.push((e, t)),
            Err(err) if err.is_guard() || err == Error::NotForest => {
                skipped.push(format!("{}: {err}", e.name()))
            }
            Err(err) => {
                report.error(format!("{} engine over {field}", e.name()), &err);
            }
        }
    }
    let name = format!("engines agree over {field}");
    let skip_note = if skipped.is_empty() {
        String::new()
    } else {
        format!(" (skipped {})", skipped.join("; "))
    };
    match tables.as_slice() {
        [] => report.push(name, Status::Skipped, format!("no engine ran{skip_note}")),
        [(e, _)] => report.push(
            name,
            Status::Skipped,
            format!("only {} ran{skip_note}", e.name()),
        ),
        [(e0, t0), rest @ ..] => {
            let differing: Vec<&str> = rest
                .iter()
                .filter(|(_, t)| t != t0)
                .map(|(e, _)| e.name())
                .collect();
            let ran: Vec<&str> = tables.iter().map(|(e, _)| e.name()).collect();
            let detail = if differing.is_empty() {
                format!(
                    "{} equal, {} nonzero entries{skip_note}",
                    ran.join(" = "),
                    t0.entries().len()
                )
            } else {
                format!(
                    "{} differs from {}{skip_note}",
                    differing.join(", "),
                    e0.name()
                )
            };
            report.verdict(name, differing.is_empty(), detail);
        }
    }
    if engines.contains(&Engine::Oracle) && engines.contains(&Engine::Strand) {
        let name = format!("multigraded oracle = strand over {field}");
        match multigraded_equal(n, p, field) {
            Ok((ok, count)) => report.verdict(name, ok, format!("{count} multidegrees compared")),
            Err(e) => report.error(name, &e),
        }
    }
    if let Some((_, t)) = tables.first() {
        let top = p.len().saturating_sub(1);
        let pd = t.projective_dimension();
        report.verdict(
            format!("projective dimension over {field}"),
            pd == Some(top),
            format!("observed {pd:?}, expected {top}"),
        );
        let reg_expected = p.width() * (n - 1) + 1;
        let reg = t.regularity();
        report.verdict(
            format!("regularity over {field}"),
            reg == Some(reg_expected),
            format!("observed {reg:?}, expected {reg_expected}"),
        );
    }
}

/// Compares all nonzero multigraded values of the two engines, including
/// every multidegree outside the pruned set.
fn multigraded_equal(n: usize, p: &Poset, field: FieldSpec) -> Result<(bool, usize)> {
    let oracle = multigraded_oracle(n, p, field, false)?;
    let fast: BTreeMap<Multidegree, HPoly> = multigraded_fast(n, p, field)?.into_iter().collect();
    let oracle: BTreeMap<Multidegree, HPoly> = oracle
        .into_iter()
        .map(|(r, b)| {
            let poly = betas_to_poly(&r, &b);
            (r, poly)
        })
        .collect();
    Ok((oracle == fast, oracle.len().max(fast.len())))
}

/// `β(R, t)` from `i -> β_{i,R}`.
pub fn betas_to_poly(r: &Multidegree, betas: &BTreeMap<usize, u64>) -> HPoly {
    HPoly::from_terms(
        betas
            .iter()
            .map(|(&i, &b)| (r.total_degree() as i32 - i as i32, b)),
    )
}

fn structural(report: &mut CheckReport, n: usize, p: &Poset, field: FieldSpec) {
    let name = format!("structure over {field}");
    let multigraded = multigraded_fast(n, p, field).or_else(|e| {
        if !e.is_guard() {
            return Err(e);
        }
        multigraded_oracle(n, p, field, true).map(|m| {
            m.into_iter()
                .map(|(r, b)| {
                    let poly = betas_to_poly(&r, &b);
                    (r, poly)
                })
                .collect()
        })
    });
    let multigraded = match multigraded {
        Ok(m) => m,
        Err(e) => return report.error(name, &e),
    };
    let mut table = BettiTable::new(Convention::Ideal);
    for (r, poly) in &multigraded {
        add_poly(&mut table, r, poly);
    }
    match classify_strands(n, p, &multigraded, &table) {
        Ok(r) => {
            for f in r.findings {
                if report.item(&format!("{} over {field}", f.name)).is_some() {
                    continue;
                }
                report.verdict(format!("{} over {field}", f.name), f.passed, f.detail);
            }
        }
        Err(e) => report.error(name, &e),
    }
}

fn within_oracle_scale(n: usize, p: &Poset) -> Result<()> {
    guard(
        "n·|P| for whole-complex checks",
        n * p.len(),
        limits().max_oracle_vertices,
    )
}

fn duality(report: &mut CheckReport, n: usize, p: &Poset) {
    let name = "duality facet count";
    let facets = within_oracle_scale(n, p)
        .and_then(|_| delta_complex(n, p))
        .and_then(|d| d.facets());
    let facets = match facets {
        Ok(f) => f.len(),
        Err(e) => return report.error(name, &e),
    };
    let gens = match colp_generators(p, n) {
        Ok(g) => g.len(),
        Err(e) => return report.error(name, &e),
    };
    let m = multiplicity(n, p);
    report.verdict(
        name,
        facets as u128 == m.value && gens as u128 == m.value,
        format!(
            "{facets} facets, {gens} co-letterplace generators, multiplicity {}",
            m.value
        ),
    );
    report.verdict(
        "multiplicity bounds",
        m.within_bounds(),
        format!("{} <= {} <= {}", m.lower, m.value, m.upper),
    );
}

fn ball_or_sphere(report: &mut CheckReport, n: usize, p: &Poset, field: FieldSpec) {
    let name = format!("ball/sphere homology over {field}");
    let h = within_oracle_scale(n, p)
        .and_then(|_| delta_complex(n, p))
        .and_then(|d| d.reduced_homology(field));
    let h = match h {
        Ok(h) => h,
        Err(e) => return report.error(name, &e),
    };
    if p.is_antichain(p.all()) {
        let ok = h.terms().count() == 1 && h.terms().all(|(_, c)| c == 1);
        report.verdict(
            name,
            ok,
            format!("antichain, sphere expected, homology {h}"),
        );
    } else {
        report.verdict(name, h.is_zero(), format!("ball expected, homology {h}"));
    }
}

/// Antichains of `p`, at most `limit` of them, by depth-first extension in
/// index order. `None` when there are more.
fn antichains(p: &Poset, limit: usize) -> Option<Vec<ElemSet>> {
    let mut out = Vec::new();
    let mut stack = vec![(ElemSet::EMPTY, 0usize)];
    while let Some((a, from)) = stack.pop() {
        if !a.is_empty() {
            out.push(a);
            if out.len() > limit {
                return None;
            }
        }
        for x in from..p.len() {
            if a.iter().all(|y| !p.comparable(x, y)) {
                let mut b = a;
                b.insert(x);
                stack.push((b, x + 1));
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

/// Looks for a pair `(max(R_i), min(R_{i+1}))` whose homology depends on
/// the field. Every factor of `β(R, t)` comes from such a pair of
/// antichains, so the graded tables can only differ if one is found.
fn char_dependence(report: &mut CheckReport, n: usize, p: &Poset, fields: &[FieldSpec]) {
    let name = "characteristic dependence";
    if n < 2 || p.is_empty() {
        return report.push(
            name,
            Status::Pass,
            "no layer pairs, tables are field independent",
        );
    }
    let differs = |a: ElemSet, b: ElemSet| -> Result<Option<Vec<HPoly>>> {
        let hs = fields
            .iter()
            .map(|&f| pair_homology(p, a, b, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(hs.iter().any(|h| *h != hs[0]).then_some(hs))
    };
    let found = |a: ElemSet, b: ElemSet, hs: Vec<HPoly>| {
        let values: Vec<String> = fields
            .iter()
            .zip(&hs)
            .map(|(f, h)| format!("{f}: {h}"))
            .collect();
        format!(
            "detected at max = {{{}}}, min = {{{}}} ({})",
            p.format_set(a),
            p.format_set(b),
            values.join(", ")
        )
    };
    let probe = (p.min_of(p.all()), p.max_of(p.all()));
    let mut candidates = vec![probe];
    let mut exhaustive = false;
    if let Some(ac) = antichains(p, PAIR_BUDGET) {
        let pairs: Vec<_> = ac
            .iter()
            .flat_map(|&a| ac.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| p.max_min_leq(a, b))
            .take(PAIR_BUDGET + 1)
            .collect();
        if pairs.len() <= PAIR_BUDGET {
            candidates.extend(pairs);
            exhaustive = true;
        }
    }
    for (a, b) in candidates {
        match differs(a, b) {
            Ok(Some(hs)) => return report.push(name, Status::Pass, found(a, b, hs)),
            Ok(None) => {}
            Err(e) => return report.error(name, &e),
        }
    }
    let detail = if exhaustive {
        "none: every antichain pair has field-independent homology"
    } else {
        "none found at the min/max probe; too many antichain pairs to scan"
    };
    report.push(name, Status::Pass, detail);
}
