//! Finite posets with a cached order relation.
//!
//! Elements are opaque, case-sensitive names. Internally every element gets a
//! dense index in declaration order, and subsets are bitmasks over those
//! indices ([`ElemSet`]).

use std::collections::HashMap;
use std::fmt;

use crate::error::{guard, Error, Result};
use crate::limits::limits;

/// A subset of the elements of some ambient poset, as a bitmask of indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(i: usize) -> Self {
        ElemSet(1 << i)
    }

    /// The set `{0, 1, ..., k-1}`.
    pub fn full(k: usize) -> Self {
        if k >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << k) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        ElemSet(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite poset. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    /// `up[p]` is the principal filter `{q : p <= q}`.
    up: Vec<ElemSet>,
    /// `down[q]` is the principal ideal `{p : p <= q}`.
    down: Vec<ElemSet>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers
            .iter()
            .map(|&(p, q)| format!("{} < {}", self.names[p], self.names[q]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from element names and strict relations `p < q` given
    /// by index. Any set of relations generating a partial order is accepted;
    /// the cover relation is its transitive reduction.
    pub fn from_relations<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relations: &[(usize, usize)],
    ) -> Result<Poset> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        guard("poset size", names.len(), limits().max_elements)?;
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let k = names.len();
        let mut succ = vec![Vec::new(); k];
        for &(p, q) in relations {
            assert!(p < k && q < k, "relation index out of range");
            succ[p].push(q);
        }
        if let Some(cycle) = find_cycle(&succ) {
            return Err(Error::Cycle(
                cycle.into_iter().map(|i| names[i].clone()).collect(),
            ));
        }

        // Warshall closure on bit rows.
        let mut up: Vec<ElemSet> = (0..k).map(ElemSet::singleton).collect();
        for (p, qs) in succ.iter().enumerate() {
            for &q in qs {
                up[p].insert(q);
            }
        }
        for m in 0..k {
            for p in 0..k {
                if up[p].contains(m) {
                    up[p] = up[p].union(up[m]);
                }
            }
        }
        let mut down = vec![ElemSet::EMPTY; k];
        for p in 0..k {
            for q in up[p].iter() {
                down[q].insert(p);
            }
        }
        let mut covers = Vec::new();
        for p in 0..k {
            for q in up[p].iter() {
                if q != p && up[p].intersection(down[q]).len() == 2 {
                    covers.push((p, q));
                }
            }
        }
        Ok(Poset {
            names,
            index,
            covers,
            up,
            down,
        })
    }

    /// Parses the line-oriented poset format: a bare token declares an
    /// element, `p < q` (or a chain `p < q < r`) declares relations, `#`
    /// starts a comment.
    pub fn parse(text: &str) -> Result<Poset> {
        let mut names: Vec<String> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut relations: Vec<(usize, Vec<String>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = lineno + 1;
            if line.contains('<') {
                let parts: Vec<String> = line.split('<').map(|s| s.trim().to_string()).collect();
                if parts.iter().any(|p| !is_token(p)) {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("malformed relation `{line}`"),
                    });
                }
                relations.push((lineno, parts));
            } else if is_token(line) {
                if seen.insert(line.to_string(), names.len()).is_some() {
                    return Err(Error::DuplicateElement(line.to_string()));
                }
                names.push(line.to_string());
            } else {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected an element name or `p < q`, got `{line}`"),
                });
            }
        }
        let mut pairs = Vec::new();
        for (_, chain) in &relations {
            let idx: Vec<usize> = chain
                .iter()
                .map(|n| {
                    seen.get(n)
                        .copied()
                        .ok_or_else(|| Error::UndeclaredElement(n.clone()))
                })
                .collect::<Result<_>>()?;
            pairs.extend(idx.windows(2).map(|w| (w[0], w[1])));
        }
        Poset::from_relations(names, &pairs)
    }

    /// The chain `[n] = {1 < 2 < ... < n}`.
    pub fn chain(n: usize) -> Poset {
        let rels: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations((1..=n).map(|i| i.to_string()), &rels)
            .expect("chain is a valid poset")
    }

    /// The antichain on `k` elements named `p1, ..., pk`.
    pub fn antichain(k: usize) -> Poset {
        Poset::from_relations((1..=k).map(|i| format!("p{i}")), &[])
            .expect("antichain is a valid poset")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Cover pairs `(p, q)`, meaning `q` covers `p`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p].contains(q)
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq(p, q)
    }

    pub fn comparable(&self, p: usize, q: usize) -> bool {
        self.leq(p, q) || self.leq(q, p)
    }

    /// `{q : p <= q}`.
    pub fn up_set(&self, p: usize) -> ElemSet {
        self.up[p]
    }

    /// `{q : q <= p}`.
    pub fn down_set(&self, p: usize) -> ElemSet {
        self.down[p]
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn lower_covers(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.1 == q).map(|c| c.0)
    }

    pub fn upper_covers(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == p).map(|c| c.1)
    }

    /// Resolves element names to a subset.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet> {
        names.iter().try_fold(ElemSet::EMPTY, |mut s, n| {
            let i = self
                .index_of(n.as_ref())
                .ok_or_else(|| Error::UnknownElement(n.as_ref().to_string()))?;
            s.insert(i);
            Ok(s)
        })
    }

    /// Comma-separated element names, in declaration order.
    pub fn format_set(&self, s: ElemSet) -> String {
        s.iter()
            .map(|i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Elements of `s` with no strictly smaller element in `s`.
    pub fn min_of(&self, s: ElemSet) -> ElemSet {
        ElemSet::from_indices(
            s.iter()
                .filter(|&p| self.down[p].intersection(s) == ElemSet::singleton(p)),
        )
    }

    /// Elements of `s` with no strictly larger element in `s`.
    pub fn max_of(&self, s: ElemSet) -> ElemSet {
        ElemSet::from_indices(
            s.iter()
                .filter(|&p| self.up[p].intersection(s) == ElemSet::singleton(p)),
        )
    }

    fn incomparable_mask(&self, p: usize) -> ElemSet {
        self.all().difference(self.up[p].union(self.down[p]))
    }

    pub fn is_antichain(&self, s: ElemSet) -> bool {
        s.iter().all(|p| {
            s.difference(ElemSet::singleton(p))
                .is_subset(self.incomparable_mask(p))
        })
    }

    /// Maximum size of an antichain, via Dilworth: `|P|` minus a maximum
    /// matching in the strict-order bipartite graph.
    pub fn width(&self) -> usize {
        let k = self.len();
        let mut match_right: Vec<Option<usize>> = vec![None; k];
        let mut matched = 0;
        for p in 0..k {
            let mut visited = vec![false; k];
            if self.augment(p, &mut visited, &mut match_right) {
                matched += 1;
            }
        }
        k - matched
    }

    fn augment(&self, p: usize, visited: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
        for q in self.up[p].iter() {
            if q == p || visited[q] {
                continue;
            }
            visited[q] = true;
            if match_right[q].is_none_or(|r| self.augment(r, visited, match_right)) {
                match_right[q] = Some(p);
                return true;
            }
        }
        false
    }

    /// All inclusion-maximal antichains, ordered lexicographically by their
    /// sorted index lists. Brute force over subsets, guarded on `|P|`.
    pub fn maximal_antichains(&self) -> Result<Vec<ElemSet>> {
        let k = self.len();
        guard(
            "poset size for antichain enumeration",
            k,
            limits().max_antichain_elements,
        )?;
        if k == 0 {
            return Ok(vec![ElemSet::EMPTY]);
        }
        let incomparable: Vec<u64> = (0..k).map(|p| self.incomparable_mask(p).0).collect();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << k) {
            let s = ElemSet(mask);
            let antichain = s.iter().all(|p| mask & !(1 << p) & !incomparable[p] == 0);
            if !antichain {
                continue;
            }
            let maximal = (0..k).all(|q| s.contains(q) || mask & !incomparable[q] != 0);
            if maximal {
                out.push(s);
            }
        }
        out.sort_by_key(|s| s.to_vec());
        Ok(out)
    }

    /// The subset order: every maximal element of `a` lies below some
    /// minimal element of `b`, and every minimal element of `b` lies above
    /// some maximal element of `a`.
    pub fn subset_leq(&self, a: ElemSet, b: ElemSet) -> Result<bool> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(self.max_min_leq(self.max_of(a), self.min_of(b)))
    }

    /// The subset order evaluated on precomputed `max(A)` and `min(B)`.
    pub(crate) fn max_min_leq(&self, max_a: ElemSet, min_b: ElemSet) -> bool {
        max_a
            .iter()
            .all(|p| !self.up[p].intersection(min_b).is_empty())
            && min_b
                .iter()
                .all(|q| !self.down[q].intersection(max_a).is_empty())
    }

    /// All isotone maps `self -> target`, each as the vector of images
    /// indexed by element. Ordered lexicographically by image vector.
    pub fn isotone_maps(&self, target: &Poset) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.len());
        self.extend_isotone(target, &mut current, &mut |m| out.push(m.to_vec()));
        out
    }

    /// Number of isotone maps `self -> target`, without storing them.
    pub fn count_isotone_maps(&self, target: &Poset) -> u128 {
        let mut count = 0u128;
        let mut current = Vec::with_capacity(self.len());
        self.extend_isotone(target, &mut current, &mut |_| count += 1);
        count
    }

    fn extend_isotone(
        &self,
        target: &Poset,
        current: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        let p = current.len();
        if p == self.len() {
            emit(current);
            return;
        }
        for img in 0..target.len() {
            let ok = current.iter().enumerate().all(|(q, &qi)| {
                (!self.leq(q, p) || target.leq(qi, img)) && (!self.leq(p, q) || target.leq(img, qi))
            });
            if ok {
                current.push(img);
                self.extend_isotone(target, current, emit);
                current.pop();
            }
        }
    }

    /// Multichains `p_1 <= ... <= p_n`, i.e. isotone maps `[n] -> self`.
    pub fn multichains(&self, n: usize) -> Vec<Vec<usize>> {
        Poset::chain(n).isotone_maps(self)
    }

    /// True iff every element has at most one lower cover.
    pub fn is_rooted_forest(&self) -> bool {
        (0..self.len()).all(|q| self.lower_covers(q).nth(1).is_none())
    }

    /// The least element, if there is one.
    pub fn unique_min(&self) -> Option<usize> {
        let mins = self.min_of(self.all());
        if mins.len() == 1 {
            mins.iter().next()
        } else {
            None
        }
    }

    /// The subposet induced on `s`, keeping declaration order.
    pub fn induced(&self, s: ElemSet) -> Poset {
        let keep: Vec<usize> = s.iter().collect();
        let names: Vec<String> = keep.iter().map(|&i| self.names[i].clone()).collect();
        let mut rels = Vec::new();
        for (a, &p) in keep.iter().enumerate() {
            for (b, &q) in keep.iter().enumerate() {
                if self.lt(p, q) {
                    rels.push((a, b));
                }
            }
        }
        Poset::from_relations(names, &rels).expect("induced order is a partial order")
    }

    pub fn remove_element(&self, name: &str) -> Result<Poset> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))?;
        Ok(self.induced(self.all().difference(ElemSet::singleton(i))))
    }

    /// Connected components of the comparability graph, each as a subset,
    /// ordered by smallest element.
    pub fn component_sets(&self) -> Vec<ElemSet> {
        let mut remaining = self.all();
        let mut out = Vec::new();
        while let Some(start) = remaining.iter().next() {
            let mut comp = ElemSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = ElemSet::EMPTY;
                for p in frontier.iter() {
                    next = next.union(self.up[p]).union(self.down[p]);
                }
                frontier = next.difference(comp);
                comp = comp.union(next);
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Poset> {
        self.component_sets()
            .into_iter()
            .map(|s| self.induced(s))
            .collect()
    }

    /// Canonical encoding of a rooted forest up to isomorphism: each node is
    /// `(` followed by its sorted child encodings and `)`, and the forest is
    /// the sorted concatenation of its root encodings.
    pub fn forest_canonical_form(&self) -> Result<String> {
        if !self.is_rooted_forest() {
            return Err(Error::NotForest);
        }
        let roots: Vec<usize> = self.min_of(self.all()).iter().collect();
        let mut codes: Vec<String> = roots.into_iter().map(|r| self.node_code(r)).collect();
        codes.sort();
        Ok(codes.concat())
    }

    fn node_code(&self, p: usize) -> String {
        let mut children: Vec<String> = self.upper_covers(p).map(|c| self.node_code(c)).collect();
        children.sort();
        format!("({})", children.concat())
    }
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains([',', ';', '|'])
}

/// Returns the vertices of some directed cycle, closed (first == last).
fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(
        v: usize,
        succ: &[Vec<usize>],
        mark: &mut [Mark],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        mark[v] = Mark::Active;
        stack.push(v);
        for &w in &succ[v] {
            match mark[w] {
                Mark::Active => {
                    let start = stack.iter().position(|&x| x == w).unwrap();
                    let mut cycle = stack[start..].to_vec();
                    cycle.push(w);
                    return Some(cycle);
                }
                Mark::New => {
                    if let Some(c) = visit(w, succ, mark, stack) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        stack.pop();
        mark[v] = Mark::Done;
        None
    }
    let mut mark = vec![Mark::New; succ.len()];
    let mut stack = Vec::new();
    for v in 0..succ.len() {
        if mark[v] == Mark::New {
            if let Some(c) = visit(v, succ, &mut mark, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}
