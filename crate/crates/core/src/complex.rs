//! Simplicial complexes presented by their minimal nonfaces, and exact
//! reduced homology over a field.

use std::collections::{HashMap, HashSet};

use crate::error::{guard, Error, Result};
use crate::field::FieldSpec;
use crate::limits::{limits, MASK_BITS};
use crate::linalg::{self, SparseCol};
use crate::poly::HPoly;

/// A simplicial complex on an ordered vertex list. A subset of the vertices
/// is a face iff it contains none of the `nonfaces`, which are kept
/// inclusion-minimal (they generate the Stanley-Reisner ideal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SComplex {
    vertices: Vec<String>,
    nonfaces: Vec<u64>,
}

impl SComplex {
    pub fn from_nonfaces<S: AsRef<str>>(vertices: &[S], generators: &[Vec<S>]) -> Result<SComplex> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index = vertex_index(&names)?;
        let masks = generators
            .iter()
            .map(|g| {
                g.iter().try_fold(0u64, |m, v| {
                    index
                        .get(v.as_ref())
                        .map(|&i| m | (1 << i))
                        .ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()))
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        SComplex::from_masks(names, masks)
    }

    /// Builds a complex from vertex names and nonfaces given as bitmasks over
    /// the vertex positions. Non-minimal generators are dropped.
    pub fn from_masks(vertices: Vec<String>, nonfaces: Vec<u64>) -> Result<SComplex> {
        vertex_index(&vertices)?;
        let full = full_mask(vertices.len());
        if nonfaces.contains(&0) {
            return Err(Error::EmptyNonface);
        }
        if let Some(&n) = nonfaces.iter().find(|&&n| n & !full != 0) {
            return Err(Error::UnknownVertex(format!(
                "bit {}",
                (n & !full).trailing_zeros()
            )));
        }
        Ok(SComplex {
            vertices,
            nonfaces: minimal_sets(nonfaces),
        })
    }

    /// Builds the complex generated by the given facets (bitmasks). An empty
    /// facet list is not allowed (it would be the void complex); use a single
    /// empty facet for `{∅}`.
    pub fn from_facets(vertices: Vec<String>, facets: &[u64]) -> Result<SComplex> {
        vertex_index(&vertices)?;
        let n = vertices.len();
        if facets.is_empty() {
            return Err(Error::EmptyNonface);
        }
        let mut faces: HashSet<u64> = HashSet::new();
        for &f in facets {
            let mut sub = f;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
            guard("faces", faces.len(), limits().max_faces)?;
        }
        let mut nonfaces = HashSet::new();
        for &g in &faces {
            for v in 0..n {
                let s = g | (1 << v);
                if s == g || faces.contains(&s) {
                    continue;
                }
                let minimal = bits(s).all(|u| faces.contains(&(s & !(1 << u))));
                if minimal {
                    nonfaces.insert(s);
                }
            }
        }
        let mut nonfaces: Vec<u64> = nonfaces.into_iter().collect();
        nonfaces.sort_unstable();
        SComplex::from_masks(vertices, nonfaces)
    }

    /// The full simplex on the given vertices.
    pub fn simplex(vertices: Vec<String>) -> Result<SComplex> {
        SComplex::from_masks(vertices, Vec::new())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Minimal nonfaces as bitmasks over vertex positions, sorted.
    pub fn nonfaces(&self) -> &[u64] {
        &self.nonfaces
    }

    /// Minimal nonfaces as lists of vertex names.
    pub fn nonface_names(&self) -> Vec<Vec<String>> {
        self.nonfaces
            .iter()
            .map(|&n| bits(n).map(|i| self.vertices[i].clone()).collect())
            .collect()
    }

    pub fn vertex_mask<S: AsRef<str>>(&self, names: &[S]) -> Result<u64> {
        names.iter().try_fold(0u64, |m, v| {
            self.vertices
                .iter()
                .position(|x| x == v.as_ref())
                .map(|i| m | (1 << i))
                .ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()))
        })
    }

    pub fn is_face(&self, mask: u64) -> bool {
        self.nonfaces.iter().all(|&n| n & !mask != 0)
    }

    /// Restriction to the vertex subset given by name.
    pub fn restrict<S: AsRef<str>>(&self, names: &[S]) -> Result<SComplex> {
        Ok(self.restrict_mask(self.vertex_mask(names)?))
    }

    /// Restriction to a vertex subset given as a bitmask. Nonfaces not
    /// contained in the subset impose nothing and are dropped.
    pub fn restrict_mask(&self, mask: u64) -> SComplex {
        let vertices = bits(mask).map(|i| self.vertices[i].clone()).collect();
        let nonfaces = self
            .nonfaces
            .iter()
            .filter(|&&n| n & !mask == 0)
            .map(|&n| compress(n, mask))
            .collect();
        SComplex { vertices, nonfaces }
    }

    /// Faces grouped by size: entry `k` holds the faces with `k` vertices
    /// (so entry 0 is `[∅]`).
    pub fn faces(&self) -> Result<Vec<Vec<u64>>> {
        enumerate_faces(self.vertices.len(), &self.nonfaces)
    }

    /// Number of faces of each dimension, starting at dimension -1.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        Ok(self.faces()?.iter().map(Vec::len).collect())
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Result<Vec<u64>> {
        let faces = self.faces()?;
        let n = self.vertices.len();
        let mut out = Vec::new();
        for layer in &faces {
            for &f in layer {
                let maximal = (0..n).all(|v| f >> v & 1 == 1 || !self.is_face(f | (1 << v)));
                if maximal {
                    out.push(f);
                }
            }
        }
        Ok(out)
    }

    /// Reduced homology dimensions `dim H̃_d(X; k)` as a polynomial in `t`.
    ///
    /// Cones are recognized as contractible, and a complex whose nonfaces
    /// fall into groups on disjoint vertex sets is handled as the join of
    /// its pieces; each piece goes through [`SComplex::reduced_homology_direct`].
    pub fn reduced_homology(&self, field: FieldSpec) -> Result<HPoly> {
        homology_with_shortcuts(self.vertices.len(), &self.nonfaces, field)
    }

    /// Reduced homology from the full augmented chain complex, with no
    /// structural shortcuts.
    pub fn reduced_homology_direct(&self, field: FieldSpec) -> Result<HPoly> {
        homology_direct(self.vertices.len(), &self.nonfaces, field)
    }

    /// The join on the disjoint union of the vertex sets; its nonfaces are
    /// those of both factors.
    pub fn join(&self, other: &SComplex) -> Result<SComplex> {
        if let Some(v) = self.vertices.iter().find(|v| other.vertices.contains(v)) {
            return Err(Error::OverlappingVertices(v.clone()));
        }
        let off = self.vertices.len();
        guard("join vertices", off + other.vertices.len(), MASK_BITS)?;
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let mut nonfaces = self.nonfaces.clone();
        nonfaces.extend(other.nonfaces.iter().map(|&n| n << off));
        Ok(SComplex { vertices, nonfaces })
    }

    /// Join with two fresh points that form a nonface.
    pub fn suspension(&self) -> Result<SComplex> {
        let fresh = |base: &str| {
            let mut name = base.to_string();
            while self.vertices.contains(&name) {
                name.push('\'');
            }
            name
        };
        let poles = SComplex {
            vertices: vec![fresh("_s+"), fresh("_s-")],
            nonfaces: vec![0b11],
        };
        self.join(&poles)
    }

    /// For a bipartite edge-ideal complex on `a ∪ b`, repeatedly deletes a
    /// vertex whose neighbourhood contains the neighbourhood of another
    /// vertex on the same side. Each deletion is a homotopy equivalence.
    ///
    /// Among all deletable vertices the last in vertex order goes first; a
    /// vertex is deletable through an equal neighbourhood only if the other
    /// vertex comes earlier.
    pub fn reduce_dominated<S: AsRef<str>>(&self, a: &[S], b: &[S]) -> Result<SComplex> {
        let a = self.vertex_mask(a)?;
        let b = self.vertex_mask(b)?;
        let full = full_mask(self.vertices.len());
        if a & b != 0 || a | b != full {
            return Err(Error::NotBipartite(
                "sides must partition the vertex set".into(),
            ));
        }
        if let Some(&n) = self
            .nonfaces
            .iter()
            .find(|&&n| n.count_ones() != 2 || (n & a).count_ones() != 1)
        {
            let names: Vec<&str> = bits(n).map(|i| self.vertices[i].as_str()).collect();
            return Err(Error::NotBipartite(format!(
                "nonface {{{}}}",
                names.join(",")
            )));
        }
        let n = self.vertices.len();
        let mut nbr = vec![0u64; n];
        for &e in &self.nonfaces {
            let (u, v) = (e.trailing_zeros() as usize, 63 - e.leading_zeros() as usize);
            nbr[u] |= 1 << v;
            nbr[v] |= 1 << u;
        }
        let mut alive = full;
        loop {
            let side_of = |v: usize| if a >> v & 1 == 1 { a } else { b };
            let deletable = |v: usize| {
                bits(alive & side_of(v) & !(1 << v)).any(|u| {
                    let (nu, nv) = (nbr[u] & alive, nbr[v] & alive);
                    nu & !nv == 0 && (nu != nv || u < v)
                })
            };
            match bits(alive).rev().find(|&v| deletable(v)) {
                Some(v) => alive &= !(1 << v),
                None => break,
            }
        }
        Ok(self.restrict_mask(alive))
    }

    /// Debug dump of the nonfaces as a JSON list of vertex-name lists. The
    /// format is not stable.
    pub fn debug_json(&self) -> String {
        serde_json::to_string(&self.nonface_names()).expect("strings serialize")
    }
}

fn vertex_index(names: &[String]) -> Result<HashMap<&str, usize>> {
    guard("vertices", names.len(), MASK_BITS)?;
    let mut index = HashMap::with_capacity(names.len());
    for (i, v) in names.iter().enumerate() {
        if index.insert(v.as_str(), i).is_some() {
            return Err(Error::DuplicateVertex(v.clone()));
        }
    }
    Ok(index)
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Set bits of `m` in increasing order.
pub(crate) fn bits(m: u64) -> Bits {
    Bits(m)
}

pub(crate) struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl DoubleEndedIterator for Bits {
    fn next_back(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = 63 - self.0.leading_zeros() as usize;
        self.0 &= !(1 << i);
        Some(i)
    }
}

/// Packs the bits of `x` selected by `mask` into the low bits.
pub(crate) fn compress(x: u64, mask: u64) -> u64 {
    bits(mask)
        .enumerate()
        .fold(0, |acc, (k, i)| acc | ((x >> i & 1) << k))
}

fn minimal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut out: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|&m| m & !s == 0) {
            out.push(s);
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn enumerate_faces(n: usize, nonfaces: &[u64]) -> Result<Vec<Vec<u64>>> {
    let mut through: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &nf in nonfaces {
        for v in bits(nf) {
            through[v].push(nf);
        }
    }
    let max_faces = limits().max_faces;
    let mut layers = vec![vec![0u64]];
    let mut total = 1usize;
    loop {
        let last = layers.last().unwrap();
        let mut next = Vec::new();
        for &f in last {
            let start = if f == 0 {
                0
            } else {
                64 - f.leading_zeros() as usize
            };
            for v in start..n {
                let g = f | (1 << v);
                if through[v].iter().all(|&nf| nf & !g != 0) {
                    next.push(g);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        total += next.len();
        guard("faces", total, max_faces)?;
        layers.push(next);
    }
    Ok(layers)
}

pub(crate) fn homology_direct(n: usize, nonfaces: &[u64], field: FieldSpec) -> Result<HPoly> {
    let layers = enumerate_faces(n, nonfaces)?;
    // ranks[k] = rank of the boundary from faces with k vertices to k-1.
    let mut ranks = vec![0usize; layers.len() + 1];
    for k in 1..layers.len() {
        let index: HashMap<u64, u32> = layers[k - 1]
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i as u32))
            .collect();
        let cols: Vec<SparseCol> = layers[k]
            .iter()
            .map(|&g| {
                let mut col: SparseCol = bits(g)
                    .enumerate()
                    .map(|(j, v)| {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        (index[&(g & !(1 << v))], sign)
                    })
                    .collect();
                col.sort_unstable_by_key(|e| e.0);
                col
            })
            .collect();
        ranks[k] = linalg::rank(&cols, layers[k - 1].len(), field);
    }
    let mut poly = HPoly::zero();
    for (k, layer) in layers.iter().enumerate() {
        let dim = layer.len() - ranks[k] - ranks[k + 1];
        poly.add_term(k as i32 - 1, dim as u64);
    }
    Ok(poly)
}

pub(crate) fn homology_with_shortcuts(
    n: usize,
    nonfaces: &[u64],
    field: FieldSpec,
) -> Result<HPoly> {
    if n == 0 {
        return Ok(HPoly::monomial(-1, 1));
    }
    let covered = nonfaces.iter().fold(0u64, |m, &nf| m | nf);
    if covered != full_mask(n) {
        // Some vertex lies in no nonface: the complex is a cone.
        return Ok(HPoly::zero());
    }
    let parts = linked_components(n, nonfaces);
    if parts.len() == 1 {
        return homology_direct(n, nonfaces, field);
    }
    // t·H̃(X * Y) = t·H̃(X) · t·H̃(Y)
    let mut product = HPoly::one();
    for part in parts {
        let local: Vec<u64> = nonfaces
            .iter()
            .filter(|&&nf| nf & !part == 0)
            .map(|&nf| compress(nf, part))
            .collect();
        let h = homology_direct(part.count_ones() as usize, &local, field)?;
        product = &product * &h.shift(1);
        if product.is_zero() {
            break;
        }
    }
    Ok(product.shift(-1))
}

/// Vertex sets of the connected components of the hypergraph of nonfaces.
fn linked_components(n: usize, nonfaces: &[u64]) -> Vec<u64> {
    let mut remaining = full_mask(n);
    let mut parts = Vec::new();
    while remaining != 0 {
        let mut part = 1u64 << remaining.trailing_zeros();
        loop {
            let grown = nonfaces
                .iter()
                .filter(|&&nf| nf & part != 0)
                .fold(part, |m, &nf| m | nf);
            if grown == part {
                break;
            }
            part = grown;
        }
        remaining &= !part;
        parts.push(part);
    }
    parts
}
