//! r-uniform hypergraphs and the structural primitives built on them.
//!
//! Vertices are `0..n` and every edge is stored as a `u64` bit mask, so a
//! hypergraph holds at most [`MAX_VERTICES`] vertices. Edges are kept sorted
//! by the lexicographic order of their ascending vertex lists, which makes
//! edge indices, serialization and every search built on top deterministic.

mod canon;
mod embed;
mod format;
mod structure;

pub use canon::{canonical_form, canonical_form_bounded, CanonError, CanonicalKey, DEFAULT_CANON_BOUND};
pub use embed::{contains_copy, copies_of, HostCopy};
pub use format::ParseError;
pub use structure::{chromatic_number, is_connected, is_strongly_r_partite, is_vertex_cut};

use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Hypergraph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("edge {edge:?} has {got} distinct vertices, expected {expected}")]
    Arity {
        edge: Vec<usize>,
        got: usize,
        expected: usize,
    },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("uniformities differ: {0} vs {1}")]
    UniformityMismatch(usize, usize),
}

/// Iterate the set bits of a mask in ascending order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    bits(a).cmp(bits(b))
}

/// A set of vertices, stored as a bit mask over `0..64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub const fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn full(n: usize) -> Self {
        VertexSet(full_mask(n))
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(vs.into_iter().fold(0, |m, v| m | (1u64 << v)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An r-uniform hypergraph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<u64>,
}

impl Hypergraph {
    /// Build a hypergraph from explicit edge lists. Vertex order inside an
    /// edge does not matter; duplicates are rejected.
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        check_header(r, n)?;
        let mut masks = Vec::new();
        for e in edges {
            let e = e.as_ref();
            let mut mask = 0u64;
            for &v in e {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
                }
                mask |= 1 << v;
            }
            if mask.count_ones() as usize != r || e.len() != r {
                return Err(HypergraphError::Arity {
                    edge: e.to_vec(),
                    got: mask.count_ones() as usize,
                    expected: r,
                });
            }
            masks.push(mask);
        }
        masks.sort_by(|a, b| mask_cmp(*a, *b));
        if let Some(w) = masks.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateEdge(bits(w[0]).collect()));
        }
        Ok(Hypergraph { r, n, edges: masks })
    }

    /// Build from edge masks that are known to be valid r-sets inside `0..n`.
    /// Duplicates are removed.
    pub(crate) fn from_masks(r: usize, n: usize, mut masks: Vec<u64>) -> Self {
        debug_assert!(masks
            .iter()
            .all(|m| m.count_ones() as usize == r && m & !full_mask(n) == 0));
        masks.sort_by(|a, b| mask_cmp(*a, *b));
        masks.dedup();
        Hypergraph { r, n, edges: masks }
    }

    pub fn empty(r: usize, n: usize) -> Result<Self, HypergraphError> {
        check_header(r, n)?;
        Ok(Hypergraph {
            r,
            n,
            edges: Vec::new(),
        })
    }

    /// The complete r-graph on `n` vertices.
    pub fn complete(r: usize, n: usize) -> Result<Self, HypergraphError> {
        check_header(r, n)?;
        Ok(Self::from_masks(r, n, r_subsets(full_mask(n), r)))
    }

    /// Cycle on `n ≥ 3` vertices (graphs only).
    pub fn cycle(n: usize) -> Result<Self, HypergraphError> {
        let edges: Vec<[usize; 2]> = (0..n).map(|i| [i, (i + 1) % n]).collect();
        Self::new(2, n, edges)
    }

    /// Path on `n` vertices (graphs only).
    pub fn path(n: usize) -> Result<Self, HypergraphError> {
        let edges: Vec<[usize; 2]> = (1..n).map(|i| [i - 1, i]).collect();
        Self::new(2, n, edges)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edge masks in canonical (lexicographic) order.
    pub fn edge_masks(&self) -> &[u64] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Vec<usize> {
        bits(self.edges[i]).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.edges.iter().map(|&m| bits(m).collect())
    }

    pub fn has_edge_mask(&self, mask: u64) -> bool {
        self.edges
            .binary_search_by(|probe| mask_cmp(*probe, mask))
            .is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&m| m >> v & 1 == 1).count()
    }

    /// Vertices lying in at least one edge.
    pub fn covered(&self) -> VertexSet {
        VertexSet(self.edges.iter().fold(0, |acc, m| acc | m))
    }

    /// Number of edges lying entirely inside `w`.
    pub fn edges_within(&self, w: VertexSet) -> usize {
        self.edges.iter().filter(|&&m| m & !w.0 == 0).count()
    }

    /// Induced sub-hypergraph on `w`, relabeled to `0..|w|` preserving order.
    pub fn induced(&self, w: VertexSet) -> Result<Hypergraph, HypergraphError> {
        if let Some(v) = w.iter().find(|&v| v >= self.n) {
            return Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.induced_unchecked(w))
    }

    pub(crate) fn induced_unchecked(&self, w: VertexSet) -> Hypergraph {
        let relabel = compress_map(w.0);
        let masks = self
            .edges
            .iter()
            .filter(|&&m| m & !w.0 == 0)
            .map(|&m| bits(m).fold(0u64, |acc, v| acc | 1 << relabel[v]))
            .collect();
        Hypergraph::from_masks(self.r, w.len(), masks)
    }

    /// Spanning sub-hypergraph keeping only the edges at the given indices.
    pub fn with_edges(&self, keep: impl IntoIterator<Item = usize>) -> Hypergraph {
        let masks = keep.into_iter().map(|i| self.edges[i]).collect();
        Hypergraph::from_masks(self.r, self.n, masks)
    }

    /// Copy of `self` with isolated vertices removed and the rest relabeled.
    pub fn strip_isolated(&self) -> Hypergraph {
        self.induced_unchecked(self.covered())
    }

    /// Apply a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let masks = self
            .edges
            .iter()
            .map(|&m| bits(m).fold(0u64, |acc, v| acc | 1 << perm[v]))
            .collect();
        Hypergraph::from_masks(self.r, self.n, masks)
    }

    /// Mask of vertices sharing at least one edge with `v`.
    pub(crate) fn shadow_neighbors(&self, v: usize) -> u64 {
        let bit = 1u64 << v;
        self.edges
            .iter()
            .filter(|&&m| m & bit != 0)
            .fold(0, |acc, m| acc | m)
            & !bit
    }
}

fn check_header(r: usize, n: usize) -> Result<(), HypergraphError> {
    if r < 2 {
        return Err(HypergraphError::BadUniformity(r));
    }
    if n > MAX_VERTICES {
        return Err(HypergraphError::TooManyVertices(n));
    }
    Ok(())
}

/// `relabel[v]` = rank of `v` among the set bits of `mask`.
fn compress_map(mask: u64) -> [usize; 64] {
    let mut map = [usize::MAX; 64];
    for (i, v) in bits(mask).enumerate() {
        map[v] = i;
    }
    map
}

/// All `k`-element subsets of `mask`, as masks, in lexicographic order of
/// their ascending vertex lists.
pub(crate) fn r_subsets(mask: u64, k: usize) -> Vec<u64> {
    let verts: Vec<usize> = bits(mask).collect();
    let mut out = Vec::new();
    if k > verts.len() {
        return out;
    }
    let m = verts.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << verts[i]));
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}
