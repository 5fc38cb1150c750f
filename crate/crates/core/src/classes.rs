//! Membership in the highly connected families `X_r` (non-trivially
//! connected) and `Y_r` (every vertex pair covered by an edge), plus a
//! sufficient condition for a pair to be Ramsey-dense.
//!
//! A vertex set `S` is a cut when deleting it leaves fewer than two vertices
//! or a disconnected remainder; `r`-partite means strongly `r`-partite (at
//! most `r` classes, each edge meets every class at most once).

use num_traits::One;
use thiserror::Error;

use crate::density::{self, DensityError, Rational};
use crate::hypergraph::{
    chromatic_number, is_connected, is_strongly_r_partite, is_vertex_cut, Hypergraph, VertexSet,
};

/// Exhaustive cut enumeration is limited to this many vertices.
pub const MAX_CLASS_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("class membership limited to {MAX_CLASS_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("uniformities differ: {0} vs {1}")]
    UniformityMismatch(usize, usize),
    #[error("need m_r(T) >= m_r(F) > 1, got m_r(T) = {mt}, m_r(F) = {mf}")]
    DensePrecondition { mt: Rational, mf: Rational },
    #[error(transparent)]
    Density(#[from] DensityError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub in_xr: bool,
    pub in_yr: bool,
    /// A cut `S` with `F[S]` strongly r-partite; present iff `in_xr` is
    /// false and the hypergraph is connected.
    pub xr_witness: Option<VertexSet>,
    /// A vertex pair lying in no common edge; present iff `in_yr` is false.
    pub yr_witness: Option<(usize, usize)>,
}

impl ClassReport {
    pub fn in_either(&self) -> bool {
        self.in_xr || self.in_yr
    }
}

/// Every pair of vertices lies in some edge. Returns the first uncovered
/// pair in lexicographic order otherwise.
pub fn in_yr(f: &Hypergraph) -> Result<(), (usize, usize)> {
    let n = f.n();
    let mut covered = vec![0u64; n];
    for &m in f.edge_masks() {
        for v in crate::hypergraph::bits(m) {
            covered[v] |= m;
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if covered[u] >> v & 1 == 0 {
                return Err((u, v));
            }
        }
    }
    Ok(())
}

/// Every vertex cut induces a non-r-partite sub-hypergraph.
///
/// Returns the smallest (lowest mask first) cut inducing a strongly
/// r-partite sub-hypergraph, or `None` if there is none. Connectivity of `f`
/// is not checked here; see [`in_xr`].
pub fn xr_violation(f: &Hypergraph) -> Result<Option<VertexSet>, ClassError> {
    if f.n() > MAX_CLASS_VERTICES {
        return Err(ClassError::TooLarge(f.n()));
    }
    let mut order: Vec<u64> = (0..1u64 << f.n()).collect();
    order.sort_by_key(|&s| (s.count_ones(), s));
    Ok(order.into_iter().map(VertexSet::from_mask).find(|&s| {
        is_vertex_cut(f, s) && is_strongly_r_partite(&f.induced_unchecked(s))
    }))
}

/// Is `f` in `X_r`? Disconnected hypergraphs are not.
pub fn in_xr(f: &Hypergraph) -> Result<(bool, Option<VertexSet>), ClassError> {
    if f.n() > MAX_CLASS_VERTICES {
        return Err(ClassError::TooLarge(f.n()));
    }
    if !is_connected(f) {
        return Ok((false, None));
    }
    let w = xr_violation(f)?;
    Ok((w.is_none(), w))
}

/// Both memberships with their witnesses.
pub fn classify(f: &Hypergraph) -> Result<ClassReport, ClassError> {
    let (in_xr, xr_witness) = in_xr(f)?;
    let yr = in_yr(f);
    Ok(ClassReport {
        in_xr,
        in_yr: yr.is_ok(),
        xr_witness,
        yr_witness: yr.err(),
    })
}

/// Outcome of the Ramsey-denseness sufficient condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Denseness {
    /// Graph pairs with `m_2(T) >= m_2(F) > 1` are always Ramsey-dense.
    ProvenGraphCase,
    /// `F′ = F[vertices]` is strictly r-balanced, has `m_r(F′) = m_r(F)`
    /// and chromatic number above `r`.
    Proven {
        vertices: VertexSet,
        /// Edge indices of `F` kept in `F′`; differs from all edges inside
        /// `vertices` only for the one-edge-deleted spanning candidate.
        edges: Vec<usize>,
        chromatic: usize,
    },
    /// No candidate satisfied the condition; denseness is not decided.
    Inconclusive,
}

impl Denseness {
    pub fn is_proven(&self) -> bool {
        !matches!(self, Denseness::Inconclusive)
    }
}

/// Sufficient condition for `(T, F)` to be Ramsey-dense.
///
/// Candidates for `F′` are the induced subgraphs of `F` and the spanning
/// subgraphs of `F` with one edge removed.
pub fn ramsey_dense_sufficient(t: &Hypergraph, f: &Hypergraph) -> Result<Denseness, ClassError> {
    if t.r() != f.r() {
        return Err(ClassError::UniformityMismatch(t.r(), f.r()));
    }
    let mt = density::max_r_density(t)?.value;
    let mf = density::max_r_density(f)?.value;
    if mf <= Rational::one() || mt < mf {
        return Err(ClassError::DensePrecondition { mt, mf });
    }
    if f.r() == 2 {
        return Ok(Denseness::ProvenGraphCase);
    }
    let r = f.r();

    let mut candidates: Vec<(VertexSet, Vec<usize>)> = Vec::new();
    let mut subsets: Vec<u64> = (1..1u64 << f.n()).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), s));
    for s in subsets {
        let kept: Vec<usize> = (0..f.edge_count())
            .filter(|&i| f.edge_masks()[i] & !s == 0)
            .collect();
        if !kept.is_empty() {
            candidates.push((VertexSet::from_mask(s), kept));
        }
    }
    for drop in 0..f.edge_count() {
        let kept: Vec<usize> = (0..f.edge_count()).filter(|&i| i != drop).collect();
        candidates.push((f.vertices(), kept));
    }

    for (vertices, edges) in candidates {
        let sub = f.with_edges(edges.iter().copied()).induced_unchecked(vertices);
        if density::max_r_density(&sub)?.value != mf || !density::is_strictly_r_balanced(&sub)? {
            continue;
        }
        let chromatic = chromatic_number(&sub);
        if chromatic > r {
            return Ok(Denseness::Proven {
                vertices,
                edges,
                chromatic,
            });
        }
    }
    Ok(Denseness::Inconclusive)
}
