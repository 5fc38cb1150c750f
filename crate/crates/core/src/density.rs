//! Exact density parameters: maximum density `m`, maximum r-density `m_r`,
//! the asymmetric maximum r-density `m_r(T, F)`, strict balance, hearts and
//! the `δ = max{μ, σ}` threshold parameter.
//!
//! Every maximum is taken over vertex subsets only. Adding edges on a fixed
//! vertex set never lowers any of the three ratios, so the induced subgraph
//! on a vertex set dominates every other subgraph on it. For "proper
//! subgraph" questions the candidates are the proper induced subgraphs plus
//! the spanning subgraph with one edge removed, which dominates every
//! spanning proper subgraph for the same reason.
//!
//! All arithmetic is exact.

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexSet};

pub type Rational = Ratio<i64>;

/// Largest vertex count accepted by the subset enumerations here.
pub const MAX_DENSITY_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("density enumeration limited to {MAX_DENSITY_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("uniformities differ: {0} vs {1}")]
    UniformityMismatch(usize, usize),
    #[error("need m_r(T) >= m_r(F) > 0, got m_r(T) = {mt}, m_r(F) = {mf}")]
    Precondition { mt: Rational, mf: Rational },
    #[error("need 2 <= s < t, got s = {s}, t = {t}")]
    BadSplit { s: usize, t: usize },
    #[error("m_r must be non-increasing along the tuple: m_r(Q{}) = {} < m_r(Q{}) = {}", .index, .prev, .index + 1, .next)]
    Unsorted {
        index: usize,
        prev: Rational,
        next: Rational,
    },
    #[error("m_r(Q{}) = 0; every member needs an edge", .0 + 1)]
    ZeroDensity(usize),
    #[error("no {0} found; the heart search is incomplete")]
    NoHeart(&'static str),
}

/// A maximum together with a vertex set attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub value: Rational,
    /// Vertex set of an induced subgraph attaining `value`: the smallest
    /// one, ties broken by the lowest vertex mask.
    pub maximizer: VertexSet,
    /// The maximum is attained by the whole hypergraph and by no proper
    /// subgraph.
    pub unique_at_whole: bool,
}

/// A heart `(T′, F′)` of a pair `(T, F)`; both parts are induced
/// subgraphs, recorded with the vertex sets they were taken on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heart {
    pub t_prime: Hypergraph,
    pub t_vertices: VertexSet,
    pub f_prime: Hypergraph,
    pub f_vertices: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaReport {
    pub mu: Rational,
    pub sigma: Rational,
    pub delta: Rational,
    /// Zero-based index `i < s` with `σ = m_r(Q_i, Q_s)`; first one on ties.
    pub sigma_index: usize,
}

fn check_size(h: &Hypergraph) -> Result<(), DensityError> {
    if h.n() > MAX_DENSITY_VERTICES {
        Err(DensityError::TooLarge(h.n()))
    } else {
        Ok(())
    }
}

/// Edge counts of every induced subgraph, indexed by vertex mask.
fn induced_edge_counts(h: &Hypergraph) -> Vec<u32> {
    let n = h.n();
    let mut counts = vec![0u32; 1 << n];
    // e(W) = e(W - top) + #edges inside W containing top.
    for w in 1usize..1 << n {
        let top = usize::BITS - 1 - w.leading_zeros();
        let rest = w & !(1 << top);
        let with_top = h
            .edge_masks()
            .iter()
            .filter(|&&m| m >> top & 1 == 1 && m & !(w as u64) == 0)
            .count() as u32;
        counts[w] = counts[rest] + with_top;
    }
    counts
}

/// Maximize `ratio(|W|, e(W))` over vertex masks `W` accepted by `admit`.
/// Returns the best value and the smallest (then lowest-mask) maximizer.
fn maximize<A, R>(h: &Hypergraph, admit: A, ratio: R) -> Option<(Rational, u64)>
where
    A: Fn(usize, usize) -> bool,
    R: Fn(usize, usize) -> Rational,
{
    let counts = induced_edge_counts(h);
    let mut best: Option<(Rational, u64)> = None;
    for (w, &e) in counts.iter().enumerate() {
        let (v, e) = ((w as u64).count_ones() as usize, e as usize);
        if !admit(v, e) {
            continue;
        }
        let value = ratio(v, e);
        let replace = match best {
            None => true,
            Some((b, bw)) => {
                value > b || (value == b && (v, w as u64) < (bw.count_ones() as usize, bw))
            }
        };
        if replace {
            best = Some((value, w as u64));
        }
    }
    best
}

/// Largest ratio over the proper candidates: proper induced subgraphs plus
/// the spanning subgraph missing one edge.
fn proper_max<A, R>(h: &Hypergraph, admit: A, ratio: R) -> Option<Rational>
where
    A: Fn(usize, usize) -> bool,
    R: Fn(usize, usize) -> Rational,
{
    let full = (1usize << h.n()) - 1;
    let counts = induced_edge_counts(h);
    let induced = counts
        .iter()
        .enumerate()
        .filter(|&(w, _)| w != full)
        .map(|(w, &e)| ((w as u64).count_ones() as usize, e as usize))
        .filter(|&(v, e)| admit(v, e))
        .map(|(v, e)| ratio(v, e));
    let spanning = (h.edge_count() >= 1)
        .then(|| (h.n(), h.edge_count() - 1))
        .filter(|&(v, e)| admit(v, e))
        .map(|(v, e)| ratio(v, e));
    induced.chain(spanning).max()
}

fn r64(x: usize) -> i64 {
    x as i64
}

/// `m(F) = max e(J)/v(J)`; 0 for edgeless input.
pub fn max_density(f: &Hypergraph) -> Result<DensityReport, DensityError> {
    check_size(f)?;
    if f.edge_count() == 0 {
        return Ok(DensityReport {
            value: Rational::zero(),
            maximizer: VertexSet::empty(),
            unique_at_whole: f.n() == 0,
        });
    }
    let admit = |v: usize, _e: usize| v > 0;
    let ratio = |v: usize, e: usize| Rational::new(r64(e), r64(v));
    let (value, w) = maximize(f, admit, ratio).expect("nonempty vertex set exists");
    let whole = ratio(f.n(), f.edge_count());
    let unique = whole == value && proper_max(f, admit, ratio).map_or(true, |p| p < value);
    Ok(DensityReport {
        value,
        maximizer: VertexSet::from_mask(w),
        unique_at_whole: unique,
    })
}

/// `m_r(F)`: 0 without edges, `1/r` with one edge, otherwise
/// `max (e(J) − 1)/(v(J) − r)` over `v(J) > r`.
pub fn max_r_density(f: &Hypergraph) -> Result<DensityReport, DensityError> {
    check_size(f)?;
    let r = f.r();
    match f.edge_count() {
        0 => Ok(DensityReport {
            value: Rational::zero(),
            maximizer: VertexSet::empty(),
            unique_at_whole: f.n() == 0,
        }),
        1 => Ok(DensityReport {
            value: Rational::new(1, r64(r)),
            maximizer: VertexSet::from_mask(f.edge_masks()[0]),
            unique_at_whole: f.n() == r,
        }),
        _ => {
            let admit = |v: usize, _e: usize| v > r;
            let ratio = |v: usize, e: usize| Rational::new(r64(e) - 1, r64(v - r));
            let (value, w) = maximize(f, admit, ratio).expect("two edges span more than r vertices");
            let whole = ratio(f.n(), f.edge_count());
            let unique =
                whole == value && proper_max(f, admit, ratio).map_or(true, |p| p < value);
            Ok(DensityReport {
                value,
                maximizer: VertexSet::from_mask(w),
                unique_at_whole: unique,
            })
        }
    }
}

fn mr(f: &Hypergraph) -> Result<Rational, DensityError> {
    Ok(max_r_density(f)?.value)
}

/// Shared precondition for the asymmetric parameter; returns `(m_r(T), m_r(F))`.
fn asym_pre(t: &Hypergraph, f: &Hypergraph) -> Result<(Rational, Rational), DensityError> {
    if t.r() != f.r() {
        return Err(DensityError::UniformityMismatch(t.r(), f.r()));
    }
    let (mt, mf) = (mr(t)?, mr(f)?);
    if mf <= Rational::zero() || mt < mf {
        return Err(DensityError::Precondition { mt, mf });
    }
    Ok((mt, mf))
}

fn asym_ratio(r: usize, mf: Rational) -> impl Fn(usize, usize) -> Rational {
    let inv = mf.recip();
    move |v: usize, e: usize| Rational::from_integer(r64(e)) / (Rational::from_integer(r64(v) - r64(r)) + inv)
}

/// `m_r(T, F) = max e(J)/(v(J) − r + 1/m_r(F))` over `J ⊆ T` with
/// `v(J) ≥ r` and at least one edge.
pub fn asym_density(t: &Hypergraph, f: &Hypergraph) -> Result<DensityReport, DensityError> {
    check_size(t)?;
    let (_, mf) = asym_pre(t, f)?;
    Ok(asym_with(t, mf))
}

fn asym_with(t: &Hypergraph, mf: Rational) -> DensityReport {
    let r = t.r();
    let admit = |v: usize, e: usize| v >= r && e >= 1;
    let ratio = asym_ratio(r, mf);
    let (value, w) = maximize(t, admit, &ratio).expect("T has an edge");
    let whole = ratio(t.n(), t.edge_count());
    let unique = whole == value && proper_max(t, admit, &ratio).map_or(true, |p| p < value);
    DensityReport {
        value,
        maximizer: VertexSet::from_mask(w),
        unique_at_whole: unique,
    }
}

/// `m_r(F) > m_r(J)` for every proper subgraph `J`. A single edge is
/// strictly balanced; an edgeless hypergraph is not.
pub fn is_strictly_r_balanced(f: &Hypergraph) -> Result<bool, DensityError> {
    check_size(f)?;
    let r = f.r();
    match f.edge_count() {
        0 => Ok(false),
        1 => Ok(f.n() == r),
        _ => {
            let value = mr(f)?;
            // Any proper subgraph keeping a single edge has m_r = 1/r.
            let single = Rational::new(1, r64(r));
            let ratio = |v: usize, e: usize| Rational::new(r64(e) - 1, r64(v - r));
            let sub = proper_max(f, |v, e| v > r && e >= 2, ratio);
            Ok(sub.map_or(single, |s| s.max(single)) < value)
        }
    }
}

/// `T` is strictly `F`-balanced when `m_r(T, F)` is attained only by `T`.
///
/// When `m_r(T) = m_r(F)` a single edge of `T` always attains
/// `m_r(T, F) = m_r(F)`, so the literal condition can only hold for a single
/// edge; in that case strict `r`-balance of `T` is used instead.
pub fn is_strictly_f_balanced(t: &Hypergraph, f: &Hypergraph) -> Result<bool, DensityError> {
    check_size(t)?;
    let (mt, mf) = asym_pre(t, f)?;
    if mt == mf {
        return is_strictly_r_balanced(t);
    }
    Ok(asym_with(t, mf).unique_at_whole)
}

/// Find a heart of `(T, F)`: the one minimizing
/// `(v(F′), e(F′), v(T′), e(T′))`, remaining ties broken by vertex mask.
pub fn find_heart(t: &Hypergraph, f: &Hypergraph) -> Result<Heart, DensityError> {
    check_size(t)?;
    check_size(f)?;
    let (mt, mf) = asym_pre(t, f)?;

    let f_vertices = smallest_subset(f, |sub| {
        Ok(mr(sub)? == mf && is_strictly_r_balanced(sub)?)
    })?
    .ok_or(DensityError::NoHeart("F'"))?;
    let f_prime = f.induced_unchecked(f_vertices);

    let t_vertices = if mt == mf {
        smallest_subset(t, |sub| Ok(mr(sub)? == mt && is_strictly_r_balanced(sub)?))?
    } else {
        let target = asym_with(t, mf).value;
        smallest_subset(t, |sub| {
            let m_sub = mr(sub)?;
            if m_sub < mf {
                return Ok(false);
            }
            Ok(asym_with(sub, mf).value == target && is_strictly_f_balanced(sub, &f_prime)?)
        })?
    }
    .ok_or(DensityError::NoHeart("T'"))?;
    Ok(Heart {
        t_prime: t.induced_unchecked(t_vertices),
        t_vertices,
        f_prime,
        f_vertices,
    })
}

/// Smallest induced subgraph without isolated vertices satisfying `pred`,
/// ordered by `(v, e, mask)`.
fn smallest_subset<P>(h: &Hypergraph, pred: P) -> Result<Option<VertexSet>, DensityError>
where
    P: Fn(&Hypergraph) -> Result<bool, DensityError>,
{
    let counts = induced_edge_counts(h);
    let mut order: Vec<(usize, u32, u64)> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(w, &e)| ((w as u64).count_ones() as usize, e, w as u64))
        .collect();
    order.sort_unstable();
    for (_, _, w) in order {
        let sub = h.induced_unchecked(VertexSet::from_mask(w));
        if sub.covered().len() != sub.n() {
            continue;
        }
        if pred(&sub)? {
            return Ok(Some(VertexSet::from_mask(w)));
        }
    }
    Ok(None)
}

/// `μ = max m(Q_j)`, `σ = min_{i < s} m_r(Q_i, Q_s)` (zero-based `Q_s` is
/// the `(s+1)`-th member) and `δ = max{μ, σ}`.
pub fn delta_parameter(qs: &[Hypergraph], s: usize) -> Result<DeltaReport, DensityError> {
    let t = qs.len();
    if s < 2 || s >= t {
        return Err(DensityError::BadSplit { s, t });
    }
    let r = qs[0].r();
    if let Some(q) = qs.iter().find(|q| q.r() != r) {
        return Err(DensityError::UniformityMismatch(r, q.r()));
    }
    let densities = qs.iter().map(mr).collect::<Result<Vec<_>, _>>()?;
    if let Some(i) = densities.iter().position(|d| d.is_zero()) {
        return Err(DensityError::ZeroDensity(i));
    }
    if let Some(i) = (1..t).find(|&i| densities[i - 1] < densities[i]) {
        return Err(DensityError::Unsorted {
            index: i,
            prev: densities[i - 1],
            next: densities[i],
        });
    }
    let mu = qs
        .iter()
        .map(|q| max_density(q).map(|d| d.value))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .expect("t >= 3");
    let mut sigma: Option<(Rational, usize)> = None;
    for (i, q) in qs.iter().enumerate().take(s) {
        let v = asym_density(q, &qs[s])?.value;
        if sigma.map_or(true, |(b, _)| v < b) {
            sigma = Some((v, i));
        }
    }
    let (sigma, sigma_index) = sigma.expect("s >= 2");
    Ok(DeltaReport {
        mu,
        sigma,
        delta: mu.max(sigma),
        sigma_index,
    })
}
