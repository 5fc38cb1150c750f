//! Canonical forms for small hypergraphs.
//!
//! Vertices are first split into classes by color refinement (an
//! isomorphism invariant), and labels are handed out class by class. Within
//! that restricted set of labelings a backtracking search finds the one
//! whose edge sequence is lexicographically least. Branches that are images
//! of each other under a transposition automorphism ("twins") are explored
//! once, which keeps complete hypergraphs linear instead of factorial.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use super::{bits, Hypergraph};

/// Default vertex bound for [`canonical_form`].
pub const DEFAULT_CANON_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical form limited to {bound} vertices, got {n}")]
    TooLarge { n: usize, bound: usize },
}

/// Isomorphism-class key: equal iff the hypergraphs are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub r: usize,
    pub n: usize,
    pub edges: Vec<u64>,
}

impl CanonicalKey {
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_masks(self.r, self.n, self.edges.clone())
    }
}

pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalKey, CanonError> {
    canonical_form_bounded(h, DEFAULT_CANON_BOUND)
}

pub fn canonical_form_bounded(h: &Hypergraph, bound: usize) -> Result<CanonicalKey, CanonError> {
    if h.n() > bound {
        return Err(CanonError::TooLarge { n: h.n(), bound });
    }
    let colors = refine_colors(h);
    let mut slots = colors.clone();
    slots.sort_unstable();
    let search = Search {
        h,
        colors,
        slots,
        twins: twin_matrix(h),
    };
    let mut state = State {
        label_of: vec![usize::MAX; h.n()],
        blocks: Vec::with_capacity(h.n()),
        best: None,
    };
    search.descend(0, &mut state);
    let best = state.best.expect("at least one labeling exists");
    let mut edges: Vec<u64> = best.into_iter().flatten().collect();
    edges.sort_unstable();
    Ok(CanonicalKey {
        r: h.r(),
        n: h.n(),
        edges,
    })
}

/// Stable color refinement starting from vertex degrees. Colors are ranks
/// of signatures, so they do not depend on the input labeling.
fn refine_colors(h: &Hypergraph) -> Vec<usize> {
    let n = h.n();
    let mut colors: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut classes = count_classes(&colors);
    loop {
        let signatures: Vec<(usize, Vec<Vec<usize>>)> = (0..n)
            .map(|v| {
                let mut around: Vec<Vec<usize>> = h
                    .edge_masks()
                    .iter()
                    .filter(|&&m| m >> v & 1 == 1)
                    .map(|&m| {
                        let mut c: Vec<usize> =
                            bits(m & !(1 << v)).map(|u| colors[u]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                around.sort();
                (colors[v], around)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<Vec<usize>>), usize> = {
            let mut uniq: Vec<_> = signatures.iter().collect();
            uniq.sort();
            uniq.dedup();
            uniq.into_iter().enumerate().map(|(i, s)| (s, i)).collect()
        };
        let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// `twins[u][v]`: swapping `u` and `v` maps the edge set onto itself.
fn twin_matrix(h: &Hypergraph) -> Vec<Vec<bool>> {
    let n = h.n();
    let mut twins = vec![vec![false; n]; n];
    for u in 0..n {
        twins[u][u] = true;
        for v in u + 1..n {
            let (bu, bv) = (1u64 << u, 1u64 << v);
            let swapped = h.edge_masks().iter().all(|&m| {
                let has_u = m & bu != 0;
                let has_v = m & bv != 0;
                if has_u == has_v {
                    true
                } else {
                    h.has_edge_mask(m ^ bu ^ bv)
                }
            });
            twins[u][v] = swapped;
            twins[v][u] = swapped;
        }
    }
    twins
}

struct Search<'a> {
    h: &'a Hypergraph,
    colors: Vec<usize>,
    /// Color required at each label position.
    slots: Vec<usize>,
    twins: Vec<Vec<bool>>,
}

struct State {
    label_of: Vec<usize>,
    /// `blocks[k]`: relabeled masks of edges whose largest new label is `k`.
    blocks: Vec<Vec<u64>>,
    best: Option<Vec<Vec<u64>>>,
}

impl Search<'_> {
    fn descend(&self, k: usize, st: &mut State) {
        if k == self.slots.len() {
            let better = match &st.best {
                None => true,
                Some(best) => st.blocks < *best,
            };
            if better {
                st.best = Some(st.blocks.clone());
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.h.n() {
            if st.label_of[v] != usize::MAX || self.colors[v] != self.slots[k] {
                continue;
            }
            if tried.iter().any(|&u| self.twins[u][v]) {
                continue;
            }
            tried.push(v);
            st.label_of[v] = k;
            let mut block: Vec<u64> = self
                .h
                .edge_masks()
                .iter()
                .filter(|&&m| m >> v & 1 == 1 && bits(m).all(|u| st.label_of[u] != usize::MAX))
                .map(|&m| bits(m).fold(0u64, |acc, u| acc | 1 << st.label_of[u]))
                .collect();
            block.sort_unstable();
            st.blocks.push(block);
            let prune = match &st.best {
                Some(best) => st.blocks.as_slice().cmp(&best[..=k]) == Ordering::Greater,
                None => false,
            };
            if !prune {
                self.descend(k + 1, st);
            }
            st.blocks.pop();
            st.label_of[v] = usize::MAX;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_triangle_matches() {
        let k3 = Hypergraph::complete(2, 3).unwrap();
        let other = Hypergraph::new(2, 3, [[2, 0], [1, 2], [0, 1]]).unwrap();
        assert_eq!(canonical_form(&k3).unwrap(), canonical_form(&other).unwrap());
        let p3 = Hypergraph::path(3).unwrap();
        assert_ne!(canonical_form(&k3).unwrap(), canonical_form(&p3).unwrap());
    }

    #[test]
    fn key_roundtrips_to_isomorphic_graph() {
        let c5 = Hypergraph::cycle(5).unwrap();
        let key = canonical_form(&c5).unwrap();
        assert_eq!(canonical_form(&key.to_hypergraph()).unwrap(), key);
    }

    #[test]
    fn complete_twelve_is_fast() {
        let k = Hypergraph::complete(3, 12).unwrap();
        let key = canonical_form(&k).unwrap();
        assert_eq!(key.edges.len(), 220);
    }

    #[test]
    fn bound_enforced() {
        let big = Hypergraph::empty(2, 13).unwrap();
        assert_eq!(
            canonical_form(&big),
            Err(CanonError::TooLarge { n: 13, bound: 12 })
        );
        assert!(canonical_form_bounded(&big, 13).is_ok());
    }

    #[test]
    fn separates_cospectral_style_pairs() {
        // C6 vs two disjoint triangles: same degree sequence.
        let c6 = Hypergraph::cycle(6).unwrap();
        let two_k3 =
            Hypergraph::new(2, 6, [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&two_k3).unwrap());
    }
}
