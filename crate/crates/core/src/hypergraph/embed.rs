//! Subgraph copies: enumeration of every edge set of a host that forms a
//! copy of a pattern.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use super::{bits, Hypergraph};

/// One copy of a pattern inside a host, identified by the indices of the
/// host edges it uses (ascending, relative to [`Hypergraph::edge_masks`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HostCopy {
    pub edges: Vec<usize>,
}

/// Every distinct copy of `pattern` in `host`, sorted by edge-index list.
///
/// Isolated vertices of the pattern are ignored. An edgeless pattern has a
/// single (empty) copy.
pub fn copies_of(pattern: &Hypergraph, host: &Hypergraph) -> Vec<HostCopy> {
    let mut seen = HashSet::new();
    Embedder::new(pattern, host).run(&mut |image| {
        let mut edges = image.to_vec();
        edges.sort_unstable();
        seen.insert(edges);
        ControlFlow::Continue(())
    });
    let mut out: Vec<HostCopy> = seen.into_iter().map(|edges| HostCopy { edges }).collect();
    out.sort();
    out
}

/// True iff `host` contains at least one copy of `pattern`; stops at the
/// first embedding found.
pub fn contains_copy(pattern: &Hypergraph, host: &Hypergraph) -> bool {
    let mut found = false;
    Embedder::new(pattern, host).run(&mut |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

struct Embedder<'a> {
    host: &'a Hypergraph,
    /// Pattern vertices in the order they are mapped.
    order_len: usize,
    /// For position k: earlier positions whose vertex shares an edge with it.
    earlier_neighbors: Vec<Vec<usize>>,
    /// For position k: pattern edges completed at k, as position lists.
    completed: Vec<Vec<Vec<usize>>>,
    /// Pattern edge index → position list, for building the image.
    pattern_edges: Vec<Vec<usize>>,
    pattern_degree: Vec<usize>,
    host_degree: Vec<usize>,
    host_shadow: Vec<u64>,
    host_index: HashMap<u64, usize>,
    trivial: Option<bool>,
}

impl<'a> Embedder<'a> {
    fn new(pattern: &Hypergraph, host: &'a Hypergraph) -> Self {
        let p = pattern.strip_isolated();
        let trivial = if p.r() != host.r() {
            Some(false)
        } else if p.edge_count() == 0 {
            Some(true)
        } else if p.n() > host.n() || p.edge_count() > host.edge_count() {
            Some(false)
        } else {
            None
        };

        let order = mapping_order(&p);
        let mut position = vec![0; p.n()];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let pattern_edges: Vec<Vec<usize>> = p
            .edge_masks()
            .iter()
            .map(|&m| bits(m).map(|v| position[v]).collect())
            .collect();
        let mut completed = vec![Vec::new(); p.n()];
        for e in &pattern_edges {
            let last = *e.iter().max().expect("edges are nonempty");
            completed[last].push(e.clone());
        }
        let earlier_neighbors = order
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let shadow = p.shadow_neighbors(v);
                (0..k).filter(|&j| shadow >> order[j] & 1 == 1).collect()
            })
            .collect();
        let pattern_degree = order.iter().map(|&v| p.degree(v)).collect();

        let host_index = host
            .edge_masks()
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        Embedder {
            host,
            order_len: order.len(),
            earlier_neighbors,
            completed,
            pattern_edges,
            pattern_degree,
            host_degree: (0..host.n()).map(|v| host.degree(v)).collect(),
            host_shadow: (0..host.n()).map(|v| host.shadow_neighbors(v)).collect(),
            host_index,
            trivial,
        }
    }

    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) {
        match self.trivial {
            Some(true) => {
                let _ = visit(&[]);
            }
            Some(false) => {}
            None => {
                let mut map = vec![usize::MAX; self.order_len];
                let _ = self.extend(0, 0, &mut map, visit);
            }
        }
    }

    fn extend(
        &self,
        k: usize,
        used: u64,
        map: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == self.order_len {
            let image: Vec<usize> = self
                .pattern_edges
                .iter()
                .map(|e| self.host_index[&image_mask(e, map)])
                .collect();
            return visit(&image);
        }
        let mut candidates = self.host.vertices().mask() & !used;
        for &j in &self.earlier_neighbors[k] {
            candidates &= self.host_shadow[map[j]];
        }
        for h in bits(candidates) {
            if self.host_degree[h] < self.pattern_degree[k] {
                continue;
            }
            map[k] = h;
            let fits = self.completed[k]
                .iter()
                .all(|e| self.host_index.contains_key(&image_mask(e, map)));
            if fits {
                self.extend(k + 1, used | 1 << h, map, visit)?;
            }
        }
        map[k] = usize::MAX;
        ControlFlow::Continue(())
    }
}

fn image_mask(positions: &[usize], map: &[usize]) -> u64 {
    positions.iter().fold(0, |m, &k| m | 1 << map[k])
}

/// Greedy order: each next vertex closes as many edges and touches as many
/// already-placed vertices as possible, so infeasible branches die early.
fn mapping_order(p: &Hypergraph) -> Vec<usize> {
    let n = p.n();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    let shadow: Vec<u64> = (0..n).map(|v| p.shadow_neighbors(v)).collect();
    let degree: Vec<usize> = (0..n).map(|v| p.degree(v)).collect();
    while order.len() < n {
        let best = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                let with = placed | 1 << v;
                let closes = p
                    .edge_masks()
                    .iter()
                    .filter(|&&m| m >> v & 1 == 1 && m & !with == 0)
                    .count();
                let touches = (shadow[v] & placed).count_ones();
                (closes, touches, degree[v], std::cmp::Reverse(v))
            })
            .expect("an unplaced vertex remains");
        placed |= 1 << best;
        order.push(best);
    }
    order
}
