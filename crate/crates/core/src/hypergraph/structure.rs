//! Connectivity, vertex cuts, strong r-partiteness and chromatic number.

use super::{bits, Hypergraph, VertexSet};

/// True iff `h` has at least one vertex and any two vertices are joined by a
/// chain of pairwise-intersecting edges. A single vertex is connected.
pub fn is_connected(h: &Hypergraph) -> bool {
    component_count(h, h.vertices().mask()) == 1
}

/// Number of edge-path components of the sub-hypergraph induced on `alive`.
pub(crate) fn component_count(h: &Hypergraph, alive: u64) -> usize {
    let edges: Vec<u64> = h
        .edge_masks()
        .iter()
        .copied()
        .filter(|&m| m & !alive == 0)
        .collect();
    let mut unseen = alive;
    let mut count = 0;
    while unseen != 0 {
        let start = unseen & unseen.wrapping_neg();
        let mut reached = start;
        loop {
            let grown = edges
                .iter()
                .filter(|&&m| m & reached != 0)
                .fold(reached, |acc, m| acc | m);
            if grown == reached {
                break;
            }
            reached = grown;
        }
        unseen &= !reached;
        count += 1;
    }
    count
}

/// `s` is a vertex cut iff deleting it leaves fewer than two vertices or a
/// disconnected remainder.
pub fn is_vertex_cut(h: &Hypergraph, s: VertexSet) -> bool {
    let rest = h.vertices().mask() & !s.mask();
    rest.count_ones() < 2 || component_count(h, rest) > 1
}

/// Edges containing each vertex, as masks.
fn incidence(h: &Hypergraph) -> Vec<Vec<u64>> {
    let mut inc = vec![Vec::new(); h.n()];
    for &m in h.edge_masks() {
        for v in bits(m) {
            inc[v].push(m);
        }
    }
    inc
}

/// Backtracking vertex coloring with at most `k` colors. `ok(v, color_of)`
/// is called after `v` receives its color and must reject partial
/// colorings that can no longer be completed.
fn colorable<F>(n: usize, k: usize, ok: F) -> bool
where
    F: Fn(usize, &[usize]) -> bool,
{
    fn go<F: Fn(usize, &[usize]) -> bool>(
        v: usize,
        used: usize,
        k: usize,
        colors: &mut Vec<usize>,
        ok: &F,
    ) -> bool {
        if v == colors.len() {
            return true;
        }
        // Colors are introduced in order, which removes color permutations.
        for c in 0..k.min(used + 1) {
            colors[v] = c;
            if ok(v, colors) && go(v + 1, used.max(c + 1), k, colors, ok) {
                return true;
            }
        }
        colors[v] = usize::MAX;
        false
    }
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut colors = vec![usize::MAX; n];
    go(0, 0, k, &mut colors, &ok)
}

/// True iff the vertices split into at most `r` classes with every edge
/// meeting each class at most once.
pub fn is_strongly_r_partite(h: &Hypergraph) -> bool {
    let inc = incidence(h);
    colorable(h.n(), h.r(), |v, colors| {
        inc[v].iter().all(|&m| {
            bits(m & !(1 << v)).all(|u| colors[u] != colors[v])
        })
    })
}

/// Least `k` admitting a vertex coloring without a monochromatic edge.
/// Edgeless hypergraphs have chromatic number 1 (0 when there are no
/// vertices).
pub fn chromatic_number(h: &Hypergraph) -> usize {
    if h.n() == 0 {
        return 0;
    }
    let inc = incidence(h);
    (1..=h.n())
        .find(|&k| {
            colorable(h.n(), k, |v, colors| {
                inc[v].iter().all(|&m| {
                    bits(m & !(1 << v)).any(|u| colors[u] != colors[v])
                })
            })
        })
        .expect("coloring every vertex differently is always proper")
}
