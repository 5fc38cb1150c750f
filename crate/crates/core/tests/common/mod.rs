//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library beyond the plain accessors of `Hypergraph`.

#![allow(dead_code)]

use std::collections::HashSet;

use hyperramsey::density::Rational;
use hyperramsey::Hypergraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn edge_lists(h: &Hypergraph) -> Vec<Vec<usize>> {
    h.edges().collect()
}

fn covered_count(edges: &[Vec<usize>], subset: u64) -> usize {
    let mut seen = 0u64;
    for (i, e) in edges.iter().enumerate() {
        if subset >> i & 1 == 1 {
            for &v in e {
                seen |= 1 << v;
            }
        }
    }
    seen.count_ones() as usize
}

/// `max e(J)/v(J)` over every nonempty edge subset `J`, on the vertices it
/// covers.
pub fn brute_m(h: &Hypergraph) -> Rational {
    let edges = edge_lists(h);
    let mut best = Rational::from_integer(0);
    for subset in 1u64..1 << edges.len() {
        let e = subset.count_ones() as i64;
        let v = covered_count(&edges, subset) as i64;
        best = best.max(Rational::new(e, v));
    }
    best
}

pub fn brute_mr(h: &Hypergraph) -> Rational {
    let r = h.r() as i64;
    let edges = edge_lists(h);
    match edges.len() {
        0 => return Rational::from_integer(0),
        1 => return Rational::new(1, r),
        _ => {}
    }
    let mut best = Rational::from_integer(0);
    for subset in 1u64..1 << edges.len() {
        let e = subset.count_ones() as i64;
        let v = covered_count(&edges, subset) as i64;
        if v > r {
            best = best.max(Rational::new(e - 1, v - r));
        }
    }
    best
}

pub fn brute_asym(t: &Hypergraph, f: &Hypergraph) -> Rational {
    let r = t.r() as i64;
    let inv = brute_mr(f).recip();
    let edges = edge_lists(t);
    let mut best = Rational::from_integer(0);
    for subset in 1u64..1 << edges.len() {
        let e = Rational::from_integer(subset.count_ones() as i64);
        let v = covered_count(&edges, subset) as i64;
        best = best.max(e / (Rational::from_integer(v - r) + inv));
    }
    best
}

/// Every injective map of `k` items into `0..n`, as value lists.
fn injections(k: usize, n: usize, out: &mut Vec<Vec<usize>>) {
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(k, n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    go(k, n, &mut Vec::new(), &mut vec![false; n], out);
}

/// Copies of `pattern` in `host` as bitmasks over host edge indices.
pub fn brute_copies(pattern: &Hypergraph, host: &Hypergraph) -> Vec<u64> {
    let host_edges = edge_lists(host);
    let mut verts: Vec<usize> = pattern.edges().flatten().collect();
    verts.sort_unstable();
    verts.dedup();
    let pattern_edges = edge_lists(pattern);
    let mut maps = Vec::new();
    injections(verts.len(), host.n(), &mut maps);
    let mut out = HashSet::new();
    'maps: for image in maps {
        let mut mask = 0u64;
        for e in &pattern_edges {
            let mut mapped: Vec<usize> = e
                .iter()
                .map(|v| image[verts.binary_search(v).unwrap()])
                .collect();
            mapped.sort_unstable();
            match host_edges.iter().position(|h| *h == mapped) {
                Some(i) => mask |= 1 << i,
                None => continue 'maps,
            }
        }
        out.insert(mask);
    }
    let mut out: Vec<u64> = out.into_iter().collect();
    out.sort_unstable();
    out
}

/// Decide arrowing by trying every coloring of the host edges.
pub fn brute_arrows(host: &Hypergraph, targets: &[Hypergraph]) -> bool {
    let k = targets.len();
    let e = host.edge_count();
    let copies: Vec<Vec<u64>> = targets.iter().map(|t| brute_copies(t, host)).collect();
    let mut digits = vec![0usize; e];
    loop {
        let mut class = vec![0u64; k];
        for (i, &c) in digits.iter().enumerate() {
            class[c] |= 1 << i;
        }
        let avoids = copies
            .iter()
            .zip(&class)
            .all(|(cs, &mask)| cs.iter().all(|&c| c & !mask != 0));
        if avoids {
            return false;
        }
        let mut i = 0;
        loop {
            if i == e {
                return true;
            }
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    injections(n, n, &mut out);
    out
}

fn r_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect())
        .collect()
}

/// Smallest sorted edge-mask list over all relabelings.
fn brute_canon(edges: &[u64], perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| {
            let mut image: Vec<u64> = edges
                .iter()
                .map(|&m| (0..p.len()).filter(|v| m >> v & 1 == 1).fold(0, |a, v| a | 1 << p[v]))
                .collect();
            image.sort_unstable();
            image
        })
        .min()
        .unwrap_or_default()
}

/// One representative of every isomorphism class of r-graphs on `n`
/// vertices.
pub fn all_hypergraphs(r: usize, n: usize) -> Vec<Hypergraph> {
    let slots = r_subsets(n, r);
    let slot_masks: Vec<u64> = slots
        .iter()
        .map(|s| s.iter().fold(0, |a, v| a | 1 << v))
        .collect();
    // Each vertex permutation as a permutation of edge slots.
    let slot_perms: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| {
            slot_masks
                .iter()
                .map(|&m| {
                    let image = (0..n).filter(|v| m >> v & 1 == 1).fold(0u64, |a, v| a | 1 << p[v]);
                    slot_masks.iter().position(|&s| s == image).unwrap()
                })
                .collect()
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for pick in 0u64..1 << slots.len() {
        let canon = slot_perms
            .iter()
            .map(|sp| {
                (0..slots.len())
                    .filter(|i| pick >> i & 1 == 1)
                    .fold(0u64, |a, i| a | 1 << sp[i])
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges: Vec<&Vec<usize>> = (0..slots.len())
                .filter(|i| pick >> i & 1 == 1)
                .map(|i| &slots[i])
                .collect();
            out.push(Hypergraph::new(r, n, edges).unwrap());
        }
    }
    out
}

/// `G^{(r)}(n, p)` drawn from a test-local generator.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, r: usize, n: usize, p: f64) -> Hypergraph {
    let edges: Vec<Vec<usize>> = r_subsets(n, r)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Hypergraph::new(r, n, edges).unwrap()
}

pub fn isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if (a.r(), a.n(), a.edge_count()) != (b.r(), b.n(), b.edge_count()) {
        return false;
    }
    let perms = permutations(a.n());
    brute_canon(a.edge_masks(), &perms) == brute_canon(b.edge_masks(), &perms)
}
