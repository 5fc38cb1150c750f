//! Named small hypergraphs.
//!
//! * `K{m}`: the complete graph on `m` vertices, `2 <= m <= 8`.
//! * `K{m}_3`: the complete 3-graph on `m` vertices, `3 <= m <= 8`.
//! * `C{m}`: the cycle on `m` vertices, `3 <= m <= 6`.
//! * `P{m}`: the path on `m` vertices, `2 <= m <= 5`.
//! * `K6-e`: `K6` minus the edge `{0, 1}`.

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub hypergraph: Hypergraph,
}

/// Every entry, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut add = |name: String, hypergraph: Hypergraph| out.push(CatalogEntry { name, hypergraph });
    for m in 2..=8 {
        add(format!("K{m}"), complete(2, m));
    }
    for m in 3..=8 {
        add(format!("K{m}_3"), complete(3, m));
    }
    for m in 3..=6 {
        add(format!("C{m}"), Hypergraph::cycle(m).expect("small cycle"));
    }
    for m in 2..=5 {
        add(format!("P{m}"), Hypergraph::path(m).expect("small path"));
    }
    add("K6-e".to_string(), k6_minus_edge());
    out
}

/// Look up a name.
pub fn get(name: &str) -> Option<Hypergraph> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.hypergraph)
}

fn complete(r: usize, m: usize) -> Hypergraph {
    Hypergraph::complete(r, m).expect("catalog sizes are small")
}

fn k6_minus_edge() -> Hypergraph {
    let k6 = complete(2, 6);
    let keep = (0..k6.edge_count()).filter(|&i| k6.edge(i) != [0, 1]);
    k6.with_edges(keep)
}
