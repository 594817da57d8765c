//! One representative per isomorphism class of small graphs and trees.
//!
//! Classes on `n` vertices are grown from classes on `n - 1` by adding a vertex
//! with every possible neighbourhood, then deduplicated by canonical form. Every
//! graph arises this way (delete its last vertex), so no class is missed.

use std::collections::BTreeMap;

use crate::graph::{canonical_form, Graph};

fn dedup(candidates: impl Iterator<Item = Graph>) -> Vec<Graph> {
    let mut seen: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for g in candidates {
        let cf = canonical_form(&g);
        seen.entry(cf.bytes.clone()).or_insert_with(|| cf.graph(&g));
    }
    seen.into_values().collect()
}

fn add_vertex(g: &Graph, nbrs: impl IntoIterator<Item = usize>) -> Graph {
    let mut h = g.disjoint_union(&Graph::empty(1));
    for u in nbrs {
        h.add_edge(u, g.n());
    }
    h
}

/// All graphs on `n` vertices up to isomorphism, as canonically labelled
/// representatives sorted by canonical form.
pub fn graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0)];
    for m in 0..n {
        level = dedup(level.iter().flat_map(|g| {
            (0u32..1 << m).map(move |mask| add_vertex(g, (0..m).filter(|&u| mask >> u & 1 == 1)))
        }));
    }
    level
}

/// All trees on `n >= 1` vertices up to isomorphism.
pub fn trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1, "trees need at least one vertex");
    let mut level = vec![Graph::empty(1)];
    for m in 1..n {
        level = dedup(level.iter().flat_map(|t| (0..m).map(move |v| add_vertex(t, [v]))));
    }
    level
}
