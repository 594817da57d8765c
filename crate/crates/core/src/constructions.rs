//! Generators for the graph families and starting graphs studied here.
//!
//! Every generator uses a fixed vertex numbering, documented per function, so
//! outputs are byte-stable.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{arg, Result};
use crate::graph::Graph;

/// Named vertex groups of a construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetLayout {
    pub groups: BTreeMap<String, Vec<usize>>,
}

impl GadgetLayout {
    fn with(groups: &[(&str, Vec<usize>)]) -> GadgetLayout {
        GadgetLayout {
            groups: groups.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }

    pub fn group(&self, name: &str) -> Option<&[usize]> {
        self.groups.get(name).map(Vec::as_slice)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.groups).expect("layout serializes")
    }

    pub fn from_json(v: &Value) -> Result<GadgetLayout> {
        match serde_json::from_value(v.clone()) {
            Ok(groups) => Ok(GadgetLayout { groups }),
            Err(e) => arg(format!("layout: {e}")),
        }
    }
}

fn add_clique(g: &mut Graph, vs: &[usize]) {
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            g.add_edge(a, b);
        }
    }
}

/// Disjoint stars `K_{1,1}, ..., K_{1,t-2}` followed by isolated vertices.
/// Each star is numbered centre first, then its leaves.
pub fn star_lower(t: usize, n: usize) -> Result<Graph> {
    if t < 3 {
        return arg(format!("star_lower needs t >= 3, got {t}"));
    }
    let used = t * (t - 1) / 2 - 1;
    if n < used {
        return arg(format!("star_lower(t = {t}) needs n >= {used}, got {n}"));
    }
    let mut g = Graph::empty(n);
    let mut next = 0;
    for s in 1..=t - 2 {
        let centre = next;
        for leaf in centre + 1..=centre + s {
            g.add_edge(centre, leaf);
        }
        next += s + 1;
    }
    Ok(g)
}

/// `K_k` on `0..k` with vertex `k` pendant at vertex 0.
pub fn clique_pendant(k: usize) -> Result<Graph> {
    if k < 3 {
        return arg(format!("clique_pendant needs k >= 3, got {k}"));
    }
    let mut g = Graph::empty(k + 1);
    add_clique(&mut g, &(0..k).collect::<Vec<_>>());
    g.add_edge(0, k);
    Ok(g)
}

/// Two copies of `K_k` sharing the edge `e = {0,1}`, plus `e' = {2,k}`.
/// The cliques are `{0,1,2,...,k-1}` and `{0,1,k,...,2k-3}`.
/// Returns the graph, `e` and `e'`.
pub fn glued_cliques(k: usize) -> Result<(Graph, (usize, usize), (usize, usize))> {
    if k < 3 {
        return arg(format!("glued_cliques needs k >= 3, got {k}"));
    }
    let mut g = Graph::empty(2 * k - 2);
    add_clique(&mut g, &(0..k).collect::<Vec<_>>());
    let second: Vec<usize> = [0, 1].into_iter().chain(k..2 * k - 2).collect();
    add_clique(&mut g, &second);
    g.add_edge(2, k);
    Ok((g, (0, 1), (2, k)))
}

/// Vertex numbering for the layered construction: `apex` leading vertices,
/// then `ell` layers of `d^r` vertices each. Inside a layer, `x in Z_d^r` sits at
/// its mixed-radix rank with `x[0]` most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layered {
    pub r: usize,
    pub d: usize,
    pub ell: usize,
    pub apex: usize,
}

impl Layered {
    pub fn layer_size(&self) -> usize {
        self.d.pow(self.r as u32)
    }

    pub fn n(&self) -> usize {
        self.apex + self.ell * self.layer_size()
    }

    /// Index of `(j, x)` for a 1-based layer `j`.
    pub fn index(&self, j: usize, x: &[usize]) -> usize {
        assert!((1..=self.ell).contains(&j) && x.len() == self.r);
        let rank = x.iter().fold(0, |acc, &c| acc * self.d + c % self.d);
        self.apex + (j - 1) * self.layer_size() + rank
    }

    /// Coordinates of the `rank`-th vector of `Z_d^r`.
    pub fn coords(&self, mut rank: usize) -> Vec<usize> {
        let mut x = vec![0; self.r];
        for c in x.iter_mut().rev() {
            *c = rank % self.d;
            rank /= self.d;
        }
        x
    }

    /// Vertices of layer `j` (1-based).
    pub fn layer(&self, j: usize) -> Vec<usize> {
        let s = self.apex + (j - 1) * self.layer_size();
        (s..s + self.layer_size()).collect()
    }

    /// Layer of a vertex, `None` for apex vertices.
    pub fn layer_of(&self, v: usize) -> Option<usize> {
        (v >= self.apex && v < self.n()).then(|| (v - self.apex) / self.layer_size() + 1)
    }

    /// The layered graph on all `n()` vertices (apex vertices isolated):
    /// `(j,x) ~ (j+1, x + lambda e_j)` with `e_j` the basis vector `(j-1) mod r`.
    pub fn layer_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n());
        for j in 1..self.ell {
            let dir = (j - 1) % self.r;
            for rank in 0..self.layer_size() {
                let x = self.coords(rank);
                for lambda in 0..self.d {
                    let mut y = x.clone();
                    y[dir] = (y[dir] + lambda) % self.d;
                    g.add_edge(self.index(j, &x), self.index(j + 1, &y));
                }
            }
        }
        g
    }
}

fn layered_params(h: &Graph, n: usize, apex: usize, bipartite: bool) -> Result<Layered> {
    if h.n() < 2 || !h.is_connected() {
        return arg("pattern must be connected");
    }
    let delta = h.min_degree();
    if delta < 2 {
        return arg(format!("pattern minimum degree must be >= 2, got {delta}"));
    }
    if h.max_degree() < 3 {
        return arg(format!("pattern maximum degree must be >= 3, got {}", h.max_degree()));
    }
    if bipartite && h.is_bipartite().is_none() {
        return arg("pattern must be bipartite");
    }
    let r = h.n() - 1;
    let d = delta - 1;
    let size = (d as u128).checked_pow(r as u32).filter(|&s| s <= n as u128);
    let Some(size) = size else {
        return arg(format!("n = {n} is smaller than one layer of {d}^{r} vertices"));
    };
    let size = size as usize;
    let Some(rest) = n.checked_sub(apex).filter(|&rest| rest >= size) else {
        return arg(format!("n = {n} leaves no room for {apex} apex vertices and one layer of {size}"));
    };
    Ok(Layered {
        r,
        d,
        ell: rest / size,
        apex,
    })
}

/// Layout of [`min2max3_start`]: an `r`-clique on `0..r`, then the layers.
pub fn min2max3_layout(h: &Graph, n: usize) -> Result<Layered> {
    layered_params(h, n, h.n().saturating_sub(1), false)
}

/// Layered starting graph for connected `h` with `delta(h) >= 2` and
/// `Delta(h) >= 3`: with `r = v(h) - 1` and `d = delta - 1`, an `r`-clique joined
/// to layer 1 of `ell = floor((n - r) / d^r)` layers of `Z_d^r`.
pub fn min2max3_start(h: &Graph, n: usize) -> Result<Graph> {
    let lay = min2max3_layout(h, n)?;
    let mut g = lay.layer_graph();
    let clique: Vec<usize> = (0..lay.r).collect();
    add_clique(&mut g, &clique);
    for a in clique {
        for v in lay.layer(1) {
            g.add_edge(a, v);
        }
    }
    Ok(g)
}

/// Layout of [`min2max3_bipartite_start`]: `K_{r,r}` on `0..r` and `r..2r`,
/// then the layers.
pub fn min2max3_bipartite_layout(h: &Graph, n: usize) -> Result<Layered> {
    layered_params(h, n, 2 * h.n().saturating_sub(1), true)
}

/// Bipartite version of [`min2max3_start`]: the clique is replaced by `K_{r,r}`
/// whose second side `r..2r` is joined to layer 1.
pub fn min2max3_bipartite_start(h: &Graph, n: usize) -> Result<Graph> {
    let lay = min2max3_bipartite_layout(h, n)?;
    let r = lay.r;
    let mut g = lay.layer_graph();
    for a in 0..r {
        for b in r..2 * r {
            g.add_edge(a, b);
        }
    }
    for b in r..2 * r {
        for v in lay.layer(1) {
            g.add_edge(b, v);
        }
    }
    Ok(g)
}

/// `C_6` on `0..6` with the chord `{0,3}`.
pub fn chord_cycle() -> Graph {
    let mut g = Graph::cycle(6);
    g.add_edge(0, 3);
    g
}

const H_PRIME_CHORDS: [(usize, usize); 8] = [
    (1, 3),
    (2, 4),
    (5, 7),
    (6, 8),
    (10, 12),
    (11, 13),
    (14, 16),
    (15, 17),
];

/// The 18-vertex gadget: the cycle `u_0 ... u_17` (vertex `i` is `u_i`) with
/// eight chords forming four diamonds. Groups: `U = u_0..u_9`,
/// `W = u_9..u_17, u_0`.
pub fn h_prime() -> (Graph, GadgetLayout) {
    let mut g = Graph::cycle(18);
    for (a, b) in H_PRIME_CHORDS {
        g.add_edge(a, b);
    }
    let w: Vec<usize> = (9..18).chain([0]).collect();
    (g, GadgetLayout::with(&[("U", (0..10).collect()), ("W", w)]))
}

/// The 25-vertex pattern: `H'` on `0..18`, the chorded cycle on `18..24`
/// (its vertex `j` at `18 + j`), the edge `u_9 - 19` and the pendant `z = 24` at `u_0`.
pub fn counterexample_h() -> (Graph, GadgetLayout) {
    let (hp, _) = h_prime();
    let ht = chord_cycle();
    let mut g = hp.disjoint_union(&ht).disjoint_union(&Graph::empty(1));
    g.add_edge(9, 19);
    g.add_edge(0, 24);
    let layout = GadgetLayout::with(&[
        ("H_prime", (0..18).collect()),
        ("H_tilde", (18..24).collect()),
        ("u0", vec![0]),
        ("u9", vec![9]),
        ("v_tilde", vec![19]),
        ("z", vec![24]),
    ]);
    (g, layout)
}

/// Starting graph for the 25-vertex pattern around a bipartite base `g_tilde`:
/// a copy of `H'` on `0..18`, the base on `18..`, and `u'_0 = 0`, `u'_9 = 9`
/// joined to every base vertex.
pub fn counterexample_start(g_tilde: &Graph) -> Result<(Graph, GadgetLayout)> {
    if g_tilde.is_bipartite().is_none() {
        return arg("base graph must be bipartite: the embedding classification for the 25-vertex pattern relies on the base having no odd cycles");
    }
    let (hp, _) = h_prime();
    let mut g = hp.disjoint_union(g_tilde);
    let base: Vec<usize> = (18..18 + g_tilde.n()).collect();
    for &x in &base {
        g.add_edge(0, x);
        g.add_edge(9, x);
    }
    let layout = GadgetLayout::with(&[
        ("H_prime_0", (0..18).collect()),
        ("u0_prime", vec![0]),
        ("u9_prime", vec![9]),
        ("base", base),
    ]);
    Ok((g, layout))
}

/// `H_t` on `t + 15` vertices: `S = 0..t+8` a clique, `T = 0..t`,
/// `R = t+8..t+14` a clique complete to `T`, and `v* = t+14` adjacent to `T`.
pub fn ht_gadget(t: usize) -> Result<(Graph, GadgetLayout)> {
    if t < 1 {
        return arg("ht_gadget needs t >= 1");
    }
    let s: Vec<usize> = (0..t + 8).collect();
    let tt: Vec<usize> = (0..t).collect();
    let r: Vec<usize> = (t + 8..t + 14).collect();
    let v_star = t + 14;
    let mut g = Graph::empty(t + 15);
    add_clique(&mut g, &s);
    add_clique(&mut g, &r);
    for &x in &tt {
        for &y in &r {
            g.add_edge(x, y);
        }
        g.add_edge(x, v_star);
    }
    let layout = GadgetLayout::with(&[("S", s), ("T", tt), ("R", r), ("v_star", vec![v_star])]);
    Ok((g, layout))
}

/// Starting graph for `H_t` around a base graph: a clique `S' = 0..t+8`, the base
/// on `t+8..`, and `T' = 0..t` joined to every base vertex.
pub fn ht_start(t: usize, g_tilde: &Graph) -> Result<(Graph, GadgetLayout)> {
    if t < 1 {
        return arg("ht_start needs t >= 1");
    }
    let s: Vec<usize> = (0..t + 8).collect();
    let mut g = Graph::empty(t + 8).disjoint_union(g_tilde);
    add_clique(&mut g, &s);
    let base: Vec<usize> = (t + 8..t + 8 + g_tilde.n()).collect();
    for x in 0..t {
        for &y in &base {
            g.add_edge(x, y);
        }
    }
    let layout = GadgetLayout::with(&[("S_prime", s), ("T_prime", (0..t).collect()), ("base", base)]);
    Ok((g, layout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_lower_shapes() {
        let g = star_lower(4, 9).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree_sequence(), vec![0, 0, 0, 0, 1, 1, 1, 1, 2]);
        assert_eq!(star_lower(3, 4).unwrap().edge_count(), 1);
        assert!(star_lower(5, 8).is_err());
        assert!(star_lower(2, 8).is_err());
    }

    #[test]
    fn small_families() {
        let g = clique_pendant(3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        let g = clique_pendant(4).unwrap();
        assert_eq!((g.min_degree(), g.max_degree()), (1, 4));
        assert!(clique_pendant(2).is_err());
        assert_eq!(glued_cliques(3).unwrap().0, Graph::complete(4));
        let (g, e, e2) = glued_cliques(4).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 12));
        assert!(g.has_edge(e.0, e.1) && g.has_edge(e2.0, e2.1));
        let c = chord_cycle();
        assert_eq!(c.degree_sequence(), vec![2, 2, 2, 2, 3, 3]);
        assert_eq!((0..6).map(|v| c.degree(v)).collect::<Vec<_>>(), vec![3, 2, 2, 3, 2, 2]);
    }

    #[test]
    fn layered_indexing() {
        let lay = min2max3_layout(&Graph::complete(4), 3 + 8 * 5).unwrap();
        assert_eq!((lay.r, lay.d, lay.ell, lay.layer_size()), (3, 2, 5, 8));
        for rank in 0..8 {
            let x = lay.coords(rank);
            assert_eq!(lay.index(2, &x), 3 + 8 + rank);
        }
        assert_eq!(lay.layer_of(2), None);
        assert_eq!(lay.layer_of(11), Some(2));
        let g = min2max3_start(&Graph::complete(4), 43).unwrap();
        for j in 2..5 {
            for v in lay.layer(j) {
                assert_eq!(g.degree(v), 4);
            }
        }
        assert!(min2max3_start(&Graph::cycle(5), 40).is_err());
        assert!(min2max3_start(&Graph::complete(4), 9).is_err());
        assert!(min2max3_bipartite_start(&Graph::complete(4), 100).is_err());
    }

    #[test]
    fn gadget_sizes() {
        let (hp, lay) = h_prime();
        assert_eq!((hp.n(), hp.edge_count()), (18, 26));
        assert_eq!(hp.degree(0), 2);
        assert_eq!(hp.degree(9), 2);
        assert_eq!(lay.group("W").unwrap().len(), 10);
        let (h, _) = counterexample_h();
        assert_eq!((h.n(), h.edge_count()), (25, 35));
        assert_eq!((h.min_degree(), h.max_degree()), (1, 3));
        let (h1, lay) = ht_gadget(1).unwrap();
        assert_eq!(h1.n(), 16);
        assert_eq!(h1.min_degree(), 1);
        assert_eq!(h1.degree(lay.group("v_star").unwrap()[0]), 1);
    }
}
