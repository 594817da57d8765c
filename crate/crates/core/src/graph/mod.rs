//! Dense simple graphs with bitset adjacency rows.

mod bitset;
pub mod canon;
mod connectivity;
pub mod graph6;

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use bitset::{VertexSet, N_MAX};
pub use canon::{canonical_form, is_isomorphic, CanonicalForm};

use crate::error::{arg, Result};

/// An undirected simple graph on vertices `0..n`.
///
/// Row `v` of the adjacency matrix is the neighbourhood bitset of `v`; the
/// matrix is kept symmetric with an empty diagonal and no bits at or beyond `n`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    deg: Vec<u32>,
}

/// A proper 2-colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    /// Colour (0 or 1) of every vertex.
    pub colour: Vec<u8>,
}

impl Bipartition {
    pub fn part(&self, c: u8) -> Vec<usize> {
        (0..self.colour.len()).filter(|&v| self.colour[v] == c).collect()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    ///
    /// Panics if `n > N_MAX`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= N_MAX, "graph order {n} exceeds N_MAX = {N_MAX}");
        Graph {
            n,
            adj: vec![VertexSet::new(); n],
            deg: vec![0; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            let mut row = VertexSet::prefix(n);
            row.remove(u);
            g.adj[u] = row;
            g.deg[u] = (n - 1) as u32;
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range endpoints.
    /// Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > N_MAX {
            return arg(format!("graph order {n} exceeds N_MAX = {N_MAX}"));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return arg(format!("edge ({u},{v}) out of range for n = {n}"));
            }
            if u == v {
                return arg(format!("loop at vertex {u}"));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Self {
        Graph::complete_bipartite(1, k)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.deg[v] as usize
    }

    /// Adds `uv`; returns whether it was new. Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        if self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.deg[u] += 1;
        self.deg[v] += 1;
        true
    }

    /// Removes `uv`; returns whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.deg[u] -= 1;
        self.deg[v] -= 1;
        true
    }

    pub fn edge_count(&self) -> usize {
        self.deg.iter().map(|&d| d as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Non-edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.deg.iter().all(|&d| d as usize + 1 == self.n)
    }

    pub fn min_degree(&self) -> usize {
        self.deg.iter().copied().min().unwrap_or(0) as usize
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0) as usize
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.deg.iter().map(|&d| d as usize).collect();
        d.sort_unstable();
        d
    }

    /// Every edge of `self` is an edge of `other` (same vertex count required).
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && (0..self.n).all(|v| self.adj[v].is_subset(&other.adj[v]))
    }

    /// The graph whose vertex `i` is `perm[i]`'s image, i.e. edge `uv` maps to `perm[u] perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by `set`; vertex `i` of the result is the `i`-th smallest member.
    pub fn induced(&self, set: &[usize]) -> Result<Graph> {
        let mut members: Vec<usize> = set.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&v| v >= self.n) {
            return arg(format!("vertex {bad} out of range for n = {}", self.n));
        }
        let mut g = Graph::empty(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.adj[u].contains(v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// `self ⊔ other`, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.adj[u].iter() {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All vertices within distance `radius` of some vertex of `sources`.
    pub fn ball(&self, sources: &VertexSet, radius: usize) -> VertexSet {
        let mut reached = *sources;
        let mut frontier = *sources;
        for _ in 0..radius {
            let mut next = VertexSet::new();
            for v in frontier.iter() {
                next.union_with(&self.adj[v]);
            }
            next.difference_with(&reached);
            if next.is_empty() {
                break;
            }
            reached.union_with(&next);
            frontier = next;
        }
        reached
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new();
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let comp = self.ball(&[s].into_iter().collect(), self.n);
            seen.union_with(&comp);
            comps.push(comp.iter().collect());
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Largest eccentricity; `None` if disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        if self.n == 0 || !self.is_connected() {
            return None;
        }
        (0..self.n)
            .map(|v| self.distances_from(v).into_iter().map(|d| d.unwrap()).max().unwrap())
            .max()
    }

    /// A 2-colouring with no monochromatic edge, or `None` if an odd cycle exists.
    /// Each component's smallest vertex gets colour 0.
    pub fn is_bipartite(&self) -> Option<Bipartition> {
        let mut colour: Vec<Option<u8>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for v in self.adj[u].iter() {
                    match colour[v] {
                        None => {
                            colour[v] = Some(1 - cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(Bipartition {
            colour: colour.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Vertex sets of the blocks (maximal 2-connected subgraphs and bridges),
    /// each sorted. Isolated vertices belong to no block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        connectivity::blocks(self)
    }

    /// Size of a minimum vertex cut; `n - 1` for complete graphs, 0 when disconnected.
    pub fn vertex_connectivity(&self) -> Result<usize> {
        if self.n < 2 {
            return arg(format!("vertex connectivity needs n >= 2, got {}", self.n));
        }
        Ok(connectivity::vertex_connectivity(self))
    }

    /// The subgraph with the same vertices and edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {})", self.n, graph6::encode(self))
    }
}
