//! Subgraph embedding as constraint satisfaction over bitset domains.
//!
//! Each pattern vertex keeps the set of host vertices it may still map to.
//! Assigning a vertex removes its image everywhere and restricts its pattern
//! neighbours to the image's neighbourhood. Between assignments the domains
//! are pruned to a fixpoint:
//! - arc consistency: a vertex needs a host neighbour in each unassigned
//!   pattern neighbour's domain;
//! - triangles: a vertex on a pattern triangle must lie on a host triangle
//!   that is still available;
//! - counting: the unassigned vertices need enough distinct candidates.
//!
//! Branching takes the smallest domain first.

use std::collections::{HashMap, HashSet};

use crate::graph::{Graph, VertexSet};

const FREE: usize = usize::MAX;

/// A host graph with its twin classes. Vertices `c, c'` are twins when
/// `N(c) \ {c'} = N(c') \ {c}`; swapping them is an automorphism, so when both
/// are unused a branch only needs to try one of them.
pub(crate) struct Host<'a> {
    pub(crate) g: &'a Graph,
    /// Smallest member of each vertex's twin class.
    pub(crate) twin: Vec<usize>,
    /// Vertices whose twin class has another member.
    pub(crate) paired: VertexSet,
}

impl<'a> Host<'a> {
    pub(crate) fn new(g: &'a Graph) -> Host<'a> {
        let n = g.n();
        let mut twin: Vec<usize> = (0..n).collect();
        let mut open: HashMap<VertexSet, usize> = HashMap::new();
        let mut closed: HashMap<VertexSet, usize> = HashMap::new();
        // A vertex cannot have both a false twin and a true twin, so the two
        // relations never merge into a larger class.
        for v in 0..n {
            let nv = *g.neighbors(v);
            let mut closed_nv = nv;
            closed_nv.insert(v);
            let a = *open.entry(nv).or_insert(v);
            let b = *closed.entry(closed_nv).or_insert(v);
            twin[v] = a.min(b);
        }
        let mut paired = VertexSet::new();
        for v in 0..n {
            if twin[v] != v {
                paired.insert(v);
                paired.insert(twin[v]);
            }
        }
        Host { g, twin, paired }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    adj: Vec<Vec<usize>>,
    deg: Vec<usize>,
    /// `triangles[x]` lists pairs `(y, w)` with `xyw` a triangle.
    triangles: Vec<Vec<(usize, usize)>>,
    /// Vertices with at least one edge; the others only need distinct images.
    active: Vec<usize>,
}

#[derive(Clone)]
struct State {
    dom: Vec<VertexSet>,
    img: Vec<usize>,
    used: VertexSet,
    /// Unassigned active vertices.
    left: usize,
}

impl Matcher {
    pub(crate) fn new(f: &Graph) -> Matcher {
        let n = f.n();
        let adj: Vec<Vec<usize>> = (0..n).map(|x| f.neighbors(x).iter().collect()).collect();
        let triangles = (0..n)
            .map(|x| {
                let mut t = Vec::new();
                for (i, &y) in adj[x].iter().enumerate() {
                    for &w in &adj[x][i + 1..] {
                        if f.has_edge(y, w) {
                            t.push((y, w));
                        }
                    }
                }
                t
            })
            .collect();
        Matcher {
            deg: adj.iter().map(Vec::len).collect(),
            active: (0..n).filter(|&x| !adj[x].is_empty()).collect(),
            adj,
            triangles,
        }
    }

    fn order(&self) -> usize {
        self.adj.len()
    }

    /// An injective edge-preserving map into `g` extending the pinned pairs
    /// `(pattern vertex, host vertex)`, as `map[x] = image`.
    pub(crate) fn embed(&self, host: &Host, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
        self.embed_within(host, fixed, &[])
    }

    /// [`embed`](Self::embed) with the images of some non-isolated pattern
    /// vertices confined to given sets.
    pub(crate) fn embed_within(
        &self,
        host: &Host,
        fixed: &[(usize, usize)],
        within: &[(usize, VertexSet)],
    ) -> Option<Vec<usize>> {
        let g = host.g;
        if self.order() > g.n() {
            return None;
        }
        let all = VertexSet::prefix(g.n());
        let mut dom = vec![all; self.order()];
        for &x in &self.active {
            if self.deg[x] > 1 {
                dom[x] = (0..g.n()).filter(|&c| g.degree(c) >= self.deg[x]).collect();
            }
        }
        let mut st = State {
            dom,
            img: vec![FREE; self.order()],
            used: VertexSet::new(),
            left: self.active.len(),
        };
        for (x, set) in within {
            debug_assert!(self.deg[*x] > 0, "isolated vertices take spare images");
            st.dom[*x].intersect_with(set);
        }
        for &(x, c) in fixed {
            if st.img[x] != FREE || !st.dom[x].contains(c) {
                return None;
            }
            self.assign(g, &mut st, x, c);
        }
        if !self.search(host, &mut st) {
            return None;
        }
        let mut spare = all;
        spare.difference_with(&st.used);
        let mut spare = spare.iter();
        for i in st.img.iter_mut() {
            if *i == FREE {
                *i = spare.next().expect("counting check reserved spare vertices");
            }
        }
        Some(st.img)
    }

    /// Every embedding of the pattern, which must have no isolated vertices,
    /// or `None` once there are more than `cap`. Also returns a subset meeting
    /// every orbit under swaps of twin vertices.
    pub(crate) fn embeddings(&self, host: &Host, cap: usize) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        debug_assert_eq!(self.active.len(), self.order());
        let g = host.g;
        if self.order() > g.n() {
            return Some((Vec::new(), Vec::new()));
        }
        let mut dom = vec![VertexSet::prefix(g.n()); self.order()];
        for x in 0..self.order() {
            dom[x] = (0..g.n()).filter(|&c| g.degree(c) >= self.deg[x]).collect();
        }
        let mut st = State {
            dom,
            img: vec![FREE; self.order()],
            used: VertexSet::new(),
            left: self.order(),
        };
        let mut found = Vec::new();
        if !self.search_all(host, &mut st, &mut found, cap) {
            return None;
        }
        // The search tried one vertex per twin class; swapping twins is an
        // automorphism of the host, so closing under swaps restores the rest.
        let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
        for c in 0..g.n() {
            classes.entry(host.twin[c]).or_default().push(c);
        }
        let mut seen: HashSet<Vec<usize>> = found.iter().cloned().collect();
        let mut queue = found.clone();
        let mut i = 0;
        while i < queue.len() {
            let img = queue[i].clone();
            i += 1;
            for &c in &img {
                for &d in &classes[&host.twin[c]] {
                    if d == c {
                        continue;
                    }
                    let swapped: Vec<usize> = img
                        .iter()
                        .map(|&y| if y == c { d } else if y == d { c } else { y })
                        .collect();
                    if seen.insert(swapped.clone()) {
                        if seen.len() > cap {
                            return None;
                        }
                        queue.push(swapped);
                    }
                }
            }
        }
        queue.sort_unstable();
        Some((found, queue))
    }

    /// Collects complete assignments below `st`; false once more than `cap`.
    fn search_all(&self, host: &Host, st: &mut State, out: &mut Vec<Vec<usize>>, cap: usize) -> bool {
        let g = host.g;
        if !self.propagate(g, st) {
            return true;
        }
        let pick = self.active.iter().copied().filter(|&x| st.img[x] == FREE).min_by_key(|&x| st.dom[x].len());
        let Some(x) = pick else {
            out.push(st.img.clone());
            return out.len() <= cap;
        };
        let mut tried: Vec<usize> = Vec::new();
        for c in st.dom[x].iter() {
            let class = host.twin[c];
            if tried.contains(&class) {
                continue;
            }
            tried.push(class);
            let mut next = st.clone();
            self.assign(g, &mut next, x, c);
            if !self.search_all(host, &mut next, out, cap) {
                return false;
            }
        }
        true
    }

    fn assign(&self, g: &Graph, st: &mut State, x: usize, c: usize) {
        st.img[x] = c;
        st.used.insert(c);
        if self.deg[x] > 0 {
            st.left -= 1;
        }
        for d in st.dom.iter_mut() {
            d.remove(c);
        }
        st.dom[x] = VertexSet::new();
        st.dom[x].insert(c);
        for &y in &self.adj[x] {
            if st.img[y] == FREE {
                st.dom[y].intersect_with(g.neighbors(c));
            }
        }
    }

    fn search(&self, host: &Host, st: &mut State) -> bool {
        let g = host.g;
        if !self.propagate(g, st) {
            return false;
        }
        let pick = self.active.iter().copied().filter(|&x| st.img[x] == FREE).min_by_key(|&x| {
            let placed = self.adj[x].iter().filter(|&&y| st.img[y] != FREE).count();
            (st.dom[x].len(), std::cmp::Reverse(placed), std::cmp::Reverse(self.deg[x]), x)
        });
        let Some(x) = pick else {
            return true;
        };
        let mut tried: Vec<usize> = Vec::new();
        for c in st.dom[x].iter() {
            // Candidates are unused, so a twin of an earlier candidate is redundant.
            let class = host.twin[c];
            if tried.contains(&class) {
                continue;
            }
            tried.push(class);
            let mut next = st.clone();
            self.assign(g, &mut next, x, c);
            if self.search(host, &mut next) {
                *st = next;
                return true;
            }
        }
        false
    }

    fn propagate(&self, g: &Graph, st: &mut State) -> bool {
        let n = g.n();
        let mut unused = VertexSet::prefix(n);
        unused.difference_with(&st.used);
        let isolated_left = st.img.iter().enumerate().filter(|&(x, &i)| i == FREE && self.deg[x] == 0).count();
        if unused.len() < st.left + isolated_left {
            return false;
        }
        let mut reach = vec![VertexSet::new(); self.order()];
        let mut open_triangles: Option<VertexSet> = None;
        loop {
            for &y in &self.active {
                if st.img[y] == FREE {
                    reach[y] = neighbourhood(g, &st.dom[y]);
                }
            }
            let mut changed = false;
            for &x in &self.active {
                if st.img[x] != FREE {
                    continue;
                }
                let mut d = st.dom[x];
                for &y in &self.adj[x] {
                    if st.img[y] == FREE {
                        d.intersect_with(&reach[y]);
                    }
                }
                for &(y, w) in &self.triangles[x] {
                    match (st.img[y], st.img[w]) {
                        (FREE, FREE) => {
                            let t = open_triangles.get_or_insert_with(|| triangle_vertices(g, &unused));
                            d.intersect_with(t);
                        }
                        (FREE, c) | (c, FREE) if c != FREE => {
                            let other = if st.img[y] == FREE { y } else { w };
                            let mut common = *g.neighbors(c);
                            common.intersect_with(&st.dom[other]);
                            d = d.iter().filter(|&v| g.neighbors(v).intersection_len(&common) > 0).collect();
                        }
                        _ => {}
                    }
                }
                if d.is_empty() {
                    return false;
                }
                if d != st.dom[x] {
                    st.dom[x] = d;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut union = VertexSet::new();
        for &x in &self.active {
            if st.img[x] == FREE {
                union.union_with(&st.dom[x]);
            }
        }
        union.len() >= st.left
    }
}

fn neighbourhood(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for c in set.iter() {
        out.union_with(g.neighbors(c));
    }
    out
}

/// Vertices of `avail` lying on a triangle of `g[avail]`.
fn triangle_vertices(g: &Graph, avail: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for c in avail.iter() {
        if out.contains(c) {
            continue;
        }
        let mut nc = *g.neighbors(c);
        nc.intersect_with(avail);
        for d in nc.iter() {
            let mut common = nc;
            common.intersect_with(g.neighbors(d));
            if let Some(e) = common.first() {
                out.insert(c);
                out.insert(d);
                out.insert(e);
                break;
            }
        }
    }
    out
}
