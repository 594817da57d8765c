//! Vertex connectivity via Menger: minimum over non-adjacent pairs of the
//! maximum number of internally vertex-disjoint paths. Also block decomposition.

use std::collections::VecDeque;

use super::Graph;

pub(super) fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n - 1;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            best = best.min(disjoint_paths(g, s, t, best));
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

/// Split-vertex unit-capacity network: node `2v` is v_in, `2v + 1` is v_out.
struct Network {
    cap: Vec<Vec<(usize, i32)>>,
}

impl Network {
    fn residual(&self, u: usize, v: usize) -> i32 {
        self.cap[u].iter().find(|(w, _)| *w == v).map_or(0, |&(_, c)| c)
    }

    fn push(&mut self, u: usize, v: usize, amount: i32) {
        for (w, c) in self.cap[u].iter_mut() {
            if *w == v {
                *c -= amount;
            }
        }
        for (w, c) in self.cap[v].iter_mut() {
            if *w == u {
                *c += amount;
            }
        }
    }
}

/// Number of internally vertex-disjoint s-t paths, stopping early at `limit`.
fn disjoint_paths(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.n();
    let big = n as i32 + 1;
    let mut net = Network {
        cap: vec![Vec::new(); 2 * n],
    };
    let link = |net: &mut Network, a: usize, b: usize, c: i32| {
        net.cap[a].push((b, c));
        net.cap[b].push((a, 0));
    };
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        link(&mut net, 2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        link(&mut net, 2 * u + 1, 2 * v, big);
        link(&mut net, 2 * v + 1, 2 * u, big);
    }
    let (src, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < limit {
        let mut prev = vec![usize::MAX; 2 * n];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &(v, c) in &net.cap[u] {
                if c > 0 && prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut v = sink;
        while v != src {
            let u = prev[v];
            debug_assert!(net.residual(u, v) > 0);
            net.push(u, v, 1);
            v = u;
        }
        flow += 1;
    }
    flow
}

/// Hopcroft-Tarjan with an edge stack.
pub(super) fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    struct Dfs<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<usize>>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, u: usize, parent: Option<usize>) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for v in self.g.neighbors(u).iter() {
                if self.disc[v] == 0 {
                    self.stack.push((u, v));
                    self.visit(v, Some(u));
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        let mut block = Vec::new();
                        while let Some((x, y)) = self.stack.pop() {
                            block.extend([x, y]);
                            if (x, y) == (u, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        self.out.push(block);
                    }
                } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                    self.stack.push((u, v));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }
    let n = g.n();
    let mut dfs = Dfs {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for s in 0..n {
        if dfs.disc[s] == 0 {
            dfs.visit(s, None);
        }
    }
    let mut out = dfs.out;
    out.sort();
    out
}
