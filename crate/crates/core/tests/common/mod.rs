//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately naive and independent of the library's search code.
#![allow(dead_code)]

use hboot::Graph;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A random graph in which some vertices are copies (twins) of others.
pub fn random_graph_with_twins(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let base_n = (n / 2).max(2).min(n);
    let base = random_graph(rng, base_n, p);
    let mut g = Graph::empty(n);
    let origin: Vec<usize> = (0..n).map(|v| if v < base_n { v } else { rng.gen_range(0..base_n) }).collect();
    let closed: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (origin[u], origin[v]);
            let edge = if a == b { closed[u.max(v)] } else { base.has_edge(a, b) };
            if edge {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Pairs `(u, v)`, `u < v`, in the column order of the upper triangle.
pub fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 1..n {
        for u in 0..v {
            out.push((u, v));
        }
    }
    out
}

/// The labelled graph whose edges are the set bits of `mask` over [`upper_pairs`].
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    for (i, &(u, v)) in upper_pairs(n).iter().enumerate() {
        if mask >> i & 1 == 1 {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    let m = n * n.saturating_sub(1) / 2;
    (0..1u64 << m).map(move |mask| graph_from_mask(n, mask))
}

/// Edge mask of `g` relabelled by `perm` (vertex `v` becomes `perm[v]`).
pub fn mask_under(g: &Graph, perm: &[usize], pairs: &[(usize, usize)]) -> u64 {
    let n = g.n();
    let mut pos = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pos[u][v] = i;
        pos[v][u] = i;
    }
    let mut mask = 0;
    for (u, v) in g.edges() {
        mask |= 1 << pos[perm[u]][perm[v]];
    }
    mask
}

/// Smallest edge mask over all relabellings: a complete isomorphism invariant.
pub fn brute_canonical(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let pairs = upper_pairs(g.n());
    perms.iter().map(|p| mask_under(g, p, &pairs)).min().unwrap()
}

pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let perms = permutations(a.n());
    brute_canonical(a, &perms) == brute_canonical(b, &perms)
}

/// Number of injective maps `V(f) -> V(g)` sending every edge of `f` to an edge of `g`.
pub fn count_embeddings(g: &Graph, f: &Graph) -> u64 {
    fn go(g: &Graph, f: &Graph, img: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let x = img.len();
        if x == f.n() {
            return 1;
        }
        let mut total = 0;
        for c in 0..g.n() {
            if used[c] {
                continue;
            }
            if (0..x).any(|y| f.has_edge(x, y) && !g.has_edge(c, img[y])) {
                continue;
            }
            used[c] = true;
            img.push(c);
            total += go(g, f, img, used);
            img.pop();
            used[c] = false;
        }
        total
    }
    if f.n() > g.n() {
        return 0;
    }
    go(g, f, &mut Vec::new(), &mut vec![false; g.n()])
}

pub fn brute_contains(g: &Graph, f: &Graph) -> bool {
    count_embeddings(g, f) > 0
}

/// Literal copy counting: does adding `uv` increase the number of copies of `h`?
pub fn literal_completes(g: &Graph, h: &Graph, u: usize, v: usize) -> bool {
    let mut plus = g.clone();
    plus.add_edge(u, v);
    count_embeddings(&plus, h) > count_embeddings(g, h)
}

/// One literal round: every non-edge judged by copy counting.
pub fn literal_step(g: &Graph, h: &Graph) -> Vec<(usize, usize)> {
    g.non_edges().into_iter().filter(|&(u, v)| literal_completes(g, h, u, v)).collect()
}

/// Connectivity of `g` minus the vertices in `removed` (bit mask).
pub fn connected_without(g: &Graph, removed: u32) -> bool {
    let n = g.n();
    let alive: Vec<usize> = (0..n).filter(|&v| removed >> v & 1 == 0).collect();
    if alive.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![alive[0]];
    seen[alive[0]] = true;
    while let Some(x) = stack.pop() {
        for y in g.neighbors(x).iter() {
            if removed >> y & 1 == 0 && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

/// Smallest vertex set whose removal disconnects `g` or leaves one vertex.
pub fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n - 1;
    for mask in 0u32..1 << n {
        let k = mask.count_ones() as usize;
        if k < best && !connected_without(g, mask) {
            best = k;
        }
    }
    best
}

pub fn brute_two_colourable(g: &Graph) -> bool {
    let n = g.n();
    (0u32..1 << n).any(|c| g.edges().iter().all(|&(u, v)| (c >> u & 1) != (c >> v & 1)))
}

/// Blocks by the cycle relation: two edges share a block iff some simple
/// cycle passes through both. Vertex sets of the edge classes, sorted.
pub fn brute_blocks(g: &Graph) -> Vec<Vec<usize>> {
    let edges = g.edges();
    let idx = |u: usize, v: usize| edges.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    // Simple cycles through their smallest vertex s, walked as paths.
    fn walk(g: &Graph, s: usize, path: &mut Vec<usize>, on: &mut Vec<bool>, cycles: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for w in g.neighbors(last).iter() {
            if w == s && path.len() >= 3 {
                cycles.push(path.clone());
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(w);
                walk(g, s, path, on, cycles);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut cycles = Vec::new();
    for s in 0..g.n() {
        let mut on = vec![false; g.n()];
        on[s] = true;
        walk(g, s, &mut vec![s], &mut on, &mut cycles);
    }
    for c in &cycles {
        let k = c.len();
        let first = idx(c[0], c[1]);
        for i in 1..k {
            let e = idx(c[i], c[(i + 1) % k]);
            let (a, b) = (find(&mut parent, first), find(&mut parent, e));
            parent[a] = b;
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, &(u, v)) in edges.iter().enumerate() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().extend([u, v]);
    }
    let mut out: Vec<Vec<usize>> = classes
        .into_values()
        .map(|mut vs| {
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect();
    out.sort();
    out
}

/// Whether `cover` touches every edge of `g`.
pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| cover.contains(&u) || cover.contains(&v))
}

/// All minimum vertex covers of `g`, each sorted.
pub fn minimum_vertex_covers(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if set.len() > best || !is_vertex_cover(g, &set) {
            continue;
        }
        if set.len() < best {
            best = set.len();
            out.clear();
        }
        out.push(set);
    }
    out
}

/// BFS distances from `s`; unreachable vertices get `usize::MAX`.
pub fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.n()];
    d[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x).iter() {
            if d[y] == usize::MAX {
                d[y] = d[x] + 1;
                queue.push_back(y);
            }
        }
    }
    d
}

/// Labelled trees on `0..n` from every Prüfer sequence.
pub fn labelled_trees(n: usize) -> Vec<Graph> {
    if n <= 2 {
        let mut g = Graph::empty(n);
        if n == 2 {
            g.add_edge(0, 1);
        }
        return vec![g];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let mut seq = Vec::with_capacity(len);
            for _ in 0..len {
                seq.push(code % n);
                code /= n;
            }
            let mut degree = vec![1usize; n];
            for &x in &seq {
                degree[x] += 1;
            }
            let mut g = Graph::empty(n);
            for &x in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                g.add_edge(leaf, x);
                degree[leaf] -= 1;
                degree[x] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            g.add_edge(rest[0], rest[1]);
            g
        })
        .collect()
}

/// Graphs on `min_n..=max_n` vertices, every pair an independent coin flip.
pub fn arb_graph_between(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            for (i, (u, v)) in upper_pairs(n).into_iter().enumerate() {
                if bits[i] {
                    g.add_edge(u, v);
                }
            }
            g
        })
    })
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph_between(0, max_n)
}

/// Patterns with at least one edge.
pub fn arb_pattern(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph_between(2, max_n).prop_filter("pattern needs an edge", |h| h.edge_count() > 0)
}

/// A graph together with a permutation of its vertices.
pub fn arb_relabelled(min_n: usize, max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph_between(min_n, max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}
