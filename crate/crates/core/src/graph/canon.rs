//! Canonical labelling and isomorphism search by individualization and
//! refinement.
//!
//! Ordered partitions are refined to equitable ones by counting neighbours in
//! splitter cells. The canonical search branches on the first smallest
//! non-singleton cell, keeps the largest leaf certificate, and prunes with
//! automorphisms discovered from equal certificates.

use std::collections::HashMap;

use super::{Graph, VertexSet};

type Cells = Vec<Vec<usize>>;

/// Canonical upper-triangle bit string of a graph plus the relabelling
/// achieving it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    /// Vertex count (2 bytes, big endian) followed by the packed upper
    /// triangle of the relabelled adjacency matrix.
    pub bytes: Vec<u8>,
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

impl CanonicalForm {
    /// The canonically labelled graph.
    pub fn graph(&self, g: &Graph) -> Graph {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        g.relabel(&pos)
    }
}

/// One step of the refinement trace: which cell was split, by which splitter,
/// and the (neighbour count, fragment size) pairs it produced.
type TraceStep = (usize, usize, Vec<(usize, usize)>);

/// Refines `cells` to an equitable partition; returns the split trace.
fn refine(g: &Graph, cells: &mut Cells) -> Vec<TraceStep> {
    let mut trace = Vec::new();
    'restart: loop {
        for si in 0..cells.len() {
            let splitter: VertexSet = cells[si].iter().copied().collect();
            for ci in 0..cells.len() {
                if cells[ci].len() == 1 {
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> = cells[ci]
                    .iter()
                    .map(|&v| (g.neighbors(v).intersection_len(&splitter), v))
                    .collect();
                let first = keyed[0].0;
                if keyed.iter().all(|&(k, _)| k == first) {
                    continue;
                }
                keyed.sort_unstable();
                let mut fragments: Cells = Vec::new();
                let mut shape = Vec::new();
                let mut i = 0;
                while i < keyed.len() {
                    let k = keyed[i].0;
                    let frag: Vec<usize> = keyed[i..]
                        .iter()
                        .take_while(|&&(kk, _)| kk == k)
                        .map(|&(_, v)| v)
                        .collect();
                    i += frag.len();
                    shape.push((k, frag.len()));
                    fragments.push(frag);
                }
                trace.push((si, ci, shape));
                cells.splice(ci..=ci, fragments);
                continue 'restart;
            }
        }
        return trace;
    }
}

fn is_discrete(cells: &Cells) -> bool {
    cells.iter().all(|c| c.len() == 1)
}

/// Index of the first smallest non-singleton cell.
fn target_cell(cells: &Cells) -> usize {
    let mut best: Option<(usize, usize)> = None;
    for (i, c) in cells.iter().enumerate() {
        if c.len() > 1 && best.is_none_or(|(len, _)| c.len() < len) {
            best = Some((c.len(), i));
        }
    }
    best.expect("non-discrete partition").1
}

fn individualize(cells: &Cells, target: usize, v: usize) -> Cells {
    let mut out = cells.clone();
    let rest: Vec<usize> = cells[target].iter().copied().filter(|&x| x != v).collect();
    out.splice(target..=target, [vec![v], rest]);
    out
}

fn certificate(g: &Graph, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut bytes = vec![(n >> 8) as u8, n as u8];
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        let row = g.neighbors(order[j]);
        for &oi in &order[..j] {
            acc = (acc << 1) | row.contains(oi) as u8;
            nbits += 1;
            if nbits == 8 {
                bytes.push(acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push(acc << (8 - nbits));
    }
    bytes
}

struct Leaf {
    order: Vec<usize>,
    cert: Vec<u8>,
    path: Vec<usize>,
}

struct CanonSearch<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Union-find orbits of the group generated by the generators that fix
/// every vertex of `fixed`.
fn orbit_roots(n: usize, generators: &[Vec<usize>], fixed: &[usize]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for gen in generators.iter().filter(|g| fixed.iter().all(|&v| g[v] == v)) {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, gen[v]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

impl CanonSearch<'_> {
    fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
        let mut gamma = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            gamma[a] = b;
        }
        gamma
    }

    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn search(&mut self, mut cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.g, &mut cells);
        if is_discrete(&cells) {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let cert = certificate(self.g, &order);
            let Some(first) = &self.first else {
                let leaf = Leaf {
                    order,
                    cert,
                    path: path.clone(),
                };
                self.best = Some(Leaf {
                    order: leaf.order.clone(),
                    cert: leaf.cert.clone(),
                    path: leaf.path.clone(),
                });
                self.first = Some(leaf);
                return None;
            };
            if cert == first.cert {
                self.generators.push(Self::automorphism(&first.order, &order));
                return Some(common_prefix(path, &first.path));
            }
            let best = self.best.as_ref().unwrap();
            if cert == best.cert {
                self.generators.push(Self::automorphism(&best.order, &order));
                return Some(common_prefix(path, &best.path));
            }
            if cert > best.cert {
                self.best = Some(Leaf {
                    order,
                    cert,
                    path: path.clone(),
                });
            }
            return None;
        }
        let depth = path.len();
        let target = target_cell(&cells);
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() {
                let roots = orbit_roots(self.g.n(), &self.generators, path);
                if tried.iter().any(|&w| roots[w] == roots[v]) {
                    continue;
                }
            }
            tried.push(v);
            let child = individualize(&cells, target, v);
            path.push(v);
            let jump = self.search(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Canonical form: equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    if g.n() == 0 {
        return CanonicalForm {
            bytes: vec![0, 0],
            order: Vec::new(),
        };
    }
    let mut search = CanonSearch {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    search.search(vec![(0..g.n()).collect()], &mut path);
    let best = search.best.expect("search reaches a leaf");
    CanonicalForm {
        bytes: best.cert,
        order: best.order,
    }
}

/// Automorphism generators found while canonically labelling `g`.
pub fn automorphism_generators(g: &Graph) -> Vec<Vec<usize>> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut search = CanonSearch {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    search.search(vec![(0..g.n()).collect()], &mut Vec::new());
    search.generators
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_form(a).bytes == canonical_form(b).bytes
}

fn anchored_cells(n: usize, anchors: &[usize]) -> Cells {
    let mut cells: Cells = anchors.iter().map(|&v| vec![v]).collect();
    let rest: Vec<usize> = (0..n).filter(|v| !anchors.contains(v)).collect();
    if !rest.is_empty() {
        cells.push(rest);
    }
    cells
}

/// An isomorphism `map` from `a` to `b` (edge `uv` of `a` ↦ edge `map[u] map[v]`
/// of `b`) sending each `pairs[i].0` to `pairs[i].1`, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let left: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let right: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let distinct = |v: &[usize]| {
        let s: VertexSet = v.iter().copied().collect();
        s.len() == v.len()
    };
    if !distinct(&left) || !distinct(&right) {
        return None;
    }
    iso_search(a, b, anchored_cells(a.n(), &left), anchored_cells(b.n(), &right))
}

fn iso_search(a: &Graph, b: &Graph, mut pa: Cells, mut pb: Cells) -> Option<Vec<usize>> {
    if refine(a, &mut pa) != refine(b, &mut pb) {
        return None;
    }
    if pa.len() != pb.len() || pa.iter().zip(&pb).any(|(x, y)| x.len() != y.len()) {
        return None;
    }
    if is_discrete(&pa) {
        let mut map = vec![0; a.n()];
        for (x, y) in pa.iter().zip(&pb) {
            map[x[0]] = y[0];
        }
        let ok = a.edges().into_iter().all(|(u, v)| b.has_edge(map[u], map[v]));
        return ok.then_some(map);
    }
    let target = target_cell(&pa);
    let x = pa[target][0];
    let ca = individualize(&pa, target, x);
    for &y in &pb[target] {
        if let Some(map) = iso_search(a, b, ca.clone(), individualize(&pb, target, y)) {
            return Some(map);
        }
    }
    None
}

/// An automorphism of `g` with `g[pairs[i].0] = pairs[i].1`, if one exists.
pub fn find_automorphism(g: &Graph, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    find_isomorphism(g, g, pairs)
}

/// Orbit of an edge under the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrbit {
    /// Lexicographically least edge of the orbit.
    pub representative: (usize, usize),
    pub members: Vec<(usize, usize)>,
    /// Some automorphism swaps the endpoints of the representative.
    pub reversible: bool,
}

/// Partition of `E(g)` into automorphism orbits, ordered by representative.
pub fn edge_orbits(g: &Graph) -> Vec<EdgeOrbit> {
    let generators = automorphism_generators(g);
    let edges = g.edges();
    // Ordered edges: index 2i is (u, v), 2i + 1 is (v, u).
    let index: HashMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .flat_map(|(i, &(u, v))| [((u, v), 2 * i), ((v, u), 2 * i + 1)])
        .collect();
    let mut parent: Vec<usize> = (0..2 * edges.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for gen in &generators {
        for (&(u, v), &i) in &index {
            let j = index[&(gen[u], gen[v])];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<EdgeOrbit> = Vec::new();
    let mut home: HashMap<usize, usize> = HashMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        let (fwd, back) = (find(&mut parent, 2 * i), find(&mut parent, 2 * i + 1));
        match home.get(&fwd).or_else(|| home.get(&back)) {
            Some(&k) => orbits[k].members.push((u, v)),
            None => {
                home.insert(fwd, orbits.len());
                home.insert(back, orbits.len());
                orbits.push(EdgeOrbit {
                    representative: (u, v),
                    members: vec![(u, v)],
                    reversible: fwd == back,
                });
            }
        }
    }
    orbits
}
