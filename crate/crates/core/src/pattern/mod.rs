//! Compiled target graphs and anchored embedding search.
//!
//! Adding the non-edge `uv` to `G` creates a new copy of `H` exactly when some
//! edge `ab` of `H` admits an injective map of `V(H)` into `V(G)` sending
//! `{a, b}` onto `{u, v}` and every other edge of `H` onto an edge of `G`.
//! Only one representative per automorphism orbit of edges needs testing.

mod matcher;

use crate::error::{arg, Result};
use crate::graph::canon::{edge_orbits, EdgeOrbit};
use crate::graph::Graph;
use std::collections::HashSet;

use rayon::prelude::*;
pub(crate) use matcher::Host;
use matcher::Matcher;

/// `H - e` for one representative edge `e = ab`.
#[derive(Clone, Debug)]
pub struct Template {
    /// The representative edge `(a, b)`.
    pub edge: (usize, usize),
    /// `H` with `edge` removed.
    pub graph: Graph,
    /// Whether an automorphism swaps `a` and `b`, so one anchor orientation suffices.
    pub reversible: bool,
    matcher: Matcher,
    /// Blocks of at least three vertices, largest first.
    cores: Vec<Core>,
}

/// Core embeddings as `(pattern vertex, host vertex)` pins.
struct CoreMaps {
    reps: Vec<Vec<(usize, usize)>>,
    all: Vec<Vec<(usize, usize)>>,
}

/// Largest block of `H - e`, compiled on its own.
#[derive(Clone, Debug)]
struct Core {
    /// Pattern vertices of the block, sorted; the block's vertex `i` is `vertices[i]`.
    vertices: Vec<usize>,
    matcher: Matcher,
}

/// Above this many core embeddings, pair queries search from scratch.
const CORE_CAP: usize = 256;

impl Core {
    fn blocks_of(f: &Graph) -> Vec<Core> {
        let mut blocks: Vec<(usize, Vec<usize>)> = f
            .blocks()
            .into_iter()
            .filter(|b| b.len() >= 3)
            .map(|b| (f.induced(&b).expect("block vertices are in range").edge_count(), b))
            .collect();
        blocks.sort_by(|x, y| (y.0, y.1.len()).cmp(&(x.0, x.1.len())));
        blocks
            .into_iter()
            .map(|(_, vertices)| Core {
                matcher: Matcher::new(&f.induced(&vertices).expect("block vertices are in range")),
                vertices,
            })
            .collect()
    }
}

impl Template {
    /// Anchor orientations to try: `(a, b)` and, unless reversible, `(b, a)`.
    fn orientations(&self) -> impl Iterator<Item = (usize, usize)> {
        let (a, b) = self.edge;
        std::iter::once((a, b)).chain((!self.reversible).then_some((b, a)))
    }

    /// Embeddings of the first core block with at most `CORE_CAP` of them.
    fn core_embeddings(&self, host: &Host) -> Option<CoreMaps> {
        self.cores.iter().find_map(|core| {
            let (reps, all) = core.matcher.embeddings(host, CORE_CAP)?;
            let pin = |maps: Vec<Vec<usize>>| -> Vec<Vec<(usize, usize)>> {
                maps.into_iter()
                    .map(|m| core.vertices.iter().copied().zip(m).collect())
                    .collect()
            };
            Some(CoreMaps {
                reps: pin(reps),
                all: pin(all),
            })
        })
    }

    /// [`embed`](Self::embed) restricted to extensions of the given core
    /// embeddings.
    fn embed_via_core(&self, host: &Host, cores: &CoreMaps, u: usize, v: usize) -> bool {
        // Swapping twins outside {u, v} preserves the query, so when neither
        // end has a twin one embedding per swap orbit suffices.
        let maps = if host.paired.contains(u) || host.paired.contains(v) {
            &cores.all
        } else {
            &cores.reps
        };
        self.orientations().any(|(a, b)| {
            maps.iter().any(|pins| {
                let mut pins = pins.clone();
                for (x, c) in [(a, u), (b, v)] {
                    match pins.iter().find(|&&(y, _)| y == x) {
                        Some(&(_, d)) if d != c => return false,
                        Some(_) => {}
                        None => pins.push((x, c)),
                    }
                }
                self.matcher.embed(host, &pins).is_some()
            })
        })
    }

    fn embed(&self, host: &Host, u: usize, v: usize) -> Option<AnchoredEmbedding> {
        self.orientations().find_map(|(a, b)| {
            self.matcher.embed(host, &[(a, u), (b, v)]).map(|map| AnchoredEmbedding {
                map,
                anchor_edge: (a, b),
            })
        })
    }
}

/// A target graph `H` compiled for repeated "does `uv` complete a copy" queries.
#[derive(Clone, Debug)]
pub struct Pattern {
    h: Graph,
    orbits: Vec<EdgeOrbit>,
    templates: Vec<Template>,
}

/// Injective map of `V(H)` into `V(G)` witnessing that the anchor pair completes
/// a copy of `H`: every edge of `H - anchor_edge` lands on an edge of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredEmbedding {
    /// `map[x]` is the image of pattern vertex `x`.
    pub map: Vec<usize>,
    /// The pattern edge whose endpoints land on the queried pair.
    pub anchor_edge: (usize, usize),
}

impl AnchoredEmbedding {
    /// Sorted image of `V(H)`.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }

    /// Images of the pattern's edges, each as `(min, max)`.
    pub fn image_edges(&self, h: &Graph) -> Vec<(usize, usize)> {
        h.edges()
            .into_iter()
            .map(|(x, y)| {
                let (a, b) = (self.map[x], self.map[y]);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

impl Pattern {
    /// Compiles `h`, reducing edges to automorphism-orbit representatives.
    pub fn compile(h: &Graph) -> Result<Pattern> {
        Self::build(h, true)
    }

    /// Compiles `h` treating every edge and both anchor orientations separately.
    pub fn compile_unreduced(h: &Graph) -> Result<Pattern> {
        Self::build(h, false)
    }

    fn build(h: &Graph, reduce: bool) -> Result<Pattern> {
        if h.edge_count() == 0 {
            return arg("pattern must have at least one edge");
        }
        let orbits = if reduce {
            edge_orbits(h)
        } else {
            h.edges()
                .into_iter()
                .map(|e| EdgeOrbit {
                    representative: e,
                    members: vec![e],
                    reversible: false,
                })
                .collect()
        };
        let templates = orbits
            .iter()
            .map(|o| {
                let (a, b) = o.representative;
                let graph = h.without_edge(a, b);
                Template {
                    edge: (a, b),
                    matcher: Matcher::new(&graph),
                    cores: Core::blocks_of(&graph),
                    graph,
                    reversible: o.reversible,
                }
            })
            .collect();
        Ok(Pattern {
            h: h.clone(),
            orbits,
            templates,
        })
    }

    /// The target graph `H`.
    pub fn graph(&self) -> &Graph {
        &self.h
    }

    pub fn edge_orbits(&self) -> &[EdgeOrbit] {
        &self.orbits
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.h.degree_sequence()
    }

    pub fn min_degree(&self) -> usize {
        self.h.min_degree()
    }

    pub fn max_degree(&self) -> usize {
        self.h.max_degree()
    }

    /// Whether adding the non-edge `uv` to `g` creates a new copy of `H`.
    pub fn completes_copy(&self, g: &Graph, u: usize, v: usize) -> Result<bool> {
        check_pair(g, u, v)?;
        Ok(self.completes_unchecked(&Host::new(g), u, v))
    }

    /// [`completes_copy`](Self::completes_copy) without argument validation.
    pub(crate) fn completes_unchecked(&self, host: &Host, u: usize, v: usize) -> bool {
        self.templates.iter().any(|t| t.embed(host, u, v).is_some())
    }

    /// The members of `pairs`, all non-edges of the host, whose addition
    /// creates a new copy of `H`, in input order.
    ///
    /// When a template's largest block has few embeddings, they are listed
    /// once and every pair query starts from one of them.
    pub(crate) fn completing_pairs(&self, host: &Host, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        if pairs.is_empty() {
            return Vec::new();
        }
        let cores: Vec<Option<CoreMaps>> = self.templates.par_iter().map(|t| t.core_embeddings(host)).collect();
        // Swapping twins is a host automorphism, so a pair's answer depends
        // only on the twin classes of its ends.
        let key = |(u, v): (usize, usize)| {
            let (x, y) = (host.twin[u], host.twin[v]);
            (x.min(y), x.max(y))
        };
        let mut probes: Vec<(usize, usize)> = Vec::new();
        let mut seen = HashSet::new();
        for &pair in pairs {
            if seen.insert(key(pair)) {
                probes.push(pair);
            }
        }
        let hits: HashSet<(usize, usize)> = probes
            .par_iter()
            .copied()
            .filter(|&(u, v)| {
                self.templates.iter().zip(&cores).any(|(t, core)| match core {
                    Some(maps) => t.embed_via_core(host, maps, u, v),
                    None => t.embed(host, u, v).is_some(),
                })
            })
            .map(key)
            .collect();
        pairs.iter().copied().filter(|&p| hits.contains(&key(p))).collect()
    }

    /// An embedding witnessing [`completes_copy`](Self::completes_copy), if any.
    /// Templates are tried in representative order, orientations `(a,b)` then `(b,a)`.
    pub fn completing_embedding(&self, g: &Graph, u: usize, v: usize) -> Result<Option<AnchoredEmbedding>> {
        check_pair(g, u, v)?;
        let host = Host::new(g);
        Ok(self.templates.iter().find_map(|t| t.embed(&host, u, v)))
    }
}

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    if u >= g.n() || v >= g.n() {
        return arg(format!("pair ({u},{v}) out of range for n = {}", g.n()));
    }
    if u == v {
        return arg(format!("pair ({u},{v}) is not two distinct vertices"));
    }
    if g.has_edge(u, v) {
        return arg(format!("({u},{v}) is already an edge"));
    }
    Ok(())
}

/// Whether `f` is a (not necessarily induced) subgraph of `g`.
pub fn contains(g: &Graph, f: &Graph) -> bool {
    find_embedding(g, f).is_some()
}

/// An embedding of `f` into `g` as a map `V(f) -> V(g)`, if any.
pub fn find_embedding(g: &Graph, f: &Graph) -> Option<Vec<usize>> {
    Matcher::new(f).embed(&Host::new(g), &[])
}
