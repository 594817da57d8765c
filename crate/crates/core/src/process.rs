//! The H-bootstrap process: rounds, running time, final graph.

use serde_json::{json, Value};

use crate::error::{arg, Error, Result};
use crate::graph::{graph6, Graph, VertexSet};
use crate::pattern::{Host, Pattern};

pub type Edge = (usize, usize);

/// Full record of one run of the process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub start: Graph,
    pub pattern_graph: Graph,
    /// `rounds[i - 1]` holds the edges added at time `i`, sorted, each `(min, max)`.
    pub rounds: Vec<Vec<Edge>>,
    pub tau: usize,
    pub final_graph: Graph,
    /// Set when the round limit was reached while the process was still adding edges.
    pub truncated: bool,
}

impl Trajectory {
    /// `G_i`: the start plus batches `1..=i`.
    pub fn graph_at(&self, i: usize) -> Graph {
        let mut g = self.start.clone();
        for batch in self.rounds.iter().take(i) {
            for &(u, v) in batch {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.start.n(),
            "pattern": graph6::encode(&self.pattern_graph),
            "start": graph6::encode(&self.start),
            "rounds": self.rounds.iter()
                .map(|b| b.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "tau": self.tau,
            "final": graph6::encode(&self.final_graph),
            "truncated": self.truncated,
        })
    }

    /// Parses the JSON produced by [`to_json`](Self::to_json) and checks that
    /// the recorded fields are mutually consistent.
    pub fn from_json(value: &Value) -> Result<Trajectory> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Argument(format!("trajectory missing \"{k}\"")));
        let text = |k: &str| -> Result<String> {
            field(k)?
                .as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Argument(format!("trajectory \"{k}\" is not a string")))
        };
        let start = graph6::decode(&text("start")?)?;
        let pattern_graph = graph6::decode(&text("pattern")?)?;
        let final_graph = graph6::decode(&text("final")?)?;
        let rounds: Vec<Vec<Edge>> = serde_json::from_value::<Vec<Vec<[usize; 2]>>>(field("rounds")?.clone())
            .map_err(|e| Error::Argument(format!("trajectory \"rounds\": {e}")))?
            .into_iter()
            .map(|b| b.into_iter().map(|[u, v]| (u.min(v), u.max(v))).collect())
            .collect();
        let tau = field("tau")?
            .as_u64()
            .ok_or_else(|| Error::Argument("trajectory \"tau\" is not an integer".into()))? as usize;
        let truncated = field("truncated")?
            .as_bool()
            .ok_or_else(|| Error::Argument("trajectory \"truncated\" is not a boolean".into()))?;
        if let Some(n) = value.get("n").and_then(Value::as_u64) {
            if n as usize != start.n() {
                return arg("trajectory \"n\" disagrees with the start graph");
            }
        }
        let t = Trajectory {
            start,
            pattern_graph,
            rounds,
            tau,
            final_graph,
            truncated,
        };
        t.check_consistent()?;
        Ok(t)
    }

    fn check_consistent(&self) -> Result<()> {
        if self.tau != self.rounds.len() {
            return arg("trajectory tau differs from the number of rounds");
        }
        let mut g = self.start.clone();
        for (i, batch) in self.rounds.iter().enumerate() {
            if batch.is_empty() {
                return arg(format!("trajectory round {} is empty", i + 1));
            }
            for &(u, v) in batch {
                if u == v || v >= g.n() || !g.add_edge(u, v) {
                    return arg(format!("trajectory round {} has invalid edge ({u},{v})", i + 1));
                }
            }
        }
        if g != self.final_graph {
            return arg("trajectory final graph differs from start plus rounds");
        }
        Ok(())
    }
}

/// All non-edges `uv` of `g` whose addition creates a new copy of the pattern,
/// evaluated simultaneously against `g`. Sorted lexicographically.
pub fn step(g: &Graph, p: &Pattern) -> Vec<Edge> {
    let n = g.n();
    if n < p.graph().n() {
        return Vec::new();
    }
    p.completing_pairs(&Host::new(g), &g.non_edges())
}

/// Whether no non-edge of `g` completes a copy of the pattern.
pub fn is_stable(g: &Graph, p: &Pattern) -> bool {
    let n = g.n();
    if n < p.graph().n() {
        return true;
    }
    p.completing_pairs(&Host::new(g), &g.non_edges()).is_empty()
}

/// Default round limit, `C(n,2) + 1`.
pub fn default_max_rounds(n: usize) -> usize {
    n * n.saturating_sub(1) / 2 + 1
}

/// Runs the process to stabilization or `max_rounds` non-empty rounds.
pub fn run(g: &Graph, p: &Pattern, max_rounds: usize) -> Result<Trajectory> {
    drive(g, p, max_rounds, |cur, _| step(cur, p))
}

/// Same result as [`run`], but from round 2 on only tests pairs near the
/// edges added in the previous round.
///
/// If `uv` completes a copy in `G_{i-1}` but not in `G_{i-2}`, the embedding of
/// `H - ab` uses some edge `xy` added in round `i-1`. When every component of
/// `H - ab` that has an edge contains `a` or `b`, `x` is within distance
/// `diam(component)` of `u` or `v` in `G_{i-1}`; if `a, b` share a component,
/// both `u` and `v` are. Patterns with several non-trivial components fall
/// back to a full scan.
pub fn run_frontier(g: &Graph, p: &Pattern, max_rounds: usize) -> Result<Trajectory> {
    let locality = Locality::of(p);
    drive(g, p, max_rounds, |cur, prev| match (prev, &locality) {
        (Some(batch), Some(loc)) => frontier_step(cur, p, batch, loc),
        _ => step(cur, p),
    })
}

fn drive(
    g: &Graph,
    p: &Pattern,
    max_rounds: usize,
    mut next: impl FnMut(&Graph, Option<&[Edge]>) -> Vec<Edge>,
) -> Result<Trajectory> {
    if max_rounds == 0 {
        return arg("max_rounds must be at least 1");
    }
    let mut cur = g.clone();
    let mut rounds: Vec<Vec<Edge>> = Vec::new();
    let mut truncated = false;
    loop {
        let batch = next(&cur, rounds.last().map(Vec::as_slice));
        if batch.is_empty() {
            break;
        }
        if rounds.len() == max_rounds {
            truncated = true;
            break;
        }
        for &(u, v) in &batch {
            cur.add_edge(u, v);
        }
        rounds.push(batch);
    }
    Ok(Trajectory {
        start: g.clone(),
        pattern_graph: p.graph().clone(),
        tau: rounds.len(),
        rounds,
        final_graph: cur,
        truncated,
    })
}

struct Locality {
    radius: usize,
    both_ends: bool,
}

impl Locality {
    fn of(p: &Pattern) -> Option<Locality> {
        let h = p.graph();
        let mut radius = 0;
        let mut both_ends = true;
        for (a, b) in h.edges() {
            let f = h.without_edge(a, b);
            for comp in f.components() {
                let has_anchor = comp.contains(&a) || comp.contains(&b);
                if comp.len() > 1 && !has_anchor {
                    return None;
                }
                if !has_anchor {
                    continue;
                }
                let sub = f.induced(&comp).expect("component vertices are in range");
                radius = radius.max(sub.diameter().expect("component is connected"));
                if !(comp.contains(&a) && comp.contains(&b)) {
                    both_ends = false;
                }
            }
        }
        Some(Locality { radius, both_ends })
    }
}

fn frontier_step(g: &Graph, p: &Pattern, prev: &[Edge], loc: &Locality) -> Vec<Edge> {
    let n = g.n();
    let sources: VertexSet = prev.iter().flat_map(|&(x, y)| [x, y]).collect();
    let near = g.ball(&sources, loc.radius);
    let mut pairs = Vec::new();
    for u in near.iter() {
        let mut partners = VertexSet::prefix(n);
        partners.difference_with(g.neighbors(u));
        partners.remove(u);
        if loc.both_ends {
            partners.intersect_with(&near);
        }
        // Pairs with both ends near are visited from the smaller end only.
        pairs.extend(partners.iter().filter(|&v| !(near.contains(v) && v < u)).map(|v| (u.min(v), u.max(v))));
    }
    pairs.sort_unstable();
    p.completing_pairs(&Host::new(g), &pairs)
}

/// Whether the process started on `h` itself ends at the complete graph.
pub fn is_self_percolating(h: &Graph) -> Result<bool> {
    let p = Pattern::compile(h)?;
    let t = run(h, &p, default_max_rounds(h.n()))?;
    Ok(t.final_graph.is_complete())
}
