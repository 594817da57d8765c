use rayon::prelude::*;
use serde_json::{json, Value};

use super::enumerate;
use crate::error::{arg, Error, Result};
use crate::graph::{canonical_form, graph6, Graph};
use crate::pattern::Pattern;
use crate::process::{default_max_rounds, run};

/// Largest order the built-in enumerator accepts.
pub const ENUMERATION_LIMIT: usize = 7;
/// Number of extremal witnesses kept by a search.
pub const MAX_WITNESSES: usize = 10;

/// Where the starting graphs of a search come from.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    /// One graph per isomorphism class, `n <= ENUMERATION_LIMIT`.
    Enumerate,
    /// Caller-supplied graphs, each on exactly `n` vertices.
    Graphs(&'a [Graph]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub max_tau: usize,
    /// Number of starting graphs examined.
    pub class_count: usize,
    /// Canonically labelled starts attaining `max_tau`, least canonical forms first.
    pub witnesses: Vec<Graph>,
}

impl SearchReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "max_tau": self.max_tau,
            "class_count": self.class_count,
            "witnesses": self.witnesses.iter().map(graph6::encode).collect::<Vec<_>>(),
        })
    }
}

/// Maximum running time of the `h`-process over the supplied starting graphs.
pub fn exhaustive_max_running_time(h: &Graph, n: usize, source: Source) -> Result<SearchReport> {
    let p = Pattern::compile(h)?;
    let owned;
    let starts: &[Graph] = match source {
        Source::Enumerate => {
            if n > ENUMERATION_LIMIT {
                return Err(Error::Refused(format!(
                    "built-in enumeration is limited to n <= {ENUMERATION_LIMIT}; supply a graph6 stream for n = {n}"
                )));
            }
            owned = enumerate::graphs(n);
            &owned
        }
        Source::Graphs(gs) => {
            if let Some((i, g)) = gs.iter().enumerate().find(|(_, g)| g.n() != n) {
                return arg(format!("stream graph {} has {} vertices, expected {n}", i + 1, g.n()));
            }
            gs
        }
    };
    let limit = default_max_rounds(n);
    let taus: Vec<usize> = starts
        .par_iter()
        .map(|g| run(g, &p, limit).map(|t| t.tau))
        .collect::<Result<_>>()?;
    let max_tau = taus.iter().copied().max().unwrap_or(0);
    let mut best: Vec<(Vec<u8>, Graph)> = starts
        .iter()
        .zip(&taus)
        .filter(|(_, &t)| t == max_tau)
        .map(|(g, _)| {
            let cf = canonical_form(g);
            let c = cf.graph(g);
            (cf.bytes, c)
        })
        .collect();
    best.sort_by(|a, b| a.0.cmp(&b.0));
    best.dedup_by(|a, b| a.0 == b.0);
    best.truncate(MAX_WITNESSES);
    Ok(SearchReport {
        n,
        max_tau,
        class_count: starts.len(),
        witnesses: best.into_iter().map(|(_, g)| g).collect(),
    })
}
