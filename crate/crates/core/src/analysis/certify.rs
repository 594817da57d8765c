use serde_json::{json, Value};

use crate::error::{arg, Error, Result};
use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::process::{is_self_percolating, Edge, Trajectory};

/// Where a simulation check first failed. Round 0 means the inner start is not
/// the induced subgraph of the outer start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub round: usize,
    /// First offending edge in outer coordinates, if the failure is an edge.
    pub edge: Option<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationCertificate {
    pub ok: bool,
    pub first_violation: Option<Violation>,
    pub tau_inner: usize,
    pub tau_outer: usize,
}

impl SimulationCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok,
            "first_violation": self.first_violation.as_ref().map(|v| json!({
                "round": v.round,
                "edge": v.edge.map(|(a, b)| [a, b]),
            })),
            "tau_inner": self.tau_inner,
            "tau_outer": self.tau_outer,
        })
    }
}

/// Checks that `outer` simulates `inner` on `inner_vertex_set`: the inner start
/// is the induced subgraph on that set (its `i`-th smallest member playing
/// inner vertex `i`), and every round adds exactly the same edges.
pub fn verify_simulation(
    outer: &Trajectory,
    inner: &Trajectory,
    inner_vertex_set: &[usize],
) -> Result<SimulationCertificate> {
    if outer.truncated || inner.truncated {
        return Err(Error::Refused("cannot certify a truncated trajectory".into()));
    }
    let mut set = inner_vertex_set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != inner_vertex_set.len() {
        return arg("inner vertex set has repeated vertices");
    }
    if set.len() != inner.start.n() {
        return arg(format!(
            "inner vertex set has {} vertices but the inner start has {}",
            set.len(),
            inner.start.n()
        ));
    }
    let mut cert = SimulationCertificate {
        ok: true,
        first_violation: None,
        tau_inner: inner.tau,
        tau_outer: outer.tau,
    };
    if outer.start.induced(&set)? != inner.start {
        cert.ok = false;
        cert.first_violation = Some(Violation { round: 0, edge: None });
        return Ok(cert);
    }
    let empty = Vec::new();
    for i in 0..outer.tau.max(inner.tau) {
        let out_batch = outer.rounds.get(i).unwrap_or(&empty);
        let mut mapped: Vec<Edge> = inner
            .rounds
            .get(i)
            .unwrap_or(&empty)
            .iter()
            .map(|&(a, b)| (set[a], set[b]))
            .collect();
        mapped.sort_unstable();
        if *out_batch != mapped {
            let edge = out_batch
                .iter()
                .filter(|e| mapped.binary_search(e).is_err())
                .chain(mapped.iter().filter(|e| out_batch.binary_search(e).is_err()))
                .min()
                .copied();
            cert.ok = false;
            cert.first_violation = Some(Violation { round: i + 1, edge });
            return Ok(cert);
        }
    }
    assert_eq!(cert.tau_inner, cert.tau_outer, "matching rounds force equal running times");
    Ok(cert)
}

/// Vertex sets of copies `H_1, ..., H_tau`, `H_i` completed at time `i` by
/// `completing_edges[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopySequence {
    pub sets: Vec<Vec<usize>>,
    pub completing_edges: Vec<Edge>,
}

impl CopySequence {
    /// Smallest `|V(H_i) ∩ V(H_{i+1})|`, `None` for fewer than two copies.
    pub fn min_overlap(&self) -> Option<usize> {
        self.sets
            .windows(2)
            .map(|w| w[0].iter().filter(|v| w[1].binary_search(v).is_ok()).count())
            .min()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sets": self.sets,
            "completing_edges": self.completing_edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }
}

/// Builds the copy sequence backwards: `H_tau` is completed by the least edge
/// of the last round; given `H_{i+1}` completed by `e`, the least other edge of
/// `H_{i+1}` added in round `i` completes `H_i`.
pub fn extract_copy_sequence(traj: &Trajectory, p: &Pattern) -> Result<CopySequence> {
    if traj.truncated {
        return Err(Error::Refused("cannot extract copies from a truncated trajectory".into()));
    }
    if traj.pattern_graph != *p.graph() {
        return arg("trajectory was produced by a different pattern");
    }
    let tau = traj.tau;
    let mut sets = vec![Vec::new(); tau];
    let mut completing = vec![(0, 0); tau];
    if tau == 0 {
        return Ok(CopySequence {
            sets,
            completing_edges: completing,
        });
    }
    let mut e = traj.rounds[tau - 1][0];
    for i in (1..=tau).rev() {
        let before = traj.graph_at(i - 1);
        let emb = p
            .completing_embedding(&before, e.0, e.1)?
            .ok_or_else(|| Error::Argument(format!("edge {e:?} of round {i} completes no copy")))?;
        sets[i - 1] = emb.vertex_set();
        completing[i - 1] = e;
        if i > 1 {
            let prev_round = &traj.rounds[i - 2];
            e = emb
                .image_edges(p.graph())
                .into_iter()
                .filter(|&f| f != e && prev_round.binary_search(&f).is_ok())
                .min()
                .ok_or_else(|| Error::Argument(format!("copy completed at round {i} uses no edge of round {}", i - 1)))?;
        }
    }
    Ok(CopySequence {
        sets,
        completing_edges: completing,
    })
}

/// An edge `e` with `kappa(h - e) <= 2`, provided the `h`-process on `h`
/// percolates; the lexicographically first such edge.
pub fn girth_theorem_applicable(h: &Graph) -> Result<Option<Edge>> {
    if !is_self_percolating(h)? {
        return Ok(None);
    }
    for (a, b) in h.edges() {
        if h.without_edge(a, b).vertex_connectivity()? <= 2 {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteAudit {
    pub ok: bool,
    /// First `i` with `G_i` not bipartite.
    pub first_failure: Option<usize>,
    pub rounds_checked: usize,
}

impl BipartiteAudit {
    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok,
            "first_failure": self.first_failure,
            "rounds_checked": self.rounds_checked,
        })
    }
}

/// Checks that every graph `G_0, ..., G_tau` of the trajectory is bipartite.
pub fn bipartite_rounds(traj: &Trajectory) -> BipartiteAudit {
    let mut g = traj.start.clone();
    for i in 0..=traj.tau {
        if i > 0 {
            for &(a, b) in &traj.rounds[i - 1] {
                g.add_edge(a, b);
            }
        }
        if g.is_bipartite().is_none() {
            return BipartiteAudit {
                ok: false,
                first_failure: Some(i),
                rounds_checked: i + 1,
            };
        }
    }
    BipartiteAudit {
        ok: true,
        first_failure: None,
        rounds_checked: traj.tau + 1,
    }
}
