use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Result;
use hboot::analysis::{
    bipartite_rounds, centre_root, exhaustive_max_running_time, girth_theorem_applicable, tree_bound, tree_params,
    verify_simulation, Source,
};
use hboot::constructions::{self as cons, GadgetLayout, Layered};
use hboot::process::{default_max_rounds, is_self_percolating, run as run_process, run_frontier, step};
use hboot::{graph6, Graph, Pattern, Trajectory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::io::{self, read_graph, read_graphs, read_json, write_json};
use crate::{Check, ConstructArgs, Family, Outcome, RunArgs, SearchArgs, SweepArgs, Usage};

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Failed
    }
}

pub fn run(a: &RunArgs) -> Result<Outcome> {
    let h = read_graph(&a.pattern)?;
    let g = read_graph(&a.start)?;
    let p = Pattern::compile(&h)?;
    let limit = a.max_rounds.unwrap_or_else(|| default_max_rounds(g.n()));
    let t = if a.frontier {
        run_frontier(&g, &p, limit)?
    } else {
        run_process(&g, &p, limit)?
    };
    write_json(&t.to_json(), a.out.as_deref())?;
    Ok(if t.truncated { Outcome::Truncated } else { Outcome::Pass })
}

pub fn search(a: &SearchArgs) -> Result<Outcome> {
    let h = read_graph(&a.pattern)?;
    let report = match (&a.stream, a.n) {
        (Some(path), n) => {
            let graphs = read_graphs(path)?;
            let Some(n) = n.or_else(|| graphs.first().map(Graph::n)) else {
                return usage(format!("{} holds no graphs; pass --n", path.display()));
            };
            exhaustive_max_running_time(&h, n, Source::Graphs(&graphs))?
        }
        (None, Some(n)) => exhaustive_max_running_time(&h, n, Source::Enumerate)?,
        (None, None) => return usage("search needs --n or --stream"),
    };
    write_json(&report.to_json(), a.out.as_deref())?;
    Ok(Outcome::Pass)
}

fn read_trajectory(path: &Path) -> Result<Trajectory> {
    let value = read_json(path)?;
    Trajectory::from_json(&value).map_err(|e| io::input_error(e, format!("{}", path.display())))
}

pub fn verify(check: &Check) -> Result<Outcome> {
    match check {
        Check::Stability { pattern, graph, out } => {
            let h = read_graph(pattern)?;
            let g = read_graph(graph)?;
            let added = step(&g, &Pattern::compile(&h)?);
            let cert = json!({
                "check": "stability",
                "stable": added.is_empty(),
                "completing_pairs": added.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
            });
            write_json(&cert, out.as_deref())?;
            Ok(verdict(added.is_empty()))
        }
        Check::SelfPercolation { graph, out } => {
            let h = read_graph(graph)?;
            let ok = is_self_percolating(&h)?;
            write_json(&json!({"check": "self-percolation", "self_percolating": ok}), out.as_deref())?;
            Ok(verdict(ok))
        }
        Check::Simulation {
            outer,
            inner,
            subset,
            group,
            out,
        } => {
            let outer = read_trajectory(outer)?;
            let inner = read_trajectory(inner)?;
            let layout = GadgetLayout::from_json(&read_json(subset)?)
                .map_err(|e| io::input_error(e, format!("{}", subset.display())))?;
            let Some(set) = layout.group(group) else {
                return usage(format!("{} has no group \"{group}\"", subset.display()));
            };
            let cert = verify_simulation(&outer, &inner, set)?;
            let mut body = cert.to_json();
            body["check"] = "simulation".into();
            write_json(&body, out.as_deref())?;
            Ok(verdict(cert.ok))
        }
        Check::TreeBound {
            graph,
            samples,
            seed,
            out,
        } => tree_bound_check(graph, *samples, *seed, out.as_deref()),
        Check::GirthApplicable { graph, out } => {
            let h = read_graph(graph)?;
            let witness = girth_theorem_applicable(&h)?;
            let cert = json!({
                "check": "girth-applicable",
                "applicable": witness.is_some(),
                "witness": witness.map(|(a, b)| [a, b]),
            });
            write_json(&cert, out.as_deref())?;
            Ok(verdict(witness.is_some()))
        }
        Check::BipartiteRounds { trajectory, out } => {
            let t = read_trajectory(trajectory)?;
            let audit = bipartite_rounds(&t);
            let mut body = audit.to_json();
            body["check"] = "bipartite-rounds".into();
            write_json(&body, out.as_deref())?;
            Ok(verdict(audit.ok))
        }
    }
}

/// Seeded `G(n, p)` starts; `p` is fixed or drawn per sample from `[0.05, 0.5)`.
fn random_starts(n: usize, samples: usize, seed: u64, density: Option<f64>) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let p = density.unwrap_or_else(|| rng.gen_range(0.05..0.5));
            let mut g = Graph::empty(n);
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
        .collect()
}

/// Running times on the starts, computed in parallel, reported in input order.
fn running_times(starts: &[Graph], p: &Pattern, limit: Option<usize>) -> Result<Vec<Trajectory>> {
    let runs: hboot::Result<Vec<Trajectory>> = starts
        .par_iter()
        .map(|g| run_process(g, p, limit.unwrap_or_else(|| default_max_rounds(g.n()))))
        .collect();
    Ok(runs?)
}

fn tree_bound_check(graph: &Path, samples: usize, seed: u64, out: Option<&Path>) -> Result<Outcome> {
    let tree = read_graph(graph)?;
    let t = tree.n();
    if t < 2 || tree.edge_count() + 1 != t || !tree.is_connected() {
        return usage(format!("{} is not a tree with at least two vertices", graph.display()));
    }
    let bound = tree_bound(t);
    let is_star = tree.max_degree() + 1 == t;
    let params = match centre_root(&tree) {
        Ok(z) => Some(tree_params(&tree, z)?),
        Err(_) => None,
    };
    let starts = random_starts(2 * t, samples, seed, None);
    let trajectories = running_times(&starts, &Pattern::compile(&tree)?, None)?;
    let taus: Vec<usize> = trajectories.iter().map(|r| r.tau).collect();
    let max_tau = taus.iter().copied().max().unwrap_or(0);
    let rooted_ok = is_star || params.as_ref().is_none_or(|p| max_tau <= p.rooted_bound());
    let ok = max_tau <= bound && rooted_ok && trajectories.iter().all(|r| !r.truncated);
    let cert = json!({
        "check": "tree-bound",
        "seed": seed,
        "t": t,
        "n": 2 * t,
        "samples": samples,
        "bound": bound,
        "params": params.map(|p| p.to_json()),
        "max_tau": max_tau,
        "ok": ok,
    });
    write_json(&cert, out)?;
    Ok(verdict(ok))
}

pub fn sweep(a: &SweepArgs) -> Result<Outcome> {
    let h = read_graph(&a.pattern)?;
    if let Some(d) = a.density {
        if !(0.0..=1.0).contains(&d) {
            return usage(format!("density {d} is not a probability"));
        }
    }
    let p = Pattern::compile(&h)?;
    let starts = random_starts(a.n, a.samples, a.seed, a.density);
    let trajectories = running_times(&starts, &p, a.max_rounds)?;
    let taus: Vec<usize> = trajectories.iter().map(|r| r.tau).collect();
    let truncated = trajectories.iter().filter(|r| r.truncated).count();
    let report = json!({
        "seed": a.seed,
        "pattern": graph6::encode(&h),
        "n": a.n,
        "samples": a.samples,
        "density": a.density,
        "taus": taus,
        "max_tau": taus.iter().copied().max().unwrap_or(0),
        "truncated": truncated,
        "percolated": trajectories.iter().filter(|r| r.final_graph.is_complete()).count(),
    });
    write_json(&report, a.out.as_deref())?;
    Ok(if truncated > 0 { Outcome::Truncated } else { Outcome::Pass })
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for item in raw.iter().filter(|s| !s.is_empty()) {
        let Some((k, v)) = item.split_once('=') else {
            return usage(format!("parameter \"{item}\" is not key=value"));
        };
        let Ok(v) = v.trim().parse::<usize>() else {
            return usage(format!("parameter {k} = \"{v}\" is not a non-negative integer"));
        };
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

struct Params {
    values: BTreeMap<String, usize>,
}

impl Params {
    fn get(&mut self, key: &str) -> Result<usize> {
        match self.values.remove(key) {
            Some(v) => Ok(v),
            None => usage(format!("missing parameter {key}")),
        }
    }

    fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            Some(k) => usage(format!("unknown parameter {k}")),
            None => Ok(()),
        }
    }
}

fn required(path: &Option<PathBuf>, flag: &str, family: Family) -> Result<Graph> {
    match path {
        Some(p) => read_graph(p),
        None => usage(format!("{family:?} needs {flag}")),
    }
}

fn layered_json(lay: &Layered) -> Value {
    json!({"apex": lay.apex, "r": lay.r, "d": lay.d, "ell": lay.ell, "layer_size": lay.layer_size()})
}

fn groups(pairs: &[(&str, Vec<usize>)]) -> Value {
    let map: BTreeMap<&str, &Vec<usize>> = pairs.iter().map(|(k, v)| (*k, v)).collect();
    serde_json::to_value(map).expect("groups serialize")
}

pub fn construct(a: &ConstructArgs) -> Result<Outcome> {
    let mut params = Params {
        values: parse_params(&a.params)?,
    };
    let family = a.family;
    let (g, layout): (Graph, Option<Value>) = match family {
        Family::StarLower => {
            let (t, n) = (params.get("t")?, params.get("n")?);
            (cons::star_lower(t, n)?, None)
        }
        Family::CliquePendant => (cons::clique_pendant(params.get("k")?)?, None),
        Family::GluedCliques => {
            let (g, e, e2) = cons::glued_cliques(params.get("k")?)?;
            (g, Some(groups(&[("e", vec![e.0, e.1]), ("e_prime", vec![e2.0, e2.1])])))
        }
        Family::Min2max3 => {
            let h = required(&a.pattern, "--pattern", family)?;
            let n = params.get("n")?;
            let lay = cons::min2max3_layout(&h, n)?;
            (cons::min2max3_start(&h, n)?, Some(layered_json(&lay)))
        }
        Family::Min2max3Bipartite => {
            let h = required(&a.pattern, "--pattern", family)?;
            let n = params.get("n")?;
            let lay = cons::min2max3_bipartite_layout(&h, n)?;
            (cons::min2max3_bipartite_start(&h, n)?, Some(layered_json(&lay)))
        }
        Family::ChordCycle => (cons::chord_cycle(), None),
        Family::HPrime => {
            let (g, lay) = cons::h_prime();
            (g, Some(lay.to_json()))
        }
        Family::CounterexampleH => {
            let (g, lay) = cons::counterexample_h();
            (g, Some(lay.to_json()))
        }
        Family::CounterexampleStart => {
            let base = required(&a.start, "--start", family)?;
            let (g, lay) = cons::counterexample_start(&base)?;
            (g, Some(lay.to_json()))
        }
        Family::HtGadget => {
            let (g, lay) = cons::ht_gadget(params.get("t")?)?;
            (g, Some(lay.to_json()))
        }
        Family::HtStart => {
            let t = params.get("t")?;
            let base = required(&a.start, "--start", family)?;
            let (g, lay) = cons::ht_start(t, &base)?;
            (g, Some(lay.to_json()))
        }
    };
    params.finish()?;
    if a.layout.is_some() && layout.is_none() {
        return usage(format!("{family:?} has no layout"));
    }
    io::write_text(&format!("{}\n", graph6::encode(&g)), a.out.as_deref())?;
    if let (Some(path), Some(value)) = (&a.layout, layout) {
        write_json(&value, Some(path))?;
    }
    Ok(Outcome::Pass)
}
