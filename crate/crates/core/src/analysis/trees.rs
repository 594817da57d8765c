use serde_json::{json, Value};

use super::exhaustive::{exhaustive_max_running_time, Source, ENUMERATION_LIMIT};
use crate::error::{arg, Error, Result};
use crate::graph::Graph;

/// Largest cover size for which `mu` can be computed by enumeration.
pub const COVER_LIMIT: usize = ENUMERATION_LIMIT;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeParams {
    pub root: usize,
    /// The rooted cover `U`, sorted.
    pub cover: Vec<usize>,
    /// Maximum running time of the `T[U]`-process over graphs on `|U|` vertices.
    pub mu: usize,
    /// `min |N(u) \ U|` over `u in U`.
    pub delta: usize,
    pub height: usize,
    /// `1 + 3 ceil(height/2) + mu + delta`.
    pub i_star: usize,
    /// [`tree_bound`] for this tree's order.
    pub bound: usize,
}

impl TreeParams {
    /// Root-dependent running-time bound `i_star + 1`.
    pub fn rooted_bound(&self) -> usize {
        self.i_star + 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "root": self.root,
            "cover": self.cover,
            "mu": self.mu,
            "delta": self.delta,
            "height": self.height,
            "i_star": self.i_star,
            "rooted_bound": self.rooted_bound(),
            "bound": self.bound,
        })
    }
}

/// `floor((t^2 + 6t + 60) / 8)`, an upper bound on the running time of any
/// `t`-vertex tree pattern.
pub fn tree_bound(t: usize) -> usize {
    (t * t + 6 * t + 60) / 8
}

fn check_tree(t: &Graph) -> Result<()> {
    if t.n() == 0 || t.edge_count() + 1 != t.n() || !t.is_connected() {
        return arg("graph is not a tree");
    }
    Ok(())
}

struct Rooted {
    order: Vec<usize>,
    parent: Vec<usize>,
    depth: Vec<usize>,
}

fn root_at(t: &Graph, z: usize) -> Rooted {
    let dist = t.distances_from(z);
    let depth: Vec<usize> = dist.iter().map(|d| d.expect("tree is connected")).collect();
    let mut order: Vec<usize> = (0..t.n()).collect();
    order.sort_by_key(|&v| (depth[v], v));
    let parent = (0..t.n())
        .map(|v| {
            if v == z {
                z
            } else {
                t.neighbors(v).iter().find(|&w| depth[w] + 1 == depth[v]).unwrap()
            }
        })
        .collect();
    Rooted { order, parent, depth }
}

/// A smallest vertex cover of the tree minimizing total distance to `z`.
///
/// Computed by dynamic programming over the rooted tree with costs
/// `(|U|, sum of depths)` compared lexicographically; ties prefer leaving a
/// vertex out of `U`.
pub fn rooted_cover(t: &Graph, z: usize) -> Result<Vec<usize>> {
    check_tree(t)?;
    if z >= t.n() {
        return arg(format!("root {z} out of range"));
    }
    if t.degree(z) < 2 {
        return arg(format!("root {z} is a leaf"));
    }
    let r = root_at(t, z);
    let n = t.n();
    let add = |a: (usize, usize), b: (usize, usize)| (a.0 + b.0, a.1 + b.1);
    let mut inc = vec![(0, 0); n];
    let mut exc = vec![(0, 0); n];
    for &v in r.order.iter().rev() {
        inc[v] = add(inc[v], (1, r.depth[v]));
        if v != z {
            let p = r.parent[v];
            inc[p] = add(inc[p], inc[v].min(exc[v]));
            exc[p] = add(exc[p], inc[v]);
        }
    }
    let mut chosen = vec![false; n];
    for &v in &r.order {
        chosen[v] = if v == z || chosen[r.parent[v]] {
            inc[v] < exc[v]
        } else {
            true
        };
    }
    Ok((0..n).filter(|&v| chosen[v]).collect())
}

/// Cover, `mu`, `delta`, height and the derived thresholds for tree `t` rooted at `z`.
pub fn tree_params(t: &Graph, z: usize) -> Result<TreeParams> {
    let cover = rooted_cover(t, z)?;
    if cover.len() > COVER_LIMIT {
        return Err(Error::Refused(format!(
            "cover has {} vertices; computing mu needs |U| <= {COVER_LIMIT}",
            cover.len()
        )));
    }
    let in_cover = |v: usize| cover.binary_search(&v).is_ok();
    let sub = t.induced(&cover)?;
    let mu = if sub.edge_count() == 0 {
        0
    } else {
        exhaustive_max_running_time(&sub, cover.len(), Source::Enumerate)?.max_tau
    };
    let delta = cover
        .iter()
        .map(|&u| t.neighbors(u).iter().filter(|&w| !in_cover(w)).count())
        .min()
        .expect("cover of a tree with an edge is non-empty");
    let height = root_at(t, z).depth.into_iter().max().unwrap_or(0);
    Ok(TreeParams {
        root: z,
        mu,
        delta,
        height,
        i_star: 1 + 3 * height.div_ceil(2) + mu + delta,
        bound: tree_bound(t.n()),
        cover,
    })
}

/// A middle vertex of a longest path: its distances to the path's ends are
/// `floor(diam/2)` and `ceil(diam/2)`, so the tree's height from it is
/// `ceil(diam/2)`.
pub fn centre_root(t: &Graph) -> Result<usize> {
    check_tree(t)?;
    let far = |s: usize| {
        let d = t.distances_from(s);
        (0..t.n()).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).unwrap()
    };
    let a = far(0);
    let b = far(a);
    let da = t.distances_from(a);
    let diam = da[b].unwrap();
    if diam < 2 {
        return arg("tree has no internal vertex");
    }
    let db = t.distances_from(b);
    let half = diam / 2;
    Ok((0..t.n())
        .find(|&v| da[v] == Some(half) && db[v] == Some(diam - half))
        .expect("a longest path has a middle vertex"))
}
