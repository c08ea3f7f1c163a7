//! Random K-out graphs, Erdős–Rényi baselines and their on-disk format.
//!
//! Node labels are 1-based (`1..=n`) everywhere, including serialized files.
//! Adjacency is kept as sorted, deduplicated neighbor lists.

use std::fmt;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::seed::Seed;

/// 1-based vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(u32);

impl NodeId {
    /// Panics on `0`; labels start at 1.
    pub fn new(label: u32) -> Self {
        assert!(label >= 1, "node labels are 1-based");
        NodeId(label)
    }

    pub fn label(self) -> u32 {
        self.0
    }

    /// Zero-based position, `label - 1`.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(index: usize) -> Self {
        NodeId(index as u32 + 1)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected simple graph on labels `1..=node_count()`.
pub trait Graph {
    fn node_count(&self) -> usize;

    /// Sorted neighbor labels of `node`.
    fn neighbors(&self, node: NodeId) -> &[NodeId];

    fn edge_count(&self) -> usize;

    fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    fn degree(&self, node: NodeId) -> usize {
        self.neighbors(node).len()
    }
}

/// The `n` selection sets: node `i` picked `selections[i-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionProfile {
    n: usize,
    k: usize,
    selections: Vec<Vec<NodeId>>,
}

impl SelectionProfile {
    /// Validates that every node picks exactly `k` distinct labels in `1..=n`,
    /// none of them itself.
    pub fn new(n: usize, k: usize, selections: Vec<Vec<NodeId>>) -> Result<Self> {
        check_kout_params(n, k).map_err(|e| Error::InvalidProfile(e.to_string()))?;
        if selections.len() != n {
            return Err(Error::InvalidProfile(format!(
                "expected {n} selection sets, got {}",
                selections.len()
            )));
        }
        let mut seen = vec![usize::MAX; n];
        for (i, picks) in selections.iter().enumerate() {
            if picks.len() != k {
                return Err(Error::InvalidProfile(format!(
                    "node {} picks {} labels, expected {k}",
                    i + 1,
                    picks.len()
                )));
            }
            for &p in picks {
                let j = p.index();
                if j >= n {
                    return Err(Error::InvalidProfile(format!(
                        "node {} picks label {p} outside 1..={n}",
                        i + 1
                    )));
                }
                if j == i {
                    return Err(Error::InvalidProfile(format!(
                        "node {} picks itself",
                        i + 1
                    )));
                }
                if seen[j] == i {
                    return Err(Error::InvalidProfile(format!(
                        "node {} picks label {p} twice",
                        i + 1
                    )));
                }
                seen[j] = i;
            }
        }
        Ok(SelectionProfile { n, k, selections })
    }

    /// Convenience constructor from raw 1-based labels.
    pub fn from_labels(n: usize, k: usize, labels: Vec<Vec<u32>>) -> Result<Self> {
        let selections = labels
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|l| {
                        if l == 0 {
                            Err(Error::InvalidProfile("label 0 is not a valid node".into()))
                        } else {
                            Ok(NodeId(l))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, selections)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn selections(&self) -> &[Vec<NodeId>] {
        &self.selections
    }

    pub fn picks_of(&self, node: NodeId) -> &[NodeId] {
        &self.selections[node.index()]
    }

    pub fn to_labels(&self) -> Vec<Vec<u32>> {
        self.selections
            .iter()
            .map(|row| row.iter().map(|p| p.label()).collect())
            .collect()
    }
}

/// Undirected graph induced by a [`SelectionProfile`]: `i ~ j` iff either picked the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KOutGraph {
    profile: SelectionProfile,
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl KOutGraph {
    pub fn n(&self) -> usize {
        self.profile.n
    }

    pub fn k(&self) -> usize {
        self.profile.k
    }

    pub fn profile(&self) -> &SelectionProfile {
        &self.profile
    }

    pub fn adjacency(&self) -> &[Vec<NodeId>] {
        &self.adjacency
    }
}

impl Graph for KOutGraph {
    fn node_count(&self) -> usize {
        self.profile.n
    }

    fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node.index()]
    }

    fn edge_count(&self) -> usize {
        self.edge_count
    }
}

/// Erdős–Rényi graph `G(n, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineGraph {
    n: usize,
    p: f64,
    seed: Seed,
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl BaselineGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> Seed {
        self.seed
    }

    pub fn adjacency(&self) -> &[Vec<NodeId>] {
        &self.adjacency
    }
}

impl Graph for BaselineGraph {
    fn node_count(&self) -> usize {
        self.n
    }

    fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node.index()]
    }

    fn edge_count(&self) -> usize {
        self.edge_count
    }
}

fn check_kout_params(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!("n must be at least 2, got {n}")));
    }
    if k == 0 || k >= n {
        return Err(invalid(format!(
            "k must satisfy 1 <= k <= n-1 = {}, got {k}",
            n - 1
        )));
    }
    if n > u32::MAX as usize {
        return Err(invalid(format!("n = {n} exceeds the label range")));
    }
    Ok(())
}

/// Samples `H(n; k)`. Each node's selection set is an exactly uniform
/// `k`-subset of the other `n - 1` labels, independently across nodes, drawn
/// from one ChaCha8 stream keyed by `seed`.
pub fn sample_kout(n: usize, k: usize, seed: Seed) -> Result<KOutGraph> {
    check_kout_params(n, k)?;
    let mut rng = seed.rng();
    let selections = (0..n)
        .map(|i| sample_selection(&mut rng, n, k, i))
        .collect::<Vec<_>>();
    Ok(build_kout(SelectionProfile { n, k, selections }))
}

/// Uniform `k`-subset of `{0..n} \ {own}` returned as labels.
fn sample_selection<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize, own: usize) -> Vec<NodeId> {
    index::sample(rng, n - 1, k)
        .into_iter()
        .map(|x| NodeId::from_index(if x >= own { x + 1 } else { x }))
        .collect()
}

/// Builds the undirected graph of a profile. Mutual picks give one edge.
pub fn adjacency_from_selections(profile: SelectionProfile) -> Result<KOutGraph> {
    // Re-validate: the fields are private but a profile may come from a file.
    let profile = SelectionProfile::new(profile.n, profile.k, profile.selections)?;
    Ok(build_kout(profile))
}

fn build_kout(profile: SelectionProfile) -> KOutGraph {
    let n = profile.n;
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::with_capacity(2 * profile.k); n];
    for (i, picks) in profile.selections.iter().enumerate() {
        let from = NodeId::from_index(i);
        for &to in picks {
            adjacency[i].push(to);
            adjacency[to.index()].push(from);
        }
    }
    let mut twice_edges = 0;
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
        nbrs.dedup();
        twice_edges += nbrs.len();
    }
    KOutGraph {
        profile,
        adjacency,
        edge_count: twice_edges / 2,
    }
}

/// Samples `G(n, p)` by geometric skipping over the `C(n, 2)` vertex pairs,
/// so the cost is proportional to `n + edges` rather than `n^2`.
pub fn sample_er(n: usize, p: f64, seed: Seed) -> Result<BaselineGraph> {
    if n < 1 {
        return Err(invalid("n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("p must lie in [0, 1], got {p}")));
    }
    if n > u32::MAX as usize {
        return Err(invalid(format!("n = {n} exceeds the label range")));
    }
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut edge_count = 0;
    let mut add = |a: usize, b: usize, adjacency: &mut Vec<Vec<NodeId>>| {
        adjacency[a].push(NodeId::from_index(b));
        adjacency[b].push(NodeId::from_index(a));
        edge_count += 1;
    };

    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                add(v, w, &mut adjacency);
            }
        }
    } else if p > 0.0 {
        let mut rng = seed.rng();
        let log_q = (-p).ln_1p();
        // Batagelj & Brandes (2005): walk pairs (v, w), w < v, in row order.
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let u: f64 = rng.random();
            // 1 - u lies in (0, 1]
            let skip = ((1.0 - u).ln() / log_q).floor();
            w += 1 + if skip.is_finite() {
                skip.min(1e18) as i64
            } else {
                i64::MAX / 4
            };
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                add(v, w as usize, &mut adjacency);
            }
        }
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
    }
    Ok(BaselineGraph {
        n,
        p,
        seed,
        adjacency,
        edge_count,
    })
}

/// JSON graph file. Adjacency is never stored: K-out graphs are rebuilt from
/// their selections, Erdős–Rényi graphs are resampled from `(n, p, seed)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GraphFile {
    Kout {
        n: usize,
        k: usize,
        seed: Seed,
        selections: Vec<Vec<u32>>,
    },
    Er {
        n: usize,
        p: f64,
        seed: Seed,
    },
}

/// A graph loaded from a [`GraphFile`].
#[derive(Debug, Clone)]
pub enum AnyGraph {
    Kout(KOutGraph),
    Er(BaselineGraph),
}

impl Graph for AnyGraph {
    fn node_count(&self) -> usize {
        match self {
            AnyGraph::Kout(g) => g.node_count(),
            AnyGraph::Er(g) => g.node_count(),
        }
    }

    fn neighbors(&self, node: NodeId) -> &[NodeId] {
        match self {
            AnyGraph::Kout(g) => g.neighbors(node),
            AnyGraph::Er(g) => g.neighbors(node),
        }
    }

    fn edge_count(&self) -> usize {
        match self {
            AnyGraph::Kout(g) => g.edge_count(),
            AnyGraph::Er(g) => g.edge_count(),
        }
    }
}

impl GraphFile {
    pub fn from_kout(graph: &KOutGraph, seed: Seed) -> Self {
        GraphFile::Kout {
            n: graph.n(),
            k: graph.k(),
            seed,
            selections: graph.profile().to_labels(),
        }
    }

    pub fn from_er(graph: &BaselineGraph) -> Self {
        GraphFile::Er {
            n: graph.n,
            p: graph.p,
            seed: graph.seed,
        }
    }

    pub fn into_graph(self) -> Result<AnyGraph> {
        match self {
            GraphFile::Kout {
                n, k, selections, ..
            } => {
                let profile = SelectionProfile::from_labels(n, k, selections)?;
                Ok(AnyGraph::Kout(build_kout(profile)))
            }
            GraphFile::Er { n, p, seed } => Ok(AnyGraph::Er(sample_er(n, p, seed)?)),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
