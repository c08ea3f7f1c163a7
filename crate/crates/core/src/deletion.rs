//! Node deletion and the residual graph on the survivors.

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Graph, NodeId};
use crate::seed::Seed;

/// How many nodes to delete.
///
/// Serialized as `{"mode": "count", "value": 100}` or
/// `{"mode": "fraction", "value": 0.5}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "lowercase")]
pub enum DeletionAmount {
    Count(usize),
    Fraction(f64),
}

impl DeletionAmount {
    /// Realized deletion count for a graph on `n` nodes. Fractions round to
    /// the nearest integer with ties to even.
    pub fn realize(self, n: usize) -> Result<usize> {
        match self {
            DeletionAmount::Count(g) if g <= n => Ok(g),
            DeletionAmount::Count(g) => Err(invalid(format!("cannot delete {g} of {n} nodes"))),
            DeletionAmount::Fraction(a) if a > 0.0 && a < 1.0 => {
                Ok(((a * n as f64).round_ties_even() as usize).min(n))
            }
            DeletionAmount::Fraction(a) => Err(invalid(format!(
                "deletion fraction must lie in (0, 1), got {a}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeletionSpec {
    pub amount: DeletionAmount,
    pub seed: Seed,
}

impl DeletionSpec {
    pub fn count(gamma: usize, seed: Seed) -> Self {
        DeletionSpec {
            amount: DeletionAmount::Count(gamma),
            seed,
        }
    }

    pub fn fraction(alpha: f64, seed: Seed) -> Self {
        DeletionSpec {
            amount: DeletionAmount::Fraction(alpha),
            seed,
        }
    }
}

/// Induced subgraph on `R = V \ D`. Survivors keep their original labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualGraph {
    parent_n: usize,
    deleted: Vec<NodeId>,
    survivors: Vec<NodeId>,
    adjacency: Vec<Vec<NodeId>>,
    /// parent index -> survivor position, `u32::MAX` for deleted nodes
    position: Vec<u32>,
    edge_count: usize,
}

const DELETED: u32 = u32::MAX;

impl ResidualGraph {
    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    pub fn gamma(&self) -> usize {
        self.deleted.len()
    }

    /// Sorted deleted labels.
    pub fn deleted(&self) -> &[NodeId] {
        &self.deleted
    }

    /// Sorted surviving labels.
    pub fn survivors(&self) -> &[NodeId] {
        &self.survivors
    }

    pub fn survivor_count(&self) -> usize {
        self.survivors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Position of `node` in [`survivors`](Self::survivors), `None` if deleted.
    pub fn position(&self, node: NodeId) -> Option<usize> {
        match self.position.get(node.index()) {
            Some(&p) if p != DELETED => Some(p as usize),
            _ => None,
        }
    }

    pub fn is_survivor(&self, node: NodeId) -> bool {
        self.position(node).is_some()
    }

    /// Sorted residual neighbors of a surviving node; empty for deleted nodes.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        match self.position(node) {
            Some(p) => &self.adjacency[p],
            None => &[],
        }
    }

    /// Neighbors of the survivor at position `pos`.
    pub fn neighbors_at(&self, pos: usize) -> &[NodeId] {
        &self.adjacency[pos]
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }
}

/// Deletes a uniformly random `gamma`-subset of the nodes, drawn from the
/// spec's own seed (independent of the graph's randomness).
pub fn delete_uniform<G: Graph + ?Sized>(graph: &G, spec: &DeletionSpec) -> Result<ResidualGraph> {
    let n = graph.node_count();
    let gamma = spec.amount.realize(n)?;
    let mut rng = spec.seed.rng();
    let mut mask = vec![false; n];
    for i in index::sample(&mut rng, n, gamma) {
        mask[i] = true;
    }
    Ok(induce(graph, mask))
}

/// Deletes exactly `nodes` (duplicates are ignored).
pub fn delete_explicit<G: Graph + ?Sized>(
    graph: &G,
    nodes: impl IntoIterator<Item = NodeId>,
) -> Result<ResidualGraph> {
    let n = graph.node_count();
    let mut mask = vec![false; n];
    for v in nodes {
        if v.index() >= n {
            return Err(invalid(format!("node {v} is outside 1..={n}")));
        }
        mask[v.index()] = true;
    }
    Ok(induce(graph, mask))
}

fn induce<G: Graph + ?Sized>(graph: &G, deleted_mask: Vec<bool>) -> ResidualGraph {
    let n = graph.node_count();
    let mut position = vec![DELETED; n];
    let mut survivors = Vec::new();
    let mut deleted = Vec::new();
    for (i, &gone) in deleted_mask.iter().enumerate() {
        if gone {
            deleted.push(NodeId::from_index(i));
        } else {
            position[i] = survivors.len() as u32;
            survivors.push(NodeId::from_index(i));
        }
    }
    let mut twice = 0;
    let adjacency: Vec<Vec<NodeId>> = survivors
        .iter()
        .map(|&v| {
            let kept: Vec<NodeId> = graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|u| !deleted_mask[u.index()])
                .collect();
            twice += kept.len();
            kept
        })
        .collect();
    ResidualGraph {
        parent_n: n,
        deleted,
        survivors,
        adjacency,
        position,
        edge_count: twice / 2,
    }
}
