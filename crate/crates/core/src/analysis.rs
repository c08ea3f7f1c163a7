//! Connected components and the statistics derived from them.
//!
//! Empty and single-vertex graphs count as connected, so connectivity
//! probabilities stay defined at every deletion level.

use serde::{Deserialize, Serialize};

use crate::deletion::ResidualGraph;
use crate::graph::{AnyGraph, BaselineGraph, Graph, KOutGraph, NodeId};

/// Vertex set `0..vertex_count()` with local-index adjacency.
pub trait Topology {
    fn vertex_count(&self) -> usize;

    fn for_each_neighbor(&self, v: usize, f: impl FnMut(usize));
}

macro_rules! topology_via_graph {
    ($($t:ty),*) => {$(
        impl Topology for $t {
            fn vertex_count(&self) -> usize {
                self.node_count()
            }

            fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
                for u in self.neighbors(NodeId::from_index(v)) {
                    f(u.index());
                }
            }
        }
    )*};
}

topology_via_graph!(KOutGraph, BaselineGraph, AnyGraph);

impl Topology for ResidualGraph {
    fn vertex_count(&self) -> usize {
        self.survivor_count()
    }

    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
        for &u in self.neighbors_at(v) {
            f(self.position(u).expect("residual neighbors are survivors"));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub survivor_count: usize,
    pub component_count: usize,
    /// Descending.
    pub component_sizes: Vec<usize>,
    pub largest: usize,
    pub outside_giant: usize,
    pub connected: bool,
}

impl ComponentSummary {
    pub fn from_sizes(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let survivor_count = sizes.iter().sum();
        let largest = sizes.first().copied().unwrap_or(0);
        ComponentSummary {
            survivor_count,
            component_count: sizes.len(),
            largest,
            outside_giant: survivor_count - largest,
            connected: sizes.len() <= 1,
            component_sizes: sizes,
        }
    }
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Returns true when `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }

    /// Sizes of all sets, unordered.
    pub fn sizes(&mut self) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&i| self.parent[i] as usize == i)
            .map(|i| self.size[i] as usize)
            .collect()
    }
}

/// Exact component decomposition (disjoint-set forest).
pub fn components<T: Topology + ?Sized>(graph: &T) -> ComponentSummary {
    let n = graph.vertex_count();
    let mut dsu = DisjointSets::new(n);
    for v in 0..n {
        graph.for_each_neighbor(v, |u| {
            if u > v {
                dsu.union(v, u);
            }
        });
    }
    ComponentSummary::from_sizes(dsu.sizes())
}

/// Same decomposition computed by breadth-first traversal.
pub fn components_by_traversal<T: Topology + ?Sized>(graph: &T) -> ComponentSummary {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    let mut sizes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            graph.for_each_neighbor(v, |u| {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            });
        }
        sizes.push(size);
    }
    ComponentSummary::from_sizes(sizes)
}

pub fn is_connected<T: Topology + ?Sized>(graph: &T) -> bool {
    components(graph).connected
}
