//! Reversed single-target shortest-path trees over node-restricted
//! subgraphs.
//!
//! A tree stores, for every node that can reach the target within the
//! allowed subgraph, its unique outgoing tree edge and its distance to the
//! target. Nodes excluded by the forbidden set (and nodes that cannot reach
//! the target) carry neither.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, NodeId};
use crate::marks::NodeMarks;

pub type TreeId = u32;

#[derive(Debug, Error, PartialEq)]
pub enum SpTreeError {
    #[error("target node {0} is in the forbidden set")]
    ForbiddenTarget(NodeId),
    #[error("node {0} cannot reach the target in this tree")]
    Unreachable(NodeId),
}

const NO_EDGE: EdgeId = EdgeId::MAX;

#[derive(Debug, Clone)]
pub struct SpTree {
    pub id: TreeId,
    pub target: NodeId,
    /// Count of nodes extracted (settled) from the priority queue.
    pub polls: u64,
    tree_edge: Vec<EdgeId>,
    dist: Vec<f64>,
}

impl SpTree {
    pub fn in_tree(&self, v: NodeId) -> bool {
        self.dist[v as usize].is_finite()
    }

    pub fn dist(&self, v: NodeId) -> Option<f64> {
        let d = self.dist[v as usize];
        d.is_finite().then_some(d)
    }

    /// The unique tree edge leaving `v`, absent for the target and for nodes
    /// outside the tree.
    pub fn tree_edge(&self, v: NodeId) -> Option<EdgeId> {
        let e = self.tree_edge[v as usize];
        (e != NO_EDGE).then_some(e)
    }

    /// True iff the edge is not the tree edge of its tail. Only the
    /// designated tree edge id counts: a parallel edge of equal weight is a
    /// sidetrack.
    pub fn is_sidetrack(&self, graph: &Graph, e: EdgeId) -> bool {
        self.tree_edge[graph.tail(e) as usize] != e
    }

    /// Extra length incurred by leaving the tree through `e`:
    /// `weight(e) + dist(head) - dist(tail)`. Zero for tree edges, and never
    /// negative.
    pub fn sidetrack_cost(&self, graph: &Graph, e: EdgeId) -> Result<f64, SpTreeError> {
        let tail = graph.tail(e);
        let head = graph.head(e);
        let d_tail = self.dist(tail).ok_or(SpTreeError::Unreachable(tail))?;
        let d_head = self.dist(head).ok_or(SpTreeError::Unreachable(head))?;
        Ok(graph.weight(e) + d_head - d_tail)
    }

    /// Edge sequence of the unique tree path from `v` to the target.
    pub fn tree_path(&self, graph: &Graph, v: NodeId) -> Result<Vec<EdgeId>, SpTreeError> {
        if !self.in_tree(v) {
            return Err(SpTreeError::Unreachable(v));
        }
        let mut edges = Vec::new();
        let mut cur = v;
        while let Some(e) = self.tree_edge(cur) {
            edges.push(e);
            cur = graph.head(e);
        }
        debug_assert_eq!(cur, self.target);
        Ok(edges)
    }
}

/// Reusable scratch for tree computations; one per worker.
#[derive(Debug)]
pub struct DijkstraScratch {
    settled: NodeMarks,
    heap: BinaryHeap<Reverse<(DistKey, NodeId)>>,
}

impl DijkstraScratch {
    pub fn new(node_count: usize) -> Self {
        DijkstraScratch {
            settled: NodeMarks::new(node_count),
            heap: BinaryHeap::new(),
        }
    }
}

/// f64 distances ordered totally; weights are validated finite so NaN never
/// appears.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DistKey(f64);

impl Eq for DistKey {}
impl Ord for DistKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}
impl PartialOrd for DistKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `target` over the reverse adjacency, restricted to nodes
/// not marked in `forbidden`. Runs to queue exhaustion. Among equal-distance
/// relaxations the first-settled label wins.
pub fn compute_sp_tree(
    graph: &Graph,
    target: NodeId,
    forbidden: &NodeMarks,
    scratch: &mut DijkstraScratch,
    id: TreeId,
) -> Result<SpTree, SpTreeError> {
    if forbidden.is_marked(target) {
        return Err(SpTreeError::ForbiddenTarget(target));
    }
    let n = graph.node_count();
    let mut tree = SpTree {
        id,
        target,
        polls: 0,
        tree_edge: vec![NO_EDGE; n],
        dist: vec![f64::INFINITY; n],
    };

    scratch.settled.clear();
    scratch.heap.clear();
    tree.dist[target as usize] = 0.0;
    scratch.heap.push(Reverse((DistKey(0.0), target)));

    while let Some(Reverse((DistKey(d), v))) = scratch.heap.pop() {
        if scratch.settled.is_marked(v) {
            continue;
        }
        scratch.settled.mark(v);
        tree.polls += 1;
        for &e in graph.in_edges(v) {
            let u = graph.tail(e);
            if forbidden.is_marked(u) || scratch.settled.is_marked(u) {
                continue;
            }
            let candidate = d + graph.weight(e);
            if candidate < tree.dist[u as usize] {
                tree.dist[u as usize] = candidate;
                tree.tree_edge[u as usize] = e;
                scratch.heap.push(Reverse((DistKey(candidate), u)));
            }
        }
    }
    Ok(tree)
}

/// Convenience wrapper taking the forbidden set as a slice.
pub fn compute_sp_tree_excluding(
    graph: &Graph,
    target: NodeId,
    forbidden: &[NodeId],
    id: TreeId,
) -> Result<SpTree, SpTreeError> {
    let mut marks = NodeMarks::new(graph.node_count());
    for &v in forbidden {
        marks.mark(v);
    }
    let mut scratch = DijkstraScratch::new(graph.node_count());
    compute_sp_tree(graph, target, &marks, &mut scratch, id)
}

/// All trees computed during one query, indexed by `TreeId`.
#[derive(Debug, Default)]
pub struct TreeRegistry {
    trees: Vec<SpTree>,
}

impl TreeRegistry {
    pub fn new() -> Self {
        TreeRegistry::default()
    }

    pub fn next_id(&self) -> TreeId {
        self.trees.len() as TreeId
    }

    pub fn insert(&mut self, tree: SpTree) -> TreeId {
        debug_assert_eq!(tree.id, self.next_id());
        let id = tree.id;
        self.trees.push(tree);
        id
    }

    pub fn get(&self, id: TreeId) -> Option<&SpTree> {
        self.trees.get(id as usize)
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}
