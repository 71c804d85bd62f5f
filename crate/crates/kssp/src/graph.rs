//! Immutable weighted directed multigraph in forward and reverse star
//! representation.
//!
//! Edges are identified by their dense integer id, never by their endpoint
//! pair: parallel edges are distinct objects and self-loops are allowed.

use thiserror::Error;

pub type NodeId = u32;
pub type EdgeId = u32;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("edge {edge} endpoint {node} out of range (node count {node_count})")]
    EndpointOutOfRange {
        edge: usize,
        node: u64,
        node_count: usize,
    },
    #[error("edge {edge} has invalid weight {weight} (must be finite and >= 0)")]
    InvalidWeight { edge: usize, weight: f64 },
}

/// A single directed edge. The id of an edge is its index in `Graph::edges`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRecord {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: f64,
}

/// Immutable directed multigraph with adjacency indexes in both directions.
///
/// Construction assigns edge ids in input order. The graph is safe to share
/// across threads once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<EdgeRecord>,
    // CSR layout: out_edges(v) = forward_edges[forward_start[v]..forward_start[v+1]]
    forward_start: Vec<u32>,
    forward_edges: Vec<EdgeId>,
    reverse_start: Vec<u32>,
    reverse_edges: Vec<EdgeId>,
}

impl Graph {
    /// Build a graph from `(tail, head, weight)` triples. Edge ids follow the
    /// input order.
    pub fn from_edges(
        node_count: usize,
        edge_list: &[(NodeId, NodeId, f64)],
    ) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for (i, &(tail, head, weight)) in edge_list.iter().enumerate() {
            for node in [tail, head] {
                if node as usize >= node_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: i,
                        node: node as u64,
                        node_count,
                    });
                }
            }
            if !weight.is_finite() || weight < 0.0 {
                return Err(GraphError::InvalidWeight { edge: i, weight });
            }
            edges.push(EdgeRecord { tail, head, weight });
        }

        let forward = csr_index(node_count, &edges, |e| e.tail);
        let reverse = csr_index(node_count, &edges, |e| e.head);
        Ok(Graph {
            node_count,
            edges,
            forward_start: forward.0,
            forward_edges: forward.1,
            reverse_start: reverse.0,
            reverse_edges: reverse.1,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn tail(&self, e: EdgeId) -> NodeId {
        self.edges[e as usize].tail
    }

    pub fn head(&self, e: EdgeId) -> NodeId {
        self.edges[e as usize].head
    }

    pub fn weight(&self, e: EdgeId) -> f64 {
        self.edges[e as usize].weight
    }

    /// Ids of edges leaving `v`, in edge-id order.
    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        let v = v as usize;
        &self.forward_edges[self.forward_start[v] as usize..self.forward_start[v + 1] as usize]
    }

    /// Ids of edges entering `v`, in edge-id order.
    pub fn in_edges(&self, v: NodeId) -> &[EdgeId] {
        let v = v as usize;
        &self.reverse_edges[self.reverse_start[v] as usize..self.reverse_start[v + 1] as usize]
    }

    /// True iff every node reaches every other node, checked by a forward and
    /// a reverse DFS from node 0.
    pub fn is_strongly_connected(&self) -> bool {
        if self.node_count == 0 {
            return false;
        }
        let forward = self.reachable_count(0, false);
        let reverse = self.reachable_count(0, true);
        forward == self.node_count && reverse == self.node_count
    }

    fn reachable_count(&self, start: NodeId, reversed: bool) -> usize {
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![start];
        seen[start as usize] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            let edges = if reversed {
                self.in_edges(v)
            } else {
                self.out_edges(v)
            };
            for &e in edges {
                let next = if reversed { self.tail(e) } else { self.head(e) };
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count
    }
}

fn csr_index(
    node_count: usize,
    edges: &[EdgeRecord],
    key: impl Fn(&EdgeRecord) -> NodeId,
) -> (Vec<u32>, Vec<EdgeId>) {
    let mut start = vec![0u32; node_count + 1];
    for e in edges {
        start[key(e) as usize + 1] += 1;
    }
    for i in 0..node_count {
        start[i + 1] += start[i];
    }
    let mut ids = vec![0u32; edges.len()];
    let mut cursor = start.clone();
    for (id, e) in edges.iter().enumerate() {
        let slot = &mut cursor[key(e) as usize];
        ids[*slot as usize] = id as EdgeId;
        *slot += 1;
    }
    (start, ids)
}

/// Node sequence visited by a contiguous edge sequence starting at `start`.
pub fn path_nodes(graph: &Graph, start: NodeId, edges: &[EdgeId]) -> Vec<NodeId> {
    let mut nodes = Vec::with_capacity(edges.len() + 1);
    nodes.push(start);
    for &e in edges {
        debug_assert_eq!(graph.tail(e), *nodes.last().unwrap());
        nodes.push(graph.head(e));
    }
    nodes
}

/// Sum of edge weights along a path.
pub fn path_weight(graph: &Graph, edges: &[EdgeId]) -> f64 {
    edges.iter().map(|&e| graph.weight(e)).sum()
}
