//! Independent correctness references: exhaustive simple-path enumeration
//! and Yen's algorithm. Neither shares code with the solver beyond the
//! graph type; disagreement between the two fails the build.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use thiserror::Error;

use crate::graph::{path_nodes, EdgeId, Graph, NodeId};
use crate::marks::NodeMarks;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("more than {0} simple paths")]
    LimitExceeded(usize),
    #[error("invalid endpoints (source {0}, target {1})")]
    BadEndpoints(NodeId, NodeId),
}

/// Simple s-t paths with lengths, sorted by length.
#[derive(Debug, Clone, PartialEq)]
pub struct PathList {
    pub paths: Vec<(Vec<EdgeId>, f64)>,
}

impl PathList {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.paths.iter().map(|(_, len)| *len).collect()
    }
}

/// Every simple s-t path exactly once, sorted by length with ties broken by
/// lexicographic edge ids. Backtracking search; aborts once more than
/// `limit` paths are found. Intended for small instances.
pub fn enumerate_all_simple_paths(
    graph: &Graph,
    source: NodeId,
    target: NodeId,
    limit: usize,
) -> Result<PathList, OracleError> {
    let n = graph.node_count();
    if source as usize >= n || target as usize >= n || source == target {
        return Err(OracleError::BadEndpoints(source, target));
    }
    let mut paths: Vec<(Vec<EdgeId>, f64)> = Vec::new();
    let mut visited = vec![false; n];
    let mut stack: Vec<EdgeId> = Vec::new();

    fn go(
        graph: &Graph,
        at: NodeId,
        target: NodeId,
        len: f64,
        visited: &mut [bool],
        stack: &mut Vec<EdgeId>,
        paths: &mut Vec<(Vec<EdgeId>, f64)>,
        limit: usize,
    ) -> Result<(), OracleError> {
        if at == target {
            if paths.len() == limit {
                return Err(OracleError::LimitExceeded(limit));
            }
            paths.push((stack.clone(), len));
            return Ok(());
        }
        visited[at as usize] = true;
        for &e in graph.out_edges(at) {
            let next = graph.head(e);
            if visited[next as usize] {
                continue;
            }
            stack.push(e);
            let r = go(graph, next, target, len + graph.weight(e), visited, stack, paths, limit);
            stack.pop();
            r?;
        }
        visited[at as usize] = false;
        Ok(())
    }

    go(graph, source, target, 0.0, &mut visited, &mut stack, &mut paths, limit)?;
    paths.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(PathList { paths })
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct YenStats {
    /// Single-pair shortest-path computations.
    pub dijkstra_calls: u64,
    /// Nodes whose label was made permanent, summed over all computations.
    pub polls: u64,
    /// Detour candidates pushed to the candidate heap.
    pub pushed: u64,
    /// Candidates popped from the candidate heap.
    pub extracted: u64,
}

pub fn yen(graph: &Graph, source: NodeId, target: NodeId, k: usize) -> PathList {
    yen_with_stats(graph, source, target, k).0
}

/// Classic replacement-path enumeration: for each accepted path, run one
/// spur computation per path position with the prefix nodes removed and the
/// continuation edges of earlier accepted paths banned. Spur searches are
/// single-pair Dijkstra runs that stop as soon as the target's label is made
/// permanent.
pub fn yen_with_stats(
    graph: &Graph,
    source: NodeId,
    target: NodeId,
    k: usize,
) -> (PathList, YenStats) {
    let mut stats = YenStats::default();
    let empty = PathList { paths: Vec::new() };
    let n = graph.node_count();
    if source as usize >= n || target as usize >= n || source == target || k == 0 {
        return (empty, stats);
    }

    let mut scratch = SpurScratch::new(n);
    let mut forbidden = NodeMarks::new(n);
    forbidden.clear();

    let Some(first) = spur_dijkstra(graph, source, target, &forbidden, None, &mut scratch, &mut stats)
    else {
        return (empty, stats);
    };

    let mut trie = PrefixTrie::new();
    let mut accepted: Vec<(Vec<EdgeId>, f64)> = Vec::new();
    let mut seen: HashSet<Vec<EdgeId>> = HashSet::new();
    let mut heap: BinaryHeap<Reverse<CandPath>> = BinaryHeap::new();

    trie.insert(&first.0);
    accepted.push(first);

    while accepted.len() < k {
        let (last_edges, _) = accepted.last().expect("nonempty").clone();
        let last_nodes = path_nodes(graph, source, &last_edges);

        forbidden.clear();
        let mut trie_node = 0u32;
        let mut root_cost = 0.0;
        for (i, &path_edge) in last_edges.iter().enumerate() {
            let spur_node = last_nodes[i];
            let banned = trie.branches(trie_node);
            if let Some((spur_edges, spur_cost)) = spur_dijkstra(
                graph,
                spur_node,
                target,
                &forbidden,
                Some(banned),
                &mut scratch,
                &mut stats,
            ) {
                let mut edges = last_edges[..i].to_vec();
                edges.extend_from_slice(&spur_edges);
                if !seen.contains(&edges) {
                    seen.insert(edges.clone());
                    heap.push(Reverse(CandPath {
                        length: root_cost + spur_cost,
                        edges,
                    }));
                    stats.pushed += 1;
                }
            }
            forbidden.mark(spur_node);
            root_cost += graph.weight(path_edge);
            trie_node = trie.step(trie_node, path_edge).expect("accepted path is in the trie");
        }

        let Some(Reverse(cand)) = heap.pop() else {
            break;
        };
        stats.extracted += 1;
        trie.insert(&cand.edges);
        accepted.push((cand.edges, cand.length));
    }

    (PathList { paths: accepted }, stats)
}

#[derive(Debug, PartialEq)]
struct CandPath {
    length: f64,
    edges: Vec<EdgeId>,
}

impl Eq for CandPath {}
impl Ord for CandPath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.length
            .total_cmp(&other.length)
            .then_with(|| self.edges.cmp(&other.edges))
    }
}
impl PartialOrd for CandPath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Prefix tree over accepted paths' edge sequences. The children of the node
/// for a prefix are exactly the continuation edges that a spur search from
/// that prefix must avoid.
struct PrefixTrie {
    children: Vec<HashMap<EdgeId, u32>>,
}

impl PrefixTrie {
    fn new() -> Self {
        PrefixTrie {
            children: vec![HashMap::new()],
        }
    }

    fn insert(&mut self, edges: &[EdgeId]) {
        let mut node = 0u32;
        for &e in edges {
            node = match self.children[node as usize].get(&e) {
                Some(&next) => next,
                None => {
                    let next = self.children.len() as u32;
                    self.children.push(HashMap::new());
                    self.children[node as usize].insert(e, next);
                    next
                }
            };
        }
    }

    fn step(&self, node: u32, e: EdgeId) -> Option<u32> {
        self.children[node as usize].get(&e).copied()
    }

    fn branches(&self, node: u32) -> &HashMap<EdgeId, u32> {
        &self.children[node as usize]
    }
}

/// Scratch for repeated single-pair searches; cleared by epoch.
struct SpurScratch {
    stamp: Vec<u32>,
    epoch: u32,
    dist: Vec<f64>,
    prev: Vec<EdgeId>,
    settled: NodeMarks,
    heap: BinaryHeap<Reverse<(u64, NodeId)>>,
}

impl SpurScratch {
    fn new(n: usize) -> Self {
        SpurScratch {
            stamp: vec![0; n],
            epoch: 0,
            dist: vec![f64::INFINITY; n],
            prev: vec![EdgeId::MAX; n],
            settled: NodeMarks::new(n),
            heap: BinaryHeap::new(),
        }
    }

    fn begin(&mut self) {
        self.epoch += 1;
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.settled.clear();
        self.heap.clear();
    }

    fn dist(&self, v: NodeId) -> f64 {
        if self.stamp[v as usize] == self.epoch {
            self.dist[v as usize]
        } else {
            f64::INFINITY
        }
    }

    fn set(&mut self, v: NodeId, d: f64, e: EdgeId) {
        self.stamp[v as usize] = self.epoch;
        self.dist[v as usize] = d;
        self.prev[v as usize] = e;
    }
}

/// Forward single-pair Dijkstra stopping when `to` is settled. Nodes marked
/// in `forbidden` and edges in `banned` are skipped.
fn spur_dijkstra(
    graph: &Graph,
    from: NodeId,
    to: NodeId,
    forbidden: &NodeMarks,
    banned: Option<&HashMap<EdgeId, u32>>,
    scratch: &mut SpurScratch,
    stats: &mut YenStats,
) -> Option<(Vec<EdgeId>, f64)> {
    stats.dijkstra_calls += 1;
    scratch.begin();
    scratch.set(from, 0.0, EdgeId::MAX);
    scratch.heap.push(Reverse((0.0f64.to_bits(), from)));

    let mut found = false;
    while let Some(Reverse((bits, v))) = scratch.heap.pop() {
        if scratch.settled.is_marked(v) {
            continue;
        }
        scratch.settled.mark(v);
        stats.polls += 1;
        if v == to {
            found = true;
            break;
        }
        let d = f64::from_bits(bits);
        for &e in graph.out_edges(v) {
            if banned.is_some_and(|b| b.contains_key(&e)) {
                continue;
            }
            let next = graph.head(e);
            if forbidden.is_marked(next) || scratch.settled.is_marked(next) {
                continue;
            }
            let cand = d + graph.weight(e);
            if cand < scratch.dist(next) {
                scratch.set(next, cand, e);
                scratch.heap.push(Reverse((cand.to_bits(), next)));
            }
        }
    }
    if !found {
        return None;
    }

    let mut edges = Vec::new();
    let mut at = to;
    while at != from {
        let e = scratch.prev[at as usize];
        edges.push(e);
        at = graph.tail(e);
    }
    edges.reverse();
    Some((edges, scratch.dist(to)))
}
