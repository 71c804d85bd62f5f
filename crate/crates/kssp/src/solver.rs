//! The three enumeration variants.
//!
//! All variants share one loop: pop the shortest candidate; if it is simple,
//! output it and push one child per sidetrack leaving its suffix; if not,
//! repair it by recomputing a shortest-path tree in the graph minus its
//! prefix, which either yields a simple replacement or proves the prefix is
//! a dead end.
//!
//! `Basic` decides child simplicity by walking, and computes a fresh tree
//! for every repair. `SbO` adds the block partition (constant-time
//! simplicity lookups at extraction) and a tree cache keyed by prefix
//! identity, so sibling repairs share one tree computation. `SbR`
//! additionally solves an incremental series of reverse-reachability
//! instances while expanding a path, dropping non-simple children whose
//! repair is guaranteed to fail.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::candidates::{
    classify_extension, extension_is_simple_by_walk, materialize, Candidate, CandidateId,
    CandidateQueue, QueueEntry,
};
use crate::candidates::BlockPartition;
use crate::graph::{path_nodes, path_weight, EdgeId, Graph, NodeId};
use crate::marks::{NodeMap, NodeMarks};
use crate::sptree::{compute_sp_tree, DijkstraScratch, TreeId, TreeRegistry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Basic,
    SbO,
    SbR,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Basic, Variant::SbO, Variant::SbR];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::SbO => "sb-o",
            Variant::SbR => "sb-r",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(Variant::Basic),
            "sb-o" => Ok(Variant::SbO),
            "sb-r" => Ok(Variant::SbR),
            other => Err(format!("unknown variant `{other}` (expected basic, sb-o or sb-r)")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query {
    pub source: NodeId,
    pub target: NodeId,
    pub k: usize,
    pub variant: Variant,
}

/// Knobs that are not part of a query; the defaults match the algorithm as
/// described.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Bound the candidate queue by the remaining output count.
    pub bounded_queue: bool,
    /// Cross-check every block classification against the walk test
    /// (expensive; meant for the test suite).
    pub verify_classification: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            bounded_queue: true,
            verify_classification: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    /// Shortest-path tree computations (the initial tree plus repairs).
    pub dijkstra_calls: u64,
    /// Nodes settled across all tree computations.
    pub polls: u64,
    pub pushed: u64,
    pub extracted: u64,
    pub repairs_attempted: u64,
    pub repairs_discarded: u64,
    /// Non-simple children dropped by the reachability filter (SB-r only).
    pub reach_pruned: u64,
    pub wall_time: Duration,
    /// Set when the queue drained before `k` paths were found.
    pub exhausted: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("node {0} out of range (graph has {1} nodes)")]
    NodeOutOfRange(NodeId, usize),
    #[error("source and target must differ")]
    SourceEqualsTarget,
    #[error("k must be at least 1")]
    ZeroK,
}

/// One enumerated simple path.
#[derive(Debug, Clone, PartialEq)]
pub struct FoundPath {
    pub edges: Vec<EdgeId>,
    pub length: f64,
}

impl FoundPath {
    pub fn nodes(&self, graph: &Graph) -> Vec<NodeId> {
        path_nodes(graph, graph.tail(self.edges[0]), &self.edges)
    }
}

pub fn solve(graph: &Graph, query: Query) -> Result<(Vec<FoundPath>, RunStats), SolveError> {
    solve_with(graph, query, SolverConfig::default())
}

pub fn solve_with(
    graph: &Graph,
    query: Query,
    config: SolverConfig,
) -> Result<(Vec<FoundPath>, RunStats), SolveError> {
    let n = graph.node_count();
    for v in [query.source, query.target] {
        if v as usize >= n {
            return Err(SolveError::NodeOutOfRange(v, n));
        }
    }
    if query.source == query.target {
        return Err(SolveError::SourceEqualsTarget);
    }
    if query.k == 0 {
        return Err(SolveError::ZeroK);
    }

    let started = Instant::now();
    let mut state = SolverState::new(graph, query, config);
    state.run();
    let SolverState {
        outputs, mut stats, ..
    } = state;
    stats.wall_time = started.elapsed();
    Ok((outputs, stats))
}

struct SolverState<'g> {
    graph: &'g Graph,
    query: Query,
    config: SolverConfig,
    trees: TreeRegistry,
    arena: Vec<Candidate>,
    queue: CandidateQueue,
    /// Prefix identity -> tree. Siblings deviating at the same node of the
    /// same parent share a prefix by construction, so the pair (parent,
    /// deviation position) identifies the restricted graph in O(1).
    cache: HashMap<(CandidateId, u32), TreeId>,
    stats: RunStats,
    outputs: Vec<FoundPath>,
    scratch: DijkstraScratch,
    forbidden: NodeMarks,
    blocks: BlockPartition,
    walk_marks: NodeMarks,
    reach: ReachState,
    #[cfg(debug_assertions)]
    cache_hits: u64,
}

impl<'g> SolverState<'g> {
    fn new(graph: &'g Graph, query: Query, config: SolverConfig) -> Self {
        let n = graph.node_count();
        SolverState {
            graph,
            query,
            config,
            trees: TreeRegistry::new(),
            arena: Vec::new(),
            queue: CandidateQueue::new(),
            cache: HashMap::new(),
            stats: RunStats::default(),
            outputs: Vec::new(),
            scratch: DijkstraScratch::new(n),
            forbidden: NodeMarks::new(n),
            blocks: BlockPartition::new(n),
            walk_marks: NodeMarks::new(n),
            reach: ReachState::new(n),
            #[cfg(debug_assertions)]
            cache_hits: 0,
        }
    }

    fn remaining(&self) -> usize {
        if self.config.bounded_queue {
            self.query.k - self.outputs.len()
        } else {
            usize::MAX
        }
    }

    fn run(&mut self) {
        self.forbidden.clear();
        let root_tree = compute_sp_tree(
            self.graph,
            self.query.target,
            &self.forbidden,
            &mut self.scratch,
            0,
        )
        .expect("empty forbidden set");
        self.stats.dijkstra_calls += 1;
        self.stats.polls += root_tree.polls;
        let Some(root_len) = root_tree.dist(self.query.source) else {
            // target unreachable: no paths, not an error
            self.trees.insert(root_tree);
            self.stats.exhausted = true;
            return;
        };
        self.trees.insert(root_tree);

        self.push_candidate(Candidate {
            parent: None,
            last_sidetrack: None,
            tree: 0,
            length: root_len,
            deviation_node: self.query.source,
            deviation_index: 0,
            simple: true,
        });

        while let Some(entry) = self.queue.pop_min() {
            self.stats.extracted += 1;
            let cand = self.arena[entry.id as usize];
            if cand.simple {
                self.process_simple(entry.id, cand);
                if self.outputs.len() == self.query.k {
                    return;
                }
            } else {
                self.repair(entry.id, cand);
            }
        }
        self.stats.exhausted = true;
    }

    fn push_candidate(&mut self, cand: Candidate) {
        debug_assert!(self.arena.len() < u32::MAX as usize);
        let id = self.arena.len() as CandidateId;
        let entry = QueueEntry {
            length: cand.length,
            id,
            simple: cand.simple,
        };
        self.arena.push(cand);
        self.queue.push(entry, self.remaining());
        self.stats.pushed += 1;
    }

    /// Output the path and push one child per sidetrack with a tail on its
    /// suffix, reusing the tree associated with the last sidetrack.
    fn process_simple(&mut self, id: CandidateId, cand: Candidate) {
        let edges = materialize(id, &self.arena, &self.trees, self.graph)
            .expect("solver-built candidates materialize");
        let nodes = path_nodes(self.graph, self.query.source, &edges);
        self.outputs.push(FoundPath {
            edges: edges.clone(),
            length: cand.length,
        });
        if self.outputs.len() == self.query.k {
            return;
        }

        let graph = self.graph;
        let variant = self.query.variant;
        let tree = self.trees.get(cand.tree).expect("tree registry is complete");
        if variant != Variant::Basic {
            self.blocks
                .recompute(graph, tree, self.query.source, &edges)
                .expect("materialized paths are contiguous and end at the target");
        }

        let remaining = self.remaining();
        let last = nodes.len() - 1;
        let suffix_start = cand.suffix_start() as usize;
        if variant == Variant::SbR {
            self.reach.begin(&nodes);
        }

        for pos in (suffix_start..last).rev() {
            if variant == Variant::SbR {
                self.reach.step(graph, &nodes, pos);
            }
            let u = nodes[pos];
            let d_tail = tree.dist(u).expect("suffix nodes lie in the tree");
            for &e in graph.out_edges(u) {
                if tree.tree_edge(u) == Some(e) {
                    continue;
                }
                let head = graph.head(e);
                // heads with no tree distance cannot close a path; ignore
                let Some(d_head) = tree.dist(head) else {
                    continue;
                };
                let length = cand.length + (graph.weight(e) + d_head - d_tail);
                let simple = if variant == Variant::Basic {
                    extension_is_simple_by_walk(graph, tree, &nodes, pos, e, &mut self.walk_marks)
                } else {
                    let head_block = self.blocks.block_of(head).expect("head is in the tree");
                    let by_blocks = classify_extension(pos as u32, head_block);
                    if self.config.verify_classification {
                        let by_walk = extension_is_simple_by_walk(
                            graph,
                            tree,
                            &nodes,
                            pos,
                            e,
                            &mut self.walk_marks,
                        );
                        assert_eq!(
                            by_blocks, by_walk,
                            "block classification disagrees with the walk test"
                        );
                    }
                    by_blocks
                };
                if variant == Variant::SbR && !simple && !self.reach.is_reached(head) {
                    // the repair tree would not contain the head; drop now
                    self.stats.reach_pruned += 1;
                    continue;
                }

                debug_assert!(self.arena.len() < u32::MAX as usize);
                let child_id = self.arena.len() as CandidateId;
                self.arena.push(Candidate {
                    parent: Some(id),
                    last_sidetrack: Some(e),
                    tree: cand.tree,
                    length,
                    deviation_node: u,
                    deviation_index: pos as u32,
                    simple,
                });
                self.queue.push(
                    QueueEntry {
                        length,
                        id: child_id,
                        simple,
                    },
                    remaining,
                );
                self.stats.pushed += 1;
            }
        }
    }

    /// Recompute the suffix of a non-simple candidate as a shortest path in
    /// the graph minus its prefix. Pushes a simple replacement, or discards
    /// the candidate when the prefix cannot be extended.
    fn repair(&mut self, _id: CandidateId, cand: Candidate) {
        self.stats.repairs_attempted += 1;
        let parent = cand.parent.expect("the root is simple");
        debug_assert!(
            self.arena[parent as usize].simple,
            "the parent of a non-simple candidate is always simple"
        );
        let e_r = cand.last_sidetrack.expect("non-root candidate");
        let head = self.graph.head(e_r);

        let parent_edges = materialize(parent, &self.arena, &self.trees, self.graph)
            .expect("solver-built candidates materialize");
        let prefix = &parent_edges[..cand.deviation_index as usize];
        let prefix_nodes = path_nodes(self.graph, self.query.source, prefix);
        let prefix_cost = path_weight(self.graph, prefix);

        let key = (parent, cand.deviation_index);
        let cached = if self.query.variant == Variant::Basic {
            None
        } else {
            self.cache.get(&key).copied()
        };
        let tree_id = match cached {
            Some(tid) => {
                #[cfg(debug_assertions)]
                self.spot_check_cache(tid, &prefix_nodes);
                tid
            }
            None => {
                self.forbidden.clear();
                for &v in &prefix_nodes {
                    self.forbidden.mark(v);
                }
                let tid = self.trees.next_id();
                let tree = compute_sp_tree(
                    self.graph,
                    self.query.target,
                    &self.forbidden,
                    &mut self.scratch,
                    tid,
                )
                .expect("the target never lies on a prefix");
                self.stats.dijkstra_calls += 1;
                self.stats.polls += tree.polls;
                self.trees.insert(tree);
                if self.query.variant != Variant::Basic {
                    self.cache.insert(key, tid);
                }
                tid
            }
        };

        let tree = self.trees.get(tree_id).expect("tree registry is complete");
        let Some(d_head) = tree.dist(head) else {
            // prefix cannot be extended to a simple path
            self.stats.repairs_discarded += 1;
            return;
        };
        let length = prefix_cost + self.graph.weight(e_r) + d_head;
        debug_assert!(
            length >= cand.length - 1e-9 * length.abs().max(1.0),
            "repair never shortens a candidate"
        );
        self.push_candidate(Candidate {
            parent: Some(parent),
            last_sidetrack: Some(e_r),
            tree: tree_id,
            length,
            deviation_node: cand.deviation_node,
            deviation_index: cand.deviation_index,
            simple: true,
        });
    }

    /// Debug-mode probabilistic check: a cache hit must equal a freshly
    /// computed tree in its distance vector.
    #[cfg(debug_assertions)]
    fn spot_check_cache(&mut self, tid: TreeId, prefix_nodes: &[NodeId]) {
        self.cache_hits += 1;
        if self.cache_hits % 32 != 0 {
            return;
        }
        self.forbidden.clear();
        for &v in prefix_nodes {
            self.forbidden.mark(v);
        }
        let fresh = compute_sp_tree(
            self.graph,
            self.query.target,
            &self.forbidden,
            &mut self.scratch,
            tid,
        )
        .expect("the target never lies on a prefix");
        let cached = self.trees.get(tid).expect("tree registry is complete");
        for v in 0..self.graph.node_count() as NodeId {
            assert_eq!(cached.dist(v), fresh.dist(v), "stale cache entry at node {v}");
        }
    }
}

/// Incremental reverse-reachability state for one path expansion (SB-r).
///
/// Walking path positions downward, `reached` holds the nodes that can reach
/// the target in the graph minus the path's first `pos + 1` nodes. The first
/// step runs a reverse DFS from the target ignoring every path node; each
/// later step readmits one path node and only explores nodes that were
/// unreachable before, so a whole expansion costs O(m + n).
struct ReachState {
    reached: NodeMarks,
    position: NodeMap,
    stack: Vec<NodeId>,
    started: bool,
}

impl ReachState {
    fn new(node_count: usize) -> Self {
        ReachState {
            reached: NodeMarks::new(node_count),
            position: NodeMap::new(node_count),
            stack: Vec::new(),
            started: false,
        }
    }

    fn begin(&mut self, nodes: &[NodeId]) {
        self.position.clear();
        for (i, &v) in nodes.iter().enumerate() {
            self.position.set(v, i as u32);
        }
        self.reached.clear();
        self.started = false;
    }

    /// Advance to path position `pos` (called in descending order).
    fn step(&mut self, graph: &Graph, nodes: &[NodeId], pos: usize) {
        let limit = pos as u32;
        if !self.started {
            self.started = true;
            let target = *nodes.last().unwrap();
            self.expand(graph, target, limit);
        } else {
            let readmitted = nodes[pos + 1];
            if !self.reached.is_marked(readmitted)
                && graph
                    .out_edges(readmitted)
                    .iter()
                    .any(|&e| self.reached.is_marked(graph.head(e)))
            {
                self.expand(graph, readmitted, limit);
            }
        }
    }

    fn is_reached(&self, v: NodeId) -> bool {
        self.reached.is_marked(v)
    }

    /// Reverse DFS from `start` over admitted (path position > limit) and
    /// not-yet-reached nodes.
    fn expand(&mut self, graph: &Graph, start: NodeId, limit: u32) {
        self.reached.mark(start);
        self.stack.push(start);
        while let Some(v) = self.stack.pop() {
            for &e in graph.in_edges(v) {
                let u = graph.tail(e);
                if self.reached.is_marked(u) {
                    continue;
                }
                if self.position.get(u).is_some_and(|p| p <= limit) {
                    continue;
                }
                self.reached.mark(u);
                self.stack.push(u);
            }
        }
    }
}
