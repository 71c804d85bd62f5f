//! Candidate paths as generalized sidetrack sequences, their
//! materialization, the block partition behind constant-time simplicity
//! lookups, and the size-bounded double-ended candidate queue.
//!
//! A candidate never stores its edge sequence. It keeps a parent pointer,
//! the one sidetrack it appended, and the id of the shortest-path tree its
//! suffix follows; a processed path may push O(m) children, so explicit
//! sequences would cost O(nm) memory per step. Materialization walks the
//! ancestry and the associated trees, and is only needed for output and for
//! repairs.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, NodeId};
use crate::heap::IntervalHeap;
use crate::marks::{NodeMap, NodeMarks};
use crate::sptree::{SpTree, TreeId, TreeRegistry};

pub type CandidateId = u32;

#[derive(Debug, Clone, Copy)]
pub struct Candidate {
    pub parent: Option<CandidateId>,
    /// Last sidetrack of the sequence; `None` only for the initial tree path.
    pub last_sidetrack: Option<EdgeId>,
    /// Tree associated with `last_sidetrack` (the initial tree for the root).
    pub tree: TreeId,
    /// Total length of the represented path.
    pub length: f64,
    /// Tail of the deviation edge; the source node for the root.
    pub deviation_node: NodeId,
    /// 0-based position of the deviation edge in the represented path. This
    /// doubles as the number of edges in the path's prefix. Zero for the
    /// root.
    pub deviation_index: u32,
    /// Simplicity, decided at push time (blocks or walk) so the pivot at
    /// extraction is a flag lookup.
    pub simple: bool,
}

impl Candidate {
    /// Path index of the first node of the suffix.
    pub fn suffix_start(&self) -> u32 {
        if self.last_sidetrack.is_some() {
            self.deviation_index + 1
        } else {
            0
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MaterializeError {
    #[error("candidate references missing tree {0}")]
    MissingTree(TreeId),
    #[error("candidate ancestry is inconsistent with its trees")]
    Inconsistent,
}

/// Reconstruct the explicit edge sequence of a candidate: follow the initial
/// tree from the source, traverse each recorded sidetrack, and follow its
/// associated tree in between.
pub fn materialize(
    id: CandidateId,
    arena: &[Candidate],
    trees: &TreeRegistry,
    graph: &Graph,
) -> Result<Vec<EdgeId>, MaterializeError> {
    let mut chain: Vec<(Option<EdgeId>, TreeId)> = Vec::new();
    let mut cur = Some(id);
    while let Some(c) = cur {
        let cand = &arena[c as usize];
        chain.push((cand.last_sidetrack, cand.tree));
        cur = cand.parent;
    }
    chain.reverse();

    let root_id = {
        let mut r = id;
        while let Some(p) = arena[r as usize].parent {
            r = p;
        }
        r
    };
    let source = arena[root_id as usize].deviation_node;

    let mut edges = Vec::new();
    // a non-simple candidate repeats at most one suffix over a simple prefix
    let mut fuel = 2 * graph.node_count() + 2;
    let mut at = source;
    let mut tree = lookup(trees, chain[0].1)?;
    for &(sidetrack, tree_id) in &chain[1..] {
        let e = sidetrack.ok_or(MaterializeError::Inconsistent)?;
        walk_tree(graph, tree, &mut at, Some(graph.tail(e)), &mut edges, &mut fuel)?;
        edges.push(e);
        at = graph.head(e);
        tree = lookup(trees, tree_id)?;
    }
    walk_tree(graph, tree, &mut at, None, &mut edges, &mut fuel)?;
    Ok(edges)
}

fn lookup(trees: &TreeRegistry, id: TreeId) -> Result<&SpTree, MaterializeError> {
    trees.get(id).ok_or(MaterializeError::MissingTree(id))
}

/// Append tree edges from `*at` until reaching `stop` (or the tree target
/// when `stop` is `None`).
fn walk_tree(
    graph: &Graph,
    tree: &SpTree,
    at: &mut NodeId,
    stop: Option<NodeId>,
    edges: &mut Vec<EdgeId>,
    fuel: &mut usize,
) -> Result<(), MaterializeError> {
    let stop = stop.unwrap_or(tree.target);
    while *at != stop {
        let e = tree.tree_edge(*at).ok_or(MaterializeError::Inconsistent)?;
        if *fuel == 0 {
            return Err(MaterializeError::Inconsistent);
        }
        *fuel -= 1;
        edges.push(e);
        *at = graph.head(e);
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq)]
pub enum BlockError {
    #[error("path edge {0} does not continue the previous edge")]
    NotContiguous(EdgeId),
    #[error("path does not end at the tree target")]
    WrongTerminal,
}

/// Partition of a tree's nodes into blocks relative to a path ending at the
/// tree target.
///
/// Path node `v_i` gets block `i`; every other tree node gets the block of
/// the first path node its tree walk toward the target reaches. An
/// extension deviating at path position `i` toward a node in block `j` is
/// simple iff `i < j`.
#[derive(Debug)]
pub struct BlockPartition {
    block: NodeMap,
    path_nodes: u32,
    stack: Vec<NodeId>,
}

impl BlockPartition {
    pub fn new(node_count: usize) -> Self {
        BlockPartition {
            block: NodeMap::new(node_count),
            path_nodes: 0,
            stack: Vec::new(),
        }
    }

    pub fn path_node_count(&self) -> u32 {
        self.path_nodes
    }

    /// Block index of `v`; `None` for nodes outside the tree.
    pub fn block_of(&self, v: NodeId) -> Option<u32> {
        self.block.get(v)
    }

    /// Recompute the partition for `tree` and the path starting at `start`
    /// with edges `path_edges`. Runs in O(n): every tree node is walked and
    /// assigned once.
    pub fn recompute(
        &mut self,
        graph: &Graph,
        tree: &SpTree,
        start: NodeId,
        path_edges: &[EdgeId],
    ) -> Result<(), BlockError> {
        self.block.clear();
        let mut at = start;
        for (i, &e) in path_edges.iter().enumerate() {
            if graph.tail(e) != at {
                return Err(BlockError::NotContiguous(e));
            }
            if tree.in_tree(at) {
                self.block.set(at, i as u32);
            }
            at = graph.head(e);
        }
        if at != tree.target {
            return Err(BlockError::WrongTerminal);
        }
        self.block.set(at, path_edges.len() as u32);
        self.path_nodes = path_edges.len() as u32 + 1;

        for v in 0..graph.node_count() as NodeId {
            if !tree.in_tree(v) || self.block.get(v).is_some() {
                continue;
            }
            let mut at = v;
            let b = loop {
                match self.block.get(at) {
                    Some(b) => break b,
                    None => {
                        self.stack.push(at);
                        let e = tree.tree_edge(at).expect("non-target tree node has an edge");
                        at = graph.head(e);
                    }
                }
            };
            for &u in &self.stack {
                self.block.set(u, b);
            }
            self.stack.clear();
        }
        Ok(())
    }
}

/// One-shot form of [`BlockPartition::recompute`].
pub fn compute_blocks(
    graph: &Graph,
    tree: &SpTree,
    start: NodeId,
    path_edges: &[EdgeId],
) -> Result<BlockPartition, BlockError> {
    let mut bp = BlockPartition::new(graph.node_count());
    bp.recompute(graph, tree, start, path_edges)?;
    Ok(bp)
}

/// Block rule: deviating from path position `tail_block` into `head_block`
/// keeps the path simple iff the head's block lies strictly later.
pub fn classify_extension(tail_block: u32, head_block: u32) -> bool {
    tail_block < head_block
}

/// Walk-and-mark simplicity test for extending a simple path by sidetrack
/// `e` at path position `tail_pos`: mark the path nodes up to and including
/// the tail, then follow the tree from the head. The extension is simple iff
/// the walk reaches the target unmarked. The head must lie in the tree.
pub fn extension_is_simple_by_walk(
    graph: &Graph,
    tree: &SpTree,
    path_nodes: &[NodeId],
    tail_pos: usize,
    e: EdgeId,
    marks: &mut NodeMarks,
) -> bool {
    marks.clear();
    for &v in &path_nodes[..=tail_pos] {
        marks.mark(v);
    }
    let mut at = graph.head(e);
    loop {
        if marks.is_marked(at) {
            return false;
        }
        if at == tree.target {
            return true;
        }
        let next = tree.tree_edge(at).expect("head must reach the target in the tree");
        at = graph.head(next);
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QueueEntry {
    pub length: f64,
    pub id: CandidateId,
    pub simple: bool,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length && self.id == other.id
    }
}
impl Eq for QueueEntry {}
impl Ord for QueueEntry {
    // Equal lengths: known-simple candidates first, then by id (older
    // first). Extracting simple ties first is always valid (any order among
    // equal-length outputs is), and it defers repairs of non-simple ties
    // that turn out never to be needed; integer weights on dense graphs
    // produce large equal-length plateaus where this matters. The id tail
    // keeps runs deterministic.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.length
            .total_cmp(&other.length)
            .then_with(|| other.simple.cmp(&self.simple))
            .then(self.id.cmp(&other.id))
    }
}
impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Candidate queue over an interval heap, keyed by path length and bounded
/// by the number of simple paths still to output.
#[derive(Debug)]
pub struct CandidateQueue {
    heap: IntervalHeap<QueueEntry>,
    simple_count: usize,
}

impl CandidateQueue {
    pub fn new() -> Self {
        CandidateQueue {
            heap: IntervalHeap::new(),
            simple_count: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn simple_count(&self) -> usize {
        self.simple_count
    }

    /// Insert, then delete maximum entries while more than `remaining`
    /// known-simple candidates are held.
    ///
    /// Eviction safety: each known-simple candidate delivers a path of
    /// exactly its key, and repairing a non-simple candidate only lengthens
    /// it. When `remaining` simple candidates no longer than the maximum are
    /// present, the maximum can never be among the remaining answers.
    pub fn push(&mut self, entry: QueueEntry, remaining: usize) {
        debug_assert!(remaining >= 1);
        self.heap.push(entry);
        if entry.simple {
            self.simple_count += 1;
        }
        while self.simple_count > remaining {
            let evicted = self.heap.pop_max().expect("nonzero simple count");
            if evicted.simple {
                self.simple_count -= 1;
            }
        }
    }

    pub fn pop_min(&mut self) -> Option<QueueEntry> {
        let entry = self.heap.pop_min()?;
        if entry.simple {
            self.simple_count -= 1;
        }
        Some(entry)
    }
}

impl Default for CandidateQueue {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sptree::compute_sp_tree_excluding;
    use crate::testutil::sample_six_node;
    use crate::{graph::path_nodes, random::random_multigraph};

    fn entry(length: f64, id: CandidateId, simple: bool) -> QueueEntry {
        QueueEntry { length, id, simple }
    }

    #[test]
    fn queue_push_and_bound() {
        let mut q = CandidateQueue::new();
        q.push(entry(3.0, 0, true), 5);
        assert_eq!(q.len(), 1);

        let mut q = CandidateQueue::new();
        q.push(entry(3.0, 0, true), 1);
        q.push(entry(5.0, 1, true), 1);
        // the second simple candidate exceeds the bound; the max goes
        assert_eq!(q.len(), 1);
        assert_eq!(q.pop_min(), Some(entry(3.0, 0, true)));
    }

    #[test]
    fn queue_keeps_nonsimple_below_bound() {
        let mut q = CandidateQueue::new();
        q.push(entry(2.0, 0, false), 1);
        q.push(entry(4.0, 1, false), 1);
        q.push(entry(3.0, 2, true), 1);
        // bound counts simple candidates only
        assert_eq!(q.len(), 3);
        q.push(entry(3.5, 3, true), 1);
        // evicts from the top until one simple candidate remains: drops the
        // 4.0 non-simple and the 3.5 simple
        assert_eq!(q.len(), 2);
        assert_eq!(q.pop_min(), Some(entry(2.0, 0, false)));
        assert_eq!(q.pop_min(), Some(entry(3.0, 2, true)));
    }

    #[test]
    fn queue_extracts_in_key_order_with_id_ties() {
        let mut q = CandidateQueue::new();
        q.push(entry(5.0, 2, true), 10);
        q.push(entry(3.0, 1, true), 10);
        q.push(entry(3.0, 0, true), 10);
        assert_eq!(q.pop_min().unwrap().id, 0);
        assert_eq!(q.pop_min().unwrap().id, 1);
        assert_eq!(q.pop_min().unwrap().id, 2);
        assert_eq!(q.pop_min(), None);
    }

    #[test]
    fn equal_length_ties_prefer_simple_candidates() {
        let mut q = CandidateQueue::new();
        q.push(entry(4.0, 0, false), 10);
        q.push(entry(4.0, 1, true), 10);
        q.push(entry(4.0, 2, false), 10);
        assert_eq!(q.pop_min().unwrap().id, 1);
        assert_eq!(q.pop_min().unwrap().id, 0);
        assert_eq!(q.pop_min().unwrap().id, 2);
    }

    #[test]
    fn blocks_on_sample_graph() {
        let g = sample_six_node();
        let tree = compute_sp_tree_excluding(&g, 5, &[], 0).unwrap();
        let bp = compute_blocks(&g, &tree, 0, &[0, 2, 6]).unwrap();
        assert_eq!(bp.path_node_count(), 4);
        assert_eq!(bp.block_of(0), Some(0)); // s
        assert_eq!(bp.block_of(1), Some(1)); // v1
        assert_eq!(bp.block_of(2), Some(1)); // v2 hangs off v1
        assert_eq!(bp.block_of(3), Some(2)); // v3
        assert_eq!(bp.block_of(4), Some(2)); // v4 hangs off v3
        assert_eq!(bp.block_of(5), Some(3)); // t
    }

    #[test]
    fn empty_path_is_one_block() {
        let g = sample_six_node();
        let tree = compute_sp_tree_excluding(&g, 5, &[], 0).unwrap();
        let bp = compute_blocks(&g, &tree, 5, &[]).unwrap();
        assert_eq!(bp.path_node_count(), 1);
        for v in 0..6 {
            assert_eq!(bp.block_of(v), Some(0));
        }
    }

    #[test]
    fn block_errors() {
        let g = sample_six_node();
        let tree = compute_sp_tree_excluding(&g, 5, &[], 0).unwrap();
        assert_eq!(
            compute_blocks(&g, &tree, 0, &[2]).err(),
            Some(BlockError::NotContiguous(2))
        );
        assert_eq!(
            compute_blocks(&g, &tree, 0, &[0]).err(),
            Some(BlockError::WrongTerminal)
        );
    }

    #[test]
    fn blocks_match_naive_walk_on_random_trees() {
        for seed in 0..20 {
            let n = 8 + (seed as usize % 20);
            let g = random_multigraph(n, 3 * n, 9, 400 + seed).unwrap();
            let target = (seed % n as u64) as u32;
            let tree = compute_sp_tree_excluding(&g, target, &[], 0).unwrap();
            let source = ((seed + 3) % n as u64) as u32;
            let path = tree.tree_path(&g, source).unwrap();
            let nodes = path_nodes(&g, source, &path);
            let bp = compute_blocks(&g, &tree, source, &path).unwrap();
            for v in 0..n as u32 {
                if !tree.in_tree(v) {
                    assert_eq!(bp.block_of(v), None);
                    continue;
                }
                // first path node hit when walking the tree toward the target
                let mut at = v;
                let expect = loop {
                    if let Some(i) = nodes.iter().position(|&u| u == at) {
                        break i as u32;
                    }
                    at = g.head(tree.tree_edge(at).unwrap());
                };
                assert_eq!(bp.block_of(v), Some(expect), "seed {seed} node {v}");
            }
        }
    }

    #[test]
    fn classify_rule() {
        assert!(!classify_extension(2, 2));
        assert!(!classify_extension(2, 1));
        assert!(classify_extension(0, 1));
    }

    #[test]
    fn classify_matches_walk_on_sample_graph() {
        let g = sample_six_node();
        let tree = compute_sp_tree_excluding(&g, 5, &[], 0).unwrap();
        let path = vec![0, 2, 6];
        let nodes = path_nodes(&g, 0, &path);
        let bp = compute_blocks(&g, &tree, 0, &path).unwrap();
        let mut marks = NodeMarks::new(6);
        // detour (v3 -> v2) off the initial path: tail block 2, head block 1
        let tail_pos = 2;
        let by_blocks = classify_extension(tail_pos, bp.block_of(g.head(5)).unwrap());
        assert!(!by_blocks);
        assert!(!extension_is_simple_by_walk(&g, &tree, &nodes, 2, 5, &mut marks));
        // detour (s -> v2): tail block 0, head block 1
        let by_blocks = classify_extension(0, bp.block_of(g.head(1)).unwrap());
        assert!(by_blocks);
        assert!(extension_is_simple_by_walk(&g, &tree, &nodes, 0, 1, &mut marks));
    }

    #[test]
    fn materialize_sample_candidates() {
        let g = sample_six_node();
        let mut trees = TreeRegistry::new();
        trees.insert(compute_sp_tree_excluding(&g, 5, &[], 0).unwrap());
        trees.insert(compute_sp_tree_excluding(&g, 5, &[0, 1, 3], 1).unwrap());

        let root = Candidate {
            parent: None,
            last_sidetrack: None,
            tree: 0,
            length: 3.0,
            deviation_node: 0,
            deviation_index: 0,
            simple: true,
        };
        // detour a at the source, staying on the initial tree
        let via_a = Candidate {
            parent: Some(0),
            last_sidetrack: Some(1),
            tree: 0,
            length: 4.0,
            deviation_node: 0,
            deviation_index: 0,
            simple: true,
        };
        // detour c at v3, repaired onto the restricted tree
        let via_c = Candidate {
            parent: Some(0),
            last_sidetrack: Some(5),
            tree: 1,
            length: 8.0,
            deviation_node: 3,
            deviation_index: 2,
            simple: true,
        };
        let arena = vec![root, via_a, via_c];

        let p0 = materialize(0, &arena, &trees, &g).unwrap();
        assert_eq!(path_nodes(&g, 0, &p0), vec![0, 1, 3, 5]);

        let p1 = materialize(1, &arena, &trees, &g).unwrap();
        assert_eq!(path_nodes(&g, 0, &p1), vec![0, 2, 1, 3, 5]);

        let p2 = materialize(2, &arena, &trees, &g).unwrap();
        assert_eq!(p2, vec![0, 2, 5, 4, 8]);

        let mut broken = arena.clone();
        broken[2].tree = 9;
        assert_eq!(
            materialize(2, &broken, &trees, &g),
            Err(MaterializeError::MissingTree(9))
        );
    }
}
