//! Shared fixtures for unit tests.

use crate::graph::Graph;

/// Six-node worked example: the unit-weight spine s(0) -> v1(1) -> v3(3) ->
/// t(5) plus v2(2) and v4(4) form a unique shortest-path tree toward t, and
/// the four detour edges all have strictly positive sidetrack cost.
///
/// Edge ids:
///   0: 0->1 w1 (tree)      1: 0->2 w1 (detour a)
///   2: 1->3 w1 (tree)      3: 2->1 w1 (tree)
///   4: 2->4 w2 (detour b)  5: 3->2 w1 (detour c)
///   6: 3->5 w1 (tree)      7: 4->3 w1 (tree)
///   8: 4->5 w3 (detour d)
pub fn sample_six_node() -> Graph {
    Graph::from_edges(
        6,
        &[
            (0, 1, 1.0),
            (0, 2, 1.0),
            (1, 3, 1.0),
            (2, 1, 1.0),
            (2, 4, 2.0),
            (3, 2, 1.0),
            (3, 5, 1.0),
            (4, 3, 1.0),
            (4, 5, 3.0),
        ],
    )
    .unwrap()
}
