//! Shared fixtures for unit tests.

use crate::coloring::EdgeColoring;

/// The 3-coloring of K4 in which each color class is a perfect matching.
pub(crate) fn matching_k4() -> EdgeColoring {
    EdgeColoring::from_edges(
        4,
        3,
        &[
            (0, 1, 1),
            (2, 3, 1),
            (0, 2, 2),
            (1, 3, 2),
            (0, 3, 3),
            (1, 2, 3),
        ],
    )
    .unwrap()
}

/// The sporadic 4-coloring of K5 with class sizes 3/3/3/1 that has no
/// rainbow path on 5 vertices (structure case F). Vertices 0..4 play the
/// roles v1..v5.
pub(crate) fn sporadic_k5() -> EdgeColoring {
    EdgeColoring::from_edges(
        5,
        4,
        &[
            (0, 3, 1),
            (0, 4, 1),
            (1, 2, 1),
            (1, 3, 2),
            (1, 4, 2),
            (0, 2, 2),
            (2, 3, 3),
            (2, 4, 3),
            (0, 1, 3),
            (3, 4, 4),
        ],
    )
    .unwrap()
}
