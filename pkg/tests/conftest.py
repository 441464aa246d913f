import pytest

from dagzip import DagCompression


@pytest.fixture
def fig_compression():
    """Directed 8-sink compression with clusters a..f = 9..14.

    Clusters: C(9)={1,2}, C(10)={1,2,3}, C(11)={3,4,5}, C(12)={4,5},
    C(13)={4,5,6}, C(14)={7,8}. Size 12 arcs + 5 compression edges = 17.
    """
    arcs = {
        (9, 1), (9, 2), (10, 9), (10, 3), (11, 3), (11, 12),
        (12, 4), (12, 5), (13, 12), (13, 6), (14, 7), (14, 8),
    }
    cedges = {(10, 10), (9, 11), (12, 6), (6, 12), (13, 14)}
    return DagCompression(
        directed=True, n_sinks=8, n_clusters=6,
        arcs=frozenset(arcs), cedges=frozenset(cedges),
    )


@pytest.fixture
def mst_compression():
    """Weighted undirected 7-sink compression with clusters a=8, b=9, c=10.

    C(8)={1,2,3}, C(9)={4,5,6}, C(10)={4,5,6,7}; edges {8,9} at weight 1 and
    {8,10} at weight 2. The minimum spanning tree weighs 7.
    """
    arcs = {(8, 1), (8, 2), (8, 3), (9, 4), (9, 5), (9, 6), (10, 7), (10, 9)}
    cedges = {(8, 9), (8, 10)}
    return DagCompression(
        directed=False, n_sinks=7, n_clusters=3,
        arcs=frozenset(arcs), cedges=frozenset(cedges),
        weights={(8, 9): 1, (8, 10): 2},
    )
