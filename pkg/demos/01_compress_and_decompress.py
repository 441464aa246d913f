#!/usr/bin/env python3
"""Tour of the core data structure: build, validate, inspect, round-trip.

A DAG compression stores a dense graph as a cluster DAG (arcs) plus
compression edges. Every vertex of the cluster DAG stands for the set of
original vertices (sinks) reachable from it, and one compression edge
(u, v) encodes the whole product C(u) x C(v) of original edges.
"""

from dagzip import (
    DagCompression,
    clusters,
    decompress,
    read_compression,
    validate,
    write_compression,
)

# Eight original vertices 1..8, six cluster vertices 9..14. The cluster
# DAG nests: 10 reaches {1,2,3} through 9, 13 reaches {4,5,6} through 12.
d = DagCompression(
    directed=True,
    n_sinks=8,
    n_clusters=6,
    arcs=frozenset({
        (9, 1), (9, 2), (10, 9), (10, 3), (11, 3), (11, 12),
        (12, 4), (12, 5), (13, 12), (13, 6), (14, 7), (14, 8),
    }),
    cedges=frozenset({(10, 10), (9, 11), (12, 6), (6, 12), (13, 14)}),
)

print("violations:", validate(d) or "none")
print("size |A| + |E| =", d.size())

table = clusters(d)
for v in range(9, 15):
    print(f"  C({v}) = {sorted(table.cluster[v])}  representative {table.representative[v]}")

g = decompress(d)
print("decompressed edges:", g.m)
print("the loop edge (10,10) makes {1,2,3} a clique with loops:",
      all(g.has_edge(x, y) for x in (1, 2, 3) for y in (1, 2, 3)))

text = write_compression(d)
print("\ncanonical text form:")
print(text)
assert read_compression(text) == d
print("round-trip: ok")
