"""The DAG-compression data structure.

A compression of a graph on sinks 1..n_sinks consists of a cluster DAG
(V, A) whose sinks are exactly the original vertices (cluster vertices are
numbered n_sinks+1 .. n_sinks+n_clusters) and a set E of compression edges.
Each cluster vertex v stands for the set C(v) of sinks reachable from it,
and a compression edge (u, v) encodes every original edge in C(u) x C(v)
(the unordered product for undirected compressions). The size of a
compression is |A| + |E|.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import Graph, WeightedGraph, canonical_edge


class CompressionFormatError(ValueError):
    """Raised for malformed compression text."""


@dataclass(frozen=True, eq=False)
class DagCompression:
    directed: bool
    n_sinks: int
    n_clusters: int
    arcs: frozenset[tuple[int, int]]
    cedges: frozenset[tuple[int, int]]
    weights: dict[tuple[int, int], int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in self.arcs))
        cedges = frozenset(canonical_edge(self.directed, u, v) for u, v in self.cedges)
        object.__setattr__(self, "cedges", cedges)
        if self.weights is not None:
            w = {canonical_edge(self.directed, u, v): x for (u, v), x in self.weights.items()}
            object.__setattr__(self, "weights", w)
        top = self.n_sinks + self.n_clusters
        for u, v in list(self.arcs) + list(self.cedges):
            if not (1 <= u <= top and 1 <= v <= top):
                raise ValueError(f"vertex id ({u},{v}) out of range 1..{top}")

    @property
    def n_vertices(self) -> int:
        return self.n_sinks + self.n_clusters

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def is_sink(self, v: int) -> bool:
        return v <= self.n_sinks

    def size(self) -> int:
        return len(self.arcs) + len(self.cedges)

    def __eq__(self, other):
        if not isinstance(other, DagCompression):
            return NotImplemented
        return (
            self.directed == other.directed
            and self.n_sinks == other.n_sinks
            and self.n_clusters == other.n_clusters
            and self.arcs == other.arcs
            and self.cedges == other.cedges
            and self.weights == other.weights
        )


@dataclass
class ClusterTable:
    """Reachable-sink sets C(v) and a fixed representative sink per vertex."""

    cluster: dict[int, frozenset[int]]
    representative: dict[int, int]


def size(d: DagCompression) -> int:
    return d.size()


def out_arcs(d: DagCompression) -> dict[int, list[int]]:
    """Sorted arc targets per vertex (canonical arc order restricted to each source)."""
    children: dict[int, list[int]] = {v: [] for v in range(1, d.n_vertices + 1)}
    for u, v in sorted(d.arcs):
        children[u].append(v)
    return children


def validate(d: DagCompression) -> list[str]:
    """Empty list iff the compression invariants hold; violations otherwise."""
    violations = []
    outdeg = {v: 0 for v in range(1, d.n_vertices + 1)}
    for u, v in d.arcs:
        outdeg[u] += 1
    for v in range(1, d.n_sinks + 1):
        if outdeg[v]:
            violations.append(f"original vertex {v} has outgoing arc")
    for v in range(d.n_sinks + 1, d.n_vertices + 1):
        if not outdeg[v]:
            violations.append(f"cluster vertex {v} with no outgoing arc")
    if _has_cycle(d):
        violations.append("cycle in cluster DAG")
    if d.weights is not None:
        if set(d.weights) != set(d.cedges):
            violations.append("weights do not cover exactly the compression edges")
        elif any(w < 0 for w in d.weights.values()):
            violations.append("negative compression-edge weight")
    return violations


def _has_cycle(d: DagCompression) -> bool:
    try:
        topological_order(d)
    except ValueError:
        return True
    return False


def topological_order(d: DagCompression) -> list[int]:
    """Kahn's algorithm over (V, A); raises ValueError on a cycle."""
    indeg = {v: 0 for v in range(1, d.n_vertices + 1)}
    children = out_arcs(d)
    for u, v in d.arcs:
        indeg[v] += 1
    queue = deque(v for v in range(1, d.n_vertices + 1) if indeg[v] == 0)
    order = []
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in children[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(order) != d.n_vertices:
        raise ValueError("cluster DAG contains a cycle")
    return order


def sink_representatives(d: DagCompression) -> dict[int, int]:
    """One reverse-topological pass assigning each vertex a reachable sink.

    A vertex with several out-arcs copies the representative of the target that
    comes first in canonical arc order, so runs are deterministic. Cluster sets
    are never materialized here.
    """
    order = topological_order(d)
    children = out_arcs(d)
    rep: dict[int, int] = {}
    for v in reversed(order):
        if d.is_sink(v):
            rep[v] = v
        else:
            rep[v] = rep[children[v][0]]
    return rep


def clusters(d: DagCompression) -> ClusterTable:
    """Materialize every C(v) plus the representative function."""
    order = topological_order(d)
    children = out_arcs(d)
    rep = sink_representatives(d)
    cluster: dict[int, frozenset[int]] = {}
    for v in reversed(order):
        if d.is_sink(v):
            cluster[v] = frozenset((v,))
        else:
            acc: set[int] = set()
            for u in children[v]:
                acc |= cluster[u]
            cluster[v] = frozenset(acc)
    return ClusterTable(cluster=cluster, representative=rep)


def decompress(d: DagCompression) -> Graph | WeightedGraph:
    """Expand the compression into the explicit graph it encodes.

    Every compression edge contributes the full product of its endpoint
    clusters; in the weighted case an original edge gets the minimum weight
    over all compression edges covering it.
    """
    table = clusters(d)
    edges: set[tuple[int, int]] = set()
    weights: dict[tuple[int, int], int] = {}
    items = sorted(d.cedges)
    for u, v in items:
        cu, cv = table.cluster[u], table.cluster[v]
        w = d.weights[(u, v)] if d.weighted else None
        for x in cu:
            for y in cv:
                e = canonical_edge(d.directed, x, y)
                edges.add(e)
                if w is not None and (e not in weights or w < weights[e]):
                    weights[e] = w
    g = Graph(directed=d.directed, n=d.n_sinks, edges=frozenset(edges))
    if d.weighted:
        return WeightedGraph(graph=g, weights=weights)
    return g


def compression_union(d1: DagCompression, d2: DagCompression) -> DagCompression:
    """Componentwise union of two compressions over the same sink set.

    d2's cluster vertices are renumbered after d1's; the result decompresses
    to the union of the two decompressed edge sets.
    """
    if d1.directed != d2.directed or d1.n_sinks != d2.n_sinks:
        raise ValueError("compressions must share orientation and sink set")
    if d1.weighted != d2.weighted:
        raise ValueError("cannot mix weighted and unweighted compressions")
    shift = d1.n_clusters

    def relabel(v: int) -> int:
        return v if v <= d2.n_sinks else v + shift

    arcs = set(d1.arcs) | {(relabel(u), relabel(v)) for u, v in d2.arcs}
    cedges = set(d1.cedges) | {(relabel(u), relabel(v)) for u, v in d2.cedges}
    weights = None
    if d1.weighted:
        weights = dict(d1.weights)
        for (u, v), w in d2.weights.items():
            e = canonical_edge(d1.directed, relabel(u), relabel(v))
            weights[e] = min(w, weights.get(e, w))
    return DagCompression(
        directed=d1.directed,
        n_sinks=d1.n_sinks,
        n_clusters=d1.n_clusters + d2.n_clusters,
        arcs=frozenset(arcs),
        cedges=frozenset(cedges),
        weights=weights,
    )


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.split("\n"):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def read_compression(text: str) -> DagCompression:
    """Parse the compression text format (see write_compression)."""
    lines = _content_lines(text)
    if not lines:
        raise CompressionFormatError("empty input")
    head = lines[0].split()
    if head[0] != "dagc" or len(head) not in (2, 3):
        raise CompressionFormatError(f"malformed header: {lines[0]!r}")
    if head[1] not in ("directed", "undirected"):
        raise CompressionFormatError(f"unknown orientation {head[1]!r}")
    directed = head[1] == "directed"
    weighted = len(head) == 3
    if weighted and head[2] != "weighted":
        raise CompressionFormatError(f"unexpected header token {head[2]!r}")

    idx = 1

    def counted(tag: str) -> int:
        nonlocal idx
        if idx >= len(lines):
            raise CompressionFormatError(f"missing {tag!r} section")
        parts = lines[idx].split()
        if len(parts) != 2 or parts[0] != tag:
            raise CompressionFormatError(f"expected {tag!r} line, got {lines[idx]!r}")
        idx += 1
        try:
            return int(parts[1])
        except ValueError as exc:
            raise CompressionFormatError(f"non-integer count in {tag!r} line") from exc

    n_sinks = counted("sinks")
    n_clusters = counted("clusters")
    n_arcs = counted("arcs")
    top = n_sinks + n_clusters

    def pair(tag: str, line: str, with_weight: bool):
        parts = line.split()
        want = 4 if with_weight else 3
        if len(parts) != want or parts[0] != tag:
            raise CompressionFormatError(f"malformed {tag!r} line: {line!r}")
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError as exc:
            raise CompressionFormatError(f"non-integer field in {line!r}") from exc
        u, v = nums[0], nums[1]
        if not (1 <= u <= top and 1 <= v <= top):
            raise CompressionFormatError(f"vertex id out of range in {line!r}")
        return (u, v, nums[2] if with_weight else None)

    arcs: set[tuple[int, int]] = set()
    if len(lines) < idx + n_arcs:
        raise CompressionFormatError("fewer arc lines than declared")
    for line in lines[idx: idx + n_arcs]:
        u, v, _ = pair("a", line, False)
        if (u, v) in arcs:
            raise CompressionFormatError(f"duplicate arc ({u},{v})")
        arcs.add((u, v))
    idx += n_arcs

    n_ced = counted("cedges")
    if len(lines) != idx + n_ced:
        raise CompressionFormatError("compression-edge count does not match the lines present")
    cedges: set[tuple[int, int]] = set()
    weights: dict[tuple[int, int], int] = {}
    for line in lines[idx:]:
        u, v, w = pair("c", line, weighted)
        e = canonical_edge(directed, u, v)
        if e in cedges:
            raise CompressionFormatError(f"duplicate compression edge {e}")
        cedges.add(e)
        if weighted:
            if w < 0:
                raise CompressionFormatError(f"negative weight in {line!r}")
            weights[e] = w
    return DagCompression(
        directed=directed,
        n_sinks=n_sinks,
        n_clusters=n_clusters,
        arcs=frozenset(arcs),
        cedges=frozenset(cedges),
        weights=weights if weighted else None,
    )


def write_compression(d: DagCompression) -> str:
    """Canonical serialization: arcs, then compression edges, each sorted."""
    head = "dagc " + ("directed" if d.directed else "undirected")
    if d.weighted:
        head += " weighted"
    out = [head, f"sinks {d.n_sinks}", f"clusters {d.n_clusters}", f"arcs {len(d.arcs)}"]
    for u, v in sorted(d.arcs):
        out.append(f"a {u} {v}")
    out.append(f"cedges {len(d.cedges)}")
    for u, v in sorted(d.cedges):
        if d.weighted:
            out.append(f"c {u} {v} {d.weights[(u, v)]}")
        else:
            out.append(f"c {u} {v}")
    return "\n".join(out) + "\n"
