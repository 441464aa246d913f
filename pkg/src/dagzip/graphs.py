"""Explicit graph representations, twins, connectivity, and text I/O.

Vertices are dense 1-based integers. Directed edges are ordered pairs,
undirected edges are stored with the smaller endpoint first. Self-loops
are legal in both variants ((v, v) directed, {v, v} undirected).
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Raised for malformed graph text."""


def canonical_edge(directed: bool, u: int, v: int) -> tuple[int, int]:
    if directed or u <= v:
        return (u, v)
    return (v, u)


@dataclass(frozen=True)
class Graph:
    """An explicit directed or undirected graph on vertices 1..n."""

    directed: bool
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = frozenset(canonical_edge(self.directed, u, v) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(self.directed, u, v) in self.edges


@dataclass(eq=True)
class WeightedGraph:
    """An undirected graph together with a non-negative integer edge weight map."""

    graph: Graph
    weights: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.graph.directed:
            raise ValueError("weighted graphs are undirected")
        self.weights = {canonical_edge(False, u, v): w for (u, v), w in self.weights.items()}
        if set(self.weights) != set(self.graph.edges):
            raise ValueError("weights must cover exactly the edge set")
        for e, w in self.weights.items():
            if w < 0:
                raise ValueError(f"negative weight on {e}")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self.graph.edges


@dataclass(frozen=True)
class ShorePartition:
    """A bipartition of 1..n; in the associated graph all edges go shore1 -> shore2."""

    shore1: frozenset[int]
    shore2: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "shore1", frozenset(self.shore1))
        object.__setattr__(self, "shore2", frozenset(self.shore2))
        if self.shore1 & self.shore2:
            raise ValueError("shores must be disjoint")

    def check(self, g: Graph) -> None:
        """Raise unless the shores cover 1..g.n and every edge goes shore1 -> shore2."""
        if self.shore1 | self.shore2 != frozenset(range(1, g.n + 1)):
            raise ValueError("shores must partition the vertex set")
        for u, v in g.edges:
            if u not in self.shore1 or v not in self.shore2:
                raise ValueError(f"edge ({u},{v}) does not go from shore1 to shore2")


def neighborhoods(g: Graph) -> tuple[dict[int, frozenset[int]], dict[int, frozenset[int]]]:
    """Per-vertex (in, out) neighborhood sets; for undirected graphs both maps coincide."""
    ins: dict[int, set[int]] = {v: set() for v in range(1, g.n + 1)}
    outs: dict[int, set[int]] = {v: set() for v in range(1, g.n + 1)}
    for u, v in g.edges:
        outs[u].add(v)
        ins[v].add(u)
        if not g.directed:
            outs[v].add(u)
            ins[u].add(v)
    fi = {v: frozenset(s) for v, s in ins.items()}
    fo = {v: frozenset(s) for v, s in outs.items()}
    return fi, fo


def twins(g: Graph) -> set[frozenset[int]]:
    """All unordered pairs of distinct vertices with identical in- and out-neighborhoods.

    The set definition is applied literally, so mutual edges or loops count as
    ordinary neighborhood members. Pairs within one equivalence class are all
    reported, which makes the result transitively closed by construction.
    """
    ins, outs = neighborhoods(g)
    groups: dict[tuple[frozenset[int], frozenset[int]], list[int]] = defaultdict(list)
    for v in range(1, g.n + 1):
        groups[(ins[v], outs[v])].append(v)
    pairs: set[frozenset[int]] = set()
    for members in groups.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                pairs.add(frozenset((a, b)))
    return pairs


def twin_classes(g: Graph) -> list[tuple[int, ...]]:
    """Equivalence classes of the twin relation, each sorted, in order of smallest member."""
    ins, outs = neighborhoods(g)
    groups: dict[tuple[frozenset[int], frozenset[int]], list[int]] = defaultdict(list)
    for v in range(1, g.n + 1):
        groups[(ins[v], outs[v])].append(v)
    classes = [tuple(sorted(ms)) for ms in groups.values()]
    return sorted(classes)


def is_connected(g: Graph | WeightedGraph) -> bool:
    """True iff the graph has a single connected component (loops and directions ignored)."""
    if isinstance(g, WeightedGraph):
        g = g.graph
    if g.n <= 1:
        return True
    adj: dict[int, list[int]] = {v: [] for v in range(1, g.n + 1)}
    for u, v in g.edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    seen = {1}
    queue = deque([1])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == g.n


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.split("\n"):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    return lines


def read_graph(text: str) -> Graph | WeightedGraph:
    """Parse the graph text format.

    Header: ``graph <directed|undirected> <n> <m> [weighted]`` followed by m
    edge lines ``e <u> <v>`` (``e <u> <v> <w>`` when weighted).
    """
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty input")
    head = lines[0].split()
    if len(head) not in (4, 5) or head[0] != "graph":
        raise GraphFormatError(f"malformed header: {lines[0]!r}")
    if head[1] not in ("directed", "undirected"):
        raise GraphFormatError(f"unknown orientation {head[1]!r}")
    directed = head[1] == "directed"
    weighted = len(head) == 5
    if weighted and head[4] != "weighted":
        raise GraphFormatError(f"unexpected header token {head[4]!r}")
    if weighted and directed:
        raise GraphFormatError("weighted graphs must be undirected")
    try:
        n, m = int(head[2]), int(head[3])
    except ValueError as exc:
        raise GraphFormatError(f"non-integer counts in header: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}")
    edges: set[tuple[int, int]] = set()
    weights: dict[tuple[int, int], int] = {}
    for line in body:
        parts = line.split()
        want = 4 if weighted else 3
        if len(parts) != want or parts[0] != "e":
            raise GraphFormatError(f"malformed edge line: {line!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
            w = int(parts[3]) if weighted else None
        except ValueError as exc:
            raise GraphFormatError(f"non-integer field in {line!r}") from exc
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"endpoint out of range in {line!r}")
        e = canonical_edge(directed, u, v)
        if e in edges:
            raise GraphFormatError(f"duplicate edge {e}")
        edges.add(e)
        if weighted:
            if w < 0:
                raise GraphFormatError(f"negative weight in {line!r}")
            weights[e] = w
    g = Graph(directed=directed, n=n, edges=frozenset(edges))
    if weighted:
        return WeightedGraph(graph=g, weights=weights)
    return g


def write_graph(g: Graph | WeightedGraph) -> str:
    """Canonical serialization: edges sorted lexicographically, LF line endings."""
    weighted = isinstance(g, WeightedGraph)
    base = g.graph if weighted else g
    kind = "directed" if base.directed else "undirected"
    head = f"graph {kind} {base.n} {base.m}" + (" weighted" if weighted else "")
    out = [head]
    for u, v in sorted(base.edges):
        if weighted:
            out.append(f"e {u} {v} {g.weights[(u, v)]}")
        else:
            out.append(f"e {u} {v}")
    return "\n".join(out) + "\n"


def read_shores(text: str) -> ShorePartition:
    """Parse a shore file: two lines ``shore1 <k> <v...>`` and ``shore2 <k> <v...>``."""
    lines = _content_lines(text)
    if len(lines) != 2:
        raise GraphFormatError("shore file needs exactly two content lines")
    sets = []
    for line, tag in zip(lines, ("shore1", "shore2")):
        parts = line.split()
        if len(parts) < 2 or parts[0] != tag:
            raise GraphFormatError(f"malformed shore line: {line!r}")
        try:
            k = int(parts[1])
            vs = [int(x) for x in parts[2:]]
        except ValueError as exc:
            raise GraphFormatError(f"non-integer field in {line!r}") from exc
        if len(vs) != k:
            raise GraphFormatError(f"shore line declares {k} vertices, found {len(vs)}")
        sets.append(frozenset(vs))
    return ShorePartition(shore1=sets[0], shore2=sets[1])


def write_shores(shores: ShorePartition) -> str:
    out = []
    for tag, vs in (("shore1", sorted(shores.shore1)), ("shore2", sorted(shores.shore2))):
        out.append(" ".join([tag, str(len(vs))] + [str(v) for v in vs]))
    return "\n".join(out) + "\n"
