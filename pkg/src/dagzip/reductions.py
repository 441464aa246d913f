"""Hardness-reduction constructions around set cover.

The pipeline: close a set family under singletons and initial segments
(standard order), encode families as twinned incidence graphs (two twin
source vertices per set), build the canonical compression of a closed
family, and emit the three machine-checkable reduction outputs: a
minimum-compression decision instance, an edge-addition update instance,
and an edge-deletion update instance. An exhaustive set-cover solver and
the two-sided growth check for adding one set to a family serve as the
verification oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .compression import DagCompression
from .graphs import Graph, ShorePartition
from .oracle import twinned_optimum


class SetCoverFormatError(ValueError):
    """Raised for malformed set-cover text."""


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe {1..n}, a collection of distinct non-empty subsets, and a budget."""

    n: int
    sets: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        uni = self.universe
        for s in self.sets:
            if not s:
                raise ValueError("empty set in collection")
            if not s <= uni:
                raise ValueError(f"set {sorted(s)} not inside the universe 1..{self.n}")
        if len(set(self.sets)) != len(self.sets):
            raise ValueError("sets must be pairwise distinct")

    @property
    def universe(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))


def read_setcover(text: str) -> SetCoverInstance:
    """Parse ``setcover <n> <|T|> <k>`` followed by ``s <id> <e1> <e2> ...`` lines."""
    lines = [l.strip() for l in text.split("\n") if l.strip() and not l.strip().startswith("#")]
    if not lines:
        raise SetCoverFormatError("empty input")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "setcover":
        raise SetCoverFormatError(f"malformed header: {lines[0]!r}")
    try:
        n, t, k = int(head[1]), int(head[2]), int(head[3])
    except ValueError as exc:
        raise SetCoverFormatError("non-integer header field") from exc
    if len(lines) - 1 != t:
        raise SetCoverFormatError(f"header declares {t} sets, found {len(lines) - 1}")
    sets = []
    for i, line in enumerate(lines[1:], start=1):
        parts = line.split()
        if len(parts) < 3 or parts[0] != "s":
            raise SetCoverFormatError(f"malformed set line: {line!r}")
        try:
            sid = int(parts[1])
            elems = [int(x) for x in parts[2:]]
        except ValueError as exc:
            raise SetCoverFormatError(f"non-integer field in {line!r}") from exc
        if sid != i:
            raise SetCoverFormatError(f"set ids must be 1..{t} in order, got {sid}")
        sets.append(frozenset(elems))
    try:
        return SetCoverInstance(n=n, sets=tuple(sets), k=k)
    except ValueError as exc:
        raise SetCoverFormatError(str(exc)) from exc


def write_setcover(inst: SetCoverInstance) -> str:
    out = [f"setcover {inst.n} {len(inst.sets)} {inst.k}"]
    for i, s in enumerate(inst.sets, start=1):
        out.append("s " + " ".join([str(i)] + [str(e) for e in sorted(s)]))
    return "\n".join(out) + "\n"


def _standard_sort(sets) -> tuple[frozenset[int], ...]:
    return tuple(sorted(sets, key=lambda s: (len(s), sorted(s))))


@dataclass(frozen=True)
class ClosedFamily:
    """Sets in standard order: all singletons of the universe, then every
    non-empty initial segment of every member, non-decreasing by size."""

    universe_size: int
    sets: tuple[frozenset[int], ...]
    origin: tuple[bool, ...]

    @property
    def m(self) -> int:
        return len(self.sets)

    def index_of(self, s: frozenset[int]) -> int:
        return self.sets.index(frozenset(s))

    def check_closed(self) -> None:
        present = set(self.sets)
        for e in range(1, self.universe_size + 1):
            if frozenset((e,)) not in present:
                raise ValueError(f"singleton {{{e}}} missing, family not closed")
        for s in self.sets:
            ordered = sorted(s)
            for i in range(1, len(ordered)):
                if frozenset(ordered[:i]) not in present:
                    raise ValueError(f"initial segment {ordered[:i]} of {ordered} missing")
        if list(self.sets) != list(_standard_sort(self.sets)):
            raise ValueError("family not in standard order")


def _close(sets, universe_size: int, origin_sets) -> ClosedFamily:
    family: set[frozenset[int]] = {frozenset((e,)) for e in range(1, universe_size + 1)}
    for s in sets:
        ordered = sorted(s)
        for i in range(1, len(ordered) + 1):
            family.add(frozenset(ordered[:i]))
    ordered_sets = _standard_sort(family)
    origin = tuple(s in set(origin_sets) for s in ordered_sets)
    return ClosedFamily(universe_size=universe_size, sets=ordered_sets, origin=origin)


def close_standard_order(inst: SetCoverInstance) -> ClosedFamily:
    """Standard-order closure of the instance's collection.

    Requires the trivial cases to be out of the way: the collection covers
    the universe and the universe itself is not a member. The added sets are
    unions of nothing new, so the minimum cover size is unchanged.
    """
    union = frozenset().union(*inst.sets) if inst.sets else frozenset()
    if union != inst.universe:
        raise ValueError("collection does not cover the universe")
    if inst.universe in inst.sets:
        raise ValueError("universe must not be a member of the collection")
    return _close(inst.sets, inst.n, inst.sets)


@dataclass(frozen=True)
class TwinnedGraph:
    """Bipartite encoding of a set family with two twin source vertices per set.

    Element e of the universe is vertex e; set i (0-based) gets sources
    a = universe_size + 2i + 1 and b = universe_size + 2i + 2.
    """

    graph: Graph
    shores: ShorePartition
    sets: tuple[frozenset[int], ...]
    universe_size: int

    def a_vertex(self, i: int) -> int:
        return self.universe_size + 2 * i + 1

    def b_vertex(self, i: int) -> int:
        return self.universe_size + 2 * i + 2


def twinned_incidence(sets, universe_size: int | None = None) -> TwinnedGraph:
    """The twinned incidence graph of a set family."""
    if isinstance(sets, ClosedFamily):
        universe_size = sets.universe_size
        sets = sets.sets
    if universe_size is None:
        raise ValueError("universe_size required for a raw set list")
    sets = tuple(frozenset(s) for s in sets)
    n = universe_size + 2 * len(sets)
    edges: set[tuple[int, int]] = set()
    for i, s in enumerate(sets):
        a = universe_size + 2 * i + 1
        b = a + 1
        for e in s:
            edges.add((a, e))
            edges.add((b, e))
    graph = Graph(directed=True, n=n, edges=frozenset(edges))
    shores = ShorePartition(
        shore1=frozenset(range(universe_size + 1, n + 1)),
        shore2=frozenset(range(1, universe_size + 1)),
    )
    return TwinnedGraph(graph=graph, shores=shores, sets=sets, universe_size=universe_size)


def closure_compression_size(family: ClosedFamily) -> int:
    """Size of the canonical compression: 2 edges per set plus 2 arcs per
    non-singleton set (2p + 4q for p singletons and q larger sets)."""
    q = sum(1 for s in family.sets if len(s) >= 2)
    return 2 * family.m + 2 * q


def canonical_closure_compression(
    family: ClosedFamily, extra_sinks: int = 0
) -> DagCompression:
    """Compression of the twinned incidence graph of a closed family.

    Each singleton's twins connect straight to the element; each larger set
    S gets a cluster vertex with two arcs, one to the cluster of the initial
    segment missing max(S) and one to the sink max(S), plus one compression
    edge from each twin. extra_sinks appends unconnected sink ids (used by
    the update reductions for their distinguished vertex).
    """
    family.check_closed()
    u = family.universe_size
    m = family.m
    n_sinks = u + 2 * m + extra_sinks
    non_singletons = [i for i, s in enumerate(family.sets) if len(s) >= 2]
    cid = {family.sets[i]: n_sinks + 1 + j for j, i in enumerate(non_singletons)}

    def rep(s: frozenset[int]) -> int:
        if len(s) == 1:
            return next(iter(s))
        return cid[s]

    arcs: set[tuple[int, int]] = set()
    cedges: set[tuple[int, int]] = set()
    for i, s in enumerate(family.sets):
        a = u + 2 * i + 1
        b = a + 1
        target = rep(s)
        cedges.add((a, target))
        cedges.add((b, target))
        if len(s) >= 2:
            top = max(s)
            segment = s - {top}
            arcs.add((cid[s], rep(segment)))
            arcs.add((cid[s], top))
    return DagCompression(
        directed=True,
        n_sinks=n_sinks,
        n_clusters=len(non_singletons),
        arcs=frozenset(arcs),
        cedges=frozenset(cedges),
    )


@dataclass
class MindagInstance:
    """Instance of the minimum-compression decision problem."""

    twinned: TwinnedGraph
    k_prime: int
    family: ClosedFamily
    meta: dict = field(default_factory=dict)

    @property
    def graph(self) -> Graph:
        return self.twinned.graph


def reduce_mindag(inst: SetCoverInstance) -> MindagInstance:
    """Set cover -> minimum DAG compression.

    The question becomes: does the twinned incidence graph of the closure
    with the universe appended admit a compression of size at most
    k' = s + k + 2, where s = 2p + 4q is the optimal compression size of the
    closure's own twinned incidence graph. A cover of size k buys the
    universe's cluster vertex its k arcs; anything cheaper would yield a
    cheaper cover.
    """
    family = close_standard_order(inst)
    s_closure = closure_compression_size(family)
    target_sets = family.sets + (inst.universe,)
    twinned = twinned_incidence(target_sets, inst.n)
    k_prime = s_closure + inst.k + 2
    meta = {
        "n": inst.n,
        "k": inst.k,
        "m_closure": family.m,
        "m_with_target": family.m + 1,
        "s_closure": s_closure,
    }
    return MindagInstance(twinned=twinned, k_prime=k_prime, family=family, meta=meta)


@dataclass
class AddInstance:
    """Instance of the edge-addition update problem.

    graph is the twinned incidence graph of the infected closure plus one
    extra source s connected to every universe element except the infection
    element 1; compression is its (optimal) compression; new_edge = (s, 1).
    """

    graph: Graph
    shores: ShorePartition
    compression: DagCompression
    new_edge: tuple[int, int]
    k_new: int
    family: ClosedFamily
    s_vertex: int
    meta: dict = field(default_factory=dict)


def _shift_instance(inst: SetCoverInstance) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(e + 1 for e in s) for s in inst.sets)


def reduce_add(inst: SetCoverInstance) -> AddInstance:
    """Set cover -> single-edge-addition update instance.

    Elements shift to 2..n+1 and every set is infected with element 1; the
    closure then has all its non-singleton sets infected. The extra source s
    is connected to 2..n+1 only, so no infected cluster may serve it and its
    edges stay direct in the optimal compression. Adding (s, 1) lets s reach
    the infected clusters of a minimum cover.
    """
    union = frozenset().union(*inst.sets) if inst.sets else frozenset()
    if union != inst.universe:
        raise ValueError("collection does not cover the universe")
    if inst.universe in inst.sets:
        raise ValueError("universe must not be a member of the collection")
    shifted = _shift_instance(inst)
    infected = tuple(s | {1} for s in shifted)
    family = _close(infected, inst.n + 1, infected)
    twinned = twinned_incidence(family)
    s_vertex = twinned.graph.n + 1
    extra_edges = {(s_vertex, e) for e in range(2, inst.n + 2)}
    graph = Graph(
        directed=True,
        n=s_vertex,
        edges=twinned.graph.edges | frozenset(extra_edges),
    )
    shores = ShorePartition(
        shore1=twinned.shores.shore1 | {s_vertex},
        shore2=twinned.shores.shore2,
    )
    base = canonical_closure_compression(family, extra_sinks=1)
    compression = DagCompression(
        directed=True,
        n_sinks=base.n_sinks,
        n_clusters=base.n_clusters,
        arcs=base.arcs,
        cedges=base.cedges | frozenset(extra_edges),
    )
    b_size = closure_compression_size(family)
    meta = {
        "n": inst.n,
        "k": inst.k,
        "m": family.m,
        "base_size": b_size,
        "compression_size": b_size + inst.n,
    }
    return AddInstance(
        graph=graph,
        shores=shores,
        compression=compression,
        new_edge=(s_vertex, 1),
        k_new=inst.k + b_size,
        family=family,
        s_vertex=s_vertex,
        meta=meta,
    )


def add_witness(ai: AddInstance, cover_indices: tuple[int, ...], inst: SetCoverInstance) -> DagCompression:
    """The yes-direction compression after adding (s, 1): s keeps one
    compression edge per cover set, pointed at the set's infected cluster."""
    family = ai.family
    d = ai.compression
    drop = {(ai.s_vertex, e) for e in range(2, inst.n + 2)}
    cedges = set(d.cedges) - drop
    non_singletons = [i for i, s in enumerate(family.sets) if len(s) >= 2]
    cid = {family.sets[i]: d.n_sinks + 1 + j for j, i in enumerate(non_singletons)}
    for idx in cover_indices:
        infected = frozenset(e + 1 for e in inst.sets[idx]) | {1}
        cedges.add((ai.s_vertex, cid[infected]))
    return DagCompression(
        directed=True,
        n_sinks=d.n_sinks,
        n_clusters=d.n_clusters,
        arcs=d.arcs,
        cedges=frozenset(cedges),
    )


@dataclass
class DeleteInstance:
    """Instance of the edge-deletion update problem."""

    graph: Graph
    shores: ShorePartition
    compression: DagCompression
    removed_edge: tuple[int, int]
    k_new: int
    family: ClosedFamily
    full_set_index: int
    meta: dict = field(default_factory=dict)


def reduce_delete(inst: SetCoverInstance) -> DeleteInstance:
    """Set cover -> single-edge-deletion update instance.

    Elements shift to 2..n+1 and the full set {1..n+1} joins the collection;
    the closure contains its whole prefix chain. Removing the edge from one
    of the full set's twins to element 1 forbids that twin every infected
    cluster, so it must fall back on a minimum cover by the uninfected
    original sets. The optimum after deletion drops by 2 before the cover
    cost is added: the full set's cluster disappears and its other twin
    switches to the longest proper prefix plus the top element.
    """
    union = frozenset().union(*inst.sets) if inst.sets else frozenset()
    if union != inst.universe:
        raise ValueError("collection does not cover the universe")
    if inst.universe in inst.sets:
        raise ValueError("universe must not be a member of the collection")
    shifted = _shift_instance(inst)
    full = frozenset(range(1, inst.n + 2))
    family = _close(shifted + (full,), inst.n + 1, shifted + (full,))
    twinned = twinned_incidence(family)
    compression = canonical_closure_compression(family)
    b_size = closure_compression_size(family)
    j = family.index_of(full)
    removed = (twinned.a_vertex(j), 1)
    meta = {
        "n": inst.n,
        "k": inst.k,
        "m": family.m,
        "base_size": b_size,
        "compression_size": b_size,
    }
    return DeleteInstance(
        graph=twinned.graph,
        shores=twinned.shores,
        compression=compression,
        removed_edge=removed,
        k_new=inst.k + b_size - 2,
        family=family,
        full_set_index=j,
        meta=meta,
    )


def delete_witness(
    di: DeleteInstance, cover_indices: tuple[int, ...], inst: SetCoverInstance
) -> DagCompression:
    """The yes-direction compression after deleting the edge.

    The full set's cluster is dropped; its b-twin covers the universe via the
    longest proper prefix plus the top sink, and the a-twin covers 2..n+1 via
    the clusters of the chosen (uninfected) cover sets.
    """
    family = di.family
    u = family.universe_size
    full = frozenset(range(1, u + 1))
    n_sinks = di.compression.n_sinks
    non_singletons = [
        i for i, s in enumerate(family.sets) if len(s) >= 2 and s != full
    ]
    cid = {family.sets[i]: n_sinks + 1 + j for j, i in enumerate(non_singletons)}

    def rep(s: frozenset[int]) -> int:
        return next(iter(s)) if len(s) == 1 else cid[s]

    arcs: set[tuple[int, int]] = set()
    cedges: set[tuple[int, int]] = set()
    for i, s in enumerate(family.sets):
        a = u + 2 * i + 1
        b = a + 1
        if s == full:
            prefix = full - {u}
            cedges.add((b, rep(prefix)))
            cedges.add((b, u))
            for idx in cover_indices:
                cedges.add((a, rep(frozenset(e + 1 for e in inst.sets[idx]))))
            continue
        cedges.add((a, rep(s)))
        cedges.add((b, rep(s)))
        if len(s) >= 2:
            top = max(s)
            arcs.add((cid[s], rep(s - {top})))
            arcs.add((cid[s], top))
    return DagCompression(
        directed=True,
        n_sinks=n_sinks,
        n_clusters=len(non_singletons),
        arcs=frozenset(arcs),
        cedges=frozenset(cedges),
    )


def setcover_exhaustive(inst: SetCoverInstance, max_sets: int = 20) -> tuple[int, tuple[int, ...]]:
    """Exact minimum cover size with a witness of 0-based set indices."""
    if len(inst.sets) > max_sets:
        raise ValueError(f"instance has more than {max_sets} sets")
    universe = inst.universe
    covered_all = frozenset().union(*inst.sets) if inst.sets else frozenset()
    if not covered_all >= universe:
        raise ValueError("universe cannot be covered")
    indices = range(len(inst.sets))
    for r in range(0, len(inst.sets) + 1):
        for combo in itertools.combinations(indices, r):
            covered = frozenset().union(*(inst.sets[i] for i in combo)) if combo else frozenset()
            if covered >= universe:
                return r, combo
    raise ValueError("universe cannot be covered")


@dataclass
class SandwichReport:
    """Result of the two-sided check for adding one set R to a family:
    s + k_sup + 2 <= s' <= s + k_eq + 2 (k_eq None when no exact cover exists)."""

    k_eq: int | None
    k_sup: int
    s: int
    s_prime: int
    holds: bool


def check_sandwich(sets, new_set, universe_size: int) -> SandwichReport:
    """Verify the optimal-size sandwich when new_set joins the family.

    Requires the new set to be inside the universe, coverable by the family,
    and not a subset of any single member. Optimal sizes come from the exact
    bipartite oracle, so the universe must stay tiny.
    """
    sets = tuple(frozenset(s) for s in sets)
    r = frozenset(new_set)
    if not r:
        raise ValueError("new set must be non-empty")
    if not r <= frozenset(range(1, universe_size + 1)):
        raise ValueError("new set outside the universe")
    if any(r <= s for s in sets):
        raise ValueError("new set must not be a subset of an existing member")
    if not r <= (frozenset().union(*sets) if sets else frozenset()):
        raise ValueError("new set not coverable by the family")

    k_sup = None
    for size in range(1, len(sets) + 1):
        for combo in itertools.combinations(sets, size):
            if frozenset().union(*combo) >= r:
                k_sup = size
                break
        if k_sup is not None:
            break
    assert k_sup is not None

    k_eq = None
    inside = [s for s in sets if s <= r]
    for size in range(1, len(inside) + 1):
        for combo in itertools.combinations(inside, size):
            if frozenset().union(*combo) == r:
                k_eq = size
                break
        if k_eq is not None:
            break

    s, _ = twinned_optimum(sets, universe_size)
    s_prime, _ = twinned_optimum(sets + (r,), universe_size)
    holds = (s + k_sup + 2 <= s_prime) and (k_eq is None or s_prime <= s + k_eq + 2)
    return SandwichReport(k_eq=k_eq, k_sup=k_sup, s=s, s_prime=s_prime, holds=holds)
