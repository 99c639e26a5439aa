"""Core graph abstraction: adjacency oracles over canonical byte-string keys.

Graphs here are typically infinite, so they are never materialized.  An
oracle answers neighbor queries for canonically encoded vertex keys; balls
are the only explicit finite views.  Keys are ``bytes`` and two keys are
equal iff they denote the same vertex, with the lexicographic byte order
used for all deterministic tie-breaking.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import InvalidVertex, RadiusTooSmall

VertexKey = bytes


class GraphOracle:
    """Adjacency oracle over canonical vertex keys.

    Subclasses implement ``_neighbors`` and ``check_key``; both must be
    pure and deterministic, so oracles are safely shareable (read-only)
    across parallel workers.  ``degree_bound`` bounds every vertex degree
    and ``transitivity`` is a hint: ``("vertex-transitive", 1)`` or
    ``("quasi-transitive", k)`` with k the fundamental-domain size.
    """

    degree_bound: int = 0
    transitivity: tuple[str, int] = ("quasi-transitive", 0)

    def check_key(self, key: VertexKey) -> None:
        """Raise InvalidVertex if ``key`` does not denote a vertex."""
        raise NotImplementedError

    def _neighbors(self, key: VertexKey) -> tuple[VertexKey, ...]:
        raise NotImplementedError

    def neighbors(self, key: VertexKey) -> tuple[VertexKey, ...]:
        """Sorted, duplicate-free adjacency list of ``key``."""
        self.check_key(key)
        return self._neighbors(key)


class NeighborCache:
    """Memoizing wrapper used by the enumeration engines.

    The cache belongs to the engine run, not to the oracle, which keeps
    oracles immutable and picklable for worker processes.
    """

    __slots__ = ("oracle", "_memo")

    def __init__(self, oracle: GraphOracle):
        self.oracle = oracle
        self._memo: dict[VertexKey, tuple[VertexKey, ...]] = {}

    def __call__(self, key: VertexKey) -> tuple[VertexKey, ...]:
        t = self._memo.get(key)
        if t is None:
            t = self.oracle.neighbors(key)
            self._memo[key] = t
        return t


def distance(g: GraphOracle, u: VertexKey, v: VertexKey, cap: int) -> int | None:
    """BFS graph distance from u to v, or None if it exceeds ``cap``."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    g.check_key(u)
    g.check_key(v)
    if u == v:
        return 0
    seen = {u}
    frontier = [u]
    for d in range(1, cap + 1):
        nxt = []
        for w in frontier:
            for x in g.neighbors(w):
                if x == v:
                    return d
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        if not nxt:
            return None
        frontier = nxt
    return None


def distance_labels(g: GraphOracle, v: VertexKey, r: int) -> dict[VertexKey, int]:
    """Map every vertex within distance r of v to its exact distance."""
    if r < 0:
        raise ValueError("radius must be >= 0")
    g.check_key(v)
    labels = {v: 0}
    frontier = [v]
    for d in range(1, r + 1):
        nxt = []
        for w in frontier:
            for x in g.neighbors(w):
                if x not in labels:
                    labels[x] = d
                    nxt.append(x)
        if not nxt:
            break
        frontier = nxt
    return labels


def shortest_path(
    g: GraphOracle,
    u: VertexKey,
    targets: set[VertexKey] | frozenset[VertexKey],
    cap: int,
    forbidden: set[VertexKey] | frozenset[VertexKey] = frozenset(),
) -> tuple[VertexKey, ...] | None:
    """Deterministic BFS shortest path from u to the nearest target vertex.

    Equal-distance parents are tie-broken by key order, so reruns yield the
    identical path.  Vertices in ``forbidden`` are never entered.  Returns
    the path as a tuple starting at u, or None if no target is within cap.
    """
    g.check_key(u)
    if u in targets:
        return (u,)
    parent: dict[VertexKey, VertexKey] = {u: u}
    frontier = [u]
    for _ in range(cap):
        nxt = []
        hit: VertexKey | None = None
        for w in frontier:
            for x in g.neighbors(w):
                if x in parent or x in forbidden:
                    continue
                parent[x] = w
                nxt.append(x)
                if x in targets and (hit is None or x < hit):
                    hit = x
        if hit is not None:
            path = [hit]
            while path[-1] != u:
                path.append(parent[path[-1]])
            path.reverse()
            return tuple(path)
        if not nxt:
            return None
        frontier = sorted(nxt)
    return None


@dataclass(frozen=True)
class BallGraph:
    """Explicit induced subgraph on a ball, with sorted vertex/edge lists."""

    center: VertexKey
    radius: int
    vertices: tuple[VertexKey, ...]
    edges: tuple[tuple[VertexKey, VertexKey], ...]

    def to_json(self) -> dict:
        return {
            "center": self.center.decode(),
            "radius": self.radius,
            "vertices": [v.decode() for v in self.vertices],
            "edges": [[a.decode(), b.decode()] for a, b in self.edges],
        }


def ball(g: GraphOracle, v: VertexKey, r: int) -> BallGraph:
    """Induced subgraph on all vertices at distance <= r from v."""
    labels = distance_labels(g, v, r)
    verts = sorted(labels)
    vset = set(verts)
    edges = []
    for a in verts:
        for b in g.neighbors(a):
            if b in vset and a < b:
                edges.append((a, b))
    edges.sort()
    return BallGraph(center=v, radius=r, vertices=tuple(verts), edges=tuple(edges))


@dataclass(frozen=True)
class ComponentInfo:
    representative: VertexKey
    size: int
    touches_boundary: bool


@dataclass(frozen=True)
class ComponentReport:
    """Components of ball(center, radius) minus a removed vertex set.

    ``touches_boundary`` marks components that reach the sphere of radius
    ``radius``; this is necessary but not sufficient for the component to
    be infinite, so the report is a semi-decision at the chosen radius.
    """

    removed: frozenset[VertexKey]
    center: VertexKey
    radius: int
    components: tuple[ComponentInfo, ...]
    labels: dict[VertexKey, int] = field(compare=False, default_factory=dict)

    @property
    def boundary_touching_count(self) -> int:
        return sum(1 for c in self.components if c.touches_boundary)

    def component_of(self, key: VertexKey) -> int | None:
        return self.labels.get(key)

    def to_json(self) -> dict:
        return {
            "removed": sorted(k.decode() for k in self.removed),
            "center": self.center.decode(),
            "radius": self.radius,
            "components": [
                {
                    "representative": c.representative.decode(),
                    "size": c.size,
                    "touches_boundary": c.touches_boundary,
                }
                for c in self.components
            ],
        }


def components_after_removal(
    g: GraphOracle,
    removed: set[VertexKey] | frozenset[VertexKey],
    center: VertexKey,
    radius: int,
) -> ComponentReport:
    """Flood-fill component labels of ball(center, radius) minus ``removed``.

    All removed vertices must lie inside the ball (else RadiusTooSmall):
    otherwise the removal would be invisible at this radius and the report
    meaningless.
    """
    labels_all = distance_labels(g, center, radius)
    removed = frozenset(removed)
    for k in removed:
        g.check_key(k)
        if k not in labels_all:
            raise RadiusTooSmall(
                f"removed vertex {k!r} is outside ball(center, {radius})"
            )
    shell = {k for k, d in labels_all.items() if d == radius}
    remaining = set(labels_all) - removed
    comp_id: dict[VertexKey, int] = {}
    infos: list[ComponentInfo] = []
    for start in sorted(remaining):
        if start in comp_id:
            continue
        cid = len(infos)
        comp_id[start] = cid
        queue = deque([start])
        members = [start]
        touches = start in shell
        while queue:
            w = queue.popleft()
            for x in g.neighbors(w):
                if x in remaining and x not in comp_id:
                    comp_id[x] = cid
                    members.append(x)
                    queue.append(x)
                    if x in shell:
                        touches = True
        infos.append(
            ComponentInfo(
                representative=min(members), size=len(members), touches_boundary=touches
            )
        )
    return ComponentReport(
        removed=removed,
        center=center,
        radius=radius,
        components=tuple(infos),
        labels=comp_id,
    )


def check_symmetry(g: GraphOracle, sample: list[VertexKey]) -> None:
    """Assert u in N(v) iff v in N(u), no self-loops, degree bound respected."""
    for v in sample:
        nb = g.neighbors(v)
        if len(nb) != len(set(nb)):
            raise InvalidVertex(f"duplicate neighbors at {v!r}")
        if v in nb:
            raise InvalidVertex(f"self-loop at {v!r}")
        if g.degree_bound and len(nb) > g.degree_bound:
            raise InvalidVertex(f"degree bound exceeded at {v!r}")
        for w in nb:
            if v not in g.neighbors(w):
                raise InvalidVertex(f"asymmetric edge {v!r} -> {w!r}")
