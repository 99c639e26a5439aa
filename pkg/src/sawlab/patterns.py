"""Cut-set model and pattern-event machinery for self-avoiding walks.

A cut set is a finite connected vertex set S (optionally enlarged to S')
together with a group action whose orbit produces the translated copies.
Events on an n-step walk pi, at step j:

  full-visit   there is a copy gS containing pi(j) all of whose vertices
               the walk visits;
  k-visit      a copy gS containing pi(j) with at least k vertices visited
               (over S' for the "cal" variants; the tilde variants are the
               union with the full-visit event);
  windowed     the (m)-localized variant evaluates the event on the subwalk
               pi(j-m..j+m), truncated at the walk ends;
  crossing     the F event additionally requires the walk to enter and
               leave the copy in distinct components of the graph minus
               the copy.

Restricted tables count walks on which an event occurs at no more than r
distinct steps; their n-th roots estimate the growth rate lambda(E), which
the pattern theorem compares with the connective constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidParameter, RadiusTooSmall
from .graph import (
    GraphOracle,
    NeighborCache,
    VertexKey,
    components_after_removal,
    shortest_path,
)
from .saw import CountTable, Walk

CopyHit = tuple[frozenset, object]  # (copy vertex set, translation mapping S onto it)


class _MemoizedOrbit:
    """Base class caching copies_through per (vertex, base) pair."""

    def __init__(self):
        self._memo: dict = {}

    def copies_through(self, v: VertexKey, base: tuple[VertexKey, ...]) -> tuple[CopyHit, ...]:
        key = (v, base)
        hits = self._memo.get(key)
        if hits is None:
            hits = self._compute(v, base)
            self._memo[key] = hits
        return hits


class ShiftOrbit(_MemoizedOrbit):
    """Orbit of horizontal integer shifts, optionally restricted to step.Z."""

    def __init__(self, step: int = 1):
        super().__init__()
        if step < 1:
            raise InvalidParameter("shift step must be >= 1")
        self.step = step

    def _compute(self, v: VertexKey, base: tuple[VertexKey, ...]) -> tuple[CopyHit, ...]:
        from .lattices import LatticeShift, dec_xy, enc_xy

        x, y = dec_xy(v)
        hits = {}
        for s in base:
            sx, sy = dec_xy(s)
            if sy != y:
                continue
            k = x - sx
            if k % self.step or k in hits:
                continue
            copy = frozenset(enc_xy(bx + k, by) for bx, by in map(dec_xy, base))
            hits[k] = (copy, LatticeShift(k))
        return tuple(hits[k] for k in sorted(hits))


class LeftMulOrbit(_MemoizedOrbit):
    """Orbit of left multiplications on a Cayley oracle: gamma = v . s^-1."""

    def __init__(self, oracle):
        super().__init__()
        self.oracle = oracle

    def _compute(self, v: VertexKey, base: tuple[VertexKey, ...]) -> tuple[CopyHit, ...]:
        from .cayley import LeftMulTranslation

        ve = self.oracle.element(v)
        seen: dict[frozenset, CopyHit] = {}
        for s in sorted(base):
            g = ve * self.oracle.element(s).inverse()
            copy = frozenset((g * self.oracle.element(b)).key() for b in base)
            if copy not in seen:
                seen[copy] = (copy, LeftMulTranslation(self.oracle, g))
        return tuple(seen[c] for c in sorted(seen, key=sorted))


class FreeProductOrbit(_MemoizedOrbit):
    """Orbit of left multiplications on a free-product graph with group factors."""

    def __init__(self, graph):
        super().__init__()
        graph._require_groups()
        self.graph = graph

    def _compute(self, v: VertexKey, base: tuple[VertexKey, ...]) -> tuple[CopyHit, ...]:
        from .freeprod import FreeProductLeftMul, encode_word

        vw = self.graph.decode(v)
        seen: dict[frozenset, CopyHit] = {}
        for s in sorted(base):
            g = self.graph.word_mul(vw, self.graph.word_inv(self.graph.decode(s)))
            copy = frozenset(
                encode_word(self.graph.word_mul(g, self.graph.decode(b))) for b in base
            )
            if copy not in seen:
                seen[copy] = (copy, FreeProductLeftMul(self.graph, g))
        return tuple(seen[c] for c in sorted(seen, key=sorted))


@dataclass(frozen=True)
class CutSet:
    """Finite connected cut set S, optional enlargement S', and its orbit action."""

    S: frozenset
    orbit: object
    S_prime: frozenset | None = None
    connectivity_radius: int = 8

    def __post_init__(self):
        if not self.S:
            raise InvalidParameter("cut set S is empty")
        if self.S_prime is not None and not self.S <= self.S_prime:
            raise InvalidParameter("S must be contained in S_prime")

    @property
    def base_S(self) -> tuple:
        return tuple(sorted(self.S))

    @property
    def base_Sprime(self) -> tuple:
        if self.S_prime is None:
            raise InvalidParameter("cut set has no S_prime")
        return tuple(sorted(self.S_prime))

    def copies_S(self, v: VertexKey) -> tuple[CopyHit, ...]:
        return self.orbit.copies_through(v, self.base_S)

    def copies_Sprime(self, v: VertexKey) -> tuple[CopyHit, ...]:
        return self.orbit.copies_through(v, self.base_Sprime)


ENLARGED_TAGS = frozenset({"calek", "calektilde"})
VALID_TAGS = frozenset({"estar", "ek", "ektilde", "calek", "calektilde", "f"})


@dataclass(frozen=True)
class EventKind:
    """Which pattern event to detect or count.

    tag: estar, ek, ektilde, calek, calektilde, or f.  k is the visit level
    for the k-variants; m the localization window; regime selects the F
    branch ("lt" when the full-visit growth rate sits below mu, "eq" with a
    level k otherwise).
    """

    tag: str
    k: int | None = None
    m: int | None = None
    regime: str | None = None

    def __post_init__(self):
        if self.tag not in VALID_TAGS:
            raise InvalidParameter(f"unknown event tag {self.tag!r}")
        if self.tag in ("ek", "ektilde", "calek", "calektilde") and (
            self.k is None or self.k < 1
        ):
            raise InvalidParameter(f"event {self.tag} needs k >= 1")
        if self.m is not None and self.m < 1:
            raise InvalidParameter("window m must be >= 1")
        if self.tag == "f":
            if self.regime not in ("lt", "eq"):
                raise InvalidParameter("F needs regime 'lt' or 'eq'")
            if self.m is None:
                raise InvalidParameter("F needs a window m")
            if self.regime == "eq" and (self.k is None or self.k < 1):
                raise InvalidParameter("F regime 'eq' needs a level k")

    def check_against(self, cs: CutSet) -> None:
        if self.tag in ("ek", "ektilde") and self.k > len(cs.S):
            raise InvalidParameter(f"k={self.k} exceeds |S|={len(cs.S)}")
        if self.tag in ENLARGED_TAGS and self.k > len(cs.base_Sprime):
            raise InvalidParameter(f"k={self.k} exceeds |S'|")
        if self.tag == "f" and self.regime == "eq" and self.k >= len(cs.S):
            raise InvalidParameter("F regime 'eq' needs k < |S|")


@dataclass(frozen=True)
class EventRecord:
    step_j: int
    tag: str
    witness_copy: frozenset
    witness_id: str
    visited_count: int
    alpha: int | None = None
    beta: int | None = None


class ComponentSplitOracle:
    """Cached flood fills: do two probes straddle a removed copy?

    Decided inside ball(min(copy), radius); exact whenever the radius
    comfortably covers both probes' true components near the copy, which
    the callers guarantee by sizing the radius from the walk length.
    """

    def __init__(self, g: GraphOracle, radius: int):
        self.g = g
        self.radius = radius
        self._cache: dict[frozenset, object] = {}

    def report(self, copy: frozenset):
        rep = self._cache.get(copy)
        if rep is None:
            rep = components_after_removal(self.g, copy, min(copy), self.radius)
            self._cache[copy] = rep
        return rep

    def split(self, copy: frozenset, p: VertexKey, q: VertexKey) -> bool:
        rep = self.report(copy)
        cp, cq = rep.component_of(p), rep.component_of(q)
        if cp is None or cq is None:
            raise RadiusTooSmall(
                "component probe outside the flood-fill ball; enlarge the radius"
            )
        return cp != cq


def _window(j: int, m: int | None, n: int) -> tuple[int, int]:
    if m is None:
        return 0, n
    return max(0, j - m), min(n, j + m)


def detect_events(
    g: GraphOracle,
    walk: Walk | tuple,
    cs: CutSet,
    kind: EventKind,
    splitter: ComponentSplitOracle | None = None,
) -> list[EventRecord]:
    """All steps of the walk at which the event occurs, with witnesses.

    One record per occurrence step, carrying the first qualifying copy in
    deterministic order.  The localized variants truncate the window at the
    walk ends.  A ComponentSplitOracle may be passed in to share its flood
    fills across many F detections.
    """
    verts = tuple(walk.vertices if isinstance(walk, Walk) else walk)
    n = len(verts) - 1
    kind.check_against(cs)
    if kind.tag == "f":
        return _detect_f(g, verts, cs, kind, splitter)
    copies_S = {u: cs.copies_S(u) for u in set(verts)}
    copies_Sp = (
        {u: cs.copies_Sprime(u) for u in set(verts)}
        if kind.tag in ENLARGED_TAGS
        else {}
    )
    vset = set(verts)
    records = []
    for j, u in enumerate(verts):
        lo, hi = _window(j, kind.m, n)
        wverts = set(verts[lo : hi + 1])
        hit = None
        if kind.tag == "estar":
            candidates = [(copies_S[u], None)]
        elif kind.tag in ("ek", "ektilde"):
            candidates = [(copies_S[u], kind.k)]
        elif kind.tag == "calek":
            candidates = [(copies_Sp[u], kind.k)]
        else:  # calektilde: k-visit over S' or full visit over S
            candidates = [(copies_Sp[u], kind.k), (copies_S[u], None)]
        for family, level in candidates:
            for copy, translation in family:
                visited = len(copy & wverts)
                need = len(copy) if level is None else level
                if visited >= need:
                    hit = (copy, translation, len(copy & vset))
                    break
            if hit:
                break
        if hit:
            copy, translation, total_visited = hit
            visit_steps = [i for i, w in enumerate(verts) if w in copy]
            records.append(
                EventRecord(
                    step_j=j,
                    tag=kind.tag,
                    witness_copy=copy,
                    witness_id=translation.name,
                    visited_count=total_visited,
                    alpha=min(visit_steps),
                    beta=max(visit_steps),
                )
            )
    return records


def _split_radius(cs: CutSet) -> int:
    # probes sit adjacent to the copy; same-side probes reconnect within a
    # small neighborhood on the supported graph families, so the flood
    # fills stay local even where balls grow exponentially
    return len(cs.S) + cs.connectivity_radius + 2


def _detect_f(
    g: GraphOracle,
    verts: tuple,
    cs: CutSet,
    kind: EventKind,
    splitter: ComponentSplitOracle | None = None,
) -> list[EventRecord]:
    n = len(verts) - 1
    m = kind.m
    if splitter is None:
        splitter = ComponentSplitOracle(g, radius=_split_radius(cs))
    copies_S = {u: cs.copies_S(u) for u in set(verts)}
    visit_steps: dict[frozenset, list[int]] = {}
    for i, u in enumerate(verts):
        for copy, _tr in copies_S[u]:
            visit_steps.setdefault(copy, []).append(i)
    records = []
    for j, u in enumerate(verts):
        for copy, translation in copies_S[u]:
            steps = visit_steps[copy]
            alpha, beta = steps[0], steps[-1]
            if kind.regime == "lt":
                if len(steps) != len(copy):
                    continue
            else:
                if len(steps) != kind.k:
                    continue
                # the level-(k+1) event must not occur at this step
                if any(
                    len(visit_steps[c]) >= kind.k + 1 or len(visit_steps[c]) == len(c)
                    for c, _t in copies_S[u]
                ):
                    continue
            lo, hi = _window(j, m, n)
            if not (lo <= alpha and beta <= hi):
                continue
            if alpha < 1 or beta > n - 1:
                continue
            if splitter.split(copy, verts[alpha - 1], verts[beta + 1]):
                records.append(
                    EventRecord(
                        step_j=j,
                        tag="f",
                        witness_copy=copy,
                        witness_id=translation.name,
                        visited_count=len(steps),
                        alpha=alpha,
                        beta=beta,
                    )
                )
                break
    return records


@dataclass(frozen=True)
class GrowthEstimate:
    """A restricted count table and its n-th roots over the computed window."""

    label: str
    table: CountTable
    lambda_roots: tuple[tuple[int, float], ...]
    window: tuple[int, int]

    @classmethod
    def from_counts(cls, label: str, origin: VertexKey, counts: list[int]):
        table = CountTable(origin=origin, entries=dict(enumerate(counts)))
        roots = tuple(
            (nn, counts[nn] ** (1.0 / nn))
            for nn in range(1, len(counts))
            if counts[nn] > 0
        )
        return cls(
            label=label, table=table, lambda_roots=roots, window=(0, len(counts) - 1)
        )


class _EventTracker:
    """Incremental sticky occurrence marks for the monotone event kinds.

    Extending a walk can only create occurrences, never destroy them
    (window truncation at the current end matches the definition for the
    current length), so each mark is pushed once and undone on backtrack.
    """

    def __init__(self, cs: CutSet, kind: EventKind):
        self.kind = kind
        self.cs = cs
        # families: list of (copies_cache, threshold_fn)
        fams = []
        if kind.tag == "estar":
            fams.append((cs.copies_S, None))
        elif kind.tag in ("ek", "ektilde"):
            fams.append((cs.copies_S, kind.k))
        elif kind.tag == "calek":
            fams.append((cs.copies_Sprime, kind.k))
        elif kind.tag == "calektilde":
            fams.append((cs.copies_Sprime, kind.k))
            fams.append((cs.copies_S, None))
        else:
            raise InvalidParameter(f"tracker does not support tag {kind.tag}")
        self.families = fams
        self._copy_cache: list[dict[VertexKey, tuple[CopyHit, ...]]] = [
            {} for _ in fams
        ]
        self.visits: list[dict[frozenset, list[int]]] = [{} for _ in fams]
        self.occurred: dict[int, bool] = {}

    def copies(self, fam_idx: int, u: VertexKey) -> tuple[CopyHit, ...]:
        cache = self._copy_cache[fam_idx]
        hits = cache.get(u)
        if hits is None:
            hits = self.families[fam_idx][0](u)
            cache[u] = hits
        return hits

    def push(self, i: int, u: VertexKey) -> tuple[int, list]:
        """Record the new step; return (#new occurrence marks, undo token)."""
        m = self.kind.m
        undo: list[tuple[int, frozenset]] = []
        new_marks: list[int] = []
        for fi, (_cache, level) in enumerate(self.families):
            for copy, _tr in self.copies(fi, u):
                steps = self.visits[fi].setdefault(copy, [])
                steps.append(i)
                undo.append((fi, copy))
                need = len(copy) if level is None else level
                for j in steps:
                    if j in self.occurred:
                        continue
                    lo = 0 if m is None else max(0, j - m)
                    hi = i if m is None else j + m
                    count = sum(1 for s in steps if lo <= s <= hi)
                    if count >= need:
                        self.occurred[j] = True
                        new_marks.append(j)
        return len(new_marks), (undo, new_marks)

    def pop(self, token) -> None:
        undo, new_marks = token
        for j in new_marks:
            del self.occurred[j]
        for fi, copy in undo:
            steps = self.visits[fi][copy]
            steps.pop()
            if not steps:
                del self.visits[fi][copy]


def count_restricted(
    g: GraphOracle,
    v: VertexKey,
    n_max: int,
    cs: CutSet,
    kind: EventKind,
    r: int,
    m: int | None = None,
) -> GrowthEstimate:
    """Exact counts of walks on which the event occurs at <= r distinct steps.

    ``m`` localizes the event to a 2m-window when given (overriding the
    kind's own window).  Only the monotone kinds are supported here; the
    crossing event F is counted by count_b.
    """
    if r < 0:
        raise InvalidParameter("r must be >= 0")
    if n_max < 0:
        raise InvalidParameter("n_max must be >= 0")
    if kind.tag == "f":
        raise InvalidParameter("count_restricted does not take F; use count_b")
    if m is not None:
        kind = EventKind(tag=kind.tag, k=kind.k, m=m, regime=kind.regime)
    kind.check_against(cs)
    g.check_key(v)
    nbrs = NeighborCache(g)
    tracker = _EventTracker(cs, kind)
    counts = [0] * (n_max + 1)
    visited = {v}

    occ_count = [0]

    def go(u: VertexKey, depth: int) -> None:
        counts[depth] += 1
        if depth == n_max:
            return
        nxt = depth + 1
        for w in nbrs(u):
            if w not in visited:
                visited.add(w)
                added, token = tracker.push(nxt, w)
                occ_count[0] += added
                if occ_count[0] <= r:
                    go(w, nxt)
                occ_count[0] -= added
                tracker.pop(token)
                visited.discard(w)

    added0, token0 = tracker.push(0, v)
    occ_count[0] += added0
    if occ_count[0] <= r:
        go(v, 0)
    occ_count[0] -= added0
    tracker.pop(token0)
    label = f"c_n({r},{kind.tag}" + (f"(m={kind.m})" if kind.m else "") + ")"
    return GrowthEstimate.from_counts(label, v, counts)


@dataclass(frozen=True)
class BRegime:
    """Parameters of the crossing-count tables b_n(r, F).

    branch "lt": walks where the windowed full-visit event occurs at least
    ceil(a n) times.  branch "eq": the windowed k-visit event occurs at
    least ceil(a n) times and the (k+1)-visit event never occurs.  In both,
    F may occur at no more than r steps.
    """

    branch: str
    a: Fraction
    m: int
    k: int | None = None

    def __post_init__(self):
        if self.branch not in ("lt", "eq"):
            raise InvalidParameter("branch must be 'lt' or 'eq'")
        if self.a <= 0:
            raise InvalidParameter("quota fraction a must be positive")
        if self.m < 1:
            raise InvalidParameter("window m must be >= 1")
        if self.branch == "eq" and (self.k is None or self.k < 1):
            raise InvalidParameter("branch 'eq' needs a level k")

    def quota(self, n: int) -> int:
        return -((-self.a.numerator * n) // self.a.denominator)


def count_b(
    g: GraphOracle,
    v: VertexKey,
    n_max: int,
    cs: CutSet,
    regime: BRegime,
    r: int | None = 0,
    a_prime: Fraction | None = None,
) -> GrowthEstimate:
    """Exact b_n(r, F) tables for the chosen regime branch.

    The cap on F occurrences is the fixed integer ``r``, or floor(a' n)
    per length when ``a_prime`` is given instead.
    """
    if a_prime is not None:
        a_prime = Fraction(a_prime)
        if a_prime < 0:
            raise InvalidParameter("a_prime must be >= 0")

        def f_cap(nn: int) -> int:
            return (a_prime.numerator * nn) // a_prime.denominator

    else:
        if r is None or r < 0:
            raise InvalidParameter("r must be >= 0")

        def f_cap(nn: int) -> int:
            return r

    g.check_key(v)
    if regime.branch == "eq" and regime.k >= len(cs.S):
        raise InvalidParameter("branch 'eq' needs k < |S|")
    quota_kind = (
        EventKind(tag="estar", m=regime.m)
        if regime.branch == "lt"
        else EventKind(tag="ektilde", k=regime.k, m=regime.m)
    )
    quota_kind.check_against(cs)
    nbrs = NeighborCache(g)
    tracker = _EventTracker(cs, quota_kind)
    splitter = ComponentSplitOracle(g, radius=_split_radius(cs))
    full_level = None if regime.branch == "lt" else regime.k
    kill_level = None if regime.branch == "lt" else regime.k + 1

    counts = [0] * (n_max + 1)
    path: list[VertexKey] = []
    visited: set[VertexKey] = set()
    copy_cache: dict[VertexKey, tuple[CopyHit, ...]] = {}
    s_visits: dict[frozenset, list[int]] = {}
    pending: dict[int, list[tuple[frozenset, int, int]]] = {}
    f_marks: dict[int, bool] = {}
    state = {"quota": 0, "f": 0}

    def copies_of(u: VertexKey) -> tuple[CopyHit, ...]:
        hits = copy_cache.get(u)
        if hits is None:
            hits = cs.copies_S(u)
            copy_cache[u] = hits
        return hits

    def push_f(i: int, u: VertexKey):
        """Update S-copy visits, completion pendings, and F marks at step i."""
        undo_visits: list[frozenset] = []
        undo_pending: list[int] = []
        new_f: list[int] = []
        dead = False
        for copy, _tr in copies_of(u):
            steps = s_visits.setdefault(copy, [])
            steps.append(i)
            undo_visits.append(copy)
            full = len(copy) if full_level is None else full_level
            if kill_level is not None and len(steps) == kill_level:
                dead = True
            elif len(steps) == full:
                alpha, beta = steps[0], steps[-1]
                if alpha >= 1:
                    pending.setdefault(beta + 1, []).append((copy, alpha, beta))
                    undo_pending.append(beta + 1)
        if not dead:
            for copy, alpha, beta in pending.get(i, ()):
                for j in s_visits[copy]:
                    if j in f_marks:
                        continue
                    if j - regime.m <= alpha and beta <= j + regime.m:
                        if splitter.split(copy, path[alpha - 1], u):
                            f_marks[j] = True
                            new_f.append(j)
        return dead, (undo_visits, undo_pending, new_f)

    def pop_f(token):
        undo_visits, undo_pending, new_f = token
        for j in new_f:
            del f_marks[j]
        for key in undo_pending:
            pending[key].pop()
            if not pending[key]:
                del pending[key]
        for copy in undo_visits:
            steps = s_visits[copy]
            steps.pop()
            if not steps:
                del s_visits[copy]

    cap_max = f_cap(n_max)

    def go(u: VertexKey, depth: int) -> None:
        if state["f"] <= f_cap(depth) and state["quota"] >= regime.quota(depth):
            counts[depth] += 1
        if depth == n_max:
            return
        nxt = depth + 1
        for w in nbrs(u):
            if w in visited:
                continue
            visited.add(w)
            path.append(w)
            added, qtoken = tracker.push(nxt, w)
            state["quota"] += added
            dead, ftoken = push_f(nxt, w)
            if not dead and state["f"] + len(ftoken[2]) <= cap_max:
                state["f"] += len(ftoken[2])
                go(w, nxt)
                state["f"] -= len(ftoken[2])
            pop_f(ftoken)
            state["quota"] -= added
            tracker.pop(qtoken)
            path.pop()
            visited.discard(w)

    visited.add(v)
    path.append(v)
    added0, qtoken0 = tracker.push(0, v)
    state["quota"] += added0
    dead0, ftoken0 = push_f(0, v)
    if not dead0:
        state["f"] += len(ftoken0[2])
        if state["f"] <= cap_max:
            go(v, 0)
        state["f"] -= len(ftoken0[2])
    pop_f(ftoken0)
    state["quota"] -= added0
    tracker.pop(qtoken0)
    cap_label = f"a'={a_prime}" if a_prime is not None else f"r={r}"
    label = f"b_n({cap_label},F;{regime.branch},a={regime.a},m={regime.m}"
    label += f",k={regime.k})" if regime.k is not None else ")"
    return GrowthEstimate.from_counts(label, v, counts)


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail/inconclusive results of the cut-set assumptions."""

    connected: str
    boundary_components: int
    two_components: str
    sprime_cover: str
    details: dict = field(default_factory=dict, compare=False)

    @property
    def all_passed(self) -> bool:
        return (
            self.connected == "pass"
            and self.two_components == "pass"
            and self.sprime_cover in ("pass", "not-applicable")
        )

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "boundary_components": self.boundary_components,
            "two_components": self.two_components,
            "sprime_cover": self.sprime_cover,
        }


def _induced_connected(g: GraphOracle, vertices: frozenset) -> bool:
    start = min(vertices)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w in vertices and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == set(vertices)


def _covering_saw_exists(
    g: GraphOracle,
    region: frozenset,
    start: VertexKey,
    goal: VertexKey,
    must_cover: frozenset,
) -> bool:
    """Exhaustive search for a SAW inside ``region`` from start to goal
    visiting every vertex of ``must_cover``."""
    path = [start]
    onpath = {start}

    def go() -> bool:
        u = path[-1]
        if u == goal:
            return must_cover <= onpath
        for w in g.neighbors(u):
            if w in region and w not in onpath:
                onpath.add(w)
                path.append(w)
                if go():
                    return True
                path.pop()
                onpath.discard(w)
        return False

    return go()


def validate_cutset(g: GraphOracle, cs: CutSet, radius: int) -> ValidationReport:
    """Check the cut-set assumptions at a finite radius.

    (i) S is connected as an induced subgraph; (ii) removing S leaves at
    least two boundary-touching components within the ball (a finite-radius
    certificate, not a proof of infinitude); (iii) when S' is present,
    every pair of distinct boundary vertices of S' is joined by a SAW
    inside S' covering S.
    """
    details: dict = {}
    connected = "pass" if _induced_connected(g, cs.S) else "fail"
    center = min(cs.S)
    report = components_after_removal(g, cs.S, center, radius)
    boundary = report.boundary_touching_count
    two = "pass" if boundary >= 2 else "fail"
    details["component_report"] = report
    if cs.S_prime is None:
        cover = "not-applicable"
    else:
        sp = cs.S_prime
        boundary_sp = sorted(
            u for u in sp if any(w not in sp for w in g.neighbors(u))
        )
        details["sprime_boundary"] = boundary_sp
        cover = "pass"
        for i, u in enumerate(boundary_sp):
            for w in boundary_sp[i + 1 :]:
                if not _covering_saw_exists(g, sp, u, w, cs.S):
                    cover = "fail"
                    details["sprime_failure"] = (u, w)
                    break
            if cover == "fail":
                break
    return ValidationReport(
        connected=connected,
        boundary_components=boundary,
        two_components=two,
        sprime_cover=cover,
        details=details,
    )
