"""Exact self-avoiding-walk enumeration and displacement statistics.

Counts are exact Python integers throughout (they are the test oracle for
everything else, and c_n grows like mu^n).  Displacement is the BFS graph
distance between a walk's endpoints, capped at the walk length, never a
Euclidean embedding distance.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyInput, InvalidParameter, InvalidWalk
from .graph import GraphOracle, NeighborCache, VertexKey, distance_labels


@dataclass(frozen=True)
class Walk:
    """A self-avoiding walk: n+1 pairwise-distinct, consecutively adjacent vertices."""

    vertices: tuple[VertexKey, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidWalk("a walk needs at least one vertex")

    @property
    def origin(self) -> VertexKey:
        return self.vertices[0]

    @property
    def end(self) -> VertexKey:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def validate(self, g: GraphOracle) -> None:
        """Raise InvalidWalk unless self is a SAW on g."""
        seen = set()
        prev = None
        for i, v in enumerate(self.vertices):
            if v in seen:
                raise InvalidWalk(f"vertex {v!r} revisited at step {i}")
            seen.add(v)
            if prev is not None and v not in g.neighbors(prev):
                raise InvalidWalk(f"step {i}: {prev!r} -> {v!r} is not an edge")
            prev = v


@dataclass(frozen=True)
class CountTable:
    """Map n -> exact number of n-step SAWs from a fixed origin."""

    origin: VertexKey
    entries: dict[int, int]
    transitive: bool = True

    @property
    def n_max(self) -> int:
        return max(self.entries)

    def __getitem__(self, n: int) -> int:
        return self.entries[n]

    def roots(self) -> list[tuple[int, float]]:
        return [
            (n, self.entries[n] ** (1.0 / n))
            for n in sorted(self.entries)
            if n >= 1 and self.entries[n] > 0
        ]


def count_walks(g: GraphOracle, v: VertexKey, n_max: int) -> CountTable:
    """Exact c_n(v) for 0 <= n <= n_max by depth-first extension."""
    if n_max < 0:
        raise InvalidParameter("n_max must be >= 0")
    g.check_key(v)
    nbrs = NeighborCache(g)
    counts = [0] * (n_max + 1)
    if n_max == 0:
        counts[0] = 1
    else:
        visited = {v}
        add = visited.add
        discard = visited.discard

        def go(u: VertexKey, depth: int) -> None:
            counts[depth] += 1
            if depth == n_max:
                return
            nxt = depth + 1
            for w in nbrs(u):
                if w not in visited:
                    add(w)
                    go(w, nxt)
                    discard(w)

        go(v, 0)
    return CountTable(
        origin=v,
        entries={n: c for n, c in enumerate(counts)},
        transitive=g.transitivity[0] == "vertex-transitive",
    )


def _count_subtree(g: GraphOracle, v: VertexKey, first: VertexKey, n_max: int) -> list[int]:
    """Counts, per depth, of SAWs from v whose first step goes to ``first``."""
    nbrs = NeighborCache(g)
    counts = [0] * (n_max + 1)
    visited = {v, first}
    add = visited.add
    discard = visited.discard

    def go(u: VertexKey, depth: int) -> None:
        counts[depth] += 1
        if depth == n_max:
            return
        nxt = depth + 1
        for w in nbrs(u):
            if w not in visited:
                add(w)
                go(w, nxt)
                discard(w)

    go(first, 1)
    return counts


def count_walks_parallel(
    g: GraphOracle, v: VertexKey, n_max: int, workers: int
) -> CountTable:
    """Identical output to count_walks; splits on first-step subtrees.

    Subtotals are combined by exact integer addition, so the result is
    bit-identical for every worker count.  Falls back to in-process
    evaluation when a process pool cannot be created.
    """
    if workers < 1:
        raise InvalidParameter("workers must be >= 1")
    if n_max < 0:
        raise InvalidParameter("n_max must be >= 0")
    g.check_key(v)
    first_steps = g.neighbors(v)
    totals = [0] * (n_max + 1)
    totals[0] = 1
    if n_max == 0 or not first_steps:
        return CountTable(
            origin=v,
            entries={n: c for n, c in enumerate(totals)},
            transitive=g.transitivity[0] == "vertex-transitive",
        )
    jobs = [(g, v, w, n_max) for w in first_steps]
    if workers == 1:
        results = [_count_subtree(*job) for job in jobs]
    else:
        try:
            with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
                results = list(pool.map(_count_subtree_star, jobs))
        except (OSError, PermissionError):
            results = [_count_subtree(*job) for job in jobs]
    for part in results:
        for n in range(1, n_max + 1):
            totals[n] += part[n]
    return CountTable(
        origin=v,
        entries={n: c for n, c in enumerate(totals)},
        transitive=g.transitivity[0] == "vertex-transitive",
    )


def _count_subtree_star(args):
    return _count_subtree(*args)


def enumerate_walks(g: GraphOracle, v: VertexKey, n: int):
    """Yield every n-step SAW from v as a tuple of keys (test-scale helper)."""
    if n < 0:
        raise InvalidParameter("n must be >= 0")
    g.check_key(v)
    nbrs = NeighborCache(g)
    path = [v]
    visited = {v}

    def go():
        if len(path) == n + 1:
            yield tuple(path)
            return
        for w in nbrs(path[-1]):
            if w not in visited:
                visited.add(w)
                path.append(w)
                yield from go()
                path.pop()
                visited.discard(w)

    yield from go()


@dataclass(frozen=True)
class DisplacementStats:
    """Exact displacement data for all n-step SAWs from one origin."""

    origin: VertexKey
    n: int
    histogram: dict[int, int]
    mean_square: Fraction
    tail_counts: dict[Fraction, int]
    fitted_nu: float | None = None

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    def tail_fraction(self, a: Fraction) -> Fraction:
        return Fraction(self.tail_counts[a], self.total)

    def low_fraction(self, bound: Fraction) -> Fraction:
        """Fraction of walks with displacement <= bound."""
        total = self.total
        low = sum(c for d, c in self.histogram.items() if d <= bound)
        return Fraction(low, total)


def displacement_stats(
    g: GraphOracle,
    v: VertexKey,
    n: int,
    thresholds: list[Fraction] | tuple[Fraction, ...] = (),
) -> DisplacementStats:
    """Exact histogram of ||pi|| over all n-step SAWs from v.

    ||pi|| = dist_G(pi(n), pi(0)) computed from BFS distance labels on
    ball(v, n); tail_counts[a] = #{pi : ||pi|| >= a n} for each threshold.
    """
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    thresholds = [Fraction(a) for a in thresholds]
    for a in thresholds:
        if not 0 < a <= 1:
            raise InvalidParameter(f"threshold {a} outside (0, 1]")
    g.check_key(v)
    labels = distance_labels(g, v, n)
    nbrs = NeighborCache(g)
    hist: dict[int, int] = {}
    visited = {v}
    add = visited.add
    discard = visited.discard

    def go(u: VertexKey, depth: int) -> None:
        if depth == n:
            d = labels[u]
            hist[d] = hist.get(d, 0) + 1
            return
        nxt = depth + 1
        for w in nbrs(u):
            if w not in visited:
                add(w)
                go(w, nxt)
                discard(w)

    go(v, 0)
    total = sum(hist.values())
    mean_sq = (
        Fraction(sum(d * d * c for d, c in hist.items()), total)
        if total
        else Fraction(0)
    )
    tails = {
        a: sum(c for d, c in hist.items() if d >= a * n) for a in thresholds
    }
    return DisplacementStats(
        origin=v, n=n, histogram=hist, mean_square=mean_sq, tail_counts=tails
    )


def fit_displacement_exponent(stats: list[DisplacementStats]) -> tuple[float, tuple[int, int]]:
    """Least-squares slope of log<||pi||^2> against 2 log n.

    Returns (nu_estimate, (n_lo, n_hi)).  This is a windowed estimate of an
    asymptotic exponent; it is reported, never certified.
    """
    pts = [
        (2.0 * math.log(s.n), math.log(float(s.mean_square)))
        for s in stats
        if s.n >= 1 and s.mean_square > 0
    ]
    if len(pts) < 2:
        raise EmptyInput("need at least two n values with positive mean square")
    xs, ys = zip(*pts)
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    num = sum((x - xbar) * (y - ybar) for x, y in pts)
    den = sum((x - xbar) ** 2 for x in xs)
    window = (min(s.n for s in stats), max(s.n for s in stats))
    return num / den, window


@dataclass(frozen=True)
class MuBounds:
    """n-th roots of a count table and the Fekete upper bound for mu."""

    raw_roots: tuple[tuple[int, float], ...]
    upper: float
    upper_n: int
    running_min: tuple[tuple[int, float], ...] = field(default=())


def mu_bounds(table: CountTable) -> MuBounds:
    """Roots c_n^(1/n) and their running minimum.

    For a sup-table (vertex-transitive origin) the running minimum is a
    certified upper bound for mu by Fekete's sub-additivity.
    """
    roots = table.roots()
    if not roots:
        raise EmptyInput("count table has no positive entries at n >= 1")
    running = []
    best = math.inf
    best_n = roots[0][0]
    for n, r in roots:
        if r < best:
            best, best_n = r, n
        running.append((n, best))
    return MuBounds(
        raw_roots=tuple(roots), upper=best, upper_n=best_n, running_min=tuple(running)
    )
