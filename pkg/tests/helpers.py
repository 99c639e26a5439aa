"""Independent oracles used to cross-check the library.

These deliberately avoid the library's enumeration machinery: walks are
extended as plain lists with linear membership scans and unmemoized
oracle calls, distances come from closed forms, and small recurrences are
derived per graph family.
"""

from __future__ import annotations

from fractions import Fraction


def naive_count_walks(g, v, n_max):
    """Counts by plain recursive extension: no memoization, no visited set,
    list membership by linear scan."""
    counts = [0] * (n_max + 1)

    def go(path):
        d = len(path) - 1
        counts[d] += 1
        if d == n_max:
            return
        for w in g.neighbors(path[-1]):
            if w not in path:
                path.append(w)
                go(path)
                path.pop()

    go([v])
    return counts


def naive_walks_list(g, v, n):
    """All n-step SAWs as vertex tuples, by level-wise extension."""
    level = [(v,)]
    for _ in range(n):
        nxt = []
        for p in level:
            for w in g.neighbors(p[-1]):
                if w not in p:
                    nxt.append(p + (w,))
        level = nxt
    return level


def square_distance(a, b):
    """L1 distance on the square grid, from decoded keys."""
    (ax, ay), (bx, by) = a, b
    return abs(ax - bx) + abs(ay - by)


def cylinder_distance(a, b, ell):
    """|dx| plus the ring distance on Z_ell."""
    (ax, ay), (bx, by) = a, b
    dy = abs(ay - by) % ell
    return abs(ax - bx) + min(dy, ell - dy)


def hexagonal_ball_by_coordinates(x0, y0, r):
    """Vertices within distance r of (x0, y0) in brick-wall coordinates,
    grown step by step from the adjacency formula (no oracle involved)."""

    def nbrs(x, y):
        pts = [(x - 1, y), (x + 1, y)]
        pts.append((x, y + 1) if (x + y) % 2 == 0 else (x, y - 1))
        return pts

    frontier = {(x0, y0)}
    seen = {(x0, y0)}
    for _ in range(r):
        frontier = {
            p for q in frontier for p in nbrs(*q) if p not in seen
        }
        seen |= frontier
    edges = set()
    for (x, y) in seen:
        for p in nbrs(x, y):
            if p in seen:
                edges.add(tuple(sorted([(x, y), p])))
    return seen, edges


def c3c3_count_recurrence(n_max):
    """SAW counts on the triangle cactus C3 * C3 from its transfer recurrence.

    State A: arrived at a vertex with the current triangle's third vertex
    still free and the other triangle fresh (1 move to a B state, 2 moves
    to A states); state B: current triangle exhausted, other fresh (2 moves
    to A states).  Hence A(n) = 2A(n-1) + 2A(n-2) and c_n = 4 A(n-1).
    """
    a = [1, 3]
    for _ in range(2, n_max + 1):
        a.append(2 * a[-1] + 2 * a[-2])
    return [1] + [4 * a[n - 1] for n in range(1, n_max + 1)]


def mean_square_displacement(walks, labels):
    total = len(walks)
    s = sum(labels[w[-1]] ** 2 for w in walks)
    return Fraction(s, total)
