"""Free products of rooted graphs.

Vertices are alternating words x_1...x_n over the two factors' non-root
vertices (consecutive letters from different factors); the empty word is
the root.  The word w.x is adjacent to w.y whenever (x, y) is a factor
edge, with the root letter absorbed: an edge to the factor root shortens
the word by one, and entering the other factor extends it.

Factors must be finite with at least two vertices.  A factor may carry a
group structure (vertex set = group elements, root = identity, adjacency
invariant under left translation); then the whole free product carries
left-multiplication automorphisms, which the pattern and surgery engines
use.  Plain rooted factors still produce a valid oracle, just without
translations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidVertex, UnsupportedParameter
from .graph import GraphOracle, VertexKey
from .groups import FiniteGroup


@dataclass(frozen=True)
class RootedFactor:
    """Finite rooted factor graph; vertex 0 is the root.

    ``group`` is set when the vertex set is a group (identity 0) whose left
    translations preserve ``adj``.
    """

    name: str
    adj: tuple[frozenset[int], ...]
    group: FiniteGroup | None = None

    def __post_init__(self):
        m = len(self.adj)
        if m < 2:
            raise UnsupportedParameter("factor needs at least two vertices")
        for v, nb in enumerate(self.adj):
            if v in nb:
                raise UnsupportedParameter("factor has a self-loop")
            for w in nb:
                if not 0 <= w < m or v not in self.adj[w]:
                    raise UnsupportedParameter("factor adjacency is not symmetric")
        if self.group is not None:
            if self.group.order != m:
                raise UnsupportedParameter("group order does not match vertex count")
            for g in range(m):
                for v in range(m):
                    gv = self.group.mul(g, v)
                    if {self.group.mul(g, w) for w in self.adj[v]} != set(self.adj[gv]):
                        raise UnsupportedParameter(
                            "left translations do not preserve factor adjacency"
                        )

    @property
    def size(self) -> int:
        return len(self.adj)


def cycle_factor(order: int, name: str | None = None) -> RootedFactor:
    """Cycle C_order rooted at 0 (the Cayley graph of Z_order with +-1)."""
    if order < 2:
        raise UnsupportedParameter("cycle factor needs order >= 2")
    if order == 2:
        adj = (frozenset({1}), frozenset({0}))
    else:
        adj = tuple(
            frozenset({(v - 1) % order, (v + 1) % order}) for v in range(order)
        )
    return RootedFactor(name or f"C{order}", adj, group=FiniteGroup.cyclic(order))


def complete_factor(order: int, name: str | None = None) -> RootedFactor:
    """Complete graph K_order rooted at 0 (Cayley graph of Z_order, all non-identity)."""
    if order < 2:
        raise UnsupportedParameter("complete factor needs order >= 2")
    adj = tuple(frozenset(set(range(order)) - {v}) for v in range(order))
    return RootedFactor(name or f"K{order}", adj, group=FiniteGroup.cyclic(order))


def graph_factor(size: int, edges: list[tuple[int, int]], name: str = "F") -> RootedFactor:
    """Arbitrary finite rooted factor (no group structure, no translations)."""
    nb: list[set[int]] = [set() for _ in range(size)]
    for a, b in edges:
        if a == b or not (0 <= a < size and 0 <= b < size):
            raise UnsupportedParameter(f"bad factor edge ({a}, {b})")
        nb[a].add(b)
        nb[b].add(a)
    return RootedFactor(name, tuple(frozenset(s) for s in nb))


Letter = tuple[int, int]  # (factor index 1 or 2, vertex index != 0)


def encode_word(word: tuple[Letter, ...]) -> VertexKey:
    return b"|".join(b"%d:%d" % l for l in word)


class FreeProductGraph(GraphOracle):
    """Free product of two rooted factor graphs."""

    def __init__(self, factor1: RootedFactor, factor2: RootedFactor):
        self.factors = (factor1, factor2)
        self.degree_bound = max(
            len(factor1.adj[v]) + len(factor2.adj[0]) for v in range(factor1.size)
        )
        self.degree_bound = max(
            self.degree_bound,
            max(len(factor2.adj[v]) + len(factor1.adj[0]) for v in range(factor2.size)),
        )
        both_group_backed = all(f.group is not None for f in self.factors)
        self.transitivity = (
            ("vertex-transitive", 1)
            if both_group_backed
            else ("quasi-transitive", factor1.size + factor2.size)
        )

    @property
    def root(self) -> VertexKey:
        return b""

    def factor(self, i: int) -> RootedFactor:
        return self.factors[i - 1]

    def decode(self, key: VertexKey) -> tuple[Letter, ...]:
        if key == b"":
            return ()
        word: list[Letter] = []
        prev = 0
        try:
            for part in key.split(b"|"):
                fs, vs = part.split(b":")
                i, v = int(fs), int(vs)
                if i not in (1, 2) or not 1 <= v < self.factor(i).size:
                    raise InvalidVertex(f"letter {part!r} out of range")
                if i == prev:
                    raise InvalidVertex(f"word {key!r} violates alternation")
                word.append((i, v))
                prev = i
        except (ValueError, IndexError) as exc:
            raise InvalidVertex(f"malformed free-product key {key!r}") from exc
        return tuple(word)

    def check_key(self, key: VertexKey) -> None:
        self.decode(key)

    def _neighbors(self, key: VertexKey) -> tuple[VertexKey, ...]:
        word = self.decode(key)
        out: list[VertexKey] = []
        if word:
            i, v = word[-1]
            f = self.factor(i)
            prefix = word[:-1]
            for y in f.adj[v]:
                if y == 0:
                    out.append(encode_word(prefix))
                else:
                    out.append(encode_word(prefix + ((i, y),)))
            for j in (1, 2):
                if j != i:
                    for y in self.factor(j).adj[0]:
                        out.append(encode_word(word + ((j, y),)))
        else:
            for j in (1, 2):
                for y in self.factor(j).adj[0]:
                    out.append(encode_word(((j, y),)))
        return tuple(sorted(out))

    # ---- group structure (only when both factors are group-backed) ----

    def _require_groups(self) -> None:
        if any(f.group is None for f in self.factors):
            raise UnsupportedParameter(
                "free-product translations need group-backed factors"
            )

    def word_mul(self, a: tuple[Letter, ...], b: tuple[Letter, ...]) -> tuple[Letter, ...]:
        """Product of two alternating words in the free product of the factor groups."""
        self._require_groups()
        out = list(a)
        for i, v in b:
            if out and out[-1][0] == i:
                m = self.factor(i).group.mul(out[-1][1], v)
                if m == 0:
                    out.pop()
                else:
                    out[-1] = (i, m)
            else:
                out.append((i, v))
        return tuple(out)

    def word_inv(self, a: tuple[Letter, ...]) -> tuple[Letter, ...]:
        self._require_groups()
        return tuple((i, self.factor(i).group.inv(v)) for i, v in reversed(a))


class FreeProductLeftMul:
    """Left multiplication x -> g.x, an automorphism of the free-product graph."""

    __slots__ = ("graph", "word")

    def __init__(self, graph: FreeProductGraph, word: tuple[Letter, ...]):
        graph._require_groups()
        self.graph = graph
        self.word = word

    @property
    def name(self) -> str:
        return "lmul:" + (encode_word(self.word).decode() or "1")

    def apply(self, key: VertexKey) -> VertexKey:
        return encode_word(self.graph.word_mul(self.word, self.graph.decode(key)))

    def inverse(self) -> "FreeProductLeftMul":
        return FreeProductLeftMul(self.graph, self.graph.word_inv(self.word))

    def compose(self, other: "FreeProductLeftMul") -> "FreeProductLeftMul":
        return FreeProductLeftMul(
            self.graph, self.graph.word_mul(self.word, other.word)
        )

    def __eq__(self, other):
        return (
            isinstance(other, FreeProductLeftMul)
            and other.graph is self.graph
            and other.word == self.word
        )

    def __hash__(self):
        return hash(("FreeProductLeftMul", self.word))


def build_free_product(factor1: RootedFactor, factor2: RootedFactor) -> FreeProductGraph:
    return FreeProductGraph(factor1, factor2)
