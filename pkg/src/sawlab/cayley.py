"""Cayley-graph oracles over normal-form vertex keys, and separation tests.

A Cayley oracle answers neighbors(v) = { reduce(v . t) : t in T } for a
finite symmetric generator set T not containing the identity.  Vertex keys
are the serialized normal forms, so key equality is exactly group-element
equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidEndpoint, InvalidGeneratorSet, InvalidVertex
from .graph import GraphOracle, VertexKey
from .groups import (
    SIDE_H,
    SIDE_K,
    AmalgamElement,
    AmalgamPresentation,
    FiniteGroup,
    HnnElement,
    HnnPresentation,
)


class FiniteCayleyGraph(GraphOracle):
    """Cayley graph of a finite group; keys are decimal element indices."""

    def __init__(self, group: FiniteGroup, generators: tuple[int, ...]):
        gens = sorted(set(generators))
        if 0 in gens:
            raise InvalidGeneratorSet("generator set contains the identity")
        if any(group.inv(t) not in gens for t in gens):
            raise InvalidGeneratorSet("generator set is not symmetric")
        if not gens:
            raise InvalidGeneratorSet("generator set is empty")
        self.group = group
        self.generators = tuple(gens)
        self.degree_bound = len(gens)
        self.transitivity = ("vertex-transitive", 1)

    def decode(self, key: VertexKey) -> int:
        try:
            v = int(key)
        except ValueError as exc:
            raise InvalidVertex(f"malformed group key {key!r}") from exc
        if not 0 <= v < self.group.order:
            raise InvalidVertex(f"group key {key!r} out of range")
        return v

    def check_key(self, key: VertexKey) -> None:
        self.decode(key)

    def _neighbors(self, key: VertexKey) -> tuple[VertexKey, ...]:
        v = self.decode(key)
        return tuple(sorted(b"%d" % self.group.mul(v, t) for t in self.generators))


class CayleyOracle(GraphOracle):
    """Cayley graph of an amalgam or HNN presentation.

    ``generators`` are group elements; the set must be finite, symmetric
    and identity-free.  Oracles are immutable and picklable, so they can be
    shipped to worker processes.
    """

    def __init__(self, pres, generators):
        elems = {}
        for g in generators:
            if g.is_identity():
                raise InvalidGeneratorSet("generator set contains the identity")
            elems[g.key()] = g
        for g in list(elems.values()):
            if g.inverse().key() not in elems:
                raise InvalidGeneratorSet("generator set is not symmetric")
        if not elems:
            raise InvalidGeneratorSet("generator set is empty")
        self.pres = pres
        self.generators = tuple(elems[k] for k in sorted(elems))
        self.degree_bound = len(self.generators)
        self.transitivity = ("vertex-transitive", 1)

    def identity_key(self) -> VertexKey:
        return self.pres.identity().key()

    def element(self, key: VertexKey):
        try:
            return _parse_element(self.pres, key)
        except (ValueError, IndexError, KeyError) as exc:
            raise InvalidVertex(f"malformed element key {key!r}") from exc

    def check_key(self, key: VertexKey) -> None:
        elem = self.element(key)
        if elem.key() != key:
            raise InvalidVertex(f"key {key!r} is not in canonical form")

    def _neighbors(self, key: VertexKey) -> tuple[VertexKey, ...]:
        v = self.element(key)
        out = {(v * t).key() for t in self.generators}
        out.discard(key)
        return tuple(sorted(out))


def _parse_element(pres, key: VertexKey):
    parts = key.split(b";")
    if isinstance(pres, AmalgamPresentation):
        c = int(parts[0])
        if not 0 <= c < pres.c.order:
            raise ValueError("constant part out of range")
        word = []
        for p in parts[1:]:
            side = {ord("H"): SIDE_H, ord("K"): SIDE_K}[p[0]]
            word.append((side, int(p[1:])))
        elem = AmalgamElement(pres, c, tuple(word))
        # round-trip through the reducer to reject non-canonical words
        return pres.reduce(elem.letters())
    if isinstance(pres, HnnPresentation):
        g0 = int(parts[0])
        if not 0 <= g0 < pres.h.order:
            raise ValueError("g0 out of range")
        raw: list[tuple[str, int]] = [("h", g0)]
        for p in parts[1:]:
            eps = {ord("+"): 1, ord("-"): -1}[p[0]]
            raw.append(("t", eps))
            raw.append(("h", int(p[1:])))
        return pres.reduce(raw)
    raise ValueError(f"unknown presentation type {type(pres)!r}")


def cayley_oracle(pres, generators) -> CayleyOracle:
    return CayleyOracle(pres, generators)


def amalgam_standard_generators(p: AmalgamPresentation):
    """All non-identity elements of both factors, as amalgam elements, deduped.

    Elements of C appear through both factors but reduce to the same normal
    form, so shared subgroup letters are identified automatically.
    """
    gens = {}
    for side, group in ((SIDE_H, p.h), (SIDE_K, p.k)):
        for x in range(1, group.order):
            e = p.letter(side, x)
            gens[e.key()] = e
    return tuple(gens[k] for k in sorted(gens))


def glued_amalgam_graph(
    gh: FiniteCayleyGraph, gk: FiniteCayleyGraph, p: AmalgamPresentation
) -> CayleyOracle:
    """The graph G0: free product of the factor Cayley graphs with C-cosets glued.

    Identifying C-related vertices of the free-product Cayley graph yields
    exactly the Cayley graph of the amalgam over the union of the factor
    generator sets, so that is how it is built.
    """
    if gh.group is not p.h or gk.group is not p.k:
        raise InvalidGeneratorSet("factor oracles do not match the presentation")
    gens = {}
    for side, factor in ((SIDE_H, gh), (SIDE_K, gk)):
        for t in factor.generators:
            e = p.letter(side, t)
            gens[e.key()] = e
    return CayleyOracle(p, tuple(gens[k] for k in sorted(gens)))


def hnn_standard_generators(p: HnnPresentation, t_h: tuple[int, ...] | None = None):
    """T_H together with the stable letter and its inverse."""
    if t_h is None:
        t_h = tuple(range(1, p.h.order))
    gens = [p.h_element(x) for x in t_h]
    gens += [p.t_element(1), p.t_element(-1)]
    return tuple(gens)


class LeftMulTranslation:
    """Left multiplication v -> g.v on a Cayley oracle (a graph automorphism)."""

    __slots__ = ("oracle", "element")

    def __init__(self, oracle: CayleyOracle, element):
        self.oracle = oracle
        self.element = element

    @property
    def name(self) -> str:
        return "lmul:" + self.element.key().decode()

    def apply(self, key: VertexKey) -> VertexKey:
        return (self.element * self.oracle.element(key)).key()

    def inverse(self) -> "LeftMulTranslation":
        return LeftMulTranslation(self.oracle, self.element.inverse())

    def compose(self, other: "LeftMulTranslation") -> "LeftMulTranslation":
        return LeftMulTranslation(self.oracle, self.element * other.element)

    def __eq__(self, other):
        return (
            isinstance(other, LeftMulTranslation)
            and other.oracle is self.oracle
            and other.element == self.element
        )

    def __hash__(self):
        return hash(("LeftMulTranslation", self.element.key()))


@dataclass(frozen=True)
class SeparationResult:
    separated: bool
    certified: bool
    path: tuple[VertexKey, ...] | None

    @property
    def verdict(self) -> str:
        if not self.separated:
            return "NotSeparatedWithinRadius"
        return "Separated" if self.certified else "SeparatedWithinRadius"


def separation_test(
    g: GraphOracle,
    u: VertexKey,
    v: VertexKey,
    cut: frozenset[VertexKey] | set[VertexKey],
    radius: int,
) -> SeparationResult:
    """BFS from u toward v avoiding ``cut``, out to ``radius``.

    NotSeparated (with a witness path) if v is reached; Separated otherwise,
    certified when the avoiding component of u was exhausted before the
    radius ran out.
    """
    g.check_key(u)
    g.check_key(v)
    cut = frozenset(cut)
    if u in cut or v in cut:
        raise InvalidEndpoint("endpoints must lie outside the cut set")
    if u == v:
        return SeparationResult(separated=False, certified=True, path=(u,))
    parent = {u: u}
    frontier = [u]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in g.neighbors(w):
                if x in parent or x in cut:
                    continue
                parent[x] = w
                nxt.append(x)
                if x == v:
                    path = [v]
                    while path[-1] != u:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return SeparationResult(
                        separated=False, certified=True, path=tuple(path)
                    )
        if not nxt:
            return SeparationResult(separated=True, certified=True, path=None)
        frontier = sorted(nxt)
    return SeparationResult(separated=True, certified=False, path=None)
