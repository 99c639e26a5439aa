"""Lattice-family graph builders: square grid, hexagonal lattice, cylinder.

Vertex keys are ASCII integer pairs ``b"x,y"``.  The hexagonal lattice is
realized in brick-wall coordinates on the integer grid: every vertex has
both horizontal edges, plus the vertical edge to (x, y+1) iff x+y is even,
which yields degree 3 everywhere and girth 6.
"""

from __future__ import annotations

from .errors import InvalidVertex, UnsupportedParameter
from .graph import GraphOracle, VertexKey


def enc_xy(x: int, y: int) -> VertexKey:
    return b"%d,%d" % (x, y)


def dec_xy(key: VertexKey) -> tuple[int, int]:
    try:
        xs, ys = key.split(b",")
        return int(xs), int(ys)
    except (ValueError, AttributeError) as exc:
        raise InvalidVertex(f"malformed lattice key {key!r}") from exc


class SquareLattice(GraphOracle):
    """The 2-dimensional square grid Z^2."""

    degree_bound = 4
    transitivity = ("vertex-transitive", 1)

    def check_key(self, key: VertexKey) -> None:
        dec_xy(key)

    def _neighbors(self, key: VertexKey) -> tuple[VertexKey, ...]:
        x, y = dec_xy(key)
        return tuple(
            sorted(enc_xy(*p) for p in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)))
        )


class HexagonalLattice(GraphOracle):
    """Honeycomb lattice in brick-wall integer coordinates."""

    degree_bound = 3
    transitivity = ("quasi-transitive", 2)

    def check_key(self, key: VertexKey) -> None:
        dec_xy(key)

    def _neighbors(self, key: VertexKey) -> tuple[VertexKey, ...]:
        x, y = dec_xy(key)
        pts = [(x - 1, y), (x + 1, y)]
        if (x + y) % 2 == 0:
            pts.append((x, y + 1))
        else:
            pts.append((x, y - 1))
        return tuple(sorted(enc_xy(*p) for p in pts))


class Cylinder(GraphOracle):
    """Quotient of the square grid: Z x Z_l, a two-ended degree-4 graph.

    l < 3 is rejected: the quotient would have multi-edges and the walk
    engine assumes simple graphs.
    """

    degree_bound = 4
    transitivity = ("vertex-transitive", 1)

    def __init__(self, circumference: int):
        if circumference < 3:
            raise UnsupportedParameter(
                f"cylinder circumference must be >= 3, got {circumference}"
            )
        self.circumference = circumference

    def check_key(self, key: VertexKey) -> None:
        x, y = dec_xy(key)
        if not (0 <= y < self.circumference):
            raise InvalidVertex(
                f"cylinder key {key!r} has y outside [0, {self.circumference})"
            )

    def _neighbors(self, key: VertexKey) -> tuple[VertexKey, ...]:
        ell = self.circumference
        x, y = dec_xy(key)
        pts = {(x - 1, y), (x + 1, y), (x, (y - 1) % ell), (x, (y + 1) % ell)}
        pts.discard((x, y))
        return tuple(sorted(enc_xy(*p) for p in pts))

    def column(self, x: int) -> frozenset[VertexKey]:
        """The vertex set {x} x Z_l (the canonical cut-set shape)."""
        return frozenset(enc_xy(x, y) for y in range(self.circumference))


def build_square_lattice() -> SquareLattice:
    return SquareLattice()


def build_hexagonal_lattice() -> HexagonalLattice:
    return HexagonalLattice()


def build_cylinder(circumference: int) -> Cylinder:
    return Cylinder(circumference)


class LatticeShift:
    """Translation (x, y) -> (x + dx, y) on a lattice or cylinder oracle."""

    __slots__ = ("dx",)

    def __init__(self, dx: int):
        self.dx = dx

    @property
    def name(self) -> str:
        return f"shift:{self.dx:+d}"

    def apply(self, key: VertexKey) -> VertexKey:
        x, y = dec_xy(key)
        return enc_xy(x + self.dx, y)

    def inverse(self) -> "LatticeShift":
        return LatticeShift(-self.dx)

    def compose(self, other: "LatticeShift") -> "LatticeShift":
        if not isinstance(other, LatticeShift):
            raise TypeError("can only compose lattice shifts with lattice shifts")
        return LatticeShift(self.dx + other.dx)

    def __eq__(self, other):
        return isinstance(other, LatticeShift) and other.dx == self.dx

    def __hash__(self):
        return hash(("LatticeShift", self.dx))


class LatticeReflection:
    """Reflection x -> 2*axis - x; swaps the two sides of a cylinder column."""

    __slots__ = ("axis",)

    def __init__(self, axis: int):
        self.axis = axis

    @property
    def name(self) -> str:
        return f"reflect:{self.axis}"

    def apply(self, key: VertexKey) -> VertexKey:
        x, y = dec_xy(key)
        return enc_xy(2 * self.axis - x, y)

    def inverse(self) -> "LatticeReflection":
        return LatticeReflection(self.axis)

    def __eq__(self, other):
        return isinstance(other, LatticeReflection) and other.axis == self.axis

    def __hash__(self):
        return hash(("LatticeReflection", self.axis))
