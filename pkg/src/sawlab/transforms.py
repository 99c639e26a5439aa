"""Generic composition helpers for graph translations.

A translation is any object with ``apply(key) -> key``, ``inverse()`` and a
``name`` string; concrete families live with their graph builders (lattice
shifts and reflections, left multiplications).  Composition across
families is handled structurally here so iterated surgery can chain
automorphisms without caring about their algebra.
"""

from __future__ import annotations

from .graph import VertexKey


class IdentityTranslation:
    name = "id"

    def apply(self, key: VertexKey) -> VertexKey:
        return key

    def inverse(self) -> "IdentityTranslation":
        return self

    def __eq__(self, other):
        return isinstance(other, IdentityTranslation)

    def __hash__(self):
        return hash("IdentityTranslation")


class ComposedTranslation:
    """outer after inner: apply(x) = outer(inner(x))."""

    __slots__ = ("outer", "inner")

    def __init__(self, outer, inner):
        self.outer = outer
        self.inner = inner

    @property
    def name(self) -> str:
        return f"({self.outer.name} o {self.inner.name})"

    def apply(self, key: VertexKey) -> VertexKey:
        return self.outer.apply(self.inner.apply(key))

    def inverse(self) -> "ComposedTranslation":
        return ComposedTranslation(self.inner.inverse(), self.outer.inverse())


def compose(outer, inner):
    """Compose two translations, flattening identities."""
    if isinstance(outer, IdentityTranslation):
        return inner
    if isinstance(inner, IdentityTranslation):
        return outer
    return ComposedTranslation(outer, inner)
