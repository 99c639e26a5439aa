"""Configuration-file schemas: graph specs and cut-set specs.

Both are JSON documents.  A graph spec selects a builder and its
parameters; a cut-set spec lists the vertices of S (and optionally S') as
decoded key strings plus the orbit action.  See README.md for the full
schema reference.

Graph spec examples::

    {"builder": "square"}
    {"builder": "cylinder", "circumference": 4}
    {"builder": "free_product",
     "factor1": {"kind": "cycle", "order": 3},
     "factor2": {"kind": "cycle", "order": 3}}
    {"builder": "cayley_amalgam",
     "H": {"cyclic": 4}, "K": {"cyclic": 6}, "C": {"cyclic": 2},
     "embed_h": [0, 2], "embed_k": [0, 3]}
    {"builder": "cayley_hnn",
     "H": {"cyclic": 4}, "C1": [0, 2], "C2": [0, 2], "phi": [[0, 0], [2, 2]]}

Cut-set spec example::

    {"S": ["0,0", "0,1", "0,2"],
     "S_prime": ["-1,0", ..., "1,2"],
     "action": {"kind": "shift", "step": 1},
     "connectivity_radius": 6}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .cayley import (
    CayleyOracle,
    FiniteCayleyGraph,
    amalgam_standard_generators,
    cayley_oracle,
    hnn_standard_generators,
)
from .errors import SpecInvalid, SpecNotFound
from .freeprod import (
    FreeProductGraph,
    build_free_product,
    complete_factor,
    cycle_factor,
    graph_factor,
)
from .graph import GraphOracle, VertexKey
from .groups import AmalgamPresentation, FiniteGroup, HnnPresentation
from .lattices import build_cylinder, build_hexagonal_lattice, build_square_lattice
from .patterns import CutSet, FreeProductOrbit, LeftMulOrbit, ShiftOrbit


@dataclass(frozen=True)
class GraphHandle:
    """A built oracle plus its canonical origin and spec echo."""

    oracle: GraphOracle
    origin: VertexKey
    label: str
    spec: dict = field(compare=False, default_factory=dict)


def _group_from_spec(spec, label: str) -> FiniteGroup:
    if not isinstance(spec, dict):
        raise SpecInvalid(f"{label}: group spec must be an object")
    if "cyclic" in spec:
        return FiniteGroup.cyclic(int(spec["cyclic"]))
    if "table" in spec:
        return FiniteGroup(tuple(tuple(int(x) for x in row) for row in spec["table"]))
    raise SpecInvalid(f"{label}: group spec needs 'cyclic' or 'table'")


def _factor_from_spec(spec, label: str):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SpecInvalid(f"{label}: factor spec needs a 'kind'")
    kind = spec["kind"]
    if kind == "cycle":
        return cycle_factor(int(spec["order"]))
    if kind == "complete":
        return complete_factor(int(spec["order"]))
    if kind == "graph":
        edges = [tuple(int(x) for x in e) for e in spec.get("edges", [])]
        return graph_factor(int(spec["size"]), edges)
    raise SpecInvalid(f"{label}: unknown factor kind {kind!r}")


def build_graph(spec: dict) -> GraphHandle:
    """Build an oracle from a parsed graph spec."""
    if not isinstance(spec, dict) or "builder" not in spec:
        raise SpecInvalid("graph spec needs a 'builder'")
    b = spec["builder"]
    try:
        if b == "square":
            return GraphHandle(build_square_lattice(), b"0,0", "square", spec)
        if b == "hexagonal":
            return GraphHandle(build_hexagonal_lattice(), b"0,0", "hexagonal", spec)
        if b == "cylinder":
            ell = int(spec["circumference"])
            return GraphHandle(build_cylinder(ell), b"0,0", f"cylinder{ell}", spec)
        if b == "free_product":
            f1 = _factor_from_spec(spec["factor1"], "factor1")
            f2 = _factor_from_spec(spec["factor2"], "factor2")
            g = build_free_product(f1, f2)
            return GraphHandle(g, g.root, f"{f1.name}*{f2.name}", spec)
        if b in ("cayley_amalgam", "glued_amalgam"):
            h = _group_from_spec(spec["H"], "H")
            k = _group_from_spec(spec["K"], "K")
            c = _group_from_spec(spec["C"], "C")
            pres = AmalgamPresentation(
                h, k, c, tuple(spec["embed_h"]), tuple(spec["embed_k"])
            )
            gens_spec = spec.get("generators")
            if gens_spec is None:
                gens = amalgam_standard_generators(pres)
            else:
                gens = tuple(
                    pres.letter(0, int(x)) for x in gens_spec.get("h", [])
                ) + tuple(pres.letter(1, int(x)) for x in gens_spec.get("k", []))
            g = cayley_oracle(pres, gens)
            return GraphHandle(g, g.identity_key(), b, spec)
        if b == "cayley_hnn":
            h = _group_from_spec(spec["H"], "H")
            phi = {int(a): int(bb) for a, bb in spec["phi"]}
            pres = HnnPresentation(
                h, tuple(spec["C1"]), tuple(spec["C2"]), phi
            )
            gens_spec = spec.get("generators", {})
            t_h = tuple(int(x) for x in gens_spec.get("h", range(1, h.order)))
            g = cayley_oracle(pres, hnn_standard_generators(pres, t_h))
            return GraphHandle(g, g.identity_key(), b, spec)
    except SpecInvalid:
        raise
    except KeyError as exc:
        raise SpecInvalid(f"graph spec missing field {exc}") from exc
    except Exception as exc:
        raise SpecInvalid(f"graph spec invalid: {exc}") from exc
    raise SpecInvalid(f"unknown builder {b!r}")


def load_graph_spec(path: str | Path) -> GraphHandle:
    p = Path(path)
    if not p.exists():
        raise SpecNotFound(f"graph spec file {p} not found")
    try:
        spec = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise SpecInvalid(f"graph spec {p} is not valid JSON: {exc}") from exc
    return build_graph(spec)


def build_cutset(handle: GraphHandle, spec: dict) -> CutSet:
    """Build a CutSet against an already-built graph."""
    if not isinstance(spec, dict) or "S" not in spec:
        raise SpecInvalid("cut-set spec needs 'S'")
    try:
        s = frozenset(x.encode() for x in spec["S"])
        sp = (
            frozenset(x.encode() for x in spec["S_prime"])
            if spec.get("S_prime")
            else None
        )
        for key in sorted(s | (sp or frozenset())):
            handle.oracle.check_key(key)
        action = spec.get("action", {"kind": "shift", "step": 1})
        kind = action.get("kind")
        if kind == "shift":
            orbit = ShiftOrbit(int(action.get("step", 1)))
        elif kind == "left_mul":
            if not isinstance(handle.oracle, CayleyOracle):
                raise SpecInvalid("left_mul action needs a Cayley graph")
            orbit = LeftMulOrbit(handle.oracle)
        elif kind == "free_product":
            if not isinstance(handle.oracle, FreeProductGraph):
                raise SpecInvalid("free_product action needs a free-product graph")
            orbit = FreeProductOrbit(handle.oracle)
        else:
            raise SpecInvalid(f"unknown action kind {kind!r}")
        return CutSet(
            S=s,
            orbit=orbit,
            S_prime=sp,
            connectivity_radius=int(spec.get("connectivity_radius", 8)),
        )
    except SpecInvalid:
        raise
    except Exception as exc:
        raise SpecInvalid(f"cut-set spec invalid: {exc}") from exc


def load_cutset_spec(path: str | Path, handle: GraphHandle) -> CutSet:
    p = Path(path)
    if not p.exists():
        raise SpecNotFound(f"cut-set spec file {p} not found")
    try:
        spec = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise SpecInvalid(f"cut-set spec {p} is not valid JSON: {exc}") from exc
    return build_cutset(handle, spec)
