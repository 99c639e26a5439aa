"""Walk surgery: cut a SAW at a cut-set copy and reroute its suffix.

Two variants share one operator.  The detour variant ("lemma24") keeps the
walk prefix up to a split index h, runs a shortest connector from pi(h) to
the copy, bridges to the connector end's image, and appends the
automorphism image of the reversed connector plus the suffix; it is used
on walks that avoid the copy entirely.  The crossing variant ("lemma26")
cuts out the stretch between the first and last copy visits (alpha..beta),
maps the suffix from beta+1 through the automorphism, and joins pi(alpha)
to the image of pi(beta) by a SAW through the copy region, manufacturing a
component crossing.

Every output is verified self-avoiding; surgery never mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidAutomorphism,
    InvalidParameter,
    RadiusTooSmall,
    SurgeryConflict,
)
from .graph import GraphOracle, VertexKey, components_after_removal, shortest_path
from .saw import Walk
from .transforms import IdentityTranslation, compose


@dataclass(frozen=True)
class WalkCheck:
    valid: bool
    index: int | None = None
    reason: str | None = None


def verify_saw(g: GraphOracle, walk) -> WalkCheck:
    """Check adjacency of consecutive vertices and global distinctness."""
    verts = tuple(walk.vertices if isinstance(walk, Walk) else walk)
    seen = set()
    prev = None
    for i, v in enumerate(verts):
        if v in seen:
            return WalkCheck(valid=False, index=i, reason="revisit")
        seen.add(v)
        if prev is not None and v not in g.neighbors(prev):
            return WalkCheck(valid=False, index=i, reason="not adjacent")
        prev = v
    return WalkCheck(valid=True)


@dataclass(frozen=True)
class SurgeryStep:
    """One cut-and-reroute instruction.

    split_index is h for the detour variant and alpha for the crossing
    variant (which also needs beta_index, the last copy-visit step).  The
    automorphism must move the relevant side of the copy to a different
    component.  A connector may be supplied for replay; otherwise it is
    searched deterministically.
    """

    copy_vertices: frozenset
    split_index: int
    automorphism: object
    variant: str = "lemma24"
    beta_index: int | None = None
    connector: tuple[VertexKey, ...] | None = None
    search_radius: int | None = None
    require_cover: bool = True

    def __post_init__(self):
        if self.variant not in ("lemma24", "lemma26"):
            raise InvalidParameter(f"unknown surgery variant {self.variant!r}")
        if not self.copy_vertices:
            raise InvalidParameter("surgery needs a nonempty cut copy")
        if self.variant == "lemma26" and self.beta_index is None:
            raise InvalidParameter("crossing variant needs beta_index")


@dataclass(frozen=True)
class SurgeryResult:
    walk: Walk
    approach_length: int
    bridge_length: int
    growth: int
    component_before: int
    component_after: int


@dataclass(frozen=True)
class SurgeryPlan:
    base_walk: Walk
    steps: tuple[SurgeryStep, ...]
    delta: Fraction | None = None


@dataclass(frozen=True)
class IteratedResult:
    walk: Walk
    step_results: tuple[SurgeryResult, ...]
    used_copies: tuple[frozenset, ...]
    max_approach: int
    max_bridge: int

    @property
    def growth(self) -> int:
        return sum(r.growth for r in self.step_results)


def _component_report(g, copy, radius):
    return components_after_removal(g, copy, min(copy), radius)


def _bfs_constrained(
    g: GraphOracle, start: VertexKey, goal: VertexKey, allowed, cap: int
) -> tuple[VertexKey, ...] | None:
    """Deterministic shortest path start -> goal through allowed vertices."""
    if start == goal:
        return (start,)
    parent = {start: start}
    frontier = [start]
    for _ in range(cap):
        nxt = []
        for w in frontier:
            for x in g.neighbors(w):
                if x in parent or (x != goal and not allowed(x)):
                    continue
                parent[x] = w
                if x == goal:
                    path = [x]
                    while path[-1] != start:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return tuple(path)
                nxt.append(x)
        if not nxt:
            return None
        frontier = sorted(nxt)
    return None


def _covering_saw(
    g: GraphOracle,
    start: VertexKey,
    goal: VertexKey,
    allowed,
    cover: frozenset,
    max_len: int,
) -> tuple[VertexKey, ...] | None:
    """Shortest SAW start -> goal through allowed vertices visiting all of
    ``cover``; iterative deepening keeps the result deterministic."""
    for limit in range(len(cover), max_len + 1):
        path = [start]
        onpath = {start}

        def go() -> bool:
            u = path[-1]
            if u == goal:
                return cover <= onpath
            if len(path) > limit:
                return False
            for w in g.neighbors(u):
                if w in onpath or (w != goal and not allowed(w)):
                    continue
                onpath.add(w)
                path.append(w)
                if go():
                    return True
                path.pop()
                onpath.discard(w)
            return False

        if go():
            return tuple(path)
    return None


def single_surgery(g: GraphOracle, walk: Walk, step: SurgeryStep) -> SurgeryResult:
    """Execute one surgery step and verify the outcome.

    The prefix up to the split index is preserved verbatim and the suffix
    image equals the automorphism applied pointwise; a flood fill certifies
    that the suffix changed component.  Any self-intersection raises
    SurgeryConflict with the colliding vertex.
    """
    verts = walk.vertices
    n = len(verts) - 1
    copy = step.copy_vertices
    phi = step.automorphism
    radius = step.search_radius or (len(verts) + len(copy) + 4)
    rep = _component_report(g, copy, radius)

    def comp(x: VertexKey) -> int | None:
        return rep.component_of(x)

    phi_inv = phi.inverse()

    def allowed(x: VertexKey) -> bool:
        # stay inside the certified ball, outside A and phi(A)
        if x in copy:
            in_a = False
        else:
            lab = comp(x)
            if lab is None:
                return False
            in_a = lab == lab_a
        if in_a:
            return False
        pre = phi_inv.apply(x)
        if pre in copy:
            return True
        lab_pre = comp(pre)
        if lab_pre is None:
            return False
        return lab_pre != lab_a

    if step.variant == "lemma24":
        h = step.split_index
        if not 0 <= h <= n:
            raise InvalidParameter(f"split index {h} outside walk")
        if any(x in copy for x in verts):
            raise SurgeryConflict("base walk touches the cut copy")
        pivot = verts[h]
        image_pivot = phi.apply(pivot)
        lab_a = comp(pivot)
        lab_b = comp(image_pivot)
        if lab_a is None or lab_b is None:
            raise RadiusTooSmall("split vertex or its image outside the flood ball")
        if lab_a == lab_b:
            raise InvalidAutomorphism(
                "automorphism keeps the suffix in the same component"
            )
        omega = step.connector or shortest_path(g, pivot, copy, cap=radius)
        if omega is None:
            raise SurgeryConflict("no connector from the split vertex to the copy")
        if omega[0] != pivot or omega[-1] not in copy:
            raise SurgeryConflict("connector endpoints do not match the step")
        s_star = omega[-1]
        image_s = phi.apply(s_star)
        if image_s == s_star:
            bridge: tuple[VertexKey, ...] = (s_star,)
        else:
            bridge = _bfs_constrained(g, s_star, image_s, allowed, cap=radius)
            if bridge is None:
                raise SurgeryConflict(
                    "no bridge between the connector end and its image"
                )
        theta_src = tuple(reversed(omega)) + verts[h + 1 :]
        theta = tuple(phi.apply(x) for x in theta_src)
        out = verts[: h + 1] + omega[1:] + bridge[1:] + theta[1:]
        approach = len(omega) - 1
        bridge_len = len(bridge) - 1
        suffix_image_start = comp(theta[-1] if len(theta) == 1 else theta[1])
    else:
        alpha = step.split_index
        beta = step.beta_index
        if not 1 <= alpha <= beta <= n - 1:
            raise InvalidParameter("crossing variant needs 1 <= alpha <= beta <= n-1")
        if verts[alpha] not in copy or verts[beta] not in copy:
            raise InvalidParameter("alpha/beta must be copy-visit steps")
        visits = [i for i, x in enumerate(verts) if x in copy]
        if visits[0] != alpha or visits[-1] != beta:
            raise InvalidParameter("alpha/beta must be the first/last copy visits")
        exit_vertex = verts[beta + 1]
        image_exit = phi.apply(exit_vertex)
        lab_a = comp(exit_vertex)
        lab_b = comp(image_exit)
        if lab_a is None or lab_b is None:
            raise RadiusTooSmall("suffix start or its image outside the flood ball")
        if lab_a == lab_b:
            raise InvalidAutomorphism(
                "automorphism keeps the suffix in the same component"
            )
        target = phi.apply(verts[beta])
        if step.connector is not None:
            omega = step.connector
        elif step.require_cover:
            omega = _covering_saw(
                g,
                verts[alpha],
                target,
                allowed,
                cover=copy,
                max_len=min(radius, len(copy) + 8),
            )
        else:
            omega = _bfs_constrained(g, verts[alpha], target, allowed, cap=radius)
        if omega is None:
            raise SurgeryConflict("no connector through the copy region")
        if omega[0] != verts[alpha] or omega[-1] != target:
            raise SurgeryConflict("connector endpoints do not match the step")
        theta = tuple(phi.apply(x) for x in verts[beta + 1 :])
        out = verts[:alpha] + omega + theta
        approach = len(omega) - 1
        bridge_len = 0
        suffix_image_start = lab_b

    check = verify_saw(g, out)
    if not check.valid:
        raise SurgeryConflict(
            f"surgery output is not a SAW ({check.reason} at {check.index})",
            index=check.index,
            vertex=out[check.index] if check.index is not None else None,
        )
    return SurgeryResult(
        walk=Walk(out),
        approach_length=approach,
        bridge_length=bridge_len,
        growth=len(out) - len(verts),
        component_before=lab_a,
        component_after=suffix_image_start if suffix_image_start is not None else lab_b,
    )


def plan_detour_cylinder(g, walk: Walk, gap: int = 0) -> SurgeryStep:
    """Detour plan on a cylinder: cut at the column just right of the walk.

    The cut copy is the column max_x + 1 + gap, the split index the first
    walk vertex of maximal x (the closest to the copy), and the
    automorphism the reflection through the copy column, which swaps the
    two sides and fixes the column.
    """
    from .lattices import Cylinder, LatticeReflection, dec_xy

    if not isinstance(g, Cylinder):
        raise InvalidParameter("cylinder detour plan needs a Cylinder oracle")
    if gap < 0:
        raise InvalidParameter("gap must be >= 0")
    xs = [dec_xy(v)[0] for v in walk.vertices]
    x_max = max(xs)
    axis = x_max + 1 + gap
    split = xs.index(x_max)
    return SurgeryStep(
        copy_vertices=g.column(axis),
        split_index=split,
        automorphism=LatticeReflection(axis),
        variant="lemma24",
        search_radius=len(walk.vertices) + g.circumference + 2 * (gap + 2),
    )


def plan_detour_free_product(g, walk: Walk, rng) -> SurgeryStep | None:
    """Detour plan on a free-product graph: cut at a fresh child vertex.

    Picks a random walk vertex with an unused child letter w; the cut copy
    is {w}, the split index the first walk vertex adjacent to w, and the
    automorphism the conjugated left multiplication w.u.w^-1 with u a
    random letter of the factor opposite to the walk's side of w, which
    moves the walk's side of w into w's fresh branch.  Returns None when
    the chosen base walk has no free child (never at the root).
    """
    from .freeprod import FreeProductGraph, FreeProductLeftMul, encode_word

    if not isinstance(g, FreeProductGraph):
        raise InvalidParameter("free-product detour plan needs a FreeProductGraph")
    g._require_groups()
    on_walk = set(walk.vertices)
    order = list(range(len(walk.vertices)))
    rng.shuffle(order)
    for j in order:
        word = g.decode(walk.vertices[j])
        last = word[-1][0] if word else None
        children = []
        for i in (1, 2):
            if i == last:
                continue
            for y in sorted(g.factor(i).adj[0]):
                child = encode_word(word + ((i, y),))
                if child not in on_walk:
                    children.append(child)
        if not children:
            continue
        w_key = children[int(rng.integers(len(children)))]
        w_word = g.decode(w_key)
        split = next(
            idx
            for idx, v in enumerate(walk.vertices)
            if v in g.neighbors(w_key)
        )
        seam = g.word_mul(g.word_inv(w_word), g.decode(walk.vertices[split]))
        side = seam[0][0]
        other = 2 if side == 1 else 1
        letters = sorted(y for y in g.factor(other).adj[0])
        u = letters[int(rng.integers(len(letters)))]
        conj = g.word_mul(
            g.word_mul(w_word, ((other, u),)), g.word_inv(w_word)
        )
        # probes, connector, and bridge all sit within distance 2 of the
        # copy, so a tiny flood radius suffices (balls grow exponentially
        # here, so a walk-length radius would be prohibitive)
        return SurgeryStep(
            copy_vertices=frozenset({w_key}),
            split_index=split,
            automorphism=FreeProductLeftMul(g, conj),
            variant="lemma24",
            search_radius=5,
        )
    return None


def iterated_surgery(g: GraphOracle, plan: SurgeryPlan) -> IteratedResult:
    """Apply the plan's steps left to right under composed automorphisms.

    Step data is given in base-walk coordinates; each later cut copy and
    split index is transported through the automorphisms applied so far.
    Consecutive transported copies must stay disjoint, mirroring the
    non-interference claim of the iterated construction.
    """
    splits = [s.split_index for s in plan.steps]
    if any(b <= a for a, b in zip(splits, splits[1:])):
        raise InvalidParameter("plan split indices must be strictly increasing")
    current = plan.base_walk
    phi_total = IdentityTranslation()
    offset = 0
    results: list[SurgeryResult] = []
    used: list[frozenset] = []
    for step in plan.steps:
        copy_img = frozenset(phi_total.apply(x) for x in step.copy_vertices)
        if used and used[-1] & copy_img:
            raise SurgeryConflict("consecutive transported copies intersect")
        phi_here = compose(compose(phi_total, step.automorphism), phi_total.inverse())
        moved = SurgeryStep(
            copy_vertices=copy_img,
            split_index=step.split_index + offset,
            automorphism=phi_here,
            variant=step.variant,
            beta_index=None if step.beta_index is None else step.beta_index + offset,
            connector=step.connector,
            search_radius=step.search_radius,
            require_cover=step.require_cover,
        )
        res = single_surgery(g, current, moved)
        results.append(res)
        used.append(copy_img)
        offset += res.growth
        phi_total = compose(phi_here, phi_total)
        current = res.walk
    return IteratedResult(
        walk=current,
        step_results=tuple(results),
        used_copies=tuple(used),
        max_approach=max((r.approach_length for r in results), default=0),
        max_bridge=max((r.bridge_length for r in results), default=0),
    )
