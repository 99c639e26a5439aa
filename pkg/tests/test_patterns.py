import math
from fractions import Fraction

import pytest

from sawlab.errors import InvalidParameter
from sawlab.graph import distance_labels
from sawlab.patterns import (
    BRegime,
    ComponentSplitOracle,
    CutSet,
    EventKind,
    FreeProductOrbit,
    LeftMulOrbit,
    ShiftOrbit,
    count_b,
    count_restricted,
    detect_events,
    validate_cutset,
)
from sawlab.saw import Walk, count_walks, enumerate_walks


@pytest.fixture(scope="module")
def cyl3_cut(cyl3):
    return CutSet(S=cyl3.column(0), orbit=ShiftOrbit(1), connectivity_radius=6)


@pytest.fixture(scope="module")
def cyl3_cut_sprime(cyl3):
    sp = frozenset(b"%d,%d" % (x, y) for x in (-1, 0, 1) for y in range(3))
    return CutSet(
        S=cyl3.column(0), orbit=ShiftOrbit(1), S_prime=sp, connectivity_radius=6
    )


@pytest.fixture(scope="module")
def c3c3_cut(c3c3):
    return CutSet(S=frozenset({b""}), orbit=FreeProductOrbit(c3c3), connectivity_radius=4)


@pytest.fixture(scope="module")
def cyl3_splitter(cyl3):
    return ComponentSplitOracle(cyl3, radius=11)


@pytest.fixture(scope="module")
def c3c3_splitter(c3c3):
    return ComponentSplitOracle(c3c3, radius=7)


# -------------------------------------------------------------- validation


def test_validate_cylinder_example(cyl3, cyl3_cut_sprime):
    rep = validate_cutset(cyl3, cyl3_cut_sprime, radius=6)
    assert rep.connected == "pass"
    assert rep.two_components == "pass"
    assert rep.boundary_components == 2
    assert rep.sprime_cover == "pass"
    assert rep.all_passed


def test_validate_square_single_vertex_fails(square):
    cs = CutSet(S=frozenset({b"0,0"}), orbit=ShiftOrbit(1))
    rep = validate_cutset(square, cs, radius=6)
    assert rep.two_components == "fail"
    assert rep.boundary_components == 1


def test_validate_c3c3_single_vertex(c3c3, c3c3_cut):
    cs = CutSet(
        S=frozenset({b""}),
        orbit=c3c3_cut.orbit,
        S_prime=frozenset({b""}),
        connectivity_radius=4,
    )
    rep = validate_cutset(c3c3, cs, radius=6)
    assert rep.connected == "pass"
    assert rep.two_components == "pass"
    # single-vertex S' has no boundary pairs: coverage is vacuous
    assert rep.sprime_cover == "pass"


# -------------------------------------------------------------- orbits


def test_shift_orbit_copies(cyl3, cyl3_cut):
    hits = cyl3_cut.copies_S(b"4,1")
    assert len(hits) == 1
    copy, tr = hits[0]
    assert copy == cyl3.column(4)
    assert tr.name == "shift:+4"


def test_shift_orbit_restricted(cyl3):
    cs = CutSet(S=cyl3.column(0), orbit=ShiftOrbit(2))
    assert cs.copies_S(b"3,0") == ()
    assert len(cs.copies_S(b"4,0")) == 1


def test_free_product_orbit_every_vertex(c3c3, c3c3_cut):
    for v in (b"", b"1:1", b"1:2|2:1"):
        hits = c3c3_cut.copies_S(v)
        assert len(hits) == 1
        assert hits[0][0] == frozenset({v})


def test_left_mul_orbit_on_cayley(amalgam_cayley, amalgam_pres):
    ident = amalgam_cayley.identity_key()
    cs = CutSet(
        S=frozenset({ident}), orbit=LeftMulOrbit(amalgam_cayley), connectivity_radius=4
    )
    v = amalgam_cayley.neighbors(ident)[0]
    hits = cs.copies_S(v)
    assert hits[0][0] == frozenset({v})


# -------------------------------------------------------------- detection


def test_detect_confined_walk_no_events(cyl3):
    # even-shift orbit: a walk inside an odd column never meets a copy
    cs = CutSet(S=cyl3.column(0), orbit=ShiftOrbit(2))
    walk = Walk((b"1,0", b"1,1", b"1,2"))
    assert detect_events(cyl3, walk, cs, EventKind(tag="ektilde", k=1)) == []


def test_detect_straight_line_e1(cyl3, cyl3_cut):
    walk = Walk(tuple(b"%d,0" % x for x in range(7)))
    recs = detect_events(cyl3, walk, cyl3_cut, EventKind(tag="ek", k=1))
    assert [r.step_j for r in recs] == list(range(7))
    assert all(r.visited_count == 1 for r in recs)


def test_detect_estar_needs_full_visit(cyl3, cyl3_cut):
    walk = Walk(tuple(b"%d,0" % x for x in range(7)))
    assert detect_events(cyl3, walk, cyl3_cut, EventKind(tag="estar")) == []
    covering = Walk((b"0,0", b"1,0", b"1,1", b"1,2", b"2,2"))
    recs = detect_events(cyl3, covering, cyl3_cut, EventKind(tag="estar"))
    assert [r.step_j for r in recs] == [1, 2, 3]
    assert all(r.witness_copy == cyl3.column(1) for r in recs)


def test_detect_f_constructed(cyl3, cyl3_cut):
    walk = Walk((b"0,0", b"1,0", b"1,1", b"1,2", b"2,2"))
    recs = detect_events(cyl3, walk, cyl3_cut, EventKind(tag="f", m=6, regime="lt"))
    assert [(r.step_j, r.alpha, r.beta) for r in recs] == [
        (1, 1, 3), (2, 1, 3), (3, 1, 3)
    ]


def test_detect_f_same_side_exit_is_not_f(cyl3, cyl3_cut):
    # enters and leaves column 1 on the same side: no crossing
    walk = Walk((b"0,0", b"1,0", b"1,1", b"0,1"))
    assert detect_events(cyl3, walk, cyl3_cut, EventKind(tag="f", m=6, regime="lt")) == []


def test_detect_em_implies_e(cyl3, cyl3_cut):
    # every step flagged by the windowed event is flagged by the plain one
    for verts in enumerate_walks(cyl3, b"0,0", 6):
        walk = Walk(verts)
        for kind_m, kind in [
            (EventKind(tag="estar", m=2), EventKind(tag="estar")),
            (EventKind(tag="ek", k=2, m=2), EventKind(tag="ek", k=2)),
        ]:
            flagged_m = {r.step_j for r in detect_events(cyl3, walk, cyl3_cut, kind_m)}
            flagged = {r.step_j for r in detect_events(cyl3, walk, cyl3_cut, kind)}
            assert flagged_m <= flagged


def test_detect_kind_validation(cyl3_cut):
    with pytest.raises(InvalidParameter):
        EventKind(tag="bogus")
    with pytest.raises(InvalidParameter):
        EventKind(tag="ek")  # k missing
    with pytest.raises(InvalidParameter):
        EventKind(tag="f", m=2)  # regime missing
    with pytest.raises(InvalidParameter):
        EventKind(tag="ek", k=5).check_against(
            CutSet(S=frozenset({b"0,0"}), orbit=ShiftOrbit(1))
        )


def test_f_distinct_copies_bound_displacement(cyl3, cyl3_cut, cyl3_splitter):
    # each crossing copy separates start from end; with disjoint copies the
    # displacement is at least the number of distinct witness copies
    labels = distance_labels(cyl3, b"0,0", 8)
    kind = EventKind(tag="f", m=3, regime="lt")
    checked = 0
    for verts in enumerate_walks(cyl3, b"0,0", 8):
        recs = detect_events(cyl3, Walk(verts), cyl3_cut, kind, splitter=cyl3_splitter)
        if recs:
            distinct = len({r.witness_copy for r in recs})
            assert labels[verts[-1]] >= distinct
            checked += 1
    assert checked > 0


def test_f_distinct_copies_bound_on_free_product(c3c3, c3c3_cut, c3c3_splitter):
    labels = distance_labels(c3c3, b"", 7)
    kind = EventKind(tag="f", m=2, regime="lt")
    checked = 0
    for verts in enumerate_walks(c3c3, b"", 7):
        recs = detect_events(c3c3, Walk(verts), c3c3_cut, kind, splitter=c3c3_splitter)
        if recs:
            distinct = len({r.witness_copy for r in recs})
            assert labels[verts[-1]] >= distinct
            checked += 1
    assert checked > 0


# ------------------------------------------------------- restricted counts


def test_restricted_vacuous_when_r_large(cyl3, cyl3_cut):
    n = 6
    base = count_walks(cyl3, b"0,0", n)
    est = count_restricted(
        cyl3, b"0,0", n, cyl3_cut, EventKind(tag="ektilde", k=1), r=n + 1
    )
    assert all(est.table[i] == base[i] for i in range(n + 1))


def test_restricted_full_orbit_zero(cyl3, cyl3_cut):
    est = count_restricted(cyl3, b"0,0", 6, cyl3_cut, EventKind(tag="ektilde", k=1), r=0)
    assert all(est.table[i] == 0 for i in range(7))


def test_restricted_even_orbit_positive_then_trapped(cyl3):
    # copies on even columns only: a walk from an odd column stays eventful
    # only when it leaves the column, so short walks survive and long ones
    # are trapped in the 3-ring
    cs = CutSet(S=cyl3.column(0), orbit=ShiftOrbit(2))
    est = count_restricted(cyl3, b"1,0", 6, cs, EventKind(tag="ektilde", k=1), r=0)
    base = count_walks(cyl3, b"1,0", 6)
    assert est.table[1] == 2 and est.table[2] == 2
    assert 0 < est.table[1] < base[1]
    assert all(est.table[i] == 0 for i in range(3, 7))


def test_restricted_r_monotone(cyl3, cyl3_cut):
    n = 7
    tables = [
        count_restricted(cyl3, b"0,0", n, cyl3_cut, EventKind(tag="ek", k=2), r=r).table
        for r in range(4)
    ]
    for lo, hi in zip(tables, tables[1:]):
        for i in range(n + 1):
            assert lo[i] <= hi[i]


def test_restricted_k_monotone(cyl3, cyl3_cut):
    n = 7
    tables = [
        count_restricted(
            cyl3, b"0,0", n, cyl3_cut, EventKind(tag="ektilde", k=k), r=0
        ).table
        for k in (1, 2, 3)
    ]
    for lo, hi in zip(tables, tables[1:]):
        for i in range(n + 1):
            assert lo[i] <= hi[i]


def test_sandwich(cyl3, cyl3_cut):
    n = 7
    base = count_walks(cyl3, b"0,0", n)
    estar = count_restricted(cyl3, b"0,0", n, cyl3_cut, EventKind(tag="estar"), r=0)
    etilde = count_restricted(
        cyl3, b"0,0", n, cyl3_cut, EventKind(tag="ektilde", k=3), r=0
    )
    for i in range(n + 1):
        assert estar.table[i] <= etilde.table[i] <= base[i]


def test_restricted_brute_force_cross_check(cyl3, cyl3_cut):
    # independent recount by filtering full enumerations through the
    # per-walk detector
    n = 6
    for kind, r in [
        (EventKind(tag="estar"), 0),
        (EventKind(tag="ek", k=2), 1),
        (EventKind(tag="ektilde", k=1, m=2), 0),
    ]:
        est = count_restricted(cyl3, b"0,0", n, cyl3_cut, kind, r=r)
        for nn in range(n + 1):
            brute = sum(
                1
                for verts in enumerate_walks(cyl3, b"0,0", nn)
                if len(detect_events(cyl3, Walk(verts), cyl3_cut, kind)) <= r
            )
            assert est.table[nn] == brute, (kind.tag, nn)


def test_restricted_sprime_variants(cyl3, cyl3_cut_sprime):
    n = 6
    cal = count_restricted(
        cyl3, b"0,0", n, cyl3_cut_sprime, EventKind(tag="calek", k=2), r=0
    )
    caltilde = count_restricted(
        cyl3, b"0,0", n, cyl3_cut_sprime, EventKind(tag="calektilde", k=2), r=0
    )
    kind = EventKind(tag="calek", k=2)
    for nn in range(n + 1):
        brute = sum(
            1
            for verts in enumerate_walks(cyl3, b"0,0", nn)
            if len(detect_events(cyl3, Walk(verts), cyl3_cut_sprime, kind)) == 0
        )
        assert cal.table[nn] == brute
        # the tilde variant is at most the plain one (extra full-visit event)
        assert caltilde.table[nn] <= cal.table[nn]


def test_restricted_rejects_f(cyl3, cyl3_cut):
    with pytest.raises(InvalidParameter):
        count_restricted(
            cyl3, b"0,0", 4, cyl3_cut, EventKind(tag="f", m=2, regime="lt"), r=0
        )


# ------------------------------------------------------------- b tables


def test_b_impossible_quota(cyl3, cyl3_cut):
    reg = BRegime(branch="lt", a=Fraction(2), m=3)
    est = count_b(cyl3, b"0,0", 6, cyl3_cut, reg, r=6)
    assert all(est.table[i] == 0 for i in range(1, 7))


def test_b_vacuous_f_cap(cyl3, cyl3_cut):
    # r >= n: only the quota restricts
    n = 7
    reg = BRegime(branch="lt", a=Fraction(1, 4), m=3)
    est = count_b(cyl3, b"0,0", n, cyl3_cut, reg, r=n + 1)
    quota_kind = EventKind(tag="estar", m=3)
    for nn in range(n + 1):
        need = math.ceil(Fraction(1, 4) * nn)
        brute = sum(
            1
            for verts in enumerate_walks(cyl3, b"0,0", nn)
            if len(detect_events(cyl3, Walk(verts), cyl3_cut, quota_kind)) >= need
        )
        assert est.table[nn] == brute


def test_b_lt_cross_check(cyl3, cyl3_cut, cyl3_splitter):
    n = 8
    reg = BRegime(branch="lt", a=Fraction(1, 4), m=3)
    est = count_b(cyl3, b"0,0", n, cyl3_cut, reg, r=0)
    quota_kind = EventKind(tag="estar", m=3)
    f_kind = EventKind(tag="f", m=3, regime="lt")
    for nn in range(n + 1):
        need = math.ceil(Fraction(1, 4) * nn)
        brute = 0
        for verts in enumerate_walks(cyl3, b"0,0", nn):
            w = Walk(verts)
            if len(detect_events(cyl3, w, cyl3_cut, quota_kind)) < need:
                continue
            if len(detect_events(cyl3, w, cyl3_cut, f_kind, splitter=cyl3_splitter)) == 0:
                brute += 1
        assert est.table[nn] == brute


def test_b_eq_cross_check(cyl3, cyl3_cut, cyl3_splitter):
    n = 7
    reg = BRegime(branch="eq", a=Fraction(1, 4), m=2, k=1)
    est = count_b(cyl3, b"0,0", n, cyl3_cut, reg, r=0)
    quota_kind = EventKind(tag="ektilde", k=1, m=2)
    kill_kind = EventKind(tag="ek", k=2)
    f_kind = EventKind(tag="f", m=2, regime="eq", k=1)
    for nn in range(n + 1):
        need = math.ceil(Fraction(1, 4) * nn)
        brute = 0
        for verts in enumerate_walks(cyl3, b"0,0", nn):
            w = Walk(verts)
            if detect_events(cyl3, w, cyl3_cut, kill_kind):
                continue
            if len(detect_events(cyl3, w, cyl3_cut, quota_kind)) < need:
                continue
            if len(detect_events(cyl3, w, cyl3_cut, f_kind, splitter=cyl3_splitter)) == 0:
                brute += 1
        assert est.table[nn] == brute, nn


def test_b_scaling_cap(cyl3, cyl3_cut, cyl3_splitter):
    n = 6
    reg = BRegime(branch="lt", a=Fraction(1, 4), m=3)
    est = count_b(cyl3, b"0,0", n, cyl3_cut, reg, a_prime=Fraction(1, 3))
    quota_kind = EventKind(tag="estar", m=3)
    f_kind = EventKind(tag="f", m=3, regime="lt")
    for nn in range(n + 1):
        need = math.ceil(Fraction(1, 4) * nn)
        cap = (1 * nn) // 3
        brute = 0
        for verts in enumerate_walks(cyl3, b"0,0", nn):
            w = Walk(verts)
            if len(detect_events(cyl3, w, cyl3_cut, quota_kind)) < need:
                continue
            if len(detect_events(cyl3, w, cyl3_cut, f_kind, splitter=cyl3_splitter)) <= cap:
                brute += 1
        assert est.table[nn] == brute


def test_b_regime_validation():
    with pytest.raises(InvalidParameter):
        BRegime(branch="lt", a=Fraction(0), m=2)
    with pytest.raises(InvalidParameter):
        BRegime(branch="eq", a=Fraction(1, 2), m=2)  # k missing
    with pytest.raises(InvalidParameter):
        BRegime(branch="nope", a=Fraction(1, 2), m=2)
