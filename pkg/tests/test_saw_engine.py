import math
from fractions import Fraction

import pytest

from helpers import c3c3_count_recurrence, naive_count_walks, naive_walks_list

from sawlab.errors import EmptyInput, InvalidParameter, InvalidWalk
from sawlab.graph import distance_labels
from sawlab.saw import (
    CountTable,
    Walk,
    count_walks,
    count_walks_parallel,
    displacement_stats,
    enumerate_walks,
    fit_displacement_exponent,
    mu_bounds,
)

# computed once with the naive oracle (n <= 8) and the engine (beyond);
# the engine's prefix is re-checked live against count_walks below
Z2_COUNTS = [1, 4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100, 120292,
             324932, 881500, 2374444, 6416596, 17245332]
HEX_COUNTS = [1, 3, 6, 12, 24, 48, 90, 174, 336, 648, 1218, 2328, 4416, 8388,
              15780, 29892, 56268, 106200, 199350]


def test_c0_is_one(square, hexagonal, cyl3, k2k2, c3c3):
    for g, v in [
        (square, b"0,0"), (hexagonal, b"0,0"), (cyl3, b"0,0"),
        (k2k2, b""), (c3c3, b""),
    ]:
        assert count_walks(g, v, 0)[0] == 1


def test_square_counts_match_naive(square):
    naive = naive_count_walks(square, b"0,0", 6)
    table = count_walks(square, b"0,0", 6)
    assert naive == [table[n] for n in range(7)]
    assert naive == Z2_COUNTS[:7]


def test_square_frozen_prefix(square):
    t = count_walks(square, b"0,0", 10)
    assert [t[n] for n in range(11)] == Z2_COUNTS[:11]


def test_hexagonal_frozen_prefix(hexagonal):
    t = count_walks(hexagonal, b"0,0", 12)
    assert [t[n] for n in range(13)] == HEX_COUNTS[:13]


def test_k2k2_counts(k2k2):
    t = count_walks(k2k2, b"", 9)
    assert [t[n] for n in range(10)] == [1] + [2] * 9


def test_c3c3_recurrence(c3c3):
    t = count_walks(c3c3, b"", 10)
    assert [t[n] for n in range(11)] == c3c3_count_recurrence(10)


def test_count_bound(square):
    t = count_walks(square, b"0,0", 8)
    for n in range(1, 9):
        assert t[n] <= 4 * 3 ** (n - 1)


def test_submultiplicative(square, cyl4):
    for g, v in [(square, b"0,0"), (cyl4, b"0,0")]:
        t = count_walks(g, v, 10)
        for m in range(1, 10):
            for n in range(1, 11 - m):
                assert t[m + n] <= t[m] * t[n]


def test_count_walks_invalid(square):
    with pytest.raises(InvalidParameter):
        count_walks(square, b"0,0", -1)


def test_parallel_matches_serial(square, cyl4, hexagonal):
    for g, v, n in [(square, b"0,0", 10), (cyl4, b"0,0", 10), (hexagonal, b"0,0", 12)]:
        serial = count_walks(g, v, n)
        for workers in (1, 4, 8):
            par = count_walks_parallel(g, v, n, workers)
            assert par.entries == serial.entries


def test_parallel_invalid_workers(square):
    with pytest.raises(InvalidParameter):
        count_walks_parallel(square, b"0,0", 4, 0)


def test_enumerate_walks_matches_counts(cyl3):
    t = count_walks(cyl3, b"0,0", 5)
    for n in range(6):
        assert sum(1 for _ in enumerate_walks(cyl3, b"0,0", n)) == t[n]


def test_walk_validation(square):
    Walk((b"0,0", b"1,0")).validate(square)
    with pytest.raises(InvalidWalk):
        Walk((b"0,0", b"2,0")).validate(square)
    with pytest.raises(InvalidWalk):
        Walk((b"0,0", b"1,0", b"0,0")).validate(square)


# ------------------------------------------------------------ displacement


def test_displacement_n1(square, hexagonal):
    for g, deg in ((square, 4), (hexagonal, 3)):
        st = displacement_stats(g, b"0,0", 1)
        assert st.histogram == {1: deg}
        assert st.mean_square == 1


def test_displacement_k2k2(k2k2):
    for n in (3, 6):
        st = displacement_stats(k2k2, b"", n, [Fraction(1)])
        assert st.histogram == {n: 2}
        assert st.tail_counts[Fraction(1)] == 2
        assert st.mean_square == n * n


def test_displacement_mass_and_cross_check(cyl4):
    n = 7
    st = displacement_stats(cyl4, b"0,0", n, [Fraction(1, 8), Fraction(1, 2)])
    assert st.total == count_walks(cyl4, b"0,0", n)[n]
    # independent recomputation from the naive walk list
    labels = distance_labels(cyl4, b"0,0", n)
    walks = naive_walks_list(cyl4, b"0,0", n)
    hist = {}
    for w in walks:
        d = labels[w[-1]]
        hist[d] = hist.get(d, 0) + 1
    assert hist == st.histogram
    ms = Fraction(sum(labels[w[-1]] ** 2 for w in walks), len(walks))
    assert ms == st.mean_square


def test_displacement_tail_monotone_in_threshold(cyl3):
    st = displacement_stats(
        cyl3, b"0,0", 8, [Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(1)]
    )
    counts = [st.tail_counts[a] for a in sorted(st.tail_counts)]
    assert counts == sorted(counts, reverse=True)


def test_displacement_bad_threshold(square):
    with pytest.raises(InvalidParameter):
        displacement_stats(square, b"0,0", 2, [Fraction(3, 2)])
    with pytest.raises(InvalidParameter):
        displacement_stats(square, b"0,0", 0)


def test_fitted_nu_ballistic_on_path(k2k2):
    stats = [displacement_stats(k2k2, b"", n) for n in range(2, 9)]
    nu, window = fit_displacement_exponent(stats)
    assert abs(nu - 1.0) < 1e-9
    assert window == (2, 8)


def test_fit_needs_two_points(k2k2):
    with pytest.raises(EmptyInput):
        fit_displacement_exponent([displacement_stats(k2k2, b"", 3)])


# ------------------------------------------------------------ mu bounds


def test_mu_bounds_k2k2(k2k2):
    t = count_walks(k2k2, b"", 10)
    b = mu_bounds(t)
    assert b.upper == 2 ** (1 / 10)
    assert b.upper_n == 10


def test_mu_bounds_square_frozen_table():
    t = CountTable(origin=b"0,0", entries=dict(enumerate(Z2_COUNTS)))
    b = mu_bounds(t)
    assert 2.63 < b.upper < 3.01
    assert b.upper_n == 16


def test_mu_bounds_hexagonal_frozen_table():
    t = CountTable(origin=b"0,0", entries=dict(enumerate(HEX_COUNTS)))
    b = mu_bounds(t)
    assert b.upper >= math.sqrt(2 + math.sqrt(2))


def test_mu_bounds_empty():
    with pytest.raises(EmptyInput):
        mu_bounds(CountTable(origin=b"0,0", entries={0: 1}))


def test_mu_running_min_monotone(cyl4):
    b = mu_bounds(count_walks(cyl4, b"0,0", 10))
    mins = [r for _n, r in b.running_min]
    assert mins == sorted(mins, reverse=True)
