from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from sawlab.errors import InvalidParameter
from sawlab.graph import distance_labels
from sawlab.sampler import dimerize, estimate_speed, sample_walks
from sawlab.saw import displacement_stats, enumerate_walks


def rng_of(seed):
    return np.random.Generator(np.random.PCG64(seed))


def test_dimerize_n1_uniform_neighbor(square):
    counts = Counter()
    for i in range(4000):
        w = dimerize(square, b"0,0", 1, rng_of(i))
        counts[w.vertices[1]] += 1
    assert set(counts) == set(square.neighbors(b"0,0"))
    assert max(counts.values()) - min(counts.values()) < 4000 * 0.1


def test_dimerize_produces_saws(cyl4):
    rng = rng_of(1)
    for _ in range(50):
        w = dimerize(cyl4, b"0,0", 12, rng)
        if w is not None:
            w.validate(cyl4)


def test_dimerize_k2k2_two_walks(k2k2):
    counts = Counter()
    for i in range(2000):
        w = dimerize(k2k2, b"", 6, rng_of(i))
        counts[w.vertices] += 1
    assert len(counts) == 2
    for c in counts.values():
        assert abs(c - 1000) < 120


def test_dimerize_rejects_bad_n(square):
    with pytest.raises(InvalidParameter):
        dimerize(square, b"0,0", 0, rng_of(0))


def test_sample_walks_deterministic(cyl3):
    runs = [list(sample_walks(cyl3, b"0,0", 8, 50, seed=9)) for _ in range(2)]
    a = [(i, w.vertices if w else None) for i, w in runs[0]]
    b = [(i, w.vertices if w else None) for i, w in runs[1]]
    assert a == b


def test_sample_walks_index_stability(cyl3):
    # sample i depends only on (seed, n, i): prefixes of longer runs agree
    short = [(i, w.vertices if w else None) for i, w in sample_walks(cyl3, b"0,0", 8, 20, seed=3)]
    long = [(i, w.vertices if w else None) for i, w in sample_walks(cyl3, b"0,0", 8, 60, seed=3)]
    assert long[:20] == short


def test_dimerize_small_n_uniform(cyl3):
    # empirical frequencies at n=4 against the exact uniform distribution
    n, samples = 4, 20000
    exact = list(enumerate_walks(cyl3, b"0,0", n))
    counts = Counter()
    fails = 0
    for _i, w in sample_walks(cyl3, b"0,0", n, samples, seed=17):
        if w is None:
            fails += 1
        else:
            counts[w.vertices] += 1
    assert fails == 0
    assert set(counts) <= set(exact)
    expected = samples / len(exact)
    # 5 sigma band per walk frequency
    sigma = (expected * (1 - 1 / len(exact))) ** 0.5
    for w in exact:
        assert abs(counts[w] - expected) < 5 * sigma + 5


def test_estimate_speed_matches_exact(cyl3):
    alpha = Fraction(1, 4)
    n = 8
    runs = estimate_speed(cyl3, b"0,0", [n], alpha, samples=4000, seed=23)
    run = runs[0]
    stats = displacement_stats(cyl3, b"0,0", n)
    exact = float(stats.low_fraction(alpha * n))
    assert abs(run.estimate - exact) <= run.ci_halfwidth + 0.01
    assert run.hits <= run.successes <= run.samples


def test_estimate_speed_k2k2_zero(k2k2):
    runs = estimate_speed(k2k2, b"", [6, 10], Fraction(1, 2), samples=300, seed=5)
    for r in runs:
        assert r.estimate == 0.0
        assert r.hits == 0


def test_estimate_speed_validation(cyl3):
    with pytest.raises(InvalidParameter):
        estimate_speed(cyl3, b"0,0", [4], Fraction(3, 2), 100, 0)
    with pytest.raises(InvalidParameter):
        estimate_speed(cyl3, b"0,0", [4], Fraction(1, 2), 0, 0)


def test_estimate_speed_reproducible(cyl4):
    a = estimate_speed(cyl4, b"0,0", [10], Fraction(1, 4), 500, seed=7)
    b = estimate_speed(cyl4, b"0,0", [10], Fraction(1, 4), 500, seed=7)
    assert a == b


def test_failures_counted_not_fatal(cyl3):
    # a tiny budget forces some dimerization failures at larger n
    runs = estimate_speed(
        cyl3, b"0,0", [24], Fraction(1, 4), samples=200, seed=11, attempt_budget=3
    )
    r = runs[0]
    assert r.failures > 0
    assert r.successes + r.failures == r.samples
