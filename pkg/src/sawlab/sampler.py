"""Monte Carlo SAW sampling by dimerization.

Dimerization halves the target length recursively: sample the two halves
independently (the second from the endpoint of the first), reject on any
vertex collision, and resample both halves on rejection.  Conditional on
acceptance the sample is exactly uniform on vertex-transitive graphs,
which is what all quantitative uses here assume; the sampler needs nothing
but the adjacency oracle, so it works unchanged on lattices, free-product
graphs, and Cayley graphs.

Randomness: every sample i of a run draws its own generator from
numpy's PCG64 seeded with SeedSequence(seed, spawn_key=(n, i)).  The
stream therefore depends only on (seed, n, i), never on the worker count
or execution order, and runs are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParameter
from .graph import GraphOracle, NeighborCache, VertexKey, distance_labels
from .saw import Walk

DEFAULT_ATTEMPT_BUDGET = 400


def _dimerize_rec(nbrs, v: VertexKey, n: int, rng, budget: list[int]):
    if n == 0:
        return (v,)
    if n == 1:
        options = nbrs(v)
        if not options:
            return None
        return (v, options[int(rng.integers(len(options)))])
    n1 = (n + 1) // 2
    n2 = n - n1
    while budget[0] > 0:
        budget[0] -= 1
        first = _dimerize_rec(nbrs, v, n1, rng, budget)
        if first is None:
            return None
        second = _dimerize_rec(nbrs, first[-1], n2, rng, budget)
        if second is None:
            return None
        if set(first[:-1]).isdisjoint(second):
            return first + second[1:]
    return None


def dimerize(
    g: GraphOracle,
    v: VertexKey,
    n: int,
    rng: np.random.Generator,
    attempt_budget: int = DEFAULT_ATTEMPT_BUDGET,
) -> Walk | None:
    """One dimerization draw: an n-step SAW from v, or None on budget
    exhaustion (counted by callers, never fatal)."""
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    g.check_key(v)
    nbrs = NeighborCache(g)
    budget = [attempt_budget]
    verts = _dimerize_rec(nbrs, v, n, rng, budget)
    return Walk(verts) if verts is not None else None


def _sample_rng(seed: int, n: int, index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(n, index)))
    )


def sample_walks(
    g: GraphOracle,
    v: VertexKey,
    n: int,
    samples: int,
    seed: int,
    attempt_budget: int = DEFAULT_ATTEMPT_BUDGET,
):
    """Yield (index, walk-or-None) for `samples` independent dimerizations."""
    nbrs = NeighborCache(g)
    for i in range(samples):
        rng = _sample_rng(seed, n, i)
        budget = [attempt_budget]
        verts = _dimerize_rec(nbrs, v, n, rng, budget)
        yield i, (Walk(verts) if verts is not None else None)


@dataclass(frozen=True)
class SampleRun:
    """Monte Carlo estimate of the low-displacement tail at one length."""

    n: int
    samples: int
    seed: int
    alpha: Fraction
    hits: int
    successes: int
    failures: int
    estimate: float
    mean_sq_estimate: float
    ci_halfwidth: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "alpha": str(self.alpha),
            "hits": self.hits,
            "successes": self.successes,
            "failures": self.failures,
            "estimate": self.estimate,
            "mean_sq_estimate": self.mean_sq_estimate,
            "ci_halfwidth": self.ci_halfwidth,
        }


def estimate_speed(
    g: GraphOracle,
    v: VertexKey,
    n_list: list[int],
    alpha: Fraction,
    samples: int,
    seed: int,
    attempt_budget: int = DEFAULT_ATTEMPT_BUDGET,
) -> list[SampleRun]:
    """Estimate P_n(||pi|| <= alpha n) for each n, with 95% normal CIs.

    hits counts successful samples whose endpoint displacement is at most
    alpha*n; estimates condition on dimerization acceptance (exact
    uniformity on vertex-transitive graphs), and failures are reported.
    """
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise InvalidParameter("alpha must lie in (0, 1)")
    if samples < 1:
        raise InvalidParameter("samples must be >= 1")
    g.check_key(v)
    runs = []
    for n in n_list:
        labels = distance_labels(g, v, n)
        bound = alpha * n
        hits = 0
        successes = 0
        failures = 0
        sq_sum = 0.0
        for _i, walk in sample_walks(g, v, n, samples, seed, attempt_budget):
            if walk is None:
                failures += 1
                continue
            successes += 1
            disp = labels[walk.end]
            sq_sum += disp * disp
            if disp <= bound:
                hits += 1
        if successes:
            p = hits / successes
            ci = 1.96 * math.sqrt(p * (1.0 - p) / successes)
            mean_sq = sq_sum / successes
        else:
            p, ci, mean_sq = math.nan, math.nan, math.nan
        runs.append(
            SampleRun(
                n=n,
                samples=samples,
                seed=seed,
                alpha=alpha,
                hits=hits,
                successes=successes,
                failures=failures,
                estimate=p,
                mean_sq_estimate=mean_sq,
                ci_halfwidth=ci,
            )
        )
    return runs
