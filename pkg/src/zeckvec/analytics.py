"""Summand-count statistics over the scalar windows and minimality checking.

The number of summands of a vector in shell n equals the number of summands
of its scalar image, so distributions are computed on the integer interval
[X_n, X_{n+1}) directly: exhaustively when the window is small enough,
otherwise by seeded uniform sampling.  Moments use population (biased)
estimators.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional

from .bridge import DEFAULT_ENUMERATION_CAP, legal_decompose
from .errors import CapExceededError, OracleExhaustedError
from .fileio import atomic_write_text
from .normalize import decompose
from .recurrence import RecurrenceVector
from .representation import coefficient_sum

GOLDEN_RATIO = (1 + 5 ** 0.5) / 2
FIBONACCI_MEAN_SLOPE = 1 / (GOLDEN_RATIO ** 2 + 1)   # 0.2763932...


@dataclass
class SummandStats:
    n: int
    mode: str                  # "exact" | "sampled"
    size: int                  # number of outcomes counted
    seed: Optional[int]
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float
    histogram: dict            # summand count -> frequency


def _moments(histogram: dict):
    size = sum(histogram.values())
    mean = sum(k * f for k, f in histogram.items()) / size
    m2 = sum(f * (k - mean) ** 2 for k, f in histogram.items()) / size
    m3 = sum(f * (k - mean) ** 3 for k, f in histogram.items()) / size
    m4 = sum(f * (k - mean) ** 4 for k, f in histogram.items()) / size
    if m2 > 0:
        skew = m3 / m2 ** 1.5
        kurt = m4 / (m2 * m2) - 3.0
    else:
        skew = 0.0
        kurt = 0.0
    return size, mean, m2, skew, kurt


def summand_distribution(c: RecurrenceVector, n: int, mode: str = "exact",
                         size: Optional[int] = None, seed: Optional[int] = None,
                         cap: int = DEFAULT_ENUMERATION_CAP) -> SummandStats:
    """Distribution of the summand count over the window [X_n, X_{n+1}).

    Exact mode walks every integer in the window (requires X_{n+1} within the
    cap).  Sampled mode draws uniformly with an explicit seed; draws come from
    the bit length of the window width with rejection, so runs are exactly
    reproducible.
    """
    if n < 1:
        raise ValueError("window index must be >= 1")
    seq = c.scalar()
    lo = seq.term(n)
    hi = seq.term(n + 1)
    width = hi - lo
    histogram = {}
    if mode == "exact":
        if hi > cap:
            raise CapExceededError("exact sweep of %d outcomes exceeds cap" % width)
        for value in range(lo, hi):
            key = sum(legal_decompose(c, value))
            histogram[key] = histogram.get(key, 0) + 1
        used_seed = None
    elif mode == "sampled":
        if size is None or size <= 0:
            raise ValueError("sampled mode needs a positive size")
        if seed is None:
            raise ValueError("sampled mode needs an explicit seed")
        rng = random.Random(seed)
        bits = width.bit_length()
        drawn = 0
        while drawn < size:
            r = rng.getrandbits(bits)
            if r >= width:
                continue
            key = sum(legal_decompose(c, lo + r))
            histogram[key] = histogram.get(key, 0) + 1
            drawn += 1
        used_seed = seed
    else:
        raise ValueError("mode must be 'exact' or 'sampled'")
    total, mean, var, skew, kurt = _moments(histogram)
    return SummandStats(n, mode, total, used_seed, mean, var, skew, kurt,
                        dict(sorted(histogram.items())))


def _least_squares(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - my) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return slope, intercept, r2


@dataclass
class LinearFit:
    slope: float
    intercept: float
    r_squared: float


@dataclass
class GaussianReport:
    mean_fit: LinearFit
    variance_fit: LinearFit
    per_n: list                       # (n, mean, variance, skewness, excess_kurtosis)
    lekkerkerker: Optional[dict]      # slope vs 1/(phi^2+1) for the Fibonacci case


def gaussian_diagnostics(c: RecurrenceVector, stats: list) -> GaussianReport:
    """Linear growth fits of mean and variance plus per-window shape moments."""
    if len(stats) < 3:
        raise ValueError("need at least 3 windows to fit")
    xs = [s.n for s in stats]
    mean_fit = LinearFit(*_least_squares(xs, [s.mean for s in stats]))
    var_fit = LinearFit(*_least_squares(xs, [s.variance for s in stats]))
    per_n = [(s.n, s.mean, s.variance, s.skewness, s.excess_kurtosis) for s in stats]
    lekker = None
    if c.coefficients == (1, 1):
        lekker = {
            "slope": mean_fit.slope,
            "target": FIBONACCI_MEAN_SLOPE,
            "deviation": abs(mean_fit.slope - FIBONACCI_MEAN_SLOPE),
        }
    return GaussianReport(mean_fit, var_fit, per_n, lekker)


@dataclass
class MinimalityResult:
    sr_count: int
    oracle_min: int
    minimal: bool
    explored: int


def check_minimality(c: RecurrenceVector, v, support_bound: Optional[int] = None,
                     node_cap: int = 1_000_000) -> MinimalityResult:
    """Compare the satisfying string's mass with a breadth-first oracle.

    The oracle searches sums of basis terms X_{-i} (i up to the support
    bound), one summand per level, deduplicating visited vectors, and finds
    the true minimum summand count within the bounded support space.
    """
    v = tuple(int(x) for x in v)
    sr = decompose(c, v)
    sr_count = coefficient_sum(sr)
    if support_bound is None:
        support_bound = len(sr) + c.k
    if sr_count == 0:
        return MinimalityResult(0, 0, True, 1)
    vec = c.vector()
    gens = [vec.term(-i) for i in range(1, support_bound + 1)]
    dim = c.k - 1
    zero = (0,) * dim
    frontier = {zero}
    seen = {zero}
    explored = 1
    for depth in range(1, sr_count + 1):
        nxt = set()
        for w in frontier:
            for g in gens:
                u = tuple(w[d] + g[d] for d in range(dim))
                if u == v:
                    return MinimalityResult(sr_count, depth, depth == sr_count,
                                            explored + len(nxt))
                if u not in seen:
                    seen.add(u)
                    nxt.add(u)
        explored += len(nxt)
        if explored > node_cap:
            raise OracleExhaustedError("minimality search exceeded %d nodes" % node_cap)
        frontier = nxt
    raise OracleExhaustedError(
        "no representation with support <= %d found within %d summands"
        % (support_bound, sr_count))


# -- reproducible exports -----------------------------------------------------

def stats_json_text(c: RecurrenceVector, stats: list) -> str:
    records = []
    for s in stats:
        records.append({
            "c": list(c.coefficients),
            "n": s.n,
            "mode": s.mode,
            "seed": s.seed,
            "mean": s.mean,
            "variance": s.variance,
            "skewness": s.skewness,
            "excess_kurtosis": s.excess_kurtosis,
            "histogram": {str(k): f for k, f in s.histogram.items()},
        })
    return json.dumps(records, indent=2, sort_keys=True) + "\n"


def export_stats_json(c: RecurrenceVector, stats: list, path: str):
    atomic_write_text(path, stats_json_text(c, stats))


def series_csv_text(stats: list) -> str:
    lines = ["n,mean,variance"]
    for s in stats:
        lines.append("%d,%.6g,%.6g" % (s.n, s.mean, s.variance))
    return "\n".join(lines) + "\n"


def export_series_csv(stats: list, path: str):
    atomic_write_text(path, series_csv_text(stats))
