"""Timing harness for the permanent-vs-determinant scaling contrast.

Times the two kernels on the same random complex matrices over a range of
sizes.  The permanent doubles (and change) per added dimension while the
determinant creeps up cubically; the emitted table makes that gap visible
at desk scale.
"""

import time
from dataclasses import dataclass

import numpy as np

from .kernels import determinant, permanent_ryser, warm_up


@dataclass(frozen=True)
class BenchRow:
    n: int
    method: str
    mean_seconds: float


def _time_call(fn, arg, reps: int, min_time: float = 0.02) -> float:
    """Mean seconds per call, repeating batches until ``min_time`` elapsed.

    Fast calls (microsecond determinants) need many repetitions for a
    stable mean; slow ones are measured ``reps`` times only.
    """
    calls = 0
    elapsed = 0.0
    while True:
        start = time.perf_counter()
        for _ in range(reps):
            fn(arg)
        elapsed += time.perf_counter() - start
        calls += reps
        if elapsed >= min_time or calls >= 10_000:
            return elapsed / calls


def random_complex_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def bench_permanent(n_min: int, n_max: int, reps: int = 3, seed: int = 7) -> list[BenchRow]:
    """Time permanent_ryser and determinant for n in [n_min, n_max]."""
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    rng = np.random.default_rng(seed)
    warm_up()  # JIT compile outside the timing windows
    rows = []
    for n in range(n_min, n_max + 1):
        a = random_complex_matrix(n, rng)
        rows.append(BenchRow(n, "ryser", _time_call(permanent_ryser, a, reps)))
        rows.append(BenchRow(n, "determinant", _time_call(determinant, a, reps)))
    return rows


def growth_factors(rows: list[BenchRow], method: str) -> list[float]:
    """Per-unit-n time ratios t(n+1)/t(n) for one method."""
    times = {r.n: r.mean_seconds for r in rows if r.method == method}
    ns = sorted(times)
    return [times[b] / times[a] for a, b in zip(ns, ns[1:])]


def mean_growth(rows: list[BenchRow], method: str) -> float:
    """Geometric-mean per-unit-n growth of one method's timings."""
    times = {r.n: r.mean_seconds for r in rows if r.method == method}
    ns = sorted(times)
    span = ns[-1] - ns[0]
    if span == 0:
        raise ValueError("need at least two distinct sizes")
    return (times[ns[-1]] / times[ns[0]]) ** (1.0 / span)
