"""Wall-clock comparison of schoolbook, reference-NTT and butterfly-NTT
negacyclic multiplication over a doubling sweep of n."""
from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .conv import Polynomial, negacyclic_convolution
from .errors import NotFriendly, NotPowerOfTwo
from .ntt_fast import is_power_of_two
from .polymul import mul_negacyclic
from .zq import is_nwc_friendly, make_context

METHODS = ("schoolbook", "ntt-naive", "ntt-fast")


@dataclass(frozen=True)
class BenchRow:
    n: int
    method: str
    median_s: float
    ops: int


def op_count(method: str, n: int) -> int:
    """Modular multiplications per product (pointwise step included)."""
    if method == "schoolbook":
        return n * n
    if method == "ntt-naive":
        return 3 * n * n + n
    if method == "ntt-fast":
        return 3 * (n // 2) * (n.bit_length() - 1) + n
    raise ValueError(f"unknown method {method!r}")


def sweep(n_min: int, n_max: int) -> list[int]:
    for n in (n_min, n_max):
        if not is_power_of_two(n) or n < 2:
            raise NotPowerOfTwo(f"sweep bounds must be powers of two >= 2, got {n}")
    if n_min > n_max:
        raise ValueError("n_min must not exceed n_max")
    out, n = [], n_min
    while n <= n_max:
        out.append(n)
        n *= 2
    return out


def time_method(method: str, q: int, n: int, reps: int, rng: np.random.Generator) -> float:
    """Median seconds for one product, each repetition on fresh random operands."""
    ctx = make_context(q, n)
    if method == "schoolbook":
        run = negacyclic_convolution
    elif method == "ntt-naive":
        run = lambda u, v: mul_negacyclic(u, v, ctx, fast=False)  # noqa: E731
    elif method == "ntt-fast":
        run = lambda u, v: mul_negacyclic(u, v, ctx, fast=True)  # noqa: E731
    else:
        raise ValueError(f"unknown method {method!r}")

    def operands():
        return (Polynomial(tuple(rng.integers(0, q, n).tolist()), q),
                Polynomial(tuple(rng.integers(0, q, n).tolist()), q))

    if method != "schoolbook":
        run(*operands())  # warm the twiddle / power-matrix caches
    times = []
    for _ in range(reps):
        u, v = operands()
        t0 = time.perf_counter()
        run(u, v)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def run_bench(q: int, n_min: int, n_max: int, reps: int, seed: int,
              methods: tuple[str, ...] = METHODS) -> list[BenchRow]:
    if reps < 1:
        raise ValueError("reps must be at least 1")
    ns = sweep(n_min, n_max)
    bad = [n for n in ns if not is_nwc_friendly(q, n)]
    if bad:
        raise NotFriendly(f"q={q} is not NWC-friendly for n in {bad}")
    rng = np.random.default_rng(seed)
    rows = []
    for n in ns:
        for method in methods:
            rows.append(BenchRow(n, method, time_method(method, q, n, reps, rng), op_count(method, n)))
    return rows


def format_rows(rows: list[BenchRow], fmt: str = "text") -> str:
    if fmt == "tsv":
        lines = ["n\tmethod\tmedian_s\tops"]
        lines += [f"{r.n}\t{r.method}\t{r.median_s:.9f}\t{r.ops}" for r in rows]
    else:
        lines = [f"{'n':>6}  {'method':<11} {'median_s':>12}  {'ops':>12}"]
        lines += [f"{r.n:>6}  {r.method:<11} {r.median_s:>12.6f}  {r.ops:>12}" for r in rows]
    return "\n".join(lines)
