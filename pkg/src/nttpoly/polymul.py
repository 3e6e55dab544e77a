"""Polynomial multiplication through the convolution theorem, sums of
products with a single deferred inverse, and transform-count bookkeeping
for module-lattice matrix-vector products."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .conv import Polynomial
from .errors import (
    ContextMismatch,
    DimensionMismatch,
    EmptyList,
    FlavorMismatch,
    LengthMismatch,
    MissingPsi,
    ModulusMismatch,
    OrderingMismatch,
    ParameterError,
)
from .ntt_fast import (
    intt_gs,
    intt_gs_cyclic,
    ntt_ct,
    ntt_ct_cyclic,
    precompute_cyclic_tables,
    precompute_tables,
)
from .ntt_ref import NttVector, Order, Root, intt_naive, intt_psi_naive, ntt_naive, ntt_psi_naive
from .zq import ZqContext, Wrap

# NTT-domain polynomials on the fast path: psi flavor, bit-reversed order.
NttDomainPoly = NttVector


@dataclass
class TransformLedger:
    ntt_count: int = 0
    intt_count: int = 0
    pointwise_mul_count: int = 0

    @property
    def transforms(self) -> int:
        return self.ntt_count + self.intt_count


def baseline_ledger(k: int, l: int) -> TransformLedger:
    """Counts for a k x l matrix-vector product done one product at a time:
    two forward transforms and one inverse per product."""
    return TransformLedger(ntt_count=2 * k * l, intt_count=k * l, pointwise_mul_count=k * l)


def _check_pair(a: NttVector, b: NttVector) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
    if a.flavor is not b.flavor:
        raise FlavorMismatch(f"flavors differ: {a.flavor.value} vs {b.flavor.value}")
    if a.ordering is not b.ordering:
        raise OrderingMismatch(f"orderings differ: {a.ordering.value} vs {b.ordering.value}")
    if a.ctx != b.ctx:
        raise ContextMismatch("operands belong to different contexts")


def pointwise_mul(a: NttVector, b: NttVector) -> NttVector:
    _check_pair(a, b)
    q = a.ctx.q
    return NttVector(tuple(x * y % q for x, y in zip(a.values, b.values)), a.flavor, a.ordering, a.ctx)


def pointwise_add(a: NttVector, b: NttVector) -> NttVector:
    _check_pair(a, b)
    q = a.ctx.q
    return NttVector(tuple((x + y) % q for x, y in zip(a.values, b.values)), a.flavor, a.ordering, a.ctx)


def _use_fast(ctx: ZqContext, fast: bool | None) -> bool:
    if fast is None:
        return ctx.is_power_of_two
    if fast and not ctx.is_power_of_two:
        raise ParameterError(f"fast path needs a power-of-two length, got n={ctx.n}")
    return fast


def _check_operand(v: Polynomial, ctx: ZqContext) -> None:
    if v.q != ctx.q:
        raise ModulusMismatch(f"polynomial modulus {v.q} != context modulus {ctx.q}")
    if len(v) != ctx.n:
        raise LengthMismatch(f"expected length {ctx.n}, got {len(v)}")


def forward(v: Polynomial, ctx: ZqContext, fast: bool | None = None) -> NttVector:
    """Negacyclic forward transform; bit-reversed on the fast path, normal otherwise."""
    if ctx.psi is None:
        raise MissingPsi(f"context q={ctx.q} n={ctx.n} is not negacyclic")
    if _use_fast(ctx, fast):
        return ntt_ct(v, precompute_tables(ctx), ctx)
    return ntt_psi_naive(v, ctx)


def inverse(vhat: NttVector, ctx: ZqContext) -> Polynomial:
    """Negacyclic inverse; picks the algorithm from the spectrum's ordering."""
    if vhat.ordering is Order.BIT_REVERSED:
        return intt_gs(vhat, precompute_tables(ctx), ctx)
    return intt_psi_naive(vhat, ctx)


def mul_cyclic(u: Polynomial, v: Polynomial, ctx: ZqContext, fast: bool | None = None) -> Polynomial:
    """u * v mod (x^n - 1, q)."""
    _check_operand(u, ctx)
    _check_operand(v, ctx)
    if _use_fast(ctx, fast):
        table = precompute_cyclic_tables(ctx)
        w = pointwise_mul(ntt_ct_cyclic(u, table, ctx), ntt_ct_cyclic(v, table, ctx))
        return intt_gs_cyclic(w, table, ctx)
    return intt_naive(pointwise_mul(ntt_naive(u, ctx), ntt_naive(v, ctx)), ctx)


def mul_negacyclic(u: Polynomial, v: Polynomial, ctx: ZqContext, fast: bool | None = None) -> Polynomial:
    """u * v mod (x^n + 1, q)."""
    _check_operand(u, ctx)
    _check_operand(v, ctx)
    if ctx.flavor is not Wrap.NWC:
        raise MissingPsi(f"context q={ctx.q} n={ctx.n} is not negacyclic")
    return inverse(pointwise_mul(forward(u, ctx, fast), forward(v, ctx, fast)), ctx)


def sum_of_products(fs: Sequence[Polynomial], gs: Sequence[Polynomial], ctx: ZqContext,
                    ledger: TransformLedger | None = None, fast: bool | None = None) -> Polynomial:
    """sum_i f_i g_i in Z_q[x]/(x^n + 1) with one inverse transform in total."""
    if len(fs) != len(gs):
        raise LengthMismatch(f"operand lists differ in length: {len(fs)} vs {len(gs)}")
    if not fs:
        raise EmptyList("sum of products needs at least one pair")
    ledger = TransformLedger() if ledger is None else ledger
    acc = None
    for f, g in zip(fs, gs):
        _check_operand(f, ctx)
        _check_operand(g, ctx)
        term = pointwise_mul(forward(f, ctx, fast), forward(g, ctx, fast))
        ledger.ntt_count += 2
        ledger.pointwise_mul_count += 1
        acc = term if acc is None else pointwise_add(acc, term)
    ledger.intt_count += 1
    return inverse(acc, ctx)


def matvec_ntt(A: Sequence[Sequence[NttVector]], s: Sequence[Polynomial],
               ledger: TransformLedger | None = None) -> list[Polynomial]:
    """Row i of the result is sum_j A[i][j] * s[j] in Z_q[x]/(x^n + 1).

    A is already in the NTT domain, so only s is transformed (once) and each
    row is inverted once after accumulating.
    """
    if not A or not A[0]:
        raise DimensionMismatch("matrix must be at least 1 x 1")
    l = len(s)
    if any(len(row) != l for row in A):
        raise DimensionMismatch(f"every matrix row needs {l} entries to match the vector")
    first = A[0][0]
    ctx = first.ctx
    for row in A:
        for entry in row:
            if entry.ctx != ctx:
                raise ContextMismatch("matrix entries span several contexts")
            if entry.flavor is not Root.PSI or entry.ordering is not first.ordering:
                raise FlavorMismatch("matrix entries must be psi spectra with one ordering")
    ledger = TransformLedger() if ledger is None else ledger
    fast = first.ordering is Order.BIT_REVERSED
    s_hat = [forward(sj, ctx, fast) for sj in s]
    ledger.ntt_count += l
    out = []
    for row in A:
        acc = None
        for a_ij, sj_hat in zip(row, s_hat):
            term = pointwise_mul(a_ij, sj_hat)
            ledger.pointwise_mul_count += 1
            acc = term if acc is None else pointwise_add(acc, term)
        out.append(inverse(acc, ctx))
        ledger.intt_count += 1
    return out


def sample_ntt_domain(ctx: ZqContext, rng: np.random.Generator, fast: bool | None = None) -> NttVector:
    """Uniform element of the NTT domain, drawn without any forward transform."""
    order = Order.BIT_REVERSED if _use_fast(ctx, fast) else Order.NORMAL
    return NttVector(tuple(rng.integers(0, ctx.q, ctx.n).tolist()), Root.PSI, order, ctx)


def expand_linear_factors(roots: Sequence[int], q: int) -> list[int]:
    """Coefficients (constant first) of prod (x - r) over Z_q."""
    poly = [1]
    for r in roots:
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = (nxt[i + 1] + c) % q
            nxt[i] = (nxt[i] - r * c) % q
        poly = nxt
    return poly


def verify_crt_factorization(ctx: ZqContext, n_max: int = 64) -> bool:
    """Check that x^n + 1 = prod over odd i < 2n of (x - psi^i) in Z_q[x]."""
    if ctx.psi is None:
        raise MissingPsi(f"context q={ctx.q} n={ctx.n} is not negacyclic")
    if ctx.n > n_max:
        raise ParameterError(f"n={ctx.n} exceeds the expansion bound {n_max}")
    q, psi = ctx.q, ctx.psi
    roots = [pow(psi, i, q) for i in range(1, 2 * ctx.n, 2)]
    target = [1] + [0] * (ctx.n - 1) + [1]
    return expand_linear_factors(roots, q) == target
