"""O(n log n) transforms: Cooley-Tukey forward (normal order in, bit-reversed
out) and Gentleman-Sande inverse (bit-reversed in, normal order out).

The twiddle table is indexed like a binary heap: stage s (with 2**s blocks)
reads the contiguous slice ``table[2**s : 2**(s+1)]``, one factor per block.
Each stage is applied to all blocks at once through a (blocks, 2, half) view.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .conv import Polynomial
from .errors import (
    FlavorMismatch,
    LengthMismatch,
    MissingPsi,
    ModulusMismatch,
    NotPowerOfTwo,
    OrderingMismatch,
)
from .ntt_ref import NttVector, Order, Root
from .zq import ZqContext, mod_inv


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _require_power_of_two(n: int) -> int:
    if not is_power_of_two(n):
        raise NotPowerOfTwo(f"length {n} is not a power of two")
    return n.bit_length() - 1


def bit_reverse(b: int, n: int) -> int:
    """Reverse the log2(n)-bit binary expansion of b."""
    width = _require_power_of_two(n)
    if not 0 <= b < n:
        raise ValueError(f"index {b} out of range for n={n}")
    r = 0
    for _ in range(width):
        r = (r << 1) | (b & 1)
        b >>= 1
    return r


@functools.lru_cache(maxsize=64)
def bitrev_indices(n: int) -> np.ndarray:
    _require_power_of_two(n)
    idx = np.array([bit_reverse(i, n) for i in range(n)], dtype=np.intp)
    idx.flags.writeable = False
    return idx


def bitrev_permute(v):
    """out[bit_reverse(i)] = v[i]. The map is an involution."""
    idx = bitrev_indices(len(v))
    if isinstance(v, np.ndarray):
        return v[idx]
    return [v[j] for j in idx]


def _heap_level_half(k: int, n: int) -> int:
    # half-block length served by heap node k >= 1
    return n >> k.bit_length()


def schedule_exponents(n: int, flavor: Root) -> list[int]:
    """Exponent of the root stored at each slot of the forward table.

    PSI tables hold psi^brv(k). OMEGA tables hold omega^((brv(k) - half_k) / 2),
    the same schedule with the negacyclic twist removed at every node.
    Slot 0 is unused by the butterflies and holds root^0 = 1.
    """
    _require_power_of_two(n)
    exps = [0]
    for k in range(1, n):
        e = bit_reverse(k, n)
        if flavor is Root.OMEGA:
            e = (e - _heap_level_half(k, n)) // 2
        exps.append(e)
    return exps


@dataclass(frozen=True)
class TwiddleTable:
    """Precomputed butterfly factors for one (q, n, root) triple."""

    q: int
    n: int
    flavor: Root
    fwd: tuple[int, ...]
    inv: tuple[int, ...]
    n_inv: int
    _fwd_arr: np.ndarray = field(repr=False, compare=False)
    _inv_arr: np.ndarray = field(repr=False, compare=False)


def _build_table(ctx: ZqContext, root: int, flavor: Root) -> TwiddleTable:
    q, n = ctx.q, ctx.n
    exps = schedule_exponents(n, flavor)
    root_inv = mod_inv(root, q)
    fwd = tuple(pow(root, e, q) for e in exps)
    inv = tuple(pow(root_inv, e, q) for e in exps)
    fwd_arr = np.array(fwd, dtype=np.int64)
    inv_arr = np.array(inv, dtype=np.int64)
    fwd_arr.flags.writeable = False
    inv_arr.flags.writeable = False
    return TwiddleTable(q, n, flavor, fwd, inv, ctx.n_inv, fwd_arr, inv_arr)


def precompute_tables(ctx: ZqContext) -> TwiddleTable:
    """psi-power table for the negacyclic butterflies."""
    _require_power_of_two(ctx.n)
    if ctx.psi is None:
        raise MissingPsi(f"context q={ctx.q} n={ctx.n} has no psi")
    return _cached_table(ctx, Root.PSI)


def precompute_cyclic_tables(ctx: ZqContext) -> TwiddleTable:
    """omega-power table for the cyclic butterflies."""
    _require_power_of_two(ctx.n)
    return _cached_table(ctx, Root.OMEGA)


@functools.lru_cache(maxsize=64)
def _cached_table(ctx: ZqContext, flavor: Root) -> TwiddleTable:
    root = ctx.psi if flavor is Root.PSI else ctx.omega
    return _build_table(ctx, root, flavor)


@dataclass
class ButterflyCounter:
    butterflies: int = 0


def ct_butterflies(a: np.ndarray, table: TwiddleTable, out: np.ndarray | None = None,
                   counter: ButterflyCounter | None = None) -> np.ndarray:
    """Forward Cooley-Tukey stages. ``out`` may be ``a`` itself."""
    q, n = table.q, table.n
    if a.shape != (n,):
        raise LengthMismatch(f"expected shape ({n},), got {a.shape}")
    if out is None:
        out = np.array(a, dtype=np.int64)
    elif out is not a:
        out[:] = a
    w_all = table._fwd_arr
    blocks, half = 1, n // 2
    while half:
        view = out.reshape(blocks, 2, half)
        top = view[:, 0, :].copy()
        t = view[:, 1, :] * w_all[blocks:2 * blocks, None] % q
        view[:, 0, :] = (top + t) % q
        view[:, 1, :] = (top - t) % q
        if counter is not None:
            counter.butterflies += blocks * half
        blocks, half = blocks * 2, half // 2
    return out


def gs_butterflies(a: np.ndarray, table: TwiddleTable, out: np.ndarray | None = None,
                   counter: ButterflyCounter | None = None) -> np.ndarray:
    """Inverse Gentleman-Sande stages, without the final n^-1 scaling."""
    q, n = table.q, table.n
    if a.shape != (n,):
        raise LengthMismatch(f"expected shape ({n},), got {a.shape}")
    if out is None:
        out = np.array(a, dtype=np.int64)
    elif out is not a:
        out[:] = a
    w_all = table._inv_arr
    blocks, half = n // 2, 1
    while blocks:
        view = out.reshape(blocks, 2, half)
        top = view[:, 0, :].copy()
        bottom = view[:, 1, :].copy()
        view[:, 0, :] = (top + bottom) % q
        view[:, 1, :] = (top - bottom) * w_all[blocks:2 * blocks, None] % q
        if counter is not None:
            counter.butterflies += blocks * half
        blocks, half = blocks // 2, half * 2
    return out


def _check_table(table: TwiddleTable, ctx: ZqContext, flavor: Root) -> None:
    if table.flavor is not flavor:
        raise FlavorMismatch(f"expected a {flavor.value} twiddle table")
    if table.q != ctx.q or table.n != ctx.n:
        raise ModulusMismatch("twiddle table was built for different parameters")


def _forward(v: Polynomial, table: TwiddleTable, ctx: ZqContext, flavor: Root,
             counter: ButterflyCounter | None) -> NttVector:
    _require_power_of_two(ctx.n)
    _check_table(table, ctx, flavor)
    if v.q != ctx.q:
        raise ModulusMismatch(f"polynomial modulus {v.q} != context modulus {ctx.q}")
    if len(v) != ctx.n:
        raise LengthMismatch(f"expected length {ctx.n}, got {len(v)}")
    a = np.array(v.coeffs, dtype=np.int64)
    ct_butterflies(a, table, out=a, counter=counter)
    return NttVector(tuple(a.tolist()), flavor, Order.BIT_REVERSED, ctx)


def _inverse(vhat: NttVector, table: TwiddleTable, ctx: ZqContext, flavor: Root,
             counter: ButterflyCounter | None) -> Polynomial:
    _require_power_of_two(ctx.n)
    _check_table(table, ctx, flavor)
    if vhat.flavor is not flavor:
        raise FlavorMismatch(f"expected {flavor.value} spectrum, got {vhat.flavor.value}")
    if vhat.ordering is not Order.BIT_REVERSED:
        raise OrderingMismatch("Gentleman-Sande inverse expects bit-reversed input")
    if vhat.ctx.q != ctx.q or len(vhat) != ctx.n:
        raise ModulusMismatch("spectrum belongs to different parameters")
    a = np.array(vhat.values, dtype=np.int64)
    gs_butterflies(a, table, out=a, counter=counter)
    a = a * table.n_inv % ctx.q
    return Polynomial(tuple(a.tolist()), ctx.q)


def ntt_ct(v: Polynomial, table: TwiddleTable, ctx: ZqContext,
           counter: ButterflyCounter | None = None) -> NttVector:
    """Negacyclic forward NTT; result is in bit-reversed order."""
    if ctx.psi is None:
        raise MissingPsi(f"context q={ctx.q} n={ctx.n} has no psi")
    return _forward(v, table, ctx, Root.PSI, counter)


def intt_gs(vhat: NttVector, table: TwiddleTable, ctx: ZqContext,
            counter: ButterflyCounter | None = None) -> Polynomial:
    """Negacyclic inverse NTT from bit-reversed input, including the n^-1 weight."""
    if ctx.psi is None:
        raise MissingPsi(f"context q={ctx.q} n={ctx.n} has no psi")
    return _inverse(vhat, table, ctx, Root.PSI, counter)


def ntt_ct_cyclic(v: Polynomial, table: TwiddleTable, ctx: ZqContext,
                  counter: ButterflyCounter | None = None) -> NttVector:
    """Cyclic (omega) forward NTT; result is in bit-reversed order."""
    return _forward(v, table, ctx, Root.OMEGA, counter)


def intt_gs_cyclic(vhat: NttVector, table: TwiddleTable, ctx: ZqContext,
                   counter: ButterflyCounter | None = None) -> Polynomial:
    return _inverse(vhat, table, ctx, Root.OMEGA, counter)


def to_normal_order(vhat: NttVector) -> NttVector:
    if vhat.ordering is Order.NORMAL:
        return vhat
    return NttVector(tuple(bitrev_permute(vhat.values)), vhat.flavor, Order.NORMAL, vhat.ctx)


def to_bit_reversed_order(vhat: NttVector) -> NttVector:
    if vhat.ordering is Order.BIT_REVERSED:
        return vhat
    return NttVector(tuple(bitrev_permute(vhat.values)), vhat.flavor, Order.BIT_REVERSED, vhat.ctx)
