"""Direct matrix-form NTT/INTT in the omega (cyclic) and psi (negacyclic) flavors.

Each transform is one matrix-vector product against a table of root powers.
Nothing clever happens here; these are the reference the butterflies must match.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .conv import Polynomial
from .errors import FlavorMismatch, LengthMismatch, MissingPsi, ModulusMismatch, OrderingMismatch
from .zq import ZqContext

# Entries < 2**31 times 16-bit limbs, summed over up to 2**15 terms, stays below 2**63.
_LIMB_BITS = 16
_MAX_NAIVE_N = 1 << 15


class Root(enum.Enum):
    OMEGA = "omega"
    PSI = "psi"


class Order(enum.Enum):
    NORMAL = "normal"
    BIT_REVERSED = "bit-reversed"


@dataclass(frozen=True)
class NttVector:
    """Transform-domain values tagged with root flavor and index ordering."""

    values: tuple[int, ...]
    flavor: Root
    ordering: Order
    ctx: ZqContext

    def __post_init__(self):
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.ctx.n:
            raise LengthMismatch(f"expected {self.ctx.n} values, got {len(self.values)}")
        q = self.ctx.q
        if any(not 0 <= v < q for v in self.values):
            raise ValueError(f"values must lie in [0, {q})")

    def __len__(self) -> int:
        return len(self.values)


def powers(root: int, count: int, q: int) -> list[int]:
    """[root^0, root^1, ..., root^(count-1)] mod q."""
    out, x = [], 1
    for _ in range(count):
        out.append(x)
        x = x * root % q
    return out


@functools.lru_cache(maxsize=16)
def _power_matrix(root: int, q: int, n: int, twist: str | None) -> np.ndarray:
    # entry [r, c] = root^(r*c) for twist=None, root^(2rc + c) for twist="col",
    # root^(2rc + r) for twist="row"; the exponent is reduced modulo the order
    # of root before the table lookup
    period = n if twist is None else 2 * n
    table = np.array(powers(root, period, q), dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    exps = np.outer(idx, idx)
    if twist == "col":
        exps = 2 * exps + idx[None, :]
    elif twist == "row":
        exps = 2 * exps + idx[:, None]
    m = table[exps % period]
    m.flags.writeable = False
    return m


def _matvec_mod(m: np.ndarray, x: np.ndarray, q: int) -> np.ndarray:
    lo = x & ((1 << _LIMB_BITS) - 1)
    hi = x >> _LIMB_BITS
    return ((m @ lo) % q + (((m @ hi) % q) << _LIMB_BITS)) % q


def _check_input(v: Polynomial, ctx: ZqContext) -> np.ndarray:
    if v.q != ctx.q:
        raise ModulusMismatch(f"polynomial modulus {v.q} != context modulus {ctx.q}")
    if len(v) != ctx.n:
        raise LengthMismatch(f"expected length {ctx.n}, got {len(v)}")
    if ctx.n > _MAX_NAIVE_N:
        raise LengthMismatch(f"reference transform supports n <= {_MAX_NAIVE_N}")
    return np.array(v.coeffs, dtype=np.int64)


def _check_spectrum(vhat: NttVector, ctx: ZqContext, flavor: Root) -> np.ndarray:
    if vhat.flavor is not flavor:
        raise FlavorMismatch(f"expected {flavor.value} spectrum, got {vhat.flavor.value}")
    if vhat.ordering is not Order.NORMAL:
        raise OrderingMismatch("reference inverse expects normal ordering")
    if vhat.ctx.q != ctx.q:
        raise ModulusMismatch(f"spectrum modulus {vhat.ctx.q} != context modulus {ctx.q}")
    if len(vhat) != ctx.n:
        raise LengthMismatch(f"expected length {ctx.n}, got {len(vhat)}")
    return np.array(vhat.values, dtype=np.int64)


def _require_psi(ctx: ZqContext) -> None:
    if ctx.psi is None:
        raise MissingPsi(f"context q={ctx.q} n={ctx.n} has no 2n-th root of unity")


def ntt_naive(v: Polynomial, ctx: ZqContext) -> NttVector:
    """vhat_j = sum_i omega^(i*j) v_i."""
    x = _check_input(v, ctx)
    out = _matvec_mod(_power_matrix(ctx.omega, ctx.q, ctx.n, None), x, ctx.q)
    return NttVector(tuple(out.tolist()), Root.OMEGA, Order.NORMAL, ctx)


def intt_naive(vhat: NttVector, ctx: ZqContext) -> Polynomial:
    """v_i = n^-1 sum_j omega^(-i*j) vhat_j."""
    x = _check_spectrum(vhat, ctx, Root.OMEGA)
    out = _matvec_mod(_power_matrix(ctx.omega_inv, ctx.q, ctx.n, None), x, ctx.q)
    return Polynomial(tuple((out * ctx.n_inv % ctx.q).tolist()), ctx.q)


def ntt_psi_naive(v: Polynomial, ctx: ZqContext) -> NttVector:
    """vhat_j = sum_i psi^(2ij + i) v_i, i.e. v evaluated at psi^(2j+1)."""
    _require_psi(ctx)
    x = _check_input(v, ctx)
    out = _matvec_mod(_power_matrix(ctx.psi, ctx.q, ctx.n, "col"), x, ctx.q)
    return NttVector(tuple(out.tolist()), Root.PSI, Order.NORMAL, ctx)


def intt_psi_naive(vhat: NttVector, ctx: ZqContext) -> Polynomial:
    """v_i = n^-1 sum_j psi^-(2ij + i) vhat_j.

    The twist psi^-i depends on the output index only; it undoes the psi^i
    applied to input coefficient i by the forward transform.
    """
    _require_psi(ctx)
    x = _check_spectrum(vhat, ctx, Root.PSI)
    out = _matvec_mod(_power_matrix(ctx.psi_inv, ctx.q, ctx.n, "row"), x, ctx.q)
    return Polynomial(tuple((out * ctx.n_inv % ctx.q).tolist()), ctx.q)
