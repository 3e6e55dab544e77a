"""Schoolbook O(n^2) convolutions, kept deliberately simple: they are the
ground truth every transform-based product is checked against."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LengthMismatch, ModulusMismatch, NttError


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in [0, q), constant term first."""

    coeffs: tuple[int, ...]
    q: int

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 1:
            raise NttError("polynomial needs at least one coefficient")
        q = self.q
        if any(not 0 <= c < q for c in self.coeffs):
            raise NttError(f"coefficients must lie in [0, {q})")

    @classmethod
    def reduce(cls, values: Iterable[int], q: int) -> Polynomial:
        """Build from arbitrary integers, reducing each modulo q."""
        return cls(tuple(int(v) % q for v in values), q)

    @classmethod
    def zero(cls, n: int, q: int) -> Polynomial:
        return cls((0,) * n, q)

    @classmethod
    def monomial(cls, k: int, n: int, q: int) -> Polynomial:
        c = [0] * n
        c[k] = 1
        return cls(tuple(c), q)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: Polynomial) -> Polynomial:
        _same_shape(self, other)
        return Polynomial.reduce((a + b for a, b in zip(self.coeffs, other.coeffs)), self.q)

    def scale(self, a: int) -> Polynomial:
        return Polynomial.reduce((a * c for c in self.coeffs), self.q)


def _same_modulus(g: Polynomial, h: Polynomial) -> None:
    if g.q != h.q:
        raise ModulusMismatch(f"moduli differ: {g.q} vs {h.q}")


def _same_shape(g: Polynomial, h: Polynomial) -> None:
    _same_modulus(g, h)
    if len(g) != len(h):
        raise LengthMismatch(f"lengths differ: {len(g)} vs {len(h)}")


def linear_convolution(g: Polynomial, h: Polynomial) -> Polynomial:
    """Full product in Z_q[x], length len(g) + len(h) - 1."""
    _same_modulus(g, h)
    y = [0] * (len(g) + len(h) - 1)
    for i, gi in enumerate(g.coeffs):
        for j, hj in enumerate(h.coeffs):
            y[i + j] += gi * hj
    return Polynomial.reduce(y, g.q)


def reduce_wrapped(y: Sequence[int], n: int, q: int, sign: int) -> Polynomial:
    """Reduce coefficients modulo x^n - sign (sign=+1 cyclic, -1 negacyclic)."""
    c = [0] * n
    for k, yk in enumerate(y):
        wraps, r = divmod(k, n)
        c[r] += yk * sign**wraps
    return Polynomial.reduce(c, q)


def cyclic_convolution(g: Polynomial, h: Polynomial) -> Polynomial:
    """Product modulo x^n - 1 via the explicit double sum

    c_k = sum_{i<=k} g_i h_{k-i} + sum_{i>k} g_i h_{k+n-i}.
    """
    _same_shape(g, h)
    n, gc, hc = len(g), g.coeffs, h.coeffs
    c = []
    for k in range(n):
        s = 0
        for i in range(k + 1):
            s += gc[i] * hc[k - i]
        for i in range(k + 1, n):
            s += gc[i] * hc[k + n - i]
        c.append(s)
    return Polynomial.reduce(c, g.q)


def cyclic_convolution_by_reduction(g: Polynomial, h: Polynomial) -> Polynomial:
    _same_shape(g, h)
    return reduce_wrapped(linear_convolution(g, h).coeffs, len(g), g.q, +1)


def negacyclic_convolution(g: Polynomial, h: Polynomial) -> Polynomial:
    """Product modulo x^n + 1: c_k = Y_k - Y_{k+n}."""
    _same_shape(g, h)
    n = len(g)
    y = linear_convolution(g, h).coeffs
    c = [y[k] - (y[k + n] if k + n < len(y) else 0) for k in range(n)]
    return Polynomial.reduce(c, g.q)
