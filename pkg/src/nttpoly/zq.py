"""Modular arithmetic over Z_q and discovery of NTT-friendly parameters."""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

from .errors import (
    FactorTooLarge,
    InvalidModulus,
    NoRoot,
    NotFriendly,
    NotInvertible,
    ParameterError,
)

MAX_MODULUS = 1 << 31
TRIAL_DIVISION_LIMIT = 1 << 21
# Caps the CRT enumeration used for composite moduli.
MAX_COMPOSITE_ROOTS = 1 << 20

# Deterministic Miller-Rabin witnesses for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class Wrap(enum.Enum):
    """Which wrapped convolution a context supports."""

    PWC = "PWC"  # x^n - 1
    NWC = "NWC"  # x^n + 1


def mod_add(a: int, b: int, q: int) -> int:
    s = a + b
    return s - q if s >= q else s


def mod_sub(a: int, b: int, q: int) -> int:
    d = a - b
    return d + q if d < 0 else d


def mod_mul(a: int, b: int, q: int) -> int:
    return a * b % q


def mod_pow(base: int, exp: int, q: int) -> int:
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    # Builtin three-argument pow is square-and-multiply on Python ints.
    return pow(base, exp, q)


def mod_inv(a: int, q: int) -> int:
    """Inverse of ``a`` modulo ``q`` by the extended Euclidean algorithm."""
    r0, r1 = a % q, q
    s0, s1 = 1, 0
    while r1:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        s0, s1 = s1, s0 - quot * s1
    if r0 != 1:
        raise NotInvertible(f"{a} has no inverse modulo {q} (gcd {r0})")
    return s0 % q


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    for p in _MR_BASES:
        if m % p == 0:
            return m == p
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition, primes in increasing order."""

    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1


@functools.lru_cache(maxsize=1024)
def factorize(m: int) -> Factorization:
    """Factor ``m`` by trial division up to 2**21, then test the cofactor.

    Raises FactorTooLarge if a composite cofactor survives trial division.
    """
    if not 2 <= m < (1 << 62):
        raise ValueError(f"cannot factor {m}: need 2 <= m < 2**62")
    factors = []
    rest = m
    p = 2
    while p <= TRIAL_DIVISION_LIMIT and p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p = 3 if p == 2 else p + 2
    if rest > 1:
        if not is_prime(rest):
            raise FactorTooLarge(f"composite cofactor {rest} of {m} is beyond trial division")
        factors.append((rest, 1))
    return Factorization(tuple(factors))


def _check_params(q: int, n: int) -> None:
    if q < 3:
        raise InvalidModulus(f"modulus must be at least 3, got {q}")
    if n < 1:
        raise ParameterError(f"length must be positive, got {n}")


def is_pwc_friendly(q: int, n: int) -> bool:
    """True iff n divides q - 1 (prime q) or gcd(p_i - 1) over the prime factors of q."""
    _check_params(q, n)
    primes = factorize(q).primes
    return math.gcd(*(p - 1 for p in primes)) % n == 0


def is_nwc_friendly(q: int, n: int) -> bool:
    return is_pwc_friendly(q, 2 * n)


def _generator(p: int, power: int = 1) -> int:
    """Generator of the cyclic group (Z / p^power)^* for an odd prime p."""
    if p == 2:
        if power > 2:
            raise NoRoot("(Z/2^k)^* is not cyclic for k > 2")
        return 1 if power == 1 else 3
    divisors = factorize(p - 1).primes if p > 2 else ()
    g = 2
    while not all(pow(g, (p - 1) // r, p) != 1 for r in divisors):
        g += 1
    if power > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _subgroup(p: int, power: int, d: int) -> list[int]:
    """All x modulo p^power with x^d = 1, assuming d divides p - 1."""
    mod = p**power
    order = (p - 1) * p ** (power - 1)
    h = pow(_generator(p, power), order // math.gcd(order, d), mod)
    out, x = [], 1
    for _ in range(math.gcd(order, d)):
        out.append(x)
        x = x * h % mod
    return out


@functools.lru_cache(maxsize=256)
def roots_of_unity(q: int, d: int) -> tuple[int, ...]:
    """Sorted tuple of every x in Z_q with x^d = 1.

    Composite moduli are handled by CRT over the prime-power components, which
    is only attempted while the number of combinations stays manageable.
    """
    residues, modulus = [0], 1
    for p, e in factorize(q).factors:
        part = _subgroup(p, e, d)
        if len(residues) * len(part) > MAX_COMPOSITE_ROOTS:
            raise NoRoot(f"root search space for composite modulus {q} is too large")
        mod = p**e
        # CRT: x = r (mod modulus), x = t (mod mod)
        lift = mod_inv(modulus, mod)
        residues = [r + modulus * ((t - r) * lift % mod) for r in residues for t in part]
        modulus *= mod
    return tuple(sorted(residues))


def _distinct_prime_divisors(n: int) -> tuple[int, ...]:
    return factorize(n).primes if n > 1 else ()


def has_order(x: int, n: int, q: int) -> bool:
    """True iff x has multiplicative order exactly n modulo q."""
    if pow(x, n, q) != 1:
        return False
    return all(pow(x, n // r, q) != 1 for r in _distinct_prime_divisors(n))


@functools.lru_cache(maxsize=256)
def find_omega(q: int, n: int) -> int:
    """Smallest primitive n-th root of unity modulo q."""
    if n == 1:
        return 1
    if not is_pwc_friendly(q, n):
        raise NoRoot(f"no primitive {n}-th root of unity modulo {q}")
    for x in roots_of_unity(q, n):
        if has_order(x, n, q):
            return x
    raise NoRoot(f"no element of order {n} modulo {q}")


@functools.lru_cache(maxsize=256)
def find_psi(q: int, n: int) -> int:
    """Smallest psi with psi^2 = omega and psi^n = -1, for omega = find_omega(q, n)."""
    if not is_nwc_friendly(q, n):
        raise NoRoot(f"no primitive {2 * n}-th root of unity modulo {q}")
    omega = find_omega(q, n)
    for x in roots_of_unity(q, 2 * n):
        if x * x % q == omega and pow(x, n, q) == q - 1:
            return x
    raise NoRoot(f"omega={omega} has no square root of order {2 * n} modulo {q}")


@dataclass(frozen=True)
class ZqContext:
    """Validated (q, n, omega, psi) bundle shared by all transforms.

    Build it with :func:`make_context`; direct construction re-checks every
    invariant so a hand-assembled context cannot carry inconsistent roots.
    """

    q: int
    n: int
    omega: int
    omega_inv: int
    n_inv: int
    flavor: Wrap = Wrap.PWC
    psi: int | None = None
    psi_inv: int | None = None

    def __post_init__(self):
        q, n = self.q, self.n
        if not (3 <= q < MAX_MODULUS and q % 2 == 1):
            raise InvalidModulus(f"modulus must be odd with 3 <= q < 2**31, got {q}")
        if n < 2:
            raise ParameterError(f"length must be at least 2, got {n}")
        values = [self.omega, self.omega_inv, self.n_inv]
        if self.psi is not None or self.psi_inv is not None:
            values += [self.psi, self.psi_inv]
        if any(v is None or not 0 <= v < q for v in values):
            raise ParameterError("context residues must lie in [0, q)")
        if not has_order(self.omega, n, q):
            raise ParameterError(f"omega={self.omega} is not a primitive {n}-th root mod {q}")
        if self.omega * self.omega_inv % q != 1 or n * self.n_inv % q != 1:
            raise ParameterError("inconsistent inverses in context")
        if self.flavor is Wrap.NWC:
            if self.psi is None:
                raise ParameterError("NWC context requires psi")
            if self.psi * self.psi % q != self.omega or pow(self.psi, n, q) != q - 1:
                raise ParameterError(f"psi={self.psi} is not a valid 2n-th root for omega={self.omega}")
            if self.psi * self.psi_inv % q != 1:
                raise ParameterError("inconsistent psi inverse in context")

    @property
    def has_psi(self) -> bool:
        return self.psi is not None

    @property
    def is_power_of_two(self) -> bool:
        return self.n & (self.n - 1) == 0


def make_context(q: int, n: int, flavor: Wrap | str = Wrap.NWC) -> ZqContext:
    flavor = Wrap(flavor)
    if not 3 <= q < MAX_MODULUS:
        raise InvalidModulus(f"modulus must satisfy 3 <= q < 2**31, got {q}")
    if n < 2:
        raise ParameterError(f"length must be at least 2, got {n}")
    if math.gcd(n, q) != 1:
        raise NotInvertible(f"n={n} is not invertible modulo q={q}")
    if q % 2 == 0:
        raise InvalidModulus(f"modulus must be odd, got {q}")
    friendly = is_nwc_friendly(q, n) if flavor is Wrap.NWC else is_pwc_friendly(q, n)
    if not friendly:
        raise NotFriendly(f"q={q} is not {flavor.value}-NTT friendly for n={n}")
    omega = find_omega(q, n)
    psi = psi_inv = None
    if flavor is Wrap.NWC:
        psi = find_psi(q, n)
        psi_inv = mod_inv(psi, q)
    return ZqContext(
        q=q,
        n=n,
        omega=omega,
        omega_inv=mod_inv(omega, q),
        n_inv=mod_inv(n, q),
        flavor=flavor,
        psi=psi,
        psi_inv=psi_inv,
    )
