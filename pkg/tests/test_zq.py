import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nttpoly.errors import (
    FactorTooLarge,
    InvalidModulus,
    NoRoot,
    NotFriendly,
    NotInvertible,
    ParameterError,
)
from nttpoly.zq import (
    Wrap,
    ZqContext,
    factorize,
    find_omega,
    find_psi,
    is_nwc_friendly,
    is_prime,
    is_pwc_friendly,
    make_context,
    mod_add,
    mod_inv,
    mod_pow,
)

from conftest import brute_order


@pytest.mark.parametrize("a, b, q, expected", [
    (7680, 2, 7681, 1),
    (0, 5, 7681, 5),
    (3383, 4298, 7681, 0),
])
def test_mod_add(a, b, q, expected):
    assert mod_add(a, b, q) == expected == (a + b) % q


def test_mod_pow_examples():
    assert 3383**2 == 1489 * 7681 + 7680
    assert mod_pow(3383, 2, 7681) == 7680
    assert mod_pow(1925, 2, 7681) == 3383
    assert mod_pow(1234, 0, 7681) == 1


@pytest.mark.parametrize("a, q, expected", [(4, 7681, 5761), (3383, 7681, 4298), (1925, 7681, 1213)])
def test_mod_inv_examples(a, q, expected):
    assert a * expected % q == 1
    assert mod_inv(a, q) == expected


def test_mod_inv_not_invertible():
    with pytest.raises(NotInvertible):
        mod_inv(6, 9)
    with pytest.raises(NotInvertible):
        mod_inv(0, 7681)


@given(st.integers(1, 7680))
def test_mod_inv_involution(a):
    assert mod_inv(mod_inv(a, 7681), 7681) == a


@given(st.integers(3, 10**6), st.integers(1, 10**6))
def test_mod_inv_general(q, a):
    if math.gcd(a, q) == 1:
        assert a * mod_inv(a, q) % q == 1
    else:
        with pytest.raises(NotInvertible):
            mod_inv(a, q)


@pytest.mark.parametrize("m, expected", [
    (7680, ((2, 9), (3, 1), (5, 1))),
    (7681, ((7681, 1),)),
    (2, ((2, 1),)),
])
def test_factorize_examples(m, expected):
    assert factorize(m).factors == expected


def _trial_is_prime(m):
    return m >= 2 and all(m % d for d in range(2, math.isqrt(m) + 1))


@settings(max_examples=300)
@given(st.integers(2, 2**40))
def test_factorize_self_verifying(m):
    f = factorize(m)
    assert f.value() == m
    primes = f.primes
    assert list(primes) == sorted(set(primes))
    assert all(e >= 1 for _, e in f.factors)
    assert all(is_prime(p) for p in primes)


def test_factorize_large_prime_cofactor():
    p = 2**61 - 1  # Mersenne prime
    assert factorize(p).factors == ((p, 1),)
    assert factorize(2 * p).factors == ((2, 1), (p, 1))


def test_factorize_too_large():
    # product of two primes just above 2**21: trial division cannot split it
    p1, p2 = 2097169, 2097211
    assert _trial_is_prime(p1) and _trial_is_prime(p2)
    with pytest.raises(FactorTooLarge):
        factorize(p1 * p2)


@given(st.integers(2, 20000))
def test_is_prime_matches_trial_division(m):
    assert is_prime(m) == _trial_is_prime(m)


@pytest.mark.parametrize("q, n, expected", [
    (7681, 4, True), (3329, 256, True), (3329, 512, False),
])
def test_pwc_friendly(q, n, expected):
    assert 3328 == 2**8 * 13
    assert is_pwc_friendly(q, n) is expected


@pytest.mark.parametrize("q, n, expected", [
    (7681, 4, True), (3329, 256, False), (8380417, 256, True),
])
def test_nwc_friendly(q, n, expected):
    assert is_nwc_friendly(q, n) is expected


def test_friendliness_composite():
    # 17 * 97: gcd(16, 96) = 16
    assert is_pwc_friendly(17 * 97, 16)
    assert is_nwc_friendly(17 * 97, 8)
    assert not is_pwc_friendly(17 * 97, 32)
    # an even factor contributes p - 1 = 1 to the gcd
    assert not is_pwc_friendly(2 * 7681, 2)


def _brute_primitive_roots(q, n):
    return sorted(x for x in range(1, q) if pow(x, n, q) == 1 and brute_order(x, q) == n)


def test_find_omega_examples():
    assert _brute_primitive_roots(7681, 4) == [3383, 4298]
    assert find_omega(7681, 4) == 3383
    assert find_omega(7681, 1) == 1
    assert _brute_primitive_roots(17, 4) == [4, 13]
    assert find_omega(17, 4) == 4


@pytest.mark.parametrize("q, n", [(17, 8), (97, 16), (257, 64), (7681, 16), (7681, 3), (7681, 10)])
def test_find_omega_is_brute_force_minimum(q, n):
    assert find_omega(q, n) == _brute_primitive_roots(q, n)[0]


def _brute_psi(q, n, omega):
    return [x for x in range(1, q) if x * x % q == omega and pow(x, n, q) == q - 1]


def test_find_psi_examples():
    assert _brute_psi(7681, 4, 3383) == [1925, 5756]
    assert find_psi(7681, 4) == 1925
    assert _brute_psi(17, 4, 4) == [2, 15]
    assert find_psi(17, 4) == 2


def test_find_psi_dilithium():
    q, n = 8380417, 256
    omega = find_omega(q, n)
    x = np.arange(q, dtype=np.int64)
    candidates = [int(c) for c in np.nonzero(x * x % q == omega)[0]]
    valid = [c for c in candidates if pow(c, n, q) == q - 1]
    psi = find_psi(q, n)
    assert psi == min(valid)
    assert pow(psi, 2, q) == omega and pow(psi, n, q) == q - 1


@pytest.mark.parametrize("q, n", [(17, 8), (257, 32), (7681, 8), (7681, 256), (12289, 512)])
def test_find_psi_brute(q, n):
    assert find_psi(q, n) == _brute_psi(q, n, find_omega(q, n))[0]


def test_find_roots_composite():
    q, n = 17 * 97, 16
    assert find_omega(q, n) == _brute_primitive_roots(q, n)[0]
    for q, n in [(17 * 113, 4), (17 * 17, 8), (41 * 73, 4)]:
        assert find_omega(q, n) == _brute_primitive_roots(q, n)[0]
        assert find_psi(q, n) == _brute_psi(q, n, find_omega(q, n))[0]


def test_find_psi_composite_no_root():
    # smallest omega of order 8 mod 1649 has no square root of order 16
    q, n = 17 * 97, 8
    assert is_nwc_friendly(q, n)
    assert _brute_psi(q, n, find_omega(q, n)) == []
    with pytest.raises(NoRoot):
        find_psi(q, n)


def test_find_roots_not_friendly():
    with pytest.raises(NoRoot):
        find_omega(3329, 512)
    with pytest.raises(NoRoot):
        find_psi(3329, 256)


def test_roots_are_deterministic():
    assert [find_psi(8380417, 512) for _ in range(3)] == [find_psi(8380417, 512)] * 3
    find_omega.cache_clear()
    find_psi.cache_clear()
    assert find_psi(8380417, 512) == find_psi(8380417, 512)


def test_make_context_nwc(ctx7681):
    c = ctx7681
    assert (c.omega, c.omega_inv, c.psi, c.psi_inv, c.n_inv) == (3383, 4298, 1925, 1213, 5761)
    assert c.flavor is Wrap.NWC


def test_make_context_pwc(pwc7681):
    assert pwc7681.omega == 3383
    assert pwc7681.psi is None and pwc7681.psi_inv is None


def test_make_context_errors():
    with pytest.raises(NotFriendly):
        make_context(3329, 512, Wrap.NWC)
    with pytest.raises(NotFriendly):
        make_context(3329, 256, Wrap.NWC)
    with pytest.raises(NotInvertible):
        make_context(4, 2)
    with pytest.raises(InvalidModulus):
        make_context(2**31 + 11, 2)
    with pytest.raises(InvalidModulus):
        make_context(15 * 2, 7)
    make_context(3329, 256, "PWC")


def test_context_rejects_inconsistent_fields(ctx7681):
    good = dict(q=7681, n=4, omega=3383, omega_inv=4298, n_inv=5761,
                flavor=Wrap.NWC, psi=1925, psi_inv=1213)
    ZqContext(**good)
    for key, bad in [("omega", 7680), ("omega_inv", 4297), ("psi", 5757),
                     ("psi_inv", 1212), ("n_inv", 1), ("psi", 8000)]:
        with pytest.raises(ParameterError):
            ZqContext(**{**good, key: bad})
    # omega = -1 satisfies omega^4 = 1 but has order 2
    with pytest.raises(ParameterError):
        ZqContext(**{**good, "omega": 7680, "omega_inv": 7680, "flavor": Wrap.PWC, "psi": None, "psi_inv": None})


CONTEXT_GRID = [(q, n) for q in (17, 257, 7681, 12289, 8380417) for n in (2, 4, 8, 16, 64, 256, 1024, 4096)
                if is_nwc_friendly(q, n)]


@pytest.mark.parametrize("q, n", CONTEXT_GRID)
def test_context_invariants_exhaustive(q, n):
    c = make_context(q, n)
    assert pow(c.omega, n, q) == 1
    x = 1
    for k in range(1, n):
        x = x * c.omega % q
        assert x != 1
    assert pow(c.psi, 2, q) == c.omega and pow(c.psi, n, q) == q - 1
    assert c.omega * c.omega_inv % q == 1 and c.psi * c.psi_inv % q == 1 and n * c.n_inv % q == 1
    assert all(0 <= v < q for v in (c.omega, c.omega_inv, c.psi, c.psi_inv, c.n_inv))


@settings(max_examples=50)
@given(st.sampled_from(CONTEXT_GRID), st.integers(0, 10**6))
def test_psi_periodicity_and_symmetry(qn, k):
    q, n = qn
    c = make_context(q, n)
    k %= n
    assert mod_pow(c.psi, k + 2 * n, q) == mod_pow(c.psi, k, q)
    assert mod_pow(c.psi, k + n, q) == q - mod_pow(c.psi, k, q)
