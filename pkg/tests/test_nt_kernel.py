from math import gcd, isqrt, prod

import pytest
from hypothesis import given, strategies as st

from uefg.nt_kernel import (
    divisors, euler_phi, factor, integral_square_root, jacobi, legendre,
    mobius, mod_inverse, subsets,
)


@pytest.mark.parametrize("n, factors, phi, mu", [
    (12, ((2, 2), (3, 1)), 4, 0),
    (1, (), 1, 1),
    (30, ((2, 1), (3, 1), (5, 1)), 8, -1),
])
def test_factor_examples(n, factors, phi, mu):
    f = factor(n)
    assert f.factors == factors
    assert (f.phi, f.mu) == (phi, mu)


@pytest.mark.parametrize("bad", [0, -3])
def test_factor_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        factor(bad)


def test_factor_rejects_non_integers():
    with pytest.raises(TypeError):
        factor(2.0)


@given(st.integers(1, 5000))
def test_factor_invariants(n):
    f = factor(n)
    assert prod(p**r for p, r in f.factors) == n
    ps = [p for p, _ in f.factors]
    assert ps == sorted(set(ps))
    assert all(r >= 1 for _, r in f.factors)
    assert f.phi == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_mobius_and_phi_divisor_sums():
    for n in range(1, 1001):
        ds = divisors(n)
        assert sum(mobius(d) for d in ds) == (1 if n == 1 else 0)
        assert sum(euler_phi(d) for d in ds) == n


@pytest.mark.parametrize("n, root", [(9, 3), (8, 4), (1, 1)])
def test_integral_square_root_examples(n, root):
    assert integral_square_root(n) == root


def test_integral_square_root_brute_scan():
    for n in range(1, 501):
        r = integral_square_root(n)
        found = 0
        for x in range(1, n * r + 1):
            if x * x % n == 0:
                found = gcd(found, x)
        assert found == r, n


def test_mod_inverse():
    assert mod_inverse(3, 7) == 5
    for n in (1, 2, 9, 100):
        assert mod_inverse(1, n) == 1 % n
    with pytest.raises(ValueError):
        mod_inverse(4, 6)


@given(st.integers(2, 400), st.integers(-1000, 1000))
def test_mod_inverse_property(n, k):
    if gcd(k, n) != 1:
        with pytest.raises(ValueError):
            mod_inverse(k, n)
    else:
        assert k * mod_inverse(k, n) % n == 1


def test_jacobi_examples():
    assert jacobi(2, 15) == 1
    assert jacobi(3, 9) == 0
    assert jacobi(17, 1) == 1 and jacobi(0, 1) == 1
    for bad in (0, -3, 4):
        with pytest.raises(ValueError):
            jacobi(1, bad)


def test_legendre_is_euler_criterion():
    for p in (3, 5, 7, 11, 13, 97):
        for c in range(p):
            e = pow(c, (p - 1) // 2, p)
            assert legendre(c, p) == (e if e <= 1 else -1)


def test_jacobi_periodic_and_multiplicative():
    for n in range(1, 1000, 2):
        row = [jacobi(c, n) for c in range(n)]
        for c in (n + 3, 2 * n + 5, -7):
            assert jacobi(c, n) == row[c % n]
        for a, b in ((2, 3), (5, 7), (n - 1, n - 2)):
            assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


def test_subsets_twelve():
    got = {tuple(factor(12).primes[i] for i in s.members): (s.pI, s.nI, s.nIroot, s.pIprime)
           for s in subsets(12)}
    assert got == {(2,): (2, 6, 6, 2), (3,): (3, 4, 2, 6), (2, 3): (6, 2, 2, 6)}
    assert [s.members for s in subsets(12)] == [(0,), (1,), (0, 1)]


def test_subsets_trivial():
    (only,) = subsets(5)
    assert (only.pI, only.nI, only.nIroot, only.pIprime) == (5, 1, 1, 5)
    assert list(subsets(1)) == []


@given(st.integers(2, 3000))
def test_subset_invariants(n):
    subs = list(subsets(n))
    assert len(subs) == 2 ** factor(n).t - 1
    for s in subs:
        assert s.pI * s.nI == n
        assert factor(s.pI).squarefree
        assert s.pIprime % s.pI == 0
        assert (s.nI * s.pIprime) % n == 0
        assert s.sign == (-1) ** s.size
        if s.nI <= 200:
            assert all(x % s.nIroot == 0 for x in range(1, s.nI + 1) if x * x % s.nI == 0)
