"""Elementary number theory used by every exponential-sum formula.

Integers are Python ints throughout, so ``n**d`` style factors never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, prod
from typing import Iterator


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its prime decomposition.

    ``factors`` lists ``(p, r)`` pairs with strictly increasing primes.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    phi: int = field(init=False)
    mu: int = field(init=False)

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"FactoredInt needs a positive value, got {self.value}")
        if prod(p**r for p, r in self.factors) != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(r < 1 for _, r in self.factors):
            raise ValueError(f"non-canonical factor list {self.factors}")
        phi = self.value
        for p, _ in self.factors:
            phi = phi // p * (p - 1)
        object.__setattr__(self, "phi", phi)
        if any(r > 1 for _, r in self.factors):
            mu = 0
        else:
            mu = (-1) ** len(self.factors)
        object.__setattr__(self, "mu", mu)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def t(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    @property
    def squarefree(self) -> bool:
        return all(r == 1 for _, r in self.factors)

    @property
    def radical(self) -> int:
        return prod(self.primes)

    def __int__(self):
        return self.value


@lru_cache(maxsize=None)
def factor(n: int) -> FactoredInt:
    """Factor ``n`` by trial division."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"factor expects an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"factor expects n >= 1, got {n}")
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            r = 0
            while m % p == 0:
                m //= p
                r += 1
            factors.append((p, r))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return FactoredInt(n, tuple(factors))


def as_factored(n) -> FactoredInt:
    return n if isinstance(n, FactoredInt) else factor(n)


def euler_phi(n: int) -> int:
    return factor(n).phi


def mobius(n: int) -> int:
    return factor(n).mu


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, r in as_factored(n).factors:
        divs = [d * p**e for d in divs for e in range(r + 1)]
    return sorted(divs)


def integral_square_root(n) -> int:
    """Largest m such that ``n | x**2`` forces ``m | x``."""
    return prod(p ** ((r + 1) // 2) for p, r in as_factored(n).factors)


def mod_inverse(k: int, n: int) -> int:
    """The unit ``I_n(k)`` with ``k * I_n(k) == 1 (mod n)``.

    Raises ValueError when ``k`` is not a unit modulo ``n``.
    """
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n == 1:
        return 0
    if gcd(k, n) != 1:
        raise ValueError(f"{k} is not a unit modulo {n}")
    return pow(k, -1, n)


def legendre(c: int, p: int) -> int:
    """Quadratic character modulo an odd prime ``p``."""
    c %= p
    if c == 0:
        return 0
    return 1 if pow(c, (p - 1) // 2, p) == 1 else -1


def jacobi(c: int, n: int) -> int:
    """Jacobi symbol ``(c/n)`` for odd positive ``n``.

    Evaluated as the product of Legendre symbols over the factorization of
    ``n``; ``jacobi(c, 1) == 1``.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    result = 1
    for p, r in factor(n).factors:
        s = legendre(c, p)
        if s == 0:
            return 0
        if r % 2:
            result *= s
    return result


@dataclass(frozen=True)
class SubsetIndex:
    """Quantities attached to a nonempty subset ``I`` of the prime indices of n.

    ``members`` holds zero-based prime indices.  ``nIroot`` is the integral
    square root of ``nI`` and ``pIprime = n // nIroot``.
    """

    parent: FactoredInt
    members: tuple[int, ...]
    pI: int
    nI: int
    nIroot: int
    pIprime: int

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def sign(self) -> int:
        """``(-1)**|I|``."""
        return -1 if len(self.members) % 2 else 1


@lru_cache(maxsize=None)
def _subsets(n: FactoredInt) -> tuple[SubsetIndex, ...]:
    primes = n.primes
    out = []
    for mask in range(1, 1 << len(primes)):
        members = tuple(i for i in range(len(primes)) if mask >> i & 1)
        pI = prod(primes[i] for i in members)
        nI = n.value // pI
        root = integral_square_root(nI)
        out.append(SubsetIndex(n, members, pI, nI, root, n.value // root))
    return tuple(out)


def subsets(n) -> Iterator[SubsetIndex]:
    """Yield every nonempty prime-index subset of ``n``, by bitmask order.

    For ``n = 1`` nothing is yielded.
    """
    yield from _subsets(as_factored(n))
