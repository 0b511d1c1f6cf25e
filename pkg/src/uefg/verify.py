"""Bounded verification suites for the exponential-sum identities.

Each suite returns a :class:`SuiteResult`; a suite passes when no check
fails.  Failures carry the offending parameters so they can be reproduced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .cyclo import CycNum, from_counts_batch
from .expsums import (
    char_gauss_sum,
    gauss_sum_closed,
    gauss_sum_direct,
    lemma21_check,
    ramanujan_sum,
)
from .nt_kernel import factor, jacobi, subsets
from .spectra import (
    GraphParams,
    LatticeVector,
    f_pair,
    f_theta,
    g_closed,
    g_n,
    lambda_oracle,
    _ClosedEvaluator,
)


@dataclass
class SuiteResult:
    suite: str
    bounds: dict
    checks: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **info):
        self.failures.append(info)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "bounds": self.bounds,
            "checks": self.checks,
            "passed": self.passed,
            "failures": self.failures[:50],
            "failure_count": len(self.failures),
        }


# single-modulus sums -----------------------------------------------------

def verify_gauss(max_n: int = 200) -> SuiteResult:
    """Closed-form G_n(c) against direct summation for every unit c, n <= max_n."""
    res = SuiteResult("gauss", {"max_n": max_n})
    for n in range(1, max_n + 1):
        for c in range(n):
            if gcd(c, n) != 1:
                continue
            res.checks += 1
            if gauss_sum_closed(n, c) != gauss_sum_direct(n, c):
                res.fail(n=n, c=c)
    return res


def verify_ramanujan(max_n: int = 500) -> SuiteResult:
    """r(c, n) closed form against direct summation, for all c in Z_n."""
    res = SuiteResult("ramanujan", {"max_n": max_n})
    for n in range(1, max_n + 1):
        units = np.array([k for k in range(n) if gcd(k, n) == 1], dtype=np.int64)
        cs = np.arange(n, dtype=np.int64)
        exps = np.outer(cs, units) % n
        counts = np.zeros((n, n), dtype=np.int64)
        np.add.at(counts, (np.repeat(cs, len(units)), exps.ravel()), 1)
        for c, direct in enumerate(from_counts_batch(n, counts)):
            res.checks += 1
            closed = ramanujan_sum(c, n)
            if direct.as_integer() is None or direct != closed:
                res.fail(n=n, c=c, closed=closed, direct=str(direct))
    return res


def verify_char(max_n: int = 99) -> SuiteResult:
    """G_n(chi, c) = (c/n) G_n(chi, 1), and G_n(c) = G_n(chi, c) for squarefree n.

    The multiplicativity relation is only asserted where it holds: c a unit,
    or n squarefree.  For non-squarefree n and non-unit c it fails (n = 9,
    c = 3 gives -3 against 0).
    """
    res = SuiteResult("char", {"max_n": max_n})
    for n in range(1, max_n + 1, 2):
        sf = factor(n).squarefree
        base = char_gauss_sum(n, 1)
        for c in range(n):
            unit = gcd(c, n) == 1
            if unit or sf:
                res.checks += 1
                if char_gauss_sum(n, c) != base * jacobi(c, n):
                    res.fail(n=n, c=c, identity="multiplicative")
            if sf and unit:
                res.checks += 1
                if gauss_sum_direct(n, c) != char_gauss_sum(n, c):
                    res.fail(n=n, c=c, identity="gauss=char")
    return res


def verify_lemma21(max_n: int = 99) -> SuiteResult:
    """n | G_n(1) G_n(chi, c) for odd n and every c."""
    res = SuiteResult("lemma21", {"max_n": max_n})
    for n in range(1, max_n + 1, 2):
        for c in range(n):
            res.checks += 1
            q, ok = lemma21_check(n, c)
            if not ok:
                res.fail(n=n, c=c, quotient=str(q))
    return res


# auxiliary-sum identities -----------------------------------------------

def f_pair_literal(b, n1: int, n2: int) -> CycNum:
    """f_{n1,n2}(b) by enumerating every (k, x); test oracle, O(n2 (n1 n2)^d)."""
    return f_pair_literal_batch([b], n1, n2)[0]


def f_pair_literal_batch(bs, n1: int, n2: int, chunk: int = 2 * 10**7) -> list[CycNum]:
    """:func:`f_pair_literal` for many b of one dimension, vectorized over b."""
    bs = np.array(bs, dtype=np.int64)
    nb, d = bs.shape
    m = n1 * n2
    xs = np.array(list(itertools.product(range(m), repeat=d)), dtype=np.int64).reshape(-1, d)
    quad = ((n1 * np.arange(n2, dtype=np.int64)[:, None] * (xs * xs).sum(axis=1)[None, :]) % m).astype(np.int32)
    per_b = quad.size
    step = max(1, chunk // per_b)
    out = []
    for lo in range(0, nb, step):
        blk = bs[lo:lo + step]
        # entries of lin + quad lie in [0, 2m); bin over 2m slots per b and fold
        lin = ((blk @ xs.T) % m + (np.arange(len(blk), dtype=np.int64) * 2 * m)[:, None]).astype(np.int32)
        exps = lin[:, None, :] + quad[None, :, :]
        counts = np.bincount(exps.ravel(), minlength=len(blk) * 2 * m).reshape(len(blk), 2, m).sum(axis=1)
        out.extend(from_counts_batch(m, counts))
    return out


def verify_lemma31(max_n: int = 60, max_d: int = 2) -> SuiteResult:
    """f_{n1,n2}(b) = delta(n1 | b) n1^d f_{n2}(b / n1), literal double sum on the left.

    Runs over n1*n2 <= max_n and d <= max_d.  Both sides are unchanged by
    permuting the components of b or negating one of them, so for d >= 2
    only one b per class (sorted, components in [0, m/2]) is checked.
    """
    res = SuiteResult("lemma31", {"max_n": max_n, "max_d": max_d})
    for d in range(1, max_d + 1):
        for m in range(1, max_n + 1):
            reps = (itertools.product(range(m), repeat=d) if d == 1
                    else itertools.combinations_with_replacement(range(m // 2 + 1), d))
            reps = list(reps)
            for n1 in range(1, m + 1):
                if m % n1:
                    continue
                n2 = m // n1
                # right side by the same enumeration at modulus n2 (f_{n2} = f_{1,n2})
                inner = sorted({tuple(sorted(c // n1 for c in b)) for b in reps
                                if all(c % n1 == 0 for c in b)})
                f_inner = dict(zip(inner, f_pair_literal_batch(inner, 1, n2))) if inner else {}
                for b, lhs in zip(reps, f_pair_literal_batch(reps, n1, n2)):
                    res.checks += 1
                    if all(c % n1 == 0 for c in b):
                        rhs = f_inner[tuple(sorted(c // n1 for c in b))] * n1**d
                    else:
                        rhs = 0
                    if lhs != rhs:
                        res.fail(n1=n1, n2=n2, d=d, b=list(b))
    return res


def verify_lemma32(max_n: int = 30, max_d: int = 2) -> SuiteResult:
    """f_n(b) = g_n(b) - sum_I (-1)^|I| f_{p_I, n_I}(b) for every b."""
    res = SuiteResult("lemma32", {"max_n": max_n, "max_d": max_d})
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            for b in itertools.combinations_with_replacement(range(n), d):
                res.checks += 1
                rhs = g_n(b, n)
                for sub in subsets(n):
                    term = f_pair(b, sub.pI, sub.nI)
                    rhs = rhs + term if sub.sign < 0 else rhs - term
                if f_theta(b, n) != rhs:
                    res.fail(n=n, d=d, b=list(b))
    return res


@lru_cache(maxsize=None)
def _g_theta(n: int, b: tuple[int, ...]) -> CycNum:
    return g_n(b, n)


def verify_lemma34(max_n: int = 45, max_size: int = 3375) -> SuiteResult:
    """For odd n: the Gauss/Ramanujan closed form of g_n and ``n | g_n(b)``.

    Theta-factorized g_n is compared with the closed form for d in {1, 2},
    and for d = 3 while n^3 <= max_size.  Divisibility is checked on the
    theta values there and on the closed form for every d = 3 norm class
    up to max_n.
    """
    res = SuiteResult("lemma34", {"max_n": max_n, "max_size": max_size})
    for n in range(3, max_n + 1, 2):
        for d in (1, 2, 3):
            if d == 3 and n**3 > max_size:
                for norm_b in _norm_representatives(n, d):
                    res.checks += 1
                    g = g_closed(norm_b, n)
                    if (g / n).as_integer() is None:
                        res.fail(n=n, d=d, b=list(norm_b), identity="divisibility")
                continue
            for b in itertools.combinations_with_replacement(range(n), d):
                res.checks += 1
                g = _g_theta(n, b)
                if g != g_closed(b, n):
                    res.fail(n=n, d=d, b=list(b), identity="closed form")
                if (g / n).as_integer() is None:
                    res.fail(n=n, d=d, b=list(b), identity="divisibility")
    return res


def _norm_representatives(n: int, d: int, modulus: int | None = None):
    """One sorted b per (norm mod modulus, parity pattern) class."""
    modulus = modulus or n
    seen = {}
    for b in itertools.combinations_with_replacement(range(n), d):
        key = (sum(c * c for c in b) % modulus, tuple(c % 2 for c in b))
        seen.setdefault(key, b)
    return list(seen.values())


def verify_lemma37(max_n: int = 30, max_size: int = 27000, max_size_d4: int = 10**6) -> SuiteResult:
    """Even squarefree n: the closed form of g_n and, for d in {2, 4}, ``n | g_n(b)``.

    (a) For d in {1, 2, 3} with n^d <= max_size: g_n(b) is zero when some b_i
    is even, and otherwise equals the sum over units of e_{4n} twisted
    (G_{4n}(k)/2)^d.  (b) d = 2 and d = 4 divisibility on theta values while
    n^d <= max_size_d4 (d = 4) or max_size (d = 2), and on the closed form
    for the remaining d = 4 classes.
    """
    res = SuiteResult("lemma37", {"max_n": max_n, "max_size": max_size, "max_size_d4": max_size_d4})
    for n in range(2, max_n + 1, 2):
        if not factor(n).squarefree:
            continue
        for d in (1, 2, 3, 4):
            theta_ok = n**d <= (max_size_d4 if d == 4 else max_size)
            if theta_ok:
                for b in itertools.combinations_with_replacement(range(n), d):
                    res.checks += 1
                    g = _g_theta(n, b)
                    if g != g_closed(b, n):
                        res.fail(n=n, d=d, b=list(b), identity="vanishing or twisted sum")
                    if d % 2 == 0 and (g / n).as_integer() is None:
                        res.fail(n=n, d=d, b=list(b), identity="divisibility")
            elif d == 4:
                for b in _norm_representatives(n, d, 4 * n):
                    res.checks += 1
                    if (g_closed(b, n) / n).as_integer() is None:
                        res.fail(n=n, d=d, b=list(b), identity="divisibility")
    return res


def verify_oracle(max_n: int = 10, max_d: int = 3, max_size: int = 10**4) -> SuiteResult:
    """lambda_closed equals brute-force lambda_oracle for every b."""
    res = SuiteResult("oracle", {"max_n": max_n, "max_d": max_d, "max_size": max_size})
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            params = GraphParams.of(n, d)
            if params.vertex_count > max_size:
                continue
            ev = _ClosedEvaluator(params)
            for b in params.vectors():
                res.checks += 1
                if ev(b) != lambda_oracle(LatticeVector(params, b), max_size):
                    res.fail(n=n, d=d, b=list(b))
    return res


SUITES = {
    "gauss": verify_gauss,
    "ramanujan": verify_ramanujan,
    "char": verify_char,
    "lemma21": verify_lemma21,
    "lemma31": verify_lemma31,
    "lemma32": verify_lemma32,
    "lemma34": verify_lemma34,
    "lemma37": verify_lemma37,
    "oracle": verify_oracle,
}
