"""Spectra of the unitary finite-Euclidean graphs T_n^(d).

Vertices are the vectors of Z_n^d; ``a ~ b`` iff ``sum((a_i - b_i)**2)`` is a
unit modulo n.  The graph is the Cayley graph of Z_n^d with connection set
S_d(n), so its eigenvalues are the character sums
``lambda_b = sum_{x in S_d(n)} e_n(b.x)``.

Three evaluation routes are provided:

* :func:`lambda_closed` -- inclusion-exclusion over the prime subsets of n,
  reducing everything to the auxiliary sums ``f_m`` at squarefree moduli,
  which are in turn evaluated by a recursion on ``g_m`` and the closed
  Gauss/Ramanujan forms of ``g_m``;
* the same decomposition with ``f_m`` evaluated by the coordinatewise
  ``theta`` factorization (``f_method="theta"``);
* :func:`lambda_oracle` -- brute-force enumeration of S_d(n).
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

from .cyclo import CycNum, root_of_unity
from .eigen import jacobi_eigenvalues
from .expsums import (
    char_gauss_sum,
    gauss_sum_closed,
    gauss_sum_direct,
    ramanujan_sum,
    sqrt_exact,
    theta,
)
from .nt_kernel import FactoredInt, SubsetIndex, as_factored, factor, jacobi, mod_inverse, subsets

DEFAULT_ENUM_BUDGET = 10**6
DEFAULT_DENSE_BUDGET = 600


class BudgetExceeded(RuntimeError):
    """A computation would exceed a configured size limit."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} needs {size} items, over the budget of {limit}")
        self.what = what
        self.size = size
        self.limit = limit


@dataclass(frozen=True)
class GraphParams:
    n: FactoredInt
    d: int

    def __post_init__(self):
        if not isinstance(self.n, FactoredInt):
            object.__setattr__(self, "n", factor(self.n))
        if self.n.value < 2:
            raise ValueError(f"modulus must be at least 2, got {self.n.value}")
        if self.d < 1:
            raise ValueError(f"dimension must be at least 1, got {self.d}")

    @classmethod
    def of(cls, n: int, d: int) -> "GraphParams":
        return cls(factor(n), d)

    @property
    def modulus(self) -> int:
        return self.n.value

    @property
    def vertex_count(self) -> int:
        return self.n.value**self.d

    @property
    def parity_class(self) -> str:
        """``"n_odd"``, ``"d_even"`` or ``"open"`` (n even and d odd)."""
        if self.n.value % 2:
            return "n_odd"
        if self.d % 2 == 0:
            return "d_even"
        return "open"

    def vectors(self) -> Iterable[tuple[int, ...]]:
        """All of Z_n^d in lexicographic order."""
        return itertools.product(range(self.n.value), repeat=self.d)


@dataclass(frozen=True)
class LatticeVector:
    params: GraphParams
    components: tuple[int, ...]

    def __post_init__(self):
        comps = tuple(int(c) % self.params.modulus for c in self.components)
        if len(comps) != self.params.d:
            raise ValueError(f"expected {self.params.d} components, got {len(comps)}")
        object.__setattr__(self, "components", comps)

    def norm(self, modulus: int | None = None) -> int:
        s = sum(c * c for c in self.components)
        return s % (modulus or self.params.modulus)

    def divisible_by(self, k: int) -> bool:
        return all(c % k == 0 for c in self.components)


def vector(n: int, d: int, components: Sequence[int]) -> LatticeVector:
    return LatticeVector(GraphParams.of(n, d), tuple(components))


def _div(b: Sequence[int], k: int) -> bool:
    return all(c % k == 0 for c in b)


# connection set ---------------------------------------------------------

def connection_membership(x: LatticeVector) -> bool:
    """True iff ``x.x`` is a unit modulo n."""
    n = x.params.modulus
    return gcd(x.norm(), n) == 1


@lru_cache(maxsize=None)
def _norm_counts(n: int, d: int) -> tuple[int, ...]:
    """How many x in Z_n^d have ``x.x == a (mod n)``, for each a."""
    squares = [0] * n
    for x in range(n):
        squares[x * x % n] += 1
    counts = [1] + [0] * (n - 1)
    for _ in range(d):
        nxt = [0] * n
        for a, ca in enumerate(counts):
            if ca:
                for s, cs in enumerate(squares):
                    if cs:
                        nxt[(a + s) % n] += ca * cs
        counts = nxt
    return tuple(counts)


def degree(params: GraphParams) -> int:
    """|S_d(n)|, counted through the distribution of norms."""
    n = params.modulus
    counts = _norm_counts(n, params.d)
    return sum(c for a, c in enumerate(counts) if gcd(a, n) == 1)


@lru_cache(maxsize=8)
def _connection_array(n: int, d: int) -> np.ndarray:
    pts = np.array(list(itertools.product(range(n), repeat=d)), dtype=np.int64).reshape(-1, d)
    norms = (pts * pts).sum(axis=1) % n
    return pts[np.gcd(norms, n) == 1]


# auxiliary sums by theta factorization ----------------------------------

def g_n(b: Sequence[int], n: int) -> CycNum:
    """``sum over units k and x in Z_n^d of e_n(b.x + k x.x)``.

    Evaluated as ``sum_k prod_i theta(n, b_i, k)``.
    """
    b = _components(b)
    total = CycNum.zero(n)
    for k in range(n):
        if gcd(k, n) == 1:
            total = total + _theta_product(n, b, k)
    return total


def f_n(b: Sequence[int], n: int) -> CycNum:
    """``sum over k in Z_n and x in Z_n^d of e_n(b.x + k x.x)``, theta-factorized."""
    b = _components(b)
    total = CycNum.zero(n)
    for k in range(n):
        total = total + _theta_product(n, b, k)
    return total


def f_pair(b: Sequence[int], n1: int, n2: int) -> CycNum:
    """``f_{n1,n2}(b)``: k runs over Z_{n2}, x over Z_{n1 n2}^d, with weight n1 on k."""
    b = _components(b)
    m = n1 * n2
    total = CycNum.zero(m)
    for k in range(n2):
        total = total + _theta_product(m, b, n1 * k)
    return total


def _components(b) -> tuple[int, ...]:
    if isinstance(b, LatticeVector):
        return b.components
    return tuple(int(c) for c in b)


def _theta_product(n: int, b: tuple[int, ...], k: int) -> CycNum:
    out = CycNum.from_rational(1, n)
    for bi in b:
        out = out * theta(n, bi, k)
    return out


# closed forms for g at odd and at even squarefree moduli ---------------

@lru_cache(maxsize=None)
def _gauss_power(m: int, d: int, with_char: bool) -> CycNum:
    base = gauss_sum_direct(m, 1) ** d
    return base * char_gauss_sum(m, 1) if with_char else base


@lru_cache(maxsize=None)
def _g_odd(m: int, d: int, norm: int) -> CycNum:
    if d % 2 == 0:
        return _gauss_power(m, d, False) * ramanujan_sum(-norm, m)
    if factor(m).squarefree:
        # G_m(chi, c) = (c/m) G_m(chi, 1) for every c when m is squarefree
        return _gauss_power(m, d, True) * jacobi(-norm, m)
    return _gauss_power(m, d, False) * char_gauss_sum(m, -norm)


@lru_cache(maxsize=None)
def _sqrt_power(m: int, d: int) -> CycNum:
    return sqrt_exact(m) ** d


@lru_cache(maxsize=None)
def _even_units(m: int, d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # per unit k mod m: the z_{4m} exponent of z8^(+-d), I_{4m}(k), and (4m/k)^d
    M = 4 * m
    eighth = m // 2  # z8 = z_{4m}^(m/2)
    ks = [k for k in range(1, m) if gcd(k, m) == 1]
    rot = np.array([d * (eighth if k % 4 == 1 else -eighth) for k in ks], dtype=np.int64)
    inv = np.array([mod_inverse(k, M) for k in ks], dtype=np.int64)
    sign = np.array([jacobi(M, k) ** d for k in ks], dtype=np.int64)
    return rot, inv, sign


@lru_cache(maxsize=None)
def _g_even_squarefree(m: int, d: int, norm4m: int) -> CycNum:
    # sum over units k of e_{4m}(-I_{4m}(k) b.b) (G_{4m}(k)/2)^d, where
    # G_{4m}(k)/2 = (1 + i^k) sqrt(m) (4m/k) and 1 + i^k = sqrt(2) z8^(+-1):
    # the sum is sqrt(2m)^d times a signed sum of 4m-th roots of unity
    M = 4 * m
    rot, inv, sign = _even_units(m, d)
    exps = (rot - inv * norm4m) % M
    counts = np.bincount(exps, weights=sign, minlength=M).astype(np.int64)
    total = CycNum.from_counts(M, counts.tolist()) * _sqrt_power(2 * m, d)
    return total.restrict(m)


def g_closed(b: Sequence[int], m: int) -> CycNum | None:
    """g_m(b) from its closed form, or None when none is available.

    Odd m: ``G_m(1)**d`` times ``r(-b.b, m)`` (d even) or ``G_m(chi, -b.b)``
    (d odd).  Even squarefree m: zero when some component is even, otherwise
    a sum over units of ``e_{4m}`` twisted Gauss sums of modulus 4m.
    """
    b = tuple(c % m for c in _components(b))
    d = len(b)
    if m % 2:
        return _g_odd(m, d, sum(c * c for c in b) % m)
    if not factor(m).squarefree:
        return None
    if any(c % 2 == 0 for c in b):
        return CycNum.zero(m)
    return _g_even_squarefree(m, d, sum(c * c for c in b) % (4 * m))


def g_value(b: Sequence[int], m: int) -> CycNum:
    g = g_closed(b, m)
    return g if g is not None else g_n(b, m)


@lru_cache(maxsize=None)
def _f_recursive(m: int, c: tuple[int, ...]) -> CycNum:
    # c is sorted and reduced mod m; f is symmetric in the coordinates
    d = len(c)
    total = g_value(c, m)
    for J in subsets(m):
        if _div(c, J.pI):
            inner = tuple(sorted((ci // J.pI) % J.nI for ci in c))
            term = _f_recursive(J.nI, inner).embed(m) * J.pI**d
            total = total + term if J.sign < 0 else total - term
    return total


def f_recursive(b: Sequence[int], m: int) -> CycNum:
    """f_m(b) through ``f_m = g_m - sum_J (-1)^|J| delta(p_J | b) p_J^d f_{m/p_J}(b/p_J)``."""
    return _f_recursive(m, tuple(sorted(c % m for c in _components(b))))


def f_theta(b: Sequence[int], m: int) -> CycNum:
    return _f_theta(m, tuple(sorted(c % m for c in _components(b))))


@lru_cache(maxsize=None)
def _f_theta(m: int, c: tuple[int, ...]) -> CycNum:
    return f_n(c, m)


_F_METHODS = {"closed": _f_recursive, "theta": _f_theta}


# eigenvalues ------------------------------------------------------------

@dataclass(frozen=True)
class SubsetContribution:
    subset: SubsetIndex
    f_value: CycNum
    term: CycNum


@dataclass(frozen=True)
class EvalTrace:
    b: LatticeVector
    value: CycNum
    method: str
    contributions: tuple[SubsetContribution, ...]
    principal: int
    integrality: int | None

    @property
    def lambda_(self) -> CycNum:
        return self.value


def _subset_argument(b: tuple[int, ...], sub: SubsetIndex) -> tuple[int, ...] | None:
    # the point of Z_{p_I}^d at which f_{p_I} is evaluated, or None when n_I does not divide b
    if not _div(b, sub.nI):
        return None
    return tuple(sorted((c // sub.nI) % sub.pI for c in b))


def lambda_closed(b: LatticeVector, f_method: str = "closed") -> EvalTrace:
    """lambda_b by inclusion-exclusion over the nonempty prime subsets of n.

    ``lambda_b = delta(n | b) n^d + sum_I (-1)^|I| / p_I * delta(n_I | b) *
    n_I^d * f_{p_I}(b / n_I)``, with all arithmetic exact.
    """
    params = b.params
    n, d = params.modulus, params.d
    f_eval = _F_METHODS[f_method]
    principal = n**d if _div(b.components, n) else 0
    total = CycNum.from_rational(principal, n)
    contributions = []
    for sub in subsets(params.n):
        arg = _subset_argument(b.components, sub)
        if arg is None:
            continue
        fv = f_eval(sub.pI, arg)
        term = fv.embed(n) * (sub.sign * (sub.nI**d)) / sub.pI
        contributions.append(SubsetContribution(sub, fv, term))
        total = total + term
    method = "closed_form" if f_method == "closed" else "theta_direct"
    return EvalTrace(b, total, method, tuple(contributions), principal, total.as_integer())


def lambda_oracle(b: LatticeVector, budget: int = DEFAULT_ENUM_BUDGET) -> CycNum:
    """lambda_b by enumerating S_d(n) inside Z_n^d."""
    params = b.params
    if params.vertex_count > budget:
        raise BudgetExceeded("full enumeration of Z_n^d", params.vertex_count, budget)
    n = params.modulus
    pts = _connection_array(n, params.d)
    exps = (pts @ np.array(b.components, dtype=np.int64)) % n
    return CycNum.from_counts(n, np.bincount(exps, minlength=n).tolist())


class _ClosedEvaluator:
    """Memoized lambda_b for one graph, keyed on the f-arguments that b induces."""

    def __init__(self, params: GraphParams, f_method: str = "closed"):
        self.params = params
        self.n = params.modulus
        self.subs = tuple(subsets(params.n))
        self.f_eval = _F_METHODS[f_method]
        self.cache: dict[tuple, CycNum] = {}
        self.terms: dict[tuple[int, tuple[int, ...]], CycNum] = {}

    def _term(self, i: int, arg: tuple[int, ...]) -> CycNum:
        term = self.terms.get((i, arg))
        if term is None:
            sub = self.subs[i]
            fv = self.f_eval(sub.pI, arg).embed(self.n)
            term = fv * Fraction(sub.sign * sub.nI**self.params.d, sub.pI)
            self.terms[(i, arg)] = term
        return term

    def __call__(self, b: tuple[int, ...]) -> CycNum:
        n = self.n
        top = all(c == 0 for c in b)
        key = (top,) + tuple(_subset_argument(b, s) for s in self.subs)
        val = self.cache.get(key)
        if val is None:
            val = CycNum.from_rational(n**self.params.d if top else 0, n)
            for i, arg in enumerate(key[1:]):
                if arg is not None:
                    val = val + self._term(i, arg)
            self.cache[key] = val
        return val


# full spectra -----------------------------------------------------------

@dataclass
class SpectrumReport:
    params: GraphParams
    degree: int
    eigenvalues: list[tuple[int | CycNum, int]]
    all_integral: bool
    ramanujan_ok: bool
    second_max_abs: float
    timing: float = 0.0
    witness: tuple[int, ...] | None = None

    @property
    def multiplicity_total(self) -> int:
        return sum(m for _, m in self.eigenvalues)

    def as_dict(self) -> dict[int | CycNum, int]:
        return dict(self.eigenvalues)

    def numeric(self) -> list[float]:
        """All eigenvalues with multiplicity, as sorted floats."""
        out = []
        for v, mult in self.eigenvalues:
            x = float(v) if isinstance(v, int) else v.approx_complex().real
            out.extend([x] * mult)
        return sorted(out)


def eigenvalue_map(params: GraphParams, method: str = "closed",
                   budget: int = DEFAULT_ENUM_BUDGET) -> dict[tuple[int, ...], CycNum]:
    """lambda_b for every b in Z_n^d, in lexicographic order of b."""
    if params.vertex_count > budget:
        raise BudgetExceeded("spectrum over Z_n^d", params.vertex_count, budget)
    if method == "oracle":
        return {b: lambda_oracle(LatticeVector(params, b), budget) for b in params.vectors()}
    ev = _ClosedEvaluator(params, method)
    return {b: ev(b) for b in params.vectors()}


def spectrum(params: GraphParams, budget: int = DEFAULT_ENUM_BUDGET,
             method: str = "closed") -> SpectrumReport:
    """Full eigenvalue multiset of T_n^(d) with integrality and Ramanujan checks."""
    start = time.perf_counter()
    values = eigenvalue_map(params, method, budget)
    n = params.modulus
    buckets: dict[object, list] = {}
    witness = None
    for b, val in values.items():
        as_int = val.as_integer()
        if as_int is not None:
            key = as_int
        else:
            val = val.embed(n) if n % val.order == 0 else val
            key = val.key()
            if witness is None:
                witness = b
        slot = buckets.get(key)
        if slot is None:
            buckets[key] = [as_int if as_int is not None else val, 1]
        else:
            slot[1] += 1
    integral = sorted((v for v in buckets.values() if isinstance(v[0], int)),
                      key=lambda v: -v[0])
    other = [buckets[k] for k in sorted(k for k in buckets if isinstance(k, tuple))]
    eigenvalues = [(v, m) for v, m in integral + other]
    deg = degree(params)
    all_integral = not other
    nontrivial = [v for v, _ in eigenvalues if not (isinstance(v, int) and v == deg)]
    if all_integral:
        top = max((abs(v) for v in nontrivial), default=0)
        ramanujan_ok = top * top <= 4 * (deg - 1)
        second = float(top)
    else:
        second = max((abs(v) if isinstance(v, int) else abs(v.approx_complex())
                      for v in nontrivial), default=0.0)
        ramanujan_ok = second <= 2 * math.sqrt(deg - 1)
    return SpectrumReport(params, deg, eigenvalues, all_integral, ramanujan_ok,
                          float(second), time.perf_counter() - start, witness)


# dense oracle -----------------------------------------------------------

def adjacency_matrix(params: GraphParams, budget: int = DEFAULT_DENSE_BUDGET) -> np.ndarray:
    """The 0/1 adjacency matrix, vertices in lexicographic order."""
    N = params.vertex_count
    if N > budget:
        raise BudgetExceeded("dense adjacency matrix", N, budget)
    n = params.modulus
    pts = np.array(list(params.vectors()), dtype=np.int64).reshape(N, params.d)
    dist = np.zeros((N, N), dtype=np.int64)
    for i in range(params.d):
        diff = (pts[:, None, i] - pts[None, :, i]) % n
        dist += diff * diff
    return (np.gcd(dist % n, n) == 1).astype(np.float64)


def adjacency_oracle(params: GraphParams, budget: int = DEFAULT_DENSE_BUDGET,
                     tol: float = 1e-10) -> list[float]:
    """Sorted eigenvalues of the explicit adjacency matrix via Jacobi rotations."""
    return sorted(jacobi_eigenvalues(adjacency_matrix(params, budget), tol=tol).tolist())


def fft_oracle(params: GraphParams, budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
    """All lambda_b at once, numerically, as the d-dimensional DFT of the
    indicator of S_d(n).  Entry ``[b]`` is lambda_b (real since S = -S)."""
    N = params.vertex_count
    if N > budget:
        raise BudgetExceeded("FFT over Z_n^d", N, budget)
    n, d = params.modulus, params.d
    sq = np.arange(n, dtype=np.int64) ** 2
    norm = np.zeros((n,) * d, dtype=np.int64)
    for i in range(d):
        shape = [1] * d
        shape[i] = n
        norm = norm + sq.reshape(shape)
    indicator = (np.gcd(norm % n, n) == 1).astype(np.float64)
    return np.fft.fftn(indicator).real


# conjecture sweep -------------------------------------------------------

@dataclass
class SweepRecord:
    n: int
    d: int
    status: str  # "done" or "skipped"
    all_integral: bool | None = None
    witness: tuple[int, ...] | None = None
    witness_value: CycNum | None = None
    distinct_eigenvalues: int | None = None
    degree: int | None = None
    timing: float = 0.0
    reason: str | None = None


def conjecture_sweep(n_range: Iterable[int], d_range: Iterable[int],
                     budget: int = DEFAULT_ENUM_BUDGET) -> list[SweepRecord]:
    """Run full spectra for every pair with n even and d odd.

    Pairs outside the budget are recorded as skipped.  No outcome is assumed.
    """
    records = []
    d_values = list(d_range)
    for n in n_range:
        if n % 2 or n < 2:
            continue
        for d in d_values:
            if d % 2 == 0 or d < 1:
                continue
            records.append(sweep_one(n, d, budget))
    return records


def sweep_one(n: int, d: int, budget: int = DEFAULT_ENUM_BUDGET) -> SweepRecord:
    params = GraphParams.of(n, d)
    if params.vertex_count > budget:
        return SweepRecord(n, d, "skipped",
                           reason=f"n^d = {params.vertex_count} exceeds budget {budget}")
    rep = spectrum(params, budget)
    wval = None
    if rep.witness is not None:
        wval = lambda_closed(LatticeVector(params, rep.witness)).value
    return SweepRecord(n, d, "done", rep.all_integral, rep.witness, wval,
                       len(rep.eigenvalues), rep.degree, rep.timing)
