"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A :class:`CycNum` stores an element of Q(zeta_m) in the power basis
``1, z, ..., z**(phi(m)-1)`` reduced modulo the m-th cyclotomic polynomial.
Coefficients are kept as a tuple of integers over one positive common
denominator, which keeps equality and integrality tests exact.

Operands of different orders are embedded into the lcm-order field before
they are combined.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

import numpy as np

from .nt_kernel import divisors, factor, mobius

# int64 fast paths are taken only when this bound on intermediate sums holds
_INT64_SAFE = 2**62

DEFAULT_MAX_ORDER = 4096
_max_order = DEFAULT_MAX_ORDER


class CyclotomicOrderError(ValueError):
    """Raised when a computation would need a field beyond the order cap."""


def set_max_order(m: int) -> int:
    """Set the largest cyclotomic order arithmetic may use; returns the old cap."""
    global _max_order
    if m < 1:
        raise ValueError("order cap must be positive")
    old, _max_order = _max_order, m
    return old


def max_order() -> int:
    return _max_order


def _check_order(m: int) -> None:
    if m < 1:
        raise ValueError(f"cyclotomic order must be positive, got {m}")
    if m > _max_order:
        raise CyclotomicOrderError(
            f"cyclotomic order {m} exceeds the configured cap {_max_order}"
        )


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dq]
        out[i] = c
        if c:
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first.

    Uses Phi_m = prod over d | m of (x**d - 1)**mu(m/d); multiplying or
    dividing by a binomial is a single shifted pass.
    """
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    ups, downs = [], []
    for d in divisors(m):
        mu = mobius(m // d)
        if mu == 1:
            ups.append(d)
        elif mu == -1:
            downs.append(d)
    poly = [1]
    for d in ups:
        # poly * (x**d - 1)
        new = [0] * (len(poly) + d)
        for i, c in enumerate(poly):
            new[i] -= c
            new[i + d] += c
        poly = new
    for d in downs:
        # poly / (x**d - 1), exact: q[i] = -(p[i] - q[i - d]) read from the top down
        deg = len(poly) - 1 - d
        q = [0] * (deg + 1)
        rem = list(poly)
        for i in range(deg, -1, -1):
            c = rem[i + d]
            q[i] = c
            rem[i + d] = 0
            rem[i] += c
        if any(rem):
            raise ArithmeticError("inexact division by a binomial")
        poly = q
    return tuple(poly)


def cyclotomic_polynomial_quotient(m: int) -> tuple[int, ...]:
    """Phi_m as (x**m - 1) / prod(Phi_d for d | m, d < m); slower cross-check."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial_quotient(d)))
    return tuple(poly)


class _Field:
    """Per-order tables: reductions of z**e for 0 <= e < m, and trace weights."""

    __slots__ = ("m", "phi", "powers", "trace_weights", "_matrix", "_matrix_max")

    def __init__(self, m: int):
        self.m = m
        phi_poly = cyclotomic_polynomial(m)
        self.phi = len(phi_poly) - 1
        phi = self.phi
        powers = []
        cur = [1] + [0] * (phi - 1) if phi else []
        for _ in range(m):
            powers.append(tuple(cur))
            # multiply by z, then reduce the z**phi term
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * phi_poly[j]
        self.powers = powers
        # trace_{Q(z_m)/Q}(z**j) is the Ramanujan sum r(j, m)
        weights = []
        for j in range(phi):
            t = m // gcd(j, m)
            ft = factor(t)
            weights.append(ft.mu * (phi // ft.phi))
        self.trace_weights = tuple(weights)
        self._matrix = None
        self._matrix_max = 0

    def matrix(self):
        if self._matrix is None:
            mat = np.array(self.powers, dtype=np.int64).reshape(self.m, self.phi)
            self._matrix_max = int(np.abs(mat).max()) if mat.size else 0
            self._matrix = mat
        return self._matrix

    def reduce(self, vec) -> list[int]:
        """Reduce a length-m group-ring vector (exponent counts) to the basis."""
        phi = self.phi
        if len(vec) > 2 * phi and len(vec) >= 16:
            mat = self.matrix()
            bound = sum(map(abs, vec)) * max(self._matrix_max, 1)
            if bound < _INT64_SAFE:
                arr = np.asarray(vec, dtype=np.int64)
                nz = np.flatnonzero(arr[phi:]) + phi
                if 4 * len(nz) < len(arr):
                    out = arr[:phi].copy()
                    if len(nz):
                        out += arr[nz] @ mat[nz]
                    return out.tolist()
                return (arr @ mat).tolist()
        out = list(vec[:phi])
        powers = self.powers
        for e in range(phi, len(vec)):
            c = vec[e]
            if c:
                row = powers[e]
                for j in range(phi):
                    rj = row[j]
                    if rj:
                        out[j] += c * rj
        return out


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    return _Field(m)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = gcd(den, *num)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


class CycNum:
    """An exact element of the m-th cyclotomic field."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order: int, num, den: int = 1, *, _canonical: bool = False):
        _check_order(order)
        if _canonical:
            self._num, self._den = num, den
        else:
            num = list(num)
            if len(num) != _field(order).phi:
                raise ValueError(
                    f"order {order} needs {_field(order).phi} coefficients, got {len(num)}"
                )
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            self._num, self._den = _normalize(num, den)
        self.order = order
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def from_counts(cls, order: int, counts, den: int = 1) -> "CycNum":
        """Element ``sum(counts[e] * z**e) / den`` from a length-``order`` vector."""
        _check_order(order)
        field = _field(order)
        if len(counts) != order:
            raise ValueError(f"expected {order} exponent counts, got {len(counts)}")
        num, den = _normalize(field.reduce([int(c) for c in counts]), den)
        return cls(order, num, den, _canonical=True)

    @classmethod
    def from_rational(cls, q, order: int = 1) -> "CycNum":
        q = Fraction(q)
        phi = _field(order).phi
        return cls(order, [q.numerator] + [0] * (phi - 1), q.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "CycNum":
        return cls(order, (0,) * _field(order).phi, 1, _canonical=True)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    # order handling ---------------------------------------------------

    def embed(self, order: int) -> "CycNum":
        """The same number expressed in Q(zeta_order); ``self.order`` must divide it."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        _check_order(order)
        step = order // self.order
        field = _field(order)
        num = self._num
        if len(num) >= 8:
            # sparse: only the exponents j * step are occupied
            mat = field.matrix()
            bound = sum(map(abs, num)) * max(field._matrix_max, 1)
            if bound < _INT64_SAFE:
                rows = mat[np.arange(len(num)) * step]
                out = (np.asarray(num, dtype=np.int64) @ rows).tolist()
                out_num, den = _normalize(out, self._den)
                return CycNum(order, out_num, den, _canonical=True)
        counts = [0] * order
        for j, c in enumerate(num):
            counts[j * step] = c
        out_num, den = _normalize(field.reduce(counts), self._den)
        return CycNum(order, out_num, den, _canonical=True)

    def restrict(self, order: int) -> "CycNum":
        """Re-express in the subfield Q(zeta_order); raises ValueError if not inside it."""
        if order == self.order:
            return self
        if self.order % order:
            raise ValueError(f"order {order} does not divide {self.order}")
        coeffs = _restriction_solve(order, self.order, self._num)
        if coeffs is None:
            raise ValueError(f"{self!r} does not lie in Q(zeta_{order})")
        num, den = _normalize(coeffs[0], coeffs[1] * self._den)
        return CycNum(order, num, den, _canonical=True)

    def _unify(self, other):
        if isinstance(other, CycNum):
            if other.order == self.order:
                return self, other
            m = lcm(self.order, other.order)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, Rational)):
            return self, CycNum.from_rational(other, self.order)
        return None, None

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        if a._den == b._den:
            num = [x + y for x, y in zip(a._num, b._num)]
            den = a._den
        else:
            num = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
            den = a._den * b._den
        num, den = _normalize(num, den)
        return CycNum(a.order, num, den, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, tuple(-c for c in self._num), self._den, _canonical=True)

    def __sub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNum):
            return self.scalar_mul(other)
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        m = a.order
        field = _field(m)
        if field.phi >= 8:
            amax = max(map(abs, a._num))
            bmax = max(map(abs, b._num))
            mat = field.matrix()
            if amax * bmax * field.phi * max(field._matrix_max, 1) * 2 < _INT64_SAFE:
                conv = np.convolve(np.array(a._num, dtype=np.int64), np.array(b._num, dtype=np.int64))
                acc = np.zeros(m, dtype=np.int64)
                head = conv[:m]
                acc[: len(head)] += head
                if len(conv) > m:
                    acc[: len(conv) - m] += conv[m:]
                num, den = _normalize((acc @ mat).tolist(), a._den * b._den)
                return CycNum(m, num, den, _canonical=True)
        acc = [0] * m
        bn = b._num
        nz = [(j, y) for j, y in enumerate(bn) if y]
        for i, x in enumerate(a._num):
            if x:
                for j, y in nz:
                    e = i + j
                    if e >= m:
                        e -= m
                    acc[e] += x * y
        num, den = _normalize(field.reduce(acc), a._den * b._den)
        return CycNum(m, num, den, _canonical=True)

    __rmul__ = __mul__

    def scalar_mul(self, q) -> "CycNum":
        q = Fraction(q)
        a = q.numerator
        num, den = _normalize([c * a for c in self._num], self._den * q.denominator)
        return CycNum(self.order, num, den, _canonical=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNum):
            if other == 0:
                raise ZeroDivisionError("division of a CycNum by zero")
            return self.scalar_mul(1 / Fraction(other))
        if isinstance(other, CycNum):
            q = other.as_rational()
            if q is None:
                raise TypeError("only division by rational CycNums is supported")
            return self / q
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = CycNum.from_rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def galois(self, u: int) -> "CycNum":
        """Image under the automorphism z -> z**u (``u`` a unit mod the order)."""
        m = self.order
        if gcd(u, m) != 1:
            raise ValueError(f"{u} is not a unit modulo {m}")
        counts = [0] * m
        for j, c in enumerate(self._num):
            counts[j * u % m] += c
        num, den = _normalize(_field(m).reduce(counts), self._den)
        return CycNum(m, num, den, _canonical=True)

    def conjugate(self) -> "CycNum":
        return self.galois(-1)

    # predicates and views ---------------------------------------------

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def as_rational(self) -> Fraction | None:
        if not self.is_rational():
            return None
        return Fraction(self._num[0], self._den)

    def as_integer(self) -> int | None:
        """The value as an int when it is a rational integer, else None."""
        if self._den != 1 or not self.is_rational():
            return None
        return self._num[0]

    def normalized_trace(self) -> Fraction:
        """Field trace divided by the degree; independent of the embedding order."""
        field = _field(self.order)
        tr = sum(c * w for c, w in zip(self._num, field.trace_weights))
        return Fraction(tr, self._den * field.phi)

    def approx_complex(self) -> complex:
        """Floating-point value, for reporting only; never used for decisions."""
        m = self.order
        total = 0j
        for j, c in enumerate(self._num):
            if c:
                total += (c / self._den) * cmath.exp(2j * cmath.pi * j / m)
        return total

    def __complex__(self):
        return self.approx_complex()

    def __eq__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        if self._hash is None:
            q = self.as_rational()
            self._hash = hash(q if q is not None else self.normalized_trace())
        return self._hash

    def key(self) -> tuple:
        """Deterministic sort/group key within a fixed order."""
        return (self.order, self._den, self._num)

    def to_json(self) -> dict:
        return {"order": self.order, "coefficients": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycNum":
        coeffs = [Fraction(c) for c in obj["coefficients"]]
        den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        return cls(int(obj["order"]), [int(c * den) for c in coeffs], den)

    def __repr__(self):
        return f"CycNum({self.order}, {self})"

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                z = f"z{self.order}" + (f"^{j}" if j > 1 else "")
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _restriction_data(m: int, M: int):
    """Pivot columns and inverse for solving y * E = x, E the embedding of Q(zeta_m)."""
    step = M // m
    small, big = _field(m), _field(M)
    rows = []
    for j in range(small.phi):
        rows.append([Fraction(v) for v in big.powers[j * step % M]])
    # Gauss-Jordan on the transpose to pick pivot columns of E
    phi_m, phi_M = small.phi, big.phi
    mat = [[rows[j][col] for j in range(phi_m)] for col in range(phi_M)]
    pivots = []
    basis = []
    for col in range(phi_M):
        vec = list(mat[col])
        for pc, bv in zip(pivots, basis):
            lead = next(i for i, v in enumerate(bv) if v)
            if vec[lead]:
                f = vec[lead] / bv[lead]
                vec = [a - f * b for a, b in zip(vec, bv)]
        if any(vec):
            pivots.append(col)
            basis.append(vec)
            if len(pivots) == phi_m:
                break
    sub = [[rows[j][c] for c in pivots] for j in range(phi_m)]
    return tuple(pivots), _invert(sub)


def _invert(mat):
    k = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(mat)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _restriction_solve(m: int, M: int, num):
    step = M // m
    if all(p in factor(m).primes for p in factor(step).primes):
        # basis elements of Q(zeta_m) map onto basis elements of Q(zeta_M)
        if any(c for i, c in enumerate(num) if i % step):
            return None
        return list(num[::step][: _field(m).phi]), 1
    pivots, inv = _restriction_data(m, M)
    x = [num[c] for c in pivots]
    y = [sum(x[i] * inv[i][j] for i in range(len(x))) for j in range(len(x))]
    den = lcm(*(v.denominator for v in y)) if y else 1
    ints = [int(v * den) for v in y]
    cand = CycNum(m, ints, den).embed(M)
    if CycNum(M, num, 1) != cand:
        return None
    return ints, den


def from_counts_batch(order: int, counts) -> list[CycNum]:
    """Many group-ring vectors at once; ``counts`` is a 2-d integer array."""
    _check_order(order)
    field = _field(order)
    counts = np.asarray(counts, dtype=np.int64)
    if counts.ndim != 2 or counts.shape[1] != order:
        raise ValueError(f"expected shape (k, {order}), got {counts.shape}")
    mat = field.matrix()
    if int(np.abs(counts).sum(axis=1).max(initial=0)) * max(field._matrix_max, 1) < _INT64_SAFE:
        rows = (counts @ mat).tolist()
    else:
        rows = [field.reduce([int(c) for c in row]) for row in counts]
    out = []
    for row in rows:
        num, den = _normalize(row, 1)
        out.append(CycNum(order, num, den, _canonical=True))
    return out


def root_of_unity(m: int, j: int = 1) -> CycNum:
    """``zeta_m ** j`` in canonical form."""
    _check_order(m)
    field = _field(m)
    return CycNum(m, field.powers[j % m], 1, _canonical=True)


def exp_sum(m: int, exponents) -> CycNum:
    """``sum(zeta_m ** e for e in exponents)`` computed exactly."""
    counts = [0] * m
    for e in exponents:
        counts[e % m] += 1
    return CycNum.from_counts(m, counts)


def as_integer(x) -> int | None:
    if isinstance(x, CycNum):
        return x.as_integer()
    if isinstance(x, int):
        return x
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else None


def approx_complex(x) -> complex:
    if isinstance(x, CycNum):
        return x.approx_complex()
    return complex(x)


I = root_of_unity(4, 1)
