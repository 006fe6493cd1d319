"""Truncated q-expansions with exact integer coefficients.

A :class:`QExpansion` knows coefficients ``0 .. T-1`` and nothing else:
asking for index ``T`` raises :class:`~defsieve.errors.OutOfPrecision`.
Arithmetic between two series keeps the smaller precision.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .arith import bernoulli, is_prime, sigma_table
from .errors import (
    InsufficientPrecision,
    NonIntegralCoefficient,
    OutOfPrecision,
    UnsupportedWeight,
)
from .kernels import mul_trunc

LEVEL_ONE_WEIGHTS = (12, 16, 18, 20, 22, 26)


class QExpansion:
    """Immutable truncated power series ``sum c_n q^n`` with ``0 <= n < T``."""

    __slots__ = ("_coeffs", "weight")

    def __init__(self, coeffs, weight=None):
        c = tuple(int(x) for x in coeffs)
        if not c:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "_coeffs", c)
        object.__setattr__(self, "weight", weight)

    def __setattr__(self, name, value):
        raise AttributeError("QExpansion is immutable")

    @property
    def precision(self) -> int:
        return len(self._coeffs)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, n):
        if isinstance(n, slice):
            raise TypeError("slice the .coeffs tuple instead")
        if n < 0 or n >= len(self._coeffs):
            raise OutOfPrecision(n, len(self._coeffs))
        return self._coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        head = ", ".join(map(str, self._coeffs[:6]))
        more = ", ..." if len(self._coeffs) > 6 else ""
        return f"QExpansion([{head}{more}], T={self.precision}, weight={self.weight})"

    def _binary(self, other, op):
        T = min(self.precision, other.precision)
        return QExpansion(
            [op(x, y) for x, y in zip(self._coeffs[:T], other._coeffs[:T])],
            _weight_if_same(self, other),
        )

    def __add__(self, other):
        if isinstance(other, int):
            return QExpansion((self._coeffs[0] + other,) + self._coeffs[1:], self.weight)
        return self._binary(other, int.__add__)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self._binary(other, int.__sub__)

    def __neg__(self):
        return QExpansion([-x for x in self._coeffs], self.weight)

    def __mul__(self, other):
        if isinstance(other, int):
            return QExpansion([other * x for x in self._coeffs], self.weight)
        if not isinstance(other, QExpansion):
            return NotImplemented
        T = min(self.precision, other.precision)
        w = None
        if self.weight is not None and other.weight is not None:
            w = self.weight + other.weight
        return QExpansion(mul_trunc(list(self._coeffs), list(other._coeffs), T), w)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        if result is None:
            return one(self.precision)
        return result

    def exact_div(self, m: int) -> "QExpansion":
        """Divide every coefficient by ``m``; raises ValueError if any is not divisible."""
        out = []
        for n, x in enumerate(self._coeffs):
            q, r = divmod(x, m)
            if r:
                raise ValueError(f"coefficient {n} is not divisible by {m}")
            out.append(q)
        return QExpansion(out, self.weight)

    def truncate(self, T: int) -> "QExpansion":
        if T > self.precision:
            raise OutOfPrecision(T - 1, self.precision)
        return QExpansion(self._coeffs[:T], self.weight)

    def shift(self, s: int = 1) -> "QExpansion":
        """Multiply by ``q**s``; precision grows by ``s`` since the new low terms are known zeros."""
        return QExpansion((0,) * s + self._coeffs, self.weight)

    def is_zero(self) -> bool:
        return not any(self._coeffs)


def _weight_if_same(a, b):
    return a.weight if a.weight == b.weight else None


def one(T: int) -> QExpansion:
    return QExpansion([1] + [0] * (T - 1))


def zero(T: int) -> QExpansion:
    return QExpansion([0] * T)


def qexp_mul(a: QExpansion, b: QExpansion) -> QExpansion:
    return a * b


def coefficient(f: QExpansion, n: int) -> int:
    return f[n]


def euler_product(T: int) -> QExpansion:
    """``prod_{n>=1} (1 - q^n)`` to precision ``T`` from the pentagonal number theorem."""
    c = [0] * T
    m = 0
    while True:
        g1 = m * (3 * m - 1) // 2
        if g1 >= T:
            break
        sign = -1 if m % 2 else 1
        c[g1] = sign
        g2 = m * (3 * m + 1) // 2
        if m and g2 < T:
            c[g2] = sign
        m += 1
    return QExpansion(c)


@lru_cache(maxsize=8)
def delta(T: int) -> QExpansion:
    """Discriminant form ``q * prod (1 - q^n)^24`` to precision ``T``."""
    if T < 2:
        raise InsufficientPrecision("delta needs precision at least 2")
    e1 = euler_product(T - 1)
    e8 = ((e1 * e1) ** 2) ** 2
    e24 = e8 * e8 * e8
    return QExpansion(e24.shift(1).coeffs, 12)


def eisenstein_scalar(k: int) -> Fraction:
    """``-2k / B_k``, the coefficient of ``sigma_{k-1}(n) q^n`` in ``E_k``."""
    return Fraction(-2 * k) / bernoulli(k)


@lru_cache(maxsize=16)
def eisenstein(k: int, T: int) -> QExpansion:
    """Normalized Eisenstein series ``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``.

    Only weights whose scalar is an integer are accepted (``k = 4, 6, 8, 10, 14``).
    """
    if k < 4 or k % 2:
        raise UnsupportedWeight(k)
    c = eisenstein_scalar(k)
    if c.denominator != 1:
        raise NonIntegralCoefficient(f"E_{k} has non-integral coefficients (scalar {c})")
    c = int(c)
    sig = sigma_table(T, k - 1)
    return QExpansion([1] + [c * s for s in sig[1:]], k)


def _e4e6_exponents(k: int) -> tuple[int, int]:
    r = k - 12
    for b in range(r // 6 + 1):
        if (r - 6 * b) % 4 == 0:
            return (r - 6 * b) // 4, b
    raise UnsupportedWeight(k, LEVEL_ONE_WEIGHTS)


@lru_cache(maxsize=8)
def level1_cuspform(k: int, T: int) -> QExpansion:
    """The normalized cusp form of level one and weight ``k`` (one of LEVEL_ONE_WEIGHTS).

    Built as ``Delta * E4^a * E6^b`` with ``4a + 6b = k - 12``.
    """
    if k not in LEVEL_ONE_WEIGHTS:
        raise UnsupportedWeight(k, LEVEL_ONE_WEIGHTS)
    a, b = _e4e6_exponents(k)
    f = delta(T)
    if a:
        f = f * eisenstein(4, T) ** a
    if b:
        f = f * eisenstein(6, T) ** b
    return QExpansion(f.coeffs, k)


def hecke_tp(f: QExpansion, p: int, k: int) -> QExpansion:
    """Image of ``f`` under the weight-``k`` Hecke operator ``T_p``.

    Coefficient ``n`` is ``a(np) + p^{k-1} a(n/p)``, the second term only when
    ``p | n``. The result has precision ``(T-1)//p + 1``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    T = f.precision
    Tout = (T - 1) // p + 1
    if Tout < 2:
        raise InsufficientPrecision(f"T_{p} of a series with precision {T} keeps fewer than 2 terms")
    pk = p ** (k - 1)
    c = f.coeffs
    out = [c[n * p] + (pk * c[n // p] if n % p == 0 else 0) for n in range(Tout)]
    return QExpansion(out, f.weight)
