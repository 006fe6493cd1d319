"""Exact integer arithmetic: primes, Bernoulli numbers, factorization.

Everything here is exact. Rationals are :class:`fractions.Fraction`, which
already keeps numerator and (positive) denominator coprime.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt

from .errors import BudgetExceeded, PrimalityUnknown

__all__ = [
    "Factorization",
    "bernoulli",
    "factor",
    "is_prime",
    "prime_factors",
    "primes_upto",
    "sigma_r",
    "sigma_table",
    "trial_factor",
    "TRIAL_BOUND",
    "MR_LIMIT",
]

TRIAL_BOUND = 10**6
# Deterministic for n below this with the first 13 primes as witnesses.
MR_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
DEFAULT_EFFORT = 2_000_000


def primes_upto(B: int) -> list[int]:
    """All primes ``p <= B`` in ascending order (sieve of Eratosthenes)."""
    if B < 2:
        return []
    sieve = bytearray([1]) * (B + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(B) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, B + 1, i)))
    return [i for i in range(B + 1) if sieve[i]]


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(primes_upto(TRIAL_BOUND))


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    """One Miller-Rabin round; False means ``a`` witnesses compositeness."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _mr_passes(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_mr_round(n, d, s, a) for a in _MR_WITNESSES if a % n)


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Exact for ``0 <= n < MR_LIMIT``; raises :class:`PrimalityUnknown` above
    that bound instead of guessing.
    """
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 43 * 43:
        return True
    if n >= MR_LIMIT:
        raise PrimalityUnknown(f"{n} exceeds the deterministic primality range")
    return _mr_passes(n)


@dataclass(frozen=True)
class Factorization:
    """``value = sign * prod(p**e for p, e in factors)`` with primes increasing."""

    value: int
    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value == 0:
            raise ValueError("cannot factor zero")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        ps = [p for p, _ in self.factors]
        if ps != sorted(set(ps)):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be positive")
        if self.recompose() != self.value:
            raise ValueError("factorization does not multiply back to value")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def recompose(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def __str__(self):
        if not self.factors:
            return str(self.sign)
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return f"-{body}" if self.sign < 0 else body


def _brent(n: int, c: int, budget: int) -> tuple[int | None, int]:
    """Pollard rho (Brent's cycle detection) with ``f(x) = x^2 + c``, ``x0 = 2``.

    Returns ``(divisor or None, iterations used)``. A returned divisor may be
    ``n`` itself when the seed degenerates.
    """
    y, r, q, g = 2, 1, 1, 1
    m = 128
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            used += min(m, r - k)
            g = gcd(q, n)
            k += m
        r *= 2
        if used > budget and g == 1:
            return None, used
    if g == n:
        # batch overshot; back off one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g, used


def _split(n: int, effort: int) -> int:
    """A nontrivial divisor of the composite ``n``.

    Seeds are tried in the fixed order ``c = 1, 2, 3, ...`` so results are
    reproducible.
    """
    remaining = effort
    c = 1
    while remaining > 0:
        d, used = _brent(n, c, remaining)
        remaining -= used
        if d is not None and 1 < d < n:
            return d
        c += 1
    raise BudgetExceeded(n, effort)


def _is_prime_cofactor(n: int) -> bool:
    """Primality of a cofactor free of primes below the trial bound."""
    if n < TRIAL_BOUND * TRIAL_BOUND:
        return True
    if n < MR_LIMIT:
        return _mr_passes(n)
    if not _mr_passes(n):
        return False
    raise PrimalityUnknown(f"cofactor {n} is probably prime but cannot be proven so")


def trial_factor(n: int, bound: int = TRIAL_BOUND) -> tuple[dict[int, int], int]:
    """Strip primes up to ``bound`` from ``|n|``; returns ``(exponents, cofactor)``.

    The cofactor has no prime factor ``<= bound`` (it is 1 or a prime when
    below ``bound**2``).
    """
    m = abs(n)
    exps: dict[int, int] = {}
    for p in _trial_primes():
        if p > bound or p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            exps[p] = e
    if 1 < m <= bound or (1 < m and m < min(bound, TRIAL_BOUND) ** 2):
        exps[m] = exps.get(m, 0) + 1
        m = 1
    return exps, m


def factor(n: int, effort: int = DEFAULT_EFFORT) -> Factorization:
    """Complete factorization of a nonzero integer.

    Trial division by all primes up to ``TRIAL_BOUND``, then Pollard rho on
    what is left. ``effort`` caps the rho iterations spent on each
    composite cofactor; :class:`BudgetExceeded` is raised when it runs out.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    sign = -1 if n < 0 else 1
    exps, m = trial_factor(n)
    if m > 1:
        stack = [m]
        while stack:
            c = stack.pop()
            if _is_prime_cofactor(c):
                exps[c] = exps.get(c, 0) + 1
                continue
            d = _split(c, effort)
            stack.extend((d, c // d))
    return Factorization(n, sign, tuple(sorted(exps.items())))


def prime_factors(n: int, effort: int = DEFAULT_EFFORT) -> tuple[int, ...]:
    return factor(n, effort).primes


@lru_cache(maxsize=None)
def _bernoulli_upto(m: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for n in range(1, m + 1):
        s = sum(comb(n + 1, j) * B[j] for j in range(n))
        B.append(-s / (n + 1))
    return tuple(B)


def bernoulli(m: int) -> Fraction:
    """Bernoulli number ``B_m`` with the convention ``B_1 = -1/2``.

    Computed from ``sum_{j=0}^{m} C(m+1, j) B_j = 0``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    return _bernoulli_upto(m)[m]


def sigma_r(n: int, r: int) -> int:
    """Sum of ``d**r`` over the positive divisors ``d`` of ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            e = n // d
            total += d**r
            if e != d:
                total += e**r
    return total


def sigma_table(T: int, r: int) -> list[int]:
    """``[0, sigma_r(1), ..., sigma_r(T-1)]`` by a divisor sieve."""
    out = [0] * T
    for d in range(1, T):
        dr = d**r
        for m in range(d, T, d):
            out[m] += dr
    return out
