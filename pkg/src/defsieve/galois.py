"""Reducibility of the mod-ell representations attached to level-one forms.

A reducible semisimplification at level one is a sum of two powers of the
mod-ell cyclotomic character, which shows up in the eigenvalues as an
Eisenstein congruence ``a_p = p^a + p^(k-1-a) (mod ell)``. The detector
searches for such congruences; the table of known exceptional primes is
shipped alongside it as ground truth.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import factor, primes_upto
from .errors import DetectionUnstable, InsufficientData, UnsupportedWeight
from .newform import NewformData

IRREDUCIBILITY_TABLE: dict[int, frozenset[int]] = {
    12: frozenset({2, 3, 5, 7, 691}),
    16: frozenset({2, 3, 5, 7, 11, 3617}),
    18: frozenset({2, 3, 5, 7, 11, 13, 43867}),
    20: frozenset({2, 3, 5, 7, 11, 13, 283, 617}),
    22: frozenset({2, 3, 5, 7, 13, 17, 131, 593}),
    26: frozenset({2, 3, 5, 7, 11, 17, 19, 657931}),
}

STABLE_RUN = 20
MIN_DETECTION_BOUND = 200


def _second_exponent(k: int, a: int, ell: int) -> int:
    b = (k - 1 - a) % (ell - 1)
    return b if b else ell - 1


@dataclass(frozen=True, order=True)
class ReducibilityCertificate:
    """Witness that ``a_p = p^a + p^b (mod ell)`` for every tested prime ``p <= tested_bound``."""

    ell: int
    exponent_a: int
    tested_bound: int
    weight: int

    @property
    def exponent_b(self) -> int:
        return _second_exponent(self.weight, self.exponent_a, self.ell)

    def verify(self, data: NewformData, bound: int | None = None) -> bool:
        P = self.tested_bound if bound is None else bound
        return congruence_holds(data, self.ell, self.exponent_a, P)

    def to_dict(self):
        return {"ell": self.ell, "a": self.exponent_a, "b": self.exponent_b, "bound": self.tested_bound}


def congruence_holds(data: NewformData, ell: int, a: int, P: int) -> bool:
    """True iff ``a_p = p^a + p^b (mod ell)`` for all primes ``p <= P`` with ``p != ell``, ``p`` prime to the level.

    ``b`` is ``k-1-a`` reduced mod ``ell-1`` into ``[1, ell-1]``.
    """
    if not 0 <= a <= max(ell - 2, 0):
        raise ValueError(f"exponent {a} outside [0, {ell - 2}]")
    b = _second_exponent(data.weight, a, ell)
    N = data.level
    for p in primes_upto(P):
        if p == ell or N % p == 0:
            continue
        if (data.a(p) - pow(p, a, ell) - pow(p, b, ell)) % ell:
            return False
    return True


def _require(data: NewformData, P: int):
    if data.bound < P:
        raise InsufficientData(f"eigenvalues known only up to {data.bound}, detection needs {P}")


def eisenstein_gcds(data: NewformData, P: int) -> dict[int, int]:
    """``g_a = gcd(a_p - p^a - p^(k-1-a))`` over primes ``k < p <= P`` prime to the level, for ``a`` in ``[0, k-2]``.

    Raises :class:`DetectionUnstable` unless every ``g_a`` stayed unchanged
    over the last ``STABLE_RUN`` primes.
    """
    _require(data, P)
    k = data.weight
    ps = [p for p in primes_upto(P) if p > k and data.level % p]
    out = {}
    for a in range(k - 1):
        g = 0
        since_change = 0
        for p in ps:
            h = gcd(g, data.a(p) - p**a - p ** (k - 1 - a))
            if h != g:
                g = h
                since_change = 0
            else:
                since_change += 1
        if g == 0 or since_change < STABLE_RUN:
            raise DetectionUnstable(
                f"gcd for exponent {a} did not stabilize by P={P} (value {g}, stable for {since_change} primes)"
            )
        out[a] = g
    return out


def reducible_primes(data: NewformData, P: int) -> tuple[ReducibilityCertificate, ...]:
    """Certificates for every prime ``ell`` at which an Eisenstein congruence holds up to ``P``.

    Small primes ``ell <= 2k+2`` are scanned exhaustively over all exponents;
    larger candidates come from the prime factors of the gcds above. One
    certificate per ``ell`` (smallest exponent), sorted by ``ell``.
    """
    if P < MIN_DETECTION_BOUND:
        raise ValueError(f"detection bound must be at least {MIN_DETECTION_BOUND}")
    _require(data, P)
    k = data.weight
    small_limit = 2 * k + 2
    pairs = [(ell, a) for ell in primes_upto(small_limit) for a in range(max(ell - 1, 1))]
    for a, g in eisenstein_gcds(data, P).items():
        for ell in factor(g).primes:
            if ell > small_limit:
                pairs.append((ell, a % (ell - 1)))
    found: dict[int, ReducibilityCertificate] = {}
    for ell, a in sorted(set(pairs)):
        if ell in found:
            continue
        if congruence_holds(data, ell, a, P):
            found[ell] = ReducibilityCertificate(ell, a, P, k)
    return tuple(found[ell] for ell in sorted(found))


def reducible_prime_set(data: NewformData, P: int) -> frozenset[int]:
    return frozenset(c.ell for c in reducible_primes(data, P))


def is_abs_irreducible(k: int, ell: int) -> bool:
    if k not in IRREDUCIBILITY_TABLE:
        raise UnsupportedWeight(k, IRREDUCIBILITY_TABLE)
    return ell not in IRREDUCIBILITY_TABLE[k]


def table_discrepancies(k: int, detected) -> list[dict]:
    """Differences between the shipped table row and a detected prime set."""
    row = IRREDUCIBILITY_TABLE[k]
    detected = set(detected)
    out = [{"kind": "table_only", "ell": ell} for ell in sorted(row - detected)]
    out += [{"kind": "detector_only", "ell": ell} for ell in sorted(detected - row)]
    return out


@dataclass(frozen=True)
class RamanujanReport:
    bound: int
    weight: int
    violations: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def ramanujan_validate(data: NewformData, P: int) -> RamanujanReport:
    """Every prime ``p <= P`` with ``a_p^2 > 4 p^(k-1)``; an empty report means the data passed."""
    k = data.weight
    bad = []
    for p in primes_upto(P):
        ap = data.a(p)
        if ap * ap > 4 * p ** (k - 1):
            bad.append((p, ap))
    return RamanujanReport(P, k, tuple(bad))
