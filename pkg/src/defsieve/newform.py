"""Eigenvalue data for a newform with integer Hecke eigenvalues."""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .arith import is_prime, prime_factors, primes_upto
from .errors import InsufficientData, UnsupportedWeight
from .qseries import LEVEL_ONE_WEIGHTS, level1_cuspform

LOCAL_TYPES = ("special", "principal_series", "supercuspidal", "unknown")
DEFAULT_BOUND = 2000


def kronecker_symbol(D: int, p: int) -> int:
    """Kronecker symbol ``(D/p)`` for a prime ``p``."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@dataclass(frozen=True, eq=False)
class NewformData:
    """Weight, level, character and the eigenvalues ``a_p`` for all primes ``p <= bound``.

    ``character`` is ``"trivial"`` or ``"kronecker:D"``; ``character_values``
    overrides individual primes.
    """

    weight: int
    level: int
    eigenvalues: Mapping[int, int]
    bound: int
    source: str = "builtin"
    label: str = ""
    character: str = "trivial"
    character_values: Mapping[int, int] = field(default_factory=dict)
    local_types: Mapping[int, str] = field(default_factory=dict)
    ramanujan_violations: tuple = ()

    def __post_init__(self):
        if self.weight < 2:
            raise ValueError("weight must be at least 2")
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.source not in ("builtin", "ingested"):
            raise ValueError(f"unknown source {self.source!r}")
        for p, t in self.local_types.items():
            if t not in LOCAL_TYPES:
                raise ValueError(f"unknown local type {t!r} at {p}")
            if self.level % p:
                raise ValueError(f"local type given at {p}, which does not divide the level")
        for p, w in self.character_values.items():
            if w not in (-1, 0, 1):
                raise ValueError(f"character value at {p} must be -1, 0 or 1")
        if self.character != "trivial" and not self.character.startswith("kronecker:"):
            raise ValueError(f"unknown character spec {self.character!r}")
        if self.source == "builtin" and (
            self.level != 1 or self.character != "trivial" or self.weight not in LEVEL_ONE_WEIGHTS
        ):
            raise ValueError("builtin forms have level 1, trivial character and a level-one weight")
        object.__setattr__(self, "eigenvalues", MappingProxyType(dict(self.eigenvalues)))
        object.__setattr__(self, "character_values", MappingProxyType(dict(self.character_values)))
        object.__setattr__(self, "local_types", MappingProxyType(dict(self.local_types)))

    @property
    def form_id(self) -> str:
        if self.label:
            return self.label
        return f"{self.source}:k{self.weight}N{self.level}"

    @property
    def bad_primes(self) -> tuple[int, ...]:
        return prime_factors(self.level) if self.level > 1 else ()

    def a(self, p: int) -> int:
        try:
            return self.eigenvalues[p]
        except KeyError:
            raise InsufficientData(f"no eigenvalue a_{p} (data bound {self.bound})", p) from None

    def omega(self, p: int) -> int:
        if p in self.character_values:
            return self.character_values[p]
        if self.character == "trivial":
            return 1
        D = int(self.character.split(":", 1)[1])
        return kronecker_symbol(D, p)

    def local_type(self, p: int) -> str:
        return self.local_types.get(p, "unknown")

    def primes(self, upto: int | None = None) -> list[int]:
        B = self.bound if upto is None else upto
        return primes_upto(B)


def builtin_newform(k: int, bound: int = DEFAULT_BOUND) -> NewformData:
    """Eigenvalue data of the level-one cusp form of weight ``k`` for primes up to ``bound``."""
    if k not in LEVEL_ONE_WEIGHTS:
        raise UnsupportedWeight(k, LEVEL_ONE_WEIGHTS)
    f = level1_cuspform(k, bound + 1)
    return from_qexpansion(f, k, bound)


def from_qexpansion(f, k: int, bound: int) -> NewformData:
    ev = {p: f[p] for p in primes_upto(bound)}
    return NewformData(weight=k, level=1, eigenvalues=ev, bound=bound, source="builtin", label=f"level1_k{k}")


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p
