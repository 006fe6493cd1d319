"""Local obstruction screens and the per-prime classification.

For a newform ``f`` of weight ``k`` and a finite set ``S`` of auxiliary
primes, :func:`classify` decides for every prime ``ell`` in a range whether
the mod-ell deformation problem is certified unobstructed, passes every
effective screen, or fails one (and which one, at which ``p``).

Screens implemented:

* unramified primes ``p`` not dividing ``N ell``: the local invariant can be
  nonzero only if ``ell`` divides ``(p - 1)`` or the screen integer
  ``a_p^2 - p^(k-2) (p+1)^2 omega(p)``;
* special primes ``p | N``: only primes dividing ``2p(p^2 - 1)`` are
  effective candidates;
* the place ``ell`` itself: automatic for ``k > 2`` and ``ell > 2k``; for
  ``k = 2`` it fails exactly when ``a_ell^2 = omega(ell) (mod ell)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .arith import Factorization, factor, is_prime, prime_factors, primes_upto, trial_factor
from .errors import BudgetExceeded, DegenerateScreen, DetectionUnstable, InsufficientData, NotApplicable, PrimalityUnknown
from .galois import (
    IRREDUCIBILITY_TABLE,
    MIN_DETECTION_BOUND,
    RamanujanReport,
    ramanujan_validate,
    reducible_prime_set,
    table_discrepancies,
)
from .newform import NewformData, builtin_newform  # noqa: F401  (re-exported)


class Status(str, enum.Enum):
    CERTIFIED_UNOBSTRUCTED = "CERTIFIED_UNOBSTRUCTED"
    SCREEN_PASS = "SCREEN_PASS"
    SCREEN_FAIL = "SCREEN_FAIL"
    NOT_ABS_IRREDUCIBLE = "NOT_ABS_IRREDUCIBLE"
    EXCLUDED_SMALL = "EXCLUDED_SMALL"
    INDETERMINATE_LOCAL_TYPE = "INDETERMINATE_LOCAL_TYPE"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Reason:
    """Why an entry got its status: which criterion, at which ``p``, with which divisor."""

    criterion: str
    p: int | None = None
    divisor: int | None = None

    def to_dict(self):
        return {"criterion": self.criterion, "p": self.p, "divisor": self.divisor}


@dataclass(frozen=True)
class LocalScreenReport:
    """Unramified screen at ``p``.

    ``factorization`` is ``None`` when the screen integer could not be fully
    factored; then ``residual`` holds the unfactored cofactor and
    :meth:`flags` tests divisibility of it directly.
    """

    p: int
    a_p: int
    screen_integer: int
    factorization: Factorization | None
    eps_candidates: tuple[int, ...]
    candidates: tuple[int, ...]
    residual: int = 1

    @property
    def complete(self) -> bool:
        return self.factorization is not None

    def flags(self, ell: int) -> list[Reason]:
        out = []
        if self.screen_integer % ell == 0:
            out.append(Reason("unramified_screen", self.p, ell))
        if (self.p - 1) % ell == 0:
            out.append(Reason("unramified_screen_eps", self.p, ell))
        return out

    def to_dict(self):
        return {
            "p": self.p,
            "a_p": self.a_p,
            "screen_integer": self.screen_integer,
            "factorization": [list(pe) for pe in self.factorization.factors] if self.factorization else None,
            "residual": self.residual,
            "eps_candidates": list(self.eps_candidates),
            "candidates": list(self.candidates),
        }


@dataclass(frozen=True)
class SpecialReport:
    p: int
    effective_candidates: tuple[int, ...]
    residual_note: bool = True

    def to_dict(self):
        return {"p": self.p, "effective_candidates": list(self.effective_candidates), "residual_note": self.residual_note}


def screen_integer(data: NewformData, p: int) -> int:
    k = data.weight
    ap = data.a(p)
    return ap * ap - p ** (k - 2) * (p + 1) ** 2 * data.omega(p)


def local_screen_unramified(data: NewformData, p: int) -> LocalScreenReport:
    """Screen report at a prime ``p`` not dividing the level."""
    if data.level % p == 0:
        raise NotApplicable(f"p={p} divides the level {data.level}")
    d = screen_integer(data, p)
    if d == 0:
        raise DegenerateScreen(p)
    eps = prime_factors(p - 1) if p > 2 else ()
    try:
        fac = factor(d)
        residual = 1
        ds = fac.primes
    except (BudgetExceeded, PrimalityUnknown):
        exps, residual = trial_factor(d)
        fac = None
        ds = tuple(sorted(exps))
    return LocalScreenReport(
        p=p,
        a_p=data.a(p),
        screen_integer=d,
        factorization=fac,
        eps_candidates=tuple(eps),
        candidates=tuple(sorted(set(eps) | set(ds))),
        residual=residual,
    )


def ell_screen(data: NewformData, ell: int) -> str:
    """``"pass"``, ``"fail"`` or ``"small"`` for the screen at the place ``ell``."""
    if data.level % ell == 0:
        raise NotApplicable(f"ell={ell} divides the level {data.level}")
    k = data.weight
    if ell <= 2 * k:
        return "small"
    if k > 2:
        return "pass"
    a = data.a(ell)
    return "fail" if (a * a - data.omega(ell)) % ell == 0 else "pass"


def special_screen(data: NewformData, p: int) -> SpecialReport:
    if data.level % p:
        raise NotApplicable(f"p={p} does not divide the level {data.level}")
    if data.local_type(p) != "special":
        raise NotApplicable(f"local type at {p} is {data.local_type(p)}, not special")
    return SpecialReport(p, prime_factors(2 * p * (p * p - 1)))


@dataclass(frozen=True)
class Entry:
    ell: int
    status: Status
    reasons: tuple[Reason, ...]

    def to_dict(self):
        return {"ell": self.ell, "status": self.status.value, "reasons": [r.to_dict() for r in self.reasons]}


@dataclass(frozen=True)
class Classification:
    form_id: str
    weight: int
    level: int
    source: str
    ramified_set: tuple[int, ...]
    lmin: int
    lmax: int
    entries: tuple[Entry, ...]
    eigenvalue_bound: int
    discrepancies: tuple[dict, ...] = ()
    notes: tuple[str, ...] = ()
    screens: tuple = field(default=(), compare=False)
    ramanujan: RamanujanReport | None = None

    def status(self, ell: int) -> Status:
        for e in self.entries:
            if e.ell == ell:
                return e.status
        raise KeyError(ell)

    def entry(self, ell: int) -> Entry:
        for e in self.entries:
            if e.ell == ell:
                return e
        raise KeyError(ell)

    def primes_with(self, status: Status) -> list[int]:
        return [e.ell for e in self.entries if e.status == status]


@dataclass(frozen=True)
class _Indeterminate:
    p: int
    local_type: str


@dataclass(frozen=True)
class _Degenerate:
    p: int


def _local_screens(data: NewformData, S):
    out = []
    for p in sorted(set(S) | set(data.bad_primes)):
        if data.level % p == 0:
            t = data.local_type(p)
            out.append(special_screen(data, p) if t == "special" else _Indeterminate(p, t))
        else:
            try:
                out.append(local_screen_unramified(data, p))
            except DegenerateScreen:
                out.append(_Degenerate(p))
    return out


def _detector(data: NewformData, detector_bound):
    """Detected reducible primes (or None) plus discrepancy and note lists."""
    notes = []
    P = detector_bound if detector_bound is not None else min(data.bound, 2000)
    if P < MIN_DETECTION_BOUND or data.bound < P:
        notes.append(f"reducibility detector skipped: eigenvalue bound {data.bound} below {max(P, MIN_DETECTION_BOUND)}")
        return None, [], notes
    try:
        detected = reducible_prime_set(data, P)
    except DetectionUnstable as exc:
        notes.append(f"reducibility detector unstable: {exc}")
        return None, [], notes
    disc = []
    if data.source == "builtin":
        disc = [dict(d, bound=P) for d in table_discrepancies(data.weight, detected)]
    else:
        notes.append(f"irreducibility for ingested data is advisory (detector bound {P})")
    return detected, disc, notes


def classify(data: NewformData, S=(), lmin: int = 2, lmax: int = 1000, detector_bound=None) -> Classification:
    """Status of every prime ``ell`` in ``[lmin, lmax]``.

    Priority: absolute irreducibility (table for builtin forms, detector
    otherwise); ``ell = 2`` and ``ell <= k + 1``; local screens at ``S`` and the
    primes dividing the level; the screen at ``ell``. Builtin forms that
    pass are certified; ingested forms at best pass the screens.
    """
    S = tuple(sorted(set(S)))
    for p in S:
        if not is_prime(p):
            raise ValueError(f"{p} in S is not prime")
    k = data.weight
    builtin = data.source == "builtin"
    screens = _local_screens(data, S)
    detected, discrepancies, notes = (None, [], [])
    if lmax >= lmin:
        detected, discrepancies, notes = _detector(data, detector_bound)
    ramanujan = None
    if any(isinstance(s, _Degenerate) for s in screens):
        ramanujan = ramanujan_validate(data, data.bound)
        notes.append("screen integer vanished at " + ",".join(str(s.p) for s in screens if isinstance(s, _Degenerate)))
    if builtin and S and lmax > k + 1 and lmin <= 2 * k:
        notes.append("certification for k+1 < ell < 2k with nonempty S assumes the small-prime criterion is independent of S")
    if any(isinstance(s, SpecialReport) for s in screens):
        notes.append("special primes may leave a finite non-effective set of obstructed ell that is not computed")

    entries = []
    for ell in primes_upto(lmax):
        if ell < lmin:
            continue
        entries.append(_classify_one(data, ell, S, screens, detected, builtin))
    return Classification(
        form_id=data.form_id,
        weight=k,
        level=data.level,
        source=data.source,
        ramified_set=S,
        lmin=lmin,
        lmax=lmax,
        entries=tuple(entries),
        eigenvalue_bound=data.bound,
        discrepancies=tuple(discrepancies),
        notes=tuple(notes),
        screens=tuple(s for s in screens if isinstance(s, (LocalScreenReport, SpecialReport))),
        ramanujan=ramanujan,
    )


def _classify_one(data, ell, S, screens, detected, builtin) -> Entry:
    k = data.weight
    extra = (Reason("odd_characteristic"),) if ell == 2 else ()
    if builtin and ell in IRREDUCIBILITY_TABLE[k]:
        return Entry(ell, Status.NOT_ABS_IRREDUCIBLE, (Reason("irreducibility_table", None, ell),) + extra)
    if not builtin and detected is not None and ell in detected:
        return Entry(ell, Status.NOT_ABS_IRREDUCIBLE, (Reason("reducibility_detector", None, ell),) + extra)
    if ell == 2:
        return Entry(ell, Status.EXCLUDED_SMALL, extra)
    if ell <= k + 1:
        return Entry(ell, Status.EXCLUDED_SMALL, (Reason("size_bound", None, ell),))

    fails: list[Reason] = []
    pending: list[Reason] = []
    for s in screens:
        if isinstance(s, _Degenerate):
            fails.append(Reason("degenerate_screen", s.p, None))
        elif isinstance(s, _Indeterminate):
            pending.append(Reason(f"local_type_{s.local_type}", s.p, None))
        elif isinstance(s, SpecialReport):
            if ell in s.effective_candidates:
                fails.append(Reason("special_screen", s.p, ell))
        elif s.p != ell:
            # the unramified screen needs p prime to ell; the ell-screen covers p = ell
            fails.extend(s.flags(ell))

    small = False
    if data.level % ell == 0:
        if not any(r.p == ell for r in fails + pending):
            pending.append(Reason("ell_divides_level", ell, None))
    else:
        r = ell_screen(data, ell)
        if r == "fail":
            fails.append(Reason("ell_screen", ell, ell))
        small = r == "small"

    if fails:
        return Entry(ell, Status.SCREEN_FAIL, tuple(fails))
    if pending:
        return Entry(ell, Status.INDETERMINATE_LOCAL_TYPE, tuple(pending))
    if not builtin:
        return Entry(ell, Status.SCREEN_PASS, (Reason("screens_passed"),))
    basis = [Reason("small_prime_criterion" if small else "level_one_theorem")]
    if S:
        basis.append(Reason("unramified_screens_passed"))
        if small:
            basis.append(Reason("assumes_small_prime_criterion_independent_of_S"))
    return Entry(ell, Status.CERTIFIED_UNOBSTRUCTED, tuple(basis))


__all__ = [
    "Classification",
    "Entry",
    "InsufficientData",
    "LocalScreenReport",
    "NewformData",
    "Reason",
    "SpecialReport",
    "Status",
    "builtin_newform",
    "classify",
    "ell_screen",
    "local_screen_unramified",
    "screen_integer",
    "special_screen",
]
