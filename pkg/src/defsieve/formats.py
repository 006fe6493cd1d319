"""On-disk formats: q-expansion cache, eigenvalue CSV, classification reports.

Cache file::

    QEXP v1 k=12 N=1 terms=5
    0
    1
    -24
    252
    -1472

Eigenvalue file (``#`` header lines, then ``p,a_p`` rows, optionally a third
column with the character value at ``p``)::

    # k=2
    # N=11
    # bound=100
    # character=trivial
    # local_types=11:special
    2,-2
    3,-1
"""
from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import replace
from pathlib import Path

from . import __version__
from .arith import is_prime, primes_upto
from .errors import MissingPrime, NonPrimeIndex, ParseError
from .galois import ramanujan_validate
from .newform import LOCAL_TYPES, NewformData
from .qseries import LEVEL_ONE_WEIGHTS, QExpansion, level1_cuspform
from .sieve import Classification, Status

CACHE_ENV = "DEFSIEVE_CACHE_DIR"
DEFAULT_CACHE_DIR = ".qcache"

_HEADER = re.compile(r"^QEXP v1 k=(\d+) N=(\d+) terms=(\d+)$")


def atomic_write(path, data: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_qexp(f: QExpansion, k: int, level: int = 1) -> str:
    lines = [f"QEXP v1 k={k} N={level} terms={f.precision}"]
    lines.extend(str(c) for c in f.coeffs)
    return "\n".join(lines) + "\n"


def write_qexp(path, f: QExpansion, k: int, level: int = 1):
    atomic_write(path, dump_qexp(f, k, level))


def read_qexp(path) -> QExpansion:
    text = Path(path).read_text(encoding="utf-8").splitlines()
    if not text:
        raise ParseError("empty cache file", 1)
    m = _HEADER.match(text[0].strip())
    if not m:
        raise ParseError(f"bad header {text[0]!r}", 1)
    k, _, T = map(int, m.groups())
    body = text[1:]
    if len(body) != T:
        raise ParseError(f"header announces {T} terms, file has {len(body)}", len(text))
    coeffs = []
    for i, line in enumerate(body, start=2):
        try:
            coeffs.append(int(line.strip()))
        except ValueError:
            raise ParseError(f"not an integer: {line!r}", i) from None
    return QExpansion(coeffs, k)


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE_DIR))


def cached_cuspform(k: int, T: int, directory=None) -> QExpansion:
    """``level1_cuspform(k, T)``, read from or written to the cache directory."""
    if k not in LEVEL_ONE_WEIGHTS:
        return level1_cuspform(k, T)  # raises UnsupportedWeight
    d = Path(directory) if directory is not None else cache_dir()
    path = d / f"level1_k{k}.qexp"
    if path.exists():
        try:
            f = read_qexp(path)
            if f.precision >= T:
                return f.truncate(T)
        except ParseError:
            pass  # recompute and overwrite a corrupt cache entry
    f = level1_cuspform(k, T)
    try:
        write_qexp(path, f, k)
    except OSError:
        pass
    return f


def _parse_local_types(value, line):
    out = {}
    for item in filter(None, (x.strip() for x in value.split(","))):
        try:
            p, t = item.split(":")
            p = int(p)
        except ValueError:
            raise ParseError(f"bad local type entry {item!r}", line) from None
        if t not in LOCAL_TYPES:
            raise ParseError(f"unknown local type {t!r}", line)
        out[p] = t
    return out


def _parse_character(value, line):
    value = value.strip()
    if value == "trivial":
        return value
    m = re.fullmatch(r"kronecker:(-?\d+)", value)
    if m:
        return f"kronecker:{int(m.group(1))}"
    raise ParseError(f"unknown character spec {value!r}", line)


def parse_eigenvalues(text: str, label: str = "") -> NewformData:
    """Parse an eigenvalue file into :class:`NewformData` (source ``ingested``)."""
    header: dict[str, str] = {}
    rows: list[tuple[int, int, int | None, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" not in body:
                continue  # free comment
            key, value = (s.strip() for s in body.split("=", 1))
            header[key] = value
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) not in (2, 3):
            raise ParseError(f"expected 'p,a_p' or 'p,a_p,omega', got {len(cells)} fields", lineno)
        vals = []
        col = 1
        for c, field in zip(cells, raw.split(",")):
            try:
                vals.append(int(c))
            except ValueError:
                raise ParseError(f"not an integer: {c!r}", lineno, col + len(field) - len(field.lstrip())) from None
            col += len(field) + 1
        p, ap = vals[0], vals[1]
        w = vals[2] if len(vals) == 3 else None
        if w is not None and w not in (-1, 0, 1):
            raise ParseError("character value must be -1, 0 or 1", lineno, raw.rfind(cells[2]) + 1)
        rows.append((p, ap, w, lineno))

    for key in ("k", "N", "bound"):
        if key not in header:
            raise ParseError(f"missing header line '# {key}=...'", 1)
    try:
        k, N, bound = int(header["k"]), int(header["N"]), int(header["bound"])
    except ValueError as exc:
        raise ParseError(f"non-integer header value: {exc}", 1) from None
    character = _parse_character(header.get("character", "trivial"), 1)
    local_types = _parse_local_types(header.get("local_types", ""), 1)

    ev: dict[int, int] = {}
    chi: dict[int, int] = {}
    last = 0
    for p, ap, w, lineno in rows:
        if p < 2 or not is_prime(p):
            raise NonPrimeIndex(p, lineno)
        if p <= last:
            raise ParseError(f"primes must be strictly ascending ({p} after {last})", lineno)
        if p > bound:
            raise ParseError(f"prime {p} beyond the declared bound {bound}", lineno)
        last = p
        ev[p] = ap
        if w is not None:
            chi[p] = w
    for p in primes_upto(bound):
        if p not in ev:
            raise MissingPrime(p)

    try:
        data = NewformData(
            weight=k,
            level=N,
            eigenvalues=ev,
            bound=bound,
            source="ingested",
            label=header.get("label", label),
            character=character,
            character_values=chi,
            local_types=local_types,
        )
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None
    # suspect data is kept, with the violations attached
    return replace(data, ramanujan_violations=ramanujan_validate(data, bound).violations)


def ingest_newform(path) -> NewformData:
    path = Path(path)
    return parse_eigenvalues(path.read_text(encoding="utf-8"), label=path.stem)


def dump_eigenvalues(data: NewformData) -> str:
    lines = [f"# k={data.weight}", f"# N={data.level}", f"# bound={data.bound}", f"# character={data.character}"]
    if data.local_types:
        lines.append("# local_types=" + ",".join(f"{p}:{t}" for p, t in sorted(data.local_types.items())))
    for p in primes_upto(data.bound):
        lines.append(f"{p},{data.a(p)}")
    return "\n".join(lines) + "\n"


def report_document(c: Classification, timing: dict | None = None) -> dict:
    meta = {
        "form": c.form_id,
        "source": c.source,
        "weight": c.weight,
        "level": c.level,
        "set": list(c.ramified_set),
        "range": [c.lmin, c.lmax],
        "version": __version__,
        "eigenvalue_bound": c.eigenvalue_bound,
        "notes": list(c.notes),
    }
    if c.ramanujan is not None:
        meta["ramanujan_violations"] = [list(v) for v in c.ramanujan.violations]
    if timing is not None:
        meta["timing"] = timing
    return {
        "metadata": meta,
        "entries": [e.to_dict() for e in c.entries],
        "discrepancies": [dict(d) for d in c.discrepancies],
    }


_ABBREV = {
    Status.CERTIFIED_UNOBSTRUCTED: "CERT",
    Status.SCREEN_PASS: "PASS",
    Status.SCREEN_FAIL: "FAIL",
    Status.NOT_ABS_IRREDUCIBLE: "NAI",
    Status.EXCLUDED_SMALL: "SMALL",
    Status.INDETERMINATE_LOCAL_TYPE: "INDET",
}


def _mark(e) -> str:
    if e.status == Status.CERTIFIED_UNOBSTRUCTED:
        return "✓"
    if e.status == Status.SCREEN_FAIL:
        ps = sorted({r.p for r in e.reasons if r.p is not None})
        return "✗ @" + ",".join(map(str, ps))
    return ""


def _reason_text(r) -> str:
    bits = [r.criterion]
    if r.p is not None:
        bits.append(f"p={r.p}")
    if r.divisor is not None:
        bits.append(f"divisor={r.divisor}")
    return " ".join(bits)


def emit_report(c: Classification, fmt: str = "json", timing: dict | None = None) -> bytes:
    """Serialize a classification; JSON output is canonical (sorted keys, fixed layout)."""
    doc = report_document(c, timing)
    if fmt == "json":
        return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    m = doc["metadata"]
    out = [
        f"form {m['form']}  k={m['weight']}  N={m['level']}  S={{{','.join(map(str, m['set']))}}}"
        f"  range=[{c.lmin},{c.lmax}]  bound={m['eigenvalue_bound']}  version {m['version']}",
    ]
    out.extend(f"note: {n}" for n in c.notes)
    if c.entries:
        w = max(len(str(e.ell)) for e in c.entries)
        for e in c.entries:
            why = "; ".join(_reason_text(r) for r in e.reasons)
            out.append(f"{e.ell:>{w}}  {_ABBREV[e.status]:<5}  {_mark(e):<8}  {why}".rstrip())
    if c.discrepancies:
        out.append("discrepancies (table vs detector):")
        for d in c.discrepancies:
            out.append(f"  {d['kind']}: ell={d['ell']}")
    return ("\n".join(out) + "\n").encode("utf-8")
