"""Exact truncated multiplication of integer coefficient lists.

Two strategies, bit-exact with one another:

``schoolbook``
    Direct convolution over Python integers. The reference every other
    strategy is tested against.
``multimodular``
    Convolution modulo several primes below ``2**31`` followed by Chinese
    remaindering. The residue convolution runs in the compiled extension
    ``defsieve._convolve`` when it is importable.
:func:`mul_trunc` uses multimodular when the compiled kernel loaded and
schoolbook otherwise (the pure-Python residue loop is slower than
schoolbook on big integers). Set ``DEFSIEVE_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
from __future__ import annotations

import os
from functools import lru_cache

from . import _pyconvolve
from .arith import is_prime

try:
    if os.environ.get("DEFSIEVE_PURE_PYTHON"):
        raise ImportError("pure Python forced by environment")
    from . import _convolve as _native
except ImportError:
    _native = None

BACKEND = "cython" if _native is not None else "python"
conv_mod = _native.conv_mod if _native is not None else _pyconvolve.conv_mod

# Below this many nonzero entries in one operand a sparse loop wins.
SPARSE_LIMIT = 96


def mul_schoolbook(a, b, n):
    """First ``n`` coefficients of ``a * b`` by direct convolution."""
    la, lb = min(len(a), n), min(len(b), n)
    out = [0] * n
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(lb, n - i)):
            out[i + j] += ai * b[j]
    return out


@lru_cache(maxsize=1)
def _moduli() -> tuple[int, ...]:
    ps = []
    m = (1 << 31) - 1
    while len(ps) < 256:
        if is_prime(m):
            ps.append(m)
        m -= 2
    return tuple(ps)


@lru_cache(maxsize=None)
def _crt_weights(r: int) -> tuple[int, tuple[int, ...]]:
    ps = _moduli()[:r]
    M = 1
    for p in ps:
        M *= p
    weights = []
    for p in ps:
        Mi = M // p
        weights.append(Mi * pow(Mi, -1, p) % M)
    return M, tuple(weights)


def mul_multimodular(a, b, n, conv=None):
    """First ``n`` coefficients of ``a * b`` via residues and CRT.

    ``conv`` overrides the residue convolution (used by the benchmark to
    time the pure-Python kernel on the same path).
    """
    conv = conv or conv_mod
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if ma == 0 or mb == 0:
        return [0] * n
    bound = 2 * ma * mb * min(len(a), len(b)) + 1
    r = 1
    M, weights = _crt_weights(r)
    while M <= bound:
        r += 1
        M, weights = _crt_weights(r)
    ps = _moduli()[:r]
    residues = [conv([x % p for x in a], [x % p for x in b], n, p) for p in ps]
    half = M // 2
    out = []
    for i in range(n):
        c = sum(w * res[i] for w, res in zip(weights, residues)) % M
        out.append(c - M if c > half else c)
    return out


def _nonzeros(a):
    return sum(1 for x in a if x)


def mul_trunc(a, b, n):
    """First ``n`` coefficients of the product of coefficient lists ``a`` and ``b``."""
    if n <= 0:
        return []
    na, nb = _nonzeros(a[:n]), _nonzeros(b[:n])
    if na == 0 or nb == 0:
        return [0] * n
    if _native is not None and min(na, nb) > SPARSE_LIMIT:
        return mul_multimodular(a, b, n)
    # schoolbook skips zeros of its first operand
    return mul_schoolbook(a, b, n) if na <= nb else mul_schoolbook(b, a, n)


STRATEGIES = {
    "schoolbook": mul_schoolbook,
    "multimodular": mul_multimodular,
    "auto": mul_trunc,
}
