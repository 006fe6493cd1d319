"""Truncated q-series multiplication: compiled kernel against the pure-Python fallback.

Run with ``python3 benchmarks/bench_mul.py [--sizes 500,1000,2000,4000]``.
"""
import argparse
import random
import time

from defsieve import _pyconvolve, kernels
from defsieve.qseries import eisenstein


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="500,1000,2000,4000")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"backend selected at import: {kernels.BACKEND}")
    rng = random.Random(0)
    header = f"{'terms':>6}  {'input':<8} {'schoolbook':>11} {'mm/native':>11} {'mm/python':>11} {'auto':>9}"
    print(header)
    for n in sizes:
        inputs = {
            "E4*E6": (list(eisenstein(4, n).coeffs), list(eisenstein(6, n).coeffs)),
            "random": ([rng.getrandbits(80) for _ in range(n)], [rng.getrandbits(80) for _ in range(n)]),
        }
        for name, (a, b) in inputs.items():
            ref = kernels.mul_schoolbook(a, b, n)
            row = [_best(lambda: kernels.mul_schoolbook(a, b, n), args.repeat)]
            if kernels.BACKEND == "cython":
                assert kernels.mul_multimodular(a, b, n) == ref
                row.append(_best(lambda: kernels.mul_multimodular(a, b, n), args.repeat))
            else:
                row.append(None)
            if n <= 1000:
                assert kernels.mul_multimodular(a, b, n, conv=_pyconvolve.conv_mod) == ref
                row.append(_best(lambda: kernels.mul_multimodular(a, b, n, conv=_pyconvolve.conv_mod), 1))
            else:
                row.append(None)  # quadratic per modulus in Python; too slow to be worth timing
            row.append(_best(lambda: kernels.mul_trunc(a, b, n), args.repeat))
            cells = ["-" if t is None else f"{t * 1000:.1f}ms" for t in row]
            print(f"{n:>6}  {name:<8} {cells[0]:>11} {cells[1]:>11} {cells[2]:>11} {cells[3]:>9}")


if __name__ == "__main__":
    main()
