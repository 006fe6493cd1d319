"""Pure-Python kernels, used when the compiled extension is unavailable."""


def conv_mod(a, b, n, p):
    """Same contract as the compiled ``conv_mod``."""
    la, lb = min(len(a), n), min(len(b), n)
    out = [0] * n
    for i in range(n):
        lo = max(0, i - lb + 1)
        hi = min(i, la - 1)
        if lo > hi:
            continue
        out[i] = sum(a[j] * b[i - j] for j in range(lo, hi + 1)) % p
    return out
