import pytest

from defsieve.arith import primes_upto
from defsieve.errors import InsufficientPrecision, NonIntegralCoefficient, OutOfPrecision, UnsupportedWeight
from defsieve.qseries import (
    LEVEL_ONE_WEIGHTS,
    QExpansion,
    coefficient,
    delta,
    eisenstein,
    euler_product,
    hecke_tp,
    level1_cuspform,
    qexp_mul,
    zero,
)


def naive_delta(T):
    """q * prod (1 - q^n)^24, one factor at a time."""
    c = [1] + [0] * (T - 2)
    for n in range(1, T - 1):
        for _ in range(24):
            for i in range(T - 2, n - 1, -1):
                c[i] -= c[i - n]
    return [0] + c


def naive_mul(a, b):
    T = min(len(a), len(b))
    return [sum(a[j] * b[i - j] for j in range(i + 1)) for i in range(T)]


def test_mul_examples():
    a = QExpansion([1, 1, 0])
    b = QExpansion([1, -1, 0])
    assert qexp_mul(a, b).coeffs == (1, 0, -1)
    f = delta(10)
    assert (QExpansion([1] + [0] * 9) * f) == f
    E4 = eisenstein(4, 3)
    assert (E4 * E4).coeffs == (1, 480, 61920)


def test_precision_is_weakest():
    a = QExpansion(range(5))
    b = QExpansion(range(3))
    assert (a * b).precision == 3
    assert (a + b).precision == 3
    assert (a - b).precision == 3
    assert (-a).precision == 5


def test_access_beyond_precision_is_an_error():
    f = delta(5)
    with pytest.raises(OutOfPrecision):
        f[5]
    with pytest.raises(OutOfPrecision):
        coefficient(f, 7)
    with pytest.raises(OutOfPrecision):
        f.truncate(6)


def test_immutable():
    f = delta(5)
    with pytest.raises(AttributeError):
        f.weight = 3


@pytest.mark.parametrize("k,T,expected", [(4, 3, (1, 240, 2160)), (6, 2, (1, -504)), (4, 1, (1,))])
def test_eisenstein_examples(k, T, expected):
    assert eisenstein(k, T).coeffs == expected


def test_eisenstein_rejects():
    with pytest.raises(NonIntegralCoefficient):
        eisenstein(12, 5)
    with pytest.raises(UnsupportedWeight):
        eisenstein(5, 5)


def test_e4_squared_is_e8():
    assert eisenstein(4, 300) ** 2 == eisenstein(8, 300)
    assert eisenstein(4, 300) * eisenstein(6, 300) == eisenstein(10, 300)


def test_euler_product_against_naive():
    T = 80
    c = [1] + [0] * (T - 1)
    for n in range(1, T):
        for i in range(T - 1, n - 1, -1):
            c[i] -= c[i - n]
    assert euler_product(T).coeffs == tuple(c)


def test_delta_examples():
    assert delta(3).coeffs == (0, 1, -24)
    assert delta(8)[7] == -16744
    f = delta(60)
    assert f[2] == -24
    assert f[5] == 4830
    assert f.coeffs == tuple(naive_delta(60))


def test_delta_identity_short():
    T = 300
    E4, E6 = eisenstein(4, T), eisenstein(6, T)
    assert delta(T) == (E4**3 - E6**2).exact_div(1728)


@pytest.mark.parametrize(
    "k,T,expected", [(12, 3, (0, 1, -24)), (16, 3, (0, 1, 216)), (26, 2, (0, 1))]
)
def test_level1_examples(k, T, expected):
    assert level1_cuspform(k, T).coeffs == expected


def test_level1_against_naive_products():
    T = 40
    d = naive_delta(T)
    e4 = list(eisenstein(4, T).coeffs)
    e6 = list(eisenstein(6, T).coeffs)
    assert level1_cuspform(16, T).coeffs == tuple(naive_mul(d, e4))
    assert level1_cuspform(18, T).coeffs == tuple(naive_mul(d, e6))
    assert level1_cuspform(26, T).coeffs == tuple(naive_mul(naive_mul(naive_mul(d, e4), e4), e6))


def test_level1_unsupported():
    for k in (10, 14, 24, 40):
        with pytest.raises(UnsupportedWeight):
            level1_cuspform(k, 10)


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_level1_normalized_cuspidal(k):
    f = level1_cuspform(k, 50)
    assert f[0] == 0 and f[1] == 1
    assert coefficient(f, 0) == 0


def test_hecke_examples():
    D = delta(101)
    t2 = hecke_tp(D, 2, 12)
    assert t2[1] == -24
    assert t2.precision == 51
    assert t2 == D.truncate(51) * -24
    assert hecke_tp(zero(30), 3, 12).is_zero()


def test_hecke_precision_guard():
    with pytest.raises(InsufficientPrecision):
        hecke_tp(delta(5), 5, 12)


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_eigenform(k):
    f = level1_cuspform(k, 1400)
    for p in (2, 3, 5, 7, 11, 13):
        g = hecke_tp(f, p, k)
        assert g.precision >= 100
        assert g == f.truncate(g.precision) * f[p]


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_multiplicative(k):
    from math import gcd

    f = level1_cuspform(k, 301)
    for m in range(1, 301):
        for n in range(1, 300 // m + 1):
            if gcd(m, n) == 1:
                assert f[m * n] == f[m] * f[n]


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_hecke_recursion(k):
    f = level1_cuspform(k, 5**4 + 1)
    for p in (2, 3, 5):
        for r in range(1, 4):
            assert f[p ** (r + 1)] == f[p] * f[p**r] - p ** (k - 1) * f[p ** (r - 1)]


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_ramanujan_bound(k):
    f = level1_cuspform(k, 2001)
    for p in primes_upto(2000):
        assert f[p] ** 2 <= 4 * p ** (k - 1)


def test_691_congruence():
    f = delta(2001)
    for p in primes_upto(2000):
        assert (f[p] - 1 - p**11) % 691 == 0
