import pytest

from defsieve.arith import bernoulli, factor, primes_upto
from defsieve.errors import DetectionUnstable, InsufficientData, UnsupportedWeight
from defsieve.galois import (
    IRREDUCIBILITY_TABLE,
    ReducibilityCertificate,
    congruence_holds,
    eisenstein_gcds,
    is_abs_irreducible,
    ramanujan_validate,
    reducible_prime_set,
    reducible_primes,
    table_discrepancies,
)
from defsieve.newform import NewformData
from defsieve.qseries import LEVEL_ONE_WEIGHTS

from conftest import builtin


def synthetic(k, ev, level=1, bound=None):
    bound = max(ev) if bound is None else bound
    return NewformData(weight=k, level=level, eigenvalues=ev, bound=bound, source="ingested")


def test_congruence_691(delta_data):
    assert congruence_holds(delta_data, 691, 0, 100)


def test_congruence_mod_2(delta_data):
    assert all(delta_data.a(p) % 2 == 0 for p in primes_upto(100) if p > 2)
    assert congruence_holds(delta_data, 2, 0, 100)


def test_no_congruence_mod_11(delta_data):
    assert not any(congruence_holds(delta_data, 11, a, 100) for a in range(10))


def test_congruence_exponent_range(delta_data):
    with pytest.raises(ValueError):
        congruence_holds(delta_data, 11, 10, 100)


def test_congruence_missing_data():
    d = synthetic(12, {2: 1 + 2**11, 3: 1 + 3**11})
    with pytest.raises(InsufficientData):
        congruence_holds(d, 691, 0, 100)


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_detector_reproduces_table(k):
    assert reducible_prime_set(builtin(k), 2000) == IRREDUCIBILITY_TABLE[k]


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_detector_stable_in_bound(k):
    assert reducible_primes(builtin(k), 1000) == tuple(
        ReducibilityCertificate(c.ell, c.exponent_a, 1000, k) for c in reducible_primes(builtin(k), 2000)
    )


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_certificates_survive_doubled_bound(k):
    data = builtin(k, 4000)
    for cert in reducible_primes(builtin(k), 2000):
        assert cert.verify(data, 4000)


@pytest.mark.parametrize("k", LEVEL_ONE_WEIGHTS)
def test_bernoulli_cross_check(k):
    big_table = {ell for ell in IRREDUCIBILITY_TABLE[k] if ell > 2 * k}
    big_bernoulli = {ell for ell in factor(bernoulli(k).numerator).primes if ell > 2 * k}
    assert big_table == big_bernoulli


def test_bernoulli_cross_check_k20():
    assert bernoulli(20).numerator == -174611 == -283 * 617


def test_gcds_contain_691(delta_data):
    g = eisenstein_gcds(delta_data, 2000)
    assert g[0] % 691 == 0
    assert all(g[a] % 691 for a in range(1, 11))


def test_detection_unstable_on_exact_eisenstein():
    ev = {p: 1 + p**11 for p in primes_upto(300)}
    with pytest.raises(DetectionUnstable):
        reducible_primes(synthetic(12, ev, bound=300), 300)


def test_detection_unstable_when_gcd_moves_late():
    base = builtin(12)
    ev = {p: base.a(p) for p in primes_upto(300)}
    ev[293] += 1  # breaks the 691 congruence at the last prime
    with pytest.raises(DetectionUnstable):
        reducible_primes(synthetic(12, ev, bound=300), 300)


def test_detection_bound_checks(delta_data):
    with pytest.raises(ValueError):
        reducible_primes(delta_data, 100)
    with pytest.raises(InsufficientData):
        reducible_primes(delta_data, 3000)


@pytest.mark.parametrize("k,ell,expected", [(12, 691, False), (12, 23, True), (18, 43867, False), (22, 11, True)])
def test_is_abs_irreducible(k, ell, expected):
    assert is_abs_irreducible(k, ell) is expected


def test_is_abs_irreducible_unsupported():
    with pytest.raises(UnsupportedWeight):
        is_abs_irreducible(14, 5)


def test_certificate_fields():
    c = ReducibilityCertificate(7, 1, 2000, 12)
    assert c.exponent_b == 4
    assert ReducibilityCertificate(2, 0, 2000, 12).exponent_b == 1
    assert c.to_dict() == {"ell": 7, "a": 1, "b": 4, "bound": 2000}


def test_discrepancies():
    assert table_discrepancies(12, {2, 3, 5, 7, 691}) == []
    assert table_discrepancies(12, {2, 3, 5, 7, 11}) == [
        {"kind": "table_only", "ell": 691},
        {"kind": "detector_only", "ell": 11},
    ]


def test_ramanujan_builtin(level_one):
    assert ramanujan_validate(level_one, 2000).ok


def test_ramanujan_violation():
    ev = {p: 0 for p in primes_upto(50)}
    ev[2] = 1000
    rep = ramanujan_validate(synthetic(12, ev), 50)
    assert rep.violations == ((2, 1000),)


def test_ramanujan_k2_floor():
    from math import isqrt

    ev = {p: isqrt(4 * p) for p in primes_upto(500)}
    assert ramanujan_validate(synthetic(2, ev), 500).ok
