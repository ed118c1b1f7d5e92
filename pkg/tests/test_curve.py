import random
from collections import Counter

import pytest

from g2cm.curve import (
    CurvePoint,
    cantor_add,
    cantor_neg,
    change_field,
    curve_new,
    descend,
    enumerate_jacobian,
    frobenius_map,
    random_divisor,
    random_point,
    scalar_mul,
)
from g2cm.errors import BadDegree, EnumerationBoundExceeded, EvenCharacteristic, FieldMismatch, InvalidDivisor, NonSquarefree
from g2cm.ff import build_extension
from g2cm.zeta import jacobian_order, weil_polynomial

from conftest import TINY, instance


def test_curve_new_validation():
    with pytest.raises(NonSquarefree):
        curve_new(5, [1, 0, 0, 0, 0])  # (x + 1)^5
    with pytest.raises(EvenCharacteristic):
        curve_new(2, [1, 1, 0, 0, 0])
    with pytest.raises(BadDegree):
        curve_new(7, [1, 0, 0, 0, 0, 2])
    with pytest.raises(BadDegree):
        curve_new(7, [1, 0, 0, 0, 0, 0, 1])
    C = curve_new(7, [1, 0, 0, 0, 0])
    assert C.f == (1, 0, 0, 0, 0, 1)
    assert str(C) == "y^2 = x^5 + 1 over F_7"


def test_divisor_validation(c7):
    F = c7.base
    D = c7.divisor(F, [-1, 1], [3])  # the point (1, 3): 1 + 1 = 2 = 3^2
    assert c7.is_on(F(1), F(3)) and D.is_valid()
    with pytest.raises(InvalidDivisor):
        c7.divisor(F, [-1, 1], [1])
    with pytest.raises(InvalidDivisor):
        c7.divisor(F, [0, 0, 0, 1], [])


@pytest.fixture(scope="module")
def j7(c7):
    return sorted(enumerate_jacobian(c7, c7.base), key=lambda D: D.key())


def test_enumeration_of_j7(c7, j7):
    P = weil_polynomial(c7)
    assert len(j7) == 50 == jacobian_order(P, 1)
    assert c7.identity(c7.base) in j7
    assert all(D.is_valid() for D in j7)
    assert all(scalar_mul(D, 50).is_identity() for D in j7)


def test_group_table_of_j7(c7, j7):
    index = {D: i for i, D in enumerate(j7)}
    n = len(j7)
    table = [[index[cantor_add(a, b)] for b in j7] for a in j7]
    e = index[c7.identity(c7.base)]
    for i in range(n):
        assert table[i][e] == i
        assert table[i][index[cantor_neg(j7[i])]] == e
        for j in range(n):
            assert table[i][j] == table[j][i]
            for k in range(n):
                assert table[table[i][j]][k] == table[i][table[j][k]]


@pytest.mark.parametrize("p, f", [(11, [3, 0, 1, 0, 0]), (13, [1, 2, 0, 0, 0]), (5, TINY["f"])])
def test_enumeration_matches_weil_polynomial(p, f):
    C = curve_new(p, f)
    P = weil_polynomial(C)
    assert len(enumerate_jacobian(C, C.base)) == jacobian_order(P, 1)
    if p * p <= 47:
        assert len(enumerate_jacobian(C, build_extension(p, 2))) == jacobian_order(P, 2)


def test_enumeration_bound():
    C = curve_new(53, [1, 0, 0, 0, 0])
    with pytest.raises(EnumerationBoundExceeded):
        enumerate_jacobian(C, C.base)


@pytest.fixture(scope="module")
def c_f25():
    C, P = instance(TINY)
    return C, P, build_extension(5, 2)


def test_group_laws_over_extension(c_f25):
    C, P, F = c_f25
    rng = random.Random(5)
    e = C.identity(F)
    for _ in range(100):
        a, b, c = (random_divisor(C, F, rng) for _ in range(3))
        assert cantor_add(a, e) == a
        assert cantor_add(a, cantor_neg(a)).is_identity()
        assert cantor_neg(cantor_neg(a)) == a
        assert cantor_add(cantor_add(a, b), c) == cantor_add(a, cantor_add(b, c))
        m, n = rng.randrange(-100, 100), rng.randrange(-100, 100)
        assert scalar_mul(a, m + n) == cantor_add(scalar_mul(a, m), scalar_mul(a, n))
        assert scalar_mul(a, 0).is_identity()
        assert a + b - b == a


def test_frobenius_is_an_endomorphism(c_f25):
    C, P, F = c_f25
    rng = random.Random(7)
    for _ in range(200):
        a, b = random_divisor(C, F, rng), random_divisor(C, F, rng)
        assert frobenius_map(cantor_add(a, b)) == cantor_add(frobenius_map(a), frobenius_map(b))
        assert frobenius_map(a, 2) == a


def test_frobenius_fixes_rational_divisors(c7, j7):
    assert all(frobenius_map(D) == D for D in j7)


def test_frobenius_satisfies_weil_polynomial():
    C, P = instance(TINY)
    F = build_extension(C.p, 2)
    rng = random.Random(8)
    for _ in range(50):
        D = random_divisor(C, F, rng)
        terms = [scalar_mul(frobenius_map(D, i), c) for i, c in enumerate(P.coeffs) if c]
        acc = C.identity(F)
        for t in terms:
            acc = cantor_add(acc, t)
        assert acc.is_identity()


def test_change_field_and_descend(c7, j7):
    F2 = build_extension(7, 2)
    for D in j7[:20]:
        E = change_field(D, F2)
        assert E.field == F2 and descend(E, c7.base) == D
    with pytest.raises(FieldMismatch):
        cantor_add(j7[1], change_field(j7[2], F2))


def test_random_divisor_is_deterministic_and_covers(c7):
    F = c7.base
    draws = [random_divisor(c7, F, random.Random(9)) for _ in range(2)]
    assert draws[0] == draws[1]
    rng = random.Random(10)
    seen = Counter(random_divisor(c7, F, rng) for _ in range(2000))
    assert len(seen) / 50 > 0.9
    # uniform sampler: every class close to 2000 / 50 = 40 draws
    assert max(seen.values()) < 80


def test_random_point_on_curve(c7):
    rng = random.Random(11)
    F = build_extension(7, 3)
    for _ in range(20):
        pt = random_point(c7, F, rng)
        assert c7.is_on(pt.x, pt.y)
        assert c7.point_divisor(pt).is_valid()
    assert CurvePoint.infinity().is_infinity
