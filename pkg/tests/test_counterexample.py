"""y^2 = x^5 + 5 over F_11 with l = 31: J(F_{11^3})[31] is bicyclic although
31 does not divide 11^3 - 1.

Everything here uses only the group law and exact integer arithmetic, so it is
independent of the torsion and pairing modules. End(J) is Z[zeta_5] (the curve
has the automorphism x -> zeta_5 x) and 31 = 1 mod 5 splits in Q(zeta_5), so
31 is unramified and the instance passes every hypothesis.
"""

import random

import pytest
import sympy

from g2cm.curve import curve_new, random_divisor, scalar_mul
from g2cm.ff import build_extension
from g2cm.harness import check_hypotheses
from g2cm.zeta import jacobian_order, weil_polynomial

P_, ELL, M = 11, 31, 3


@pytest.fixture(scope="module")
def setup():
    C = curve_new(P_, [5, 0, 0, 0, 0])
    P = weil_polynomial(C)
    return C, P, build_extension(P_, M), jacobian_order(P, M)


def ell_torsion_point(D, n, ell):
    """A point of exact order ell in <D>, or None."""
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    D = scalar_mul(D, n)
    if D.is_identity():
        return None
    while not scalar_mul(D, ell).is_identity():
        D = scalar_mul(D, ell)
    return D


def test_instance_is_eligible(setup):
    C, P, _, _ = setup
    assert check_hypotheses(C, ELL, P=P).eligible
    # 31 splits completely in Q(zeta_5), hence is unramified there
    assert ELL % 5 == 1


def test_field_arithmetic(setup):
    _, P, _, n = setup
    assert (P_**M - 1) % ELL != 0
    assert n % (ELL * ELL) == 0
    X = sympy.symbols("X")
    poly = sympy.Poly(list(reversed(P.coeffs)), X, modulus=ELL)
    roots = sorted(x for x in range(ELL) if poly.eval(x) % ELL == 0)
    assert roots == [1, 11, 24, 25]
    # Frobenius cubed has eigenvalues 1, 1, p^3, p^3 mod 31
    assert sorted(pow(r, M, ELL) for r in roots) == sorted([1, 1, pow(P_, M, ELL), pow(P_, M, ELL)])


def test_bicyclic_over_cubic_extension(setup):
    C, _, F, n = setup
    rng = random.Random(31)
    x1 = None
    while x1 is None:
        x1 = ell_torsion_point(random_divisor(C, F, rng), n, ELL)
    multiples = {scalar_mul(x1, i) for i in range(ELL)}
    for _ in range(20):
        x2 = ell_torsion_point(random_divisor(C, F, rng), n, ELL)
        if x2 is not None and x2 not in multiples:
            break
    else:
        pytest.fail("every 31-torsion sample fell in <x1>")
    assert scalar_mul(x2, ELL).is_identity()
    assert x2 not in multiples
