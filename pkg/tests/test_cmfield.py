import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from g2cm.cmfield import (
    GaloisType,
    QuarticPolynomial,
    Ramification,
    classify_galois,
    discriminant,
    ell_ramification,
    factor_pattern_mod,
    is_irreducible_quartic,
    is_primitive_cm,
    real_root_count,
    resolvent_cubic,
)
from g2cm.curve import curve_new
from g2cm.errors import NotAQuarticCMField
from g2cm.zeta import weil_polynomial

X = sympy.symbols("X")
PHI5 = QuarticPolynomial(1, 1, 1, 1)
X4_49 = QuarticPolynomial(0, 0, 0, 49)
SPLIT = QuarticPolynomial(0, -5, 0, 4)  # (X^2 - 1)(X^2 - 4)


def sym(P):
    return sympy.Poly(X**4 + P.b * X**3 + P.c * X**2 + P.d * X + P.e, X)


def test_irreducibility_examples():
    assert not is_irreducible_quartic(SPLIT)
    assert is_irreducible_quartic(X4_49)
    assert is_irreducible_quartic(PHI5)
    assert not is_irreducible_quartic(QuarticPolynomial(0, 0, 0, 4))  # (X^2 + 2X + 2)(X^2 - 2X + 2)
    assert not is_irreducible_quartic(QuarticPolynomial(0, 2, 0, 1))  # (X^2 + 1)^2


def test_resolvent_cubic_examples():
    assert resolvent_cubic(X4_49) == [0, -196, 0, 1]
    assert resolvent_cubic(QuarticPolynomial(0, 0, 0, 1)) == [0, -4, 0, 1]
    assert resolvent_cubic(PHI5) == [2, -3, -1, 1]


def test_classification_examples():
    assert classify_galois(X4_49) is GaloisType.V4
    assert classify_galois(PHI5) is GaloisType.C4
    assert classify_galois(SPLIT) is GaloisType.NOT_IRREDUCIBLE
    assert classify_galois(QuarticPolynomial(0, 0, 0, -2)) is GaloisType.NOT_CM  # real roots
    assert classify_galois(QuarticPolynomial(0, 4, 0, 2)) is GaloisType.C4  # Q(sqrt(-(2 + sqrt 2)))
    assert classify_galois(QuarticPolynomial(0, 0, 0, 2)) is GaloisType.D4_OR_NON_GALOIS


def test_primitivity():
    assert is_primitive_cm(PHI5)
    assert not is_primitive_cm(X4_49)
    with pytest.raises(NotAQuarticCMField):
        is_primitive_cm(SPLIT)


def test_discriminant_examples():
    assert discriminant(PHI5) == 125
    assert discriminant(SPLIT) != 0
    assert discriminant(QuarticPolynomial(0, 2, 0, 1)) == 0


def test_ramification_examples():
    assert ell_ramification(PHI5, 11) is Ramification.UNRAMIFIED
    assert ell_ramification(PHI5, 5) is Ramification.INDETERMINATE
    assert ell_ramification(PHI5, 3) is Ramification.UNRAMIFIED


def test_factor_patterns_of_phi5():
    for r in (11, 31, 41, 61):
        assert factor_pattern_mod(PHI5, r) == (1, 1, 1, 1)
    for r in (19, 29, 59):
        assert factor_pattern_mod(PHI5, r) == (2, 2)
    for r in (2, 3, 7, 13, 17):
        assert factor_pattern_mod(PHI5, r) == (4,)


coeff = st.integers(-30, 30)


@settings(max_examples=150, deadline=None)
@given(coeff, coeff, coeff, st.integers(-60, 60))
def test_agrees_with_sympy(b, c, d, e):
    P = QuarticPolynomial(b, c, d, e)
    S = sym(P)
    assert discriminant(P) == sympy.discriminant(S)
    assert is_irreducible_quartic(P) == S.is_irreducible
    assert real_root_count(P.coeffs) == len(set(sympy.real_roots(S)))
    if factor_pattern_mod(P, 7) and discriminant(P) % 7:
        degs = sorted(sympy.degree(g, X) for g, _ in sympy.factor_list(S.as_expr(), modulus=7)[1])
        assert tuple(degs) == factor_pattern_mod(P, 7)


@settings(max_examples=80, deadline=None)
@given(coeff, coeff, coeff, st.integers(1, 60))
def test_galois_type_agrees_with_sympy(b, c, d, e):
    P = QuarticPolynomial(b, c, d, e)
    assume(is_irreducible_quartic(P) and real_root_count(P.coeffs) == 0)
    kind = classify_galois(P)
    group = sym(P).galois_group(by_name=True)[0].name
    expected = {"V": GaloisType.V4, "C4": GaloisType.C4, "D4": GaloisType.D4_OR_NON_GALOIS}.get(group, GaloisType.NOT_CM)
    assert kind is expected
    assert classify_galois(P.negate_variable()) is kind


@pytest.mark.parametrize("p", [11, 31, 41, 61, 71])
def test_x5_curves_have_cyclotomic_cm(p):
    # y^2 = x^5 + a with p = 1 mod 5 has CM by Z[zeta_5]
    for a in range(1, 9):
        P = QuarticPolynomial.from_weil(weil_polynomial(curve_new(p, [a, 0, 0, 0, 0])))
        if is_irreducible_quartic(P):
            assert classify_galois(P) is GaloisType.C4


def test_supersingular_x5_curve_is_biquadratic():
    P = QuarticPolynomial.from_weil(weil_polynomial(curve_new(7, [1, 0, 0, 0, 0])))
    assert P == X4_49
    assert classify_galois(P) is GaloisType.V4
