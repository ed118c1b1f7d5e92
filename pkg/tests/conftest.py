import random

import pytest

from g2cm.curve import curve_new
from g2cm.zeta import weil_polynomial

# Small instances used across modules.  The first two have J[l] rational over
# a tiny extension (l divides disc(P) there, which the torsion and pairing
# code does not mind); the last is eligible with k = kappa = 5.
TINY = dict(p=5, f=[4, 1, 0, 0, 0], ell=3, kappa=2)
SMALL = dict(p=11, f=[5, 1, 9, 3, 8], ell=7, kappa=3)
ELIGIBLE = dict(p=71, f=[23, 0, 0, 0, 0], ell=11, k=5, kappa=5)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def c7():
    """y^2 = x^5 + 1 over F_7, |J(F_7)| = 50."""
    return curve_new(7, [1, 0, 0, 0, 0])


def instance(spec):
    C = curve_new(spec["p"], spec["f"])
    return C, weil_polynomial(C)
