"""Quartic integer polynomials standing in for the CM field K = Q(omega).

Covers irreducibility, the resolvent cubic, a V4 / C4 / D4 classification,
primitivity, discriminants and an l-ramification screen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .arith import divisors, is_prime
from .errors import NotAQuarticCMField
from .ff import _fp_gcd, _fp_mod, _fp_powmod, _trim

CHEBOTAREV_PRIMES = 50


class GaloisType(str, Enum):
    V4 = "V4"
    C4 = "C4"
    D4_OR_NON_GALOIS = "D4_or_NonGalois"
    NOT_IRREDUCIBLE = "NotIrreducible"
    NOT_CM = "NotCM"


class Ramification(str, Enum):
    UNRAMIFIED = "Unramified"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class QuarticPolynomial:
    """X^4 + b X^3 + c X^2 + d X + e."""

    b: int
    c: int
    d: int
    e: int

    @classmethod
    def from_weil(cls, P) -> "QuarticPolynomial":
        return cls(-P.a1, P.a2, -P.p * P.a1, P.p * P.p)

    @property
    def coeffs(self) -> list[int]:
        """Low degree first."""
        return [self.e, self.d, self.c, self.b, 1]

    def __call__(self, x):
        return (((x + self.b) * x + self.c) * x + self.d) * x + self.e

    def negate_variable(self) -> "QuarticPolynomial":
        """P(-X), the conjugate field's generator."""
        return QuarticPolynomial(-self.b, self.c, -self.d, self.e)


def _signed_divisors(n: int) -> list[int]:
    if n == 0:
        return [0]
    ds = divisors(abs(n))
    return ds + [-x for x in ds]


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def is_irreducible_quartic(P: QuarticPolynomial) -> bool:
    """No rational root and no split into two monic integer quadratics."""
    if any(P(r) == 0 for r in _signed_divisors(P.e)):
        return False
    b, c, d, e = P.b, P.c, P.d, P.e
    # (X^2 + a X + beta)(X^2 + g X + delta)
    for beta in _signed_divisors(e):
        delta = e // beta
        if beta != delta:
            num, den = d - beta * b, delta - beta
            if num % den:
                continue
            a = num // den
            g = b - a
            if a * g + beta + delta == c:
                return False
        else:
            if beta * b != d:
                continue
            r = _isqrt_exact(b * b - 4 * (c - 2 * beta))
            if r is not None and (b + r) % 2 == 0:
                return False
    return True


def resolvent_cubic(P: QuarticPolynomial) -> list[int]:
    """y^3 - c y^2 + (bd - 4e) y - (b^2 e - 4ce + d^2), low degree first."""
    b, c, d, e = P.b, P.c, P.d, P.e
    return [-(b * b * e - 4 * c * e + d * d), b * d - 4 * e, -c, 1]


def _integer_roots(poly: list[int]) -> list[int]:
    """Distinct integer roots of a monic integer polynomial (low degree first)."""
    def ev(x):
        acc = 0
        for coef in reversed(poly):
            acc = acc * x + coef
        return acc

    k = 0
    while k < len(poly) and poly[k] == 0:
        k += 1
    roots = {0} if k else set()
    rest = poly[k:]
    if len(rest) > 1:
        roots.update(r for r in _signed_divisors(rest[0]) if ev(r) == 0)
    return sorted(roots)


# -- Sturm sequences over Q ---------------------------------------------------


def _qtrim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qrem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] -= q * x
        a.pop()
        _qtrim(a)
    return a


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def real_root_count(poly: list[int]) -> int:
    """Number of distinct real roots, by Sturm's theorem."""
    p0 = _qtrim([Fraction(c) for c in poly])
    p1 = _qtrim([c * i for i, c in enumerate(p0)][1:])
    seq = [p0, p1]
    while seq[-1] and len(seq[-1]) > 1:
        r = [-x for x in _qrem(seq[-2], seq[-1])]
        if not r:
            break
        seq.append(r)
    at_neg = [s[-1] * (-1) ** (len(s) - 1) for s in seq if s]
    at_pos = [s[-1] for s in seq if s]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


# -- discriminant ---------------------------------------------------------------


def _bareiss_det(m: list[list[int]]) -> int:
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def sylvester_resultant(f: list[int], g: list[int]) -> int:
    """Res(f, g) from the Sylvester matrix (coefficients low degree first)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fh, gh = f[::-1], g[::-1]
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(P: QuarticPolynomial) -> int:
    """disc(P) = (-1)^(4*3/2) Res(P, P') = Res(P, P') for monic quartic P."""
    f = P.coeffs
    df = [c * i for i, c in enumerate(f)][1:]
    return sylvester_resultant(f, df)


# -- factorization patterns mod r ----------------------------------------------


def factor_pattern_mod(P: QuarticPolynomial, r: int) -> tuple[int, ...]:
    """Degrees of the irreducible factors of P mod r (P squarefree mod r), sorted."""
    g = _trim([x % r for x in P.coeffs])
    degrees = []
    xpow = [0, 1]
    for k in range(1, 5):
        if len(g) <= 1:
            break
        xpow = _fp_powmod(xpow, r, g, r)
        h = _trim([(a - b) % r for a, b in zip(xpow + [0] * 2, [0, 1] + [0] * len(xpow))])
        common = _fp_gcd(g, h, r)
        dc = len(common) - 1
        degrees += [k] * (dc // k)
        if dc:
            g = _fp_div_exact(g, common, r)
            xpow = _fp_mod(xpow, g, r) if len(g) > 1 else [0]
    if len(g) > 1:
        degrees.append(len(g) - 1)
    return tuple(sorted(degrees))


def _fp_div_exact(a: list[int], b: list[int], r: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, r)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        coef = a[i + len(b) - 1] * inv % r
        q[i] = coef
        for j, x in enumerate(b):
            a[i + j] = (a[i + j] - coef * x) % r
    return _trim(q)


def _sample_primes(disc: int, count: int) -> list[int]:
    out, r = [], 3
    while len(out) < count:
        if is_prime(r) and disc % r:
            out.append(r)
        r += 2
    return out


def classify_galois(P: QuarticPolynomial) -> GaloisType:
    """V4 is decided exactly from the resolvent cubic; C4 vs D4 is sampled
    from factorization patterns and so is only a probabilistic label."""
    if not is_irreducible_quartic(P):
        return GaloisType.NOT_IRREDUCIBLE
    if real_root_count(P.coeffs):
        return GaloisType.NOT_CM
    roots = _integer_roots(resolvent_cubic(P))
    if len(roots) == 3:
        return GaloisType.V4
    if not roots:
        # A4 or S4: impossible for a quartic CM field
        return GaloisType.NOT_CM
    disc = discriminant(P)
    for r in _sample_primes(disc, CHEBOTAREV_PRIMES):
        if factor_pattern_mod(P, r) == (1, 1, 2):
            return GaloisType.D4_OR_NON_GALOIS
    return GaloisType.C4


def is_primitive_cm(P: QuarticPolynomial) -> bool:
    kind = classify_galois(P)
    if kind in (GaloisType.NOT_IRREDUCIBLE, GaloisType.NOT_CM):
        raise NotAQuarticCMField(kind)
    return kind is not GaloisType.V4


def ell_ramification(P: QuarticPolynomial, ell: int) -> Ramification:
    if discriminant(P) % ell:
        return Ramification.UNRAMIFIED
    return Ramification.INDETERMINATE
