"""Miller's algorithm on genus-2 Jacobians, the reduced Tate pairing and the
Weil pairing built as a ratio of two reduced Tate pairings.

Evaluation divisors are always A - B with A, B effective of equal degree, so
the point at infinity drops out and constant factors of Miller functions
cancel.  Products of a function over the points of A are computed as
resultants against u_A, which avoids leaving the working field.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Sequence

from . import linalg, polyf
from .curve import LineFunction, MumfordDivisor, cantor_add, cantor_add_with_function, change_field, random_divisor
from .errors import (
    DegenerateWeilRatio,
    DlogFailure,
    NotTorsion,
    RootsOfUnityMissing,
    SupportCollision,
    SupportExhausted,
)
from .ff import FieldElement, FiniteField

DEFAULT_SUPPORT_RETRIES = 32


def _eval_on(h: LineFunction, D: MumfordDivisor) -> tuple[FieldElement, FieldElement]:
    """(numerator, denominator) of prod_{P in D} h(P)."""
    u, v = list(D.u), list(D.v)
    F = D.field
    num = polyf.resultant_monic(u, h.d) if h.d else F.zero
    den = F.one
    for vj, uj in h.steps:
        num = num * polyf.resultant_monic(u, polyf.sub(v, vj))
        den = den * polyf.resultant_monic(u, uj)
    if not num or not den:
        raise SupportCollision("evaluation divisor meets a zero or pole")
    return num, den


def miller_eval(x: MumfordDivisor, ell: int, A: MumfordDivisor, B: MumfordDivisor) -> FieldElement:
    """f_x(A - B) where div(f_x) = ell * x; A and B effective of equal degree."""
    if A.degree != B.degree:
        raise SupportCollision("A and B must have the same degree")
    F = x.field
    num, den = F.one, F.one
    T = x
    for bit in bin(ell)[3:]:
        T, h = cantor_add_with_function(T, T)
        an, ad = _eval_on(h, A)
        bn, bd = _eval_on(h, B)
        num = num * num * an * bd
        den = den * den * ad * bn
        if bit == "1":
            T, h = cantor_add_with_function(T, x)
            an, ad = _eval_on(h, A)
            bn, bd = _eval_on(h, B)
            num = num * an * bd
            den = den * ad * bn
    if not T.is_identity():
        raise NotTorsion(f"{ell} * x is not the identity")
    return num / den


def _final_exponent(F: FiniteField, ell: int) -> int:
    q1 = F.order - 1
    if q1 % ell:
        raise RootsOfUnityMissing(f"{ell} does not divide |{F}^x| = {q1}")
    return q1 // ell


def tate_reduced(x: MumfordDivisor, y: MumfordDivisor, ell: int, F: FiniteField | None = None,
                 rng: random.Random | None = None, *,
                 retries: int = DEFAULT_SUPPORT_RETRIES) -> FieldElement:
    """Reduced Tate pairing f_x(y')^((|F|-1)/ell) with y' = (y + R) - R for a random R."""
    F = F or x.field
    x, y = change_field(x, F), change_field(y, F)
    e = _final_exponent(F, ell)
    if x.is_identity() or y.is_identity():
        return F.one
    rng = rng or random.Random(0)
    for _ in range(retries):
        R = random_divisor(x.curve, F, rng)
        A = cantor_add(y, R)
        if A.degree != R.degree or R.is_identity():
            continue
        try:
            return miller_eval(x, ell, A, R) ** e
        except SupportCollision:
            continue
    raise SupportExhausted(f"no support-disjoint representative after {retries} tries")


def weil(x: MumfordDivisor, y: MumfordDivisor, ell: int, F: FiniteField | None = None,
         rng: random.Random | None = None) -> FieldElement:
    """e(x, y) = t(x, y) / t(y, x) with t the reduced Tate pairing over F.

    When ell^2 divides |F^x| this ratio is identically 1 on J[ell], so that
    case is refused rather than silently reported as degenerate.
    """
    F = F or x.field
    if ((F.order - 1) // ell) % ell == 0:
        raise DegenerateWeilRatio(f"{ell}^2 divides |{F}^x|; the Tate ratio is trivial")
    rng = rng or random.Random(0)
    return tate_reduced(x, y, ell, F, rng) / tate_reduced(y, x, ell, F, rng)


# -- discrete logs in mu_ell ------------------------------------------------------


@lru_cache(maxsize=None)
def root_of_unity(F: FiniteField, ell: int) -> FieldElement:
    """Canonical generator of mu_ell: g^((q-1)/ell) for the first g (by index) giving != 1."""
    e = _final_exponent(F, ell)
    i = 2
    while True:
        z = F.from_index(i) ** e
        if z != F.one:
            return z
        i += 1


@lru_cache(maxsize=None)
def _bsgs_table(F: FiniteField, ell: int):
    zeta = root_of_unity(F, ell)
    m = math.isqrt(ell - 1) + 1
    table = {}
    cur = F.one
    for j in range(m):
        table.setdefault(cur.c, j)
        cur = cur * zeta
    giant = (zeta ** m).inverse()
    return m, table, giant


def dlog(z: FieldElement, ell: int) -> int:
    """j in [0, ell) with z = zeta^j for the canonical zeta; baby-step giant-step."""
    F = z.field
    m, table, giant = _bsgs_table(F, ell)
    cur = z
    for i in range(m + 1):
        j = table.get(cur.c)
        if j is not None:
            return (i * m + j) % ell
        cur = cur * giant
    raise DlogFailure(f"{z} is not in mu_{ell}")


def pairing_matrix(S: Sequence[MumfordDivisor], T: Sequence[MumfordDivisor], ell: int,
                   F: FiniteField, rng: random.Random | None = None) -> list[list[int]]:
    """Matrix of Weil-pairing discrete logs dlog e(s_i, t_j)."""
    rng = rng or random.Random(0)
    return [[dlog(weil(s, t, ell, F, rng), ell) for t in T] for s in S]


def nondegenerate_on(S: Sequence[MumfordDivisor], T: Sequence[MumfordDivisor], ell: int,
                     F: FiniteField, rng: random.Random | None = None) -> bool:
    """True iff the pairing is non-degenerate on span(S) x span(T).

    S and T are taken to be independent generating sets, so this holds
    exactly when the dlog matrix has full rank |S| = |T|.
    """
    if not S or not T or len(S) != len(T):
        return False
    M = pairing_matrix(S, T, ell, F, rng)
    return linalg.rank(M, ell) == len(S)
