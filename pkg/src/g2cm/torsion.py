"""l-torsion of the Jacobian: subgroup structure over F_{p^m}, a basis of J[l],
the mod-l Frobenius matrix and the (full) embedding degrees."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import linalg
from .arith import multiplicative_order, valuation
from .cmfield import QuarticPolynomial, discriminant
from .curve import GenusTwoCurve, MumfordDivisor, cantor_add, change_field, frobenius_map, random_divisor, scalar_mul
from .errors import CapExceeded, CharpolyMismatch, NoCandidateWorked, NotInSpan, RamifiedCase, SamplingBudgetExceeded
from .ff import FiniteField, build_extension
from .pairing import dlog, tate_reduced, weil
from .zeta import WeilPolynomial, charpoly_mod, jacobian_order

DEFAULT_KAPPA_CAP = 10**4
DEFAULT_SAMPLE_BUDGET = 1000
INITIAL_TEST_POINTS = 4


# -- embedding degrees ------------------------------------------------------------


def embedding_degree(p: int, ell: int) -> int:
    return multiplicative_order(p, ell)


def full_embedding_degree(P: WeilPolynomial, ell: int, cap: int = DEFAULT_KAPPA_CAP) -> int:
    """Least kappa with X^kappa == 1 in F_l[X]/(P mod l)."""
    if discriminant(QuarticPolynomial.from_weil(P)) % ell == 0:
        raise RamifiedCase(f"{ell} divides disc(P)")
    g = charpoly_mod(P, ell, 1)
    inv_lead = pow(g[-1], -1, ell)
    cur = [0, 1, 0, 0]  # X mod g
    for kappa in range(1, cap + 1):
        if cur == [1, 0, 0, 0]:
            return kappa
        # multiply by X and reduce by the monic quartic g
        top = cur[3]
        cur = [0] + cur[:3]
        if top:
            c = top * inv_lead
            cur = [(x - c * y) % ell for x, y in zip(cur, g[:4])]
    raise CapExceeded(f"kappa > {cap}")


# -- structure of the l-Sylow subgroup ----------------------------------------------


@dataclass
class SylowStructure:
    """Generators Q_i of the l-Sylow subgroup of J(F) with orders l^e_i, chosen so that
    the subgroup is their direct sum; socle[i] = l^(e_i - 1) Q_i spans J(F)[l]."""

    ell: int
    m: int
    field: FiniteField
    generators: list[MumfordDivisor]
    exponents: list[int]
    socle: list[MumfordDivisor]
    samples: int

    @property
    def rank(self) -> int:
        return len(self.socle)

    @property
    def invariants(self) -> list[int]:
        return sorted(self.ell**e for e in self.exponents)


def _ell_order(Q: MumfordDivisor, ell: int) -> tuple[int, MumfordDivisor]:
    """(j, l^(j-1) Q) where Q has order l^j, j >= 1."""
    j = 1
    while True:
        nxt = scalar_mul(Q, ell)
        if nxt.is_identity():
            return j, Q
        Q = nxt
        j += 1


class _TateCoordinates:
    """Linear coordinates on J(F)[l] via reduced Tate pairings against test points.

    The map x -> (dlog t(x, y_j))_j is injective once the y_j generate
    J(F_L)/l J(F_L); callers verify relations by group arithmetic and call
    ``grow`` when a relation turns out to be spurious.
    """

    def __init__(self, C: GenusTwoCurve, ell: int, FL: FiniteField, rng: random.Random):
        self.C, self.ell, self.FL, self.rng = C, ell, FL, rng
        self.tests = [random_divisor(C, FL, rng) for _ in range(INITIAL_TEST_POINTS)]

    def vector(self, x: MumfordDivisor) -> list[int]:
        xe = change_field(x, self.FL)
        return [dlog(tate_reduced(xe, y, self.ell, self.FL, self.rng), self.ell) for y in self.tests]

    def grow(self) -> None:
        self.tests.append(random_divisor(self.C, self.FL, self.rng))


def sylow_structure(C: GenusTwoCurve, P: WeilPolynomial, ell: int, m: int, rng: random.Random,
                    *, budget: int = DEFAULT_SAMPLE_BUDGET) -> SylowStructure:
    """Exact structure of the l-Sylow subgroup of J(F_{p^m}) by random sampling.

    Sampling stops once the generators found account for all of l^v, where
    l^v exactly divides |J(F_{p^m})|, so the returned rank is certified.
    """
    F = build_extension(C.p, m)
    N = jacobian_order(P, m)
    v = valuation(N, ell)
    out = SylowStructure(ell, m, F, [], [], [], 0)
    if v == 0:
        return out
    cof = N // ell**v
    L = math.lcm(m, embedding_degree(C.p, ell))
    coords = _TateCoordinates(C, ell, build_extension(C.p, L), rng)
    vecs: list[list[int]] = []

    def refresh():
        coords.grow()
        vecs[:] = [coords.vector(x) for x in out.socle]

    def insert(Q: MumfordDivisor) -> None:
        while not Q.is_identity():
            j, x = _ell_order(Q, ell)
            vec = coords.vector(x)
            c = linalg.solve(linalg.transpose(vecs), vec, ell) if vecs else None
            if c is None:
                out.generators.append(Q)
                out.exponents.append(j)
                out.socle.append(x)
                vecs.append(vec)
                return
            combo = C.identity(F)
            for ci, xi in zip(c, out.socle):
                combo = cantor_add(combo, scalar_mul(xi, ci))
            if combo != x:
                refresh()
                continue
            low = [i for i, ci in enumerate(c) if ci and out.exponents[i] < j]
            if low:
                i0 = min(low, key=lambda i: out.exponents[i])
                old = out.generators[i0]
                out.generators[i0], out.exponents[i0], out.socle[i0] = Q, j, x
                vecs[i0] = vec
                Q = old
                continue
            for ci, Qi, ei in zip(c, out.generators, out.exponents):
                if ci:
                    Q = cantor_add(Q, scalar_mul(Qi, -ci * ell ** (ei - j)))

    while sum(out.exponents) < v:
        if out.samples >= budget:
            raise SamplingBudgetExceeded(
                f"l-Sylow of J(F_{C.p}^{m}) not generated after {budget} samples")
        out.samples += 1
        insert(scalar_mul(random_divisor(C, F, rng), cof))
    return out


# -- bases of J[l] and the Frobenius matrix ---------------------------------------------


@dataclass
class TorsionBasis:
    ell: int
    kappa: int
    field: FiniteField
    points: tuple[MumfordDivisor, ...]
    gram: list[list[int]]


@dataclass
class RankReport:
    ell: int
    m: int
    rank: int
    structure: SylowStructure = field(repr=False)


def torsion_basis(C: GenusTwoCurve, P: WeilPolynomial, ell: int, m: int, rng: random.Random,
                  *, budget: int = DEFAULT_SAMPLE_BUDGET) -> TorsionBasis | RankReport:
    """Basis of J[l] over F_{p^m} with its Weil-pairing Gram matrix, or a rank report
    when J(F_{p^m})[l] has rank below four."""
    S = sylow_structure(C, P, ell, m, rng, budget=budget)
    if S.rank < 4:
        return RankReport(ell, m, S.rank, S)
    pts = tuple(S.socle)
    gram = weil_gram(pts, ell, S.field, rng)
    if linalg.rank(gram, ell) != 4:
        raise NotInSpan("Gram matrix of an l-torsion basis is singular")
    return TorsionBasis(ell, m, S.field, pts, gram)


def weil_gram(pts, ell: int, F: FiniteField, rng: random.Random) -> list[list[int]]:
    """Antisymmetric matrix of Weil-pairing dlogs; only the upper triangle is computed."""
    n = len(pts)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = dlog(weil(pts[i], pts[j], ell, F, rng), ell)
            gram[i][j], gram[j][i] = d, (-d) % ell
    return gram


def measured_full_embedding_degree(C: GenusTwoCurve, P: WeilPolynomial, ell: int,
                                   candidates, rng: random.Random) -> tuple[int, TorsionBasis]:
    """First candidate m over which all of J[l] is rational, with its basis."""
    for m in candidates:
        if valuation(jacobian_order(P, m), ell) < 4:
            continue
        B = torsion_basis(C, P, ell, m, rng)
        if isinstance(B, TorsionBasis):
            return m, B
    raise NoCandidateWorked(f"J[{ell}] not rational over any of {list(candidates)}")


def combine(B: TorsionBasis, c) -> MumfordDivisor:
    C = B.points[0].curve
    acc = C.identity(B.field)
    for ci, b in zip(c, B.points):
        if ci % B.ell:
            acc = cantor_add(acc, scalar_mul(b, ci % B.ell))
    return acc


def coords_of(x: MumfordDivisor, B: TorsionBasis, rng: random.Random | None = None) -> list[int]:
    """c with x = sum c_i b_i, from gram^T c = (dlog e(x, b_j))_j, checked by reconstruction."""
    ell = B.ell
    x = change_field(x, B.field)
    rng = rng or random.Random(0)
    d = [dlog(weil(x, b, ell, B.field, rng), ell) for b in B.points]
    c = linalg.solve(linalg.transpose(B.gram), d, ell)
    if c is None or combine(B, c) != x:
        raise NotInSpan("point is not in the span of the basis")
    return c


@dataclass(frozen=True)
class FrobeniusMatrix:
    M: tuple[tuple[int, ...], ...]
    ell: int
    m: int = 1

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.M]

    def power(self, m: int) -> list[list[int]]:
        return linalg.matpow(self.rows(), m, self.ell)


def frobenius_matrix(C: GenusTwoCurve, P: WeilPolynomial, B: TorsionBasis,
                     rng: random.Random | None = None) -> FrobeniusMatrix:
    """Matrix of the p-power Frobenius on J[l] in the basis B (columns are images)."""
    ell = B.ell
    cols = [coords_of(frobenius_map(b), B, rng) for b in B.points]
    M = [[cols[j][i] for j in range(4)] for i in range(4)]
    if linalg.charpoly(M, ell) != charpoly_mod(P, ell, 1):
        raise CharpolyMismatch(f"charpoly(M) = {linalg.charpoly(M, ell)} != P mod {ell}")
    if linalg.det(M, ell) != P.p**2 % ell:
        raise CharpolyMismatch("det M != p^2 mod l")
    return FrobeniusMatrix(tuple(tuple(r) for r in M), ell)


def subgroup_rank(F: FrobeniusMatrix, m: int) -> int:
    """dim of the fixed space of the p^m-Frobenius on J[l]."""
    A = linalg.sub(F.power(m), linalg.identity(4), F.ell)
    return 4 - linalg.rank(A, F.ell)


def omega_conditions(F: FrobeniusMatrix, m: int) -> tuple[bool, bool]:
    Mm = F.power(m)
    I = linalg.identity(4)
    return Mm == I, linalg.matmul(Mm, Mm, F.ell) == I


def eigenspace(F: FrobeniusMatrix, lam: int) -> list[list[int]]:
    """Basis of ker(M - lam I)."""
    A = linalg.sub(F.rows(), linalg.scalar_identity(4, lam, F.ell), F.ell)
    return linalg.nullspace(A, F.ell)
