"""Genus-2 curves y^2 = f(x) with f monic of degree 5, and their Jacobians.

Divisor classes are kept in Mumford form (u, v): u monic with deg u <= 2,
deg v < deg u and u | v^2 - f.  The group law is Cantor's algorithm; the
composition and reduction steps also report the rational function relating
input and output, which is what Miller's algorithm needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from . import polyf
from .arith import is_prime
from .errors import (
    BadDegree,
    CompositeModulus,
    EnumerationBoundExceeded,
    EvenCharacteristic,
    FieldMismatch,
    InvalidDivisor,
    NonSquarefree,
    SamplingBudgetExceeded,
)
from .ff import FieldElement, FiniteField, build_extension, embed, restrict, tonelli_shanks

DEFAULT_ENUM_BOUND = 47
DEFAULT_SAMPLING_BUDGET = 10_000


@dataclass(frozen=True, eq=False)
class GenusTwoCurve:
    p: int
    f: tuple[int, ...]  # c0..c5, c5 == 1
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, GenusTwoCurve) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((self.p, self.f))

    def __reduce__(self):
        return (curve_new, (self.p, list(self.f)))

    @cached_property
    def base(self) -> FiniteField:
        return build_extension(self.p, 1)

    def f_over(self, F: FiniteField) -> list[FieldElement]:
        hit = self._cache.get(F)
        if hit is None:
            hit = polyf.trim([F(c) for c in self.f])
            self._cache[F] = hit
        return hit

    def identity(self, F: FiniteField) -> "MumfordDivisor":
        return MumfordDivisor(self, F, (F.one,), ())

    def divisor(self, F: FiniteField, u: Sequence, v: Sequence) -> "MumfordDivisor":
        """Build and validate a divisor from coefficient lists (low degree first)."""
        uu = polyf.trim([F(c) for c in u])
        vv = polyf.trim([F(c) for c in v])
        if not uu or not uu[-1] == F.one or len(uu) > 3:
            raise InvalidDivisor("u must be monic of degree <= 2")
        if len(vv) >= len(uu):
            raise InvalidDivisor("deg v must be < deg u")
        if polyf.mod(polyf.sub(polyf.mul(vv, vv), self.f_over(F)), uu):
            raise InvalidDivisor("u does not divide v^2 - f")
        return MumfordDivisor(self, F, tuple(uu), tuple(vv))

    def point_divisor(self, pt: "CurvePoint") -> "MumfordDivisor":
        if pt.is_infinity:
            raise InvalidDivisor("the point at infinity is the identity")
        F = pt.x.field
        return MumfordDivisor(self, F, (-pt.x, F.one), tuple(polyf.trim([pt.y])))

    def is_on(self, x: FieldElement, y: FieldElement) -> bool:
        return y * y == polyf.evaluate(self.f_over(x.field), x)

    def __str__(self):
        terms = []
        for i in range(5, -1, -1):
            c = self.f[i]
            if c:
                mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = "" if (c == 1 and i) else str(c)
                terms.append(coef + mon)
        return f"y^2 = {' + '.join(terms)} over F_{self.p}"


def curve_new(p: int, f: Sequence[int]) -> GenusTwoCurve:
    """Validated curve y^2 = f(x); ``f`` lists c0..c5 (or c0..c4 with implied c5 = 1)."""
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if p < 3 or not is_prime(p):
        raise CompositeModulus(f"{p} is not an odd prime")
    coeffs = [int(c) % p for c in f]
    if len(coeffs) == 5:
        coeffs.append(1)
    while len(coeffs) > 6 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) != 6 or coeffs[5] != 1:
        raise BadDegree("f must be monic of degree exactly 5")
    F = build_extension(p, 1)
    fp = polyf.trim([F(c) for c in coeffs])
    if polyf.deg(polyf.gcd(fp, polyf.derivative(fp))) != 0:
        raise NonSquarefree("gcd(f, f') != 1: the curve is singular")
    return GenusTwoCurve(p, tuple(coeffs))


@dataclass(frozen=True)
class CurvePoint:
    x: FieldElement | None
    y: FieldElement | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @classmethod
    def infinity(cls) -> "CurvePoint":
        return cls(None, None)


class MumfordDivisor:
    """Reduced divisor class (u, v) over a field F; immutable value."""

    __slots__ = ("curve", "field", "u", "v")

    def __init__(self, curve: GenusTwoCurve, F: FiniteField, u: tuple, v: tuple):
        self.curve = curve
        self.field = F
        self.u = u
        self.v = v

    @property
    def degree(self) -> int:
        return len(self.u) - 1

    def is_identity(self) -> bool:
        return len(self.u) == 1

    def key(self):
        return (tuple(c.c for c in self.u), tuple(c.c for c in self.v))

    def __eq__(self, other):
        if not isinstance(other, MumfordDivisor):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"MumfordDivisor(u={list(self.u)}, v={list(self.v)}, field={self.field})"

    def __add__(self, other):
        return cantor_add(self, other)

    def __neg__(self):
        return cantor_neg(self)

    def __sub__(self, other):
        return cantor_add(self, cantor_neg(other))

    def __mul__(self, n: int):
        return scalar_mul(self, n)

    __rmul__ = __mul__

    def is_valid(self) -> bool:
        u, v = list(self.u), list(self.v)
        if not u or u[-1] != self.field.one or len(u) > 3 or len(v) >= len(u):
            return False
        f = self.curve.f_over(self.field)
        return not polyf.mod(polyf.sub(polyf.mul(v, v), f), u)


# ---------------------------------------------------------------------------
# Cantor's algorithm


@dataclass
class LineFunction:
    """h = d(x) * prod_j (y - v_j(x)) / u_j(x), a function with
    D1 + D2 = D3 + div(h) (up to a constant factor)."""

    d: list
    steps: list  # (v_j, u_j) pairs from the reduction loop


def _compose(D1: MumfordDivisor, D2: MumfordDivisor):
    u1, v1 = list(D1.u), list(D1.v)
    u2, v2 = list(D2.u), list(D2.v)
    f = D1.curve.f_over(D1.field)
    d1, e1, e2 = polyf.xgcd(u1, u2)
    if len(d1) == 1:
        d = d1
        u = polyf.mul(u1, u2)
        t = polyf.add(polyf.mul(polyf.mul(e1, u1), v2), polyf.mul(polyf.mul(e2, u2), v1))
        v = polyf.mod(t, u)
        return u, v, d
    d, c1, c2 = polyf.xgcd(d1, polyf.add(v1, v2))
    s1, s2, s3 = polyf.mul(c1, e1), polyf.mul(c1, e2), c2
    u = polyf.divmod_(polyf.mul(u1, u2), polyf.mul(d, d))[0]
    t = polyf.add(polyf.add(polyf.mul(polyf.mul(s1, u1), v2), polyf.mul(polyf.mul(s2, u2), v1)),
                  polyf.mul(s3, polyf.add(polyf.mul(v1, v2), f)))
    v = polyf.mod(polyf.divmod_(t, d)[0], u) if u else []
    return u, v, d


def _reduce(u, v, f, steps: list | None):
    while len(u) > 3:
        u_new = polyf.divmod_(polyf.sub(f, polyf.mul(v, v)), u)[0]
        u_new = polyf.monic(u_new)
        if steps is not None:
            steps.append((v, u_new))
        v = polyf.mod(polyf.neg(v), u_new)
        u = u_new
    u = polyf.monic(u)
    v = polyf.mod(v, u) if len(u) > 1 else []
    return u, v


def cantor_add_with_function(D1: MumfordDivisor, D2: MumfordDivisor):
    """(D1 + D2, h) where D1 + D2 = D3 + div(h)."""
    _check_same(D1, D2)
    F = D1.field
    u, v, d = _compose(D1, D2)
    steps: list = []
    u, v = _reduce(u, v, D1.curve.f_over(F), steps)
    return MumfordDivisor(D1.curve, F, tuple(u), tuple(v)), LineFunction(d, steps)


def cantor_add(D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    _check_same(D1, D2)
    if D1.is_identity():
        return D2
    if D2.is_identity():
        return D1
    F = D1.field
    u, v, _ = _compose(D1, D2)
    u, v = _reduce(u, v, D1.curve.f_over(F), None)
    return MumfordDivisor(D1.curve, F, tuple(u), tuple(v))


def _check_same(D1: MumfordDivisor, D2: MumfordDivisor):
    if D1.field != D2.field or D1.curve != D2.curve:
        raise FieldMismatch(f"{D1.field} / {D2.field}")


def cantor_neg(D: MumfordDivisor) -> MumfordDivisor:
    return MumfordDivisor(D.curve, D.field, D.u, tuple(-c for c in D.v))


def scalar_mul(D: MumfordDivisor, n: int) -> MumfordDivisor:
    if n < 0:
        return scalar_mul(cantor_neg(D), -n)
    result = D.curve.identity(D.field)
    if n == 0 or D.is_identity():
        return result
    for bit in bin(n)[2:]:
        result = cantor_add(result, result)
        if bit == "1":
            result = cantor_add(result, D)
    return result


def frobenius_map(D: MumfordDivisor, k: int = 1) -> MumfordDivisor:
    """Apply (x, y) -> (x^(p^k), y^(p^k)) coefficient-wise."""
    return MumfordDivisor(D.curve, D.field,
                          tuple(c.frobenius(k) for c in D.u),
                          tuple(c.frobenius(k) for c in D.v))


def change_field(D: MumfordDivisor, dst: FiniteField) -> MumfordDivisor:
    """Embed D into a larger field of the same characteristic."""
    src = D.field
    if src == dst:
        return D
    return MumfordDivisor(D.curve, dst,
                          tuple(embed(c, src, dst) for c in D.u),
                          tuple(embed(c, src, dst) for c in D.v))


def descend(D: MumfordDivisor, dst: FiniteField) -> MumfordDivisor:
    """Express D over the subfield ``dst``; raises IncompatibleTower if D is not rational there."""
    src = D.field
    if src == dst:
        return D
    return MumfordDivisor(D.curve, dst,
                          tuple(restrict(c, dst, src) for c in D.u),
                          tuple(restrict(c, dst, src) for c in D.v))


# ---------------------------------------------------------------------------
# sampling


class _QuadAlg:
    """Element c0 + c1*t of F[t]/(t^2 + a t + b), used for square roots modulo u."""

    __slots__ = ("c0", "c1", "a", "b")

    def __init__(self, c0, c1, a, b):
        self.c0, self.c1, self.a, self.b = c0, c1, a, b

    def __mul__(self, o):
        # t^2 = -a t - b
        x0 = self.c0 * o.c0
        x1 = self.c0 * o.c1 + self.c1 * o.c0
        x2 = self.c1 * o.c1
        return _QuadAlg(x0 - self.b * x2, x1 - self.a * x2, self.a, self.b)

    def __pow__(self, e: int):
        F = self.c0.field
        result = _QuadAlg(F.one, F.zero, self.a, self.b)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, o):
        return self.c0 == o.c0 and self.c1 == o.c1

    def __ne__(self, o):
        return not self == o

    def norm(self):
        return self.c0 * self.c0 - self.a * self.c0 * self.c1 + self.b * self.c1 * self.c1


def _sqrt_mod_irreducible_quadratic(r, a, b):
    """All v = v0 + v1 x with v^2 == r (mod x^2 + a x + b), u irreducible over F."""
    F = a.field
    c0 = r[0] if r else F.zero
    c1 = r[1] if len(r) > 1 else F.zero
    if not (c0 or c1):
        return [[]]
    alpha = _QuadAlg(c0, c1, a, b)
    n = alpha.norm().sqrt()
    if n is None:
        return []
    root = None
    # if s^2 = alpha then s = (alpha + N(s)) / Tr(s) and Tr(s)^2 = Tr(alpha) + 2 N(s)
    trace = 2 * c0 - a * c1
    for nn in (n, -n):
        t2 = trace + 2 * nn
        tau = t2.sqrt() if t2 else None
        if tau:
            inv = tau.inverse()
            cand = _QuadAlg((c0 + nn) * inv, c1 * inv, a, b)
            if cand * cand == alpha:
                root = cand
                break
    if root is None:
        z, shift = None, 0
        while z is None:
            w = _QuadAlg(F(shift), F.one, a, b)
            if not w.norm().is_square():
                z = w
            shift += 1
        root = tonelli_shanks(alpha, _QuadAlg(F.one, F.zero, a, b), F.order ** 2 - 1, z)
    sols = [polyf.trim([root.c0, root.c1]), polyf.trim([-root.c0, -root.c1])]
    return sorted(sols, key=lambda w: tuple(c.c for c in w))


def divisors_over_u(C: GenusTwoCurve, F: FiniteField, u: list) -> list[MumfordDivisor]:
    """Every reduced divisor with first Mumford polynomial ``u`` (monic, degree 1 or 2),
    in a fixed canonical order."""
    f = C.f_over(F)
    if len(u) == 2:
        a = -u[0]
        y2 = polyf.evaluate(f, a)
        y = y2.sqrt()
        if y is None:
            return []
        ys = [y] if not y else [y, -y]
        return [MumfordDivisor(C, F, tuple(u), tuple(polyf.trim([yy]))) for yy in ys]
    a1, a0 = u[1], u[0]
    disc = a1 * a1 - 4 * a0
    out = []
    if not disc:
        r = -a1 / 2
        y = polyf.evaluate(f, r).sqrt()
        if not y:
            return []
        slope = polyf.evaluate(polyf.derivative(f), r) / (2 * y)
        for yy, ss in ((y, slope), (-y, -slope)):
            out.append(polyf.trim([yy - ss * r, ss]))
    else:
        s = disc.sqrt()
        if s is None:
            out = _sqrt_mod_irreducible_quadratic(polyf.mod(f, u), a1, a0)
        else:
            r1, r2 = (-a1 + s) / 2, (-a1 - s) / 2
            y1, y2 = polyf.evaluate(f, r1).sqrt(), polyf.evaluate(f, r2).sqrt()
            if y1 is None or y2 is None:
                return []
            inv = (r1 - r2).inverse()
            for s1 in ([y1, -y1] if y1 else [y1]):
                for s2 in ([y2, -y2] if y2 else [y2]):
                    slope = (s1 - s2) * inv
                    out.append(polyf.trim([s1 - slope * r1, slope]))
    out.sort(key=lambda w: tuple(c.c for c in w))
    return [MumfordDivisor(C, F, tuple(u), tuple(v)) for v in out]


def random_point(C: GenusTwoCurve, F: FiniteField, rng: random.Random,
                 *, budget: int = DEFAULT_SAMPLING_BUDGET) -> CurvePoint:
    f = C.f_over(F)
    for _ in range(budget):
        x = F.random_element(rng)
        y = polyf.evaluate(f, x).sqrt()
        if y is not None:
            if rng.randrange(2):
                y = -y
            return CurvePoint(x, y)
    raise SamplingBudgetExceeded("no affine point found")


def random_divisor(C: GenusTwoCurve, F: FiniteField, rng: random.Random,
                   *, budget: int = DEFAULT_SAMPLING_BUDGET) -> MumfordDivisor:
    """Uniform sample from J(F) by rejection over 1 + 2q + 4q^2 slots.

    Slot 0 is the identity, 2q slots index (u = x - a, choice) and 4q^2 slots
    index (u = x^2 + a x + b, choice); a slot is accepted when that choice
    exists among the canonical solutions for u.  Every reduced divisor owns
    exactly one slot, so accepted samples are uniform.
    """
    if F.p != C.p:
        raise FieldMismatch(f"{F} is not an extension of F_{C.p}")
    q = F.order
    total = 1 + 2 * q + 4 * q * q
    for _ in range(budget):
        s = rng.randrange(total)
        if s == 0:
            return C.identity(F)
        s -= 1
        if s < 2 * q:
            a_idx, choice = divmod(s, 2)
            u = [-F.from_index(a_idx), F.one]
        else:
            s -= 2 * q
            uv, choice = divmod(s, 4)
            b_idx, a_idx = divmod(uv, q)
            u = [F.from_index(b_idx), F.from_index(a_idx), F.one]
        sols = divisors_over_u(C, F, u)
        if choice < len(sols):
            return sols[choice]
    raise SamplingBudgetExceeded(f"no divisor after {budget} attempts")


# ---------------------------------------------------------------------------
# exhaustive enumeration (desk-scale oracle)


def _solve_v_direct(C: GenusTwoCurve, F: FiniteField, u: list) -> Iterator[list]:
    """Brute-force v with v^2 == f mod u, independent of the sampler's square roots.

    For u = x^2 + b x + c and v = v1 x + v0:
    v^2 mod u = (2 v1 v0 - b v1^2) x + (v0^2 - c v1^2).
    """
    f = C.f_over(F)
    r = polyf.mod(f, u)
    r0 = r[0] if r else F.zero
    r1 = r[1] if len(r) > 1 else F.zero
    b, c = u[1], u[0]
    two_inv = F(2).inverse()
    squares = _square_table(F)
    for v1 in F.elements():
        if not v1:
            if r1:
                continue
            for v0 in squares.get(r0.c, ()):
                yield polyf.trim([v0])
            continue
        v0 = (r1 + b * v1 * v1) * two_inv / v1
        if v0 * v0 - c * v1 * v1 == r0:
            yield polyf.trim([v0, v1])


def _square_table(F: FiniteField) -> dict:
    tab: dict = {}
    for y in F.elements():
        tab.setdefault((y * y).c, []).append(y)
    return tab


def enumerate_jacobian(C: GenusTwoCurve, F: FiniteField,
                       *, bound: int = DEFAULT_ENUM_BOUND) -> set[MumfordDivisor]:
    """All of J(F) by brute force over Mumford pairs (needs |F| <= bound)."""
    if F.order > bound:
        raise EnumerationBoundExceeded(f"|F| = {F.order} > {bound}")
    f = C.f_over(F)
    squares = _square_table(F)
    out = {C.identity(F)}
    for a in F.elements():
        for y in squares.get(polyf.evaluate(f, a).c, ()):
            out.add(MumfordDivisor(C, F, (-a, F.one), tuple(polyf.trim([y]))))
    for b in F.elements():
        for c in F.elements():
            u = [c, b, F.one]
            for v in _solve_v_direct(C, F, u):
                out.add(MumfordDivisor(C, F, tuple(u), tuple(v)))
    return out
