"""Point counting, the Weil polynomial P(X) = X^4 - a1 X^3 + a2 X^2 - p a1 X + p^2,
and Jacobian orders over extensions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .curve import GenusTwoCurve
from .errors import BadPrime, EnumerationBoundExceeded, InconsistentCounts

DEFAULT_COUNT_BOUND = 10**6


@dataclass(frozen=True)
class WeilPolynomial:
    a1: int
    a2: int
    p: int

    @property
    def coeffs(self) -> list[int]:
        """Integer coefficients, low degree first."""
        p, a1, a2 = self.p, self.a1, self.a2
        return [p * p, -p * a1, a2, -a1, 1]

    def __call__(self, x: int) -> int:
        return sum(c * x**i for i, c in enumerate(self.coeffs))

    def companion(self) -> list[list[int]]:
        c = self.coeffs
        m = [[0] * 4 for _ in range(4)]
        for i in range(1, 4):
            m[i][i - 1] = 1
        for i in range(4):
            m[i][3] = -c[i]
        return m

    def real_quadratic_traces(self) -> tuple[float, float]:
        """s1, s2 with P = (X^2 - s1 X + p)(X^2 - s2 X + p)."""
        disc = self.a1 * self.a1 - 4 * (self.a2 - 2 * self.p)
        if disc < 0:
            raise InconsistentCounts(f"{self}: complex real-Weil traces")
        r = math.sqrt(disc)
        return (self.a1 + r) / 2, (self.a1 - r) / 2

    def check_bounds(self) -> None:
        p = self.p
        if self.a1 * self.a1 > 16 * p or abs(self.a2) > 6 * p:
            raise InconsistentCounts(f"{self}: outside the Weil bounds")
        bound = 2 * math.sqrt(p)
        for s in self.real_quadratic_traces():
            if abs(s) > bound + 1e-9:
                raise InconsistentCounts(f"{self}: a root has |omega| != sqrt(p)")

    def __str__(self):
        return format_int_poly(self.coeffs)


def format_int_poly(coeffs: list[int], var: str = "X") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = "" if abs(c) == 1 and i else str(abs(c))
        sign = "-" if c < 0 else "+"
        terms.append((sign, mag + mon))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return " ".join([head] + [f"{s} {t}" for s, t in terms[1:]])


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def count_points(C: GenusTwoCurve, m: int, *, bound: int = DEFAULT_COUNT_BOUND) -> int:
    """#C(F_{p^m}) for m in {1, 2}, including the single point at infinity."""
    p = C.p
    if m not in (1, 2):
        raise ValueError("only m = 1 or m = 2 is supported")
    if p**m > bound:
        raise EnumerationBoundExceeded(f"p^{m} = {p ** m} > {bound}")
    f = C.f
    if m == 1:
        total = 0
        for x in range(p):
            fx = 0
            for c in reversed(f):
                fx = (fx * x + c) % p
            total += 1 + _legendre(fx, p)
        return total + 1
    # F_{p^2} = F_p[t]/(t^2 + b1 t + b0); the quadratic character of z is that of Norm(z).
    from .ff import build_extension

    F2 = build_extension(p, 2)
    b0, b1 = F2.modulus[0], F2.modulus[1]
    total = 0
    for x0 in range(p):
        for x1 in range(p):
            # evaluate f at x0 + x1 t with Horner, elements as (c0, c1)
            r0, r1 = 0, 0
            for c in reversed(f):
                # (r0 + r1 t)(x0 + x1 t), t^2 = -b1 t - b0
                s0 = r0 * x0
                s1 = r0 * x1 + r1 * x0
                s2 = r1 * x1
                r0 = (s0 - b0 * s2 + c) % p
                r1 = (s1 - b1 * s2) % p
            if r0 == 0 and r1 == 0:
                total += 1
                continue
            norm = (r0 * r0 - b1 * r0 * r1 + b0 * r1 * r1) % p
            total += 1 + _legendre(norm, p)
    return total + 1


def weil_polynomial(C: GenusTwoCurve, *, bound: int = DEFAULT_COUNT_BOUND) -> WeilPolynomial:
    p = C.p
    n1 = count_points(C, 1, bound=bound)
    n2 = count_points(C, 2, bound=bound)
    a1 = p + 1 - n1
    t2 = p * p + 1 - n2
    if (a1 * a1 - t2) % 2:
        raise InconsistentCounts(f"a1^2 - t2 = {a1 * a1 - t2} is odd")
    P = WeilPolynomial(a1, (a1 * a1 - t2) // 2, p)
    P.check_bounds()
    return P


def _int_matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def frobenius_power_matrix(P: WeilPolynomial, m: int) -> list[list[int]]:
    """Companion matrix of P raised to the m-th power, exactly over Z."""
    result = linalg.identity(4)
    base = P.companion()
    while m:
        if m & 1:
            result = _int_matmul(result, base)
        m >>= 1
        if m:
            base = _int_matmul(base, base)
    return result


def _int_det(a) -> int:
    n = len(a)
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _int_det([row[:j] + row[j + 1:] for row in a[1:]])
               for j in range(n) if a[0][j])


def jacobian_order(P: WeilPolynomial, m: int) -> int:
    """|J(F_{p^m})| = det(I - C^m) for the companion matrix C of P."""
    if m < 1:
        raise ValueError("m must be positive")
    cm = frobenius_power_matrix(P, m)
    return _int_det([[int(i == j) - cm[i][j] for j in range(4)] for i in range(4)])


def charpoly_exact(P: WeilPolynomial, m: int) -> list[int]:
    """Integer characteristic polynomial P_m of the p^m-Frobenius, low degree first."""
    cm = frobenius_power_matrix(P, m)
    # Newton identities from power sums tr(C^{mj}), j = 1..4
    sums = []
    acc = linalg.identity(4)
    for _ in range(4):
        acc = _int_matmul(acc, cm)
        sums.append(sum(acc[i][i] for i in range(4)))
    e = [1]
    for k in range(1, 5):
        s = sum((-1) ** (i - 1) * e[k - i] * sums[i - 1] for i in range(1, k + 1))
        e.append(s // k)
    return [(-1) ** (4 - i) * e[4 - i] for i in range(5)]


def charpoly_mod(P: WeilPolynomial, ell: int, m: int) -> list[int]:
    """P_m reduced mod ell, coefficients in [0, ell), low degree first."""
    if P.p % ell == 0:
        raise BadPrime(f"{ell} divides p = {P.p}")
    return [c % ell for c in charpoly_exact(P, m)]
