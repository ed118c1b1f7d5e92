"""Prime fields and their extensions F_{p^n} = F_p[t]/(g(t)).

Elements carry a reference to their field and a tuple of ``n`` coefficients
(low degree first), always fully reduced, so equality is tuple equality.
Arbitrary-precision ints are used throughout; nothing here is constant time.
"""

from __future__ import annotations

import random
import threading
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import linalg
from .arith import divisors, is_prime
from .arith import multiplicative_order as multiplicative_order  # re-exported
from .errors import (
    CompositeModulus,
    DegreeCapExceeded,
    DivisionByZero,
    EvenCharacteristic,
    IncompatibleTower,
)

DEFAULT_DEGREE_CAP = 64
_KRONECKER_MIN_DEGREE = 8


# ---------------------------------------------------------------------------
# polynomials over F_p as int lists (low degree first); used for moduli only


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], g: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    while len(a) - 1 >= dg:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dg
        for i, gi in enumerate(g):
            a[shift + i] = (a[shift + i] - c * gi) % p
        _trim(a)
    return a


def _fp_mulmod(a: list[int], b: list[int], g: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_mod(out, g, p)


def _fp_powmod(a: list[int], e: int, g: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, g, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, g, p)
        base = _fp_mulmod(base, base, g, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _frobenius_rows(g: list[int], p: int) -> list[list[int]]:
    """Rows j = X^(j*p) mod g, so that h(X)^p = sum_j h_j X^(jp) is a vector-matrix product."""
    n = len(g) - 1
    xp = _fp_powmod([0, 1], p, g, p)
    rows = [[1] + [0] * (n - 1)]
    cur = [1]
    for _ in range(1, n):
        cur = _fp_mulmod(cur, xp, g, p)
        rows.append(cur + [0] * (n - len(cur)))
    return rows


def _apply_rows(h: list[int], rows: list[list[int]], p: int) -> list[int]:
    n = len(rows)
    out = [0] * n
    for hj, row in zip(h, rows):
        if hj:
            for i in range(n):
                out[i] += hj * row[i]
    return [x % p for x in out]


def is_irreducible_mod_p(g: Sequence[int], p: int) -> bool:
    """Rabin's test: X^(p^n) == X mod g and gcd(X^(p^d) - X, g) = 1 for proper divisors d of n."""
    g = [x % p for x in g]
    n = len(g) - 1
    if n < 1 or g[-1] == 0:
        return False
    if n == 1:
        return True
    rows = _frobenius_rows(g, p)
    proper = set(divisors(n)) - {n}
    h = [0, 1] + [0] * (n - 2)
    for d in range(1, n + 1):
        h = _apply_rows(h, rows, p)
        if d in proper or d <= n // 2:
            diff = h[:]
            diff[1] = (diff[1] - 1) % p
            if len(_fp_gcd(diff, g, p)) != 1:
                return False
    x = [0, 1] + [0] * (n - 2)
    return h == x


# ---------------------------------------------------------------------------


class FiniteField:
    """Field descriptor for F_{p^n}; immutable after construction."""

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None,
                 *, degree_cap: int = DEFAULT_DEGREE_CAP):
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if p < 3 or not is_prime(p):
            raise CompositeModulus(f"{p} is not an odd prime")
        if n < 1 or n > degree_cap:
            raise DegreeCapExceeded(f"degree {n} outside 1..{degree_cap}")
        self.p = p
        self.n = n
        self.order = p ** n
        if n == 1:
            self.modulus: tuple[int, ...] = ()
        else:
            if modulus is None:
                modulus = _find_modulus(p, n)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree n")
            if not is_irreducible_mod_p(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible mod {p}")
            self.modulus = modulus
        # X^n == sum(c * X^j for j, c in tail)
        self._tail = tuple((j, (-c) % p) for j, c in enumerate(self.modulus[:-1]) if c)
        self._slot_bytes = ((2 * p.bit_length() + n.bit_length() + 2) + 7) // 8
        self._packed = self._packing_plan() if n > 1 and p < 256 else None
        self.zero = FieldElement(self, (0,) * n)
        self.one = FieldElement(self, (1,) + (0,) * (n - 1))
        self._nonresidue = None
        self._embed_cache: dict = {}
        self._frob_rows: list[list[int]] | None = None
        self._lock = threading.Lock()

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.n == other.n and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"

    def __reduce__(self):
        return (_rebuild_field, (self.p, self.n, self.modulus))

    # -- construction of elements ------------------------------------------
    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            return embed(value, value.field, self)
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.n - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            coeffs = self._reduce(coeffs)
        return FieldElement(self, tuple(coeffs) + (0,) * (self.n - len(coeffs)))

    @property
    def gen(self) -> FieldElement:
        if self.n == 1:
            return self.one
        return self([0, 1])

    def from_index(self, i: int) -> FieldElement:
        """Element whose coefficients are the base-p digits of i (c_0 least significant)."""
        coeffs = []
        for _ in range(self.n):
            i, r = divmod(i, self.p)
            coeffs.append(r)
        return FieldElement(self, tuple(coeffs))

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.order):
            yield self.from_index(i)

    def random_element(self, rng: random.Random) -> FieldElement:
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.n)))

    def random_nonzero(self, rng: random.Random) -> FieldElement:
        while True:
            a = self.random_element(rng)
            if a:
                return a

    @property
    def nonresidue(self) -> FieldElement:
        if self._nonresidue is None:
            e = (self.order - 1) // 2
            i = 2
            while True:
                z = self.from_index(i)
                if z ** e != self.one:
                    self._nonresidue = z
                    break
                i += 1
        return self._nonresidue

    def _frobenius_rows(self) -> list[list[int]]:
        if self._frob_rows is None:
            self._frob_rows = _frobenius_rows(list(self.modulus), self.p)
        return self._frob_rows

    # -- raw coefficient arithmetic ----------------------------------------
    def _reduce(self, c: list[int]) -> tuple[int, ...]:
        """Reduce an unreduced product coefficient list modulo the field modulus."""
        n, p, tail = self.n, self.p, self._tail
        for i in range(len(c) - 1, n - 1, -1):
            t = c[i] % p
            if t:
                base = i - n
                for j, m in tail:
                    c[base + j] += t * m
        if len(c) < n:
            c = c + [0] * (n - len(c))
        return tuple(x % p for x in c[:n])

    def _packing_plan(self):
        """Slot layout for multiplying via one big-integer product (p < 256 only).

        Coefficients go into w-byte slots; the high half of the product is folded
        back with precomputed packed rows X^(n+i) mod g.  Slots hold at most
        2 n (p-1)^2, so nothing carries between them.
        """
        n, p = self.n, self.p
        bound = 2 * n * (p - 1) ** 2
        w = next(w for w in (2, 4, 8) if bound < 1 << (8 * w))
        bits = 8 * w
        rows = []
        for i in range(n - 1):
            red = _fp_mod([0] * (n + i) + [1], list(self.modulus), p)
            rows.append(sum(c << (bits * j) for j, c in enumerate(red)))
        return w, {2: "H", 4: "I", 8: "Q"}[w], n * bits, (1 << (n * bits)) - 1, rows

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        n = self.n
        if n == 1:
            return ((a[0] * b[0]) % self.p,)
        if self._packed is not None:
            p = self.p
            w, fmt, shift, mask, rows = self._packed
            ba = bytearray(n * w)
            ba[0::w] = bytes(a)
            bb = bytearray(n * w)
            bb[0::w] = bytes(b)
            prod = int.from_bytes(ba, "little") * int.from_bytes(bb, "little")
            acc = prod & mask
            hi = memoryview((prod >> shift).to_bytes(n * w, "little")).cast(fmt).tolist()
            for h, row in zip(hi, rows):
                if h:
                    acc += (h % p) * row
            out = memoryview(acc.to_bytes(n * w + w, "little")).cast(fmt).tolist()
            return tuple(x % p for x in out[:n])
        if n >= _KRONECKER_MIN_DEGREE:
            w = self._slot_bytes
            ia = int.from_bytes(b"".join(x.to_bytes(w, "little") for x in a), "little")
            ib = int.from_bytes(b"".join(x.to_bytes(w, "little") for x in b), "little")
            raw = (ia * ib).to_bytes(w * (2 * n), "little")
            c = [int.from_bytes(raw[i:i + w], "little") for i in range(0, w * (2 * n - 1), w)]
        else:
            c = [0] * (2 * n - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        c[i + j] += x * y
        return self._reduce(c)

    def _inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        if self.n == 1:
            if a[0] == 0:
                raise DivisionByZero("inverse of zero")
            return (pow(a[0], -1, p),)
        # extended Euclid on (modulus, a) over F_p
        r0, r1 = list(self.modulus), _trim(list(a))
        if not r1:
            raise DivisionByZero("inverse of zero")
        s0, s1 = [], [1]
        while len(r1) > 1:
            inv_lead = pow(r1[-1], -1, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = r0[:]
            while len(r) >= len(r1):
                c = r[-1] * inv_lead % p
                shift = len(r) - len(r1)
                q[shift] = c
                for i, y in enumerate(r1):
                    r[shift + i] = (r[shift + i] - c * y) % p
                _trim(r)
                if not r:
                    break
            # s2 = s0 - q * s1
            qs = [0] * (len(q) + len(s1) - 1) if s1 else []
            for i, x in enumerate(q):
                if x:
                    for j, y in enumerate(s1):
                        qs[i + j] += x * y
            m = max(len(s0), len(qs))
            s2 = [((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p
                  for i in range(m)]
            r0, r1 = r1, r
            s0, s1 = s1, _trim(s2)
        inv_c = pow(r1[0], -1, p)
        out = [x * inv_c % p for x in s1]
        return tuple(out) + (0,) * (self.n - len(out))


def _rebuild_field(p, n, modulus):
    f = build_extension(p, n)
    if f.modulus == modulus:
        return f
    return FiniteField(p, n, modulus or None)


class FieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, c: tuple[int, ...]):
        self.field = field
        self.c = c

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.c == other.c and (self.field is other.field or self.field == other.field)
        if isinstance(other, int):
            return self.c == self.field(other).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __repr__(self):
        if self.field.n == 1:
            return f"{self.c[0]}"
        terms = []
        for i, x in enumerate(self.c):
            if x:
                terms.append(f"{x}" if i == 0 else (f"{x}*t" if i == 1 else f"{x}*t^{i}"))
        return " + ".join(reversed(terms)) or "0"

    def __int__(self):
        if any(self.c[1:]):
            raise ValueError("element is not in the prime field")
        return self.c[0]

    def in_prime_field(self) -> bool:
        return not any(self.c[1:])

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise IncompatibleTower(f"{other.field} vs {self.field}")
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(self.field, tuple((x + y) % p for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(self.field, tuple((x - y) % p for x, y in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-x) % p for x in self.c))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FieldElement(self.field, tuple(x * other % p for x in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field._inv(self.c))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        if F.n == 1:
            return FieldElement(F, (pow(self.c[0], e, F.p),))
        if not any(self.c):
            return F.zero if e else F.one
        if e >= F.order:
            e = e % (F.order - 1)
        result = F.one.c
        base = self.c
        mul = F._mul
        while e:
            if e & 1:
                result = mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return FieldElement(F, result)

    def frobenius(self, k: int = 1) -> FieldElement:
        """x -> x^(p^k)."""
        F = self.field
        k %= F.n
        if F.n == 1 or k == 0:
            return self
        rows = F._frobenius_rows()
        c = list(self.c)
        for _ in range(k):
            c = _apply_rows(c, rows, F.p)
        return FieldElement(F, tuple(c))

    def is_square(self) -> bool:
        if not self:
            return True
        F = self.field
        return self ** ((F.order - 1) // 2) == F.one

    def sqrt(self) -> FieldElement | None:
        return field_sqrt(self)

    def key(self) -> tuple[int, ...]:
        """Ordering key used for canonical choices."""
        return self.c


# ---------------------------------------------------------------------------
# public operations


def _find_modulus(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible X^n + c_{n-1}X^{n-1} + ... + c_0 in the order
    (c_{n-1}, ..., c_0) lexicographic, i.e. base-p index with c_0 least significant."""
    for idx in range(p ** n):
        coeffs = []
        i = idx
        for _ in range(n):
            i, r = divmod(i, p)
            coeffs.append(r)
        if coeffs[0] == 0:
            continue
        cand = coeffs + [1]
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # impossible


@lru_cache(maxsize=None)
def _build_extension_cached(p: int, n: int, cap: int) -> FiniteField:
    return FiniteField(p, n, degree_cap=cap)


def build_extension(p: int, n: int = 1, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> FiniteField:
    """Deterministic F_{p^n}; the same (p, n) always returns the same descriptor object."""
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if p < 3 or not is_prime(p):
        raise CompositeModulus(f"{p} is not an odd prime")
    if n < 1 or n > degree_cap:
        raise DegreeCapExceeded(f"degree {n} outside 1..{degree_cap}")
    return _build_extension_cached(p, n, DEFAULT_DEGREE_CAP if n <= DEFAULT_DEGREE_CAP else degree_cap)


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_pow(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return a ** e


def tonelli_shanks(a, one, group_order: int, nonresidue):
    """Square root in a cyclic group of even order, or None for a non-square.

    Works for anything supporting *, ** and ==: field elements and the
    quadratic algebras used when sampling divisors.
    """
    t, s = group_order, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    x = a ** ((t + 1) // 2)
    b = a ** t
    c = nonresidue ** t
    m = s
    while b != one:
        i, b2 = 0, b
        while b2 != one:
            b2 = b2 * b2
            i += 1
            if i == m:
                return None
        g = c
        for _ in range(m - i - 1):
            g = g * g
        x = x * g
        c = g * g
        b = b * c
        m = i
    return x


def field_sqrt(a: FieldElement) -> FieldElement | None:
    """Canonical square root (smaller coefficient tuple of r, -r) or None."""
    F = a.field
    if not a:
        return F.zero
    r = tonelli_shanks(a, F.one, F.order - 1, F.nonresidue)
    if r is None:
        return None
    neg = -r
    return r if r.c <= neg.c else neg


# -- embeddings between fields of the same characteristic ---------------------


def _poly_roots_in(g: Sequence[int], dst: FiniteField) -> list[FieldElement]:
    """All roots in dst of a polynomial over F_p that splits into distinct linear factors there."""
    from . import polyf

    P = [dst(c) for c in g]
    rng = random.Random(0x5EED)
    q = dst.order
    out: list[FieldElement] = []
    stack = [P]
    while stack:
        h = stack.pop()
        d = polyf.deg(h)
        if d == 1:
            out.append(-h[0] / h[1])
            continue
        if d < 1:
            continue
        while True:
            delta = dst.random_element(rng)
            w = polyf.powmod([delta, dst.one], (q - 1) // 2, h)
            w = polyf.sub(w, [dst.one])
            g1 = polyf.gcd(w, h)
            if 0 < polyf.deg(g1) < d:
                stack.append(g1)
                stack.append(polyf.divmod_(h, g1)[0])
                break
    return out


def _embedding_data(src: FiniteField, dst: FiniteField):
    key = (src.modulus, src.n)
    with dst._lock:
        hit = dst._embed_cache.get(key)
    if hit is not None:
        return hit
    if src.n == 1:
        data = (None, None, None)
    else:
        roots = _poly_roots_in(src.modulus, dst)
        root = min(roots, key=lambda r: r.c)
        powers = [dst.one]
        for _ in range(1, src.n):
            powers.append(powers[-1] * root)
        # columns: coefficient vectors of root^i; choose pivot rows for restriction
        mat = [[powers[i].c[r] for i in range(src.n)] for r in range(dst.n)]
        rows = []
        chosen: list[list[int]] = []
        for r in range(dst.n):
            trial = chosen + [mat[r]]
            if linalg.rank(trial, dst.p) == len(trial):
                chosen = trial
                rows.append(r)
            if len(rows) == src.n:
                break
        inv = linalg.inverse(chosen, dst.p)
        data = (powers, rows, inv)
    with dst._lock:
        dst._embed_cache[key] = data
    return data


def _check_tower(src: FiniteField, dst: FiniteField):
    if src.p != dst.p or dst.n % src.n:
        raise IncompatibleTower(f"cannot embed {src} into {dst}")


def embed(a: FieldElement, src: FiniteField, dst: FiniteField) -> FieldElement:
    """Ring homomorphism F_{p^s} -> F_{p^n} (s | n), fixed once per field pair."""
    _check_tower(src, dst)
    if src == dst:
        return a
    if src.n == 1:
        return dst(a.c[0])
    powers, _, _ = _embedding_data(src, dst)
    p = dst.p
    acc = [0] * dst.n
    for ci, pw in zip(a.c, powers):
        if ci:
            for j, x in enumerate(pw.c):
                acc[j] += ci * x
    return FieldElement(dst, tuple(x % p for x in acc))


def restrict(b: FieldElement, src: FiniteField, dst: FiniteField) -> FieldElement:
    """Inverse of ``embed``: the element of ``src`` mapping to ``b`` in ``dst``.

    Raises IncompatibleTower when ``b`` does not lie in the image of ``src``.
    """
    _check_tower(src, dst)
    if src == dst:
        return b
    p = dst.p
    if src.n == 1:
        if any(b.c[1:]):
            raise IncompatibleTower("element is not in the prime field")
        return src(b.c[0])
    _, rows, inv = _embedding_data(src, dst)
    rhs = [b.c[r] for r in rows]
    coeffs = linalg.matvec(inv, rhs, p)
    a = FieldElement(src, tuple(coeffs))
    if embed(a, src, dst) != b:
        raise IncompatibleTower(f"element does not lie in {src}")
    return a


def embed_many(values: Iterable[FieldElement], src: FiniteField, dst: FiniteField) -> list[FieldElement]:
    return [embed(v, src, dst) for v in values]
