"""Univariate polynomials over a finite field.

A polynomial is a list of FieldElements, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial. Functions never mutate their
arguments.
"""

from __future__ import annotations

from .errors import DivisionByZero


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = out[i] + y
    return trim(out)


def sub(a, b):
    out = list(a) + [None] * max(0, len(b) - len(a))
    for i in range(len(out)):
        x = out[i]
        if i < len(b):
            out[i] = b[i].__neg__() if x is None else x - b[i]
    return trim(out)


def neg(a):
    return [-x for x in a]


def scale(a, c):
    if not c:
        return []
    return trim([x * c for x in a])


def mul(a, b):
    if not a or not b:
        return []
    zero = a[0].field.zero
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    inv = b[-1].inverse()
    q = [None] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = a[k + j] - c * b[j]
    return trim(q), trim(a[:db])


def mod(a, b):
    return divmod_(a, b)[1]


def monic(a):
    if not a:
        return []
    inv = a[-1].inverse()
    return [x * inv for x in a[:-1]] + [a[-1].field.one]


def xgcd(a, b):
    """(g, s, t) with g = s*a + t*b and g monic (or zero when a = b = 0)."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [r0[0].field.one] if r0 else [], []
    t0, t1 = [], [r1[0].field.one] if r1 else []
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    inv = r0[-1].inverse()
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def gcd(a, b):
    return xgcd(a, b)[0]


def powmod(a, e: int, m):
    one = m[-1].field.one
    result = [one]
    base = mod(a, m)
    while e:
        if e & 1:
            result = mod(mul(result, base), m)
        e >>= 1
        if e:
            base = mod(mul(base, base), m)
    return result


def evaluate(a, x):
    acc = x.field.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a):
    return trim([c * i for i, c in enumerate(a)][1:])


def resultant_monic(u, g):
    """Res(u, g) = prod over roots r of u of g(r), for monic u of degree <= 2."""
    F = u[-1].field
    d = len(u) - 1
    if d == 0:
        return F.one
    r = mod(g, u)
    if d == 1:
        return r[0] if r else F.zero
    c0 = r[0] if r else F.zero
    c1 = r[1] if len(r) > 1 else F.zero
    # roots r1, r2 with r1 + r2 = -u1, r1 r2 = u0
    return c0 * c0 - u[1] * c0 * c1 + u[0] * c1 * c1
