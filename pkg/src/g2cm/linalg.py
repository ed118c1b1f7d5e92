"""Dense linear algebra over a prime field Z/rZ.

Matrices are lists of rows of Python ints. Everything here is small (4x4 for
Frobenius matrices, n x n for field-embedding solves), so plain Gaussian
elimination is all we need.
"""

from __future__ import annotations

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, r: int) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % r for col in bt] for row in a]


def matvec(a: Matrix, v: list[int], r: int) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) % r for row in a]


def matpow(a: Matrix, e: int, r: int) -> Matrix:
    result = identity(len(a))
    base = [row[:] for row in a]
    while e:
        if e & 1:
            result = matmul(result, base, r)
        base = matmul(base, base, r)
        e >>= 1
    return result


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def sub(a: Matrix, b: Matrix, r: int) -> Matrix:
    return [[(x - y) % r for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scalar_identity(n: int, c: int, r: int) -> Matrix:
    return [[c % r if i == j else 0 for j in range(n)] for i in range(n)]


def _echelon(a: Matrix, r: int) -> tuple[Matrix, list[int]]:
    m = [[x % r for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        piv = next((i for i in range(row, rows) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], -1, r)
        m[row] = [x * inv % r for x in m[row]]
        for i in range(rows):
            if i != row and m[i][col]:
                c = m[i][col]
                m[i] = [(x - c * y) % r for x, y in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == rows:
            break
    return m, pivots


def rank(a: Matrix, r: int) -> int:
    if not a or not a[0]:
        return 0
    return len(_echelon(a, r)[1])


def det(a: Matrix, r: int) -> int:
    m = [[x % r for x in row] for row in a]
    n = len(m)
    d = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        d = d * m[col][col] % r
        inv = pow(m[col][col], -1, r)
        for i in range(col + 1, n):
            if m[i][col]:
                c = m[i][col] * inv % r
                m[i] = [(x - c * y) % r for x, y in zip(m[i], m[col])]
    return d % r


def solve(a: Matrix, b: list[int], r: int) -> list[int] | None:
    """One solution x of a x = b, or None when the system is inconsistent."""
    n = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots = _echelon(aug, r)
    if n in pivots:
        return None
    x = [0] * n
    for i, col in enumerate(pivots):
        x[col] = m[i][n]
    return x


def inverse(a: Matrix, r: int) -> Matrix:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    m, pivots = _echelon(aug, r)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def nullspace(a: Matrix, r: int) -> list[list[int]]:
    """Basis of {x : a x = 0}."""
    n = len(a[0])
    m, pivots = _echelon(a, r)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, col in enumerate(pivots):
            x[col] = -m[i][f] % r
        basis.append(x)
    return basis


def poly_mul_mod(a: list[int], b: list[int], r: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % r
    return out


def charpoly(a: Matrix, r: int) -> list[int]:
    """det(X*I - a) over Z/rZ, coefficients low to high (monic).

    Berkowitz-free Laplace expansion on polynomial entries; fine for n <= 5
    and it never divides, so it is valid for every r including 2 and 3.
    """
    n = len(a)
    entries = [[([(-a[i][j]) % r, 1] if i == j else [(-a[i][j]) % r]) for j in range(n)]
               for i in range(n)]

    def expand(rows: list[int], cols: list[int]) -> list[int]:
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total: list[int] = []
        i = rows[0]
        for idx, j in enumerate(cols):
            minor = expand(rows[1:], cols[:idx] + cols[idx + 1:])
            term = poly_mul_mod(entries[i][j], minor, r)
            if idx % 2:
                term = [(-t) % r for t in term]
            total = [(x + y) % r for x, y in _zip_pad(total, term)]
        return total

    out = expand(list(range(n)), list(range(n)))
    while len(out) > n + 1 and out[-1] == 0:
        out.pop()
    return out


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))
