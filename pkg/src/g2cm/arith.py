"""Integer helpers: primality, trial factorisation, multiplicative orders."""

from math import gcd, isqrt

from .errors import NotCoprime

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, overwhelmingly reliable above."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor(n: int) -> dict[int, int]:
    """Trial division; only meant for the small numbers this package handles."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def small_prime_factors(n: int, bound: int) -> tuple[dict[int, int], int]:
    """Split |n| into primes <= bound (with multiplicity) and the leftover cofactor."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d <= bound and d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if 1 < n <= bound:
        out[n] = out.get(n, 0) + 1
        n = 1
    return out, n


def divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def valuation(n: int, ell: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def multiplicative_order(q: int, ell: int) -> int:
    """Least k >= 1 with q**k == 1 (mod ell)."""
    if gcd(q, ell) != 1:
        raise NotCoprime(f"gcd({q}, {ell}) != 1")
    if ell == 1:
        return 1
    # ell is prime in every caller, so the group order is ell - 1
    if is_prime(ell):
        k = ell - 1
        for r in factor(k):
            while k % r == 0 and pow(q, k // r, ell) == 1:
                k //= r
        return k
    k, x = 1, q % ell
    while x != 1:
        x = x * q % ell
        k += 1
    return k
