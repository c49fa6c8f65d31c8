"""Rational-integer helpers shared by the ring modules."""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from sympy import factorint as _factorint
from sympy import isprime as _isprime


def isprime(n: int) -> bool:
    # sympy: deterministic Miller-Rabin below 2**64, BPSW above
    return _isprime(n)


@lru_cache(maxsize=65536)
def factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Factorization of |n| > 0 as sorted ((p, e), ...)."""
    if n == 0:
        raise ValueError("cannot factor 0")
    return tuple(sorted(_factorint(abs(n)).items()))


def sqrt_mod(a: int, p: int) -> int:
    """Square root of a modulo an odd prime p (Tonelli-Shanks). Raises if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 1, t * t % p
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n by a plain sieve."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def hnf_basis(rows: list[list[int]]) -> list[list[int]]:
    """Upper-triangular basis of a full-rank integer lattice.

    ``rows`` are generators written as row vectors.  Row ``j`` of the result
    vanishes in columns ``< j`` and has a positive entry ``d_j`` in column
    ``j``, so the box of points with ``0 <= x_j < d_j`` is a complete residue
    system for Z^k modulo the lattice.
    """
    m = [list(r) for r in rows]
    k = len(m[0])
    diag = []
    for col in range(k):
        piv = [r for r in m if r[col] != 0]
        rest = [r for r in m if r[col] == 0]
        # Euclid on the column entries
        while len(piv) > 1:
            piv.sort(key=lambda r: abs(r[col]))
            a = piv[0]
            new = [a]
            for r in piv[1:]:
                q = r[col] // a[col]
                r2 = [x - q * y for x, y in zip(r, a)]
                (new if r2[col] != 0 else rest).append(r2)
            piv = new
        if not piv:
            raise ValueError("lattice is not full rank")
        row = piv[0] if piv[0][col] > 0 else [-x for x in piv[0]]
        diag.append(row)
        m = rest
    return diag
