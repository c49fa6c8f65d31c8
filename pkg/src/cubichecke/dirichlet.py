"""Dirichlet coefficients collapsed by norm: c(N) = sum of chi(A) over ideals A of norm N.

Both Z[i] and Z[zeta_12] series are built from the values at prime ideals by a
multiplicative sieve over the rational primes.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ._arith import primes_upto
from .residue import ResidueMap, residue_degree, zeta_images

_W = np.exp(2j * np.pi * np.arange(3) / 3)


@lru_cache(maxsize=8)
def _sieve(bound: int) -> np.ndarray:
    s = np.ones(bound + 1, dtype=bool)
    s[:2] = False
    for p in range(2, int(bound**0.5) + 1):
        if s[p]:
            s[p * p :: p] = False
    return s


@lru_cache(maxsize=8)
def k_prime_table(bound: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Arrays (re, im, p, f) of the primary generators of all primes of Z[i] with norm p^f <= bound."""
    r = int(bound**0.5) + 1
    a = np.arange(1, r + 1, dtype=np.int64)
    b = np.arange(0, r + 1, dtype=np.int64)
    A, B = np.meshgrid(a, b, indexing="ij")
    N = A * A + B * B
    prime = _sieve(max(bound, 2))
    keep = (N <= bound) & (B > 0)
    A, B, N = A[keep], B[keep], N[keep]
    keep = prime[N]
    re, im, p = A[keep], B[keep], N[keep]
    f = np.ones_like(p)
    inert = primes_upto(r + 1)
    inert = inert[(inert % 4 == 3) & (inert * inert <= bound)]
    re = np.concatenate([re, inert])
    im = np.concatenate([im, np.zeros_like(inert)])
    p = np.concatenate([p, inert])
    f = np.concatenate([f, np.full_like(inert, 2)])
    order = np.lexsort((im, re, p**f))
    return re[order], im[order], p[order], f[order]


def exps_to_complex(exps: np.ndarray) -> np.ndarray:
    """int exponents (-1 = zero) to complex values."""
    out = _W[np.clip(exps, 0, 2)]
    return np.where(exps < 0, 0, out)


def multiplicative_coeffs(bound: int, p: np.ndarray, f: np.ndarray, vals: np.ndarray) -> np.ndarray:
    """c[0..bound] for the Euler product prod over primes (1 - v T^f)^-1 grouped by rational p.

    ``p``, ``f``, ``vals`` list prime ideals (rational prime below, residue
    degree, complex value).  Ideals divisible by an unlisted prime get 0.
    """
    c = np.ones(bound + 1, dtype=np.complex128)
    c[0] = 0
    order = np.argsort(p, kind="stable")
    p, f, vals = p[order], f[order], vals[order]
    groups: dict = {}
    starts = np.flatnonzero(np.r_[True, p[1:] != p[:-1]]) if len(p) else np.array([], dtype=np.int64)
    ends = np.r_[starts[1:], len(p)]
    for s, e in zip(starts.tolist(), ends.tolist()):
        groups[int(p[s])] = (s, e)
    for q in primes_upto(bound).tolist():
        s, e = groups.get(q, (0, 0))
        kmax = 0
        pk = 1
        while pk * q <= bound:
            pk *= q
            kmax += 1
        # local series prod (1 - v T^f)^-1 truncated at T^kmax
        loc = np.zeros(kmax + 1, dtype=np.complex128)
        loc[0] = 1
        for j in range(s, e):
            fj, v = int(f[j]), complex(vals[j])
            if v == 0 or fj > kmax:
                continue
            # multiply by the geometric series in v T^fj
            for k in range(fj, kmax + 1):
                loc[k] += v * loc[k - fj]
        if kmax == 1:
            c[q::q] *= loc[1]
            continue
        n = np.arange(q, bound + 1, q)
        k = np.ones(n.shape, dtype=np.int64)
        m = n // q
        while True:
            more = m % q == 0
            if not more.any():
                break
            k[more] += 1
            m[more] //= q
        c[n] *= loc[k]
    return c


def k_coeffs(bound: int, prime_exps) -> np.ndarray:
    """Coefficients of sum over ideals of Z[i] of chi(A) T^N(A), given a vectorized
    function prime_exps(re, im) -> exponents at the prime generators."""
    re, im, p, f = k_prime_table(bound)
    vals = exps_to_complex(np.asarray(prime_exps(re, im)))
    return multiplicative_coeffs(bound, p, f, vals)


def f_prime_table(bound: int, exclude=()):
    """List of (p, f, ResidueMap) for every prime ideal of Z[zeta_12] of norm <= bound."""
    out = []
    for p in primes_upto(bound).tolist():
        if p in exclude:
            continue
        f = residue_degree(p)
        if p**f > bound:
            continue
        F, zs = zeta_images(p)
        for z in zs:
            out.append((p, f, ResidueMap(F, z)))
    return out


def f_coeffs(bound: int, prime_exp, extra=()) -> np.ndarray:
    """Coefficients over ideals of Z[zeta_12] coprime to 6.

    ``prime_exp(rmap)`` returns the exponent (or None for zero) at the prime
    with residue map ``rmap``; ``extra`` lists (p, f, complex value) for
    primes above 2 and 3 that should be included.
    """
    ps, fs, vs = [], [], []
    for p, f, rm in f_prime_table(bound, exclude=(2, 3)):
        e = prime_exp(rm)
        ps.append(p)
        fs.append(f)
        vs.append(0j if e is None else complex(_W[e]))
    for p, f, v in extra:
        ps.append(p)
        fs.append(f)
        vs.append(v)
    return multiplicative_coeffs(bound, np.array(ps, dtype=np.int64), np.array(fs, dtype=np.int64), np.array(vs))
