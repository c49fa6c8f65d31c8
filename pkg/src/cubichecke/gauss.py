"""Gauss sums over Z[i] and Z[zeta_12].

Direct sums enumerate a box of coset representatives obtained from an
upper-triangular basis of the lattice n O.  Each term's phase, character value
included, is reduced exactly as an integer fraction before one call to exp.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._arith import hnf_basis
from .cyclo import (
    DELTA_F,
    CycloInt,
    t_inv_unit,
    t_mul,
    t_norm,
    t_numerator,
    t_pow,
    t_rel_norm,
    t_trace,
    t_try_div,
)
from .cyclo_ideals import PrimeF, factor_f
from .gaussian import GaussInt, canon_k
from .symbol import symbol_def_exp

DIRECT_NORM_LIMIT = 10**6
_BASIS_F = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def _e(x: Fraction) -> complex:
    x = x - math.floor(x)
    return cmath.exp(2j * math.pi * float(x))


def e_tilde(num, den=1, E: str = "F") -> complex:
    """e(Tr_E(k / delta_E)) for k = num / den, with delta_K = 2i and delta_F = 2 sqrt(3) i."""
    if E == "F":
        num, den = CycloInt.of(num), CycloInt.of(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        t, D = t_numerator(num.t, t_mul(den.t, DELTA_F.t))
        return _e(Fraction(t_trace(t), D))
    if E == "K":
        num, den = GaussInt.of(num), GaussInt.of(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        z = num * den.conj()
        return _e(Fraction(z.im, den.norm()))
    raise ValueError(f"unknown field {E!r}")


# ----------------------------------------------------------------------------
# residue systems


def residue_box_f(n) -> np.ndarray:
    """(N(n), 4) int64 array of representatives of O_F / n."""
    n = CycloInt.of(n)
    rows = [list(t_mul(n.t, b)) for b in _BASIS_F]
    return _box(hnf_basis(rows))


def residue_box_k(q) -> np.ndarray:
    """(N(q), 2) int64 array of representatives of Z[i] / q."""
    q = GaussInt.of(q)
    return _box(hnf_basis([[q.re, q.im], [-q.im, q.re]]))


def _box(basis) -> np.ndarray:
    d = [row[j] for j, row in enumerate(basis)]
    grids = np.indices(d, dtype=np.int64).reshape(len(d), -1).T
    return np.ascontiguousarray(grids)


# ----------------------------------------------------------------------------
# direct sums


def _char_exponents(primes, coords: np.ndarray, l: int) -> tuple[np.ndarray, np.ndarray]:
    """Exponent of prod (x/P)^(e l) on each row, and a mask of rows coprime to n."""
    tot = np.zeros(coords.shape[0], dtype=np.int64)
    ok = np.ones(coords.shape[0], dtype=bool)
    for P, e in primes:
        tab = P.rmap.cubic_table()
        v = tab[P.rmap.reduce_index(coords)]
        ok &= v >= 0
        tot += (e * l) * v.astype(np.int64)
    return tot % 3, ok


def _phase_sum(lin: list[int], D: int, coords: np.ndarray, chi: np.ndarray, ok: np.ndarray) -> complex:
    """Sum over rows of w^chi * e(<coords, lin> / D), restricted to ok."""
    D3 = 3 * D
    lin3 = [(3 * c) % D3 for c in lin]
    num = np.zeros(coords.shape[0], dtype=np.int64)
    # coords < 10^6 and lin3 < 3 * 144 * 10^6 keep products below 2^63
    for j, c in enumerate(lin3):
        num = (num + coords[:, j] * c) % D3
    num = (num + chi * D) % D3
    num = num[ok]
    z = np.exp(2j * np.pi * (num.astype(np.float64) / D3))
    return complex(z.sum())


def _guard(N: int):
    if N > DIRECT_NORM_LIMIT:
        raise ValueError(f"norm {N} exceeds the direct-sum limit {DIRECT_NORM_LIMIT}")


def _check_coprime6(N: int):
    if N % 2 == 0 or N % 3 == 0:
        raise ValueError("modulus must be coprime to 6")


def gauss_g3(r, n, l: int = 1) -> complex:
    """g_{3,l,F}(r, n) = sum_{x mod n} (x/n)_3^l e~_F(r x / n), by direct summation."""
    r, n = CycloInt.of(r), CycloInt.of(n)
    N = t_norm(n.t)
    if N == 0:
        raise ValueError("modulus must be nonzero")
    _check_coprime6(N)
    if N == 1:
        return 1.0 + 0j
    _guard(N)
    fac = factor_f(n)
    X = residue_box_f(n)
    chi, ok = _char_exponents(fac.primes, X, l)
    t, D = t_numerator(r.t, t_mul(n.t, DELTA_F.t))
    lin = [t_trace(t_mul(b, t)) % D for b in _BASIS_F]
    return _phase_sum(lin, D, X, chi, ok)


def _defining_element(chi) -> tuple[CycloInt, GaussInt]:
    if isinstance(chi, (CycloInt, tuple, list, str)):
        n = CycloInt.of(chi)
        return n, canon_k(GaussInt(*t_rel_norm(n.t)))
    return CycloInt.of(chi.n), GaussInt.of(chi.q)


def gauss_gk(r, chi) -> complex:
    """g_K(r, chi) = sum_{a mod q} chi(a) e~_K(r a / q) for chi = chi_n, by direct summation.

    ``chi`` is a character object with attributes ``n`` and ``q``, or the
    defining element n itself.
    """
    n, q = _defining_element(chi)
    r = GaussInt.of(r)
    N = q.norm()
    _check_coprime6(N)
    if N == 1:
        return 1.0 + 0j
    _guard(N)
    A = residue_box_k(q)
    fac = factor_f(n)
    ch, ok = _char_exponents(fac.primes, A, 1)
    c = r * q.conj()
    return _phase_sum([c.im % N, c.re % N], N, A, ch, ok)


# ----------------------------------------------------------------------------
# prime-local evaluation


@lru_cache(maxsize=100_000)
def _g_prime(gen: tuple, l: int) -> complex:
    """g_{3,l,F}(1, P) for a stored prime generator."""
    l %= 3
    if l == 0:
        return -1.0 + 0j
    if l == 2:
        return _g_prime(gen, 1).conjugate()
    return gauss_g3(1, CycloInt(*gen), 1)


def _valuation(x: tuple, g: tuple) -> tuple[int, tuple]:
    e = 0
    while True:
        q = t_try_div(x, g)
        if q is None:
            return e, x
        x, e = q, e + 1


def _g_prime_power(r: tuple, P: PrimeF, l: int) -> complex:
    """g_{3,F}(r, P^l) from the prime-power evaluation and the twist rule."""
    if r == (0, 0, 0, 0):
        k, rp = l, (1, 0, 0, 0)
    else:
        k, rp = _valuation(r, P.gen)
    if k >= l:
        return complex(P.norm ** (l - 1) * (P.norm - 1)) if l % 3 == 0 else 0j
    if k != l - 1:
        return 0j
    base = P.norm**k * _g_prime(P.gen, l)
    s = P.rmap.cubic_exponent(rp)
    # conj((r'/P^l)) = w^(-l s)
    return base * cmath.exp(-2j * math.pi * ((l * s) % 3) / 3)


def gauss_fast_g3(r, n) -> complex:
    """g_{3,F}(r, n) assembled from prime-local sums via twisted multiplicativity.

    For n = u * prod P^e with u a unit, g(r, n) = g(r u^-1, prod P^e), and
    g(r, n1 n2) = g(n2 r, n1) g(r, n2) for coprime primary n1, n2.
    """
    r, n = CycloInt.of(r), CycloInt.of(n)
    N = t_norm(n.t)
    if N == 0:
        raise ValueError("modulus must be nonzero")
    _check_coprime6(N)
    fac = factor_f(n)
    return gauss_g3_factored(t_mul(r.t, t_inv_unit(fac.unit.t)), fac.primes)


def gauss_g3_factored(r: tuple, primes) -> complex:
    """g_{3,F}(r, n) for n = prod P.gen^e given as [(P, e)]; r is a coordinate tuple."""
    out = 1.0 + 0j
    ps = list(primes)
    # peel n1 = P^e off the front; n2 is the remaining product
    for i, (P, e) in enumerate(ps):
        n2 = (1, 0, 0, 0)
        for Q, f in ps[i + 1 :]:
            n2 = t_mul(n2, t_pow(Q.gen, f))
        out *= _g_prime_power(t_mul(n2, r), P, e)
        if out == 0:
            return 0j
    return out


def gauss_g3_formula_check(n1, n2, r=1) -> tuple[complex, complex]:
    """Both sides of g(r, n1 n2) = conj((n2/n1)) g(r, n1) g(r, n2) for coprime primary n1, n2."""
    n1, n2 = CycloInt.of(n1), CycloInt.of(n2)
    lhs = gauss_g3(r, n1 * n2)
    e = symbol_def_exp(n2, n1)
    rhs = cmath.exp(-2j * math.pi * e / 3) * gauss_g3(r, n1) * gauss_g3(r, n2)
    return lhs, rhs
