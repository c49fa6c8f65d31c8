"""The cubic residue symbol (m/n)_3 in Z[zeta_12].

``symbol_def`` evaluates the definition prime by prime in residue fields.
``symbol_fast`` never factors n: it alternates reduction, removal of units and
of the primes above 2 and 3 via closed forms, and cubic reciprocity.
"""
from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cyclo import (
    ONE_PLUS_I,
    SQRT3,
    CycloInt,
    t_is_one_mod3,
    t_mod,
    t_mod_int,
    t_mul,
    t_norm,
    t_try_div,
)
from .cyclo_ideals import _unit_reps_mod3, factor_primes, primes_over
from .gaussian import GaussInt, factor_k

_W = cmath.exp(2j * math.pi / 3)
_NAMES = ("1", "w", "w2")


@dataclass(frozen=True, slots=True)
class CubicValue:
    """Zero, or the cube root of unity w**e."""

    e: Optional[int]

    def __post_init__(self):
        if self.e is not None:
            object.__setattr__(self, "e", self.e % 3)

    @classmethod
    def zero(cls) -> "CubicValue":
        return cls(None)

    @property
    def is_zero(self) -> bool:
        return self.e is None

    def __mul__(self, o: "CubicValue") -> "CubicValue":
        if self.e is None or o.e is None:
            return CubicValue(None)
        return CubicValue(self.e + o.e)

    def __pow__(self, k: int) -> "CubicValue":
        if self.e is None:
            return self if k else CubicValue(0)
        return CubicValue(self.e * k)

    def conj(self) -> "CubicValue":
        return self if self.e is None else CubicValue(-self.e)

    def __complex__(self) -> complex:
        return 0j if self.e is None else _W**self.e

    def __str__(self):
        return "0" if self.e is None else _NAMES[self.e]

    @classmethod
    def parse(cls, s: str) -> "CubicValue":
        return cls(None) if s == "0" else cls(_NAMES.index(s))


# ----------------------------------------------------------------------------
# definition


def _check_modulus(n: CycloInt):
    if n.is_zero():
        raise ValueError("modulus must be nonzero")
    if t_norm(n.t) % 3 == 0:
        raise ValueError(f"modulus {n} is not coprime to 3")


def symbol_def_exp(a, n) -> Optional[int]:
    """Exponent of (a/n)_3 computed from the definition, or None when gcd(a, n) != 1."""
    a, n = CycloInt.of(a), CycloInt.of(n)
    _check_modulus(n)
    tot = 0
    for P, e in factor_primes(n):
        x = P.rmap.cubic_exponent(a.t)
        if x is None:
            return None
        tot += e * x
    return tot % 3


def symbol_def(a, n) -> CubicValue:
    """(a/n)_3 by Euler's criterion in each residue field O_F/p."""
    return CubicValue(symbol_def_exp(a, n))


# ----------------------------------------------------------------------------
# closed forms at units and at the primes above 2 and 3


def paper_coords(n: tuple) -> tuple[int, int, int, int]:
    """Coordinates (a, b, c, d) of n = a + b w + c sqrt3 + d w sqrt3 (n must be 1 mod 3)."""
    A, B, C, D = n
    c3, d3 = B - 2 * D, 2 * B - D
    if c3 % 3 or d3 % 3:
        raise ValueError(f"{n} is not in Z[w, sqrt3]")
    return A, C, c3 // 3, d3 // 3


def omega_exp(n: tuple) -> int:
    a, b, _, _ = paper_coords(n)
    return ((a + b - 1) // 3) % 3


def one_minus_omega_exp(n: tuple) -> int:
    a, _, _, _ = paper_coords(n)
    return ((1 - a) // 3) % 3


def eps_exp(n: tuple) -> int:
    _, _, c, _ = paper_coords(n)
    return (-c) % 3


def sqrt3_exp(n: tuple) -> int:
    _, b, _, _ = paper_coords(n)
    return (b // 3) % 3


def unit_exp(j: int, k: int, n: tuple) -> int:
    """Exponent of (zeta^j eps^k / n)_3 for primary n; (zeta/n) = (w/n) since zeta = w / i."""
    return (j * omega_exp(n) + k * eps_exp(n)) % 3


# (1+i / n)_3 as a function of n mod 18
_T18_LOCK = threading.Lock()
_T18: dict = {}


def _classes_mod18():
    """Representatives of primary classes mod 18 coprime to 2 (all are coprime to 3)."""
    out = []
    for b in range(0, 18, 3):
        for c in range(0, 18, 3):
            for d in range(0, 18, 3):
                for a in range(1, 18, 3):
                    x = (a, b, c, d)
                    if t_norm(x) % 2:
                        out.append(x)
    return out


def _representative(cls: tuple, lift: int) -> tuple:
    """A lift of cls with norm coprime to 3 (always true for primary) and nonzero."""
    a, b, c, d = cls
    return (a + 18 * lift, b, c, d)


def one_plus_i_table() -> dict:
    """Map primary n mod 18 (odd) -> exponent of ((1+i)/n)_3, checked on two lifts per class."""
    if _T18:
        return _T18
    table = {}
    for cls in _classes_mod18():
        vals = set()
        for lift in (0, 1, -1):
            x = _representative(cls, lift)
            vals.add(symbol_def_exp(ONE_PLUS_I, CycloInt(*x)))
        if len(vals) != 1:
            raise ArithmeticError(f"((1+i)/n) is not a function of n mod 18 at {cls}")
        table[cls] = vals.pop()
    with _T18_LOCK:
        if not _T18:
            _T18.update(table)
    return _T18


def one_plus_i_exp(n: tuple) -> int:
    return one_plus_i_table()[t_mod_int(n, 18)]


# ----------------------------------------------------------------------------
# fast path

_SQ3 = SQRT3.t
_OPI = ONE_PLUS_I.t


_TO_PRIMARY: dict = {}


def _to_primary(m: tuple) -> tuple[tuple, int, int]:
    """(u m, j, k) with u = zeta^j eps^k and u m = 1 mod 3 (m coprime to 3)."""
    mm = t_mod_int(m, 3)
    hit = _TO_PRIMARY.get(mm)
    if hit is None:
        from .cyclo import unit_decompose

        for um, u in _unit_reps_mod3():
            if t_mod_int(t_mul(um, mm), 3) == (1, 0, 0, 0):
                d = unit_decompose(CycloInt(*u))
                hit = (u, d.zeta_exp, d.eps_exp)
                break
        else:
            raise ValueError("not coprime to 3")
        _TO_PRIMARY[mm] = hit
    u, j, k = hit
    return t_mul(u, m), j, k


def symbol_fast_exp(m, n) -> Optional[int]:
    m, n = CycloInt.of(m), CycloInt.of(n)
    _check_modulus(n)
    x, y = m.t, n.t
    if not t_is_one_mod3(y):
        raise ValueError(f"modulus {n} is not primary")
    acc = 0
    two = primes_over(2)[0]
    # split off the part of n above 2 so the remaining modulus is odd
    while True:
        q = t_try_div(y, two.gen)
        if q is None:
            break
        e = two.rmap.cubic_exponent(x)
        if e is None:
            return None
        acc += e
        y = q
    norm_y = t_norm(y)
    cap = 4 * max(1, norm_y.bit_length()) + 8
    for _ in range(cap):
        if norm_y == 1:
            return acc % 3
        x = t_mod(x, y)
        if x == (0, 0, 0, 0):
            return None
        nx = t_norm(x)
        while nx % 3 == 0:
            q = t_try_div(x, _SQ3)
            if q is None:
                break
            acc += sqrt3_exp(y)
            x, nx = q, nx // 9
        while nx % 2 == 0:
            q = t_try_div(x, _OPI)
            if q is None:
                break
            acc += one_plus_i_exp(y)
            x, nx = q, nx // 4
        xp, j, k = _to_primary(x)
        acc -= unit_exp(j, k, y)
        # reciprocity for primary xp, y
        x, y = y, xp
        norm_y = t_norm(y)
    raise ArithmeticError("symbol_fast exceeded its iteration cap")


def symbol_fast(m, n) -> CubicValue:
    """(m/n)_3 for primary n via reciprocity; agrees with :func:`symbol_def`."""
    return CubicValue(symbol_fast_exp(m, n))


def symbol(m, n, method: str = "fast") -> CubicValue:
    if method == "def":
        return symbol_def(m, n)
    if method == "fast":
        return symbol_fast(m, n)
    raise ValueError(f"unknown method {method!r}")


# ----------------------------------------------------------------------------
# quadratic symbol over Z[i]


def symbol_quadratic_k(a, pi) -> int:
    """(a/pi)_{2,K} = a^((N pi - 1)/2) mod pi as -1, 0 or 1, for a prime pi coprime to 2."""
    a, pi = GaussInt.of(a), GaussInt.of(pi)
    N = pi.norm()
    if N % 2 == 0:
        raise ValueError("modulus must be odd")
    f = factor_k(pi).factors
    if len(f) != 1 or f[0][1] != 1:
        raise ValueError(f"{pi} is not prime")
    r = a % pi
    if r.is_zero():
        return 0
    out, base, e = GaussInt(1, 0), r, (N - 1) // 2
    while e:
        if e & 1:
            out = (out * base) % pi
        base = (base * base) % pi
        e >>= 1
    if ((out - 1) % pi).is_zero():
        return 1
    if ((out + 1) % pi).is_zero():
        return -1
    raise ArithmeticError("Euler criterion gave neither 1 nor -1")


def cubic_exponent_table(P) -> np.ndarray:
    """Cubic exponents over all of O_F/P, indexed as in :mod:`cubichecke.residue`."""
    return P.rmap.cubic_table()
