"""Exact arithmetic in the Gaussian integers Z[i].

Elements are immutable :class:`GaussInt` values.  Every nonzero element has a
canonical associate ("primary" here): the rotation by a unit into the quadrant
``re > 0, im >= 0``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Callable, Iterator, Optional

import numpy as np

from ._arith import factor_int, sqrt_mod


@dataclass(frozen=True, slots=True)
class GaussInt:
    re: int
    im: int

    @classmethod
    def of(cls, z) -> "GaussInt":
        if isinstance(z, GaussInt):
            return z
        if isinstance(z, int):
            return cls(z, 0)
        if isinstance(z, complex):
            return cls(int(z.real), int(z.imag))
        if isinstance(z, str):
            return parse_gauss(z)
        a, b = z
        return cls(int(a), int(b))

    def __add__(self, o):
        o = GaussInt.of(o)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GaussInt.of(o)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussInt.of(o) - self

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __mul__(self, o):
        o = GaussInt.of(o)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, o):
        o = GaussInt.of(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by 0 in Z[i]")
        num = self * o.conj()
        q = GaussInt(_round_div(num.re, n), _round_div(num.im, n))
        return q, self - q * o

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, o) -> bool:
        o = GaussInt.of(o)
        if self.is_zero():
            return o.is_zero()
        return (o % self).is_zero()

    def exact_div(self, o) -> "GaussInt":
        q, r = divmod(self, o)
        if not r.is_zero():
            raise ArithmeticError(f"{o} does not divide {self}")
        return q

    def __complex__(self):
        return complex(self.re, self.im)

    def __str__(self):
        return format_gauss(self)

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
ONE_PLUS_I = GaussInt(1, 1)
UNITS_K = (ONE, I, GaussInt(-1, 0), GaussInt(0, -1))


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0, halves rounded up."""
    return (2 * a + b) // (2 * b)


_GAUSS_RE = re.compile(r"^\s*([+-]?\d+)?\s*(?:([+-])\s*(\d*)\s*i)?\s*$")


def parse_gauss(text) -> GaussInt:
    """Parse ``"a+bi"`` text (e.g. ``"3+2i"``, ``"-1-1i"``, ``"5"``, ``"2i"``), ``"(a,b)"`` or a JSON pair."""
    if isinstance(text, (list, tuple)):
        return GaussInt(int(text[0]), int(text[1]))
    s = text.strip()
    if s.startswith("[") or s.startswith("("):
        try:
            a, b = json.loads("[" + s[1:-1] + "]")
        except ValueError as exc:
            raise ValueError(f"cannot parse Gaussian integer {text!r}") from exc
        return GaussInt(int(a), int(b))
    m = _GAUSS_RE.match(s)
    if m is None or (m.group(1) is None and m.group(2) is None):
        # pure imaginary like "2i" or "-i"
        m2 = re.match(r"^\s*([+-]?)(\d*)\s*i\s*$", s)
        if m2 is None:
            raise ValueError(f"cannot parse Gaussian integer {text!r}")
        b = int(m2.group(2) or 1)
        return GaussInt(0, -b if m2.group(1) == "-" else b)
    a = int(m.group(1) or 0)
    b = 0
    if m.group(2):
        b = int(m.group(3) or 1)
        if m.group(2) == "-":
            b = -b
    return GaussInt(a, b)


def format_gauss(z: GaussInt) -> str:
    if z.im == 0:
        return str(z.re)
    return f"{z.re}{'+' if z.im >= 0 else '-'}{abs(z.im)}i"


def norm_k(z) -> int:
    return GaussInt.of(z).norm()


def primary_k(z) -> tuple[GaussInt, GaussInt]:
    """Return ``(unit, assoc)`` with ``assoc = unit * z`` in the quadrant re > 0, im >= 0."""
    z = GaussInt.of(z)
    if z.is_zero():
        raise ValueError("0 has no primary associate")
    for u in UNITS_K:
        w = u * z
        if w.re > 0 and w.im >= 0:
            return u, w
    raise AssertionError("unreachable")


def canon_k(z) -> GaussInt:
    return primary_k(z)[1]


def gcd_k(a, b) -> GaussInt:
    a, b = GaussInt.of(a), GaussInt.of(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return canon_k(a)


@dataclass(frozen=True)
class KFactorization:
    unit: GaussInt
    factors: tuple[tuple[GaussInt, int], ...]

    def value(self) -> GaussInt:
        out = self.unit
        for p, e in self.factors:
            out = out * p**e
        return out

    def primes(self) -> list[GaussInt]:
        return [p for p, _ in self.factors]


@lru_cache(maxsize=None)
def _prime_above_k(p: int) -> GaussInt:
    """One K-prime of norm p (p = 2 or p = 1 mod 4): gcd(p, s + i) with s^2 = -1 mod p."""
    if p == 2:
        return ONE_PLUS_I
    s = sqrt_mod(p - 1, p)
    return gcd_k(GaussInt(p, 0), GaussInt(s, 1))


def primes_over_k(p: int) -> list[GaussInt]:
    """Primary K-primes lying over the rational prime ``p``."""
    if p == 2:
        return [ONE_PLUS_I]
    if p % 4 == 3:
        return [GaussInt(p, 0)]
    g = _prime_above_k(p)
    return sorted([g, canon_k(g.conj())], key=lambda z: (z.re, z.im))


def valuation_k(z: GaussInt, p: GaussInt) -> tuple[int, GaussInt]:
    e = 0
    while True:
        q, r = divmod(z, p)
        if not r.is_zero():
            return e, z
        z, e = q, e + 1


def factor_k(z) -> KFactorization:
    """Complete factorization into primary K-primes, sorted by (norm, re, im)."""
    z = GaussInt.of(z)
    if z.is_zero():
        raise ValueError("cannot factor 0")
    rest = z
    out = []
    for p, _ in factor_int(z.norm()):
        for g in primes_over_k(p):
            e, rest = valuation_k(rest, g)
            if e:
                out.append((g, e))
    if not rest.is_unit():
        raise AssertionError(f"incomplete factorization of {z}")
    out.sort(key=lambda t: (t[0].norm(), t[0].re, t[0].im))
    return KFactorization(rest, tuple(out))


def is_squarefree_k(z) -> bool:
    return all(e == 1 for _, e in factor_k(z).factors)


def mobius_k(z) -> int:
    f = factor_k(z).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def is_prime_k(z) -> bool:
    z = GaussInt.of(z)
    f = factor_k(z).factors if not z.is_zero() and not z.is_unit() else ()
    return len(f) == 1 and f[0][1] == 1


def ideal_table_k(norm_bound: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arrays ``(re, im, norm)`` of the primary generator of every nonzero ideal
    of Z[i] with norm <= bound, sorted by norm then (re, im)."""
    r = isqrt(norm_bound)
    a = np.arange(1, r + 1, dtype=np.int64)
    b = np.arange(0, r + 1, dtype=np.int64)
    A, B = np.meshgrid(a, b, indexing="ij")
    N = A * A + B * B
    keep = N <= norm_bound
    A, B, N = A[keep], B[keep], N[keep]
    order = np.lexsort((B, A, N))
    return A[order], B[order], N[order]


def enumerate_k(norm_bound: int, predicate: Optional[Callable[[GaussInt], bool]] = None) -> Iterator[GaussInt]:
    """Yield one primary generator per nonzero ideal of norm <= bound.

    Order is nondecreasing norm, ties broken on (re, im).
    """
    if norm_bound < 1:
        return
    A, B, _ = ideal_table_k(norm_bound)
    for a, b in zip(A.tolist(), B.tolist()):
        z = GaussInt(a, b)
        if predicate is None or predicate(z):
            yield z


def coprime_to_6_k(z: GaussInt) -> bool:
    n = z.norm()
    return n % 2 == 1 and n % 3 != 0
