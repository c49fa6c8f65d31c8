"""Exact arithmetic in Z[zeta_12] on the integral basis {1, i, w, iw}.

Here ``w`` is the primitive cube root of unity ``zeta_12**4`` (so
``w**2 = -1 - w``) and ``i = zeta_12**3``.  An element ``a + b i + c w + d iw``
is stored as the integer 4-tuple ``(a, b, c, d)``.  Writing it as ``x + y w``
with ``x = a + b i`` and ``y = c + d i`` in Z[i] turns most operations into
Gaussian-integer arithmetic; the hot paths below work on raw tuples.
"""
from __future__ import annotations

import cmath
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .gaussian import GaussInt

Tup = tuple  # (a, b, c, d)


# ----------------------------------------------------------------------------
# raw tuple arithmetic


def t_add(u: Tup, v: Tup) -> Tup:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3])


def t_sub(u: Tup, v: Tup) -> Tup:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2], u[3] - v[3])


def t_neg(u: Tup) -> Tup:
    return (-u[0], -u[1], -u[2], -u[3])


def t_scale(u: Tup, k: int) -> Tup:
    return (u[0] * k, u[1] * k, u[2] * k, u[3] * k)


def t_mul(u: Tup, v: Tup) -> Tup:
    a, b, c, d = u
    e, f, g, h = v
    # (x + y w)(x' + y' w) = (x x' - y y') + (x y' + x' y - y y') w
    xx0, xx1 = a * e - b * f, a * f + b * e
    yy0, yy1 = c * g - d * h, c * h + d * g
    m0 = a * g - b * h + e * c - f * d
    m1 = a * h + b * g + e * d + f * c
    return (xx0 - yy0, xx1 - yy1, m0 - yy0, m1 - yy1)


def t_pow(u: Tup, e: int) -> Tup:
    if e < 0:
        return t_pow(t_inv_unit(u), -e)
    out, base = (1, 0, 0, 0), u
    while e:
        if e & 1:
            out = t_mul(out, base)
        base = t_mul(base, base)
        e >>= 1
    return out


def t_sigma(u: Tup) -> Tup:
    """Automorphism fixing i and sending w to w^2."""
    a, b, c, d = u
    return (a - c, b - d, -c, -d)


def t_tau(u: Tup) -> Tup:
    """Automorphism sending i to -i and fixing w."""
    a, b, c, d = u
    return (a, -b, c, -d)


def t_rel_norm(u: Tup) -> tuple[int, int]:
    """N_{F/K}(u) = u * sigma(u) = x^2 - x y + y^2 as a Gaussian pair."""
    a, b, c, d = u
    x2r, x2i = a * a - b * b, 2 * a * b
    xyr, xyi = a * c - b * d, a * d + b * c
    y2r, y2i = c * c - d * d, 2 * c * d
    return (x2r - xyr + y2r, x2i - xyi + y2i)


def t_norm(u: Tup) -> int:
    r, i = t_rel_norm(u)
    return r * r + i * i


def t_trace(u: Tup) -> int:
    return 4 * u[0] - 2 * u[2]


def t_is_zero(u: Tup) -> bool:
    return u[0] == 0 and u[1] == 0 and u[2] == 0 and u[3] == 0


def t_numerator(u: Tup, v: Tup) -> tuple[Tup, int]:
    """Return ``(t, D)`` with ``u / v = t / D`` exactly and ``D = N_F(v) > 0``."""
    br, bi = t_rel_norm(v)
    D = br * br + bi * bi
    if D == 0:
        raise ZeroDivisionError("division by 0 in Z[zeta_12]")
    w = t_mul(u, t_sigma(v))
    # multiply by conj(beta) (a Gaussian integer, embedded as (br, -bi, 0, 0))
    return t_mul(w, (br, -bi, 0, 0)), D


def _rdiv(a: int, b: int) -> int:
    return (2 * a + b) // (2 * b)


_OFFSETS = [o for o in product((-1, 0, 1), repeat=4) if any(o)]


def t_divmod(u: Tup, v: Tup) -> tuple[Tup, Tup]:
    """Euclidean division with ``N(r) < N(v)``.

    Nearest-integer rounding of the exact quotient, then a search over the
    offsets {-1, 0, 1}^4 if the remainder is not small enough.
    """
    t, D = t_numerator(u, v)
    q = (_rdiv(t[0], D), _rdiv(t[1], D), _rdiv(t[2], D), _rdiv(t[3], D))
    r = t_sub(u, t_mul(q, v))
    nv = D
    nr = t_norm(r)
    if nr < nv:
        return q, r
    best = (nr, q, r)
    for o in _OFFSETS:
        q2 = t_add(q, o)
        r2 = t_sub(u, t_mul(q2, v))
        n2 = t_norm(r2)
        if n2 < best[0]:
            best = (n2, q2, r2)
    if best[0] >= nv:
        raise ArithmeticError(f"no reducing quotient found for {u} / {v}")
    return best[1], best[2]


def t_mod(u: Tup, v: Tup) -> Tup:
    return t_divmod(u, v)[1]


def t_exact_div(u: Tup, v: Tup) -> Tup:
    t, D = t_numerator(u, v)
    if t[0] % D or t[1] % D or t[2] % D or t[3] % D:
        raise ArithmeticError(f"{v} does not divide {u}")
    return (t[0] // D, t[1] // D, t[2] // D, t[3] // D)


def t_divides(v: Tup, u: Tup) -> bool:
    t, D = t_numerator(u, v)
    return not (t[0] % D or t[1] % D or t[2] % D or t[3] % D)


def t_try_div(u: Tup, v: Tup):
    t, D = t_numerator(u, v)
    if t[0] % D or t[1] % D or t[2] % D or t[3] % D:
        return None
    return (t[0] // D, t[1] // D, t[2] // D, t[3] // D)


def t_gcd(u: Tup, v: Tup) -> Tup:
    while not t_is_zero(v):
        u, v = v, t_mod(u, v)
    return u


def t_inv_unit(u: Tup) -> Tup:
    return t_exact_div((1, 0, 0, 0), u)


def t_mod_int(u: Tup, m: int) -> Tup:
    return (u[0] % m, u[1] % m, u[2] % m, u[3] % m)


def t_is_one_mod3(u: Tup) -> bool:
    return (u[0] - 1) % 3 == 0 and u[1] % 3 == 0 and u[2] % 3 == 0 and u[3] % 3 == 0


# complex embeddings: PHI1 sends zeta_12 to exp(2 pi i/12), PHI2 = PHI1 o sigma
_W1 = cmath.exp(2j * math.pi / 3)
_W2 = _W1.conjugate()


def t_embed(u: Tup) -> tuple[complex, complex]:
    a, b, c, d = u
    x = complex(a, b)
    y = complex(c, d)
    return x + y * _W1, x + y * _W2


def t_log_abs(u: Tup) -> tuple[float, float]:
    """log |phi_1(u)|, log |phi_2(u)| without float overflow for large coordinates."""
    m = max(abs(int(v)) for v in u)
    if m == 0:
        return (-math.inf, -math.inf)
    s = m.bit_length() - 52 if m.bit_length() > 52 else 0
    a, b, c, d = (v / 2.0**s if s else float(v) for v in u)
    x, y = complex(a, b), complex(c, d)
    l1 = abs(x + y * _W1)
    l2 = abs(x + y * _W2)
    off = s * math.log(2.0)
    return (math.log(l1) + off if l1 else -math.inf, math.log(l2) + off if l2 else -math.inf)


# ----------------------------------------------------------------------------
# the value type


@dataclass(frozen=True, slots=True)
class CycloInt:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, z) -> "CycloInt":
        if isinstance(z, CycloInt):
            return z
        if isinstance(z, int):
            return cls(z, 0, 0, 0)
        if isinstance(z, GaussInt):
            return cls(z.re, z.im, 0, 0)
        if isinstance(z, str):
            return parse_cyclo(z)
        a, b, c, d = z
        return cls(int(a), int(b), int(c), int(d))

    @property
    def t(self) -> Tup:
        return (self.a, self.b, self.c, self.d)

    def __iter__(self):
        return iter(self.t)

    def __add__(self, o):
        return CycloInt(*t_add(self.t, CycloInt.of(o).t))

    __radd__ = __add__

    def __sub__(self, o):
        return CycloInt(*t_sub(self.t, CycloInt.of(o).t))

    def __rsub__(self, o):
        return CycloInt.of(o) - self

    def __neg__(self):
        return CycloInt(*t_neg(self.t))

    def __mul__(self, o):
        return CycloInt(*t_mul(self.t, CycloInt.of(o).t))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return CycloInt(*t_pow(self.t, e))

    def __divmod__(self, o):
        q, r = t_divmod(self.t, CycloInt.of(o).t)
        return CycloInt(*q), CycloInt(*r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def exact_div(self, o) -> "CycloInt":
        return CycloInt(*t_exact_div(self.t, CycloInt.of(o).t))

    def divides(self, o) -> bool:
        o = CycloInt.of(o)
        if self.is_zero():
            return o.is_zero()
        return t_divides(self.t, o.t)

    def is_zero(self) -> bool:
        return t_is_zero(self.t)

    def is_unit(self) -> bool:
        return t_norm(self.t) == 1

    def norm(self) -> int:
        return t_norm(self.t)

    def sigma(self) -> "CycloInt":
        return CycloInt(*t_sigma(self.t))

    def tau(self) -> "CycloInt":
        return CycloInt(*t_tau(self.t))

    def conj(self) -> "CycloInt":
        return CycloInt(*t_sigma(t_tau(self.t)))

    def in_k(self) -> bool:
        return self.c == 0 and self.d == 0

    def to_gauss(self) -> GaussInt:
        if not self.in_k():
            raise ValueError(f"{self} is not in Z[i]")
        return GaussInt(self.a, self.b)

    def embed(self) -> tuple[complex, complex]:
        return t_embed(self.t)

    def __str__(self):
        return format_cyclo(self)

    def __repr__(self):
        return f"CycloInt({self.a}, {self.b}, {self.c}, {self.d})"


def parse_cyclo(text) -> CycloInt:
    """Parse ``"(a,b,c,d)"`` or a JSON array ``[a,b,c,d]``."""
    if isinstance(text, (list, tuple)):
        return CycloInt(*(int(v) for v in text))
    s = text.strip()
    if s.startswith("["):
        return CycloInt(*(int(v) for v in json.loads(s)))
    m = re.fullmatch(r"\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)", s)
    if m is None:
        raise ValueError(f"cannot parse Z[zeta_12] element {text!r}")
    return CycloInt(*(int(g) for g in m.groups()))


def format_cyclo(z: CycloInt) -> str:
    return f"({z.a},{z.b},{z.c},{z.d})"


ZERO = CycloInt(0, 0, 0, 0)
ONE = CycloInt(1, 0, 0, 0)
I = CycloInt(0, 1, 0, 0)
OMEGA = CycloInt(0, 0, 1, 0)
ZETA = CycloInt(0, 0, 0, -1)  # zeta_12 = -i w
SQRT3 = CycloInt(0, -1, 0, -2)  # -i (1 + 2w)
DELTA_F = CycloInt(2, 0, 4, 0)  # 2 sqrt(3) i
EPS = CycloInt(1, 0, 1, -1)  # (1 + sqrt 3) / (1 - i)
ONE_PLUS_I = CycloInt(1, 1, 0, 0)
ONE_MINUS_OMEGA = CycloInt(1, 0, -1, 0)

ZETA_POWERS: tuple[Tup, ...] = tuple(t_pow(ZETA.t, j) for j in range(12))

# constant sanity: w^2 = -1 - w, sqrt3^2 = 3, N(delta_F) = 144, eps a unit
assert t_mul(OMEGA.t, OMEGA.t) == (-1, 0, -1, 0)
assert t_mul(SQRT3.t, SQRT3.t) == (3, 0, 0, 0)
assert t_norm(DELTA_F.t) == 144
assert t_norm(EPS.t) == 1
assert t_mul(t_add(ONE.t, SQRT3.t), (1, 1, 0, 0)) == t_scale(EPS.t, 2)
assert ZETA_POWERS[3] == I.t and ZETA_POWERS[4] == OMEGA.t


def galois_sigma(n) -> CycloInt:
    return CycloInt.of(n).sigma()


def galois_tau(n) -> CycloInt:
    return CycloInt.of(n).tau()


def norm_f(n) -> int:
    return t_norm(CycloInt.of(n).t)


def norm_f_to_k(n) -> GaussInt:
    return GaussInt(*t_rel_norm(CycloInt.of(n).t))


def trace_f_to_k(n) -> GaussInt:
    a, b, c, d = CycloInt.of(n).t
    return GaussInt(2 * a - c, 2 * b - d)


def trace_f(n) -> int:
    return t_trace(CycloInt.of(n).t)


def trace_f_exact(num: Tup, den: Tup) -> Fraction:
    """Tr_F(num / den) as an exact rational."""
    t, D = t_numerator(num, den)
    return Fraction(t_trace(t), D)


def divmod_f(a, b) -> tuple[CycloInt, CycloInt]:
    return divmod(CycloInt.of(a), CycloInt.of(b))


def gcd_f(a, b) -> CycloInt:
    a, b = CycloInt.of(a), CycloInt.of(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return CycloInt(*t_gcd(a.t, b.t))


# ----------------------------------------------------------------------------
# units


_LOG_EPS = math.log(abs(t_embed(EPS.t)[0]))


@dataclass(frozen=True)
class UnitF:
    """The unit zeta_12**zeta_exp * eps**eps_exp."""

    zeta_exp: int
    eps_exp: int

    def __post_init__(self):
        object.__setattr__(self, "zeta_exp", self.zeta_exp % 12)

    def __mul__(self, o: "UnitF") -> "UnitF":
        return UnitF(self.zeta_exp + o.zeta_exp, self.eps_exp + o.eps_exp)

    def inverse(self) -> "UnitF":
        return UnitF(-self.zeta_exp, -self.eps_exp)

    def value(self) -> CycloInt:
        return CycloInt(*t_unit_value(self.zeta_exp, self.eps_exp))


def t_unit_value(j: int, k: int) -> Tup:
    return t_mul(ZETA_POWERS[j % 12], t_pow(EPS.t, k))


def unit_decompose(u) -> UnitF:
    """Write a unit as zeta_12^j * eps^k."""
    u = CycloInt.of(u)
    if not u.is_unit():
        raise ValueError(f"{u} is not a unit")
    l1, _ = t_log_abs(u.t)
    k0 = round(l1 / _LOG_EPS)
    for k in (k0, k0 - 1, k0 + 1):
        rest = t_mul(u.t, t_pow(EPS.t, -k)) if k else u.t
        for j, z in enumerate(ZETA_POWERS):
            if rest == z:
                return UnitF(j, k)
    raise ArithmeticError(f"could not decompose unit {u}")
