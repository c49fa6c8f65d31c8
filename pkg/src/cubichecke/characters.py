"""Primitive cubic characters chi_n of Z[i], Hecke characters psi_m of Z[zeta_12],
and characters of (O_F / 18)^x given by residue symbols (l0 / .)_3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Optional

import numpy as np

from ._arith import hnf_basis
from .cyclo import CycloInt, t_mod_int, t_mul, t_norm, t_pow, t_rel_norm, t_try_div
from .cyclo_ideals import admissible_ideals, factor_primes, primary_f, to_one_mod3
from .gauss import residue_box_f, residue_box_k
from .gaussian import GaussInt, canon_k, factor_k
from .symbol import CubicValue, _classes_mod18, symbol_def_exp, symbol_fast_exp


@dataclass(frozen=True)
class CubicCharacter:
    """chi_n : m -> (m/n)_3 on Z[i], primitive of conductor q = N_{F/K}(n)."""

    n: CycloInt
    q: GaussInt

    @classmethod
    def from_n(cls, n) -> "CubicCharacter":
        n = CycloInt.of(n)
        return cls(n, canon_k(GaussInt(*t_rel_norm(n.t))))

    @property
    def norm(self) -> int:
        return self.q.norm()

    @cached_property
    def primes(self):
        return factor_primes(self.n)

    def conj(self) -> "CubicCharacter":
        """chi-bar, defined by n^sigma."""
        return CubicCharacter.from_n(primary_f(self.n.sigma()))

    def __call__(self, m) -> CubicValue:
        return chi_eval(self, m)

    def exponents(self, re, im) -> np.ndarray:
        """Vectorized chi on a + b i: int8 exponents, -1 where chi vanishes."""
        coords = np.stack([np.asarray(re, dtype=np.int64), np.asarray(im, dtype=np.int64)], axis=1)
        return _exponents(self.primes, coords)


def _exponents(primes, coords: np.ndarray) -> np.ndarray:
    tot = np.zeros(coords.shape[0], dtype=np.int64)
    bad = np.zeros(coords.shape[0], dtype=bool)
    for P, e in primes:
        v = P.rmap.cubic_table()[P.rmap.reduce_index(coords)]
        bad |= v < 0
        tot += e * v.astype(np.int64)
    out = (tot % 3).astype(np.int8)
    out[bad] = -1
    return out


def chi_eval(chi: CubicCharacter, m) -> CubicValue:
    m = GaussInt.of(m)
    return CubicValue(symbol_fast_exp(CycloInt(m.re, m.im, 0, 0), chi.n))


def enumerate_cubic_chars(Q_min: int, Q_max: int) -> Iterator[CubicCharacter]:
    """One character per primitive cubic character of Z[i] with Q_min < N(q) <= Q_max."""
    if Q_min < 1 or Q_min > Q_max:
        raise ValueError("need 1 <= Q_min <= Q_max")
    for I in admissible_ideals(Q_max):
        if I.norm > Q_min:
            yield CubicCharacter.from_n(I.cyclo)


def chars_by_conductor(Q_max: int) -> dict[GaussInt, list[CubicCharacter]]:
    out: dict = {}
    for chi in enumerate_cubic_chars(1, Q_max):
        out.setdefault(chi.q, []).append(chi)
    return out


# ----------------------------------------------------------------------------
# group-theoretic oracles on (Z[i]/q)^x


def _units_mod(q: GaussInt) -> np.ndarray:
    """Representatives of (Z[i]/q)^x as an (M, 2) array."""
    A = residue_box_k(q)
    ok = np.ones(A.shape[0], dtype=bool)
    for p, _ in factor_k(q).factors:
        # p | a iff a * conj(p) = 0 mod N(p)
        N = p.norm()
        re = A[:, 0] * p.re + A[:, 1] * p.im
        im = A[:, 1] * p.re - A[:, 0] * p.im
        ok &= ~((re % N == 0) & (im % N == 0))
    return A[ok]


def _mulmod_k(a: np.ndarray, b: np.ndarray, q: GaussInt) -> np.ndarray:
    """Products mod q of rows of a and b, reduced into the residue box."""
    re = a[:, 0] * b[:, 0] - a[:, 1] * b[:, 1]
    im = a[:, 0] * b[:, 1] + a[:, 1] * b[:, 0]
    return _reduce_k(np.stack([re, im], axis=1), q)


def _reduce_k(x: np.ndarray, q: GaussInt) -> np.ndarray:
    """Reduce rows into the upper-triangular residue box of q."""
    (d0, s), (_, d1) = hnf_basis([[q.re, q.im], [-q.im, q.re]])
    k0 = np.floor_divide(x[:, 0], d0)
    re = x[:, 0] - k0 * d0
    im = x[:, 1] - k0 * s
    im = im - np.floor_divide(im, d1) * d1
    return np.stack([re, im], axis=1)


def cube_roots_of_unity_count(d) -> int:
    """#{x in (Z[i]/d)^x : x^3 = 1}, by brute force."""
    d = GaussInt.of(d)
    if d.norm() == 1:
        return 1
    U = _units_mod(d)
    x3 = _mulmod_k(_mulmod_k(U, U, d), U, d)
    one = _reduce_k(np.array([[1, 0]], dtype=np.int64), d)[0]
    return int(np.sum((x3[:, 0] == one[0]) & (x3[:, 1] == one[1])))


def _divisors_k(q: GaussInt) -> list[tuple[GaussInt, int]]:
    """(d, mu(q/d)) for the divisors d of q (up to units)."""
    f = factor_k(q).factors
    out = [(GaussInt(1, 0), 1, [])]
    for p, e in f:
        nxt = []
        for d, _, exps in out:
            for k in range(e + 1):
                nxt.append((d * p**k, 0, exps + [e - k]))
        out = nxt
    res = []
    for d, _, exps in out:
        if any(x > 1 for x in exps):
            mu = 0
        else:
            mu = -1 if sum(exps) % 2 else 1
        res.append((canon_k(d), mu))
    return res


def census_primitive(q) -> int:
    """Number of primitive characters of (Z[i]/q)^x of order exactly 3.

    Moebius inversion over divisors of the number of characters with chi^3 = 1,
    which equals the number of cube roots of unity in (Z[i]/d)^x.
    """
    q = GaussInt.of(q)
    tot = 0
    for d, mu in _divisors_k(q):
        if mu:
            tot += mu * cube_roots_of_unity_count(d)
    return tot if q.norm() > 1 else 0


def census_total(Q_max: int, Q_min: int = 1) -> int:
    """Sum of :func:`census_primitive` over primary q coprime to 6 with Q_min < N(q) <= Q_max."""
    from .gaussian import coprime_to_6_k, enumerate_k

    tot = 0
    for q in enumerate_k(Q_max, coprime_to_6_k):
        if q.norm() > Q_min:
            tot += census_primitive(q)
    return tot


def _dlog_table(p: GaussInt) -> tuple[dict, int]:
    """Discrete logarithms on (Z[i]/p)^x for a prime p, keyed by reduced (re, im)."""
    N = p.norm()
    order = N - 1
    U = _units_mod(p)
    for g in U:
        g = GaussInt(int(g[0]), int(g[1]))
        table, x = {}, GaussInt(1, 0)
        for k in range(order):
            r = _reduce_k(np.array([[x.re, x.im]], dtype=np.int64), p)[0]
            key = (int(r[0]), int(r[1]))
            if key in table:
                break
            table[key] = k
            x = (x * g) % p
        if len(table) == order:
            return table, order
    raise AssertionError("no generator found")


def order3_primitive_tables(q) -> tuple[np.ndarray, list[np.ndarray]]:
    """All primitive order-3 characters of (Z[i]/q)^x as exponent vectors on the unit group.

    Built from discrete logarithms prime by prime; returns the unit
    representatives and one int8 vector per character.
    """
    q = GaussInt.of(q)
    U = _units_mod(q)
    per_prime = []
    for p, e in factor_k(q).factors:
        if e != 1 or (p.norm() - 1) % 3:
            return U, []
        table, order = _dlog_table(p)
        r = _reduce_k(U, p)
        logs = np.array([table[(int(a), int(b))] for a, b in r], dtype=np.int64)
        per_prime.append(logs % 3)
    out = [np.zeros(U.shape[0], dtype=np.int64)]
    for base in per_prime:
        out = [(v + c * base) % 3 for v in out for c in (1, 2)]
    return U, [v.astype(np.int8) for v in out]


def is_primitive_direct(chi: CubicCharacter) -> bool:
    """True if chi does not factor through (Z[i]/q')^x for any proper divisor q' of q."""
    q = chi.q
    U = _units_mod(q)
    vals = chi.exponents(U[:, 0], U[:, 1])
    for p, _ in factor_k(q).factors:
        qp = q.exact_div(p)
        # elements = 1 mod q/p
        x = U[:, 0] - 1
        y = U[:, 1]
        N = qp.norm()
        re = x * qp.re + y * qp.im
        im = y * qp.re - x * qp.im
        mask = (re % N == 0) & (im % N == 0)
        if np.all(vals[mask] == 0):
            return False
    return True


# ----------------------------------------------------------------------------
# residue-symbol characters of (O_F / 18)^x


def _lifts(cls: tuple, count: int):
    a, b, c, d = cls
    steps = [(18, 0, 0, 0), (0, 18, 0, 0), (0, 0, 18, 0), (0, 0, 0, 18), (-18, 0, 0, 0), (36, 18, 0, 0)]
    yield cls
    for s in steps[: count - 1]:
        yield (a + s[0], b + s[1], c + s[2], d + s[3])


@dataclass(frozen=True)
class Lambda18:
    """n -> (l0/n)_3 on primary n coprime to 2, tabulated on n mod 18."""

    l0: CycloInt
    table: dict = field(repr=False, compare=False)

    def exp(self, n) -> int:
        return self.table[t_mod_int(CycloInt.of(n).t, 18)]

    def __call__(self, n) -> CubicValue:
        return CubicValue(self.exp(n))


def lambda_from_generators(l0, reps: int = 5) -> Lambda18:
    """The table of (l0/n)_3 over primary classes mod 18, checked on ``reps`` lifts per class.

    l0 must be a product of a unit, powers of sqrt(3) and powers of 1+i; the
    symbol is then a function of n mod 18, and disagreement raises.
    """
    l0 = CycloInt.of(l0)
    rest = l0.t
    for g in ((0, -1, 0, -2), (1, 1, 0, 0)):
        while True:
            q = t_try_div(rest, g)
            if q is None:
                break
            rest = q
    if t_norm(rest) != 1:
        raise ValueError(f"{l0} is not supported on units, sqrt3 and 1+i")
    table = {}
    for cls in _classes_mod18():
        vals = {symbol_def_exp(l0, CycloInt(*x)) for x in _lifts(cls, reps)}
        if len(vals) != 1:
            raise ArithmeticError(f"({l0}/n) is not a function of n mod 18 at class {cls}")
        table[cls] = vals.pop()
    return Lambda18(l0, table)


# ----------------------------------------------------------------------------
# psi_m


_SQ3 = (0, -1, 0, -2)
_OPI = (1, 1, 0, 0)


@dataclass(frozen=True)
class HeckePsi:
    """psi_m((n)) = (m/n)_3 on ideals of Z[zeta_12] coprime to 6.

    ``m_odd`` is the part of m coprime to 6 (a Z[i] element).  The exact
    conductor is (1+i)^a2 sqrt(3)^b3 m_odd; ``conductor_lower`` and
    ``conductor_upper`` are m/(3,m) and 9m.
    """

    m: GaussInt
    m_odd: GaussInt
    conductor_lower: CycloInt
    conductor_upper: CycloInt

    @classmethod
    def of(cls, m) -> "HeckePsi":
        m = GaussInt.of(m)
        if m.is_zero():
            raise ValueError("m must be nonzero")
        fk = factor_k(m).factors
        if any(e > 1 for _, e in fk):
            raise ValueError(f"{m} is not square-free")
        odd = GaussInt(1, 0)
        three = 1
        for p, _ in fk:
            if p.norm() % 2 and p.norm() % 3:
                odd = odd * p
            elif p.norm() == 9:
                three = 3
        low = m.exact_div(GaussInt(3, 0)) if three == 3 else m
        lower = CycloInt(low.re, low.im, 0, 0)
        upper = CycloInt(m.re, m.im, 0, 0) * 9
        return cls(m, odd, lower, upper)

    @property
    def mt(self) -> tuple:
        return (self.m.re, self.m.im, 0, 0)

    def exp(self, n) -> Optional[int]:
        """Exponent of psi_m((n)) for n coprime to 6, None when (n, m) != 1."""
        n = CycloInt.of(n)
        N = t_norm(n.t)
        if N % 2 == 0 or N % 3 == 0:
            raise ValueError("psi_m is defined on ideals coprime to 6")
        return symbol_fast_exp(self.mt, to_one_mod3(n.t))

    def __call__(self, n) -> CubicValue:
        return CubicValue(self.exp(n))

    def prime_exp(self, P) -> Optional[int]:
        """psi_m at a prime ideal coprime to 6, from its residue map."""
        return P.rmap.cubic_exponent(self.mt)

    @cached_property
    def conductor_parts(self) -> tuple[int, int]:
        """(a2, b3): exponents of 1+i and sqrt(3) in the exact conductor."""
        return _conductor_parts(self.m)

    @property
    def conductor(self) -> CycloInt:
        a2, b3 = self.conductor_parts
        g = t_mul(t_pow(_OPI, a2), t_pow(_SQ3, b3))
        return CycloInt(*t_mul(g, (self.m_odd.re, self.m_odd.im, 0, 0)))

    @property
    def conductor_norm(self) -> int:
        a2, b3 = self.conductor_parts
        return 4**a2 * 9**b3 * self.m_odd.norm() ** 2

    def is_principal(self) -> bool:
        return self.conductor_norm == 1

    def primitive_exp(self, x) -> Optional[int]:
        """Exponent of the primitive character attached to psi_m at the ideal (x), x coprime to the conductor."""
        x = CycloInt.of(x).t
        f = self.conductor.t
        if t_norm(x) % 2 and t_norm(x) % 3:
            return self.exp(CycloInt(*x))
        # lift x mod f to an element coprime to 6
        for k in _small_elements():
            y = tuple(a + b for a, b in zip(x, t_mul(f, k)))
            N = t_norm(y)
            if N and N % 2 and N % 3:
                return self.exp(CycloInt(*y))
        raise ArithmeticError("no lift coprime to 6 found")


@lru_cache(maxsize=1)
def _small_elements() -> tuple:
    from itertools import product

    return tuple(k for k in product(range(-2, 3), repeat=4))


def _valid_exponent(vals: list[tuple[tuple, int]], g: tuple, emax: int) -> int:
    """Smallest a with psi trivial on every k divisible by g^a (vals: (k, exponent))."""
    for a in range(emax + 1):
        ga = t_pow(g, a)
        if all(e == 0 for k, e in vals if not any(k) or t_try_div(k, ga) is not None):
            return a
    raise ArithmeticError("psi_m is not a ray class character mod 18 m")


@lru_cache(maxsize=4096)
def _conductor_parts(m: GaussInt) -> tuple[int, int]:
    fk = factor_k(m).factors
    odd = GaussInt(1, 0)
    for p, _ in fk:
        if p.norm() % 2 and p.norm() % 3:
            odd = odd * p
    M = (odd.re, odd.im, 0, 0)
    mt = (m.re, m.im, 0, 0)

    def psi(alpha):
        return symbol_fast_exp(mt, to_one_mod3(alpha))

    # 2-part: alpha = 1 + 9 M k, k mod 2
    base2 = t_mul((9, 0, 0, 0), M)
    vals2 = []
    for k in residue_box_f(2).tolist():
        k = tuple(k)
        al = tuple(a + b for a, b in zip((1, 0, 0, 0), t_mul(base2, k)))
        if t_norm(al) % 2:
            vals2.append((k, psi(al)))
    a2 = _valid_exponent(vals2, _OPI, 2)
    # 3-part: alpha = 1 + 2 M k, k mod 9
    base3 = t_mul((2, 0, 0, 0), M)
    vals3 = []
    for k in residue_box_f(9).tolist():
        k = tuple(k)
        al = tuple(a + b for a, b in zip((1, 0, 0, 0), t_mul(base3, k)))
        if t_norm(al) % 3:
            vals3.append((k, psi(al)))
    b3 = _valid_exponent(vals3, _SQ3, 4)
    return a2, b3


def psi_eval(psi: HeckePsi, n) -> CubicValue:
    return psi(n)


def lambda_for_m(m) -> Lambda18:
    """lambda_m = (l0/.)_3 where l0 = m / prod of the 1 mod 3 associates of its odd K-primes."""
    m = GaussInt.of(m)
    rest = (m.re, m.im, 0, 0)
    for p, e in factor_k(m).factors:
        if p.norm() % 2 and p.norm() % 3:
            pp = to_one_mod3((p.re, p.im, 0, 0))
            for _ in range(e):
                rest = t_try_div(rest, pp)
    return lambda_from_generators(CycloInt(*rest))
