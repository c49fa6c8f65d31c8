"""Prime ideals, factorization, primary generators and ideal enumeration in Z[zeta_12].

Each prime ideal gets one stored generator.  Primes coprime to 3 are stored by
their canonical primary generator (congruent to 1 mod 3); the prime above 3 is
stored as sqrt(3).  Composite primary generators are products of stored ones.
"""
from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from ._arith import factor_int, primes_upto
from .cyclo import (
    SQRT3,
    ZETA_POWERS,
    CycloInt,
    t_divides,
    t_exact_div,
    t_gcd,
    t_is_one_mod3,
    t_log_abs,
    t_mod_int,
    t_mul,
    t_norm,
    t_pow,
    t_sigma,
    t_try_div,
    t_unit_value,
    unit_decompose,
)
from .gaussian import GaussInt, primes_over_k
from .residue import FiniteField, ResidueMap, residue_degree, zeta_images

Tup = tuple

_ZETA2 = (1, 0, 1, 0)
_ZETA = (0, 0, 0, -1)


# ----------------------------------------------------------------------------
# units congruent to 1 mod 3


@lru_cache(maxsize=None)
def _u1_generator() -> tuple[int, int, Tup]:
    """(a, b, eta) with eta = zeta^a eps^b generating the units = 1 mod 3 modulo torsion.

    The only root of unity that is 1 mod 3 is 1, so this group is infinite cyclic.
    """
    b = 1
    while True:
        for a in range(12):
            u = t_unit_value(a, b)
            if t_is_one_mod3(u):
                return a, b, u
        b += 1


def u1_generator() -> CycloInt:
    return CycloInt(*_u1_generator()[2])


@lru_cache(maxsize=None)
def _unit_reps_mod3() -> tuple[tuple[Tup, Tup], ...]:
    """Pairs (u mod 3, u) for unit coset representatives of U_F / U_1."""
    _, b, _ = _u1_generator()
    out = []
    for k in range(b):
        for j in range(12):
            u = t_unit_value(j, k)
            out.append((t_mod_int(u, 3), u))
    return tuple(out)


def _mul_mod3(u: Tup, v: Tup) -> Tup:
    return t_mod_int(t_mul(u, v), 3)


def to_one_mod3(g: Tup) -> Tup:
    """Some unit multiple of g that is 1 mod 3 (g coprime to 3)."""
    gm = t_mod_int(g, 3)
    for um, u in _unit_reps_mod3():
        if _mul_mod3(um, gm) == (1, 0, 0, 0):
            return t_mul(u, g)
    raise ValueError(f"{g} is not coprime to 3")


# tie-break rules for the canonical primary generator of a prime
_RULES = ("balanced", "shifted")
_state = threading.local()


def _rule() -> str:
    return getattr(_state, "rule", "balanced")


@contextmanager
def primary_choice(rule: str):
    """Temporarily switch the canonical prime-generator rule.

    ``"balanced"`` (default) minimises max(|phi_1|, |phi_2|) over the coset
    g * U_1; ``"shifted"`` multiplies that choice by the generator of U_1.  The
    second rule exists only to test that downstream results do not depend on
    the choice.
    """
    if rule not in _RULES:
        raise ValueError(f"unknown rule {rule!r}")
    old = _rule()
    _state.rule = rule
    try:
        yield
    finally:
        _state.rule = old


def balance_primary(g: Tup, rule: Optional[str] = None) -> Tup:
    """Canonical generator, among g * U_1, for an element g = 1 mod 3."""
    rule = rule or _rule()
    _, _, eta = _u1_generator()
    L = t_log_abs(eta)[0]
    l1, l2 = t_log_abs(g)
    k0 = (l2 - l1) / (2 * L)
    cands = []
    for k in {math.floor(k0), math.ceil(k0)}:
        x = t_mul(g, t_pow(eta, k)) if k >= 0 else t_exact_div(g, t_pow(eta, -k))
        a1, a2 = t_log_abs(x)
        cands.append((round(max(a1, a2), 9), x))
    cands.sort()
    best = min(x for s, x in cands if s == cands[0][0])
    if rule == "shifted":
        best = t_mul(best, eta)
    return best


# ----------------------------------------------------------------------------
# prime ideals


@dataclass(frozen=True, eq=False)
class PrimeF:
    """A prime ideal of O_F with its stored generator and residue map."""

    gen: Tup
    p: int
    f: int
    rmap: ResidueMap
    kprime: GaussInt  # the O_K prime below
    ktype: str  # "split", "inert" or "ramified" relative to K
    index: int = 0  # position among the primes over p

    @property
    def norm(self) -> int:
        return self.p**self.f

    @property
    def cyclo(self) -> CycloInt:
        return CycloInt(*self.gen)

    def __repr__(self):
        return f"PrimeF({self.gen}, N={self.norm}, {self.ktype})"


def _orbit_generator(p: int, F: FiniteField, z) -> Tup:
    if F.f == 1:
        return (-z[0], 0, 0, -1)  # zeta - r
    zp = F.pow(z, p)
    s = F.add(z, zp)
    n = F.mul(z, zp)
    assert s[1] == 0 and n[1] == 0
    # zeta^2 - s zeta + n
    return (_ZETA2[0] + n[0], 0, 1, s[0])


def _primes_over_uncached(p: int, rule: str) -> tuple[PrimeF, ...]:
    F, zs = zeta_images(p)
    f = residue_degree(p)
    gens = []
    if p == 2:
        gens.append(balance_primary(to_one_mod3((1, 1, 0, 0)), rule))
    elif p == 3:
        gens.append(SQRT3.t)
    else:
        for z in zs:
            g = t_gcd((p, 0, 0, 0), _orbit_generator(p, F, z))
            assert t_norm(g) == p**f, (p, z, g)
            gens.append(balance_primary(to_one_mod3(g), rule))
    kps = primes_over_k(p)
    out = []
    for idx, (g, z) in enumerate(zip(gens, zs)):
        kp = next(k for k in kps if t_divides(g, (k.re, k.im, 0, 0)))
        if p == 3:
            kt = "ramified"
        elif kp.norm() == p**f:
            kt = "split"
        else:
            kt = "inert"
        out.append(PrimeF(g, p, f, ResidueMap(F, z), kp, kt, idx))
    return tuple(out)


_PRIME_LOCK = threading.Lock()
_PRIME_TABLE: dict = {}


def primes_over(p: int) -> tuple[PrimeF, ...]:
    """Prime ideals of O_F over the rational prime p, with stored generators.

    The table is append-only; the first computed choice wins.
    """
    key = (_rule(), p)
    got = _PRIME_TABLE.get(key)
    if got is None:
        val = _primes_over_uncached(p, key[0])
        with _PRIME_LOCK:
            got = _PRIME_TABLE.setdefault(key, val)
    return got


def sigma_prime(P: PrimeF) -> PrimeF:
    """The prime P^sigma."""
    sg = t_sigma(P.gen)
    for Q in primes_over(P.p):
        if t_divides(Q.gen, sg):
            return Q
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def _prime_list(bound: int, rule: str) -> tuple[PrimeF, ...]:
    with primary_choice(rule):
        out = []
        for p in primes_upto(bound).tolist():
            f = residue_degree(p)
            if p**f > bound:
                continue
            out.extend(primes_over(p))
    out.sort(key=lambda P: (P.norm, P.gen))
    return tuple(out)


def prime_ideals_f(norm_bound: int) -> tuple[PrimeF, ...]:
    """All prime ideals of norm <= bound, sorted by (norm, generator)."""
    return _prime_list(int(norm_bound), _rule())


# ----------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class FFactorization:
    unit: CycloInt
    factors: tuple[tuple[CycloInt, int], ...]
    primes: tuple[tuple[PrimeF, int], ...] = field(repr=False, compare=False, default=())

    def value(self) -> CycloInt:
        out = self.unit
        for g, e in self.factors:
            out = out * g**e
        return out


def _valuation(x: Tup, g: Tup) -> tuple[int, Tup]:
    e = 0
    while True:
        q = t_try_div(x, g)
        if q is None:
            return e, x
        x, e = q, e + 1


@lru_cache(maxsize=200_000)
def _factor_tuple(x: Tup, rule: str) -> tuple[Tup, tuple[tuple[PrimeF, int], ...]]:
    with primary_choice(rule):
        rest = x
        out = []
        for p, _ in factor_int(t_norm(x)):
            for P in primes_over(p):
                e, rest = _valuation(rest, P.gen)
                if e:
                    out.append((P, e))
    if t_norm(rest) != 1:
        raise AssertionError(f"incomplete factorization of {x}")
    out.sort(key=lambda t: (t[0].norm, t[0].gen))
    return rest, tuple(out)


def factor_primes(n) -> tuple[tuple[PrimeF, int], ...]:
    n = CycloInt.of(n)
    if n.is_zero():
        raise ValueError("cannot factor 0")
    return _factor_tuple(n.t, _rule())[1]


def factor_f(n) -> FFactorization:
    """Factor n into stored prime generators times a unit."""
    n = CycloInt.of(n)
    if n.is_zero():
        raise ValueError("cannot factor 0")
    unit, ps = _factor_tuple(n.t, _rule())
    return FFactorization(CycloInt(*unit), tuple((P.cyclo, e) for P, e in ps), ps)


def primary_f(n) -> CycloInt:
    """The canonical primary generator of (n): the product of stored prime generators."""
    n = CycloInt.of(n)
    if n.is_zero():
        raise ValueError("0 has no primary generator")
    if t_norm(n.t) % 3 == 0:
        raise ValueError(f"{n} is not coprime to 3")
    out = (1, 0, 0, 0)
    for P, e in factor_primes(n):
        out = t_mul(out, t_pow(P.gen, e))
    return CycloInt(*out)


def is_primary(n) -> bool:
    return t_is_one_mod3(CycloInt.of(n).t)


def is_squarefree_f(n) -> bool:
    return all(e == 1 for _, e in factor_primes(n))


def mobius_f(n) -> int:
    fs = factor_primes(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def _divisible_by_k_prime(exps: dict) -> bool:
    """exps maps PrimeF -> exponent.  True if some O_K prime divides the product."""
    for P, e in exps.items():
        if P.ktype == "inert":
            return True
        if P.ktype == "ramified":
            if e >= 2:
                return True
        elif exps.get(sigma_prime(P), 0) >= 1:
            return True
    return False


def has_k_rational_prime_divisor(n) -> bool:
    return _divisible_by_k_prime(dict(factor_primes(n)))


def unit_part(n) -> tuple[int, int]:
    """(j, k) with n = zeta^j eps^k * (product of stored primes)."""
    u = factor_f(n).unit
    d = unit_decompose(u)
    return d.zeta_exp, d.eps_exp


# ----------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class IdealF:
    """An enumerated ideal: its generator (product of stored primes), norm, and factorization."""

    gen: Tup
    norm: int
    factors: tuple[tuple[PrimeF, int], ...]

    @property
    def cyclo(self) -> CycloInt:
        return CycloInt(*self.gen)


def _admissible_primes(bound: int, coprime6: bool) -> list[PrimeF]:
    ps = prime_ideals_f(bound)
    if coprime6:
        ps = [P for P in ps if P.p > 3]
    return list(ps)


def enumerate_ideals_f(
    norm_bound: int,
    squarefree: bool = False,
    coprime6: bool = False,
    no_k_rational: bool = False,
) -> list[IdealF]:
    """All ideals of norm <= bound meeting the conditions, sorted by (norm, generator)."""
    if norm_bound < 1:
        return []
    primes = _admissible_primes(norm_bound, coprime6)
    out: list[IdealF] = []
    stack_exps: dict = {}

    def rec(start: int, gen: Tup, nrm: int):
        out.append(IdealF(gen, nrm, tuple(sorted(stack_exps.items(), key=lambda t: (t[0].norm, t[0].gen)))))
        for i in range(start, len(primes)):
            P = primes[i]
            if nrm * P.norm > norm_bound:
                break
            g, nn, e = gen, nrm, 0
            while nn * P.norm <= norm_bound:
                g, nn, e = t_mul(g, P.gen), nn * P.norm, e + 1
                stack_exps[P] = e
                if no_k_rational and _divisible_by_k_prime(stack_exps):
                    break
                rec(i + 1, g, nn)
                if squarefree:
                    break
            stack_exps.pop(P, None)

    rec(0, (1, 0, 0, 0), 1)
    out.sort(key=lambda I: (I.norm, I.gen))
    return out


def enumerate_primary_f(norm_bound: int, conditions: Iterable[str] = ()) -> Iterator[CycloInt]:
    """Yield one generator per ideal of norm <= bound, in nondecreasing norm order.

    ``conditions`` may contain ``"squarefree"``, ``"coprime6"`` and
    ``"no_k_rational"``.  Generators of ideals coprime to 3 are primary.
    """
    conds = set(conditions)
    unknown = conds - {"squarefree", "coprime6", "no_k_rational"}
    if unknown:
        raise ValueError(f"unknown conditions {sorted(unknown)}")
    for I in enumerate_ideals_f(
        norm_bound, "squarefree" in conds, "coprime6" in conds, "no_k_rational" in conds
    ):
        yield I.cyclo


def admissible_ideals(norm_bound: int) -> list[IdealF]:
    """Square-free ideals coprime to 6 without a K-rational prime divisor."""
    return enumerate_ideals_f(norm_bound, True, True, True)


__all__ = [
    "PrimeF",
    "FFactorization",
    "IdealF",
    "primes_over",
    "sigma_prime",
    "prime_ideals_f",
    "factor_f",
    "factor_primes",
    "primary_f",
    "is_primary",
    "is_squarefree_f",
    "mobius_f",
    "has_k_rational_prime_divisor",
    "enumerate_ideals_f",
    "enumerate_primary_f",
    "admissible_ideals",
    "primary_choice",
    "u1_generator",
    "to_one_mod3",
    "balance_primary",
    "unit_part",
    "ZETA_POWERS",
]
