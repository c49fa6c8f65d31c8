"""Truncated Gauss-sum Dirichlet series h(r, s; lambda) over Z[zeta_12].

h(r, s; lambda) sums lambda(n) g_{3,F}(r, n) N(n)^-s over canonical primary n
coprime to r.  Sums are taken over ideals of norm <= cutoff, coprime to 6
(lambda is a character mod 18), and every value carries a rigorous tail bound
from Rankin's trick:

    sum_{N(n) > X} N(n)^(-beta) <= X^(sigma0 - beta) zeta_{F,6}(sigma0),  1 < sigma0 < beta,

where zeta_{F,6} is the Dedekind zeta function of Z[zeta_12] without the
primes above 6.  |g(r, n)| <= sqrt(N(n) N(gcd(r, n))) supplies beta.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .characters import Lambda18, lambda_from_generators
from .cyclo import CycloInt, t_mul, t_norm, t_try_div
from .cyclo_ideals import IdealF, enumerate_ideals_f, factor_primes
from .gauss import gauss_g3_factored
from .lfunctions import zeta_f_partial

MIN_CUTOFF = 1000
MIN_RE_S = 1.6


@lru_cache(maxsize=1)
def trivial_lambda() -> Lambda18:
    return lambda_from_generators(1)


@dataclass(frozen=True)
class HSeriesQuery:
    """One truncated series.

    n runs over ideals coprime to 6 and to every prime of ``avoid``; when
    ``coprime_to_r`` is set (the default), n is also coprime to r.  So
    h(r, s) is ``HSeriesQuery(r, s)``, h(r, f, s) adds ``avoid=f``, and
    h_alpha(r, s) is ``HSeriesQuery(r, s, avoid=alpha, coprime_to_r=False)``.
    """

    r: CycloInt
    s: complex = 2.0
    lam: Optional[Lambda18] = field(default=None, compare=False)
    cutoff: int = 4000
    avoid: Optional[CycloInt] = None
    coprime_to_r: bool = True

    def __post_init__(self):
        r = CycloInt.of(self.r)
        object.__setattr__(self, "r", r)
        if r.is_zero() or t_norm(r.t) % 3 == 0:
            raise ValueError("r must be nonzero and coprime to 3")
        if complex(self.s).real < MIN_RE_S:
            raise ValueError(f"Re(s) must be at least {MIN_RE_S}")
        if self.cutoff < MIN_CUTOFF:
            raise ValueError(f"cutoff must be at least {MIN_CUTOFF}")
        if self.avoid is not None:
            object.__setattr__(self, "avoid", CycloInt.of(self.avoid))


def _prime_set(x: Optional[CycloInt]) -> frozenset:
    if x is None or t_norm(x.t) == 1:
        return frozenset()
    return frozenset(P.gen for P, _ in factor_primes(x))


@lru_cache(maxsize=4)
def _ideals(cutoff: int) -> tuple[IdealF, ...]:
    return tuple(enumerate_ideals_f(cutoff, coprime6=True))


@lru_cache(maxsize=64)
def rankin_tail(X: float, beta: float) -> float:
    """Upper bound for sum over ideals coprime to 6 with N > X of N^-beta (beta > 1)."""
    if beta <= 1:
        return math.inf
    best = math.inf
    for s0 in np.linspace(1 + (beta - 1) / 50, beta - (beta - 1) / 50, 40):
        z = zeta_f_partial(float(s0)).real
        best = min(best, X ** (s0 - beta) * z)
    return best


def _sum(r: tuple, s: complex, lam: Lambda18, X: float, skip: frozenset) -> complex:
    out = 0j
    for I in _ideals_upto(X):
        if skip and any(P.gen in skip for P, _ in I.factors):
            continue
        g = gauss_g3_factored(r, I.factors)
        if g == 0:
            continue
        e = lam.exp(I.gen)
        out += cmath.exp(2j * math.pi * e / 3) * g * I.norm ** (-s)
    return out


def _ideals_upto(X: float):
    """Ideals coprime to 6 of norm <= X, drawn from the smallest cached enumeration that covers X."""
    cut = max(MIN_CUTOFF, int(X))
    ideals = _ideals(_round_up(cut))
    hi = np.searchsorted(_norms(_round_up(cut)), X, side="right")
    return ideals[:hi]


def _round_up(x: int) -> int:
    k = 1000
    while k < x:
        k *= 2
    return k


@lru_cache(maxsize=4)
def _norms(cutoff: int) -> np.ndarray:
    return np.array([I.norm for I in _ideals(cutoff)], dtype=np.int64)


def _tail(query: HSeriesQuery, X: float) -> float:
    sigma = complex(query.s).real
    amp = 1.0 if query.coprime_to_r else math.sqrt(t_norm(query.r.t))
    return amp * rankin_tail(float(X), sigma - 0.5)


def h_partial(query: HSeriesQuery, tail_target: Optional[float] = None) -> tuple[complex, float]:
    """(partial sum up to the cutoff, rigorous bound on the omitted tail)."""
    lam = query.lam or trivial_lambda()
    skip = _prime_set(query.avoid)
    if query.coprime_to_r:
        skip = skip | _prime_set(query.r)
    tail = _tail(query, query.cutoff)
    if tail_target is not None and tail > tail_target:
        raise ValueError(f"cutoff {query.cutoff} gives tail bound {tail:.3g} above the target {tail_target:.3g}")
    return _sum(query.r.t, complex(query.s), lam, query.cutoff, skip), tail


# ----------------------------------------------------------------------------
# the recursion identities


@dataclass(frozen=True)
class IdentityResidual:
    name: str
    lhs: complex
    rhs: complex
    residual: float
    tail: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.tail


@dataclass
class LaundryReport:
    params: dict
    identities: list[IdentityResidual]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.identities)


def _divisors(x: CycloInt):
    """(a, mu(a), primes of a) for the square-free divisors a of x (canonical generators)."""
    ps = [P for P, _ in factor_primes(x)] if t_norm(x.t) > 1 else []
    for k in range(len(ps) + 1):
        for sub in itertools.combinations(ps, k):
            a = (1, 0, 0, 0)
            for P in sub:
                a = t_mul(a, P.gen)
            yield a, (-1) ** k, [(P, 1) for P in sub]


def _lam_val(lam: Lambda18, a: tuple) -> complex:
    N = t_norm(a)
    if N % 2 == 0:
        return 0j
    return cmath.exp(2j * math.pi * lam.exp(a) / 3)


def _euler_inv(x: CycloInt, lam: Lambda18, s: complex) -> complex:
    """prod over primes p | x of (1 - lambda(p)^3 N(p)^(2 - 3s))^-1."""
    out = 1.0 + 0j
    if t_norm(x.t) == 1:
        return out
    for P, _ in factor_primes(x):
        out /= 1 - _lam_val(lam, P.gen) ** 3 * P.norm ** (2 - 3 * s)
    return out


def _check_params(r1, r2, r3, f):
    if any(t_norm(x.t) == 0 for x in (r1, r2, r3, f)):
        raise ValueError("parameters must be nonzero")
    r12 = r1 * r2
    if any(e > 1 for _, e in factor_primes(r12)) if t_norm(r12.t) > 1 else False:
        raise ValueError("r1 r2 must be square-free")
    if t_norm(f.t) > 1 and any(e > 1 for _, e in factor_primes(f)):
        raise ValueError("f must be square-free")
    r = r1 * r2 * r2 * r3 * r3 * r3
    if any(t_norm(x.t) % 3 == 0 for x in (r, f)):
        raise ValueError("r and f must be coprime to 3")
    if _prime_set(r) & _prime_set(f):
        raise ValueError("r and f must be coprime")
    return r


def laundrylist_check(r1, r2, r3, f, s: complex = 2.0, lam: Optional[Lambda18] = None, cutoff: int = 4000) -> LaundryReport:
    """Evaluate both sides of the four recursion identities for h.

    The first identity is compared with matched truncation (h(ar) summed to
    cutoff / N(a)), which makes it exact term by term; the others compare
    series truncated at the cutoff.  Each residual is reported against the sum
    of the tail bounds of the series involved.
    """
    r1, r2, r3, f = (CycloInt.of(x) for x in (r1, r2, r3, f))
    r = _check_params(r1, r2, r3, f)
    lam = lam or trivial_lambda()
    s = complex(s)
    if cutoff < MIN_CUTOFF:
        raise ValueError(f"cutoff must be at least {MIN_CUTOFF}")

    def h(rr, avoid=None, coprime_to_r=True, X=cutoff):
        q = HSeriesQuery(rr, s, lam, cutoff, avoid, coprime_to_r)
        skip = _prime_set(q.avoid) | (_prime_set(q.r) if coprime_to_r else frozenset())
        return _sum(q.r.t, s, lam, X, skip), _tail(q, max(X, 1.0))

    out = []
    # 1. Moebius expansion over a | f
    lhs, tl = h(r, avoid=f)
    rhs, tr = 0j, tl
    for a, mu, pa in _divisors(f):
        la = _lam_val(lam, a)
        if la == 0:
            continue
        Na = t_norm(a)
        coef = mu * la * gauss_g3_factored(r.t, pa) * Na ** (-s)
        val, tt = h(CycloInt(*t_mul(a, r.t)), X=cutoff / Na)
        rhs += coef * val
        tr += abs(coef) * tt
    out.append(IdentityResidual("mobius_f", lhs, rhs, abs(lhs - rhs), tr))

    # 2. cube factors of r only change the coprimality condition
    r3s = CycloInt(*_radical(r3))
    r12 = r1 * r2 * r2
    lhs, tl = h(r)
    rhs, tr = h(r12, avoid=r3s)
    out.append(IdentityResidual("cube_part", lhs, rhs, abs(lhs - rhs), tl + tr))

    # 3. removing the coprimality to r2
    lhs, tl = h(r12)
    e2 = _euler_inv(r2, lam, s)
    val, tr = h(r12, avoid=r1, coprime_to_r=False)
    out.append(IdentityResidual("euler_r2", lhs, e2 * val, abs(lhs - e2 * val), tl + abs(e2) * tr))

    # 4. removing the coprimality to r1
    lhs, tl = val, tr
    e1 = _euler_inv(r1, lam, s)
    rhs, trr = 0j, tl
    for a, mu, pa in _divisors(r1):
        la = _lam_val(lam, a)
        if la == 0:
            continue
        Na = t_norm(a)
        quo = CycloInt(*_exact(r12.t, a))
        coef = e1 * mu * Na ** (1 - 2 * s) * la**2 * gauss_g3_factored(quo.t, pa).conjugate()
        v, tt = h(quo, coprime_to_r=False)
        rhs += coef * v
        trr += abs(coef) * tt
    out.append(IdentityResidual("euler_r1", lhs, rhs, abs(lhs - rhs), trr))
    params = {"r1": str(r1), "r2": str(r2), "r3": str(r3), "f": str(f), "s": str(s), "cutoff": cutoff}
    return LaundryReport(params, out)


def _radical(x: CycloInt) -> tuple:
    out = (1, 0, 0, 0)
    if t_norm(x.t) == 1:
        return out
    for P, _ in factor_primes(x):
        out = t_mul(out, P.gen)
    return out


def _exact(x: tuple, a: tuple) -> tuple:
    q = t_try_div(x, a)
    if q is None:
        raise ArithmeticError("inexact division")
    return q


__all__ = [
    "HSeriesQuery",
    "IdentityResidual",
    "LaundryReport",
    "h_partial",
    "laundrylist_check",
    "rankin_tail",
    "trivial_lambda",
]
