"""The constants in the first-moment main term C_0 Q w^(0).

C_0 = C_1 C_2 C(3/2) / zeta_F(2), where C_1 is the residue of zeta_F at s = 1,

    C_2  = prod over K-primes w not dividing 6 of (1 - N(w)^-2 b_w),
    C(u) = sum over ideals (m) of Z[i] of N(m)^-u c_6 prod_{w | m, w not | 6} b_w / (1 - N(w)^-2 b_w),

with b_w = prod over F-primes p above w of (1 + N(p)^-1)^-1 and
c_6 = prod over F-primes p | 6 of (1 + N(p)^-1)^-1 = (4/5)(9/10).

Each Euler product is split into a zeta or L factor evaluated by mpmath and a
rapidly convergent remainder, truncated at a prime bound with a bound for
the omitted tail.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import mpmath
import numpy as np

from ._arith import primes_upto
from .dirichlet import f_coeffs
from .gaussian import GaussInt, factor_k, ideal_table_k

CHI4 = [0, 1, 0, -1]
CHI3 = [0, 1, -1]
CHI12 = [0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1]
C6 = (4 / 5) * (9 / 10)
_PRIME_BOUND = 10**6


@dataclass(frozen=True)
class Estimate:
    value: float
    error: float


@dataclass(frozen=True)
class ConstantsBundle:
    C1: Estimate
    C2: Estimate
    zetaF2: Estimate
    C_of_3_2: Estimate
    C0: Estimate

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ConstantsBundle":
        return cls(**{k: Estimate(**v) for k, v in d.items()})


def zeta_k(s) -> mpmath.mpf:
    return mpmath.zeta(s) * mpmath.dirichlet(s, CHI4)


def zeta_f(s) -> mpmath.mpf:
    """zeta_F = zeta zeta_K-part: zeta(s) L(s, chi_-4) L(s, chi_-3) L(s, chi_12)."""
    return zeta_k(s) * mpmath.dirichlet(s, CHI3) * mpmath.dirichlet(s, CHI12)


# ----------------------------------------------------------------------------
# C1


def c1_factorized() -> float:
    """Residue of zeta_F at 1 as L(1, chi_-4) L(1, chi_-3) L(1, chi_12)."""
    with mpmath.workdps(30):
        return float(mpmath.dirichlet(1, CHI4) * mpmath.dirichlet(1, CHI3) * mpmath.dirichlet(1, CHI12))


def c1_closed_form() -> float:
    return (math.pi / 4) * (math.pi / (3 * math.sqrt(3))) * (math.log(2 + math.sqrt(3)) / math.sqrt(3))


@lru_cache(maxsize=4)
def ideal_counts_f(bound: int) -> np.ndarray:
    """a[n] = number of ideals of Z[zeta_12] of norm n, for n <= bound."""
    c = f_coeffs(bound, lambda rm: 0, extra=[(2, 2, 1.0 + 0j), (3, 2, 1.0 + 0j)])
    return np.rint(c.real).astype(np.int64)


def c1_ideal_count(X: float = 2.0e4) -> float:
    """C_1 from sum a(n) exp(-n/X) = C_1 X + (rapidly decaying).

    zeta_F vanishes at 0 and at every negative integer, so the Mellin
    expansion of the smoothed count has no terms beyond C_1 X.
    """
    a = ideal_counts_f(int(40 * X))
    n = np.arange(len(a), dtype=np.float64)
    return float(np.sum(a[1:] * np.exp(-n[1:] / X)) / X)


def const_C1(precision: float = 1e-8) -> Estimate:
    a = c1_factorized()
    b = c1_ideal_count()
    if abs(a - b) > 1e-4:
        raise ArithmeticError(f"C1 methods disagree: {a} vs {b}")
    return Estimate(a, max(abs(a - b), abs(a - c1_closed_form())))


# ----------------------------------------------------------------------------
# Euler products over the primes of Z[i]


@lru_cache(maxsize=4)
def k_prime_data(bound: int) -> tuple[np.ndarray, np.ndarray]:
    """(N(w), b_w) for the K-primes w not dividing 6 lying over rational primes <= bound."""
    p = primes_upto(bound)
    p = p[p > 3].astype(np.float64)
    pi = p.astype(np.int64)
    norms, bs = [], []
    split = pi % 12 == 1
    norms.append(np.repeat(p[split], 2))
    bs.append(np.repeat((1 + 1 / p[split]) ** -2, 2))
    inert_f = pi % 12 == 5
    norms.append(np.repeat(p[inert_f], 2))
    bs.append(np.repeat(1 / (1 + p[inert_f] ** -2), 2))
    three = pi % 4 == 3
    q = p[three] ** 2
    norms.append(q)
    bs.append((1 + 1 / q) ** -2)
    return np.concatenate(norms), np.concatenate(bs)


def _prime_sum_bound(X: float, k: float) -> float:
    """Upper bound for 2 sum_{p > X} p^-k (k > 1), from pi(x) < 1.26 x / log x."""
    return 2 * 1.26 * k / ((k - 1) * X ** (k - 1) * math.log(X))


def b_local(N: float, kind: str) -> float:
    if kind == "split":
        return (1 + 1 / N) ** -2
    if kind == "inert":
        return 1 / (1 + N**-2)
    raise ValueError(kind)


def const_C2(precision: float = 1e-8, bound: int = _PRIME_BOUND) -> Estimate:
    """C_2 = [zeta_K(2)^-1 (1 - 1/4)^-1 (1 - 1/81)^-1] * prod (1 - N^-2 b) / (1 - N^-2)."""
    N, b = k_prime_data(bound)
    # log of the remainder; (1 - N^-2 b)/(1 - N^-2) = 1 + N^-2 (1 - b) / (1 - N^-2) and 1 - b <= 2/N
    rem = np.sum(np.log1p(N**-2 * (1 - b) / (1 - N**-2)))
    head = 1 / (float(zeta_k(2)) * (1 - 1 / 4) * (1 - 1 / 81))
    val = head * math.exp(rem)
    err = val * 1.01 * 2 * _prime_sum_bound(bound, 3)
    if err > precision:
        raise ValueError(f"prime bound {bound} gives C2 error {err:.2g} above {precision:.2g}")
    return Estimate(val, err)


def const_Cu(u: float, precision: float = 1e-8, bound: int = _PRIME_BOUND) -> Estimate:
    """C(u) = c_6 zeta_K(u) prod_w (1 - (1 - b'_w) N^-u) with b' = b / (1 - N^-2 b)."""
    if u < 1.1:
        raise ValueError("need u >= 1.1")
    N, b = k_prime_data(bound)
    bp = b / (1 - N**-2 * b)
    x = N ** (-u)
    rem = np.sum(np.log1p(-(1 - bp) * x))
    val = C6 * float(zeta_k(u)) * math.exp(rem)
    # |1 - b'| <= 2/N, so the omitted factors contribute at most 2 sum_{p > bound} 2 p^(-u-1)
    err = val * 1.01 * 2 * _prime_sum_bound(bound, u + 1)
    if err > precision:
        raise ValueError(f"prime bound {bound} gives C(u) error {err:.2g} above {precision:.2g}")
    return Estimate(val, err)


def c_u_definition(u: float, norm_bound: int = 10**4) -> Estimate:
    """C(u) from its defining ideal sum truncated at norm_bound, with a Rankin tail bound."""
    A, B, Nm = ideal_table_k(norm_bound)
    total = 0.0
    for a, bb, n in zip(A.tolist(), B.tolist(), Nm.tolist()):
        w = C6
        if n > 1:
            for p, _ in factor_k(GaussInt(a, bb)).factors:
                Np = p.norm()
                if Np in (2, 9):
                    continue
                if Np % 12 == 1:
                    bl = b_local(Np, "split")
                elif Np % 4 == 1:
                    bl = b_local(Np, "inert")
                else:
                    bl = b_local(Np, "split")
                w *= bl / (1 - Np**-2 * bl)
        total += w * n ** (-u)
    # terms are at most c_6 zeta_K(2) N^-u; Rankin at sigma0 = 2
    zk2 = float(zeta_k(2))
    tail = C6 * zk2 * norm_bound ** (2 - u) * zk2
    return Estimate(total, tail)


# ----------------------------------------------------------------------------
# zeta_F(2)


def zeta_F2(precision: float = 1e-8) -> Estimate:
    """zeta_F(2) from its factorization into zeta and three Dirichlet L-functions."""
    with mpmath.workdps(30):
        v = float(zeta_f(2))
    return Estimate(v, 1e-15)


def zeta_F2_direct(bound: int = 2 * 10**6) -> Estimate:
    """sum a(n) n^-2 up to bound, plus the tail 2 C_1 / X - A(X) / X^2 from partial summation."""
    a = ideal_counts_f(bound)
    n = np.arange(1, len(a), dtype=np.float64)
    head = float(np.sum(a[1:] / n**2))
    A = float(a.sum())
    C1 = c1_closed_form()
    tail = 2 * C1 / bound - A / bound**2
    # the ideal count is C1 x + O(x^(3/4)); the correction is accurate to a few X^(-5/4)
    return Estimate(head + tail, 10 * bound**-1.25)


def constants_bundle(precision: float = 1e-8) -> ConstantsBundle:
    C1 = const_C1(precision)
    C2 = const_C2(precision)
    z2 = zeta_F2(precision)
    C3 = const_Cu(1.5, max(precision, 1e-7), bound=4 * 10**6)
    C0 = C1.value * C2.value * C3.value / z2.value
    rel = C1.error / C1.value + C2.error / C2.value + C3.error / C3.value + z2.error / z2.value
    return ConstantsBundle(C1, C2, z2, C3, Estimate(C0, C0 * rel))


@lru_cache(maxsize=1)
def default_constants() -> ConstantsBundle:
    return constants_bundle(1e-7)
