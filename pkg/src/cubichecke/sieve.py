"""Numerical study of the cubic large sieve over Z[i].

The character matrix X has rows indexed by ideals (n) of Z[zeta_12] with
Q < N(n) <= 2Q and columns by square-free ideals (m) of Z[i] with
M < N(m) <= 2M; X[n, m] = chi_n(m).  B_1 restricts n to square-free n
coprime to 6 without a K-rational prime divisor, B_2 drops the last condition.
The norms are squared spectral norms of X, and C_1(M, Q) is the same quantity
for the transposed form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .characters import _exponents
from .cyclo_ideals import IdealF, enumerate_ideals_f
from .dirichlet import exps_to_complex
from .gaussian import GaussInt, enumerate_k, is_squarefree_k
from .symbol import symbol_fast_exp

POWER_TOL = 1e-12
POWER_MAXITER = 10_000
DENSE_LIMIT = 500


@dataclass(frozen=True)
class SieveInstance:
    Q: int
    M: int
    coefficients: Mapping[GaussInt, complex]

    def __post_init__(self):
        cols = set(sieve_columns(self.M))
        for m in self.coefficients:
            if m not in cols:
                raise ValueError(f"{m} is not a square-free ideal generator with {self.M} < N <= {2 * self.M}")
        if not any(abs(v) > 0 for v in self.coefficients.values()):
            raise ValueError("coefficient sequence must be nonzero")

    @property
    def norm2(self) -> float:
        return float(sum(abs(v) ** 2 for v in self.coefficients.values()))


@dataclass(frozen=True)
class SieveReport:
    Q: int
    M: int
    variant: str
    lhs: float
    bound_terms: tuple[float, float, float]
    ratio_to_min: float
    rows: int
    cols: int


@lru_cache(maxsize=64)
def sieve_rows(Q: int, variant: str = "B1") -> tuple[IdealF, ...]:
    if variant not in ("B1", "B2"):
        raise ValueError(f"unknown variant {variant!r}")
    ideals = enumerate_ideals_f(2 * Q, squarefree=True, coprime6=True, no_k_rational=variant == "B1")
    return tuple(I for I in ideals if I.norm > Q)


@lru_cache(maxsize=64)
def sieve_columns(M: int) -> tuple[GaussInt, ...]:
    return tuple(m for m in enumerate_k(2 * M) if m.norm() > M and is_squarefree_k(m))


@lru_cache(maxsize=32)
def character_matrix(Q: int, M: int, variant: str = "B1") -> np.ndarray:
    """X[n, m] = chi_n(m), evaluated in the residue fields of the primes of n."""
    rows, cols = sieve_rows(Q, variant), sieve_columns(M)
    coords = np.array([[m.re, m.im] for m in cols], dtype=np.int64).reshape(-1, 2)
    X = np.empty((len(rows), len(cols)), dtype=np.complex128)
    for i, I in enumerate(rows):
        X[i] = exps_to_complex(_exponents(I.factors, coords))
    X.setflags(write=False)
    return X


def bilinear_lhs(inst: SieveInstance, variant: str = "B1") -> float:
    """sum over rows n of |sum_m a_m chi_n(m)|^2, with chi_n(m) from symbol_fast."""
    w = np.exp(2j * np.pi * np.arange(3) / 3)
    total = 0.0
    items = list(inst.coefficients.items())
    for I in sieve_rows(inst.Q, variant):
        acc = 0j
        for m, a in items:
            e = symbol_fast_exp((m.re, m.im, 0, 0), I.gen)
            if e is not None:
                acc += a * w[e]
        total += abs(acc) ** 2
    return total


def _power_norm(A: np.ndarray) -> float:
    """Largest eigenvalue of A* A by power iteration from a fixed start vector."""
    if A.size == 0:
        return 0.0
    n = A.shape[1]
    v = np.ones(n, dtype=np.complex128) / np.sqrt(n)
    v += 1e-3 * np.cos(np.arange(n))  # avoid a start orthogonal to the top eigenvector
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(POWER_MAXITER):
        w = A.conj().T @ (A @ v)
        new = float(np.vdot(v, w).real)
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        v = w / nw
        if abs(new - lam) <= POWER_TOL * max(abs(new), 1e-300):
            return new
        lam = new
    raise ArithmeticError("power iteration did not converge")


def norm_B(Q: int, M: int, variant: str = "B1", method: str = "power") -> float:
    """sup over a != 0 of lhs / ||a||^2, the top singular value of X squared."""
    X = character_matrix(Q, M, variant)
    if method == "dense":
        if min(X.shape) > DENSE_LIMIT:
            raise ValueError("matrix too large for the dense method")
        return float(np.linalg.norm(X, 2) ** 2) if X.size else 0.0
    return _power_norm(X)


def norm_C1(M: int, Q: int) -> float:
    """The dual norm: sup over b of ||X^T b||^2 / ||b||^2, iterating on X X*."""
    X = character_matrix(Q, M, "B1")
    return _power_norm(X.T.copy())


def bound_terms(Q: float, M: float) -> tuple[float, float, float]:
    return (Q ** (5 / 3) + M, Q ** (4 / 3) + Q**0.5 * M, Q ** (11 / 9) + Q ** (2 / 3) * M)


def sieve_scan(Q_grid: Sequence[int], M_grid: Sequence[int], variant: str = "B1", trials: int = 0) -> list[SieveReport]:
    """Exact norms against the minimum of the three bound terms (constant 1, no epsilon).

    ``trials`` is accepted for interface compatibility; the exact norm supersedes
    random lower bounds, so it is not used.
    """
    out = []
    for Q in Q_grid:
        for M in M_grid:
            val = norm_B(Q, M, variant)
            terms = bound_terms(Q, M)
            X = character_matrix(Q, M, variant)
            out.append(SieveReport(Q, M, variant, val, terms, val / min(terms), X.shape[0], X.shape[1]))
    return out
