"""Residue fields O_F / p as F_q with q = p or p^2, scalar and vectorized.

A residue field is modelled as F_p[t] / (t^2 - alpha t - beta) (or plain F_p
when the residue degree is 1), together with the image ``z`` of zeta_12.
Elements are pairs ``(u, v)`` meaning ``u + v t``.  Vectorized routines work on
int64 arrays and index an element by ``u + p v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

FE = tuple  # (u, v)


@dataclass(frozen=True)
class FiniteField:
    p: int
    f: int
    alpha: int = 0
    beta: int = 0

    @property
    def q(self) -> int:
        return self.p**self.f

    def mul(self, x: FE, y: FE) -> FE:
        p = self.p
        if self.f == 1:
            return (x[0] * y[0] % p, 0)
        u1, v1 = x
        u2, v2 = y
        vv = v1 * v2
        return ((u1 * u2 + self.beta * vv) % p, (u1 * v2 + u2 * v1 + self.alpha * vv) % p)

    def add(self, x: FE, y: FE) -> FE:
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def pow(self, x: FE, e: int) -> FE:
        out, base = (1, 0), x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def index(self, x: FE) -> int:
        return x[0] + self.p * x[1]

    def element(self, idx: int) -> FE:
        return (idx % self.p, idx // self.p)

    # vectorized -----------------------------------------------------------
    def vmul(self, u1, v1, u2, v2):
        p = self.p
        if self.f == 1:
            return u1 * u2 % p, v1
        vv = v1 * v2 % p
        return (u1 * u2 + self.beta * vv) % p, (u1 * v2 + u2 * v1 + self.alpha * vv) % p

    def vpow(self, u, v, e: int):
        ou = np.ones_like(u)
        ov = np.zeros_like(v)
        bu, bv = u.copy(), v.copy()
        while e:
            if e & 1:
                ou, ov = self.vmul(ou, ov, bu, bv)
            bu, bv = self.vmul(bu, bv, bu, bv)
            e >>= 1
        return ou, ov


@lru_cache(maxsize=None)
def field_for(p: int, f: int) -> FiniteField:
    if f == 1:
        return FiniteField(p, 1)
    if p == 2:
        return FiniteField(2, 2, 1, 1)  # t^2 = t + 1
    nu = 2
    while pow(nu, (p - 1) // 2, p) != p - 1:
        nu += 1
    return FiniteField(p, 2, 0, nu)


def residue_degree(p: int) -> int:
    if p in (2, 3):
        return 2
    return 1 if p % 12 == 1 else 2


def _order_divides(F: FiniteField, x: FE, n: int) -> bool:
    return F.pow(x, n) == (1, 0)


@lru_cache(maxsize=None)
def zeta_images(p: int) -> tuple[FiniteField, tuple[FE, ...]]:
    """The roots of Phi_12 in F_{p^f}, one per Frobenius orbit.

    For p = 2 and p = 3 (ramified) there is a single orbit and the returned
    element is a root of Phi_12 mod p (of order 3 resp. 4).
    """
    f = residue_degree(p)
    F = field_for(p, f)
    if p == 2:
        return F, ((0, 1),)
    if p == 3:
        return F, ((0, 1),)
    q = F.q
    z = None
    for idx in range(2, q):
        x = F.element(idx)
        if x[0] == 0 and x[1] == 0:
            continue
        c = F.pow(x, (q - 1) // 12)
        if not _order_divides(F, c, 4) and not _order_divides(F, c, 6):
            z = c
            break
    assert z is not None
    reps, seen = [], set()
    for k in (1, 5, 7, 11):
        zk = F.pow(z, k)
        if zk in seen:
            continue
        orbit = {zk}
        y = zk
        for _ in range(f - 1):
            y = F.pow(y, p)
            orbit.add(y)
        seen |= orbit
        reps.append(zk)
    return F, tuple(reps)


@dataclass(frozen=True)
class ResidueMap:
    """Ring map O_F -> F_q determined by the image ``z`` of zeta_12."""

    F: FiniteField
    z: FE
    basis: tuple = field(init=False)
    omega: FE = field(init=False)

    def __post_init__(self):
        F, z = self.F, self.z
        imgs = (F.pow(z, 0), F.pow(z, 3), F.pow(z, 4), F.pow(z, 7))
        object.__setattr__(self, "basis", imgs)
        object.__setattr__(self, "omega", imgs[2])

    @property
    def p(self) -> int:
        return self.F.p

    @property
    def q(self) -> int:
        return self.F.q

    def reduce(self, x) -> FE:
        p = self.F.p
        u = v = 0
        for coord, (bu, bv) in zip(x, self.basis):
            c = coord % p
            u += c * bu
            v += c * bv
        return (u % p, v % p)

    def reduce_index(self, coords: np.ndarray) -> np.ndarray:
        """Vectorized reduction of an (N, 4) or (N, 2) coordinate array to field indices."""
        p = self.F.p
        coords = np.asarray(coords, dtype=np.int64) % p
        u = np.zeros(coords.shape[0], dtype=np.int64)
        v = np.zeros(coords.shape[0], dtype=np.int64)
        for k in range(coords.shape[1]):
            bu, bv = self.basis[k]
            u = (u + coords[:, k] * bu) % p
            v = (v + coords[:, k] * bv) % p
        return u + p * v

    def cubic_exponent(self, x) -> int | None:
        """Exponent e with x^((q-1)/3) = w^e in F_q, or None if x maps to 0."""
        F = self.F
        y = self.reduce(x)
        if y == (0, 0):
            return None
        h = F.pow(y, (F.q - 1) // 3)
        one = (1, 0)
        if h == one:
            return 0
        if h == self.omega:
            return 1
        if h == F.mul(self.omega, self.omega):
            return 2
        raise ArithmeticError("power residue is not a cube root of unity")

    def cubic_table(self) -> np.ndarray:
        return _cubic_table(self)

    def power_table(self, n: int) -> np.ndarray:
        """Exponents of the n-th power residue character on all field elements (n | q - 1)."""
        return _power_table(self, n)


@lru_cache(maxsize=4096)
def _cubic_table(rm: ResidueMap) -> np.ndarray:
    return _power_table(rm, 3)


@lru_cache(maxsize=1024)
def _power_table(rm: ResidueMap, n: int) -> np.ndarray:
    F = rm.F
    q, p = F.q, F.p
    if (q - 1) % n:
        raise ValueError(f"{n} does not divide q - 1 = {q - 1}")
    idx = np.arange(q, dtype=np.int64)
    u, v = idx % p, idx // p
    hu, hv = F.vpow(u, v, (q - 1) // n)
    out = np.full(q, -1, dtype=np.int8)
    if n == 3:
        root = rm.omega
    else:
        # image of a primitive n-th root of unity among zeta_12 powers
        root = F.pow(rm.z, 12 // n)
    cur = (1, 0)
    hi = hu + p * hv
    for e in range(n):
        out[hi == F.index(cur)] = e
        cur = F.mul(cur, root)
    out[0] = -1
    return out
