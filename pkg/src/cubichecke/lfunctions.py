"""Central values of cubic Hecke L-functions over Z[i] and Z[zeta_12].

``lvalue_afe`` uses the approximate functional equation with weight V_{t,E};
``lvalue_direct`` is an independent oracle built from exponentially smoothed
partial sums and Richardson extrapolation.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import mpmath
import numpy as np
from scipy import integrate, special
from scipy.interpolate import CubicSpline

from .characters import CubicCharacter, HeckePsi
from .cyclo import SQRT3
from .cyclo_ideals import factor_primes, has_k_rational_prime_divisor, primes_over
from .dirichlet import exps_to_complex, f_coeffs, k_coeffs
from .gauss import gauss_fast_g3, gauss_gk
from .gaussian import GaussInt
from .symbol import symbol_def_exp

_FIELDS = {"K": (2, 4), "F": (4, 144)}  # degree, |discriminant|
_LOG2PI = math.log(2 * math.pi)


@dataclass(frozen=True)
class AFEConfig:
    """Weight and splitting parameters of the approximate functional equation.

    ``G`` is ``"one"`` (G(s) = 1, the default) or ``"gauss"`` (G(s) = exp(s^2)).
    ``A`` is the first-sum length parameter; ``None`` means sqrt of the
    conductor norm, and B = N / A always.
    """

    G: str = "one"
    T: float = 30.0
    step: float = 0.02
    A: Optional[float] = None

    def __post_init__(self):
        if self.G not in ("one", "gauss"):
            raise ValueError(f"unknown G {self.G!r}")
        if self.T < 30 or self.step > 0.05 or self.step <= 0:
            raise ValueError("need T >= 30 and 0 < step <= 0.05")
        if self.A is not None and self.A <= 0:
            raise ValueError("A must be positive")

    def split(self, N: float) -> tuple[float, float]:
        A = math.sqrt(N) if self.A is None else self.A
        return A, N / A


@dataclass(frozen=True)
class LValueResult:
    value: complex
    terms_used: int
    tail_bound: float
    root_number: complex
    extra: dict = field(default_factory=dict, compare=False)


# ----------------------------------------------------------------------------
# gamma factors and the weight V


def log_gamma_E(s: complex, E: str) -> complex:
    d, _ = _FIELDS[E]
    return (d / 2) * (-s * _LOG2PI + special.loggamma(s))


def gamma_factor(s: complex, t: float = 0.0, E: str = "K") -> complex:
    """gamma_{t,E}(s) = Gamma_E(s + 1/2 + it) / Gamma_E(1/2 + it) * sqrt(|D_E|)^s."""
    d, D = _FIELDS[E]
    z = s + 0.5 + 1j * t
    if z.real <= 0 and abs(z - round(z.real)) < 1e-8:
        raise ValueError(f"s = {s} is too close to a pole")
    return cmath.exp(log_gamma_E(z, E) - log_gamma_E(0.5 + 1j * t, E) + s * math.log(D) / 2)


def _integrand_logs(s: np.ndarray, t: float, E: str, G: str) -> np.ndarray:
    d, D = _FIELDS[E]
    z = s + 0.5 + 1j * t
    lg = (d / 2) * (-z * _LOG2PI + special.loggamma(z))
    lg0 = (d / 2) * (-(0.5 + 1j * t) * _LOG2PI + special.loggamma(0.5 + 1j * t))
    out = lg - lg0 + s * math.log(D) / 2 - np.log(s)
    if G == "gauss":
        out = out + s * s
    return out


def v_weight(xi, t: float = 0.0, E: str = "K", config: AFEConfig = AFEConfig()):
    """V_{t,E}(xi) by trapezoid quadrature on a vertical line.

    The line is Re s = 2 for xi >= 1; for xi < 1 the contour is moved to
    Re s = -1/4, picking up the residue 1 at s = 0.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    T = max(config.T, 10 + 2 * abs(t))
    y = np.arange(-T, T + config.step / 2, config.step)
    out = np.empty(xi.shape, dtype=np.complex128)
    for c, sel in ((2.0, xi >= 1), (-0.25, xi < 1)):
        if not sel.any():
            continue
        s = c + 1j * y
        base = _integrand_logs(s, t, E, config.G)
        lx = np.log(xi[sel])
        # (1/2 pi) sum f(c + iy) xi^{-c - iy} dy
        vals = np.exp(base[None, :] - np.outer(lx, s)).sum(axis=1) * config.step / (2 * np.pi)
        out[sel] = vals + (1.0 if c < 0 else 0.0)
    if t == 0:
        out = out.real.astype(np.complex128)
    return out if out.size > 1 else out[0]


def v_weight_exact(xi: float, t: float = 0.0, E: str = "K") -> complex:
    """Closed forms for G = 1: an incomplete gamma ratio for K and a Meijer G for F."""
    a = mpmath.mpf(0.5) + 1j * mpmath.mpf(t)
    if E == "K":
        return complex(mpmath.gammainc(a, mpmath.pi * xi, regularized=True))
    x = mpmath.pi**2 * xi / 3
    g = mpmath.meijerg([[], [1]], [[a, a, 0], []], x)
    return complex(g / mpmath.gamma(a) ** 2)


class _VTable:
    """Cubic spline of V in log xi with a cutoff where |V| is negligible."""

    def __init__(self, t: float, E: str, config: AFEConfig):
        self.t, self.E, self.config = t, E, config
        fast = config.G == "one" and E == "K" and t == 0
        lo = -14.0
        # locate the cutoff
        hi = 0.0
        while True:
            v = abs(self._direct(np.array([math.exp(hi)]))[0])
            if v < 1e-14 or hi > 25:
                break
            hi += 0.25
        self.cut = math.exp(hi)
        self.lo = lo
        if fast:
            self.spline = None
        else:
            u = np.linspace(lo, hi, int((hi - lo) * 40) + 1)
            v = self._direct(np.exp(u))
            self.spline_re = CubicSpline(u, v.real)
            self.spline_im = CubicSpline(u, v.imag)
            self.spline = True

    def _direct(self, xi: np.ndarray) -> np.ndarray:
        if self.config.G == "one" and self.E == "K" and self.t == 0:
            return special.erfc(np.sqrt(np.pi * xi)).astype(np.complex128)
        return np.atleast_1d(v_weight(xi, self.t, self.E, self.config))

    def __call__(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=np.float64)
        if self.spline is None:
            return self._direct(xi)
        u = np.log(xi)
        out = self.spline_re(u) + 1j * self.spline_im(u)
        small = u < self.lo
        if small.any():
            out[small] = self._direct(xi[small])
        out[xi >= self.cut] = 0
        return out


@lru_cache(maxsize=64)
def v_table(t: float, E: str, config: AFEConfig) -> _VTable:
    return _VTable(t, E, config)


# ----------------------------------------------------------------------------
# L(1/2 + it, chi) over Z[i]


def _check_primitive(chi: CubicCharacter):
    n = chi.n
    N = chi.norm
    if N == 1:
        raise ValueError("the principal character is not a primitive cubic character")
    if N % 2 == 0 or N % 3 == 0:
        raise ValueError("conductor must be coprime to 6")
    if any(e > 1 for _, e in factor_primes(n)) or has_k_rational_prime_divisor(n):
        raise ValueError(f"chi_n with n = {n} is not primitive")


def root_number_chi(chi: CubicCharacter) -> complex:
    """g_K(chi) / sqrt(N(q)) via g_K(chi) = conj((sqrt3/n)_3) g_{3,F}(n)."""
    e = symbol_def_exp(SQRT3, chi.n)
    g = cmath.exp(-2j * math.pi * e / 3) * gauss_fast_g3(1, chi.n)
    return g / math.sqrt(chi.norm)


def _chi_coeffs(chi: CubicCharacter, bound: int) -> np.ndarray:
    return k_coeffs(bound, chi.exponents)


def _afe_sums(c: np.ndarray, s: complex, A: float, B: float, t: float, E: str, config: AFEConfig):
    """The two AFE sums given norm-collapsed coefficients c (index = norm)."""
    V1 = v_table(t, E, config)
    V2 = v_table(-t, E, config)
    n1 = min(len(c) - 1, int(A * V1.cut))
    n2 = min(len(c) - 1, int(B * V2.cut))
    N1 = np.arange(1, n1 + 1, dtype=np.float64)
    N2 = np.arange(1, n2 + 1, dtype=np.float64)
    S1 = np.sum(c[1 : n1 + 1] * N1 ** (-s) * V1(N1 / A))
    S2 = np.sum(np.conj(c[1 : n2 + 1]) * N2 ** (-(0.5 - 1j * t)) * V2(N2 / B))
    return S1, S2, n1 + n2


def _dual_factor(N: float, t: float, E: str) -> complex:
    _, D = _FIELDS[E]
    if t == 0:
        return 1.0 + 0j
    ph = cmath.exp(-1j * t * math.log(D * N))
    return ph * cmath.exp(log_gamma_E(0.5 - 1j * t, E) - log_gamma_E(0.5 + 1j * t, E))


def lvalue_afe(chi: CubicCharacter, t: float = 0.0, config: AFEConfig = AFEConfig()) -> LValueResult:
    """L(1/2 + it, chi) by the approximate functional equation."""
    _check_primitive(chi)
    N = chi.norm
    A, B = config.split(N)
    V1, V2 = v_table(t, "K", config), v_table(-t, "K", config)
    bound = int(max(A * V1.cut, B * V2.cut)) + 1
    c = _chi_coeffs(chi, bound)
    s = 0.5 + 1j * t
    S1, S2, terms = _afe_sums(c, s, A, B, t, "K", config)
    W = root_number_chi(chi)
    val = S1 + W * _dual_factor(N, t, "K") * S2
    return LValueResult(complex(val), terms, 1e-15 * terms, W)


def _richardson(vals: list[complex]) -> complex:
    """Eliminate the 1/X, ..., 1/X^(k-1) terms from values at X, 2X, ..., 2^(k-1) X."""
    row = list(vals)
    for j in range(1, len(vals)):
        row = [(2**j * row[i + 1] - row[i]) / (2**j - 1) for i in range(len(row) - 1)]
    return row[0]


_TAIL = 32  # exp(-32) ~ 1e-14


def smoothed_sum(c: np.ndarray, s: complex, X: float) -> complex:
    M = min(len(c) - 1, int(_TAIL * X))
    N = np.arange(1, M + 1, dtype=np.float64)
    return complex(np.sum(c[1 : M + 1] * N ** (-s) * np.exp(-N / X)))


def _zeta_f_residue() -> float:
    """Residue at s = 1 of zeta_F(s)(1 - 4^-s)(1 - 9^-s)."""
    r = (math.pi / 4) * (math.pi / (3 * math.sqrt(3))) * (math.log(2 + math.sqrt(3)) / math.sqrt(3))
    return r * (3 / 4) * (8 / 9)


def lvalue_direct(chi, t: float = 0.0, scale: Optional[float] = None, levels: Optional[int] = None) -> LValueResult:
    """sum chi(A) N(A)^(-s) exp(-N(A)/X) at X = X0, 2 X0, 4 X0, extrapolated in 1/X.

    X0 is ``scale`` times the conductor norm.  Characters over Z[i] default to
    scale 12, psi_m to scale 40: the degree-4 expansion in 1/X only settles for X
    far beyond the conductor, so the oracle is meant for conductor norms up to 10^4.
    ``extra['spread']`` compares the two highest-order extrapolations available.
    """
    s = 0.5 + 1j * t
    psi = isinstance(chi, HeckePsi)
    if psi:
        scale = 40.0 if scale is None else scale
        levels = 3 if levels is None else levels
        Nf = chi.conductor_norm
        X0 = scale * Nf if Nf > 1 else 2000.0
    else:
        scale = 12.0 if scale is None else scale
        levels = 3 if levels is None else levels
        Nf = chi.norm
        X0 = scale * Nf
    bound = int(_TAIL * X0 * 2 ** (levels - 1)) + 1
    c = _psi_series_coeffs(chi, bound) if psi else _chi_coeffs(chi, bound)
    vals = [smoothed_sum(c, s, X0 * 2**k) for k in range(levels)]
    if psi and chi.is_principal():
        # remove the pole contribution R Gamma(1 - s) X^(1 - s)
        R = _zeta_f_residue()
        g = complex(mpmath.gamma(1 - s))
        vals = [v - R * g * (X0 * 2**k) ** (1 - s) for k, v in enumerate(vals)]
    val = _richardson(vals)
    spread = abs(val - _richardson(vals[1:])) if levels > 1 else float("inf")
    res = LValueResult(val, bound, spread, complex("nan"), {"spread": spread, "raw": vals, "X0": X0})
    if spread > 1e-4:
        res.extra["flag"] = "spread above 1e-4"
    return res


# ----------------------------------------------------------------------------
# L(1/2 + it, psi_m) over Z[zeta_12]


def _psi_prim_extra(psi: HeckePsi) -> list[tuple[int, int, complex]]:
    """Values of the primitive character at the primes above 2 and 3 not dividing the conductor."""
    a2, b3 = psi.conductor_parts
    out = []
    for p, e in ((2, a2), (3, b3)):
        if e == 0:
            P = primes_over(p)[0]
            x = psi.primitive_exp(P.gen)
            out.append((p, P.f, 0j if x is None else cmath.exp(2j * math.pi * x / 3)))
    return out


def _psi_series_coeffs(psi: HeckePsi, bound: int, primitive: bool = False) -> np.ndarray:
    mt = psi.mt
    extra = _psi_prim_extra(psi) if primitive else []
    return f_coeffs(bound, lambda rm: rm.cubic_exponent(mt), extra)


def _euler_6(psi: HeckePsi, s: complex) -> complex:
    """prod over the primes above 2, 3 not dividing the conductor of (1 - psi*(p) N(p)^-s)."""
    out = 1.0 + 0j
    for p, f, v in _psi_prim_extra(psi):
        out *= 1 - v * (p**f) ** (-s)
    return out


def zeta_f_partial(s: complex) -> complex:
    """zeta_F(s) (1 - 4^-s)(1 - 9^-s): the Dedekind zeta of Z[zeta_12] without the primes above 6."""
    s = mpmath.mpc(s)
    z = (
        mpmath.zeta(s)
        * mpmath.dirichlet(s, [0, 1, 0, -1])
        * mpmath.dirichlet(s, [0, 1, -1])
        * mpmath.dirichlet(s, [0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1])
    )
    return complex(z * (1 - mpmath.power(4, -s)) * (1 - mpmath.power(9, -s)))


def _psi_afe_multi(psi: HeckePsi, t: float, config: AFEConfig, As: list[float]):
    """(S1(A), dual side S2(B)) for each first-sum length A, from one coefficient table."""
    Nf = psi.conductor_norm
    V1, V2 = v_table(t, "F", config), v_table(-t, "F", config)
    bound = max(int(max(A * V1.cut, Nf / A * V2.cut)) for A in As) + 1
    c = _psi_series_coeffs(psi, bound, primitive=True)
    s = 0.5 + 1j * t
    dual = _dual_factor(Nf, t, "F")
    out = []
    for A in As:
        S1, S2, terms = _afe_sums(c, s, A, Nf / A, t, "F", config)
        out.append((S1, S2 * dual, terms))
    return out


def _root_from_splits(parts) -> complex:
    (a1, b1, _), (a2, b2, _) = parts
    W = (a1 - a2) / (b2 - b1)
    return W / abs(W)


def root_number_psi(psi: HeckePsi, t: float = 0.0, config: AFEConfig = AFEConfig()) -> complex:
    """Root number of the primitive character attached to psi_m.

    Solved from the approximate functional equation at two splits of the
    conductor: S1(A) + W S2(B) takes the same value for A = sqrt(N) and A = 2 sqrt(N).
    """
    r = math.sqrt(psi.conductor_norm)
    return _root_from_splits(_psi_afe_multi(psi, t, config, [r, 2 * r]))


def lvalue_psi_afe(m, t: float = 0.0, config: AFEConfig = AFEConfig()) -> LValueResult:
    """L(1/2 + it, psi_m) summed over ideals coprime to 6, for square-free m."""
    psi = m if isinstance(m, HeckePsi) else HeckePsi.of(m)
    s = 0.5 + 1j * t
    if psi.is_principal():
        return LValueResult(zeta_f_partial(s), 0, 0.0, 1.0 + 0j)
    r = math.sqrt(psi.conductor_norm)
    A = config.split(psi.conductor_norm)[0]
    parts = _psi_afe_multi(psi, t, config, [r, 2 * r] if A == r else [r, 2 * r, A])
    W = _root_from_splits(parts[:2])
    S1, S2, terms = parts[-1] if A != r else parts[0]
    prim = S1 + W * S2
    val = prim * _euler_6(psi, s)
    raw = (parts[0][0] - parts[1][0]) / (parts[1][1] - parts[0][1])
    return LValueResult(complex(val), terms, 1e-15 * terms, W, {"primitive": complex(prim), "root_modulus": abs(raw)})


# ----------------------------------------------------------------------------
# Poisson summation over Z[i]


def w_tilde_k(t: float, W=None) -> float:
    """W~_K(t) = int int W(x^2 + y^2) e(-t y) dx dy, reduced to a radial Hankel integral."""
    W = W or (lambda r: math.exp(-r))
    f = lambda r: W(r * r) * special.j0(2 * math.pi * t * r) * r  # noqa: E731
    val, err = integrate.quad(f, 0, np.inf, limit=400, epsabs=1e-13, epsrel=1e-12)
    if err > 1e-8:
        raise ArithmeticError(f"quadrature did not converge (error {err})")
    return 2 * math.pi * val


def poisson_check(chi, X: float, W=None, k_radius: Optional[int] = None) -> tuple[complex, complex, float]:
    """Both sides of the Poisson summation identity for chi mod n and their difference.

    ``chi`` is a :class:`CubicCharacter` or ``None`` for the principal character mod 1.
    ``W`` defaults to exp(-x), so that W(N(m)/X) is a Gaussian in m.
    """
    W = W or (lambda r: math.exp(-r))
    if chi is None:
        Nn = 1
        chi_vals = lambda re, im: np.ones(len(re), dtype=np.complex128)  # noqa: E731
        g = lambda k: 1.0 + 0j  # noqa: E731
    else:
        Nn = chi.norm
        chi_vals = lambda re, im: exps_to_complex(chi.exponents(re, im))  # noqa: E731
        g = lambda k: gauss_gk(k, chi)  # noqa: E731
    # left side: all m in Z[i]
    R = int(math.sqrt(60 * X)) + 2
    a = np.arange(-R, R + 1)
    re, im = [x.ravel() for x in np.meshgrid(a, a, indexing="ij")]
    Wv = np.array([W(float(v)) for v in (re * re + im * im) / X])
    lhs = complex(np.sum(chi_vals(re, im) * Wv))
    # right side
    K = k_radius if k_radius is not None else int(math.sqrt(Nn / X) * 3) + 2
    rhs = 0j
    cache: dict = {}
    for kr in range(-K, K + 1):
        for ki in range(-K, K + 1):
            nk = kr * kr + ki * ki
            arg = math.sqrt(nk * X / Nn)
            if arg not in cache:
                cache[arg] = w_tilde_k(arg, W)
            wt = cache[arg]
            if abs(wt) < 1e-18:
                continue
            rhs += g(GaussInt(kr, ki)) * wt
    rhs *= X / Nn
    return lhs, rhs, abs(lhs - rhs)
