"""Desk-scale moments of cubic L-values.

``first_moment`` compares sum over primitive cubic chi of L(1/2, chi) w(N(q)/Q)
with C_0 Q w^(0); ``second_moment_chi`` / ``second_moment_psi`` fit log-log
growth slopes; ``nonvanishing_count`` counts central values above a threshold.
"""
from __future__ import annotations

import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from .characters import HeckePsi, enumerate_cubic_chars
from .constants import ConstantsBundle, default_constants
from .gaussian import enumerate_k, is_squarefree_k
from .lfunctions import AFEConfig, lvalue_afe, lvalue_psi_afe

CHECKPOINT_EVERY = 1000


def _bump(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    y = 2 * x - 3
    out = np.zeros_like(x)
    inside = np.abs(y) < 1
    out[inside] = np.exp(-1 / (1 - y[inside] ** 2))
    return out


@dataclass(frozen=True)
class WeightFn:
    """A smooth weight supported in ``support``: the bump on (1, 2) or a sampled curve.

    ``factor`` scales the weight; ``weight_integral`` is the integral of w, which
    is both w^(0) and the Mellin transform w~(1).
    """

    kind: str = "bump"
    support: tuple[float, float] = (1.0, 2.0)
    samples: Optional[tuple[tuple[float, ...], tuple[float, ...]]] = None
    factor: float = 1.0

    def __post_init__(self):
        lo, hi = self.support
        if not 0 < lo < hi:
            raise ValueError("support must lie in (0, inf)")
        if self.kind not in ("bump", "sampled"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "sampled":
            if self.samples is None:
                raise ValueError("sampled weight needs samples")
            xs, ys = self.samples
            if xs[0] < lo or xs[-1] > hi:
                raise ValueError("samples must lie in the support")

    @classmethod
    def bump(cls) -> "WeightFn":
        return cls()

    @classmethod
    def from_samples(cls, xs: Sequence[float], ys: Sequence[float]) -> "WeightFn":
        """Spline through samples, which should vanish (with zero slope) at both ends."""
        xs, ys = tuple(map(float, xs)), tuple(map(float, ys))
        return cls("sampled", (xs[0], xs[-1]), (xs, ys))

    def scaled(self, c: float) -> "WeightFn":
        return WeightFn(self.kind, self.support, self.samples, self.factor * c)

    def _spline(self):
        xs, ys = self.samples
        return CubicSpline(xs, ys, bc_type="clamped")

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "bump":
            return self.factor * _bump(x)
        lo, hi = self.support
        out = self._spline()(np.clip(x, lo, hi))
        return self.factor * np.where((x > lo) & (x < hi), out, 0.0)

    def mellin(self, s: float) -> float:
        lo, hi = self.support
        val, _ = integrate.quad(lambda x: float(self(x)) * x ** (s - 1), lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)
        return val

    @property
    def weight_integral(self) -> float:
        """int w by quadrature, checked against w~(1) computed in log coordinates."""
        lo, hi = self.support
        a, _ = integrate.quad(lambda x: float(self(x)), lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)
        b, _ = integrate.quad(
            lambda u: float(self(math.exp(u))) * math.exp(u), math.log(lo), math.log(hi), epsabs=1e-13, epsrel=1e-12, limit=200
        )
        if abs(a - b) > 1e-10 * max(1.0, abs(a)):
            raise ArithmeticError(f"weight integral readings disagree: {a} vs {b}")
        return a

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "WeightFn":
        s = d.get("samples")
        samples = None if s is None else (tuple(s[0]), tuple(s[1]))
        return cls(d["kind"], tuple(d["support"]), samples, d.get("factor", 1.0))


# ----------------------------------------------------------------------------
# reports


class _JsonMixin:
    def to_json(self) -> str:
        return json.dumps(_encode(asdict(self)), sort_keys=True)

    @classmethod
    def from_json(cls, text: str):
        return cls(**_decode(json.loads(text)))


def _encode(x):
    if isinstance(x, complex):
        return {"__complex__": [x.real, x.imag]}
    if isinstance(x, dict):
        return {k: _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def _decode(x):
    if isinstance(x, dict):
        if set(x) == {"__complex__"}:
            return complex(*x["__complex__"])
        return {k: _decode(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_decode(v) for v in x]
    return x


@dataclass(frozen=True)
class MomentReport(_JsonMixin):
    Q: float
    raw_sum: complex
    main_term: float
    ratio: float
    character_count: int
    weight_integral: float
    C0: float
    runtime: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class GrowthReport(_JsonMixin):
    grid: list
    values: list
    counts: list
    slope: float
    t: float


@dataclass(frozen=True)
class NonvanishingReport(_JsonMixin):
    Q: float
    threshold: float
    count: int
    total: int
    proportion: float
    q_power: float


def checkpoint_dir() -> Path:
    return Path(os.environ.get("CHL_CACHE_DIR", Path.home() / ".cache" / "cubichecke"))


# ----------------------------------------------------------------------------
# first moment


def _chars_in_window(Q: float, w: WeightFn):
    lo, hi = w.support
    return list(enumerate_cubic_chars(int(math.floor(lo * Q)) + 1, int(math.ceil(hi * Q))))


def first_moment(
    Q: float,
    w: WeightFn = WeightFn(),
    config: AFEConfig = AFEConfig(),
    constants: Optional[ConstantsBundle] = None,
    checkpoint: Optional[os.PathLike] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> MomentReport:
    """sum of L(1/2, chi) w(N(q)/Q) over primitive cubic chi, against C_0 Q w^(0).

    With ``checkpoint`` set, the running sum is written every
    ``CHECKPOINT_EVERY`` characters and a matching file is resumed from.
    """
    if Q < 50:
        raise ValueError("need Q >= 50")
    t0 = time.perf_counter()
    consts = constants or default_constants()
    chars = _chars_in_window(Q, w)
    key = {"Q": Q, "weight": w.to_dict(), "config": asdict(config), "n_chars": len(chars)}
    start, acc = 0, 0j
    path = Path(checkpoint) if checkpoint else None
    if path is not None and path.exists():
        state = _decode(json.loads(path.read_text()))
        if state.get("key") == _decode(_encode(key)):
            start, acc = state["done"], complex(state["sum"])
    for i in range(start, len(chars)):
        chi = chars[i]
        wt = float(w(chi.norm / Q))
        if wt != 0.0:
            acc += lvalue_afe(chi, 0.0, config).value * wt
        done = i + 1
        if path is not None and (done % CHECKPOINT_EVERY == 0 or done == len(chars)):
            _write_checkpoint(path, {"key": key, "done": done, "sum": acc})
        if progress is not None:
            progress(done, len(chars))
    I = w.weight_integral
    main = consts.C0.value * Q * I
    return MomentReport(
        Q=float(Q),
        raw_sum=complex(acc),
        main_term=main,
        ratio=acc.real / main,
        character_count=len(chars),
        weight_integral=I,
        C0=consts.C0.value,
        runtime={"seconds": time.perf_counter() - t0, "resumed_from": start},
    )


def _write_checkpoint(path: Path, state: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(_encode(state)))
    tmp.replace(path)


# ----------------------------------------------------------------------------
# second moments and non-vanishing


def _slope(grid, values) -> float:
    x, y = np.log(np.asarray(grid, float)), np.log(np.asarray(values, float))
    return float(np.polyfit(x, y, 1)[0])


def _chi_abs2(job) -> float:
    chi, t, config = job
    return abs(lvalue_afe(chi, t, config).value) ** 2


def _psi_abs2(job) -> float:
    m, t, config = job
    return abs(lvalue_psi_afe(HeckePsi.of(m), t, config).value) ** 2


def _chi_abs(job) -> float:
    chi, t, config = job
    return abs(lvalue_afe(chi, t, config).value)


def second_moment_chi(
    Q_grid: Sequence[float], t: float = 0.0, config: AFEConfig = AFEConfig(), mapper: Callable = map
) -> GrowthReport:
    """S(Q) = sum over chi with N(q) <= Q of |L(1/2 + it, chi)|^2 on each grid point.

    ``mapper`` evaluates the per-character jobs (a process pool's ``map`` works);
    results are consumed in order, so the sums do not depend on it.
    """
    grid = sorted(float(q) for q in Q_grid)
    if len(grid) < 4:
        raise ValueError("need at least 4 grid points")
    chars = list(enumerate_cubic_chars(1, int(grid[-1])))
    norms = np.array([c.norm for c in chars])
    sq = np.array(list(mapper(_chi_abs2, [(c, t, config) for c in chars])))
    values = [float(sq[norms <= Q].sum()) for Q in grid]
    counts = [int((norms <= Q).sum()) for Q in grid]
    return GrowthReport(grid, values, counts, _slope(grid, values), t)


def squarefree_m(M: int) -> list:
    """One generator per square-free ideal (m) of Z[i] with 1 < N(m) <= M."""
    return [m for m in enumerate_k(M) if m.norm() > 1 and is_squarefree_k(m)]


def second_moment_psi(
    M_grid: Sequence[float], t: float = 0.0, config: AFEConfig = AFEConfig(), mapper: Callable = map
) -> GrowthReport:
    """sum over square-free (m) with N(m) <= M of |L(1/2 + it, psi_m)|^2.

    m = 1 (where L is a partial Dedekind zeta value) is left out; each ideal
    is counted once since psi_m only depends on (m).
    """
    grid = sorted(float(m) for m in M_grid)
    if len(grid) < 4:
        raise ValueError("need at least 4 grid points")
    ms = squarefree_m(int(grid[-1]))
    norms = np.array([m.norm() for m in ms])
    sq = np.array(list(mapper(_psi_abs2, [(m, t, config) for m in ms])))
    values = [float(sq[norms <= M].sum()) for M in grid]
    counts = [int((norms <= M).sum()) for M in grid]
    return GrowthReport(grid, values, counts, _slope(grid, values), t)


def nonvanishing_count(
    Q: float, threshold: float = 1e-8, config: AFEConfig = AFEConfig(), mapper: Callable = map
) -> NonvanishingReport:
    if not 1e-10 <= threshold <= 1e-3:
        raise ValueError("threshold must lie in [1e-10, 1e-3]")
    chars = list(enumerate_cubic_chars(1, int(Q)))
    count = sum(v > threshold for v in mapper(_chi_abs, [(c, 0.0, config) for c in chars]))
    total = len(chars)
    return NonvanishingReport(float(Q), threshold, int(count), total, count / total if total else 0.0, Q ** (7 / 9))
