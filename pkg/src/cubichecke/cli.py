"""Command-line front end: ``cubichecke <subcommand> [flags]``.

Scalar results are printed as one JSON document, streams (character lists,
factorizations) as JSON Lines, and grids as CSV with ``--format csv``.  Every
report embeds the configuration that produced it.  Exit status is 0 on
success, 1 on a domain error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .cache import ENV_VAR, JsonCache, default_cache_dir

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    flags: dict
    cache_dir: str
    output_format: str = "json"
    threads: int = 1

    def as_report(self) -> dict:
        return {"subcommand": self.subcommand, "flags": self.flags, "format": self.output_format, "version": __version__}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ----------------------------------------------------------------------------
# output


def _plain(x):
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.generic):
        return _plain(x.item())
    if isinstance(x, float) and not np.isfinite(x):
        return str(x)
    return x


def _dump(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True)


def _emit_doc(out, cfg: RunConfig, result: dict):
    out.write(_dump({"config": cfg.as_report(), "result": result}) + "\n")


def _emit_rows(out, cfg: RunConfig, rows: list[dict]):
    if cfg.output_format == "csv":
        if not rows:
            return
        w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (_dump(v) if isinstance(v, (dict, list, tuple, complex)) else v) for k, v in r.items()})
        return
    out.write(_dump({"config": cfg.as_report()}) + "\n")
    for r in rows:
        out.write(_dump(r) + "\n")


@contextmanager
def _mapper(threads: int):
    if threads <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield lambda fn, jobs: pool.map(fn, jobs, chunksize=16)


# ----------------------------------------------------------------------------
# subcommands


def _cmd_symbol(a, cfg, out):
    from .cyclo import format_cyclo, parse_cyclo
    from .symbol import symbol

    m, n = parse_cyclo(a.m), parse_cyclo(a.n)
    v = symbol(m, n, method=a.method)
    _emit_doc(out, cfg, {"m": format_cyclo(m), "n": format_cyclo(n), "value": str(v), "exponent": v.e, "method": a.method})


def _cmd_factor_k(a, cfg, out):
    from .gaussian import factor_k, format_gauss, parse_gauss

    z = parse_gauss(a.z)
    f = factor_k(z)
    res = {"z": format_gauss(z), "unit": format_gauss(f.unit), "factors": [[format_gauss(p), e] for p, e in f.factors]}
    _emit_doc(out, cfg, res)


def _cmd_factor_f(a, cfg, out):
    from .cyclo import format_cyclo, parse_cyclo
    from .cyclo_ideals import factor_f

    n = parse_cyclo(a.n)
    with _rule(a):
        f = factor_f(n)
    res = {"n": format_cyclo(n), "unit": format_cyclo(f.unit), "factors": [[format_cyclo(g), e] for g, e in f.factors]}
    _emit_doc(out, cfg, res)


@contextmanager
def _rule(a):
    from .cyclo_ideals import primary_choice

    with primary_choice(getattr(a, "primary_rule", "balanced")):
        yield


def _cmd_gauss(a, cfg, out):
    from .cyclo import format_cyclo, parse_cyclo
    from .gauss import gauss_fast_g3, gauss_g3

    r, n = parse_cyclo(a.r), parse_cyclo(a.n)
    if a.l < 1:
        raise UsageError("gauss: --l must be positive")
    method = "def" if a.l != 1 else a.method
    g = gauss_g3(r, n, a.l) if method == "def" else gauss_fast_g3(r, n)
    res = {"r": format_cyclo(r), "n": format_cyclo(n), "l": a.l, "re": g.real, "im": g.imag}
    _emit_doc(out, cfg, {**res, "abs2": abs(g) ** 2, "norm": n.norm(), "method": method})


def _char_list(Qmin: int, Qmax: int, cache: JsonCache) -> list[list]:
    from .characters import enumerate_cubic_chars

    def compute():
        return [[list(c.n.t), [c.q.re, c.q.im], c.norm] for c in enumerate_cubic_chars(Qmin, Qmax)]

    return cache.get_or_compute("chars", {"Qmin": Qmin, "Qmax": Qmax}, compute)


def _cmd_chars(a, cfg, out):
    from .gaussian import GaussInt, format_gauss

    if a.qmin < 1 or a.qmax < a.qmin:
        raise UsageError("chars: need 1 <= --qmin <= --qmax")
    cache = JsonCache(cfg.cache_dir)
    rows = [
        {"q": format_gauss(GaussInt(*q)), "n": list(n), "norm": N}
        for n, q, N in _char_list(a.qmin, a.qmax, cache)
    ]
    _emit_rows(out, cfg, rows)


def _afe_config(a):
    from .lfunctions import AFEConfig

    A = None if getattr(a, "A", "auto") == "auto" else float(a.A)
    return AFEConfig(G=a.G, T=a.T, A=A)


def _cmd_lvalue(a, cfg, out):
    from .characters import CubicCharacter
    from .cyclo import parse_cyclo
    from .gaussian import parse_gauss
    from .lfunctions import lvalue_afe, lvalue_direct, lvalue_psi_afe

    if (a.n is None) == (a.m is None):
        raise UsageError("lvalue: give exactly one of --n (chi_n) or --m (psi_m)")
    conf = _afe_config(a)
    if a.n is not None:
        chi = CubicCharacter.from_n(parse_cyclo(a.n))
        res = lvalue_afe(chi, a.t, conf) if a.method == "afe" else lvalue_direct(chi, a.t)
        target = {"n": a.n, "conductor_norm": chi.norm}
    else:
        m = parse_gauss(a.m)
        if a.method == "afe":
            res = lvalue_psi_afe(m, a.t, conf)
        else:
            from .characters import HeckePsi

            res = lvalue_direct(HeckePsi.of(m), a.t)
        target = {"m": a.m}
    v = res.value
    body = {"re": v.real, "im": v.imag, "abs": abs(v), "root_number": res.root_number, "terms": res.terms_used}
    _emit_doc(out, cfg, {**target, "t": a.t, "method": a.method, **body, "tail_bound": res.tail_bound, "extra": res.extra})


def _cmd_hseries(a, cfg, out):
    from .cyclo import parse_cyclo
    from .hseries import HSeriesQuery, h_partial

    s = _parse_complex(a.s)
    q = HSeriesQuery(parse_cyclo(a.r), s, cutoff=a.cutoff, avoid=parse_cyclo(a.avoid) if a.avoid else None)
    v, tail = h_partial(q)
    _emit_doc(out, cfg, {"r": a.r, "s": s, "cutoff": a.cutoff, "re": v.real, "im": v.imag, "tail": tail})


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def _cmd_moment1(a, cfg, out):
    from .moments import WeightFn, first_moment

    ck = os.path.join(cfg.cache_dir, "moment1", f"Q{a.Q:g}.json") if a.checkpoint else None
    rep = first_moment(a.Q, WeightFn(), _afe_config(a), checkpoint=ck)
    res = asdict(rep)
    res.pop("runtime")  # keeps the output byte-stable
    _emit_doc(out, cfg, res)


def _cmd_moment2(a, cfg, out):
    from .moments import second_moment_chi, second_moment_psi

    grid = [float(x) for x in a.grid.split(",")]
    fn = second_moment_chi if a.family == "chi" else second_moment_psi
    with _mapper(cfg.threads) as mp:
        rep = fn(grid, a.t, _afe_config(a), mapper=mp)
    if cfg.output_format == "csv":
        rows = [{"X": g, "value": v, "count": c, "slope": rep.slope} for g, v, c in zip(rep.grid, rep.values, rep.counts)]
        _emit_rows(out, cfg, rows)
    else:
        _emit_doc(out, cfg, {"family": a.family, **asdict(rep)})


def _cmd_nonvanish(a, cfg, out):
    from .moments import nonvanishing_count

    with _mapper(cfg.threads) as mp:
        rep = nonvanishing_count(a.Q, a.threshold, _afe_config(a), mapper=mp)
    _emit_doc(out, cfg, asdict(rep))


def _cmd_constants(a, cfg, out):
    from .constants import ConstantsBundle, constants_bundle

    cache = JsonCache(cfg.cache_dir)
    d = cache.get_or_compute("constants", {"precision": a.prec}, lambda: constants_bundle(a.prec).to_dict())
    _emit_doc(out, cfg, ConstantsBundle.from_dict(d).to_dict())


def _cmd_sieve(a, cfg, out):
    from .sieve import sieve_scan

    Qs = [int(x) for x in a.Q.split(",")]
    Ms = [int(x) for x in a.M.split(",")]
    reps = sieve_scan(Qs, Ms, a.variant)
    rows = [
        {
            "Q": r.Q,
            "M": r.M,
            "variant": r.variant,
            "norm": r.lhs,
            "bound1": r.bound_terms[0],
            "bound2": r.bound_terms[1],
            "bound3": r.bound_terms[2],
            "ratio_to_min": r.ratio_to_min,
            "rows": r.rows,
            "cols": r.cols,
        }
        for r in reps
    ]
    _emit_rows(out, cfg, rows)


def _cmd_poisson(a, cfg, out):
    from .characters import CubicCharacter
    from .cyclo import parse_cyclo
    from .lfunctions import poisson_check

    chi = CubicCharacter.from_n(parse_cyclo(a.n)) if a.n else None
    lhs, rhs, diff = poisson_check(chi, a.X)
    _emit_doc(out, cfg, {"n": a.n, "X": a.X, "lhs": lhs, "rhs": rhs, "difference": diff})


def _cmd_selftest(a, cfg, out):
    from .selftest import run_selftest

    results = run_selftest(quick=a.quick)
    ok = all(r["passed"] for r in results)
    _emit_doc(out, cfg, {"quick": a.quick, "passed": ok, "checks": results})
    return EXIT_OK if ok else EXIT_DOMAIN


# ----------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubichecke", description=__doc__.splitlines()[0])
    p.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    p.add_argument("--cache-dir", default=None, help=f"defaults to ${ENV_VAR} or ~/.cache/cubichecke")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes; 1 for bit-stable debugging")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        return sp

    def afe_flags(sp, split=False):
        sp.add_argument("--t", type=float, default=0.0)
        sp.add_argument("--G", choices=("one", "gauss"), default="one", help="AFE weight G(s)")
        sp.add_argument("--T", type=float, default=30.0, help="contour height")
        if split:
            sp.add_argument("--A", default="auto", help="first-sum length; auto is sqrt of the conductor norm")

    sp = add("symbol", _cmd_symbol, "cubic residue symbol (m/n)_3")
    sp.add_argument("--m", required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--method", choices=("fast", "def"), default="fast")

    sp = add("factor-k", _cmd_factor_k, "factor a Gaussian integer")
    sp.add_argument("--z", required=True)

    sp = add("factor-f", _cmd_factor_f, "factor an element of Z[zeta_12]")
    sp.add_argument("--n", required=True)
    sp.add_argument("--primary-rule", choices=("balanced", "shifted"), default="balanced")

    sp = add("gauss", _cmd_gauss, "cubic Gauss sum g_3(r, n)")
    sp.add_argument("--n", required=True)
    sp.add_argument("--r", default="(1,0,0,0)")
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--method", choices=("fast", "def"), default="fast")

    sp = add("chars", _cmd_chars, "primitive cubic characters by conductor norm")
    sp.add_argument("--qmin", type=int, default=1)
    sp.add_argument("--qmax", type=int, required=True)

    sp = add("lvalue", _cmd_lvalue, "central L-values")
    sp.add_argument("--n")
    sp.add_argument("--m")
    sp.add_argument("--method", choices=("afe", "direct"), default="afe")
    afe_flags(sp, split=True)

    sp = add("hseries", _cmd_hseries, "truncated Gauss-sum series h(r, s)")
    sp.add_argument("--r", required=True)
    sp.add_argument("--s", default="2")
    sp.add_argument("--cutoff", type=int, default=4000)
    sp.add_argument("--avoid")

    sp = add("moment1", _cmd_moment1, "smoothed first moment")
    sp.add_argument("--Q", type=float, required=True)
    sp.add_argument("--weight", choices=("bump",), default="bump")
    sp.add_argument("--checkpoint", action="store_true")
    afe_flags(sp)

    sp = add("moment2", _cmd_moment2, "second-moment growth")
    sp.add_argument("--grid", required=True, help="comma-separated Q (or M) values")
    sp.add_argument("--family", choices=("chi", "psi"), default="chi")
    afe_flags(sp)

    sp = add("nonvanish", _cmd_nonvanish, "count central values above a threshold")
    sp.add_argument("--Q", type=float, required=True)
    sp.add_argument("--threshold", type=float, default=1e-8)
    afe_flags(sp)

    sp = add("constants", _cmd_constants, "main-term constants")
    sp.add_argument("--prec", type=float, default=1e-7)

    sp = add("sieve", _cmd_sieve, "large-sieve norms on a grid")
    sp.add_argument("--Q", required=True, help="comma-separated")
    sp.add_argument("--M", required=True, help="comma-separated")
    sp.add_argument("--variant", choices=("B1", "B2"), default="B1")

    sp = add("poisson-check", _cmd_poisson, "both sides of the Poisson identity")
    sp.add_argument("--n", help="defining element of chi; omit for the principal character")
    sp.add_argument("--X", type=float, required=True)

    sp = add("selftest", _cmd_selftest, "oracle-equivalence checks")
    sp.add_argument("--quick", action="store_true")
    return p


def dispatch(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if a.threads < 1:
            raise UsageError("--threads must be at least 1")
        if a.output_format == "csv" and a.subcommand not in ("chars", "moment2", "sieve"):
            raise UsageError(f"--format csv is only available for grids and lists, not {a.subcommand}")
        flags = {k: v for k, v in vars(a).items() if k not in ("fn", "subcommand", "output_format", "cache_dir", "threads")}
        cache_dir = str(a.cache_dir or default_cache_dir())
        cfg = RunConfig(a.subcommand, flags, cache_dir, a.output_format, a.threads)
        code = a.fn(a, cfg, out)
        return EXIT_OK if code is None else code
    except UsageError as exc:
        err.write(f"{exc}\n")
        parser.print_usage(err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (ValueError, ArithmeticError, ZeroDivisionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
