"""Oracle-equivalence checks behind ``cubichecke selftest``.

Each check compares a fast routine with its definition-level oracle on a
bounded range; ``quick`` shrinks the ranges to a few seconds in total.
"""
from __future__ import annotations

import cmath
import math
import time

from .characters import CubicCharacter, census_total, enumerate_cubic_chars
from .cyclo_ideals import admissible_ideals, enumerate_ideals_f
from .gauss import gauss_fast_g3, gauss_g3, gauss_gk
from .lfunctions import lvalue_afe, lvalue_direct
from .symbol import sqrt3_exp, symbol_def_exp, symbol_fast_exp

_W = cmath.exp(2j * math.pi / 3)


def check_symbol(n_bound: int, m_bound: int) -> dict:
    ns = [I for I in enumerate_ideals_f(n_bound, squarefree=True, coprime6=True)]
    ms = [I.gen for I in enumerate_ideals_f(m_bound)]
    bad = sum(symbol_fast_exp(m, I.gen) != symbol_def_exp(m, I.gen) for I in ns for m in ms)
    return {"pairs": len(ns) * len(ms), "mismatches": bad, "passed": bad == 0}


def check_gauss(bound: int) -> dict:
    worst = 0.0
    for I in admissible_ideals(bound):
        g = gauss_fast_g3((1, 0, 0, 0), I.cyclo)
        worst = max(worst, abs(g - gauss_g3(1, I.cyclo)), abs(abs(g) ** 2 - I.norm) / I.norm)
    return {"bound": bound, "max_error": worst, "passed": worst < 1e-6}


def check_bridge(bound: int) -> dict:
    worst = 0.0
    for I in admissible_ideals(bound):
        chi = CubicCharacter.from_n(I.cyclo)
        lhs = gauss_gk(1, chi)
        rhs = _W ** (-sqrt3_exp(I.gen)) * gauss_fast_g3((1, 0, 0, 0), I.cyclo)
        worst = max(worst, abs(lhs - rhs))
    return {"bound": bound, "max_error": worst, "passed": worst < 1e-8}


def check_census(bound: int) -> dict:
    counted = sum(1 for _ in enumerate_cubic_chars(1, bound))
    expected = census_total(bound)
    return {"bound": bound, "enumerated": counted, "census": expected, "passed": counted == expected}


def check_lvalues(bound: int) -> dict:
    worst = 0.0
    chars = list(enumerate_cubic_chars(1, bound))
    for chi in chars:
        worst = max(worst, abs(lvalue_afe(chi).value - lvalue_direct(chi).value))
    return {"bound": bound, "characters": len(chars), "max_error": worst, "passed": worst < 1e-5}


def run_selftest(quick: bool = False) -> list[dict]:
    plan = [
        ("symbol", check_symbol, (500, 60) if quick else (5000, 300)),
        ("gauss", check_gauss, (300,) if quick else (3000,)),
        ("bridge", check_bridge, (300,) if quick else (2000,)),
        ("census", check_census, (150,) if quick else (500,)),
        ("lvalues", check_lvalues, (100,) if quick else (500,)),
    ]
    out = []
    for name, fn, args in plan:
        t0 = time.perf_counter()
        res = fn(*args)
        out.append({"name": name, **res, "seconds": round(time.perf_counter() - t0, 3)})
    return out
