import numpy as np
import pytest

from cubichecke import sieve
from cubichecke.cyclo import CycloInt, gcd_f, norm_f
from cubichecke.sieve import (
    SieveInstance,
    _power_norm,
    bilinear_lhs,
    bound_terms,
    character_matrix,
    norm_B,
    norm_C1,
    sieve_columns,
    sieve_rows,
    sieve_scan,
)

GRID = [20, 40, 80, 160]


def _random_instance(Q, M, seed, unimodular=False):
    rng = np.random.default_rng(seed)
    cols = sieve_columns(M)
    a = rng.normal(size=len(cols)) + 1j * rng.normal(size=len(cols))
    if unimodular:
        a = a / np.abs(a)
    return SieveInstance(Q, M, dict(zip(cols, a.tolist()))), a


def test_rows_and_columns():
    rows1, rows2 = sieve_rows(50, "B1"), sieve_rows(50, "B2")
    assert {I.gen for I in rows1} <= {I.gen for I in rows2}
    assert all(50 < I.norm <= 100 for I in rows2)
    assert all(50 < m.norm() <= 100 for m in sieve_columns(50))
    with pytest.raises(ValueError):
        sieve_rows(50, "B3")


def test_matrix_is_readonly():
    X = character_matrix(30, 30)
    with pytest.raises(ValueError):
        X[0, 0] = 0


def test_single_coefficient_counts_coprime_rows():
    cols = sieve_columns(50)
    for m0 in cols[:6]:
        inst = SieveInstance(50, 50, {m0: 1.0})
        expected = sum(norm_f(gcd_f(CycloInt(*I.gen), CycloInt(m0.re, m0.im, 0, 0))) == 1 for I in sieve_rows(50))
        assert abs(bilinear_lhs(inst) - expected) < 1e-9


def test_instance_validation():
    cols = sieve_columns(50)
    with pytest.raises(ValueError):
        SieveInstance(50, 50, {m: 0.0 for m in cols})
    outside = next(m for m in sieve_columns(200) if m.norm() > 100)
    with pytest.raises(ValueError):
        SieveInstance(50, 50, {outside: 1.0})


def test_bilinear_matches_matrix():
    for seed in range(3):
        inst, a = _random_instance(50, 50, seed, unimodular=True)
        X = character_matrix(50, 50)
        assert abs(bilinear_lhs(inst) - np.linalg.norm(X @ a) ** 2) < 1e-8 * inst.norm2 * len(a)


def test_scaling():
    inst, a = _random_instance(40, 40, 7)
    c = 1.5 - 2j
    scaled = SieveInstance(40, 40, {m: c * v for m, v in inst.coefficients.items()})
    assert bilinear_lhs(scaled) == pytest.approx(abs(c) ** 2 * bilinear_lhs(inst), rel=1e-12)


def test_bilinear_below_norm():
    for Q, M in ((40, 40), (80, 20), (20, 80)):
        B = norm_B(Q, M)
        for seed in range(5):
            inst, _ = _random_instance(Q, M, seed)
            assert bilinear_lhs(inst) <= B * inst.norm2 * (1 + 1e-10)


def test_dense_matches_power():
    for Q, M in ((30, 30), (50, 80), (160, 40)):
        for v in ("B1", "B2"):
            p, d = norm_B(Q, M, v), norm_B(Q, M, v, method="dense")
            assert abs(p - d) <= 1e-9 * d


def test_dense_limit(monkeypatch):
    monkeypatch.setattr(sieve, "DENSE_LIMIT", 5)
    with pytest.raises(ValueError):
        norm_B(40, 40, method="dense")


def test_power_norm_edge_cases():
    assert _power_norm(np.zeros((0, 3))) == 0.0
    assert _power_norm(np.zeros((3, 3))) == 0.0
    A = np.diag([3.0, 1.0, 0.5]).astype(complex)
    assert abs(_power_norm(A) - 9.0) < 1e-9


def test_duality_on_grid():
    for Q in GRID:
        for M in GRID:
            b, c = norm_B(Q, M), norm_C1(M, Q)
            assert abs(b - c) <= 1e-9 * b


def test_b1_below_b2_and_row_monotone():
    for Q in GRID:
        for M in GRID:
            assert norm_B(Q, M, "B1") <= norm_B(Q, M, "B2") * (1 + 1e-12)
    X = character_matrix(80, 80)
    half = X[: X.shape[0] // 2]
    assert _power_norm(np.ascontiguousarray(half)) <= _power_norm(X) * (1 + 1e-12)


def test_scan_report():
    reps = sieve_scan(GRID, GRID, trials=25)
    assert len(reps) == 16
    for r in reps:
        assert r.bound_terms == bound_terms(r.Q, r.M)
        assert r.ratio_to_min == pytest.approx(r.lhs / min(r.bound_terms))
        assert r.rows == len(sieve_rows(r.Q)) and r.cols == len(sieve_columns(r.M))
    ratios = [r.ratio_to_min for r in reps]
    assert max(ratios) / min(ratios) < 100
    # trials does not change anything
    assert sieve_scan([20], [20], trials=0) == sieve_scan([20], [20], trials=99)
