import random

import numpy as np
import pytest

from cubichecke.characters import (
    CubicCharacter,
    HeckePsi,
    census_primitive,
    census_total,
    chars_by_conductor,
    enumerate_cubic_chars,
    is_primitive_direct,
    lambda_for_m,
    lambda_from_generators,
    order3_primitive_tables,
    psi_eval,
)
from cubichecke.cyclo import (
    EPS,
    ONE_PLUS_I,
    SQRT3,
    ZETA,
    CycloInt,
    I,
    galois_sigma,
    t_mod_int,
)
from cubichecke.cyclo_ideals import enumerate_ideals_f, primary_choice, primary_f
from cubichecke.gaussian import GaussInt, enumerate_k, is_squarefree_k, primary_k
from cubichecke.symbol import symbol_def_exp


def test_conductor_13_and_5():
    by_q = chars_by_conductor(13)
    assert {q.norm() for q in by_q} == {13}
    for q, chis in by_q.items():
        assert len(chis) == 2
        a, b = chis
        assert b == a.conj() or a == b.conj()
    assert not any(q.norm() == 5 for q in chars_by_conductor(60))


def test_count_matches_census_small():
    assert sum(1 for _ in enumerate_cubic_chars(1, 100)) == census_total(100)


def test_census_per_conductor():
    for q, chis in chars_by_conductor(300).items():
        assert census_primitive(q) == len(chis)


def test_values_at_units_and_one():
    for chi in enumerate_cubic_chars(1, 300):
        assert chi(GaussInt(1, 0)).e == 0
        assert chi(GaussInt(0, 1)).e == 0
        assert chi(chi.q).is_zero


def test_values_match_group_oracle():
    for q, chis in chars_by_conductor(500).items():
        U, tables = order3_primitive_tables(q)
        ours = {tuple(chi.exponents(U[:, 0], U[:, 1]).tolist()) for chi in chis}
        oracle = {tuple(v.tolist()) for v in tables}
        assert ours == oracle
        for chi in chis:
            assert is_primitive_direct(chi)


def test_exponents_agree_with_symbol():
    rng = random.Random(1)
    for chi in list(enumerate_cubic_chars(1, 400))[:20]:
        re = np.array([rng.randint(-500, 500) for _ in range(50)])
        im = np.array([rng.randint(-500, 500) for _ in range(50)])
        vec = chi.exponents(re, im)
        for a, b, e in zip(re, im, vec):
            v = symbol_def_exp(CycloInt(int(a), int(b), 0, 0), chi.n)
            assert (v is None and e == -1) or v == e


def test_conjugate_pairing():
    chis = list(enumerate_cubic_chars(1, 1000))
    names = {chi.n for chi in chis}
    for chi in chis:
        bar = chi.conj()
        assert bar.n in names and bar.q == chi.q
        m = GaussInt(7, 3)
        assert chi(m).conj() == bar(m)


def test_character_set_invariant_under_primary_rule():
    def as_functions():
        out = set()
        pts = [GaussInt(a, b) for a in range(-6, 7) for b in range(-6, 7)]
        for chi in enumerate_cubic_chars(1, 400):
            out.add((chi.q, tuple(chi(m).e for m in pts)))
        return out

    base = as_functions()
    with primary_choice("shifted"):
        shifted = as_functions()
    assert base == shifted


def test_psi_examples():
    psi1 = HeckePsi.of(1)
    assert psi1.is_principal()
    for I_ in enumerate_ideals_f(500, coprime6=True)[:80]:
        assert psi1(I_.cyclo).e == 0
    for m in (GaussInt(2, 1), GaussInt(3, 2), GaussInt(1, 1), GaussInt(3, 0)):
        psi = HeckePsi.of(m)
        assert not psi.is_principal()
        for I_ in enumerate_ideals_f(400, coprime6=True)[1:60]:
            v = psi_eval(psi, I_.cyclo)
            assert v.is_zero or (v**3).e == 0
            # ideal-level: any unit multiple gives the same value
            assert psi(ZETA * I_.cyclo) == v and psi(EPS * I_.cyclo) == v
            assert v.e == symbol_def_exp(psi.mt, I_.cyclo)
    with pytest.raises(ValueError):
        HeckePsi.of(GaussInt(2, 0))


def test_psi_principal_only_for_units():
    for m in enumerate_k(60, is_squarefree_k):
        assert HeckePsi.of(m).is_principal() == (m.norm() == 1)
    assert HeckePsi.of(GaussInt(0, 1)).is_principal()


def test_psi_conductor_bounds():
    for m in list(enumerate_k(80, is_squarefree_k))[1:]:
        psi = HeckePsi.of(m)
        f, lo, hi = psi.conductor, psi.conductor_lower, psi.conductor_upper
        assert f.divides(hi)
        assert lo.divides(f)


def test_lambda_examples():
    lam_eps = lambda_from_generators(EPS)
    lam_i = lambda_from_generators(I)
    lam_2 = lambda_from_generators(ONE_PLUS_I, reps=6)
    for I_ in enumerate_ideals_f(3000, coprime6=True):
        n = I_.cyclo
        assert lam_i.exp(n) == 0
        if t_mod_int(n.t, 9) == (1, 0, 0, 0):
            assert lam_eps.exp(n) == 0
        assert lam_2.exp(n) == symbol_def_exp(ONE_PLUS_I, n)
        assert lam_eps.exp(n) == symbol_def_exp(EPS, n)
    with pytest.raises(ValueError):
        lambda_from_generators(CycloInt(5, 0, 0, 0))
    lam_s3 = lambda_from_generators(SQRT3 * ONE_PLUS_I)
    assert lam_s3.l0 == SQRT3 * ONE_PLUS_I


def test_lambda_multiplicative_on_primary():
    lam = lambda_from_generators(SQRT3 * EPS)
    ns = [I_.cyclo for I_ in enumerate_ideals_f(300, coprime6=True)]
    for a in ns[:30]:
        for b in ns[:30]:
            assert lam.exp(a * b) == (lam.exp(a) + lam.exp(b)) % 3


def test_lambda_for_m_is_function_mod_18():
    lam = lambda_for_m(GaussInt(2, 1) * GaussInt(1, 1))
    assert lam.table


def test_from_n_normalization():
    for I_ in enumerate_ideals_f(200, squarefree=True, coprime6=True, no_k_rational=True)[1:]:
        chi = CubicCharacter.from_n(I_.cyclo)
        nk = I_.cyclo * galois_sigma(I_.cyclo)
        assert chi.q == primary_k(nk.to_gauss())[1]
        assert primary_f(I_.cyclo) == I_.cyclo
