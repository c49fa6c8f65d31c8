import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubichecke.cyclo import (
    DELTA_F,
    EPS,
    OMEGA,
    ONE,
    ONE_PLUS_I,
    SQRT3,
    ZETA,
    CycloInt,
    I,
    divmod_f,
    format_cyclo,
    galois_sigma,
    galois_tau,
    gcd_f,
    norm_f,
    norm_f_to_k,
    parse_cyclo,
    t_norm,
    t_try_div,
    t_unit_value,
    trace_f,
    trace_f_to_k,
    unit_decompose,
)
from cubichecke.cyclo_ideals import (
    enumerate_primary_f,
    factor_f,
    has_k_rational_prime_divisor,
    is_primary,
    is_squarefree_f,
    mobius_f,
    primary_choice,
    primary_f,
    primes_over,
)
from cubichecke.gaussian import GaussInt, norm_k, primary_k

c = st.integers(-12, 12)
elements = st.tuples(c, c, c, c).map(lambda t: CycloInt(*t))
nonzero = elements.filter(lambda x: not x.is_zero())


def test_multiplication_table():
    assert OMEGA * OMEGA == CycloInt(-1, 0, -1, 0)  # w^2 = -1 - w
    assert I * I == CycloInt(-1, 0, 0, 0)
    assert SQRT3 * SQRT3 == CycloInt(3, 0, 0, 0)
    assert ZETA**12 == ONE and ZETA**6 == -ONE
    assert DELTA_F == 2 * SQRT3 * I or DELTA_F == -(2 * SQRT3 * I)


def test_galois_examples():
    assert galois_sigma(OMEGA) == OMEGA * OMEGA
    assert galois_sigma(I) == I
    assert galois_tau(I) == -I
    assert galois_tau(OMEGA) == OMEGA
    assert galois_sigma(SQRT3) == -SQRT3


@given(elements, elements)
def test_galois_automorphisms(x, y):
    for g in (galois_sigma, galois_tau):
        assert g(g(x)) == x
        assert g(x * y) == g(x) * g(y)
        assert g(x + y) == g(x) + g(y)
        assert norm_f(g(x)) == norm_f(x)
    assert galois_sigma(galois_tau(x)) == galois_tau(galois_sigma(x))


def test_norm_examples():
    assert norm_f(ONE_PLUS_I) == 4
    assert norm_f(DELTA_F) == 144
    nk = norm_f_to_k(OMEGA)
    assert nk.is_unit() and primary_k(nk)[1] == GaussInt(1, 0)


def test_norm_relative_norm_random():
    rng = random.Random(1)
    for _ in range(1000):
        x = CycloInt(*(rng.randint(-40, 40) for _ in range(4)))
        nk = x * galois_sigma(x)
        assert nk.in_k()
        assert norm_f(x) == norm_k(nk.to_gauss()) == norm_k(norm_f_to_k(x))


@given(elements, elements)
def test_norm_multiplicative_and_traces(x, y):
    assert norm_f(x * y) == norm_f(x) * norm_f(y)
    assert trace_f(x + y) == trace_f(x) + trace_f(y)
    tk = trace_f_to_k(x)
    assert CycloInt(tk.re, tk.im, 0, 0) == x + galois_sigma(x)


@given(elements, nonzero)
def test_divmod_reduces_norm(a, b):
    q, r = divmod_f(a, b)
    assert q * b + r == a
    assert norm_f(r) < norm_f(b)


def test_divmod_examples():
    assert divmod_f(CycloInt(0, 0, 0, 0), CycloInt(3, 1, 0, 0)) == (CycloInt(0, 0, 0, 0), CycloInt(0, 0, 0, 0))
    q, r = divmod_f(CycloInt(7, 0, 0, 0), EPS)
    assert r.is_zero() and q * EPS == CycloInt(7, 0, 0, 0)


@given(nonzero, nonzero)
def test_gcd_divides(a, b):
    g = gcd_f(a, b)
    assert g.divides(a) and g.divides(b)


def test_factor_examples():
    f2 = factor_f(2)
    assert len(f2.factors) == 1 and f2.factors[0][1] == 2
    assert t_try_div(f2.factors[0][0].t, ONE_PLUS_I.t) is not None and norm_f(f2.factors[0][0]) == 4
    f3 = factor_f(3)
    assert len(f3.factors) == 1 and f3.factors[0][1] == 2 and norm_f(f3.factors[0][0]) == 9
    f13 = factor_f(13)
    assert [(norm_f(p), e) for p, e in f13.factors] == [(13, 1)] * 4


def test_factor_roundtrip_small_norms():
    rng = random.Random(2)
    done = 0
    while done < 400:
        x = CycloInt(*(rng.randint(-6, 6) for _ in range(4)))
        if x.is_zero() or norm_f(x) > 10**4:
            continue
        f = factor_f(x)
        assert f.value() == x and f.unit.is_unit()
        gens = [p for p, _ in f.factors]
        for p, q in itertools.combinations(gens, 2):
            assert t_try_div(p.t, q.t) is None
        done += 1


def test_primary_examples():
    assert primary_f(1) == ONE
    P = primes_over(13)[0].cyclo
    a, b, cc, d = P
    assert (a - 1) % 3 == 0 and b % 3 == 0 and (cc + d) % 3 == 0
    for u in (EPS, ZETA**4, EPS * ZETA**4, EPS**2):
        assert primary_f(u * P) == P
    with pytest.raises(ValueError):
        primary_f(SQRT3)


@given(nonzero)
def test_primary_properties(x):
    if norm_f(x) % 3 == 0 or norm_f(x) > 10**6:
        return
    p = primary_f(x)
    assert is_primary(p)
    assert t_try_div(x.t, p.t) is not None and norm_f(p) == norm_f(x)
    for u in (I, OMEGA, ZETA, EPS):
        assert primary_f(u * x) == p


def test_primary_multiplicative_closure():
    ps = [P.cyclo for p in (7, 13, 37, 61) for P in primes_over(p)]
    for a, b in itertools.combinations(ps, 2):
        if t_try_div(a.t, b.t) is None:
            assert primary_f(a * b) == a * b


def test_k_rational_divisor_examples():
    P = primes_over(13)[0].cyclo
    assert not has_k_rational_prime_divisor(P)
    assert has_k_rational_prime_divisor(P * galois_sigma(P))
    assert has_k_rational_prime_divisor(CycloInt(7, 0, 0, 0))
    for Q in primes_over(7):
        assert not has_k_rational_prime_divisor(Q.cyclo)
    assert mobius_f(P) == -1 and mobius_f(P * P) == 0 and is_squarefree_f(P)


def test_enumerate_examples():
    got = list(enumerate_primary_f(13, ["squarefree", "coprime6", "no_k_rational"]))
    assert got[0] == ONE and len(got) == 5
    assert all(norm_f(x) == 13 for x in got[1:])
    assert list(enumerate_primary_f(1)) == [ONE]


def _scan_ideals(bound: int, box: int) -> list:
    # one representative per ideal among all elements in a coordinate box
    by_norm = {}
    rng = range(-box, box + 1)
    for t in itertools.product(rng, rng, rng, rng):
        N = t_norm(t)
        if 0 < N <= bound:
            reps = by_norm.setdefault(N, [])
            if not any(t_try_div(t, r) is not None for r in reps):
                reps.append(t)
    return by_norm


def test_enumerate_matches_lattice_scan():
    # the balanced generator of an ideal of norm <= 200 has coordinates below 12
    scan = _scan_ideals(200, 12)
    listed = list(enumerate_primary_f(200))
    counts = {}
    for x in listed:
        counts[norm_f(x)] = counts.get(norm_f(x), 0) + 1
    assert counts == {N: len(v) for N, v in scan.items()}
    norms = [norm_f(x) for x in listed]
    assert norms == sorted(norms)


def test_enumeration_invariant_under_primary_rule():
    with primary_choice("shifted"):
        shifted = list(enumerate_primary_f(400, ["squarefree", "coprime6"]))
    plain = list(enumerate_primary_f(400, ["squarefree", "coprime6"]))
    assert len(shifted) == len(plain)
    assert shifted != plain
    for y in shifted:
        assert is_primary(y)
        matches = [x for x in plain if norm_f(x) == norm_f(y) and t_try_div(y.t, x.t) is not None]
        assert len(matches) == 1


def test_units():
    for j in range(12):
        for k in range(-3, 4):
            u = CycloInt(*t_unit_value(j, k))
            d = unit_decompose(u)
            assert (d.zeta_exp, d.eps_exp) == (j, k)
            assert d.value() == u
    with pytest.raises(ValueError):
        unit_decompose(ONE_PLUS_I)


def test_text_format():
    assert parse_cyclo("(1,-2,3,-4)") == CycloInt(1, -2, 3, -4)
    assert parse_cyclo("[0,1,0,0]") == I
    assert parse_cyclo(format_cyclo(EPS)) == EPS
    with pytest.raises(ValueError):
        parse_cyclo("(1,2,3)")
