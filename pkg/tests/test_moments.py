import json
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from cubichecke import moments
from cubichecke.cyclo_ideals import primary_choice
from cubichecke.gaussian import GaussInt
from cubichecke.moments import (
    GrowthReport,
    MomentReport,
    NonvanishingReport,
    WeightFn,
    first_moment,
    nonvanishing_count,
    second_moment_chi,
    second_moment_psi,
    squarefree_m,
)


def test_bump_weight():
    w = WeightFn.bump()
    assert w(1.0) == 0 and w(2.0) == 0 and w(0.5) == 0 and w(1.5) > 0
    assert abs(w(1.5) - math.exp(-1)) < 1e-15
    assert abs(w.weight_integral - 0.2219969080840397) < 1e-10
    assert abs(w.mellin(1.0) - w.weight_integral) < 1e-12


def test_sampled_weight():
    xs = np.linspace(1, 2, 41)
    w = WeightFn.from_samples(xs, np.sin(np.pi * (xs - 1)) ** 2)
    assert abs(w.weight_integral - 0.5) < 1e-5
    assert WeightFn.from_dict(json.loads(json.dumps(w.to_dict()))) == w
    with pytest.raises(ValueError):
        WeightFn(support=(0.0, 1.0))
    with pytest.raises(ValueError):
        WeightFn(kind="box")


def test_first_moment_basic():
    rep = first_moment(100)
    assert rep.character_count > 0
    assert abs(rep.raw_sum.imag) < 1e-6 * abs(rep.raw_sum.real)
    assert rep.main_term == pytest.approx(rep.C0 * 100 * rep.weight_integral)
    assert rep.ratio == pytest.approx(rep.raw_sum.real / rep.main_term)
    with pytest.raises(ValueError):
        first_moment(10)


def test_first_moment_linearity():
    a = first_moment(100)
    b = first_moment(100, WeightFn.bump().scaled(2.0))
    assert abs(b.raw_sum - 2 * a.raw_sum) < 1e-12 * abs(a.raw_sum)
    assert b.main_term == pytest.approx(2 * a.main_term, rel=1e-12)
    assert b.ratio == pytest.approx(a.ratio, rel=1e-12)


def test_first_moment_primary_rule_invariance():
    a = first_moment(150)
    with primary_choice("shifted"):
        b = first_moment(150)
    assert abs(b.raw_sum - a.raw_sum) <= 1e-9 * abs(a.raw_sum)


def test_reports_round_trip():
    rep = first_moment(60)
    again = MomentReport.from_json(rep.to_json())
    assert again == rep and isinstance(again.raw_sum, complex)
    g = GrowthReport([1.0, 2.0], [0.5, 1.5], [1, 2], 1.2, 0.0)
    assert GrowthReport.from_json(g.to_json()) == g
    n = NonvanishingReport(50.0, 1e-8, 3, 4, 0.75, 50 ** (7 / 9))
    assert NonvanishingReport.from_json(n.to_json()) == n


def test_checkpoint_resume(tmp_path, monkeypatch):
    monkeypatch.setattr(moments, "CHECKPOINT_EVERY", 5)
    path = tmp_path / "ck.json"
    full = first_moment(100, checkpoint=path)
    assert path.exists()
    state = json.loads(path.read_text())
    assert state["done"] == full.character_count

    # a partial run interrupted after 10 characters resumes from the file
    class Stop(Exception):
        pass

    def interrupt(done, total):
        if done == 10:
            raise Stop

    path2 = tmp_path / "ck2.json"
    with pytest.raises(Stop):
        first_moment(100, checkpoint=path2, progress=interrupt)
    assert json.loads(path2.read_text())["done"] == 10
    resumed = first_moment(100, checkpoint=path2)
    assert resumed.runtime["resumed_from"] == 10
    assert abs(resumed.raw_sum - full.raw_sum) < 1e-12


def test_checkpoint_key_mismatch_ignored(tmp_path):
    path = tmp_path / "ck.json"
    first_moment(60, checkpoint=path)
    rep = first_moment(80, checkpoint=path)
    assert rep.runtime["resumed_from"] == 0


def test_second_moment_chi_small():
    rep = second_moment_chi([50, 100, 200, 400])
    assert all(v >= 0 for v in rep.values)
    assert all(a <= b for a, b in zip(rep.values, rep.values[1:]))
    assert all(a <= b for a, b in zip(rep.counts, rep.counts[1:]))
    assert math.isfinite(rep.slope)
    with pytest.raises(ValueError):
        second_moment_chi([50, 100, 200])


def test_second_moment_mapper_independent():
    a = second_moment_chi([30, 60, 90, 120])
    with ThreadPoolExecutor(2) as ex:
        b = second_moment_chi([30, 60, 90, 120], mapper=ex.map)
    assert a == b


def test_second_moment_psi_small():
    rep = second_moment_psi([5, 10, 15, 20])
    assert all(v >= 0 for v in rep.values)
    assert all(a <= b for a, b in zip(rep.values, rep.values[1:]))


@pytest.mark.slow
def test_second_moment_psi_slope_band():
    # the grid {100, ..., 800} takes a quarter of an hour; this one takes about a minute
    rep = second_moment_psi([25, 50, 100, 200])
    assert rep.counts == [12, 26, 53, 105]
    assert 0 < rep.slope <= 1.8


def test_squarefree_m_counts_ideals_once():
    ms = squarefree_m(50)
    assert len({(m.norm(), m) for m in ms}) == len(ms)
    # no two are associates
    units = [GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1)]
    seen = set()
    for m in ms:
        assoc = {u * m for u in units}
        assert not (assoc & seen)
        seen |= assoc
    assert GaussInt(2, 0) not in ms and all(m.norm() > 1 for m in ms)


def test_nonvanishing():
    rep = nonvanishing_count(100)
    assert 1 <= rep.count <= rep.total
    assert rep.proportion == pytest.approx(rep.count / rep.total)
    assert rep.q_power == pytest.approx(100 ** (7 / 9))
    for bad in (1e-11, 1e-2):
        with pytest.raises(ValueError):
            nonvanishing_count(100, bad)
