import math

import pytest

import ueks


def test_desu_two_points():
    r = ueks.statistic("desu", [1.0, 2.0])
    assert r["value"] == pytest.approx(0.5)
    assert r["value"] == max(r["plus"]["value"], r["minus"]["value"])


def test_ties_raise():
    with pytest.raises(ueks.TieError):
        ueks.statistic("desu", [1.0, 1.0, 2.0])


def test_unknown_test_id():
    with pytest.raises(ueks.UeksError):
        ueks.statistic("nope", [1.0, 2.0])


def test_variance_maxima():
    t, v = ueks.maximize_variance("desu")
    assert t == pytest.approx(math.log(2), abs=1e-8)
    assert v == pytest.approx(1 / 16, abs=1e-12)
    assert ueks.leading_coeff("bh") == pytest.approx(27 / 8, rel=1e-9)


def test_f0_small_a():
    a = 0.01
    assert 0.99 <= ueks.kolmogorov_f0(a) / (2 * a * a) <= 1.01


def test_simulation_is_deterministic():
    a = ueks.simulate_null("bh", 30, 200, 7, threads=1)
    b = ueks.simulate_null("bh", 30, 200, 7, threads=2)
    assert a.values == b.values
    assert a.values == sorted(a.values)
    assert 0.0 < a.critical_value(0.05) < 1.0
    assert a.p_value(2.0) == pytest.approx(1 / 201)


def test_draw_matches_statistic_input():
    x = ueks.draw("exp:1", 50, seed=3)
    assert len(x) == 50
    r = ueks.statistic("desu", x)
    assert 0.0 <= r["value"] <= 1.0


def test_desu_weibull_efficiency():
    r = ueks.local_efficiency("desu", "weibull")
    assert r["efficiency"] == pytest.approx(0.1581, abs=0.003)
