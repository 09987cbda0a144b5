import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from simplest_cubic.asymptotics import (
    LOG_C1,
    apriori_bound_log,
    apriori_presimplified_log,
    c_K,
    c_K_certified,
    debaene_rhs_log,
    envelope,
    envelope_crossover,
    envelope_primitive,
    ratio_scan,
    regulator,
    regulator_certified,
    unit_bound_checks,
    verify_unit_bounds,
)
from simplest_cubic.field import make_params

P8 = make_params(8)


def reg_float(a):
    """Regulator from a generic root finder, as an independent check."""
    with mpmath.workdps(40):
        big, mid, low = sorted(mpmath.polyroots([1, -a, -(a + 3), -1], extraprec=100), reverse=True)
        rho, rp, rpp = big, low, mid
        return float(mpmath.log(abs(rp)) ** 2 - mpmath.log(rho) * mpmath.log(abs(rpp)))


# -- regulator and C_K ----------------------------------------------------------------


def test_regulator_a8():
    r = regulator(P8)
    assert 4.32 < r.lo <= r.hi < 6.49
    assert abs(r.mid - 5.2) < 0.05
    assert math.isclose(r.mid, reg_float(8), rel_tol=1e-12)


@pytest.mark.parametrize("a", [7, 8, 100])
def test_regulator_sandwich_examples(a):
    assert regulator_certified(make_params(a))
    la = math.log(a)
    r = regulator(make_params(a))
    assert la * la <= r.lo and r.hi <= 1.5 * la * la


@settings(max_examples=40, deadline=None)
@given(st.integers(7, 3000))
def test_regulator_matches_root_finder(a):
    assert math.isclose(regulator(make_params(a)).mid, reg_float(a), rel_tol=1e-12)


def test_regulator_width_shrinks():
    widths = [regulator(P8, bits).value.delta for bits in (32, 64, 128, 256)]
    assert all(w2 < w1 for w1, w2 in zip(widths, widths[1:]))
    ck = [c_K(P8, bits).value.delta for bits in (32, 64, 128)]
    assert ck[0] > ck[1] > ck[2]


@pytest.mark.parametrize("a", [7, 8, 50])
def test_c_K(a):
    p = make_params(a)
    assert c_K_certified(p)
    ck = c_K(p)
    assert math.isclose(ck.lo, 4 * regulator(p).lo / p.disc_root, rel_tol=1e-12)
    la = math.log(a)
    assert 2 * la * la / a ** 2 <= ck.lo <= ck.hi <= 6 * la * la / a ** 2


# -- a-priori bound -------------------------------------------------------------------


def test_log_c1():
    assert LOG_C1 == pytest.approx(900 * math.log(3) + (5 / 3) * math.log(1.5), rel=1e-15)


def test_apriori_regime_unreachable():
    b = apriori_bound_log(P8, 10**6)
    assert not b.in_regime
    assert b.log_threshold > 3 * 900 * math.log(3)
    assert b.log_bound == pytest.approx(
        LOG_C1 + (10 / 3) * math.log(math.log(8)) + (2 / 3) * math.log(10**6)
    )


def test_apriori_monotone_in_x():
    vals = [apriori_bound_log(P8, x).log_bound for x in (1, 10, 10**3, 10**9)]
    assert vals == sorted(vals) and len(set(vals)) == 4


def test_apriori_rejects_small_x():
    with pytest.raises(ValueError):
        apriori_bound_log(P8, 0.5)


def test_debaene_specialization():
    # at d = 3, h = 1 the Debaene right-hand side equals the pre-simplified
    # a-priori expression with leading constant 3^90
    reg = regulator(P8).mid
    for x in (1.0, 1e3, 1e8):
        lhs = debaene_rhs_log(3, reg, x)
        rhs = apriori_presimplified_log(reg, x, log_leading=90 * math.log(3))
        assert lhs == pytest.approx(rhs, rel=1e-14)


def test_debaene_d2_and_monotone():
    v = debaene_rhs_log(2, 5.0, 100.0)
    want = 40 * math.log(2) + math.log(5) / 2 + 0.5 * math.log(1 + math.log(5)) + 0.5 * math.log(100)
    assert v == pytest.approx(want)
    assert debaene_rhs_log(3, 5.0, 10.0) < debaene_rhs_log(3, 5.0, 100.0)
    with pytest.raises(ValueError):
        debaene_rhs_log(1, 5.0, 10.0)


def test_crude_step_only_loosens():
    # 1 + log Reg <= Reg, so substituting Reg for it can only raise the bound
    for a in (8, 13, 100):
        reg = regulator(make_params(a)).mid
        assert 1 + math.log(reg) <= reg
        crude = LOG_C1 - (5 / 3) * math.log(1.5) + (5 / 3) * math.log(reg)
        assert apriori_presimplified_log(reg, 1.0) <= crude + 1e-9


# -- envelope and scans ---------------------------------------------------------------


def test_envelope_a8_x1():
    la = math.log(8)
    assert envelope(8, 1) == pytest.approx(la * la / 64 + (1 / 8) ** (2 / 3) + 1)
    assert envelope_primitive(8, 1) == pytest.approx(la * la / 64 + (1 / 8) ** (2 / 3) + 1)


def test_ratio_scan_shape():
    s = ratio_scan([8, 10, 13], [1, 10, 100, 1000, 10_000])
    assert len(s.rows) == 15
    assert [(r.a, r.x) for r in s.rows] == [(a, x) for a in (8, 10, 13) for x in (1, 10, 100, 1000, 10_000)]
    assert s.min_ratio > 0 and s.min_ratio_primitive > 0
    assert s.rows[0].count == 1 and s.rows[0].ratio == pytest.approx(1 / envelope(8, 1))
    again = ratio_scan([8, 10, 13], [1, 10, 100, 1000, 10_000])
    assert [(r.count, r.ratio) for r in again.rows] == [(r.count, r.ratio) for r in s.rows]


def test_ratio_scan_empty():
    with pytest.raises(ValueError):
        ratio_scan([], [1])


@pytest.mark.parametrize("a", [8, 13, 50, 1000])
def test_envelope_crossover_sign(a):
    la = math.log(a)
    xc = envelope_crossover(a)
    lin = lambda x: la * la * x / a ** 2  # noqa: E731
    mid = lambda x: (x / a) ** (2 / 3)  # noqa: E731
    for f in (0.01, 0.1, 0.5, 0.9):
        assert lin(f * xc) < mid(f * xc)
    for f in (1.1, 2, 10, 100):
        assert lin(f * xc) > mid(f * xc)


# -- unit estimates --------------------------------------------------------------------


def test_unit_bounds_a7_skips_squares():
    rep = verify_unit_bounds([7])
    assert rep.ok and rep.skipped_squares == [7] and rep.checked == 3


def test_unit_bounds_a8_squares():
    checks = dict(unit_bound_checks(8))
    assert checks["1 < rho'^2 < 2"]
    assert len(checks) == 7 and all(checks.values())


def test_unit_bounds_range():
    rep = verify_unit_bounds(range(7, 120))
    assert rep.ok and rep.checked == 3 + 7 * 112


def test_unit_bounds_reject_small_a():
    with pytest.raises(ValueError):
        verify_unit_bounds([6])
