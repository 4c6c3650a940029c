import numpy as np
import pytest

from bchlab.errors import EvenQ, UnsupportedParams
from bchlab.field import ZERO, field_for_q
from bchlab.weightlab import (PairScan, QuadFormSpec, T_distribution, T_moment_check, closed_T_distribution,
                              eta_power_sum, eta_twist_check, quadratic_form_rank, side_conditions_odd,
                              weight_formula_check)
from bchlab.weightlab.expsums import batch_rank, rank_by_linearized_roots, rank_magnitude_check

_SCANS = {}


def scan_for(q, m):
    if (q, m) not in _SCANS:
        _SCANS[q, m] = PairScan(QuadFormSpec(q, m))
    return _SCANS[q, m]


ODD = [(3, 3), (5, 3), (7, 3)]
EVEN = [(3, 2), (5, 2), (3, 4), (7, 2)]


def test_spec_validation():
    with pytest.raises(EvenQ):
        QuadFormSpec(4, 3)
    with pytest.raises(UnsupportedParams):
        QuadFormSpec(3, 1)


def test_zero_pair_has_rank_zero():
    assert quadratic_form_rank(3, 3, ZERO, ZERO) == 0
    s = scan_for(3, 3)
    assert s.pair(0) == (0, 0) and s.ranks[0] == 0
    assert s.T(0) == 27


@pytest.mark.parametrize("q,m", ODD + EVEN)
def test_rank_sets(q, m):
    ranks = set(scan_for(q, m).ranks[1:].tolist())
    want = {m, m - 1, m - 2} if m % 2 else {m, m - 1, m - 2} - {0}
    assert ranks <= want
    assert m in ranks


@pytest.mark.parametrize("q,m", ODD + EVEN)
def test_T_distribution_equals_closed_form(q, m):
    dist = scan_for(q, m).value_distribution()
    assert dist == closed_T_distribution(q, m)
    assert rank_magnitude_check(scan_for(q, m))


def test_T_distribution_total_counts_every_pair():
    d = T_distribution(QuadFormSpec(3, 3))
    assert d.total() == 27 * 27
    assert d.ranks() == {0, 1, 2, 3}


@pytest.mark.parametrize("q,m", ODD)
def test_moments(q, m):
    res = T_moment_check(scan_for(q, m))
    assert res["ok"], res


@pytest.mark.parametrize("q,m", ODD)
def test_side_conditions(q, m):
    res = side_conditions_odd(scan_for(q, m))
    assert res["ok"] and res["rank_m_minus_3"] == 0


@pytest.mark.parametrize("q,m", ODD + EVEN)
def test_weight_formula(q, m):
    checked, bad = weight_formula_check(scan_for(q, m))
    assert checked == scan_for(q, m).P - 1 and bad == 0


@pytest.mark.parametrize("q,m", [(3, 3), (5, 3), (5, 2)])
def test_eta_twist(q, m):
    s = scan_for(q, m)
    F = s.ctx.Fq
    nonsq = next(y for y in range(1, q) if F.quadratic_character(y) == -1)
    for idx in range(1, s.P, max(1, s.P // 60)):
        assert eta_twist_check(s, idx, 1)
        assert eta_twist_check(s, idx, nonsq)


def test_eta_power_sum():
    assert eta_power_sum(5, 2) == 4
    assert eta_power_sum(5, 3) == 0
    assert eta_power_sum(9, 0) == 8


@pytest.mark.parametrize("q,m", [(3, 3), (5, 3)])
def test_rank_from_root_count_agrees_with_polar_matrix(q, m):
    s = scan_for(q, m)
    ctx = s.ctx
    for idx in range(1, s.P, max(1, s.P // 80)):
        ua, ub = s.pair(idx)
        a, b = s.fam.message_log(0, ua), s.fam.message_log(1, ub)
        assert rank_by_linearized_roots(ctx, a, b) == s.ranks[idx]
        assert quadratic_form_rank(q, m, a, b, ctx) == s.ranks[idx]


def test_batch_rank():
    F = field_for_q(5, 1).Fq
    M = np.array([[[1, 2], [2, 4]], [[1, 0], [0, 1]], [[0, 0], [0, 0]]])
    assert batch_rank(F, M).tolist() == [1, 2, 0]
