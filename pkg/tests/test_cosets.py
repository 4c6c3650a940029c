import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bchlab.cosets import (CosetSpace, bruteforce_leader_scan, coset_of, coset_size, is_leader,
                           largest_leader_qm1, largest_leaders_half, leader_digit_conditions, leader_records,
                           nonleader_range_top, nonleader_sets_even_m, smallest_nonleader_even_m,
                           smallest_nonleader_scan, top_leaders)
from bchlab.errors import MTooSmallForDelta3, OutOfRange, QTooSmall, UnsupportedParams, UnsupportedResidue


def test_cosets_mod_13():
    sp = CosetSpace(3, 3, 2)
    assert sp.n == 13
    assert coset_of(sp, 0).members == (0,)
    rec = coset_of(sp, 5)
    assert rec.members == (2, 5, 6) and rec.leader == 2 and rec.size == 3
    assert coset_of(CosetSpace(3, 4, 2), 10).members == (10, 30)
    assert is_leader(sp, 0) and not is_leader(sp, 5) and is_leader(sp, 7)
    assert coset_size(sp, 7) == 3
    with pytest.raises(OutOfRange):
        coset_of(sp, 13)


def test_space_validation():
    with pytest.raises(UnsupportedParams):
        CosetSpace(3, 3, 3)


@pytest.mark.parametrize("q,m,lam", [(3, 3, 2), (3, 4, 2), (5, 3, 4), (4, 3, 3), (7, 2, 6), (3, 5, 1)])
def test_scan_partitions_and_agrees_with_walk(q, m, lam):
    sp = CosetSpace(q, m, lam)
    scan = bruteforce_leader_scan(sp, chunk=50, threads=2)
    leaders = scan.leaders()
    assert int(scan.size[leaders].sum()) == sp.n
    assert all(m % int(scan.size[i]) == 0 for i in leaders)
    assert [int(i) for i in leaders] == [i for i in range(sp.n) if is_leader(sp, i)]
    recs = leader_records(sp, with_members=True)
    members = sorted(x for r in recs for x in r.members)
    assert members == list(range(sp.n))


@pytest.mark.parametrize("q,m,lam", [(3, 4, 2), (5, 3, 2), (3, 5, 2), (5, 4, 4), (5, 5, 4), (4, 6, 3), (7, 3, 3)])
def test_digit_conditions_are_necessary(q, m, lam):
    sp = CosetSpace(q, m, lam)
    scan = bruteforce_leader_scan(sp)
    assert all(leader_digit_conditions(sp, int(i)) for i in scan.leaders() if i)


@pytest.mark.parametrize("q,m,lam,expected", [(3, 4, 2, 14), (7, 4, 3, 33), (5, 4, 4, 19)])
def test_smallest_nonleader(q, m, lam, expected):
    sp = CosetSpace(q, m, lam)
    assert smallest_nonleader_even_m(sp) == expected == smallest_nonleader_scan(sp)


@pytest.mark.parametrize("q,m,lam", [(3, 4, 2), (5, 4, 2), (5, 4, 4), (7, 4, 3), (7, 4, 6), (3, 6, 2), (9, 4, 4),
                                     (4, 4, 3)])
def test_nonleader_sets_match_scan(q, m, lam):
    sp = CosetSpace(q, m, lam)
    sets = nonleader_sets_even_m(sp)
    top = nonleader_range_top(sp)
    scan = bruteforce_leader_scan(sp, 0, top + 1)
    found = {i for i in range(1, top + 1) if i % q and not scan[i][0]}
    assert found == sets.nonleaders
    half = {i for i in range(1, top + 1) if i % q and scan[i][0] and scan[i][1] == m // 2}
    assert half == sets.delta


@pytest.mark.parametrize("q", [3, 5, 7])
@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_largest_leaders_modulo_half(q, m):
    sp = CosetSpace(q, m, 2)
    scan = bruteforce_leader_scan(sp)
    ll = largest_leaders_half(q, m, 2)
    assert list(ll.deltas) == top_leaders(scan, 2)
    assert list(ll.sizes) == [int(scan.size[d]) for d in ll.deltas]


def test_third_largest_needs_m_at_least_6():
    with pytest.raises(MTooSmallForDelta3):
        largest_leaders_half(3, 5, 3)
    ll = largest_leaders_half(3, 6, 3)
    assert list(ll.deltas) == top_leaders(bruteforce_leader_scan(CosetSpace(3, 6, 2)), 3)


@pytest.mark.parametrize("q,m,case,size", [(5, 5, "i", 5), (5, 6, "ii", 3), (4, 6, "iii", 2), (7, 7, "i", 7)])
def test_largest_leader_modulo_q_minus_1(q, m, case, size):
    delta, sz, c = largest_leader_qm1(q, m)
    assert (c, sz) == (case, size)
    scan = bruteforce_leader_scan(CosetSpace(q, m, q - 1))
    assert top_leaders(scan, 1) == [delta]
    assert int(scan.size[delta]) == size


def test_largest_leader_qm1_value_and_errors():
    assert largest_leader_qm1(5, 5)[0] == 586
    with pytest.raises(QTooSmall):
        largest_leader_qm1(3, 5)
    with pytest.raises(UnsupportedResidue):
        largest_leader_qm1(7, 9)  # m - 1 = 8 = 1*6 + 2


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(3, 3, 2), (3, 4, 2), (5, 3, 2), (4, 3, 3), (5, 4, 4)]), st.data())
def test_orbits_are_closed_under_q(space, data):
    sp = CosetSpace(*space)
    i = data.draw(st.integers(0, sp.n - 1))
    rec = coset_of(sp, i)
    assert {(x * sp.q) % sp.n for x in rec.members} == set(rec.members)
    assert is_leader(sp, i) == (rec.leader == i)
