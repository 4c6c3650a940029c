import numpy as np
import pytest

from bchlab.cycint import CycInt
from bchlab.errors import NotInSubfield, NotPrime, SizeExceeded
from bchlab.field import (ZERO, build_field_ctx, ctx_from_json, field_for_q, find_primitive_poly,
                          gaussian_sum_closed, gaussian_sum_numeric, is_primitive_poly, prime_gauss_sum,
                          quadratic_character, quadratic_gauss_identity_check, trace)


def test_small_contexts():
    ctx = build_field_ctx(3, 1, 3)
    assert (ctx.q, ctx.qm, ctx.N) == (3, 27, 26)
    assert sorted(ctx.exp.tolist()) == list(range(1, 27))
    assert build_field_ctx(5, 1, 3).qm == 125


def test_subfield_of_gf81_is_fixed_by_frobenius():
    ctx = build_field_ctx(3, 2, 2)
    assert ctx.q == 9 and ctx.qm == 81
    fixed = [x for x in ctx.elements() if ctx.power(x, 9) == x]
    assert len(fixed) == 9
    assert sorted(ctx.embed(np.arange(9)).tolist()) == sorted(fixed)


def test_embedding_is_a_ring_homomorphism():
    ctx = field_for_q(9, 2)
    F = ctx.Fq
    for a in range(9):
        for b in range(9):
            assert ctx.embed(F.add(a, b)) == ctx.add(ctx.embed(a), ctx.embed(b))
            assert ctx.embed(F.mul(a, b)) == ctx.mul(ctx.embed(a), ctx.embed(b))
        assert ctx.project(ctx.embed(a)) == a


def test_project_rejects_elements_outside_gf_q():
    ctx = field_for_q(3, 3)
    with pytest.raises(NotInSubfield):
        ctx.project(1)


def test_field_arithmetic_axioms():
    ctx = field_for_q(5, 2)
    xs = ctx.elements()
    for x in xs[::3]:
        assert ctx.add(x, ctx.neg(x)) == ZERO
        if x != ZERO:
            assert ctx.mul(x, ctx.inv(x)) == 0
        for y in xs[::5]:
            assert ctx.add(x, y) == ctx.add(y, x)
    assert np.array_equal(ctx.add_vec(xs, xs), np.array([ctx.add(x, x) for x in xs]))


def test_trace_values():
    c3 = build_field_ctx(3, 1, 3)
    assert trace(c3, ZERO, "q") == 0
    assert trace(c3, c3.from_label(1), "q") == 0
    c5 = build_field_ctx(5, 1, 3)
    assert trace(c5, c5.from_label(1), "q") == 3


@pytest.mark.parametrize("q,m", [(3, 3), (9, 2), (5, 2), (4, 3), (3, 4)])
def test_trace_table_matches_frobenius_sum(q, m):
    ctx = field_for_q(q, m)
    for d in [d for d in range(1, m + 1) if m % d == 0]:
        step = ctx.N // (q**d - 1)
        tab = ctx.subfield_trace_table(d)
        for t in range(0, q**d - 1, max(1, (q**d - 1) // 40)):
            direct = ctx.trace_direct(t * step, d)
            assert ctx.project(direct) == tab[t]


def test_trace_to_prime_field_is_onto_and_balanced():
    ctx = field_for_q(9, 2)
    vals = [trace(ctx, x, "p") for x in ctx.elements()]
    assert sorted(set(vals)) == [0, 1, 2]
    assert all(vals.count(v) == 27 for v in range(3))


def test_quadratic_character():
    ctx = field_for_q(3, 2)
    assert quadratic_character(ctx, 0) == 0
    assert quadratic_character(ctx, 1) == 1
    assert quadratic_character(ctx, 2) == -1
    assert quadratic_character(ctx, ZERO, "qm") == 0
    assert quadratic_character(ctx, 0, "qm") == 1


def test_gauss_sums_numeric():
    assert gaussian_sum_numeric(field_for_q(3, 1)) == CycInt(3, [0, 1, -1])
    assert gaussian_sum_numeric(field_for_q(5, 1)) == CycInt(5, [0, 1, -1, -1, 1])
    assert gaussian_sum_numeric(field_for_q(9, 1)) == 3


def test_gauss_sums_closed():
    assert repr(gaussian_sum_closed(5, 1)) == "GaussClosed(sqrt(5))"
    assert repr(gaussian_sum_closed(3, 1)) == "GaussClosed(i*sqrt(3))"
    assert gaussian_sum_closed(3, 2).to_cycint() == 3
    for q, m in [(3, 1), (5, 1), (7, 1), (9, 1), (3, 3), (5, 2), (3, 4)]:
        ctx = field_for_q(q, m)
        closed_q = gaussian_sum_closed(ctx.p, ctx.s)
        assert closed_q.matches(gaussian_sum_numeric(ctx, "q"))
        closed_qm = gaussian_sum_closed(ctx.p, ctx.s * m)
        assert closed_qm.matches(gaussian_sum_numeric(ctx, "qm"))
        assert closed_qm.to_cycint() == gaussian_sum_numeric(ctx, "qm")


def test_prime_gauss_sum_squares():
    for p in (3, 5, 7, 11, 13):
        g = prime_gauss_sum(p)
        assert g * g == (p if p % 4 == 1 else -p)


@pytest.mark.parametrize("q,a", [(3, 1), (5, 2), (9, 1), (9, 5), (9, 8), (7, 3)])
def test_quadratic_gauss_identity(q, a):
    assert quadratic_gauss_identity_check(field_for_q(q, 2), a)


def test_primitive_polynomial_choice():
    f = find_primitive_poly(3, 3)
    assert is_primitive_poly(f, 3)
    assert find_primitive_poly(3, 3, 1) != f
    ctx = build_field_ctx(3, 1, 3, poly_rank=1)
    assert ctx.prim_poly_qm == find_primitive_poly(3, 3, 1)
    again = ctx_from_json(ctx.to_json())
    assert again.prim_poly_qm == ctx.prim_poly_qm


def test_bad_parameters():
    with pytest.raises(NotPrime):
        build_field_ctx(4, 1, 2)
    with pytest.raises(NotPrime):
        field_for_q(6, 2)
    with pytest.raises(SizeExceeded):
        build_field_ctx(3, 1, 20)
