import pytest

from bchlab.bch import (BchDescriptor, bch_bound_check, build_bch, dim_closed, dim_closed_even, dim_closed_odd,
                        dims_bruteforce, even_range_max, griesmer_check, min_distance_bruteforce, odd_range_max)
from bchlab.errors import BadDelta, LambdaOne, OutOfProvenRange, UnsupportedParams
from bchlab.poly import Poly


@pytest.mark.parametrize("delta,k", [(2, 10), (4, 7), (7, 4)])
def test_dimensions_length_13(delta, k):
    code = build_bch(BchDescriptor(3, 3, 2, delta))
    assert code.n == 13 and code.dimension == k
    assert code.generator.degree == 13 - k


def test_generator_divides_xn_minus_1():
    for desc in [BchDescriptor(3, 3, 2, 4), BchDescriptor(5, 3, 4, 6), BchDescriptor(4, 3, 3, 5, b=2)]:
        code = build_bch(desc)
        xn = Poly.xn_minus_1(code.ctx.Fq, code.n)
        assert code.generator * code.parity_check == xn


def test_even_like_subcode_loses_one_dimension():
    for delta in (2, 4, 7):
        c = build_bch(BchDescriptor(3, 3, 2, delta))
        h = build_bch(BchDescriptor(3, 3, 2, delta, hat=True))
        assert h.dimension == c.dimension - 1


def test_descriptor_validation():
    with pytest.raises(UnsupportedParams):
        build_bch(BchDescriptor(5, 3, 3, 4))
    with pytest.raises(BadDelta):
        build_bch(BchDescriptor(3, 3, 2, 14))
    with pytest.raises(BadDelta):
        build_bch(BchDescriptor(3, 3, 2, 4, b=2, hat=True))


@pytest.mark.parametrize("args,k", [((3, 3, 2, 4), 7), ((3, 3, 2, 2), 10), ((5, 3, 2, 5), 50)])
def test_odd_m_closed_dimension(args, k):
    assert dim_closed_odd(*args) == k


@pytest.mark.parametrize("args,k,branch", [((3, 4, 2, 10), 18, "(i)/ε=λ"), ((3, 4, 2, 2), 36, "(i)/ε<⌊λ/2⌋"),
                                           ((5, 4, 4, 3), 148, "(i)/ε<⌊λ/2⌋")])
def test_even_m_closed_dimension(args, k, branch):
    trace = []
    assert dim_closed_even(*args, trace=trace) == k
    assert trace == [branch]


# n <= 10^5; the even-m formula needs lambda >= 2
GRID = [(q, m, lam) for q in (3, 4, 5, 7, 8, 9) for m in (3, 4, 5, 6) for lam in range(1, q)
        if (q - 1) % lam == 0 and (q**m - 1) // lam <= 10**5 and (m % 2 or lam > 1)]


@pytest.mark.parametrize("q,m,lam", GRID)
def test_closed_forms_agree_with_coset_union(q, m, lam):
    top = odd_range_max(q, m, lam) if m % 2 else even_range_max(q, m, lam)
    brute = dims_bruteforce(q, m, lam, top)
    for delta in range(2, top + 1):
        assert dim_closed(q, m, lam, delta) == brute[delta], delta
    ks = [brute[d] for d in range(2, top + 1)]
    assert ks == sorted(ks, reverse=True)


def test_closed_forms_refuse_unproven_inputs():
    with pytest.raises(OutOfProvenRange):
        dim_closed_odd(3, 3, 2, odd_range_max(3, 3, 2) + 1)
    with pytest.raises(LambdaOne):
        dim_closed_even(3, 4, 1, 3)
    with pytest.raises(OutOfProvenRange):
        dim_closed_even(3, 4, 2, even_range_max(3, 4, 2) + 1)


def test_griesmer():
    assert griesmer_check(13, 3, 9, 3) == "meets"
    assert griesmer_check(13, 4, 7, 3) == "satisfies"
    assert griesmer_check(6, 3, 4, 5) == "meets"
    assert griesmer_check(10, 4, 7, 3) == "violates"


def test_min_distance_and_bch_bound():
    c4 = build_bch(BchDescriptor(3, 3, 2, 7))
    assert min_distance_bruteforce(c4) == 7
    assert bch_bound_check(c4, 7)
    c6 = build_bch(BchDescriptor(3, 3, 2, 4, hat=True))
    assert c6.dimension == 6 and min_distance_bruteforce(c6) == 6
    c7 = build_bch(BchDescriptor(3, 3, 2, 4))
    assert bch_bound_check(c7, min_distance_bruteforce(c7, threads=2))


def test_bch_bound_over_small_codes():
    for delta in range(2, 13):
        code = build_bch(BchDescriptor(3, 3, 2, delta))
        if 3**code.dimension <= 10**6:
            assert min_distance_bruteforce(code) >= delta
