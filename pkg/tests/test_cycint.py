import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bchlab.cycint import CycInt

PRIMES = [3, 5, 7]


def elems(p):
    return st.lists(st.integers(-20, 20), min_size=p, max_size=p).map(lambda c: CycInt(p, c))


@st.composite
def triples(draw):
    p = draw(st.sampled_from(PRIMES))
    return p, draw(elems(p)), draw(elems(p)), draw(elems(p))


@settings(max_examples=60, deadline=None)
@given(triples())
def test_ring_laws(t):
    p, a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CycInt.zero(p)


@settings(max_examples=60, deadline=None)
@given(triples())
def test_embedding_is_multiplicative(t):
    _, a, b, _ = t
    assert cmath.isclose((a * b).complex(), a.complex() * b.complex(), abs_tol=1e-6)


def test_sum_of_all_roots_is_zero():
    for p in PRIMES:
        total = sum((CycInt.zeta(p, k) for k in range(p)), CycInt.zero(p))
        assert total == 0
        assert CycInt.from_counts(p, [4] * p) == 0


def test_zeta_powers_and_conjugation():
    z = CycInt.zeta(5)
    assert z**5 == 1
    assert z * z.conj() == 1
    assert z.galois(2) == z**2


def test_integer_round_trip():
    x = CycInt.from_int(7, -12)
    assert x.is_integer() and x.to_int() == -12
    with pytest.raises(ValueError):
        CycInt.zeta(7).to_int()
    with pytest.raises(ValueError):
        CycInt(3, [1, 2, 3, 4])
