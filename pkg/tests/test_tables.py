import pytest

from bchlab.errors import EvenQ, KindParityMismatch, OutOfProvenRange, UnsupportedParams
from bchlab.weightlab import build_family, closed_form_distribution, enumerate_weights

GRID = [
    ("HAT_D1", 3, 3), ("HAT_D1", 5, 3), ("HAT_D1", 3, 4), ("HAT_D1", 5, 4), ("HAT_D1", 3, 5),
    ("D1", 3, 3), ("D1", 5, 3), ("D1", 3, 4), ("D1", 5, 4), ("D1", 3, 5),
    ("V1", 3, 3), ("V1", 5, 3), ("V1", 7, 3), ("V1", 3, 5),
    ("V2", 3, 2), ("V2", 5, 2), ("V2", 7, 2), ("V2", 3, 4), ("V2", 5, 4),
    ("V3", 3, 3), ("V3", 5, 3), ("V3", 5, 2), ("V3", 7, 2), ("V3", 3, 4),
    ("V4", 3, 3), ("V4", 5, 3),
    ("V5", 3, 2), ("V5", 5, 2), ("V5", 7, 2), ("V5", 3, 4),
    ("QM1_ONEWEIGHT", 4, 4), ("QM1_ONEWEIGHT", 4, 5), ("QM1_ONEWEIGHT", 5, 5), ("QM1_ONEWEIGHT", 5, 6),
]


@pytest.mark.parametrize("kind,q,m", GRID)
def test_closed_form_equals_enumeration(kind, q, m):
    closed = closed_form_distribution(kind, q, m)
    assert closed.check() == []
    assert enumerate_weights(build_family(kind, q, m)) == closed


@pytest.mark.slow
def test_closed_form_equals_enumeration_v4_q7():
    assert enumerate_weights(build_family("V4", 7, 3), threads=4) == closed_form_distribution("V4", 7, 3)


def test_one_weight_cases():
    assert closed_form_distribution("QM1_ONEWEIGHT", 5, 5).entries == {0: 1, 625: 3124}
    assert closed_form_distribution("QM1_ONEWEIGHT", 4, 5).entries == {0: 1, 256: 1023}
    wd = closed_form_distribution("QM1_ONEWEIGHT", 5, 6)
    assert wd.k == 3 and wd.nonzero_weights() == [(125 + 1) * 25]
    with pytest.raises(UnsupportedParams):
        closed_form_distribution("QM1_ONEWEIGHT", 4, 6)


def test_worked_example_enumerators():
    assert closed_form_distribution("HAT_D1", 3, 3).enumerator() == "1+26z^9"
    assert closed_form_distribution("V4", 5, 3).total() == 5**7
    assert closed_form_distribution("D1", 5, 3).min_distance() == 47


def test_gates():
    with pytest.raises(KindParityMismatch):
        closed_form_distribution("V1", 3, 4)
    with pytest.raises(KindParityMismatch):
        closed_form_distribution("V5", 3, 3)
    with pytest.raises(OutOfProvenRange):
        closed_form_distribution("D1", 3, 2)
    with pytest.raises(EvenQ):
        closed_form_distribution("V1", 4, 3)
    with pytest.raises(UnsupportedParams):
        closed_form_distribution("NOPE", 3, 3)


def test_below_range_values_are_still_computable():
    wd = closed_form_distribution("D1", 3, 2, strict=False)
    assert wd.total() == 3**2
