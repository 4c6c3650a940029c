import pytest

from bchlab.distribution import WeightDistribution


def test_entries_and_summaries():
    wd = WeightDistribution({0: 1, 7: 26, 9: 0, 8: 54}, length=13, k=4, q=3)
    assert list(wd.entries) == [0, 7, 8]
    assert wd.total() == 81
    assert wd.min_distance() == 7
    assert wd.check() == []
    assert wd.enumerator() == "1+26z^7+54z^8"
    assert wd == {0: 1, 7: 26, 8: 54, 12: 0}


def test_structural_problems_are_reported():
    wd = WeightDistribution([(0, 2), (14, 1)], length=13, k=2, q=3)
    probs = wd.check()
    assert len(probs) == 3


def test_big_frequencies_survive_serialisation():
    big = 3**60
    wd = WeightDistribution({0: 1, 5: big}, length=5)
    assert wd.to_json()["entries"] == [[0, "1"], [5, str(big)]]
    assert wd.to_csv().splitlines() == ["weight,frequency", "0,1", f"5,{big}"]


def test_from_counts_drops_zero_rows():
    wd = WeightDistribution.from_counts([1, 0, 0, 8], length=3, k=2, q=3)
    assert wd.entries == {0: 1, 3: 8}
    assert WeightDistribution({}, length=3).min_distance() is None


@pytest.mark.parametrize("other", [42, "x"])
def test_equality_with_unrelated_objects(other):
    assert (WeightDistribution({0: 1}, length=1) == other) is False
