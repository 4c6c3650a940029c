import numpy as np
import pytest

from bchlab.errors import KindParityMismatch, UnsupportedParams
from bchlab.field import field_for_q
from bchlab.poly import Poly
from bchlab.weightlab import (KINDS, build_family, concat_structure_check, delsarte_family, enumerate_weights,
                              equivalence_witness, family_spans_code)
from bchlab.weightlab.families import bch_descriptor_for, frobenius_exponent, qm1_period
from bchlab.bch import BchDescriptor, build_bch, weight_distribution_bch


def test_family_shapes():
    v4 = build_family("V4", 3, 3)
    assert v4.length == 13 and v4.k == 7
    assert v4.message_sizes() == [27, 27, 3]
    hat = build_family("HAT_D1", 3, 4)
    assert hat.length == 40 and hat.k == 2
    v3 = build_family("V3", 5, 3)
    assert v3.length == 31 and v3.k == 6


def test_parity_and_parameter_errors():
    with pytest.raises(KindParityMismatch):
        build_family("V1", 3, 4)
    with pytest.raises(KindParityMismatch):
        build_family("V5", 3, 3)
    with pytest.raises(UnsupportedParams):
        build_family("V1", 4, 3)
    with pytest.raises(UnsupportedParams):
        build_family("NOPE", 3, 3)


def test_message_index_round_trip():
    fam = build_family("V4", 3, 3)
    for j, size in enumerate(fam.message_sizes()):
        for u in range(size):
            assert fam.message_index(j, fam.message_log(j, u)) == u


def test_codewords_are_linear():
    fam = build_family("V1", 5, 3)
    F = fam.ctx.Fq
    a, b = (3, 17), (40, 0)
    wa, wb = fam.codeword(a), fam.codeword(b)
    sum_logs = [fam.ctx.add(fam.message_log(j, x), fam.message_log(j, y)) for j, (x, y) in enumerate(zip(a, b))]
    assert np.array_equal(F.add_tab[wa, wb], fam.codeword_from_logs(sum_logs))


@pytest.mark.parametrize("q,m,lam,delta,hat", [(3, 3, 2, 4, False), (3, 3, 2, 7, True), (5, 3, 4, 9, False),
                                               (3, 4, 2, 22, True), (4, 3, 3, 8, False)])
def test_delsarte_family_spans_its_code(q, m, lam, delta, hat):
    desc = BchDescriptor(q, m, lam, delta, hat=hat)
    assert family_spans_code(delsarte_family(desc), desc)


def test_delsarte_distribution_matches_generator_matrix():
    desc = BchDescriptor(3, 3, 2, 4)
    assert enumerate_weights(delsarte_family(desc)) == weight_distribution_bch(build_bch(desc))


def test_span_check_rejects_a_wrong_code():
    fam = build_family("HAT_D1", 3, 3)
    assert not family_spans_code(fam, BchDescriptor(3, 3, 2, 4, hat=True))


@pytest.mark.parametrize("kind,q,m", [("HAT_D1", 3, 3), ("D1", 3, 3), ("V1", 3, 3), ("V4", 3, 3), ("V2", 3, 4),
                                      ("V5", 3, 4), ("HAT_D1", 3, 4), ("HAT_D1", 5, 3), ("V1", 5, 3),
                                      ("QM1_ONEWEIGHT", 4, 4), ("QM1_ONEWEIGHT", 5, 5)])
def test_equivalence_witnesses(kind, q, m):
    w = equivalence_witness(kind, q, m, max_messages=400)
    assert w.verified, w
    assert w.map in ("frobenius", "permutation")
    assert w.checked_messages > 0


@pytest.mark.parametrize("kind,q,m", [("HAT_D1", 3, 3), ("V4", 3, 3), ("V5", 3, 4), ("QM1_ONEWEIGHT", 4, 4)])
def test_named_family_distribution_equals_its_bch_code(kind, q, m):
    desc = bch_descriptor_for(kind, q, m)
    assert enumerate_weights(build_family(kind, q, m)) == weight_distribution_bch(build_bch(desc))


def test_threaded_enumeration_is_identical():
    fam = build_family("V4", 3, 3)
    assert enumerate_weights(fam, threads=3).entries == enumerate_weights(fam).entries


def test_concatenation_structure():
    assert concat_structure_check("HAT_D1_even", 3, 4)
    assert concat_structure_check("V3_from_V2", 5, 2)
    assert concat_structure_check("V3_from_V2", 5, 3)
    assert concat_structure_check("QM1", 5, 5)
    with pytest.raises(UnsupportedParams):
        build_family("QM1_ONEWEIGHT", 4, 6)  # residue q-2 has no one-weight statement
    with pytest.raises(KindParityMismatch):
        concat_structure_check("HAT_D1_even", 3, 3)


def test_hat_d1_even_is_repeated_block():
    fam = build_family("HAT_D1", 3, 4)
    w = fam.codeword((5,))
    assert np.array_equal(w, np.tile(w[:8], 5))


def test_frobenius_exponent():
    assert frobenius_exponent(2, 6, 3, 3, 26) == 1
    assert frobenius_exponent(2, 5, 3, 3, 26) is None


def test_qm1_period_divides_length():
    for q, m in [(4, 4), (4, 5), (5, 5), (5, 6)]:
        fam = build_family("QM1_ONEWEIGHT", q, m)
        assert fam.length % qm1_period(q, m) == 0


def test_every_kind_builds_somewhere():
    for kind in KINDS:
        m = 3 if kind in ("V1", "V4", "D1", "HAT_D1", "V3") else 4
        q = 4 if kind == "QM1_ONEWEIGHT" else 3
        assert build_family(kind, q, m).k >= 1
