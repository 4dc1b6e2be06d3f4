from __future__ import annotations

import numpy as np
import pytest

import skewhad as sh
from skewhad.shdf import GeneratorSearchError

from conftest import PAPER_I0, PAPER_I1


def test_blocks_from_indices_sizes_625(instance625):
    _, partition, pair, _ = instance625
    assert pair.i0 == frozenset(PAPER_I0)
    assert pair.i1 == frozenset(PAPER_I1)
    assert sh.subset_size(pair.d0) == 8 * 39 == 312
    assert sh.subset_size(pair.d1) == 312
    assert not pair.d0[0] and not pair.d1[0]


def test_blocks_empty_index_set():
    tables = sh.build_field(sh.FieldConfig(7, 1, generator=3))
    part = sh.cyclotomic_partition(tables, 3)
    pair = sh.blocks_from_indices(part, [], [0])
    assert sh.subset_size(pair.d0) == 0


def test_blocks_gf7_frozen_membership():
    tables = sh.build_field(sh.FieldConfig(7, 1, generator=3))
    part = sh.cyclotomic_partition(tables, 3)
    pair = sh.blocks_from_indices(part, [0], [1])
    encodings = {pair.group.encoding_of(i) for i in np.flatnonzero(pair.d0)}
    assert encodings == {1, 6}
    encodings = {pair.group.encoding_of(i) for i in np.flatnonzero(pair.d1)}
    assert encodings == {3, 4}


def test_blocks_membership_agrees_with_class_of(instance625):
    # index-computed masks match the partition's class-of-encoding map
    _, partition, pair, _ = instance625
    g = pair.group
    for i in np.random.default_rng(0).integers(1, 625, size=50):
        enc = g.encoding_of(int(i))
        in_d0 = int(partition.class_of[enc]) in pair.i0
        assert bool(pair.d0[int(i)]) == in_d0


def test_blocks_reject_out_of_range():
    tables = sh.build_field(sh.FieldConfig(7, 1))
    part = sh.cyclotomic_partition(tables, 3)
    with pytest.raises(ValueError):
        sh.blocks_from_indices(part, [3], [0])


def test_check_skew_examples():
    g5 = sh.GroupSpec.cyclic(5)
    assert sh.check_skew(g5, sh.subset_from_indices(g5, [1, 2]))
    assert not sh.check_skew(g5, sh.subset_from_indices(g5, [1, 4]))
    assert not sh.check_skew(g5, sh.subset_from_indices(g5, []))
    assert not sh.check_skew(g5, sh.subset_from_indices(g5, [0, 1]))  # 0 in D


def test_check_skew_625(instance625):
    _, _, pair, _ = instance625
    assert sh.check_skew(pair.group, pair.d0)


def test_check_shdf_desk_z3():
    g = sh.GroupSpec.cyclic(3)
    d = sh.subset_from_indices(g, [1])
    pair = sh.BlockPair(group=g, i0=frozenset(), i1=frozenset(), d0=d, d1=d.copy())
    cert = sh.check_shdf(g, pair)
    assert cert.passed
    assert cert.sums.tolist() == [-2, -2]


def test_check_shdf_desk_z5():
    g = sh.GroupSpec.cyclic(5)
    pair = sh.BlockPair(group=g, i0=frozenset(), i1=frozenset(),
                        d0=sh.subset_from_indices(g, [1, 2]),
                        d1=sh.subset_from_indices(g, [1, 4]))
    cert = sh.check_shdf(g, pair)
    assert cert.passed
    assert cert.sums.tolist() == [-2, -2, -2, -2]


def test_check_shdf_failure_reasons():
    g = sh.GroupSpec.cyclic(5)
    bad_skew = sh.BlockPair(group=g, i0=frozenset(), i1=frozenset(),
                            d0=sh.subset_from_indices(g, [1, 4]),
                            d1=sh.subset_from_indices(g, [1, 4]))
    cert = sh.check_shdf(g, bad_skew)
    assert not cert.passed and not cert.skew_ok
    assert "skew" in cert.reason

    zero_in = sh.BlockPair(group=g, i0=frozenset(), i1=frozenset(),
                           d0=sh.subset_from_indices(g, [0, 1]),
                           d1=sh.subset_from_indices(g, [1, 4]))
    cert = sh.check_shdf(g, zero_in)
    assert not cert.passed and "zero element" in cert.reason

    bad_size = sh.BlockPair(group=g, i0=frozenset(), i1=frozenset(),
                            d0=sh.subset_from_indices(g, [1, 2]),
                            d1=sh.subset_from_indices(g, [1, 2, 4]))
    cert = sh.check_shdf(g, bad_size)
    assert not cert.passed and not cert.d1_size_ok


def test_certificate_log_format():
    g = sh.GroupSpec.cyclic(3)
    d = sh.subset_from_indices(g, [1])
    pair = sh.BlockPair(group=g, i0=frozenset(), i1=frozenset(), d0=d, d1=d.copy())
    cert = sh.check_shdf(g, pair)
    assert cert.to_log() == "1 -2\n2 -2\nPASS\n"


def test_check_shdf_625(instance625):
    tables, _, pair, cert = instance625
    assert cert.passed
    assert cert.sums.shape == (624,)
    assert np.all(cert.sums == -2)
    fresh = sh.check_shdf(pair.group, pair)
    assert fresh.passed and np.array_equal(fresh.sums, cert.sums)


def test_parity_consistency(instance625):
    # each autocorrelation is v mod 4, so sums are 2v mod 4; for odd v that
    # equals -2 mod 4, which is what makes the -2 target attainable at all
    _, _, pair, cert = instance625
    v = pair.group.order
    assert np.all((cert.sums - 2 * v) % 4 == 0)
    assert (-2 - 2 * v) % 4 == 0


def test_simultaneous_rotation_invariance(instance625):
    tables, partition, _, _ = instance625
    for j in (1, 5, 11):
        i0 = [(i + j) % 16 for i in PAPER_I0]
        i1 = [(i + j) % 16 for i in PAPER_I1]
        pair = sh.blocks_from_indices(partition, i0, i1)
        assert sh.check_shdf(pair.group, pair).passed


def test_find_valid_generator_625(instance625):
    tables, partition, pair, cert = instance625
    assert cert.passed
    assert tables.q == 625
    # the winner must be primitive: its powers enumerate all 624 nonzero elements
    assert sorted(tables.antilog.tolist()) == list(range(1, 625))
    assert partition.f == 39


def test_find_valid_generator_desk_z3():
    tables, partition, pair, cert = sh.find_valid_generator(
        sh.FieldConfig(3, 1), 2, [0], [0])
    assert cert.passed
    assert tables.generator == 2
    assert sh.subset_size(pair.d0) == 1


def test_find_valid_generator_pinned():
    tables, _, _, cert = sh.find_valid_generator(
        sh.FieldConfig(5, 4, generator=6), 16, PAPER_I0, PAPER_I1)
    assert cert.passed and tables.generator == 6


def test_find_valid_generator_exhaustion():
    # I0 = {0, 8} is fixed by every relabeling and is never a transversal,
    # so all eight primitive roots mod 17 fail
    with pytest.raises(GeneratorSearchError) as exc:
        sh.find_valid_generator(sh.FieldConfig(17, 1), 16, [0, 8], [0, 1, 2, 3])
    assert exc.value.candidates_tried == 8


def test_find_valid_generator_rejects_bad_n():
    with pytest.raises(sh.FieldError):
        sh.find_valid_generator(sh.FieldConfig(7, 1), 4, [0], [0])
