from __future__ import annotations

import numpy as np
import pytest

import skewhad as sh
from skewhad.autgroup import AffineMap


@pytest.fixture(scope="module")
def desk_field():
    """GF(27) instance with both blocks the nonzero squares (q = 3 mod 4,
    so the square class is skew and the pair certifies)."""
    tables, partition, pair, cert = sh.find_valid_generator(
        sh.FieldConfig(3, 3), 2, [0], [0])
    h = sh.build_bordered_from_blocks(pair.group, pair.d0, pair.d1)
    assert cert.passed and sh.gate0_verify(h).passed
    return tables, partition, pair, h


def test_compose_identity_and_translations():
    tables = sh.build_field(sh.FieldConfig(5, 2))
    ident = AffineMap(u=1, a=0)
    m = AffineMap(u=int(tables.antilog[4]), a=17)
    assert sh.compose_affine(tables, ident, m) == m
    assert sh.compose_affine(tables, m, ident) == m
    t1 = AffineMap(u=1, a=7)
    t2 = AffineMap(u=1, a=11)
    combined = sh.compose_affine(tables, t1, t2)
    assert combined.u == 1 and combined.a == tables.add(7, 11)


def test_make_affine_validates_class(desk_field):
    tables, partition, _, _ = desk_field
    u_good = int(tables.pow_g(partition.N))
    assert sh.make_affine(partition, u_good, 0).u == u_good
    u_bad = int(tables.pow_g(1))
    with pytest.raises(ValueError):
        sh.make_affine(partition, u_bad, 0)
    with pytest.raises(ValueError):
        sh.make_affine(partition, 0, 0)


def test_multiplier_preserves_classes():
    tables = sh.build_field(sh.FieldConfig(5, 4))
    partition = sh.cyclotomic_partition(tables, 16)
    u = int(tables.pow_g(16))
    rng = np.random.default_rng(0)
    for x in rng.integers(1, 625, size=50):
        assert partition.class_of[tables.mul(u, int(x))] == partition.class_of[int(x)]


def test_induced_identity_permutation(desk_field):
    tables, _, _, h = desk_field
    sigma = sh.induced_permutation(tables, AffineMap(u=1, a=0))
    assert np.array_equal(sigma, np.arange(h.n))


def test_induced_translation_moves_zero(desk_field):
    tables, _, pair, _ = desk_field
    a = 5
    sigma = sh.induced_permutation(tables, AffineMap(u=1, a=a))
    assert sigma[0] == 0 and sigma[1] == 1
    # the zero element sits at block position 0; translating by a sends it
    # to the block position of a in both blocks
    target = pair.group.index_of_encoding(a)
    q = tables.q
    assert sigma[2 + 0] == 2 + target
    assert sigma[2 + q + 0] == 2 + q + target


def test_induced_permutation_is_homomorphism(desk_field):
    tables, partition, _, _ = desk_field
    rng = np.random.default_rng(1)
    f, q, N = partition.f, tables.q, partition.N
    for _ in range(20):
        m1 = AffineMap(u=int(tables.pow_g(N * int(rng.integers(f)))), a=int(rng.integers(q)))
        m2 = AffineMap(u=int(tables.pow_g(N * int(rng.integers(f)))), a=int(rng.integers(q)))
        s1 = sh.induced_permutation(tables, m1)
        s2 = sh.induced_permutation(tables, m2)
        s12 = sh.induced_permutation(tables, sh.compose_affine(tables, m1, m2))
        assert np.array_equal(s12, s1[s2])


def test_verify_automorphism_identity_and_transposition(desk_field):
    _, _, _, h = desk_field
    assert sh.verify_automorphism(h, np.arange(h.n))
    swapped = np.arange(h.n)
    swapped[[2, 3]] = swapped[[3, 2]]
    assert not sh.verify_automorphism(h, swapped)


def test_verify_automorphism_size_mismatch(desk_field):
    _, _, _, h = desk_field
    with pytest.raises(ValueError):
        sh.verify_automorphism(h, np.arange(h.n - 1))


def test_subgroup_elements_fix_matrix(desk_field):
    tables, partition, _, h = desk_field
    rng = np.random.default_rng(2)
    f, q, N = partition.f, tables.q, partition.N
    for _ in range(30):
        m = AffineMap(u=int(tables.pow_g(N * int(rng.integers(f)))), a=int(rng.integers(q)))
        assert sh.verify_automorphism(h, sh.induced_permutation(tables, m))


def test_audit_desk_exhaustive(desk_field):
    tables, partition, _, h = desk_field
    report = sh.subgroup_audit(h, partition, samples=25, exhaustive=True)
    assert report.passed
    assert report.asserted_order == partition.f * tables.q
    assert report.exhaustive_checked == report.asserted_order
    assert report.exhaustive_ok == report.exhaustive_checked
    log = report.to_log()
    assert log.splitlines()[-1].startswith("PASS order")


def test_audit_translations_only_group():
    # GF(3) desk instance: C_0 = {1}, so the subgroup is the 3 translations
    tables, partition, pair, cert = sh.find_valid_generator(
        sh.FieldConfig(3, 1), 2, [0], [0])
    h = sh.build_bordered_from_blocks(pair.group, pair.d0, pair.d1)
    report = sh.subgroup_audit(h, partition, samples=10, exhaustive=True)
    assert report.passed
    assert report.asserted_order == 3
    assert report.exhaustive_checked == 3


def test_audit_order_mismatch_rejected(desk_field, matrix8):
    _, partition, _, _ = desk_field
    with pytest.raises(ValueError):
        sh.subgroup_audit(matrix8, partition)


def test_multiplier_order():
    tables = sh.build_field(sh.FieldConfig(5, 4))
    u = int(tables.pow_g(16))
    assert tables.element_order(u) == 39  # (g^16)^39 = g^624 = 1
