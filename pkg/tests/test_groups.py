from __future__ import annotations

import numpy as np
import pytest

import skewhad as sh
from _naive import cyclic_add, field_index_add, naive_autocorrelation


def small_groups():
    """Cyclic and field-additive groups of order up to 64, with an
    independent index-addition oracle for each."""
    out = []
    for n in [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 21, 32, 45, 63, 64]:
        out.append((f"cyclic{n}", sh.GroupSpec.cyclic(n), cyclic_add(n)))
    for p, e in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 4),
                 (13, 1), (5, 2), (3, 3), (2, 5), (7, 2), (61, 1), (2, 6)]:
        tables = sh.build_field(sh.FieldConfig(p, e))
        g = sh.additive_group(tables)
        enc = [g.encoding_of(i) for i in range(g.order)]
        out.append((f"gf{p}^{e}", g, field_index_add(p, e, enc)))
    return out


GROUPS = small_groups()


def sample_subsets(v, seed=0):
    rng = np.random.default_rng(seed)
    subsets = [[], list(range(v))]
    if v > 1:
        subsets.append([1])
        subsets.append(sorted(rng.choice(v, size=v // 2, replace=False).tolist()))
        subsets.append(sorted(rng.choice(v, size=max(1, v // 3), replace=False).tolist()))
    return subsets


def test_cyclic_add_examples():
    g = sh.GroupSpec.cyclic(5)
    assert g.add(3, 4) == 2
    assert g.add(3, 0) == 3
    assert g.neg(2) == 3
    assert g.neg(0) == 0


def test_field_add_inverse_example():
    tables = sh.build_field(sh.FieldConfig(5, 4))
    g = sh.additive_group(tables)
    one = g.index_of_encoding(tables.antilog[0])  # g^0
    assert g.add(one, g.neg(one)) == 0


def test_field_negation_lands_in_shifted_class():
    # multiplying by -1 shifts the discrete log by (q-1)/2, so for N=16 over
    # GF(5^4) the negative of an element of class k lies in class k+8
    tables = sh.build_field(sh.FieldConfig(5, 4))
    part = sh.cyclotomic_partition(tables, 16)
    g = sh.additive_group(tables)
    rng = np.random.default_rng(1)
    for k in rng.integers(0, 624, size=40):
        idx = 1 + int(k)  # element g^k
        nidx = g.neg(idx)
        assert part.class_of[g.encoding_of(nidx)] == (int(k) + 8) % 16


@pytest.mark.parametrize("name,g,add", GROUPS, ids=[t[0] for t in GROUPS])
def test_add_properties_sampled(name, g, add):
    rng = np.random.default_rng(3)
    v = g.order
    xs = rng.integers(0, v, size=(30, 3))
    for x, y, z in xs:
        x, y, z = int(x), int(y), int(z)
        assert g.add(x, y) == g.add(y, x) == add(x, y)
        assert g.add(g.add(x, y), z) == g.add(x, g.add(y, z))
        assert g.add(x, 0) == x
        assert g.neg(g.neg(x)) == x
        assert g.add(x, g.neg(x)) == 0


def test_index_out_of_range():
    g = sh.GroupSpec.cyclic(5)
    with pytest.raises(ValueError):
        g.add(5, 0)
    with pytest.raises(ValueError):
        g.neg(-1)


def test_autocorrelation_frozen_examples():
    g3 = sh.GroupSpec.cyclic(3)
    d = sh.subset_from_indices(g3, [1])
    assert sh.autocorrelation(g3, d, 1) == -1
    assert list(sh.autocorrelation_profile(g3, d)) == [3, -1, -1]

    g5 = sh.GroupSpec.cyclic(5)
    d = sh.subset_from_indices(g5, [1, 2])
    assert list(sh.autocorrelation_profile(g5, d)) == [5, 1, -3, -3, 1]


def test_autocorrelation_at_zero_is_order():
    for name, g, _ in GROUPS:
        for members in sample_subsets(g.order, seed=5):
            mask = sh.subset_from_indices(g, members)
            assert sh.autocorrelation(g, mask, 0) == g.order, name


def test_autocorrelation_empty_subset():
    g = sh.GroupSpec.cyclic(7)
    mask = sh.subset_from_indices(g, [])
    for w in range(7):
        assert sh.autocorrelation(g, mask, w) == 7


@pytest.mark.parametrize("name,g,add", GROUPS, ids=[t[0] for t in GROUPS])
def test_autocorrelation_matches_literal_sum_all_shifts(name, g, add):
    # set-identity evaluation vs the written-out indicator sum, every shift
    for members in sample_subsets(g.order, seed=11):
        mask = sh.subset_from_indices(g, members)
        profile = sh.autocorrelation_profile(g, mask)
        for w in range(g.order):
            expected = naive_autocorrelation(g.order, add, members, w)
            assert sh.autocorrelation(g, mask, w) == expected
            assert profile[w] == expected


@pytest.mark.parametrize("name,g,add", GROUPS, ids=[t[0] for t in GROUPS])
def test_autocorrelation_symmetry_and_parity(name, g, add):
    v = g.order
    for members in sample_subsets(v, seed=17):
        mask = sh.subset_from_indices(g, members)
        profile = sh.autocorrelation_profile(g, mask)
        neg = g.neg_perm()
        assert np.array_equal(profile, profile[neg])          # P(w) == P(-w)
        assert np.all((profile - v) % 4 == 0)                 # P(w) == v mod 4


@pytest.mark.parametrize("name,g,add", GROUPS, ids=[t[0] for t in GROUPS])
def test_profile_total_identity(name, g, add):
    # sum over nonzero shifts equals (v - 2|D|)^2 - v
    v = g.order
    for members in sample_subsets(v, seed=23):
        mask = sh.subset_from_indices(g, members)
        profile = sh.autocorrelation_profile(g, mask)
        assert profile[1:].sum() == (v - 2 * len(members)) ** 2 - v


def test_neg_perm_is_involution():
    for name, g, _ in GROUPS:
        perm = g.neg_perm()
        assert np.array_equal(perm[perm], np.arange(g.order)), name


def test_development_tables_match_scalar_ops():
    for name, g, _ in GROUPS:
        if g.order > 16:
            continue
        diff = g.diff_index_table()
        tot = g.sum_index_table()
        for i in range(g.order):
            for j in range(g.order):
                assert diff[i, j] == g.add(j, g.neg(i)), name
                assert tot[i, j] == g.add(i, j), name
