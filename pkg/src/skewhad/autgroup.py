"""Affine maps x -> u*x + a acting on the bordered matrix by index permutation.

With u ranging over the class of 1 in the cyclotomic partition and a over
the whole field, these maps permute the group-indexed block rows and columns
(identically in both blocks, fixing the two border indices) and leave the
assembled matrix invariant entry for entry.  No sign component is needed:
the borders are constant and every block entry depends only on element
differences, which the maps rescale within block-invariant classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf import CyclotomicPartition, FieldTables
from . import gf as _gf
from .hadamard import PmMatrix


@dataclass(frozen=True)
class AffineMap:
    """x -> u*x + a with u, a as canonical encodings; u must be nonzero."""

    u: int
    a: int


def make_affine(partition: CyclotomicPartition, u: int, a: int) -> AffineMap:
    """Validated constructor: the multiplier must lie in class 0."""
    if u == 0 or int(partition.class_of[u]) != 0:
        raise ValueError(f"multiplier encoding {u} is not in class 0")
    return AffineMap(u=int(u), a=int(a))


def compose_affine(tables: FieldTables, m1: AffineMap, m2: AffineMap) -> AffineMap:
    """m1 after m2: x -> u1*(u2*x + a2) + a1."""
    return AffineMap(u=tables.mul(m1.u, m2.u),
                     a=tables.add(tables.mul(m1.u, m2.a), m1.a))


def induced_permutation(tables: FieldTables, m: AffineMap) -> np.ndarray:
    """Permutation of the 2(q+1) bordered indices induced by the affine map.

    Indices 0 and 1 (the borders) are fixed; group index i in either block
    maps to the index of u*g_i + a under the canonical ordering, with the
    same action on both blocks.
    """
    q = tables.q
    group = _gf.additive_group(tables)
    out_enc = np.empty(q, dtype=np.int64)
    out_enc[0] = 0
    lu = int(tables.log[m.u])
    out_enc[1:] = tables.antilog[(np.arange(q - 1) + lu) % (q - 1)]
    # add the translation coefficient-wise
    a_idx = group.index_of_encoding(m.a)
    pi = group.add_shift(group.indices_of_encodings(out_enc), a_idx)
    sigma = np.empty(2 * q + 2, dtype=np.int64)
    sigma[0] = 0
    sigma[1] = 1
    sigma[2: q + 2] = 2 + pi
    sigma[q + 2:] = q + 2 + pi
    return sigma


def verify_automorphism(h: PmMatrix, sigma: np.ndarray) -> bool:
    """Whether H[sigma(i), sigma(j)] == H[i, j] for all i, j."""
    sigma = np.asarray(sigma, dtype=np.int64)
    if sigma.shape != (h.n,):
        raise ValueError(f"permutation length {sigma.shape} does not match order {h.n}")
    s = h.signs()
    return bool(np.array_equal(s[sigma][:, sigma], s))


@dataclass
class AuditReport:
    """Result of verifying the affine subgroup action on a bordered matrix."""

    q: int
    class_size: int
    asserted_order: int
    generator_results: list[tuple[str, bool]] = field(default_factory=list)
    samples_checked: int = 0
    samples_ok: int = 0
    exhaustive_checked: int = 0
    exhaustive_ok: int = 0
    passed: bool = False

    def to_log(self) -> str:
        lines = [f"{name} {'PASS' if ok else 'FAIL'}" for name, ok in self.generator_results]
        if self.samples_checked:
            lines.append(f"closure_sample {self.samples_ok}/{self.samples_checked} "
                         f"{'PASS' if self.samples_ok == self.samples_checked else 'FAIL'}")
        if self.exhaustive_checked:
            lines.append(f"exhaustive {self.exhaustive_ok}/{self.exhaustive_checked} "
                         f"{'PASS' if self.exhaustive_ok == self.exhaustive_checked else 'FAIL'}")
        lines.append(f"{'PASS' if self.passed else 'FAIL'} order {self.asserted_order} "
                     f"= {self.class_size}*{self.q}")
        return "\n".join(lines) + "\n"


def subgroup_audit(h: PmMatrix, partition: CyclotomicPartition, *,
                   samples: int = 100, exhaustive: bool = False,
                   seed: int = 0) -> AuditReport:
    """Verify the affine subgroup {x -> u*x + a : u in C_0, a in F} on H.

    Checks one multiplier generator of order (q-1)/N and one translation
    generator of order p per basis coefficient, then a random closure sample
    of composite maps (products of random subgroup elements).  With
    ``exhaustive`` set, every one of the ((q-1)/N) * q maps is verified.
    """
    tables = partition.tables
    q, p, e, n_cls = tables.q, tables.p, tables.e, partition.N
    f = partition.f
    report = AuditReport(q=q, class_size=f, asserted_order=f * q)
    if h.n != 2 * q + 2:
        raise ValueError(f"matrix order {h.n} does not match 2(q + 1) = {2 * q + 2}")

    all_ok = True

    def check(name: str, m: AffineMap) -> bool:
        ok = verify_automorphism(h, induced_permutation(tables, m))
        report.generator_results.append((name, ok))
        return ok

    mult = int(tables.pow_g(n_cls))  # generates C_0 as a cyclic group
    if tables.element_order(mult) != f:
        raise ValueError(f"multiplier g^{n_cls} has order {tables.element_order(mult)}, expected {f}")
    all_ok &= check(f"multiplier g^{n_cls}", make_affine(partition, mult, 0))
    for i in range(e):
        a = p**i  # encoding of the i-th basis monomial
        all_ok &= check(f"translation basis {i}", make_affine(partition, 1, a))

    rng = np.random.default_rng(seed)
    if samples > 0:
        ok_count = 0
        for _ in range(samples):
            m1 = AffineMap(u=int(tables.pow_g(n_cls * int(rng.integers(f)))),
                           a=int(rng.integers(q)))
            m2 = AffineMap(u=int(tables.pow_g(n_cls * int(rng.integers(f)))),
                           a=int(rng.integers(q)))
            m = compose_affine(tables, m1, m2)
            if verify_automorphism(h, induced_permutation(tables, m)):
                ok_count += 1
        report.samples_checked = samples
        report.samples_ok = ok_count
        all_ok &= ok_count == samples

    if exhaustive:
        ok_count = 0
        total = 0
        for k in range(f):
            u = int(tables.pow_g(n_cls * k))
            for a in range(q):
                total += 1
                if verify_automorphism(h, induced_permutation(tables, AffineMap(u=u, a=a))):
                    ok_count += 1
        report.exhaustive_checked = total
        report.exhaustive_ok = ok_count
        all_ok &= ok_count == total

    report.passed = bool(all_ok)
    return report
