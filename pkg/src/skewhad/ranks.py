"""Exact matrix rank over small prime fields.

GF(2) elimination runs on rows packed into Python integers (XOR row
reduction); odd primes use dense modular elimination.  Pivots are always the
first nonzero entry in column order, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import is_prime


@dataclass(frozen=True)
class RankReport:
    """Rank of one object over one prime field."""

    object: str
    field_char: int
    size: int
    rank: int

    def line(self) -> str:
        return f"{self.object} {self.field_char} {self.size} {self.rank}"


def _rows_as_ints(m01: np.ndarray) -> list[int]:
    bits = (np.asarray(m01) & 1).astype(np.uint8)
    packed = np.packbits(bits, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def rank_gf2(m01: np.ndarray, label: str = "matrix") -> RankReport:
    """Rank of a square 0/1 matrix over GF(2) via bit-packed elimination.

    Each row is reduced against the pivot held at its lowest set column
    until it either vanishes or claims a new pivot column.
    """
    m01 = np.asarray(m01)
    if m01.ndim != 2 or m01.shape[0] != m01.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m01.shape}")
    n = m01.shape[0]
    pivots: dict[int, int] = {}
    for row in _rows_as_ints(m01):
        while row:
            col = (row & -row).bit_length() - 1
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                break
            row ^= piv
    return RankReport(object=label, field_char=2, size=n, rank=len(pivots))


def rank_gfp(x: np.ndarray, p: int, label: str = "matrix") -> RankReport:
    """Rank of an integer matrix over GF(p) by modular Gaussian elimination.

    Entries are reduced mod p first (so a +-1 matrix maps to its residues);
    p must be prime.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    a = (np.asarray(x, dtype=np.int64) % p).copy()
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = a[r + 1:, c:]
        factors = below[:, 0]
        hit = np.flatnonzero(factors)
        if hit.size:
            below[hit] = (below[hit] - factors[hit, None] * a[r, c:][None, :]) % p
        r += 1
    return RankReport(object=label, field_char=p, size=nrows, rank=r)
