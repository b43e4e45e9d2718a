"""Exact linear algebra over the rationals.

Matrices are plain lists of rows whose entries are ints or Fractions.
Rank goes through fraction-free (Bareiss) elimination on denominator-cleared
integer rows, with a modular pre-pass that may short-circuit only when the
modular answer is provably the exact one (full rank).  Reduced row echelon
form over Fraction is the canonical representation used for subspaces and
for expressing vectors in a row-space basis.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import IntegrityError

#: Word-size primes for the modular rank pre-pass.
_RANK_PRIMES = (2147483647, 2147483629, 2147483587)


def clear_denominators(row) -> list[int]:
    """Scale a row of ints/Fractions by a positive integer to get ints."""
    scale = 1
    for x in row:
        if isinstance(x, Fraction):
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    out = []
    for x in row:
        if isinstance(x, Fraction):
            out.append(int(x * scale))
        else:
            out.append(x * scale)
    return out


def _rank_mod(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        prow = m[rank]
        for i in range(rank + 1, nrows):
            f = m[i][col]
            if f:
                f = f * inv % p
                ri = m[i]
                for j in range(col, ncols):
                    ri[j] = (ri[j] - f * prow[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_bareiss(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Every division below is exact (checked); the intermediate entries stay
    minors of the input, which keeps their size polynomial.
    """
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        prow = m[rank]
        for i in range(rank + 1, nrows):
            ri = m[i]
            f = ri[col]
            for j in range(col + 1, ncols):
                q, r = divmod(pv * ri[j] - f * prow[j], prev)
                if r:
                    raise IntegrityError("non-exact division in fraction-free elimination")
                ri[j] = q
            ri[col] = 0
        prev = pv
        rank += 1
    return rank


def rank_exact(rows) -> int:
    """Exact rank over the rationals.

    A modular pre-pass (three distinct word-size primes) short-circuits when
    it certifies full rank; otherwise fraction-free elimination is
    authoritative and any modular rank above it raises IntegrityError.
    """
    rows = [r for r in (list(row) for row in rows) if any(r)]
    if not rows:
        return 0
    irows = [clear_denominators(r) for r in rows]
    bound = min(len(irows), len(irows[0]))
    modular = [_rank_mod(irows, p) for p in _RANK_PRIMES]
    if max(modular) == bound:
        return bound
    exact = rank_bareiss(irows)
    if any(r > exact for r in modular):
        raise IntegrityError(f"modular rank {max(modular)} exceeds exact rank {exact}")
    return exact


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fraction.

    Returns the nonzero rows (a canonical basis of the row space) and the
    pivot column indices.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = 1 / prow[col]
        for j in range(col, ncols):
            prow[j] *= inv
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = m[i][col]
                ri = m[i]
                for j in range(col, ncols):
                    ri[j] -= f * prow[j]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return m[:rank], pivots


def coordinates_in_rowspace(basis: list[list[Fraction]], pivots: list[int], vec) -> list[Fraction] | None:
    """Coordinates of ``vec`` in an RREF basis, or None if it is outside the row space.

    With an RREF basis the candidate coordinates are just the entries of
    ``vec`` at the pivot columns; membership is confirmed by exact
    reconstruction.
    """
    coords = [Fraction(vec[p]) for p in pivots]
    ncols = len(vec)
    for j in range(ncols):
        s = Fraction(0)
        for c, b in zip(coords, basis):
            if c:
                s += c * b[j]
        if s != vec[j]:
            return None
    return coords


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Canonical (RREF) basis of the right null space of the matrix."""
    basis, pivots = rref(rows)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    out = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for row, p in zip(basis, pivots):
            v[p] = -row[j]
        out.append(v)
    # Vectors built this way are already independent; normalize to RREF for canonicity.
    canon, _ = rref(out) if out else ([], [])
    return canon
