"""Exact integer linear algebra: Smith form, gcd of maximal minors, and
the finite quotients used by the chain computations.

A matrix ``A`` with ``m`` rows and ``n`` columns presents the module
``Z^n / (row space of A)``.  When ``A`` has full rank ``m`` the product of
its invariant factors equals the gcd of its ``m x m`` minors, so the
quotient is free exactly when that gcd is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .pairs import CoprimePair


class RankDeficientError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[r[j] for r in self.rows] for j in range(self.ncols)], self.nrows)

    def to_json(self) -> list:
        return [[x if -2**63 <= x < 2**63 else str(x) for x in r] for r in self.rows]

    def __str__(self):
        if not self.rows:
            return "[]"
        w = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join("[" + " ".join(str(x).rjust(w) for x in r) + "]" for r in self.rows)


def _as_lists(A) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return A.tolist()
    return [list(map(int, r)) for r in A]


def smith_diagonalize(A) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ... | d_k`` of ``A``.

    Elementary row and column operations, pivoting on the entry of least
    absolute value.  Python integers are unbounded, so nothing overflows.
    """
    M = _as_lists(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        # pivot: smallest nonzero entry in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = M[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        M[t], M[i] = M[i], M[t]
        for r in M:
            r[t], r[j] = r[j], r[t]
        while True:
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if M[i][t]:
                    q = M[i][t] // piv
                    if q:
                        Mi, Mt = M[i], M[t]
                        for j in range(t, cols):
                            Mi[j] -= q * Mt[j]
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if M[t][j]:
                    q = M[t][j] // piv
                    if q:
                        for r in M[t:]:
                            r[j] -= q * r[t]
                    if M[t][j]:
                        dirty = True
            if not dirty:
                # pivot divides its row and column; check the rest of the block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if M[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                Mt, Mb = M[t], M[bad]
                for j in range(t, cols):
                    Mt[j] += Mb[j]
                continue
            # move the smallest remaining entry of row/column t into the pivot
            cand = [(abs(M[i][t]), i, t) for i in range(t, rows) if M[i][t]]
            cand += [(abs(M[t][j]), t, j) for j in range(t, cols) if M[t][j]]
            _, i, j = min(cand)
            M[t], M[i] = M[i], M[t]
            for r in M:
                r[t], r[j] = r[j], r[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


def rank(A) -> int:
    return len(smith_diagonalize(A))


def gcd_maximal_minors(A) -> int:
    """gcd of the ``m x m`` minors of an ``m x n`` matrix of rank ``m``."""
    M = _as_lists(A)
    m = len(M)
    n = len(M[0]) if m else 0
    if m > n:
        raise RankDeficientError("not full rank: more rows than columns")
    d = smith_diagonalize(M)
    if len(d) < m:
        raise RankDeficientError(f"not full rank: rank {len(d)} < {m}")
    out = 1
    for x in d:
        out *= x
    return out


def is_free_quotient(A) -> bool:
    return gcd_maximal_minors(A) == 1


def quotient_structure(A, ncols: int | None = None) -> tuple[int, list[int]]:
    """``(free rank, torsion coefficients > 1)`` of ``Z^ncols / rows(A)``."""
    M = _as_lists(A)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    d = smith_diagonalize(M) if M else []
    return ncols - len(d), [x for x in d if x > 1]


def index_of_chain_quotient(pair: CoprimePair, n: int):
    """Order of ``Y_(n+1) / Y_n [Y_(n+1), Y_(n+1)]``.

    The quotient is presented on ``S'_(m-n-1), ..., S'_(M+n)`` by the
    classes ``[R_(-n-1)], ..., [R_n]`` together with the generators of
    ``Y_n``.  Returns ``float('inf')`` if the quotient is infinite.
    """
    # deferred import keeps this module free of the presentation layer
    from .alexpoly import relator_coefficients

    if n < 0:
        raise ValueError("level must be nonnegative")
    m, M, a = relator_coefficients(pair)
    lo, hi = m - n - 1, M + n
    width = hi - lo + 1
    rows = []
    for k in range(-n - 1, n + 1):
        row = [0] * width
        for j, c in enumerate(a):
            row[m + k + j - lo] = c
        rows.append(row)
    for s in range(m - n, M + n):
        row = [0] * width
        row[s - lo] = 1
        rows.append(row)
    free, torsion = quotient_structure(rows, width)
    if free:
        return float("inf")
    out = 1
    for x in torsion:
        out *= x
    return out
