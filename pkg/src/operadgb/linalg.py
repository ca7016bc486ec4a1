"""Exact rank computation for sparse rational matrices.

Rows are dicts {column: Fraction}.  Gaussian elimination with no pivoting
heuristics beyond first-column; everything stays exact.
"""

from __future__ import annotations

from fractions import Fraction


def rank(rows: list[dict[int, Fraction]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    rk = 0
    for row in rows:
        row = {j: c for j, c in row.items() if c}
        while row:
            j = min(row)
            piv = pivots.get(j)
            if piv is None:
                c = row[j]
                pivots[j] = {jj: cc / c for jj, cc in row.items()}
                rk += 1
                break
            factor = row[j]
            for jj, cc in piv.items():
                val = row.get(jj, Fraction(0)) - factor * cc
                if val:
                    row[jj] = val
                else:
                    row.pop(jj, None)
    return rk


def matrix_rows(vectors, basis_index) -> list[dict[int, Fraction]]:
    """Convert mapping-valued vectors to sparse rows via a basis index."""
    return [{basis_index[k]: c for k, c in v.items()} for v in vectors]


def betti(dim_here: int, rank_in: int, rank_out: int) -> int:
    """dim ker(out) - rank(in) for a chain spot  <- here <- ."""
    return dim_here - rank_out - rank_in
