"""Sparse exact linear algebra over the rationals.

Rows are dicts column -> integer; elimination is fraction-free (cross
multiplication followed by gcd normalization), so no floating point ever
enters.  Rank is independent of the row order and of any column
relabeling, which the test-suite asserts by shuffling.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def normalize_row(row):
    """Divide by the content and make the leading coefficient positive."""
    row = {c: v for c, v in row.items() if v}
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    lead = min(row)
    if row[lead] < 0:
        g = -g
    return {c: v // g for c, v in row.items()}


class RowReducer:
    """Incremental row-echelon reduction with integer arithmetic.

    ``add`` reduces a row against the current pivots and installs it as a
    new pivot when independent; ``rank`` is the number of pivots.
    """

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return normalize_row(row)
            a = piv[lead]
            b = row[lead]
            new = {c: a * v for c, v in row.items()}
            for c, v in piv.items():
                val = new.get(c, 0) - b * v
                if val:
                    new[c] = val
                else:
                    new.pop(c, None)
            row = new
        return {}

    def add(self, row):
        reduced = self.reduce(row)
        if reduced:
            self.pivots[min(reduced)] = reduced
            return True
        return False

    def contains(self, row):
        return not self.reduce(row)

    def nullspace_basis(self, ncols):
        """Integer basis vectors of the null space of the added rows.

        Brings the pivot rows to reduced echelon form, then solves for
        each free column; each basis vector is scaled to integers.
        """
        cols = sorted(self.pivots)
        for idx in range(len(cols) - 1, -1, -1):
            c = cols[idx]
            piv = self.pivots[c]
            for c2 in cols[:idx]:
                other = self.pivots[c2]
                b = other.get(c, 0)
                if not b:
                    continue
                a = piv[c]
                new = {k: a * v for k, v in other.items()}
                for k, v in piv.items():
                    val = new.get(k, 0) - b * v
                    if val:
                        new[k] = val
                    else:
                        new.pop(k, None)
                self.pivots[c2] = normalize_row(new)
        pivot_cols = set(self.pivots)
        basis = []
        for free in range(ncols):
            if free in pivot_cols:
                continue
            vec = {free: Fraction(1)}
            for c, piv in self.pivots.items():
                coeff = piv.get(free, 0)
                if coeff:
                    vec[c] = Fraction(-coeff, piv[c])
            denom = 1
            for v in vec.values():
                denom = denom * v.denominator // gcd(denom, v.denominator)
            basis.append({c: int(v * denom) for c, v in vec.items()})
        return basis


def dot(row, vec):
    """Integer dot product of two sparse vectors."""
    if len(row) > len(vec):
        row, vec = vec, row
    return sum(v * vec.get(c, 0) for c, v in row.items())


def rank_of_rows(rows):
    red = RowReducer()
    for row in rows:
        red.add(row)
    return red.rank
