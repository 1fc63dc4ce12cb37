"""Exact sparse linear algebra over Q.

Vectors are ``dict[int, Fraction]`` keyed by column index.  Pivots are always
taken at the largest column index present, so when columns enumerate a basis
in ascending order the non-pivot (standard) columns are the smallest ones.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

Vector = dict[int, Fraction]


def add_scaled(target: dict, vec: Mapping, scale) -> None:
    """In place ``target += scale * vec``, dropping entries that cancel."""
    for k, v in vec.items():
        x = target.get(k, 0) + scale * v
        if x:
            target[k] = x
        else:
            target.pop(k, None)


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace.

    Each stored row is normalized to 1 at its pivot and has no entries above
    the pivot.
    """

    def __init__(self):
        self.rows: dict[int, Vector] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, object]) -> Vector:
        """Residual of ``vec`` with every pivot column eliminated."""
        v: Vector = {k: Fraction(c) for k, c in vec.items() if c}
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v
            p = max(hits)
            add_scaled(v, self.rows[p], -v[p])

    def add(self, vec: Mapping[int, object]) -> bool:
        """Insert ``vec``; return whether it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = max(v)
        inv = 1 / v[p]
        self.rows[p] = {k: c * inv for k, c in v.items()}
        return True

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)

    def fully_reduce(self) -> None:
        """Clear every pivot column from the other rows (reduced echelon form)."""
        # ascending order: lower rows are already clean, so one pass per row suffices
        for p in sorted(self.rows):
            row = self.rows[p]
            for q in [k for k in row if k != p and k in self.rows]:
                add_scaled(row, self.rows[q], -row[q])

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)


def _integer_row(vec: Mapping[int, object]) -> dict[int, int]:
    items = [(k, Fraction(c)) for k, c in vec.items() if c]
    if not items:
        return {}
    den = 1
    for _, c in items:
        den = lcm(den, c.denominator)
    row = {k: int(c * den) for k, c in items}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {k: v // g for k, v in row.items()} if g > 1 else row


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    """Rank of a sparse rational matrix by fraction-free integer elimination."""
    pivots: dict[int, dict[int, int]] = {}
    for vec in rows:
        row = _integer_row(vec)
        while row:
            p = max(row)
            prow = pivots.get(p)
            if prow is None:
                pivots[p] = row
                break
            a, b = row[p], prow[p]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            new = {}
            for k, v in row.items():
                new[k] = v * fa
            for k, v in prow.items():
                x = new.get(k, 0) - v * fb
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
    return len(pivots)


def solve(columns: list[Mapping[int, object]], target: Mapping[int, object]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum(c[i] * columns[i]) == target``, or ``None``.

    Bookkeeping coordinates live at negative column indices so real columns
    always win the pivot choice.
    """
    basis = EchelonBasis()
    for i, col in enumerate(columns):
        tagged = {k: Fraction(c) for k, c in col.items() if c}
        tagged[-1 - i] = Fraction(1)
        basis.add(tagged)
    residual = basis.reduce(target)
    if any(k >= 0 for k in residual):
        return None
    return [-residual.get(-1 - i, Fraction(0)) for i in range(len(columns))]
