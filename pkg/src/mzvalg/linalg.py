"""Sparse exact row reduction over Q with integer-normalized rows.

Rows are dicts column -> value.  Incoming values may be ints or Fractions;
each stored row is scaled to a primitive integer vector.  Column order is
the integer order of the column ids, which callers use to split "must be
zero" columns (low ids) from "payload" columns (high ids): after feeding
all rows, the stored rows whose pivot lies in the payload range span
exactly the payload image of the relations vanishing on the low block.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _normalize(row) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            d = v.denominator
            den = den // gcd(den, d) * d
    ints = {}
    g = 0
    for c, v in row.items():
        iv = int(v * den)
        if iv:
            ints[c] = iv
            g = gcd(g, iv)
    if g > 1:
        for c in ints:
            ints[c] //= g
    return ints


class Eliminator:
    """Incremental echelon form; pivot rows never change once stored."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row) -> bool:
        """Reduce a row against the stored pivots; returns True if rank grew."""
        r = _normalize(row)
        pivots = self.pivots
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                return True
            a, b = p[c], r[c]
            g = gcd(a, b)
            a //= g
            b //= g
            nr = {}
            for col, v in r.items():
                pv = p.get(col)
                w = a * v - b * pv if pv is not None else a * v
                if w:
                    nr[col] = w
            for col, pv in p.items():
                if col not in r:
                    nr[col] = -b * pv
            g2 = 0
            for v in nr.values():
                g2 = gcd(g2, v)
            if g2 > 1:
                nr = {col: v // g2 for col, v in nr.items()}
            r = nr
        return False

    def rows_with_pivot_ge(self, boundary: int) -> list[dict]:
        """Stored rows whose pivot column is >= boundary (all lower columns
        are zero in such a row by the pivot-minimality of storage)."""
        return [dict(self.pivots[c]) for c in self.pivots if c >= boundary]

    def rref(self) -> list[tuple[int, dict]]:
        """Fully reduced rows as (pivot, {col: Fraction}) sorted by pivot."""
        cols = sorted(self.pivots)
        rows = {}
        for c in cols:
            raw = self.pivots[c]
            scale = Fraction(1, raw[c])
            rows[c] = {col: v * scale for col, v in raw.items()}
        for c in reversed(cols):
            high = rows[c]
            for c2 in cols:
                if c2 >= c:
                    break
                low = rows[c2]
                f = low.get(c)
                if f:
                    for col, v in high.items():
                        nv = low.get(col, 0) - f * v
                        if nv:
                            low[col] = nv
                        elif col in low:
                            del low[col]
        return [(c, rows[c]) for c in cols]


def reduce_mod_rref(vec: dict, rref_rows) -> dict:
    """Residual of a vector modulo fully reduced rows (empty iff member)."""
    residual = {c: v for c, v in vec.items() if v}
    for pivot, row in rref_rows:
        f = residual.get(pivot)
        if f:
            for col, v in row.items():
                nv = residual.get(col, 0) - f * v
                if nv:
                    residual[col] = nv
                elif col in residual:
                    del residual[col]
    return residual
