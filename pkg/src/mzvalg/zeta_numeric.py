"""High-precision partial sums of nested zeta series and relation residuals.

A numeric falsification harness: symbolic relations produced elsewhere in
the package are summed here to confirm the combination vanishes up to the
series tails.  Values are binary floats with at least the requested number
of decimal digits of working precision, so the error is dominated by the
truncation tail, never by rounding.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import gmpy2

from .word_algebra import Index, NCPoly, index_from_word, is_admissible

DEFAULT_DIGITS = 30


class DivergentSeries(ValueError):
    """Evaluation needs an admissible index (first part at least 2)."""


@contextmanager
def _precision(bits: int):
    old = gmpy2.get_context()
    gmpy2.set_context(gmpy2.context(precision=bits))
    try:
        yield
    finally:
        gmpy2.set_context(old)


def _bits(digits: int) -> int:
    return max(96, int(digits * 3.3220) + 16)


# Caches are read-mostly; CPython dict insertion is atomic, so concurrent
# evaluations at worst duplicate work.
_pow_cache: dict[tuple[int, int, int], list] = {}
_zeta_cache: dict[tuple[tuple[int, ...], int, int], tuple] = {}


def _inv_powers(cutoff: int, k: int, bits: int) -> list:
    key = (cutoff, k, bits)
    arr = _pow_cache.get(key)
    if arr is not None:
        return arr
    if k == 1:
        unit = gmpy2.mpfr(1)
        arr = [gmpy2.mpfr(0)] + [unit / m for m in range(1, cutoff + 1)]
    else:
        base = _inv_powers(cutoff, 1, bits)
        arr = [gmpy2.mpfr(0)] + [base[m] ** k for m in range(1, cutoff + 1)]
    _pow_cache[key] = arr
    return arr


@dataclass(frozen=True)
class ZetaValue:
    """Partial sum over decreasing tuples bounded by the cutoff."""

    index: Index
    value: object
    cutoff: int
    tail_bound: object

    def to_json_dict(self, digits: int = DEFAULT_DIGITS) -> dict:
        return {
            "index": str(self.index),
            "value": f"{self.value:.{digits}g}",
            "tail_bound": f"{self.tail_bound:.3g}",
            "cutoff": self.cutoff,
        }


def zeta_eval(idx, cutoff: int, digits: int = DEFAULT_DIGITS) -> ZetaValue:
    """Exact partial sum of the nested series up to outer summand cutoff.

    Dynamic programming over nesting levels; O(depth * cutoff) work.
    """
    idx = Index.of(idx)
    if not idx.is_admissible:
        raise DivergentSeries(f"index {idx} has first part < 2")
    if cutoff < 1:
        raise ValueError("cutoff must be positive")
    bits = _bits(digits)
    key = (idx.parts, cutoff, bits)
    hit = _zeta_cache.get(key)
    if hit is None:
        with _precision(bits):
            prev = None
            for k in reversed(idx.parts):
                pw = _inv_powers(cutoff, k, bits)
                cur = [gmpy2.mpfr(0)] * (cutoff + 1)
                acc = gmpy2.mpfr(0)
                if prev is None:
                    for m in range(1, cutoff + 1):
                        acc = acc + pw[m]
                        cur[m] = acc
                else:
                    for m in range(1, cutoff + 1):
                        acc = acc + pw[m] * prev[m - 1]
                        cur[m] = acc
                prev = cur
            value = prev[cutoff]
            tail = _tail_bound(idx, cutoff)
        hit = (value, tail)
        _zeta_cache[key] = hit
    value, tail = hit
    return ZetaValue(index=idx, value=value, cutoff=cutoff, tail_bound=tail)


def _tail_bound(idx: Index, cutoff: int):
    # integral comparison: the inner sums are at most (1+ln m)^(r-1)/(r-1)!,
    # and the full integral of (1+ln t)^(r-1) t^(-k1) from M keeps the
    # lower-order terms the leading M^(1-k1)(1+ln M)^(r-1)/(k1-1) drops
    k1 = idx.parts[0]
    r = idx.depth
    m = gmpy2.mpfr(cutoff)
    a = 1 + gmpy2.log(m)
    total = gmpy2.mpfr(0)
    for j in range(r):
        total += a ** (r - 1 - j) / (factorial(r - 1 - j) * (k1 - 1) ** (j + 1))
    return m ** (1 - k1) * total


@dataclass(frozen=True)
class ResidualReport:
    residual: object
    tail_bound: object
    cutoff: int

    def to_json_dict(self) -> dict:
        return {
            "residual": f"{self.residual:.6g}",
            "tail_bound": f"{self.tail_bound:.6g}",
            "cutoff": self.cutoff,
        }


def relation_residual(p: NCPoly, cutoff: int, digits: int = DEFAULT_DIGITS) -> ResidualReport:
    """|sum of coefficient * partial zeta| over the supported words.

    The empty word contributes its coefficient exactly (the evaluation map
    sends 1 to 1); the reported bound accumulates the per-index tails.
    """
    if not is_admissible(p):
        raise DivergentSeries("polynomial has non-admissible words")
    bits = _bits(digits)
    with _precision(bits):
        total = gmpy2.mpfr(0)
        bound = gmpy2.mpfr(0)
        for word, c in p.terms.items():
            q = gmpy2.mpq(c) if isinstance(c, Fraction) else c
            if word.n == 0:
                total = total + q
                continue
            zv = zeta_eval(index_from_word(word), cutoff, digits)
            total = total + q * zv.value
            bound = bound + abs(q) * zv.tail_bound
        return ResidualReport(residual=abs(total), tail_bound=bound, cutoff=cutoff)
