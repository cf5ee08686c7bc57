"""Linear and multiplicative maps on the word algebra and its u-series.

Covers the word-reversing duality, the weight-raising derivations, their
exponential bundling into u-coefficient maps, and the single-variable
automorphisms (built from closed-form generator images) together with
composite exponent specs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .word_algebra import (
    ALPHABET_XY,
    NCPoly,
    Word,
    X_POLY,
    Y_POLY,
    Z_POLY,
)
from .series_ring import (
    TruncSeries,
    Truncation,
    geometric_inverse,
    inject,
    one,
    series_mul,
    u_var,
)


@dataclass(frozen=True)
class MapSpec:
    """Exponent vector (e1,...,es) naming a composite automorphism.

    Entry j means |e_j| applications of the variable-j automorphism, with
    the inverse taken when e_j < 0.  The all-zero vector is the identity.
    """

    e: tuple[int, ...]

    def __post_init__(self):
        if not self.e or any(not isinstance(v, int) for v in self.e):
            raise ValueError(f"spec must be a nonempty tuple of ints: {self.e}")

    @classmethod
    def of(cls, obj) -> "MapSpec":
        if isinstance(obj, MapSpec):
            return obj
        if isinstance(obj, int):
            return cls((obj,))
        return cls(tuple(obj))

    def inverse(self) -> "MapSpec":
        return MapSpec(tuple(-v for v in self.e))

    @property
    def is_identity(self) -> bool:
        return all(v == 0 for v in self.e)

    def __len__(self):
        return len(self.e)

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.e) + "]"


def _tau_poly(p: NCPoly) -> NCPoly:
    if p.alphabet != ALPHABET_XY:
        raise ValueError("duality acts on the xy alphabet")
    return NCPoly({w.reversed_swapped(): c for w, c in p.terms.items()})


def tau(w):
    """Anti-automorphism: reverse each word and swap x and y; fixes every u."""
    if isinstance(w, NCPoly):
        return _tau_poly(w)
    if isinstance(w, TruncSeries):
        return TruncSeries(w.trunc, {a: _tau_poly(p) for a, p in w.coeffs.items()})
    raise TypeError(f"cannot apply duality to {type(w).__name__}")


@lru_cache(maxsize=64)
def _partial_gen(n: int) -> NCPoly:
    # x (x+y)^(n-1) y
    return X_POLY * (Z_POLY ** (n - 1)) * Y_POLY


@lru_cache(maxsize=1 << 17)
def _partial_word(n: int, word: Word) -> NCPoly:
    g = _partial_gen(n)
    out = {}
    for i in range(word.n):
        sign = 1 if word.letter(i) == 0 else -1
        pre_bits = word.bits >> (word.n - i)
        suf_len = word.n - i - 1
        suf_bits = word.bits & ((1 << suf_len) - 1)
        for gw, gc in g.terms.items():
            bits = (((pre_bits << gw.n) | gw.bits) << suf_len) | suf_bits
            w = Word(word.n - 1 + gw.n, bits)
            v = out.get(w, 0) + sign * gc
            if v:
                out[w] = v
            elif w in out:
                del out[w]
    return NCPoly(out)


def _partial_poly(n: int, p: NCPoly, max_weight=None) -> NCPoly:
    out = NCPoly.zero()
    for w, c in p.terms.items():
        if max_weight is not None and w.n + n > max_weight:
            continue
        out = out + _partial_word(n, w).scaled(c)
    return out


def partial(n: int, w):
    """The derivation sending x to x(x+y)^(n-1)y and y to its negative.

    Raises word weight by exactly n; kills every u.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"derivation order must be a positive integer, got {n}")
    if isinstance(w, NCPoly):
        return _partial_poly(n, w)
    if isinstance(w, TruncSeries):
        out = {}
        for alpha, p in w.coeffs.items():
            q = _partial_poly(n, p, w.trunc.W)
            if not q.is_zero:
                out[alpha] = q
        return TruncSeries(w.trunc, out)
    raise TypeError(f"cannot apply derivation to {type(w).__name__}")


def _partitions(n: int):
    """Partitions of n as tuples of (part, multiplicity), parts descending."""

    def rec(remaining, max_part):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, max_part), 0, -1):
            for mult in range(remaining // part, 0, -1):
                for rest in rec(remaining - part * mult, part - 1):
                    yield ((part, mult),) + rest

    return rec(n, n)


def _theta_poly(i: int, p: NCPoly, max_weight=None) -> NCPoly:
    out = NCPoly.zero()
    for lam in _partitions(i):
        weight = Fraction(1)
        for part, mult in lam:
            weight /= factorial(mult) * part**mult
        q = p
        for part, mult in lam:
            for _ in range(mult):
                q = _partial_poly(part, q, max_weight)
                if q.is_zero:
                    break
        if not q.is_zero:
            out = out + q.scaled(weight)
    return out


def theta(i: int, w):
    """The u^i coefficient map of the automorphism family.

    Expanded from the exponential of the derivation series as a
    partition-indexed rational combination of derivation composites.
    """
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"theta order must be a positive integer, got {i}")
    if isinstance(w, NCPoly):
        return _theta_poly(i, w)
    if isinstance(w, TruncSeries):
        out = {}
        for alpha, p in w.coeffs.items():
            q = _theta_poly(i, p, w.trunc.W)
            if not q.is_zero:
                out[alpha] = q
        return TruncSeries(w.trunc, out)
    raise TypeError(f"cannot apply theta to {type(w).__name__}")


@lru_cache(maxsize=256)
def _delta_images(trunc: Truncation, j: int, sign: int):
    uj = u_var(trunc, j)
    xs = inject(X_POLY, trunc)
    ys = inject(Y_POLY, trunc)
    unit = one(trunc)
    if sign > 0:
        gx = xs * geometric_inverse(unit - ys * uj)
        gy = (unit - xs * uj - ys * uj) * ys * geometric_inverse(unit - ys * uj)
    else:
        gx = xs * geometric_inverse(unit - xs * uj) * (unit - xs * uj - ys * uj)
        gy = geometric_inverse(unit - xs * uj) * ys
    return gx, gy


@lru_cache(maxsize=1 << 18)
def _word_image(trunc: Truncation, j: int, sign: int, word: Word) -> TruncSeries:
    if word.n == 0:
        return one(trunc)
    prefix = Word(word.n - 1, word.bits >> 1)
    gx, gy = _delta_images(trunc, j, sign)
    return series_mul(
        _word_image(trunc, j, sign, prefix), gy if word.bits & 1 else gx
    )


def delta_single(j: int, sign: int, w: TruncSeries) -> TruncSeries:
    """One application of the variable-j automorphism (sign -1: its inverse).

    Ring homomorphism fixing every u-variable, evaluated by substituting the
    closed-form generator images into each word.
    """
    trunc = w.trunc
    if not 1 <= j <= trunc.s:
        raise ValueError(f"variable index {j} out of range 1..{trunc.s}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    acc: dict[tuple, dict] = {}
    N = trunc.N
    for alpha, p in w.coeffs.items():
        ta = sum(alpha)
        for word, c in p.terms.items():
            img = _word_image(trunc, j, sign, word)
            for beta, q in img.coeffs.items():
                if ta + sum(beta) > N:
                    continue
                gamma = tuple(a + b for a, b in zip(alpha, beta))
                slot = acc.setdefault(gamma, {})
                for w2, c2 in q.terms.items():
                    v = slot.get(w2, 0) + c * c2
                    if v:
                        slot[w2] = v
                    elif w2 in slot:
                        del slot[w2]
    return TruncSeries(trunc, {g: NCPoly(t) for g, t in acc.items() if t})


def delta_exp_oracle(j: int, sign: int, w: TruncSeries) -> TruncSeries:
    """Same map computed from the exponential of the derivation series.

    Independent of delta_single; the two must agree inside the box.
    """
    trunc = w.trunc
    if not 1 <= j <= trunc.s:
        raise ValueError(f"variable index {j} out of range 1..{trunc.s}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")

    def dop(h: TruncSeries) -> TruncSeries:
        out = TruncSeries(trunc)
        for n in range(1, min(trunc.N, trunc.W) + 1):
            pn = partial(n, h)
            if pn.is_zero:
                continue
            shift = tuple(n if i == j - 1 else 0 for i in range(trunc.s))
            moved = {}
            for alpha, p in pn.coeffs.items():
                target = tuple(a + s for a, s in zip(alpha, shift))
                if sum(target) <= trunc.N:
                    moved[target] = p.scaled(Fraction(1, n))
            out = out + TruncSeries(trunc, moved)
        return out

    out = w
    term = w
    for k in range(1, trunc.N + 1):
        term = dop(term) * Fraction(sign, k)
        if term.is_zero:
            break
        out = out + term
    return out


def apply_spec(spec, w: TruncSeries) -> TruncSeries:
    """Composite automorphism named by an exponent vector."""
    spec = MapSpec.of(spec)
    if len(spec) != w.trunc.s:
        raise ValueError(f"spec length {len(spec)} != number of u-variables {w.trunc.s}")
    out = w
    for j, e in enumerate(spec.e, start=1):
        if e == 0:
            continue
        sign = 1 if e > 0 else -1
        for _ in range(abs(e)):
            out = delta_single(j, sign, out)
    return out
