"""Truncated series over the word algebra: Q<x,y>[[u1,...,us]] cut to a box.

A box keeps words of weight at most W and u-monomials of total degree at
most N.  The u's commute with everything; x and y do not.  Every operation
in this package only ever raises the (weight, u-degree) bigrade, so a box
computation agrees with computing exactly and restricting afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .word_algebra import ALPHABET_XY, EMPTY_WORD, NCPoly


class TruncationError(ValueError):
    """Series live in different boxes; restrict explicitly before mixing."""


class NotInvertible(ValueError):
    """Geometric inversion needs constant term exactly 1."""


class OutOfBox(ValueError):
    """Requested u-exponent lies outside the truncation box."""


def iter_compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in iter_compositions(total - head, parts - 1):
            yield (head,) + rest


@dataclass(frozen=True)
class Truncation:
    """Box parameters: s u-variables, weight cap W, total u-degree cap N."""

    s: int
    W: int
    N: int

    def __post_init__(self):
        if self.s < 1 or self.W < 0 or self.N < 0:
            raise ValueError(f"invalid truncation {self}")

    @property
    def zero_exponent(self) -> tuple[int, ...]:
        return (0,) * self.s

    def exponents_of_total(self, total: int):
        return iter_compositions(total, self.s)

    def iter_exponents(self):
        for t in range(self.N + 1):
            yield from self.exponents_of_total(t)


class TruncSeries:
    """Finite map from u-exponents to word polynomials, inside a box."""

    __slots__ = ("trunc", "coeffs")

    def __init__(self, trunc: Truncation, coeffs=None):
        clean = {}
        if coeffs:
            for alpha, p in coeffs.items():
                if sum(alpha) > trunc.N:
                    continue
                if p.alphabet != ALPHABET_XY:
                    raise TruncationError("series coefficients must be xy-tagged")
                kept = {w: c for w, c in p.terms.items() if w.n <= trunc.W}
                if kept:
                    clean[alpha] = NCPoly(kept)
        self.trunc = trunc
        self.coeffs = clean

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, alpha) -> NCPoly:
        return coef(self, alpha)

    def _check_box(self, other: "TruncSeries"):
        if self.trunc != other.trunc:
            raise TruncationError(f"box mismatch {self.trunc} vs {other.trunc}")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_box(other)
        out = dict(self.coeffs)
        for alpha, p in other.coeffs.items():
            q = out.get(alpha)
            r = p if q is None else q + p
            if r.is_zero:
                out.pop(alpha, None)
            else:
                out[alpha] = r
        return TruncSeries(self.trunc, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TruncSeries(self.trunc, {a: -p for a, p in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            if not other:
                return TruncSeries(self.trunc)
            return TruncSeries(
                self.trunc, {a: p.scaled(other) for a, p in self.coeffs.items()}
            )
        if isinstance(other, NCPoly):
            return series_mul(self, inject(other, self.trunc))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, NCPoly):
            return series_mul(inject(other, self.trunc), self)
        return NotImplemented

    def __pow__(self, d: int):
        if not isinstance(d, int) or d < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = one(self.trunc)
        for _ in range(d):
            out = series_mul(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_box(other)
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncSeries({render_series(self)})"

    def __str__(self):
        return render_series(self)


def zero(trunc: Truncation) -> TruncSeries:
    return TruncSeries(trunc)


def one(trunc: Truncation) -> TruncSeries:
    return inject(NCPoly.one(), trunc)


def from_scalar(trunc: Truncation, c) -> TruncSeries:
    return inject(NCPoly({EMPTY_WORD: c}), trunc)


def inject(p: NCPoly, trunc: Truncation) -> TruncSeries:
    """Place a polynomial at the zero u-exponent, truncated at weight W."""
    return TruncSeries(trunc, {trunc.zero_exponent: p})


def u_var(trunc: Truncation, j: int) -> TruncSeries:
    """The series u_j (1-based index)."""
    if not 1 <= j <= trunc.s:
        raise ValueError(f"u-variable index {j} out of range 1..{trunc.s}")
    alpha = tuple(1 if i == j - 1 else 0 for i in range(trunc.s))
    return TruncSeries(trunc, {alpha: NCPoly.one()})


def u_monomial(trunc: Truncation, alpha) -> TruncSeries:
    alpha = tuple(alpha)
    if len(alpha) != trunc.s or any(a < 0 for a in alpha):
        raise ValueError(f"bad exponent {alpha}")
    return TruncSeries(trunc, {alpha: NCPoly.one()})


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product over u-exponents with noncommutative coefficient parts."""
    a._check_box(b)
    trunc = a.trunc
    acc: dict[tuple, dict] = {}
    for alpha, p in a.coeffs.items():
        ta = sum(alpha)
        for beta, q in b.coeffs.items():
            if ta + sum(beta) > trunc.N:
                continue
            gamma = tuple(x + y for x, y in zip(alpha, beta))
            r = p.mul_capped(q, trunc.W)
            if r.is_zero:
                continue
            slot = acc.setdefault(gamma, {})
            for w, c in r.terms.items():
                v = slot.get(w, 0) + c
                if v:
                    slot[w] = v
                elif w in slot:
                    del slot[w]
    return TruncSeries(trunc, {g: NCPoly(t) for g, t in acc.items() if t})


def geometric_inverse(g: TruncSeries) -> TruncSeries:
    """Inverse of g = 1 - h as the truncated sum of powers of h."""
    trunc = g.trunc
    const = g.coeffs.get(trunc.zero_exponent)
    if const is None or const.coeff(EMPTY_WORD) != 1:
        raise NotInvertible("constant term must be exactly 1")
    h = one(trunc) - g
    out = one(trunc)
    power = one(trunc)
    for _ in range(trunc.W + trunc.N + 1):
        power = series_mul(power, h)
        if power.is_zero:
            break
        out = out + power
    return out


def coef(w: TruncSeries, alpha) -> NCPoly:
    """The polynomial stored at the u-exponent alpha (zero if absent)."""
    alpha = tuple(alpha)
    if len(alpha) != w.trunc.s or any(a < 0 for a in alpha):
        raise OutOfBox(f"bad exponent {alpha} for s={w.trunc.s}")
    if sum(alpha) > w.trunc.N:
        raise OutOfBox(f"exponent {alpha} exceeds u-degree cap {w.trunc.N}")
    return w.coeffs.get(alpha, NCPoly.zero())


def u_shift(w: TruncSeries, gamma) -> TruncSeries:
    """Multiply by the u-monomial gamma; terms pushed past N are dropped."""
    gamma = tuple(gamma)
    out = {}
    for alpha, p in w.coeffs.items():
        target = tuple(a + g for a, g in zip(alpha, gamma))
        if sum(target) <= w.trunc.N:
            out[target] = p
    return TruncSeries(w.trunc, out)


def restrict(w: TruncSeries, trunc: Truncation) -> TruncSeries:
    """Pass to a smaller box (same s, smaller or equal caps)."""
    if trunc.s != w.trunc.s or trunc.W > w.trunc.W or trunc.N > w.trunc.N:
        raise TruncationError(f"cannot restrict {w.trunc} to {trunc}")
    return TruncSeries(trunc, w.coeffs)


def set_u_zero(w: TruncSeries, j: int) -> TruncSeries:
    """Substitute u_j = 0 (keep the layers with zero u_j-exponent)."""
    if not 1 <= j <= w.trunc.s:
        raise ValueError(f"u-variable index {j} out of range")
    return TruncSeries(
        w.trunc, {a: p for a, p in w.coeffs.items() if a[j - 1] == 0}
    )


def divide_by_u(w: TruncSeries, j: int) -> TruncSeries:
    """Exact division by u_j; fails unless the u_j^0 layer vanishes.

    The result lives in the box with N lowered by one (the top layer of the
    quotient is not determined by the input box).
    """
    if not 1 <= j <= w.trunc.s:
        raise ValueError(f"u-variable index {j} out of range")
    if w.trunc.N < 1:
        raise TruncationError("box has no u-degrees to divide away")
    for alpha in w.coeffs:
        if alpha[j - 1] == 0:
            raise ValueError(f"series is not divisible by u{j}")
    lowered = Truncation(w.trunc.s, w.trunc.W, w.trunc.N - 1)
    out = {}
    for alpha, p in w.coeffs.items():
        target = tuple(a - (1 if i == j - 1 else 0) for i, a in enumerate(alpha))
        out[target] = p
    return TruncSeries(lowered, out)


def divide_by_u_difference(w: TruncSeries, j: int, k: int) -> TruncSeries:
    """Exact division by (u_j - u_k), verified by multiplying back.

    Result box has N lowered by one.
    """
    if j == k or not (1 <= j <= w.trunc.s) or not (1 <= k <= w.trunc.s):
        raise ValueError(f"bad variable pair ({j}, {k})")
    if w.trunc.N < 1:
        raise TruncationError("box has no u-degrees to divide away")
    trunc = w.trunc
    lowered = Truncation(trunc.s, trunc.W, trunc.N - 1)
    jj, kk = j - 1, k - 1
    out = {}
    for total in range(lowered.N + 1):
        for gamma in trunc.exponents_of_total(total):
            acc = None
            t = 0
            while True:
                probe = list(gamma)
                probe[jj] += t + 1
                probe[kk] -= t
                if probe[kk] < 0:
                    break
                p = w.coeffs.get(tuple(probe))
                if p is not None:
                    acc = p if acc is None else acc + p
                t += 1
            if acc is not None and not acc.is_zero:
                out[gamma] = acc
    quotient = TruncSeries(lowered, out)
    lifted = TruncSeries(trunc, quotient.coeffs)
    back = series_mul(lifted, u_var(trunc, j) - u_var(trunc, k))
    if back != w:
        raise ValueError(f"series is not divisible by (u{j} - u{k})")
    return quotient


def render_exponent(alpha) -> str:
    parts = []
    for i, a in enumerate(alpha):
        if a == 1:
            parts.append(f"u{i + 1}")
        elif a > 1:
            parts.append(f"u{i + 1}^{a}")
    return "*".join(parts)


def render_series(w: TruncSeries) -> str:
    """Flat rendering like ``xy*u1 + 3/2*x^2y*u1^2`` (grammar round-trips)."""
    if w.is_zero:
        return "0"
    pieces = []
    for alpha in sorted(w.coeffs, key=lambda a: (sum(a), a)):
        p = w.coeffs[alpha]
        umono = render_exponent(alpha)
        for word in sorted(p.terms, key=lambda t: t.sort_key()):
            c = p.terms[word]
            neg = c < 0
            a = -c if neg else c
            bits = []
            if word.n:
                bits.append(word.render(p.alphabet))
            if umono:
                bits.append(umono)
            if a != 1 or not bits:
                bits.insert(0, str(a))
            pieces.append(("-" if neg else "+", "*".join(bits)))
    sign, body = pieces[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
