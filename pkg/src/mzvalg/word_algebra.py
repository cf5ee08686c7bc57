"""Exact arithmetic in the free algebra Q<x,y> and its admissible subalgebra.

Words over {x,y} double as words over {x,z} (z = x+y) through an alphabet
tag carried on polynomials, and composition indices (k1,...,kr) translate
into admissible words and back.  Everything here is an immutable value;
coefficients are exact rationals (plain ints where possible).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ALPHABET_XY = "xy"
ALPHABET_XZ = "xz"

_LETTER_CHARS = {ALPHABET_XY: ("x", "y"), ALPHABET_XZ: ("x", "z")}


class AlphabetError(ValueError):
    """Operands carry incompatible alphabet tags."""


class NotAnIndexWord(ValueError):
    """The word does not encode an index (it must be nonempty and end in y)."""


class ZeroPolynomial(ValueError):
    """The operation needs a nonzero polynomial."""


class Word:
    """Immutable word over a two-letter alphabet.

    Letters are packed into ``bits`` with the first letter in the most
    significant position, so for words of equal length the integer order of
    ``bits`` is the letter-by-letter order with x < y (resp. x < z).
    """

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int):
        if n < 0 or bits >> n:
            raise ValueError(f"invalid word data n={n} bits={bits}")
        self.n = n
        self.bits = bits

    @classmethod
    def from_string(cls, text: str) -> "Word":
        """Build a word from juxtaposed letters; 'y' and 'z' both mean bit 1."""
        bits = 0
        for ch in text:
            if ch == "x":
                bits = bits << 1
            elif ch in ("y", "z"):
                bits = (bits << 1) | 1
            else:
                raise ValueError(f"unexpected letter {ch!r}")
        return cls(len(text), bits)

    def letter(self, i: int) -> int:
        return (self.bits >> (self.n - 1 - i)) & 1

    def letters(self) -> tuple[int, ...]:
        return tuple(self.letter(i) for i in range(self.n))

    def concat(self, other: "Word") -> "Word":
        return Word(self.n + other.n, (self.bits << other.n) | other.bits)

    def reversed_swapped(self) -> "Word":
        """Reverse the letters and flip every bit (the duality action)."""
        bits = 0
        b = self.bits
        for _ in range(self.n):
            bits = (bits << 1) | (1 - (b & 1))
            b >>= 1
        return Word(self.n, bits)

    @property
    def is_admissible(self) -> bool:
        """True for the empty word and for words starting with x, ending in y."""
        if self.n == 0:
            return True
        return (self.bits >> (self.n - 1)) & 1 == 0 and self.bits & 1 == 1

    @property
    def is_all_z(self) -> bool:
        """In the xz reading: does the word use only the letter z?"""
        return self.bits == (1 << self.n) - 1

    def sort_key(self):
        return (self.n, self.bits)

    def lex_key(self):
        """Key for the letter order with 1 < x < z and prefixes first."""
        return self.letters()

    def render(self, alphabet: str = ALPHABET_XY) -> str:
        if self.n == 0:
            return "1"
        lo, hi = _LETTER_CHARS[alphabet]
        out = []
        i = 0
        while i < self.n:
            j = i
            while j < self.n and self.letter(j) == self.letter(i):
                j += 1
            ch = hi if self.letter(i) else lo
            run = j - i
            out.append(ch if run == 1 else f"{ch}^{run}")
            i = j
        return "".join(out)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Word) and self.n == other.n and self.bits == other.bits

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self):
        return f"Word({self.render()})"


EMPTY_WORD = Word(0, 0)
WORD_X = Word(1, 0)
WORD_Y = Word(1, 1)


def words_of_weight(n: int):
    """All 2^n words of length n in lexicographic order (x < y)."""
    return (Word(n, b) for b in range(1 << n))


@dataclass(frozen=True)
class Index:
    """A composition (k1,...,kr); admissible iff k1 >= 2."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("empty index")
        if any(not isinstance(k, int) or k < 1 for k in self.parts):
            raise ValueError(f"index parts must be positive integers: {self.parts}")

    @classmethod
    def of(cls, obj) -> "Index":
        if isinstance(obj, Index):
            return obj
        return cls(tuple(obj))

    @classmethod
    def parse(cls, text: str) -> "Index":
        body = text.strip().lstrip("(").rstrip(")")
        parts = tuple(int(p) for p in body.split(",") if p.strip())
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def height(self) -> int:
        return sum(1 for k in self.parts if k >= 2)

    @property
    def is_admissible(self) -> bool:
        return self.parts[0] >= 2

    def __str__(self):
        return "(" + ",".join(str(k) for k in self.parts) + ")"


class NCPoly:
    """Finite Q-linear combination of words; the product is concatenation
    extended bilinearly.  Zero coefficients are never stored."""

    __slots__ = ("terms", "alphabet")

    def __init__(self, terms=None, alphabet: str = ALPHABET_XY):
        if alphabet not in _LETTER_CHARS:
            raise AlphabetError(f"unknown alphabet {alphabet!r}")
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[w] = c
        self.terms = clean
        self.alphabet = alphabet

    @classmethod
    def zero(cls, alphabet: str = ALPHABET_XY) -> "NCPoly":
        return cls(None, alphabet)

    @classmethod
    def one(cls, alphabet: str = ALPHABET_XY) -> "NCPoly":
        return cls({EMPTY_WORD: 1}, alphabet)

    @classmethod
    def from_word(cls, word: Word, coeff=1, alphabet: str = ALPHABET_XY) -> "NCPoly":
        return cls({word: coeff}, alphabet)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word: Word):
        return self.terms.get(word, 0)

    def homogeneous_weight(self):
        """The common word length, or None if mixed (zero counts as any weight)."""
        weights = {w.n for w in self.terms}
        if len(weights) > 1:
            return None
        return weights.pop() if weights else 0

    def max_weight(self) -> int:
        return max((w.n for w in self.terms), default=0)

    def scaled(self, c) -> "NCPoly":
        if not c:
            return NCPoly.zero(self.alphabet)
        return NCPoly({w: c * v for w, v in self.terms.items()}, self.alphabet)

    def mul_capped(self, other: "NCPoly", max_weight=None) -> "NCPoly":
        if self.alphabet != other.alphabet:
            raise AlphabetError(f"alphabet mismatch {self.alphabet} vs {other.alphabet}")
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if max_weight is not None and w1.n + w2.n > max_weight:
                    continue
                w = w1.concat(w2)
                v = out.get(w, 0) + c1 * c2
                if v:
                    out[w] = v
                elif w in out:
                    del out[w]
        return NCPoly(out, self.alphabet)

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        if self.alphabet != other.alphabet:
            raise AlphabetError(f"alphabet mismatch {self.alphabet} vs {other.alphabet}")
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            elif w in out:
                del out[w]
        return NCPoly(out, self.alphabet)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()}, self.alphabet)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return self.mul_capped(other)
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, d: int):
        if not isinstance(d, int) or d < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = NCPoly.one(self.alphabet)
        for _ in range(d):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, NCPoly)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"NCPoly({render_poly(self)})"

    def __str__(self):
        return render_poly(self)


X_POLY = NCPoly.from_word(WORD_X)
Y_POLY = NCPoly.from_word(WORD_Y)
Z_POLY = X_POLY + Y_POLY
ONE_POLY = NCPoly.one()


def word_from_index(idx) -> Word:
    """Encode (k1,...,kr) as the word x^(k1-1) y ... x^(kr-1) y."""
    idx = Index.of(idx)
    bits = 0
    n = 0
    for k in idx.parts:
        bits = (bits << k) | 1
        n += k
    return Word(n, bits)


def index_from_word(w: Word) -> Index:
    """Inverse encoding; the word must be nonempty and end in y."""
    if w.n == 0 or not (w.bits & 1):
        raise NotAnIndexWord(f"{w!r} does not end in y")
    parts = []
    run = 0
    for i in range(w.n):
        if w.letter(i):
            parts.append(run + 1)
            run = 0
        else:
            run += 1
    return Index(tuple(parts))


def poly_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    """Free-algebra product (bilinear concatenation)."""
    return p.mul_capped(q)


def is_admissible(p: NCPoly) -> bool:
    """Membership in Q + x<H>y: every supported word empty or x...y."""
    if p.alphabet != ALPHABET_XY:
        raise AlphabetError("admissibility is defined on the xy alphabet")
    return all(w.is_admissible for w in p.terms)


def to_xz_basis(p: NCPoly) -> NCPoly:
    """Substitute y = z - x and expand; exact inverse of to_xy_basis."""
    if p.alphabet != ALPHABET_XY:
        raise AlphabetError("to_xz_basis expects an xy-tagged polynomial")
    out = {}
    for w, c in p.terms.items():
        partial = {0: c}
        for i in range(w.n):
            nxt = {}
            if w.letter(i) == 0:
                for b, cc in partial.items():
                    nxt[b << 1] = cc
            else:
                for b, cc in partial.items():
                    hi = (b << 1) | 1
                    lo = b << 1
                    nxt[hi] = nxt.get(hi, 0) + cc
                    v = nxt.get(lo, 0) - cc
                    if v:
                        nxt[lo] = v
                    elif lo in nxt:
                        del nxt[lo]
            partial = nxt
        for b, cc in partial.items():
            word = Word(w.n, b)
            v = out.get(word, 0) + cc
            if v:
                out[word] = v
            elif word in out:
                del out[word]
    return NCPoly(out, ALPHABET_XZ)


def to_xy_basis(p: NCPoly) -> NCPoly:
    """Substitute z = x + y and expand."""
    if p.alphabet != ALPHABET_XZ:
        raise AlphabetError("to_xy_basis expects an xz-tagged polynomial")
    out = {}
    for w, c in p.terms.items():
        partial = {0: c}
        for i in range(w.n):
            nxt = {}
            if w.letter(i) == 0:
                for b, cc in partial.items():
                    nxt[b << 1] = cc
            else:
                for b, cc in partial.items():
                    nxt[(b << 1) | 1] = nxt.get((b << 1) | 1, 0) + cc
                    nxt[b << 1] = nxt.get(b << 1, 0) + cc
            partial = nxt
        for b, cc in partial.items():
            word = Word(w.n, b)
            v = out.get(word, 0) + cc
            if v:
                out[word] = v
            elif word in out:
                del out[word]
    return NCPoly(out, ALPHABET_XY)


def leading_word(p: NCPoly) -> Word:
    """Largest supported word in the order 1 < x < z (prefixes come first)."""
    if p.alphabet != ALPHABET_XZ:
        raise AlphabetError("leading_word is defined on the xz alphabet")
    if p.is_zero:
        raise ZeroPolynomial("zero polynomial has no leading word")
    return max(p.terms, key=Word.lex_key)


def render_poly(p: NCPoly) -> str:
    """Render as e.g. ``3/2*x^2y - xy^2``; terms sorted by length then letters."""
    if p.is_zero:
        return "0"
    pieces = []
    for w in sorted(p.terms, key=Word.sort_key):
        c = p.terms[w]
        neg = c < 0
        a = -c if neg else c
        if w.n == 0:
            body = str(a)
        elif a == 1:
            body = w.render(p.alphabet)
        else:
            body = f"{a}*{w.render(p.alphabet)}"
        pieces.append(("-" if neg else "+", body))
    sign, body = pieces[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
