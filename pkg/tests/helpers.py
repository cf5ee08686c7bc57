"""Shared random-value builders for the test suite (seeded, deterministic)."""

import random

from mzvalg.word_algebra import NCPoly, Word, Z_POLY
from mzvalg.series_ring import TruncSeries


def rand_word(rng: random.Random, max_weight: int) -> Word:
    n = rng.randint(0, max_weight)
    return Word(n, rng.randrange(1 << n) if n else 0)


def rand_poly(rng: random.Random, max_weight: int, terms: int = 3) -> NCPoly:
    out = NCPoly.zero()
    for _ in range(terms):
        out = out + NCPoly.from_word(rand_word(rng, max_weight), rng.choice([-2, -1, 1, 2]))
    return out


def rand_exponent(rng: random.Random, s: int, max_total: int) -> tuple:
    alpha = [0] * s
    for _ in range(rng.randint(0, max_total)):
        alpha[rng.randrange(s)] += 1
    return tuple(alpha)


def rand_series(rng: random.Random, trunc, max_weight: int = 3, max_u: int = 2, terms: int = 3) -> TruncSeries:
    coeffs = {}
    for _ in range(terms):
        alpha = rand_exponent(rng, trunc.s, max_u)
        p = coeffs.get(alpha, NCPoly.zero()) + NCPoly.from_word(
            rand_word(rng, max_weight), rng.choice([-2, -1, 1, 2])
        )
        coeffs[alpha] = p
    return TruncSeries(trunc, coeffs)


def rand_z_series(rng: random.Random, trunc, max_pow: int = 3, max_u: int = 2, terms: int = 2) -> TruncSeries:
    coeffs = {}
    for _ in range(terms):
        alpha = rand_exponent(rng, trunc.s, max_u)
        p = coeffs.get(alpha, NCPoly.zero()) + (Z_POLY ** rng.randint(0, max_pow)).scaled(
            rng.choice([-2, -1, 1, 2])
        )
        coeffs[alpha] = p
    return TruncSeries(trunc, coeffs)
