import random
from fractions import Fraction

import pytest

from mzvalg.word_algebra import NCPoly, Word, X_POLY, Y_POLY, Z_POLY, is_admissible, words_of_weight
from mzvalg.series_ring import Truncation, coef, inject, one, series_mul, u_var
from mzvalg.maps import (
    MapSpec,
    apply_spec,
    delta_exp_oracle,
    delta_single,
    partial,
    tau,
    theta,
)
from mzvalg.relspace import derivation_space, echelon_basis

from helpers import rand_poly, rand_series, rand_word


def w(text):
    return Word.from_string(text)


def P(text):
    return NCPoly.from_word(w(text))


def test_tau_examples():
    assert tau(P("xxy")) == P("xyy")
    assert tau(P("xy")) == P("xy")
    t = Truncation(1, 3, 2)
    assert tau(inject(X_POLY, t) * u_var(t, 1)) == inject(Y_POLY, t) * u_var(t, 1)


def test_tau_involution_and_antihom():
    rng = random.Random(41)
    for _ in range(20):
        p = rand_poly(rng, 5)
        q = rand_poly(rng, 5)
        assert tau(tau(p)) == p
        assert tau(p * q) == tau(q) * tau(p)


def test_partial_examples():
    assert partial(1, P("xy")) == P("xyy") - P("xxy")
    assert partial(3, Z_POLY).is_zero
    assert partial(2, P("xy")) == P("xyyy") - P("xxxy")
    with pytest.raises(ValueError):
        partial(0, X_POLY)


def test_partial_weight_raise_and_h0():
    rng = random.Random(42)
    for n in (1, 2, 3):
        for _ in range(10):
            word = rand_word(rng, 4)
            img = partial(n, NCPoly.from_word(word))
            for iw in img.terms:
                assert iw.n == word.n + n
    # preserves admissibility
    for weight in range(2, 5):
        for v in words_of_weight(weight):
            if v.is_admissible:
                assert is_admissible(partial(2, NCPoly.from_word(v)))


def test_partial_commute():
    rng = random.Random(43)
    for _ in range(10):
        p = rand_poly(rng, 4)
        for n in (1, 2, 3):
            for m in (1, 2, 3):
                assert partial(n, partial(m, p)) == partial(m, partial(n, p))


def test_theta_examples():
    assert theta(1, P("xy")) == partial(1, P("xy"))
    assert theta(2, X_POLY) == P("xyy")
    assert theta(3, NCPoly.one()).is_zero
    half = Fraction(1, 2)
    assert theta(2, P("xy")) == (partial(2, P("xy"))) * half + partial(1, partial(1, P("xy"))) * half


def test_theta_matches_delta_coefficient():
    t = Truncation(1, 6, 4)
    for p in (X_POLY, Y_POLY, P("xy")):
        img = delta_single(1, 1, inject(p, t))
        for i in (1, 2, 3):
            assert coef(img, (i,)) == theta(i, p)


def test_delta_closed_form_examples():
    t = Truncation(1, 3, 2)
    assert delta_single(1, 1, inject(X_POLY, t)) == inject(X_POLY, t) + inject(
        P("xy"), t
    ) * u_var(t, 1) + inject(P("xyy"), t) * u_var(t, 1) ** 2
    assert delta_single(1, -1, inject(Y_POLY, t)) == inject(Y_POLY, t) + inject(
        P("xy"), t
    ) * u_var(t, 1) + inject(P("xxy"), t) * u_var(t, 1) ** 2
    zsum = inject(Z_POLY, t)
    assert delta_single(1, 1, zsum) == zsum


def test_delta_is_ring_hom():
    rng = random.Random(44)
    t = Truncation(1, 5, 3)
    for _ in range(8):
        a = rand_series(rng, t)
        b = rand_series(rng, t)
        for sign in (1, -1):
            assert delta_single(1, sign, series_mul(a, b)) == series_mul(
                delta_single(1, sign, a), delta_single(1, sign, b)
            )


def test_delta_exp_oracle_agrees():
    rng = random.Random(45)
    t = Truncation(1, 6, 5)
    for p in (X_POLY, Y_POLY):
        for sign in (1, -1):
            assert delta_single(1, sign, inject(p, t)) == delta_exp_oracle(
                1, sign, inject(p, t)
            )
    for _ in range(10):
        s = inject(NCPoly.from_word(rand_word(rng, 5)), t)
        for sign in (1, -1):
            assert delta_single(1, sign, s) == delta_exp_oracle(1, sign, s)


def test_delta_exp_oracle_trivial_box():
    t = Truncation(1, 4, 0)
    s = inject(P("xy"), t)
    assert delta_exp_oracle(1, 1, s) == s


def test_delta_inverse_pair():
    rng = random.Random(46)
    t = Truncation(1, 5, 4)
    for _ in range(8):
        s = rand_series(rng, t)
        assert delta_single(1, -1, delta_single(1, 1, s)) == s


def test_delta_commute_two_variables():
    rng = random.Random(47)
    t = Truncation(2, 6, 4)
    for _ in range(6):
        s = rand_series(rng, t)
        assert delta_single(1, 1, delta_single(2, 1, s)) == delta_single(
            2, 1, delta_single(1, 1, s)
        )


def test_duality_conjugation_lemma():
    rng = random.Random(48)
    t = Truncation(2, 6, 4)
    for _ in range(6):
        s = rand_series(rng, t)
        for j in (1, 2):
            assert tau(delta_single(j, -1, tau(s))) == delta_single(j, 1, s)


def test_apply_spec_examples():
    rng = random.Random(49)
    t = Truncation(2, 5, 3)
    s = rand_series(rng, t)
    assert apply_spec((0, 0), s) == s
    assert apply_spec(MapSpec((1, 0)).inverse(), apply_spec((1, 0), s)) == s
    with pytest.raises(ValueError):
        apply_spec((1,), s)


def test_apply_spec_swap_identity():
    # D1 D2^-1 maps x/(1-xu1) y/(1-yu2) to x/(1-xu2) y/(1-yu1)
    from mzvalg.series_ring import geometric_inverse

    t = Truncation(2, 6, 4)
    xs, ys = inject(X_POLY, t), inject(Y_POLY, t)
    u1, u2 = u_var(t, 1), u_var(t, 2)
    unit = one(t)
    lhs = apply_spec(
        (1, -1),
        xs * geometric_inverse(unit - xs * u1) * ys * geometric_inverse(unit - ys * u2),
    )
    rhs = xs * geometric_inverse(unit - xs * u2) * ys * geometric_inverse(unit - ys * u1)
    assert lhs == rhs


def test_truncation_soundness_of_maps():
    from mzvalg.series_ring import restrict

    rng = random.Random(50)
    big = Truncation(2, 7, 5)
    small = Truncation(2, 5, 3)
    for _ in range(6):
        s = rand_series(rng, big)
        small_s = restrict(s, small)
        assert restrict(tau(s), small) == tau(small_s)
        assert restrict(partial(2, s), small) == partial(2, small_s)
        assert restrict(apply_spec((1, -1), s), small) == apply_spec((1, -1), small_s)


def test_theta_span_matches_derivation_span():
    for weight in range(2, 9):
        gens = []
        for i in range(1, weight):
            m = weight - i
            if m == 0:
                continue
            for v in words_of_weight(m):
                if not v.is_admissible:
                    continue
                gens.append(theta(i, NCPoly.from_word(v)))
        assert echelon_basis(gens, weight) == derivation_space(weight, True)
