import random

import pytest

from mzvalg.word_algebra import NCPoly, Word, X_POLY, Y_POLY, Z_POLY
from mzvalg.series_ring import (
    Truncation,
    divide_by_u,
    inject,
    one,
    set_u_zero,
    u_var,
)
from mzvalg.maps import apply_spec, tau
from mzvalg.dspace import (
    NotInDSpace,
    NotZPolynomial,
    appendix_identity,
    cor42_lhs_arg,
    corollary_identity,
    d_generator,
    is_z_poly_series,
    km_generator,
    li_lhs_arg,
    power_check,
    series_in_h0,
    verify_eq31,
)

from helpers import rand_series, rand_z_series


def P(text):
    return NCPoly.from_word(Word.from_string(text))


def test_d_generator_examples():
    t = Truncation(1, 4, 3)
    dg = d_generator(inject(X_POLY, t), one(t), (1,))
    expected = {
        (i,): NCPoly.from_word(Word(i + 2, 1)) for i in range(3)
    }  # x^(i+1) y at u^i
    assert dg.value.coeffs == expected
    assert dg.in_h0

    zg = d_generator(one(t), inject(Z_POLY, t), (1,))
    assert zg.value == inject(Z_POLY, t)

    ig = d_generator(inject(X_POLY, t), one(t), (0,))
    assert ig.value == inject(P("xy"), t)


def test_d_generator_rejects_bad_b():
    t = Truncation(1, 4, 3)
    with pytest.raises(NotZPolynomial):
        d_generator(one(t), inject(X_POLY, t), (1,))
    assert is_z_poly_series(inject(Z_POLY * Z_POLY, t))
    assert not is_z_poly_series(inject(P("xy"), t))


def test_km_generator_examples():
    t = Truncation(1, 4, 3)
    km = km_generator(X_POLY, (1,), t)
    expected = inject(Z_POLY, t)
    for i in range(1, 4):
        expected = expected - inject(NCPoly.from_word(Word(i + 1, 1)), t) * u_var(t, 1) ** i
    assert km == expected

    zkm = km_generator(Z_POLY**2, (1,), t)
    assert zkm == inject(Z_POLY**2, t) * 2

    assert km_generator(NCPoly.zero(), (1,), t).is_zero


def test_verify_eq31_examples():
    t = Truncation(1, 4, 3)
    good = d_generator(inject(X_POLY, t), one(t), (1,)).value
    rep = verify_eq31(good, (1,))
    assert rep.equal and rep.in_h0

    bad = verify_eq31(inject(X_POLY, t), (1,))
    assert not bad.equal
    m = bad.mismatch
    assert m.exponent == (0,) and m.word == Word.from_string("x")
    assert m.lhs_coeff == -1 and m.rhs_coeff == 0

    zrep = verify_eq31(inject(Z_POLY**3, t), (1,))
    assert zrep.equal


def test_verify_eq31_random_generators():
    rng = random.Random(61)
    for _ in range(30):
        s = rng.randint(1, 2)
        t = Truncation(s, 6, 4)
        spec = tuple(rng.randint(-2, 2) for _ in range(s))
        a = rand_series(rng, t, max_weight=2, max_u=2, terms=2)
        b = rand_z_series(rng, t, max_pow=2, max_u=1, terms=2)
        dg = d_generator(a, b, spec)
        assert verify_eq31(dg.value, spec).equal


def test_km_lands_in_kernel_and_h0_for_admissible():
    rng = random.Random(62)
    t = Truncation(2, 5, 4)
    for spec in ((1, 0), (1, -1), (2, 1)):
        for _ in range(5):
            from helpers import rand_poly

            v = rand_poly(rng, 3)
            km = km_generator(v, spec, t)
            assert verify_eq31(km, spec).equal
    assert series_in_h0(km_generator(P("xxy"), (1, -1), t))


def test_power_check():
    t = Truncation(1, 6, 4)
    km = km_generator(X_POLY, (1,), t)
    assert power_check(km, (1,), 2).equal
    assert power_check(km, (1,), 1).equal
    with pytest.raises(NotInDSpace):
        power_check(inject(X_POLY, t), (1,), 2)


def test_power_check_product_element():
    # (x 1/(1-xu1) 1/(1-yu2) y)^2 stays in the fixed space of D1 D2^-1
    from mzvalg.series_ring import geometric_inverse

    t = Truncation(2, 6, 4)
    xs, ys = inject(X_POLY, t), inject(Y_POLY, t)
    unit = one(t)
    core = (
        xs
        * geometric_inverse(unit - xs * u_var(t, 1))
        * geometric_inverse(unit - ys * u_var(t, 2))
        * ys
    )
    assert verify_eq31(core, (1, -1)).equal
    assert power_check(core, (1, -1), 2).equal


def test_corollary_identities_small_box():
    t = Truncation(3, 6, 4)
    for which in ("i", "ii"):
        for d in (1, 2):
            assert corollary_identity(which, d, t).equal
    for which in ("iii", "iv"):
        assert corollary_identity(which, 1, t).equal
    with pytest.raises(ValueError):
        corollary_identity("i", 1, Truncation(2, 6, 4))
    with pytest.raises(ValueError):
        corollary_identity("v", 1, t)


def test_kernel_image_antisymmetric_variant():
    # (D + tau)((D^-1 - tau)(v)) = 0
    rng = random.Random(63)
    t = Truncation(2, 5, 4)
    for spec in ((1, 0), (1, -1)):
        for _ in range(5):
            v = rand_series(rng, t)
            img = apply_spec(tuple(-e for e in spec), v) - tau(v)
            assert (apply_spec(spec, img) + tau(img)).is_zero


def test_appendix_kajikawa_small():
    t = Truncation(1, 6, 0)
    assert appendix_identity("kajikawa", t, r=1, d=1).equal
    assert appendix_identity("kajikawa", t, r=2, d=1).equal
    assert appendix_identity("kajikawa", t, r=2, d=2).equal
    assert appendix_identity("kajikawa", t, r=3, d=2).equal
    with pytest.raises(ValueError):
        appendix_identity("kajikawa", t, r=1, d=2)


def test_appendix_li_small():
    t = Truncation(3, 6, 4)
    rep = appendix_identity("li", t)
    assert rep.equal
    assert rep.box.N == t.N - 1


def test_li_lhs_times_u1_matches_cor42_iii():
    t = Truncation(3, 6, 4)
    lhs_iii = cor42_lhs_arg("iii", 1, t)
    lhs_li = li_lhs_arg(t)
    assert lhs_li * u_var(t, 1) == lhs_iii


def test_remark_dividing_iii_by_u1():
    t = Truncation(3, 6, 4)
    rep = corollary_identity("iii", 1, t)
    assert rep.equal
    lhs_div = divide_by_u(rep.lhs, 1)
    rhs_div = divide_by_u(rep.rhs, 1)
    assert lhs_div == rhs_div
    assert set_u_zero(lhs_div, 1) == set_u_zero(rhs_div, 1)
    assert not set_u_zero(lhs_div, 1).is_zero
    assert set_u_zero(lhs_div, 2) == set_u_zero(rhs_div, 2)
    assert not set_u_zero(lhs_div, 2).is_zero


def test_report_json_shape():
    t = Truncation(1, 3, 2)
    rep = verify_eq31(inject(X_POLY, t), (1,))
    payload = rep.to_json_dict()
    assert payload["identity"] == "eq31"
    assert payload["box"] == {"s": 1, "W": 3, "N": 2}
    assert payload["equal"] is False
    assert payload["mismatch"]["word"] == "x"
