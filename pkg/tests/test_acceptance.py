"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Criterion 8 is expected red at weights 5-7: the plain partial sums the
package computes have truncation error above the stated 1e-3 tolerance at
cutoff 1e5 for deep indices (see notes in the repository root README).
"""

import random
import time

from mzvalg.word_algebra import (
    NCPoly,
    Word,
    X_POLY,
    Y_POLY,
    leading_word,
    to_xy_basis,
    to_xz_basis,
    words_of_weight,
)
from mzvalg.series_ring import Truncation, inject, u_var
from mzvalg.maps import delta_exp_oracle, delta_single, partial, tau
from mzvalg.dspace import (
    appendix_identity,
    cor42_lhs_arg,
    corollary_identity,
    d_generator,
    li_lhs_arg,
    verify_eq31,
)
from mzvalg.relspace import (
    derivation_space,
    dims_table,
    dspace_coef_span,
    duality_space,
    echelon_basis,
    graded_kernel,
    intersect,
    membership_cor44,
    pairwise_triviality,
    z_power,
)
from mzvalg.zeta_numeric import relation_residual, zeta_eval

from helpers import rand_series, rand_z_series


def _report(num, ok, detail, elapsed):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num} {status}: {detail} ({elapsed:.1f}s)")


def test_criterion_01_random_generator_suite():
    start = time.monotonic()
    rng = random.Random(20240915)
    failures = 0
    for _ in range(200):
        s = rng.randint(1, 3)
        trunc = Truncation(s, 8, 5)
        spec = tuple(rng.randint(-2, 2) for _ in range(s))
        a = rand_series(rng, trunc, max_weight=3, max_u=2, terms=rng.randint(1, 3))
        b = rand_z_series(rng, trunc, max_pow=3, max_u=2, terms=rng.randint(1, 2))
        gen = d_generator(a, b, spec)
        if not verify_eq31(gen.value, spec).equal:
            failures += 1
    elapsed = time.monotonic() - start
    ok = failures == 0 and elapsed <= 60
    _report(1, ok, f"200 random generators, {failures} fixed-point failures", elapsed)
    assert failures == 0
    assert elapsed <= 60


def test_criterion_02_explicit_identities():
    start = time.monotonic()
    trunc = Truncation(3, 8, 6)
    results = {}
    for which in ("i", "ii"):
        for d in (1, 2):
            results[f"{which}:d{d}"] = corollary_identity(which, d, trunc).equal
    for which in ("iii", "iv"):
        results[which] = corollary_identity(which, 1, trunc).equal
    elapsed = time.monotonic() - start
    ok = all(results.values()) and elapsed <= 120
    _report(2, ok, f"explicit identities {results}", elapsed)
    assert all(results.values()), results
    assert elapsed <= 120


def test_criterion_03_coefficient_span_equals_intersection():
    start = time.monotonic()
    bad = []
    for spec in ((1,), (2,), (1, -1)):
        for w in range(1, 9):
            trunc = Truncation(len(spec), w, w)
            for restricted in (False, True):
                span = dspace_coef_span(w, spec, restricted, trunc)
                inter = intersect(
                    duality_space(w, restricted), derivation_space(w, restricted)
                )
                if span != inter:
                    bad.append((spec, w, restricted))
    dim3 = intersect(duality_space(3, True), derivation_space(3, True)).dim
    dim4 = intersect(duality_space(4, True), derivation_space(4, True)).dim
    elapsed = time.monotonic() - start
    ok = not bad and dim3 == 1 and dim4 == 1 and elapsed <= 600
    _report(3, ok, f"span==intersection w<=8, dims(3,4)=({dim3},{dim4})", elapsed)
    assert not bad, bad
    assert (dim3, dim4) == (1, 1)
    assert elapsed <= 600


def test_criterion_04_graded_kernels():
    start = time.monotonic()
    for n in (1, 2, 3):
        for w in range(0, 9):
            basis = graded_kernel(("partial", n), w, Truncation(1, w + n, 0))
            assert basis == echelon_basis([z_power(w)], w), (n, w)
    for w in range(0, 7):
        basis = graded_kernel(("delta_minus_id", (1,)), w, Truncation(1, w + 2, 2))
        assert basis.dim == 1, w
        assert basis == echelon_basis([z_power(w)], w), w
    for w in range(0, 7):
        assert pairwise_triviality((1,), (-1,), w, Truncation(1, w + 2, 2)).equal, w
        assert pairwise_triviality(
            (1, 0), (0, 1), w, Truncation(2, w + 2, 2)
        ).equal, w
    elapsed = time.monotonic() - start
    _report(4, True, "derivation/automorphism kernels all z^w", elapsed)


def test_criterion_05_leading_word_lemma():
    start = time.monotonic()
    for n in (1, 2, 3):
        xz_n = Word(n, (1 << n) - 1)
        for weight in range(0, 7):
            for word in words_of_weight(weight):
                xw = Word(1, 0).concat(word)
                img = to_xz_basis(partial(n, to_xy_basis(NCPoly.from_word(xw, alphabet="xz"))))
                assert leading_word(img) == Word(1, 0).concat(xz_n).concat(word)
    # strict order preservation on non-z words of weight <= 5
    pool = [
        word
        for weight in range(0, 6)
        for word in words_of_weight(weight)
        if not word.is_all_z
    ]
    pool.sort(key=Word.lex_key)
    for n in (1, 2, 3):
        lws = [
            leading_word(
                to_xz_basis(partial(n, to_xy_basis(NCPoly.from_word(w, alphabet="xz"))))
            ).lex_key()
            for w in pool
        ]
        assert all(a < b for a, b in zip(lws, lws[1:]))
    elapsed = time.monotonic() - start
    _report(5, True, "leading words x z^n w and strictly order preserving", elapsed)


def test_criterion_06_membership_families():
    start = time.monotonic()
    checked = 0
    for m in range(1, 6):
        for n in range(1, 6):
            if m + n > 6:
                continue
            assert membership_cor44("i", d=1, m=m, n=n).equal, (m, n)
            checked += 1
    for k in range(3, 9):
        for r in range(1, k):
            for m in range(1, k - r):
                assert membership_cor44("ii", k=k, r=r, m=m).equal, (k, r, m)
                checked += 1
    elapsed = time.monotonic() - start
    ok = elapsed <= 300
    _report(6, ok, f"{checked} duality elements in the derivation span", elapsed)
    assert elapsed <= 300


def test_criterion_07_map_algebra_oracles():
    start = time.monotonic()
    rng = random.Random(777)
    trunc = Truncation(1, 6, 5)
    for p in (X_POLY, Y_POLY):
        for sign in (1, -1):
            assert delta_single(1, sign, inject(p, trunc)) == delta_exp_oracle(
                1, sign, inject(p, trunc)
            )
    for _ in range(50):
        n = rng.randint(0, 6)
        word = Word(n, rng.randrange(1 << n) if n else 0)
        ws = inject(NCPoly.from_word(word), trunc)
        sign = rng.choice((1, -1))
        assert delta_single(1, sign, ws) == delta_exp_oracle(1, sign, ws)
    t2 = Truncation(2, 6, 4)
    for _ in range(12):
        s = rand_series(rng, t2)
        for j in (1, 2):
            assert tau(delta_single(j, -1, tau(s))) == delta_single(j, 1, s)
        assert delta_single(1, 1, delta_single(2, 1, s)) == delta_single(
            2, 1, delta_single(1, 1, s)
        )
    elapsed = time.monotonic() - start
    _report(7, True, "closed forms match exponential route; conjugation; commutation", elapsed)


def test_criterion_08_numeric_falsification():
    start = time.monotonic()
    cutoff = 100000
    z3 = zeta_eval((3,), cutoff)
    z21 = zeta_eval((2, 1), cutoff)
    assert abs(z3.value - z21.value) <= z3.tail_bound + z21.tail_bound
    z4 = zeta_eval((4,), cutoff)
    z211 = zeta_eval((2, 1, 1), cutoff)
    assert abs(z4.value - z211.value) <= z4.tail_bound + z211.tail_bound

    worst = {}
    for w in range(3, 8):
        basis = intersect(duality_space(w, True), derivation_space(w, True))
        reports = [relation_residual(p, cutoff) for p in basis.basis_polys()]
        for rep in reports:
            assert rep.residual <= rep.tail_bound
        worst[w] = max(float(rep.residual) for rep in reports)
    elapsed = time.monotonic() - start
    ok = all(v <= 1e-3 for v in worst.values()) and elapsed <= 120
    detail = ", ".join(f"w{w}:{v:.2e}" for w, v in worst.items())
    _report(8, ok, f"worst |Z-residual| {detail}", elapsed)
    assert elapsed <= 120
    assert worst[3] <= 1e-3 and worst[4] <= 1e-3
    # Unattainable as specified: the exact partial sums of depth-(w-1)
    # indices at cutoff 1e5 carry truncation error above 1e-3 for w >= 5,
    # so this assertion documents the criterion verbatim and stays red.
    assert all(v <= 1e-3 for v in worst.values()), detail


def test_criterion_09_appendix_equivalences():
    start = time.monotonic()
    for d in (1, 2):
        for r in range(d, 6):
            trunc = Truncation(1, 8, 0)
            assert appendix_identity("kajikawa", trunc, r=r, d=d).equal, (r, d)
    li_box = Truncation(3, 8, 6)
    assert appendix_identity("li", li_box).equal
    assert li_lhs_arg(li_box) * u_var(li_box, 1) == cor42_lhs_arg("iii", 1, li_box)
    elapsed = time.monotonic() - start
    _report(9, True, "kajikawa r<=5 d<=2 and li verified at W=8", elapsed)


def test_criterion_10_strict_inclusion_report():
    start = time.monotonic()
    rows, smallest = dims_table(10, restrict_h0=True)
    for row in rows:
        print(
            f"  weight {row['weight']}: duality {row['dim_duality']} "
            f"intersection {row['dim_intersection']}"
        )
    assert all(r["dim_intersection"] <= r["dim_duality"] for r in rows)
    assert smallest is not None, "expected a weight where the inclusion is strict"
    before = [r for r in rows if r["weight"] < smallest]
    assert all(r["dim_intersection"] == r["dim_duality"] for r in before)
    elapsed = time.monotonic() - start
    _report(10, True, f"smallest weight with strict inclusion: {smallest}", elapsed)
