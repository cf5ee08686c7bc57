"""Exact linear algebra on the weight-graded slices of the word algebra.

Builds the duality and derivation relation spaces, their intersection, the
coefficient span harvested from the duality-fixed series space, graded
kernels of the derivation/automorphism maps, and the dimension tables that
compare all of these per weight.
"""

from __future__ import annotations

from functools import lru_cache

from .word_algebra import (
    NCPoly,
    Word,
    X_POLY,
    Y_POLY,
    Z_POLY,
    render_poly,
    words_of_weight,
)
from .series_ring import (
    TruncSeries,
    Truncation,
    inject,
    iter_compositions,
    one,
    series_mul,
)
from .maps import MapSpec, apply_spec, partial, tau
from .linalg import Eliminator, reduce_mod_rref
from .dspace import VerificationReport


class GradeError(ValueError):
    """Inputs of mixed or mismatched weight."""


class ZeroSpecError(ValueError):
    """The all-zero exponent vector names the identity, which is excluded."""


def poly_to_vec(p: NCPoly, w: int) -> dict:
    """Dense column ids are the packed word bits (lexicographic order)."""
    vec = {}
    for word, c in p.terms.items():
        if word.n != w:
            raise GradeError(f"word of weight {word.n} in a weight-{w} slice")
        vec[word.bits] = c
    return vec


def vec_to_poly(vec: dict, w: int) -> NCPoly:
    return NCPoly({Word(w, bits): c for bits, c in vec.items()})


class SubspaceBasis:
    """Reduced-row-echelon basis of a subspace of the weight-w slice."""

    __slots__ = ("weight", "pivots", "rows")

    def __init__(self, weight: int, rref: list[tuple[int, dict]]):
        self.weight = weight
        self.pivots = [pc for pc, _ in rref]
        self.rows = [row for _, row in rref]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient_dim(self) -> int:
        return 1 << self.weight

    def contains_vec(self, vec: dict) -> bool:
        return not reduce_mod_rref(vec, list(zip(self.pivots, self.rows)))

    def contains_poly(self, p: NCPoly) -> bool:
        if p.is_zero:
            return True
        return self.contains_vec(poly_to_vec(p, self.weight))

    def basis_polys(self) -> list[NCPoly]:
        return [vec_to_poly(row, self.weight) for row in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceBasis)
            and self.weight == other.weight
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __le__(self, other):
        """Containment of subspaces."""
        if not isinstance(other, SubspaceBasis) or self.weight != other.weight:
            raise GradeError("cannot compare subspaces of different weights")
        return all(other.contains_vec(row) for row in self.rows)

    def __repr__(self):
        return f"SubspaceBasis(weight={self.weight}, dim={self.dim})"

    def to_json_dict(self) -> dict:
        return {
            "weight": self.weight,
            "dim": self.dim,
            "basis": [render_poly(p) for p in self.basis_polys()],
        }


def _basis_from_eliminator(elim: Eliminator, w: int) -> SubspaceBasis:
    return SubspaceBasis(w, elim.rref())


def echelon_basis(gens, w: int) -> SubspaceBasis:
    """Reduced echelon basis of the span of weight-w polynomials."""
    elim = Eliminator()
    for p in gens:
        if p.is_zero:
            continue
        elim.add(poly_to_vec(p, w))
    return _basis_from_eliminator(elim, w)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Exact subspace intersection (block-doubling construction)."""
    if a.weight != b.weight:
        raise GradeError("cannot intersect subspaces of different weights")
    w = a.weight
    d = 1 << w
    elim = Eliminator()
    for row in a.rows:
        doubled = dict(row)
        for col, v in row.items():
            doubled[d + col] = v
        elim.add(doubled)
    for row in b.rows:
        elim.add(dict(row))
    inner = Eliminator()
    for row in elim.rows_with_pivot_ge(d):
        inner.add({col - d: v for col, v in row.items()})
    return _basis_from_eliminator(inner, w)


@lru_cache(maxsize=128)
def duality_space(w: int, restrict_h0: bool) -> SubspaceBasis:
    """Span of (tau - id)(v) over the weight-w words (admissible if restricted)."""
    if w < 0:
        raise ValueError("weight must be nonnegative")
    gens = []
    for v in words_of_weight(w):
        if restrict_h0 and not v.is_admissible:
            continue
        p = NCPoly.from_word(v)
        gens.append(tau(p) - p)
    return echelon_basis(gens, w)


@lru_cache(maxsize=128)
def derivation_space(w: int, restrict_h0: bool) -> SubspaceBasis:
    """Span of the order-n derivation images landing in weight w."""
    if w < 1:
        raise ValueError("weight must be positive")
    gens = []
    for n in range(1, w):
        m = w - n
        for v in words_of_weight(m):
            if restrict_h0 and not v.is_admissible:
                continue
            if m == 0:
                continue
            gens.append(partial(n, NCPoly.from_word(v)))
    return echelon_basis(gens, w)


def _km_table(spec: MapSpec, trunc: Truncation, max_weight: int) -> dict[Word, TruncSeries]:
    """(D^-1 + tau)(v) for every word of weight <= max_weight, via the
    composite generator images (one series product per new word)."""
    inv = spec.inverse()
    gx = apply_spec(inv, inject(X_POLY, trunc))
    gy = apply_spec(inv, inject(Y_POLY, trunc))
    images = {Word(0, 0): one(trunc)}
    km = {}
    for m in range(0, max_weight + 1):
        for v in words_of_weight(m):
            if m:
                prefix = Word(m - 1, v.bits >> 1)
                images[v] = series_mul(images[prefix], gy if v.bits & 1 else gx)
            km[v] = images[v] + tau(inject(NCPoly.from_word(v), trunc))
    return km


def dspace_coef_span(w: int, spec, restrict_h0: bool, trunc: Truncation) -> SubspaceBasis:
    """Weight-w coefficient span of (tau - id) applied to the truncated
    duality-fixed space, generated by u-shifted kernel-image elements.

    Unrestricted, the shifts are dropped: a shifted series has exactly the
    coefficients of the unshifted one, so they add nothing to the span.
    Restricted, membership in the admissible subalgebra is imposed
    coefficient-wise before collecting; the constraints split by the
    difference between word weight and shift degree, so each block is
    eliminated separately.
    """
    spec = MapSpec.of(spec)
    if spec.is_identity:
        raise ZeroSpecError("the identity spec does not name a relation space")
    if len(spec) != trunc.s:
        raise ValueError("spec length must match the number of u-variables")
    max_v = min(w, trunc.W)
    km = _km_table(spec, trunc, max_v)

    if not restrict_h0:
        elim = Eliminator()
        for v, kv in km.items():
            need = w - v.n
            if need == 0 or need > trunc.N:
                continue
            for beta, p in kv.coeffs.items():
                if sum(beta) != need:
                    continue
                q = tau(p) - p
                if not q.is_zero:
                    elim.add(poly_to_vec(q, w))
        return _basis_from_eliminator(elim, w)

    out = Eliminator()
    pbase = 1 << 60
    wmask = (1 << w) - 1
    by_weight: dict[int, list[Word]] = {}
    for v in km:
        by_weight.setdefault(v.n, []).append(v)

    for defect in range(w - trunc.N, w):
        if defect > max_v:
            continue
        elim = Eliminator()
        out_index: dict[tuple, int] = {}
        for i, alpha in enumerate(trunc.exponents_of_total(w - defect)):
            out_index[alpha] = i

        # canonical constraint-slot ids, ordered by u-layer then exponent then
        # word: generators shifted by u^gamma touch layers >= |gamma| only, so
        # feeding large shifts first keeps the pivot rows short
        cslots: dict[tuple, int] = {}
        for layer in range(trunc.N + 1):
            wt = defect + layer
            if wt < 0 or wt > trunc.W:
                continue
            for alpha in trunc.exponents_of_total(layer):
                for word in words_of_weight(wt):
                    if not word.is_admissible:
                        cslots[(alpha, word.bits)] = len(cslots)

        g_hi = min(trunc.N, max_v - defect)
        for g in range(g_hi, max(0, -defect) - 1, -1):
            vw = defect + g
            for gamma in iter_compositions(g, trunc.s):
                for v in by_weight.get(vw, ()):
                    kv = km[v]
                    row = {}
                    for beta, p in kv.coeffs.items():
                        tb = sum(beta)
                        if tb + g > trunc.N:
                            continue
                        alpha = tuple(a + b for a, b in zip(gamma, beta))
                        for word, c in p.terms.items():
                            if not word.is_admissible:
                                row[cslots[(alpha, word.bits)]] = c
                        if vw < w and tb == w - vw:
                            q = tau(p) - p
                            if not q.is_zero:
                                base = pbase + (out_index[alpha] << w)
                                for word, c in q.terms.items():
                                    row[base + word.bits] = c
                    if row:
                        elim.add(row)
        for r in elim.rows_with_pivot_ge(pbase):
            per_slot: dict[int, dict] = {}
            for col, val in r.items():
                off = col - pbase
                per_slot.setdefault(off >> w, {})[off & wmask] = val
            for vec in per_slot.values():
                out.add(vec)
    return _basis_from_eliminator(out, w)


def graded_kernel(map_id, w: int, trunc: Truncation) -> SubspaceBasis:
    """Kernel of a map restricted to the weight-w slice.

    map_id is ('partial', n), ('delta_minus_id', spec) or
    ('delta_minus_tau', spec); the delta variants impose the image
    conditions at every u-exponent the box can see.
    """
    kind, arg = map_id
    idbase = 1 << 60
    elim = Eliminator()
    if kind == "partial":
        n = arg
        if not isinstance(n, int) or n < 1:
            raise ValueError("derivation order must be a positive integer")
        for v in words_of_weight(w):
            row = {}
            img = partial(n, NCPoly.from_word(v))
            for word, c in img.terms.items():
                row[word.bits] = c
            row[idbase + v.bits] = 1
            elim.add(row)
    elif kind in ("delta_minus_id", "delta_minus_tau"):
        spec = MapSpec.of(arg)
        if spec.is_identity:
            raise ZeroSpecError("the identity spec has a trivial kernel condition")
        if len(spec) != trunc.s:
            raise ValueError("spec length must match the number of u-variables")
        slot_index: dict[tuple, int] = {}
        for i, alpha in enumerate(trunc.iter_exponents()):
            slot_index[alpha] = i
        for v in words_of_weight(w):
            p = NCPoly.from_word(v)
            img = apply_spec(spec, inject(p, trunc))
            row = {}
            for alpha, q in img.coeffs.items():
                cond = q
                if sum(alpha) == 0:
                    cond = q - p if kind == "delta_minus_id" else q - tau(p)
                if cond.is_zero:
                    continue
                base = slot_index[alpha] << (w + trunc.W + 1)
                for word, c in cond.terms.items():
                    row[base + (word.n << w) + word.bits] = c
            row[idbase + v.bits] = 1
            elim.add(row)
    else:
        raise ValueError(f"unknown graded map {kind!r}")
    inner = Eliminator()
    for r in elim.rows_with_pivot_ge(idbase):
        inner.add({col - idbase: val for col, val in r.items()})
    return _basis_from_eliminator(inner, w)


def z_power(w: int) -> NCPoly:
    return Z_POLY**w


def pairwise_triviality(spec_a, spec_b, w: int, trunc: Truncation) -> VerificationReport:
    """Intersection of the two duality-twisted kernels at weight w; the
    expected result is the line spanned by z^w."""
    spec_a = MapSpec.of(spec_a)
    spec_b = MapSpec.of(spec_b)
    if spec_a == spec_b:
        raise ValueError("the two specs must differ")
    ka = graded_kernel(("delta_minus_tau", spec_a), w, trunc)
    kb = graded_kernel(("delta_minus_tau", spec_b), w, trunc)
    inter = intersect(ka, kb)
    expected = echelon_basis([z_power(w)], w)
    return VerificationReport(
        identity=f"pairwise:{spec_a}:{spec_b}:w{w}",
        box=trunc,
        equal=inter == expected,
        details={
            "dim": inter.dim,
            "dim_a": ka.dim,
            "dim_b": kb.dim,
        },
    )


def _cor44_element(which: str, **params) -> tuple[NCPoly, int]:
    if which == "i":
        d, m, n = params["d"], params["m"], params["n"]
        if min(d, m, n) < 1:
            raise ValueError("d, m, n must be positive")
        total = NCPoly.zero()
        for ms in iter_compositions(m, d):
            for ns in iter_compositions(n, d):
                p = NCPoly.one()
                for mj, nj in zip(ms, ns):
                    p = p * X_POLY * Y_POLY**mj * X_POLY**nj * Y_POLY
                total = total + p
        return total, 2 * d + m + n
    if which == "ii":
        k, r, m = params["k"], params["r"], params["m"]
        if min(k, r, m) < 1 or k <= r + m:
            raise ValueError("need positive k, r, m with k > r + m")
        total = NCPoly.zero()
        for ms in iter_compositions(k - r - m - 1, r):
            p = X_POLY
            for mj in ms:
                p = p * X_POLY**mj * Y_POLY
            p = p * X_POLY ** (m - 1) * Y_POLY
            total = total + p
        return total, k
    raise ValueError(f"unknown membership family {which!r}")


def membership_cor44(which: str, **params) -> VerificationReport:
    """Check that the displayed duality combination lies in the restricted
    derivation span."""
    element, weight = _cor44_element(which, **params)
    image = tau(element) - element
    basis = derivation_space(weight, True)
    member = basis.contains_poly(image)
    return VerificationReport(
        identity=f"cor44:{which}:" + ",".join(f"{k}={v}" for k, v in sorted(params.items())),
        box=None,
        equal=member,
        details={"weight": weight, "derivation_dim": basis.dim},
    )


def dims_table(max_weight: int, spec=None, restrict_h0: bool = True, u_cap=None):
    """Per-weight dimensions of the duality space, derivation space, their
    intersection, and (optionally) the harvested coefficient span.

    Returns (rows, smallest_strict) where smallest_strict is the least
    weight with dim_intersection < dim_duality, or None.
    """
    rows = []
    smallest = None
    for w in range(1, max_weight + 1):
        dual = duality_space(w, restrict_h0)
        deriv = derivation_space(w, restrict_h0)
        inter = intersect(dual, deriv)
        row = {
            "weight": w,
            "dim_duality": dual.dim,
            "dim_derivation": deriv.dim,
            "dim_intersection": inter.dim,
            "dim_coef_span": "",
            "specs": "",
            "box": "",
        }
        if spec is not None:
            ms = MapSpec.of(spec)
            n_cap = w if u_cap is None else u_cap
            trunc = Truncation(len(ms), w, n_cap)
            span = dspace_coef_span(w, ms, restrict_h0, trunc)
            row["dim_coef_span"] = span.dim
            row["specs"] = str(ms)
            row["box"] = f"s={trunc.s};W={trunc.W};N={trunc.N}"
        rows.append(row)
        if smallest is None and inter.dim < dual.dim:
            smallest = w
    return rows, smallest
