"""Exact toolkit for duality and derivation relations of nested zeta values.

Words over a two-letter alphabet with exact rational coefficients, truncated
u-series over them, the duality/derivation/automorphism maps, the
duality-fixed generator space, graded relation-space linear algebra, and a
high-precision numeric falsification harness, tied together by a small CLI.
"""

from .word_algebra import (
    AlphabetError,
    Index,
    NCPoly,
    NotAnIndexWord,
    Word,
    ZeroPolynomial,
    index_from_word,
    is_admissible,
    leading_word,
    poly_mul,
    to_xy_basis,
    to_xz_basis,
    word_from_index,
    words_of_weight,
)
from .series_ring import (
    NotInvertible,
    OutOfBox,
    TruncSeries,
    Truncation,
    TruncationError,
    coef,
    geometric_inverse,
    inject,
    series_mul,
)
from .maps import MapSpec, apply_spec, delta_exp_oracle, delta_single, partial, tau, theta
from .dspace import (
    DGenerator,
    NotInDSpace,
    NotZPolynomial,
    VerificationReport,
    appendix_identity,
    corollary_identity,
    d_generator,
    km_generator,
    power_check,
    verify_eq31,
)
from .relspace import (
    GradeError,
    SubspaceBasis,
    ZeroSpecError,
    derivation_space,
    dims_table,
    dspace_coef_span,
    duality_space,
    echelon_basis,
    graded_kernel,
    intersect,
    membership_cor44,
    pairwise_triviality,
)
from .zeta_numeric import DivergentSeries, ResidualReport, ZetaValue, relation_residual, zeta_eval

__version__ = "0.1.0"
