"""Exact verification of the Somos-4 Hankel determinant identity.

The library expands the series y(z) defined by y - y**2 = z - z**3, forms
Q = (y - z)/z**2, and shows by three independent exact-arithmetic routes that
the Hankel determinants of Q are the Somos-4 numbers 1, 1, 2, 3, 7, 23, ...:
direct fraction-free determinants, a quadratic-transformation product
formula, and the Somos-4 recurrence itself.
"""

from .hankel import (
    HankelMatrix,
    HankelResult,
    build_hankel,
    det_bareiss,
    det_cofactor,
    det_condensation,
    det_sequence,
)
from .series import (
    TruncatedSeries,
    catalan_series,
    format_rational,
    ps_add,
    ps_div,
    ps_mul,
    q_from_y,
    rat,
    solve_fundamental,
    solve_lemma_form,
)
from .somos import (
    ASequence,
    SomosWindow,
    an2_sequence,
    an2_step,
    check_rec_a,
    somos4_extend,
    somos_sequence,
    t_value,
    theorem2_rhs,
)
from .transform import (
    SOMOS_Q_STATE,
    CoeffState,
    Lemma1Check,
    coeff_step,
    det_product,
    iterate_states,
    lemma1_residual,
)
from .verify import (
    SuiteResult,
    VerifyReport,
    run_catalan_fixture,
    run_somos_verification,
)

__version__ = "0.1.0"

__all__ = [
    "ASequence",
    "CoeffState",
    "HankelMatrix",
    "HankelResult",
    "Lemma1Check",
    "SOMOS_Q_STATE",
    "SomosWindow",
    "SuiteResult",
    "TruncatedSeries",
    "VerifyReport",
    "an2_sequence",
    "an2_step",
    "build_hankel",
    "catalan_series",
    "check_rec_a",
    "coeff_step",
    "det_bareiss",
    "det_cofactor",
    "det_condensation",
    "det_product",
    "det_sequence",
    "format_rational",
    "iterate_states",
    "lemma1_residual",
    "ps_add",
    "ps_div",
    "ps_mul",
    "q_from_y",
    "rat",
    "run_catalan_fixture",
    "run_somos_verification",
    "solve_fundamental",
    "solve_lemma_form",
    "somos4_extend",
    "somos_sequence",
    "t_value",
    "theorem2_rhs",
]
