"""Exact computations with Virasoro algebra modules.

Submodules:

- ``exactmath``: rational scalars and exact row reduction
- ``lie``: the algebra, multi-indices, orders and PBW normal forms
- ``quotient``: quotient modules of the positive part given by (k, S, lambda)
- ``induced``: modules induced from those quotients and the leading-term descent
- ``solvable``: the finite-dimensional quotients a_n and pullback modules
- ``witt``: Witt algebras and lower central series
- ``parse``, ``suites``, ``cli``: text input, verification suites, command line
"""

from .exactmath import ExactMatrix, Scalar, in_span, nullspace, rank, rref, scalar, solve
from .induced import (
    InducedElement,
    apply_u,
    descend,
    format_induced,
    ind_act,
    leading_term,
    theorem1_step,
    truncated_closure,
)
from .lie import (
    C,
    MultiIndex,
    PBWMonomial,
    UElement,
    bracket,
    cmp_principal,
    cmp_revlex,
    format_element,
    iterated_ad,
    multiply,
)
from .parse import ParseError, parse
from .quotient import (
    ClaimViolation,
    NElement,
    QuotientSpec,
    act,
    grel_coefficients,
    grel_relations,
    gtilde_spec,
    is_whittaker_closed,
    lgz_spec,
    ow_spec,
    q_spec,
    quotient_consistency,
    remark_witness,
    simplicity_descent,
    theorem1_hypotheses,
    validate_spec,
    verma_spec,
)
from .solvable import (
    TruncatedAlgebra,
    TruncatedModule,
    classify_c_module,
    phi_pullback,
    psi_pullback,
    validate_module,
)
from .suites import SuiteConfig, SuiteReport, run_suite
from .witt import WittBasisElt, WittElement, lower_central_series, prop62_identity, witt_bracket

__all__ = [name for name in dir() if not name.startswith("_")]
