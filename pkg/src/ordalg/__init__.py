"""Finite-scale ordered universal algebra.

Declare a signature (operations with arities and constant posets, plus
formal inequalities), build its initial algebra by rule saturation over
ground terms, verify the universal property exhaustively, and construct
free algebras over finite posets.
"""

from .errors import (
    InputError,
    OrdalgError,
    ParseError,
    RecMorphismError,
    ResourceBudgetError,
)
from .poset import (
    DirectedSubset,
    FinPoset,
    MonotoneMap,
    chain,
    directed_sup,
    discrete,
    discrete_exponent,
    has_bottom,
    is_continuous,
    is_directed,
    is_monotone,
    product,
)
from .signature import (
    Apply,
    FormalIneq,
    Monomial,
    PreSignature,
    Signature,
    Term,
    UNIT,
    Var,
    format_term,
    free_vars,
    interp_monomial,
)
from .dsl import (
    format_poset,
    format_signature,
    load_algebra,
    load_poset,
    load_signature,
    parse_poset,
    parse_signature,
)
from .algebra import (
    AlgebraMorphism,
    PreAlgebra,
    check_naturality,
    enumerate_algebras,
    enumerate_morphisms,
    find_algebra_iso,
    interpret_term,
    is_algebra,
    is_morphism,
    is_valid,
    make_morphism,
)
from .initial import (
    InitialAlgebra,
    NonConvergence,
    SaturationConfig,
    SaturationState,
    build_initial,
    check_generated,
    check_initiality,
    check_sup_rules,
    enumerate_ground_terms,
    quotient,
    rec_morphism,
    saturate,
)
from .free import (
    ExtendedSignature,
    FreeAlgebraResult,
    add_incl,
    extend_along_unit,
    extend_signature,
    forget_incl,
    free_algebra,
)
from . import catalog

__all__ = [name for name in dir() if not name.startswith("_")]
