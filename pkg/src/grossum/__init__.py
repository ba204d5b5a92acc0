"""Generic-finite arithmetic with the grossone symbol.

The package treats the symbol ``G`` (written ``①`` in some sources) as
a generic finite natural number: expressions containing it are built
and simplified symbolically, instantiated at concrete values of ``G``,
and judged by two empirical engines.  ``dot_equal`` decides whether
two expressions agree up to an infinitesimal discrepancy by watching
the gap shrink along a schedule of growing ``G`` values, and
``transfer_check`` hunts for counterexamples to a universally
quantified predicate over an integer window.

Layers, bottom up:

* :mod:`grossum.kernels` scaled-integer fixed-point kernels, with a
  compiled backend picked automatically when available
* :mod:`grossum.scalar` the numeric tower (int, Fraction, Real,
  QComplex, Complex) and its operations
* :mod:`grossum.expr` / :mod:`grossum.parser` / :mod:`grossum.simplify`
  the expression trees, the text syntax, and canonical rewriting
* :mod:`grossum.verdicts` the dot-equality, transfer, and limit engines
* :mod:`grossum.series`, :mod:`grossum.zeta`, :mod:`grossum.analysis`
  worked material: power-sum identities, generic sets, Euler products
  over the first ``M`` primes, smooth-number supports, generic
  Riemann sums, and two nested-radical pi formulas
* :mod:`grossum.cli` the ``grossum`` command-line front end
"""

from .errors import (
    DivisionByZero,
    EvaluationError,
    ExprSyntaxError,
    GrossumError,
    NonInjectiveMap,
    NotUnitModulus,
    ParityViolation,
    PoleAtOne,
    TooLarge,
    UnboundIndex,
    UnboundSymbol,
    UnknownFunction,
    UnsupportedExact,
    ZeroInput,
)
from .expr import (
    Add,
    Bindings,
    Const,
    Div,
    Func,
    G,
    GrossExpr,
    Grossone,
    Mul,
    Neg,
    Parity,
    Pow,
    Prod,
    Sub,
    Sum,
    Var,
    con,
    contains_grossone,
    free_vars,
    instantiate,
    to_string,
)
from .parser import parse
from .simplify import simplify
from .scalar import (
    Complex,
    QComplex,
    Real,
    decimal_str,
    format_numeric,
    numeric_from_string,
    to_precision,
)
from .verdicts import (
    DOT_EQUAL_CORPUS,
    LimitReport,
    NSchedule,
    TransferReport,
    Verdict,
    dot_equal,
    limit_estimate,
    parse_schedule,
    split_predicate,
    transfer_check,
)
from .series import (
    E_eval,
    E_expr,
    E_partial_sum,
    E_term_coefficient,
    GenericSet,
    doubling_identity,
    evens,
    evens_inside,
    generic_set_size,
    geometric_closed_form,
    geometric_sum,
    naturals,
    odds,
    pigeonhole_check,
    power_sum_identities,
    square_pyramid_identity,
    squares,
    triangular_identity,
)
from .zeta import (
    SmoothSet,
    enumerate_smooth,
    euler_product_Z,
    primes_first,
    truncated_zeta_ZZ,
)
from .analysis import (
    QuadratureSpec,
    euler_generic,
    generic_integral,
    pi_reference,
    pi_root_formula,
    viete_product,
)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "GrossumError",
    "ExprSyntaxError",
    "UnknownFunction",
    "UnboundIndex",
    "EvaluationError",
    "UnboundSymbol",
    "DivisionByZero",
    "ParityViolation",
    "ZeroInput",
    "UnsupportedExact",
    "NotUnitModulus",
    "NonInjectiveMap",
    "TooLarge",
    "PoleAtOne",
    "Const",
    "Var",
    "Grossone",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Func",
    "Sum",
    "Prod",
    "GrossExpr",
    "G",
    "con",
    "free_vars",
    "contains_grossone",
    "Parity",
    "Bindings",
    "to_string",
    "instantiate",
    "parse",
    "simplify",
    "Real",
    "QComplex",
    "Complex",
    "to_precision",
    "decimal_str",
    "format_numeric",
    "numeric_from_string",
    "NSchedule",
    "parse_schedule",
    "Verdict",
    "dot_equal",
    "DOT_EQUAL_CORPUS",
    "TransferReport",
    "split_predicate",
    "transfer_check",
    "LimitReport",
    "limit_estimate",
    "geometric_sum",
    "geometric_closed_form",
    "triangular_identity",
    "square_pyramid_identity",
    "doubling_identity",
    "power_sum_identities",
    "E_expr",
    "E_eval",
    "E_term_coefficient",
    "E_partial_sum",
    "GenericSet",
    "naturals",
    "evens",
    "odds",
    "squares",
    "evens_inside",
    "generic_set_size",
    "pigeonhole_check",
    "primes_first",
    "euler_product_Z",
    "SmoothSet",
    "enumerate_smooth",
    "truncated_zeta_ZZ",
    "pi_reference",
    "QuadratureSpec",
    "generic_integral",
    "euler_generic",
    "pi_root_formula",
    "viete_product",
    "KERNEL_BACKEND",
    "__version__",
]
