"""Expression trees over rationals, variables and the grossone token G.

Nodes are frozen dataclasses, so expressions hash and compare
structurally.  ``G`` stands for a *generic finite* natural number: it
has no value of its own, and every claim about an expression containing
it is checked by instantiating G at concrete naturals (see
``instantiate`` and the verdict machinery built on top of it).

The printer emits text the parser maps back to the identical tree; the
round-trip property is exercised heavily in the test suite.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from . import scalar as S
from .errors import (
    DivisionByZero,
    EvaluationError,
    ParityViolation,
    UnboundIndex,
    UnboundSymbol,
)

FUNC_NAMES = ("exp", "sin", "cos", "sqrt", "re", "im")


@dataclass(frozen=True)
class Const:
    value: object  # Fraction, QComplex, Real or Complex

    def __post_init__(self):
        if isinstance(self.value, int):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Grossone:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "GrossExpr"


@dataclass(frozen=True)
class Add:
    left: "GrossExpr"
    right: "GrossExpr"


@dataclass(frozen=True)
class Sub:
    left: "GrossExpr"
    right: "GrossExpr"


@dataclass(frozen=True)
class Mul:
    left: "GrossExpr"
    right: "GrossExpr"


@dataclass(frozen=True)
class Div:
    left: "GrossExpr"
    right: "GrossExpr"


@dataclass(frozen=True)
class Pow:
    base: "GrossExpr"
    exponent: "GrossExpr"


@dataclass(frozen=True)
class Func:
    name: str
    arg: "GrossExpr"

    def __post_init__(self):
        if self.name not in FUNC_NAMES:
            raise ValueError(f"unknown function {self.name!r}")


@dataclass(frozen=True)
class Sum:
    index: str
    lower: "GrossExpr"
    upper: "GrossExpr"
    body: "GrossExpr"

    def __post_init__(self):
        _check_index(self.index, self.lower, self.upper)


@dataclass(frozen=True)
class Prod:
    index: str
    lower: "GrossExpr"
    upper: "GrossExpr"
    body: "GrossExpr"

    def __post_init__(self):
        _check_index(self.index, self.lower, self.upper)


GrossExpr = Union[
    Const, Var, Grossone, Neg, Add, Sub, Mul, Div, Pow, Func, Sum, Prod
]

G = Grossone()


def con(value):
    """Shorthand: an exact rational constant node."""
    return Const(Fraction(value))


def _check_index(index, lower, upper):
    if index in free_vars(lower) | free_vars(upper):
        raise UnboundIndex(
            f"index {index!r} may not appear in its own bounds"
        )


def free_vars(e):
    """Names of unbound variables (sum/prod indices are bound)."""
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, (Const, Grossone)):
        return set()
    if isinstance(e, Neg):
        return free_vars(e.arg)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Pow):
        return free_vars(e.base) | free_vars(e.exponent)
    if isinstance(e, Func):
        return free_vars(e.arg)
    if isinstance(e, (Sum, Prod)):
        inner = free_vars(e.body) - {e.index}
        return free_vars(e.lower) | free_vars(e.upper) | inner
    raise TypeError(f"not an expression: {e!r}")


def contains_grossone(e):
    if isinstance(e, Grossone):
        return True
    if isinstance(e, (Const, Var)):
        return False
    if isinstance(e, Neg):
        return contains_grossone(e.arg)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return contains_grossone(e.left) or contains_grossone(e.right)
    if isinstance(e, Pow):
        return contains_grossone(e.base) or contains_grossone(e.exponent)
    if isinstance(e, Func):
        return contains_grossone(e.arg)
    if isinstance(e, (Sum, Prod)):
        return (
            contains_grossone(e.lower)
            or contains_grossone(e.upper)
            or contains_grossone(e.body)
        )
    raise TypeError(f"not an expression: {e!r}")


# ----------------------------------------------------------------------
# parity context and bindings
# ----------------------------------------------------------------------

class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    UNSPECIFIED = "unspecified"


@dataclass(frozen=True)
class Bindings:
    """Concrete values for one instantiation of an expression.

    ``grossone`` is the natural the G token takes; ``parity`` promises
    its parity up front, and a contradicting value raises right here so
    the error surfaces at binding time, not in the middle of a sweep.
    """

    grossone: int = None
    vars: Mapping[str, object] = field(default_factory=dict)
    parity: Parity = Parity.UNSPECIFIED

    def __post_init__(self):
        if self.grossone is not None:
            if self.grossone < 1:
                raise EvaluationError(
                    f"grossone must instantiate to a natural >= 1, "
                    f"got {self.grossone}"
                )
            if self.parity is Parity.EVEN and self.grossone % 2:
                raise ParityViolation(
                    f"{self.grossone} declared even but is odd"
                )
            if self.parity is Parity.ODD and self.grossone % 2 == 0:
                raise ParityViolation(
                    f"{self.grossone} declared odd but is even"
                )


# ----------------------------------------------------------------------
# printing
# ----------------------------------------------------------------------

_PREC_OPAQUE = 5   # display-only constants (decimals, complex)
_PREC_ADD = 10
_PREC_NEG = 15
_PREC_MUL = 20
_PREC_POW = 30
_PREC_ATOM = 99


def _const_text_prec(v):
    text = S.format_numeric(v)
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return text, (_PREC_ATOM if v >= 0 else _PREC_NEG)
        return text, (_PREC_MUL if v >= 0 else _PREC_NEG)
    if isinstance(v, S.QComplex) and v.im == 0:
        return _const_text_prec(v.re)
    return text, _PREC_OPAQUE


def _node_prec(e):
    if isinstance(e, Const):
        return _const_text_prec(e.value)[1]
    if isinstance(e, (Var, Grossone, Func, Sum, Prod)):
        return _PREC_ATOM
    if isinstance(e, Pow):
        return _PREC_POW
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_NEG
    return _PREC_ADD


def _leads_with_minus(e):
    if isinstance(e, Neg):
        return True
    if isinstance(e, Const):
        return _const_text_prec(e.value)[0].startswith("-")
    return False


def to_string(e, unicode_grossone=False):
    """Render an expression; parse(to_string(e)) == e for grammar trees."""
    g = "①" if unicode_grossone else "G"

    def wrap(child, need, no_minus=True):
        text = p(child)
        if _node_prec(child) < need or (no_minus and _leads_with_minus(child)):
            return f"({text})"
        return text

    def p(n):
        if isinstance(n, Const):
            return _const_text_prec(n.value)[0]
        if isinstance(n, Var):
            return n.name
        if isinstance(n, Grossone):
            return g
        if isinstance(n, Neg):
            return "-" + wrap(n.arg, _PREC_MUL)
        if isinstance(n, Add):
            return (
                wrap(n.left, _PREC_ADD, no_minus=False)
                + " + "
                + wrap(n.right, _PREC_ADD + 1)
            )
        if isinstance(n, Sub):
            return (
                wrap(n.left, _PREC_ADD, no_minus=False)
                + " - "
                + wrap(n.right, _PREC_ADD + 1)
            )
        if isinstance(n, Mul):
            return wrap(n.left, _PREC_MUL) + "*" + wrap(n.right, _PREC_MUL + 1)
        if isinstance(n, Div):
            return wrap(n.left, _PREC_MUL) + "/" + wrap(n.right, _PREC_MUL + 1)
        if isinstance(n, Pow):
            base = wrap(n.base, _PREC_ATOM)
            etext = p(n.exponent)
            if _node_prec(n.exponent) == _PREC_ATOM or isinstance(
                n.exponent, Pow
            ):
                if not _leads_with_minus(n.exponent):
                    return f"{base}^{etext}"
            return f"{base}^({etext})"
        if isinstance(n, Func):
            return f"{n.name}({p(n.arg)})"
        if isinstance(n, (Sum, Prod)):
            kw = "sum" if isinstance(n, Sum) else "prod"
            return (
                f"{kw}({n.index}, {p(n.lower)}, {p(n.upper)}, {p(n.body)})"
            )
        raise TypeError(f"not an expression: {n!r}")

    return p(e)


# ----------------------------------------------------------------------
# instantiation
# ----------------------------------------------------------------------

def _as_index_int(v, what):
    """A bound value must come out an exact integer."""
    if isinstance(v, S.QComplex) and v.im == 0:
        v = v.re
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    if isinstance(v, S.Real):
        fr = v.to_fraction()
        if fr.denominator == 1:
            return fr.numerator
    raise EvaluationError(f"{what} must instantiate to an integer, got "
                          f"{S.format_numeric(v)}")


def instantiate(e, bindings=None, precision=None):
    """Evaluate an expression at concrete bindings.

    Results stay exact (Fraction / QComplex) whenever the expression is
    rational in its leaves; transcendental functions, non-perfect roots
    and oversized powers produce Real / Complex values at ``precision``
    (default 64 significant digits).
    """
    if bindings is None:
        bindings = Bindings()
    prec = precision if precision is not None else S.DEFAULT_PRECISION
    S._check_precision(prec)
    return _eval(e, bindings, {}, prec)


def _coerce_value(v, name):
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, (Fraction, S.QComplex, S.Real, S.Complex)):
        return v
    raise EvaluationError(f"binding for {name!r} is not a Numeric: {v!r}")


def _eval(e, b, env, prec):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        if e.name in env:
            return env[e.name]
        if e.name in b.vars:
            return _coerce_value(b.vars[e.name], e.name)
        raise UnboundSymbol(f"no binding for variable {e.name!r}")
    if isinstance(e, Grossone):
        if b.grossone is None:
            raise UnboundSymbol("no binding for the grossone token G")
        return Fraction(b.grossone)
    if isinstance(e, Neg):
        return S.num_neg(_eval(e.arg, b, env, prec))
    if isinstance(e, Add):
        return S.num_add(_eval(e.left, b, env, prec),
                         _eval(e.right, b, env, prec))
    if isinstance(e, Sub):
        return S.num_sub(_eval(e.left, b, env, prec),
                         _eval(e.right, b, env, prec))
    if isinstance(e, Mul):
        return S.num_mul(_eval(e.left, b, env, prec),
                         _eval(e.right, b, env, prec))
    if isinstance(e, Div):
        num = _eval(e.left, b, env, prec)
        den = _eval(e.right, b, env, prec)
        if S.is_zero(den):
            raise DivisionByZero(
                f"denominator vanished in {to_string(e)}"
            )
        return S.num_div(num, den)
    if isinstance(e, Pow):
        base = _eval(e.base, b, env, prec)
        expo = _eval(e.exponent, b, env, prec)
        try:
            return S.num_pow(base, expo, prec)
        except DivisionByZero:
            raise DivisionByZero(
                f"zero base with negative exponent in {to_string(e)}"
            ) from None
    if isinstance(e, Func):
        arg = _eval(e.arg, b, env, prec)
        if e.name == "exp":
            return S.num_exp(arg, prec)
        if e.name == "sin":
            return S.num_sin(arg, prec)
        if e.name == "cos":
            return S.num_cos(arg, prec)
        if e.name == "sqrt":
            if S.is_zero(arg):
                return Fraction(0)
            return S.principal_nth_root(arg, 2, prec)
        if e.name == "re":
            return S.num_re(arg)
        if e.name == "im":
            return S.num_im(arg)
        raise EvaluationError(f"unknown function {e.name!r}")
    if isinstance(e, (Sum, Prod)):
        lo = _as_index_int(_eval(e.lower, b, env, prec), "lower bound")
        hi = _as_index_int(_eval(e.upper, b, env, prec), "upper bound")
        is_sum = isinstance(e, Sum)
        acc = Fraction(0) if is_sum else Fraction(1)
        if hi >= lo:
            inner = dict(env)
            for k in range(lo, hi + 1):
                inner[e.index] = Fraction(k)
                v = _eval(e.body, b, inner, prec)
                acc = S.num_add(acc, v) if is_sum else S.num_mul(acc, v)
        return acc
    raise TypeError(f"not an expression: {e!r}")
