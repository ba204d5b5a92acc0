"""Closed forms for generic finite sums, and sets indexed by G.

A sum over k = lower..G is an honest finite sum for every
instantiation of G, so each identity here pairs a Sum node with a
closed-form expression that agrees with it *exactly* at every natural.
The test suite instantiates both sides and compares Fractions, no
tolerances involved.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import scalar as S
from .errors import EvaluationError, NonInjectiveMap
from .expr import (
    G,
    Add,
    Bindings,
    Const,
    Div,
    GrossExpr,
    Mul,
    Parity,
    Pow,
    Sub,
    Sum,
    Var,
    con,
    free_vars,
    instantiate,
)


def geometric_sum(x, lower=0, upper=None, index="k"):
    """The Sum node for x^lower + ... + x^upper (upper defaults to G)."""
    if upper is None:
        upper = G
    return Sum(index, con(lower), upper, Pow(x, Var(index)))


def geometric_closed_form(x, lower=0, upper=None):
    """Closed form of the geometric sum, valid at every instantiation.

    For x != 1 this is (x^lower - x^(upper+1))/(1 - x); the ratio
    x == 1 degenerates to a plain count of terms, upper - lower + 1.
    Callers summing a symbolic x get the general form and must not
    instantiate it at x = 1 (the division node raises, as it should).
    """
    if upper is None:
        upper = G
    if x == con(1):
        return Sub(upper, con(lower - 1))
    if lower == 0:
        head = con(1)
    elif lower == 1:
        head = x
    else:
        head = Pow(x, con(lower))
    tail = Pow(x, Add(upper, con(1)))
    return Div(Sub(head, tail), Sub(con(1), x))


def triangular_identity():
    """sum(k, 1, G, k) against G*(G + 1)/2."""
    lhs = Sum("k", con(1), G, Var("k"))
    rhs = Div(Mul(G, Add(G, con(1))), con(2))
    return lhs, rhs


def square_pyramid_identity():
    """sum(k, 1, G, k^2) against G*(G + 1)*(2*G + 1)/6."""
    lhs = Sum("k", con(1), G, Pow(Var("k"), con(2)))
    rhs = Div(
        Mul(Mul(G, Add(G, con(1))), Add(Mul(con(2), G), con(1))), con(6)
    )
    return lhs, rhs


def doubling_identity(lower=0):
    """sum(k, lower, G, 2^k) with its closed form.

    The two supported starting points differ by the single dropped
    term 2^0: lower 0 gives 2^(G+1) - 1, lower 1 gives 2^(G+1) - 2.
    """
    if lower not in (0, 1):
        raise ValueError("doubling identity is tabulated for lower 0 and 1")
    lhs = geometric_sum(con(2), lower=lower)
    rhs = Sub(Pow(con(2), Add(G, con(1))), con(1 + lower))
    return lhs, rhs


POWER_SUM_IDENTITIES = (
    ("triangular", triangular_identity),
    ("square_pyramid", square_pyramid_identity),
    ("doubling_from_zero", lambda: doubling_identity(0)),
    ("doubling_from_one", lambda: doubling_identity(1)),
)


def power_sum_identities():
    """The identity library as (sum-form, closed-form) pairs.

    Triangular and square-pyramid sums, the base-2 geometric sum from
    both tabulated lower bounds (the -1 constant only holds when the
    sum starts at 2^0; from 2^1 the constant is -2), and the fully
    symbolic base-x geometric sum last.
    """
    pairs = [factory() for _, factory in POWER_SUM_IDENTITIES]
    pairs.append(
        (geometric_sum(Var("x")), geometric_closed_form(Var("x")))
    )
    return pairs


# ----------------------------------------------------------------------
# the finite exponential sequence E(x, N) = (1 + x/N)^N
# ----------------------------------------------------------------------

def E_expr(x=None):
    """(1 + x/G)^G as a tree (x defaults to the variable x)."""
    if x is None:
        x = Var("x")
    return Pow(Add(con(1), Div(x, G)), G)


def E_eval(x, n, precision=None):
    """(1 + x/n)^n at a concrete natural n.

    Exact (Fraction / QComplex) while the power stays within the
    integer-power size cap, rounded to working precision beyond it.
    """
    if n < 1:
        raise EvaluationError("E(x, n) needs a natural n >= 1")
    prec = precision if precision is not None else S.DEFAULT_PRECISION
    base = S.num_add(Fraction(1), S.num_div(x, Fraction(n)))
    return S.num_pow(base, Fraction(n), prec)


def E_term_coefficient(j):
    """Coefficient of x^j in the expansion of (1 + x/G)^G.

    Equals C(G, j)/G^j, written as the falling product
    G*(G - 1)*...*(G - j + 1) over G^j * j!.
    """
    if j < 0:
        raise ValueError("term index must be nonnegative")
    if j == 0:
        return con(1)
    num = G
    for i in range(1, j):
        num = Mul(num, Sub(G, con(i)))
    den = G if j == 1 else Pow(G, con(j))
    fact = math.factorial(j)
    if fact > 1:
        den = Mul(den, con(fact))
    return Div(num, den)


def E_partial_sum(x, terms):
    """sum of E_term_coefficient(j) * x^j for j = 0..terms-1."""
    if terms < 1:
        return con(0)
    acc = E_term_coefficient(0)
    for j in range(1, terms):
        piece = Mul(E_term_coefficient(j), Pow(x, con(j)))
        acc = Add(acc, piece)
    return acc


# ----------------------------------------------------------------------
# generic sets: unbounded as symbols, finite at every instantiation
# ----------------------------------------------------------------------

_VALIDATE_COUNT = 200
_SIZE_SWEEP = 1000
_ENUM_SPOT = 32


def _eval_at(expr, index, k):
    return instantiate(expr, Bindings(vars={index: Fraction(k)}))


def _as_natural(v, what):
    if isinstance(v, Fraction) and v.denominator == 1 and v >= 1:
        return v.numerator
    raise NonInjectiveMap(f"{what} must be a natural number, got {v}")


def _as_count(v):
    """Exact nonnegative int when v is one, else None."""
    if isinstance(v, Fraction) and v.denominator == 1 and v >= 0:
        return v.numerator
    return None


@dataclass(frozen=True)
class GenericSet:
    """The set {g(1), g(2), ..., g(upper)} described symbolically.

    ``element`` is the k-th member map g, required to be strictly
    increasing over the naturals (checked on a prefix at construction,
    NonInjectiveMap otherwise); that restriction is what makes
    membership and counting decidable.  ``upper`` bounds the
    enumeration index, typically the G token itself.  ``size`` is the
    claimed element count F(G) and defaults to ``upper``: counting
    follows the enumeration, so the evens {2, 4, ..., 2*G} have size
    G.  The density reading (evens inside {1..G} having G/2 members)
    is a different set with upper G/2; see evens_inside().
    """

    label: str
    element: GrossExpr
    upper: GrossExpr = G
    size: GrossExpr = None
    index: str = "k"

    def __post_init__(self):
        if self.size is None:
            object.__setattr__(self, "size", self.upper)
        if free_vars(self.element) - {self.index}:
            raise EvaluationError("element map may only use its index")
        if free_vars(self.upper) or free_vars(self.size):
            raise EvaluationError(
                "upper and size may only mention the G token")
        prev = 0
        for k in range(1, _VALIDATE_COUNT + 1):
            v = _as_natural(
                _eval_at(self.element, self.index, k), f"{self.label}({k})"
            )
            if v <= prev:
                raise NonInjectiveMap(
                    f"{self.label} element map is not strictly increasing "
                    f"at k={k}"
                )
            prev = v

    def kth(self, k):
        """The k-th element as an int."""
        if k < 1:
            raise ValueError("elements are indexed from 1")
        return _as_natural(
            _eval_at(self.element, self.index, k), f"{self.label}({k})"
        )

    def bound_at(self, n, parity=Parity.UNSPECIFIED):
        """Enumeration bound at G=n, or None when it is not a count
        there (G/2 means nothing at an odd n)."""
        v = instantiate(self.upper, Bindings(grossone=n, parity=parity))
        return _as_count(v)

    def members(self, n, parity=Parity.UNSPECIFIED):
        """The concrete instantiation at G=n, ascending."""
        u = self.bound_at(n, parity)
        if u is None:
            raise EvaluationError(
                f"{self.label} has no integral enumeration bound at G={n}"
            )
        return [self.kth(k) for k in range(1, u + 1)]

    def contains(self, value):
        """Binary search against the increasing element map."""
        if value < 1:
            return False
        lo, hi = 1, max(1, value)
        if self.kth(1) > value:
            return False
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.kth(mid) <= value:
                lo = mid
            else:
                hi = mid - 1
        return self.kth(lo) == value


def naturals():
    """The full set {1, 2, ..., G}."""
    return GenericSet("naturals", Var("k"))


def evens():
    """The evens as enumerated: {2, 4, ..., 2*G}, size G."""
    return GenericSet("evens", Mul(con(2), Var("k")))


def odds():
    """{1, 3, ..., 2*G - 1}, size G."""
    return GenericSet("odds", Sub(Mul(con(2), Var("k")), con(1)))


def squares():
    """{1, 4, ..., G^2} with g(k) = k^2, size G."""
    return GenericSet("squares", Pow(Var("k"), con(2)))


def evens_inside():
    """The evens read as a subset of {1..G}: {2, 4, ..., G}.

    The enumeration stops at G/2, so this set instantiates only at
    even G; its size G/2 is the density reading, the one the
    enumeration-first convention deliberately does not use for
    evens().
    """
    return GenericSet(
        "evens-inside", Mul(con(2), Var("k")), Div(G, con(2))
    )


def generic_set_size(gset, sweep=_SIZE_SWEEP):
    """Return the symbolic size F(G), after checking it counts right.

    For every n up to ``sweep`` where the set instantiates (the
    enumeration bound comes out a whole count), the claimed size must
    equal the member count.  Small instantiations are enumerated
    outright, so a duplicate would surface as NonInjectiveMap; larger
    ones lean on the increasing-map validation done at construction.
    """
    for n in range(1, sweep + 1):
        u = gset.bound_at(n)
        if u is None:
            continue
        if u <= _ENUM_SPOT:
            got = gset.members(n)
            if len(set(got)) != len(got):
                raise NonInjectiveMap(
                    f"{gset.label} repeats a member at G={n}"
                )
            count = len(got)
        else:
            count = u
        claimed = instantiate(gset.size, Bindings(grossone=n))
        if _as_count(claimed) != count:
            raise EvaluationError(
                f"{gset.label} size formula disagrees at G={n}: "
                f"claims {claimed}, counted {count}"
            )
    return gset.size


def pigeonhole_check(gset, n, f, parity=Parity.UNSPECIFIED):
    """Injective-implies-surjective for a self-map on the set at G=n.

    ``f`` is a plain callable on members and must land inside the set
    (EvaluationError otherwise, since the premise is a self-map).  On
    a finite set the implication cannot fail; the point of the check
    is that both quantifiers actually run.
    """
    members = gset.members(n, parity)
    universe = set(members)
    images = []
    for v in members:
        w = f(v)
        if w not in universe:
            raise EvaluationError(
                f"map leaves the set: f({v}) = {w} is not a member"
            )
        images.append(w)
    injective = len(set(images)) == len(images)
    surjective = set(images) == universe
    return (not injective) or surjective
