"""Random expression-tree generator shared by several test modules.

Trees come out in parser-canonical form so that printing and reparsing
reproduces them structurally: negative and fractional literals are a
single Const (the parser folds "-5" and "2/3" that way), and a quotient
of two integer literals is emitted pre-folded for the same reason.
"""

import random
from fractions import Fraction

from grossum.expr import (
    Add,
    Const,
    Div,
    Func,
    G,
    Mul,
    Neg,
    Pow,
    Prod,
    Sub,
    Sum,
    Var,
    con,
)

FUNC_POOL = ("sqrt", "exp", "sin", "cos", "re", "im")
FREE_VARS = ("x", "y")
INDEX_POOL = ("k", "j", "m")


def _leaf(rng, scope):
    roll = rng.random()
    if roll < 0.35:
        num = rng.randint(-9, 9)
        den = rng.choice((1, 1, 1, 2, 3, 5))
        return con(Fraction(num, den))
    if roll < 0.55:
        return G
    if roll < 0.8 and scope:
        return Var(rng.choice(sorted(scope)))
    return Var(rng.choice(FREE_VARS))


def _exponent(rng):
    """Exponents stay leaf-sized so towers of powers cannot form."""
    roll = rng.random()
    if roll < 0.7:
        return con(rng.randint(0, 4))
    if roll < 0.9:
        return G
    return con(Fraction(rng.randint(1, 3), 2))


def _canonical_div(left, right):
    if (
        isinstance(left, Const)
        and left.value.denominator == 1
        and isinstance(right, Const)
        and right.value.denominator == 1
        and right.value > 0
    ):
        return Const(left.value / right.value)
    return Div(left, right)


def random_expr(rng, depth=4, scope=frozenset(), g_sum_budget=1):
    """One random tree; scope carries the summation indices in force."""
    if depth <= 0:
        return _leaf(rng, scope)
    roll = rng.random()
    sub = lambda d=1: random_expr(rng, depth - d, scope, g_sum_budget)
    if roll < 0.14:
        return _leaf(rng, scope)
    if roll < 0.3:
        return Add(sub(), sub())
    if roll < 0.44:
        return Sub(sub(), sub())
    if roll < 0.58:
        return Mul(sub(), sub())
    if roll < 0.68:
        return _canonical_div(sub(), sub())
    if roll < 0.76:
        inner = sub()
        if isinstance(inner, Const):
            return Const(-inner.value)
        return Neg(inner)
    if roll < 0.84:
        return Pow(sub(), _exponent(rng))
    if roll < 0.92:
        return Func(rng.choice(FUNC_POOL), sub())
    index = rng.choice(INDEX_POOL)
    lo = rng.randint(0, 4)
    if g_sum_budget > 0 and rng.random() < 0.3:
        hi = G
        budget = g_sum_budget - 1
    else:
        hi = con(rng.randint(lo - 1, lo + 4))
        budget = g_sum_budget
    body = random_expr(
        rng, min(depth - 1, 2), scope | {index}, budget
    )
    node = Sum if rng.random() < 0.7 else Prod
    return node(index, con(lo), hi, body)


def corpus(seed, count, depth=4):
    """Deterministic list of generated trees."""
    rng = random.Random(seed)
    return [random_expr(rng, depth) for _ in range(count)]
