"""Expression-tree behavior: construction, instantiation, parity."""

from fractions import Fraction

import pytest

import grossum.scalar as S
from grossum.errors import (
    DivisionByZero,
    EvaluationError,
    ParityViolation,
    UnboundSymbol,
)
from grossum.expr import (
    Add,
    Bindings,
    Div,
    Func,
    G,
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


def ev(e, n=None, parity=Parity.UNSPECIFIED, **vars):
    b = Bindings(
        grossone=n,
        vars={k: Fraction(v) for k, v in vars.items()},
        parity=parity,
    )
    return instantiate(e, b)


def test_con_and_arithmetic():
    e = Add(Mul(con(2), con(3)), Sub(con(10), con(4)))
    assert ev(e) == 12
    assert ev(Div(con(7), con(2))) == Fraction(7, 2)
    assert ev(Neg(con(Fraction(1, 3)))) == Fraction(-1, 3)


def test_var_binding_and_unbound():
    assert ev(Var("x"), x=5) == 5
    with pytest.raises(UnboundSymbol):
        ev(Var("x"))


def test_grossone_binding_required():
    with pytest.raises(EvaluationError):
        ev(G)
    assert ev(G, n=17) == 17
    assert contains_grossone(Pow(G, con(2)))
    assert not contains_grossone(Pow(Var("k"), con(2)))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ev(Div(con(1), Sub(con(2), con(2))))


def test_zero_power_zero_is_one():
    assert ev(Pow(con(0), con(0))) == 1
    assert ev(Pow(Sub(Var("x"), con(3)), con(0)), x=3) == 1


def test_parity_declared_on_bindings():
    e = Div(Add(con(1), Pow(con(-1), G)), con(2))
    for n in range(2, 22, 2):
        assert ev(e, n=n, parity=Parity.EVEN) == 1
    for n in range(1, 21, 2):
        assert ev(e, n=n, parity=Parity.ODD) == 0


def test_parity_soundness_unspecified():
    """(-1)^G needs no parity declaration; value tracks the bound n."""
    e = Pow(con(-1), G)
    for n in (2, 4, 6, 8, 10, 100, 1024, 2222, 4040, 65536):
        assert ev(e, n=n) == 1
    for n in (1, 3, 5, 7, 9, 101, 1025, 2221, 4041, 65537):
        assert ev(e, n=n) == -1


def test_parity_contradiction_raises():
    with pytest.raises(ParityViolation):
        Bindings(grossone=3, parity=Parity.EVEN)
    with pytest.raises(ParityViolation):
        Bindings(grossone=4, parity=Parity.ODD)


def test_grossone_must_be_natural():
    with pytest.raises(EvaluationError):
        Bindings(grossone=0)
    with pytest.raises(EvaluationError):
        Bindings(grossone=-3)


def test_sum_basic_and_empty():
    body = Var("k")
    s = Sum("k", con(1), G, body)
    assert ev(s, n=100) == 5050
    empty = Sum("k", con(5), con(4), body)
    assert ev(empty) == 0
    empty_prod = Prod("k", con(5), con(4), body)
    assert ev(empty_prod) == 1


def test_sum_bounds_may_be_expressions():
    """Bounds like -G^2 .. G^2 are ordinary integer-valued expressions."""
    s = Sum("k", Neg(Pow(G, con(2))), Pow(G, con(2)), con(1))
    assert ev(s, n=5) == 51
    t = Sum("k", Neg(Pow(G, con(2))), Pow(G, con(2)), Var("k"))
    assert ev(t, n=7) == 0


def test_prod_factorial():
    p = Prod("j", con(1), Var("k"), Var("j"))
    assert ev(p, k=6) == 720


def test_nested_sum_shadowing():
    inner = Sum("k", con(1), con(3), Var("k"))
    outer = Sum("k", con(1), con(2), Mul(Var("k"), inner))
    assert ev(outer) == (1 * 6) + (2 * 6)


def test_func_evaluation():
    assert ev(Func("sqrt", con(Fraction(49, 64)))) == Fraction(7, 8)
    got = ev(Func("sin", con(0)))
    assert got == 0
    e1 = ev(Func("exp", con(1)))
    assert S.decimal_str(e1).startswith("2.71828182845904523536")
    with pytest.raises(ValueError):
        Func("sinh", con(1))


def test_free_vars_scoping():
    e = Sum("k", con(1), Var("m"), Mul(Var("k"), Var("x")))
    assert free_vars(e) == {"m", "x"}
    assert free_vars(Prod("j", Var("a"), Var("b"), Var("j"))) == {"a", "b"}
    assert free_vars(G) == set()


def test_to_string_readable():
    e = Add(Pow(G, con(2)), Div(G, con(2)))
    txt = to_string(e)
    assert "G" in txt and "^" in txt
    assert to_string(Sum("k", con(1), G, Var("k"))) == "sum(k, 1, G, k)"


def test_instantiate_precision_flows():
    e = Func("exp", con(1))
    narrow = instantiate(e, Bindings(), precision=20)
    wide = instantiate(e, Bindings(), precision=50)
    assert len(S.decimal_str(wide)) > len(S.decimal_str(narrow))


def test_vars_accept_reals():
    x = S.to_precision(Fraction(1, 3), 32)
    got = instantiate(Mul(Var("x"), con(3)), Bindings(vars={"x": x}))
    assert S.decimal_str(got).startswith("0.9999999999")
