"""Series-lab checks: identity pairs, the E expansion, generic sets."""

import random
from fractions import Fraction

import pytest

from grossum.errors import EvaluationError, NonInjectiveMap
from grossum.expr import (
    Bindings,
    G,
    Mul,
    Parity,
    Sub,
    Var,
    con,
    instantiate,
    to_string,
)
from grossum.parser import parse
from grossum.series import (
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
    squares,
)
from grossum.simplify import simplify


def at(e, n, parity=Parity.UNSPECIFIED, **vars):
    b = Bindings(
        grossone=n,
        vars={k: Fraction(v) for k, v in vars.items()},
        parity=parity,
    )
    return instantiate(e, b)


def test_identity_pairs_exact_across_naturals():
    """Both sides of every pair agree exactly for N = 1..500."""
    x = Fraction(3, 7)
    for lhs, rhs in power_sum_identities():
        for n in range(1, 501):
            assert at(lhs, n, x=x) == at(rhs, n, x=x), to_string(lhs)


def test_identity_pairs_count():
    pairs = power_sum_identities()
    assert len(pairs) == 5
    for lhs, rhs in pairs:
        assert to_string(lhs) != to_string(rhs)


def test_geometric_forms_random_ratios():
    rng = random.Random(5)
    s = geometric_sum(Var("x"))
    c = geometric_closed_form(Var("x"))
    for _ in range(40):
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        if x == 1:
            continue
        n = rng.randint(1, 120)
        assert at(s, n, x=x) == at(c, n, x=x)


def test_geometric_tie_branch():
    """At ratio 1 the closed form degenerates to a term count."""
    c = geometric_closed_form(con(1))
    s = geometric_sum(con(1))
    for n in (1, 7, 33):
        assert at(c, n) == n + 1
        assert at(s, n) == n + 1
    shifted = geometric_closed_form(con(1), lower=3)
    assert at(shifted, 10) == 8
    with pytest.raises(EvaluationError):
        at(geometric_closed_form(Var("x")), 5, x=1)


def test_doubling_identity_lower_bounds():
    """Starting at 2^0 the constant is -1; starting at 2^1 it is -2."""
    for lower, const in ((0, -1), (1, -2)):
        lhs, rhs = doubling_identity(lower)
        for n in (1, 2, 5, 16):
            want = 2 ** (n + 1) + const
            assert at(lhs, n) == want
            assert at(rhs, n) == want
    with pytest.raises(ValueError):
        doubling_identity(2)


def test_derivation_check_collapses():
    """x*S - (S - 1 + x^(G+1)) rewrites to zero for the closed form S."""
    s_text = to_string(geometric_closed_form(Var("x")))
    probe = parse(f"x*({s_text}) - (({s_text}) - 1 + x^(G + 1))")
    assert simplify(probe) == con(0)


def test_parity_specialization():
    e = parse("(1 + (-1)^G)/2")
    for n in range(2, 102, 2):
        assert at(e, n, parity=Parity.EVEN) == 1
    for n in range(1, 101, 2):
        assert at(e, n, parity=Parity.ODD) == 0


def test_E_eval_matches_expr():
    x = Fraction(1)
    for n in (1, 2, 10, 40):
        assert E_eval(x, n) == at(E_expr(), n, x=x)


def test_E_expansion_consistency():
    """Term-by-term binomial coefficients resum to E_eval exactly."""
    for x in (Fraction(1), Fraction(-2, 3), Fraction(5, 4)):
        for n in (1, 2, 3, 7, 20, 50):
            expansion = E_partial_sum(con(x), n + 1)
            assert at(expansion, n) == E_eval(x, n), (x, n)


def test_E_term_coefficient_shape():
    c0 = E_term_coefficient(0)
    assert at(c0, 9) == 1
    c2 = E_term_coefficient(2)
    assert at(c2, 4) == Fraction(4 * 3, 4 * 4 * 2)
    with pytest.raises(ValueError):
        E_term_coefficient(-1)


def test_E_eval_monotone_gap_to_e():
    """e - (1 + 1/n)^n shrinks roughly like e/(2n) under doubling."""
    import grossum.scalar as S

    e_ref = S.num_exp(Fraction(1), 64)
    prev = None
    for k in range(6, 17):
        gap = S.num_sub(e_ref, E_eval(Fraction(1), 2**k, precision=64))
        assert S.num_cmp_real(gap, 0) > 0
        if prev is not None:
            ratio = S.num_div(gap, prev)
            assert S.num_cmp_real(ratio, Fraction(45, 100)) > 0
            assert S.num_cmp_real(ratio, Fraction(55, 100)) < 0
        prev = gap


def test_builtin_sets_enumerate():
    assert naturals().members(6) == [1, 2, 3, 4, 5, 6]
    assert evens().members(4) == [2, 4, 6, 8]
    assert odds().members(4) == [1, 3, 5, 7]
    assert squares().members(5) == [1, 4, 9, 16, 25]


def test_set_sizes_are_generic_expressions():
    assert to_string(generic_set_size(naturals())) == "G"
    assert to_string(generic_set_size(evens())) == "G"
    assert to_string(generic_set_size(odds())) == "G"
    assert to_string(generic_set_size(squares())) == "G"
    assert to_string(generic_set_size(evens_inside())) == "G/2"


def test_evens_inside_needs_even_G():
    s = evens_inside()
    assert s.members(10, parity=Parity.EVEN) == [2, 4, 6, 8, 10]
    with pytest.raises(EvaluationError):
        s.members(9)


def test_membership_lookup():
    sq = squares()
    assert sq.contains(49)
    assert not sq.contains(50)
    ev = evens()
    assert ev.contains(2 * 10**9)
    assert not ev.contains(3)


def test_kth_and_bound_at():
    assert squares().kth(12) == 144
    assert naturals().bound_at(77) == 77
    assert evens_inside().bound_at(40, parity=Parity.EVEN) == 20


def test_set_construction_rejections():
    with pytest.raises(EvaluationError):
        GenericSet("bad", Sub(Var("k"), con(1)))
    with pytest.raises(NonInjectiveMap):
        GenericSet("flat", con(7))
    with pytest.raises(EvaluationError):
        GenericSet("stray", Mul(Var("q"), con(2)))


def test_size_formula_sweep_catches_lies():
    wrong = GenericSet(
        "wrongsize", Var("k"), size=Sub(G, con(1))
    )
    with pytest.raises(EvaluationError) as ei:
        generic_set_size(wrong)
    assert "disagrees" in str(ei.value)


def test_pigeonhole_identity_and_shift():
    nats = naturals()
    assert pigeonhole_check(nats, 40, lambda v: v)
    assert pigeonhole_check(nats, 40, lambda v: v % 40 + 1)
    assert pigeonhole_check(nats, 40, lambda v: 7)
    with pytest.raises(EvaluationError):
        pigeonhole_check(nats, 40, lambda v: v + 1)


def test_pigeonhole_on_even_set():
    assert pigeonhole_check(evens(), 25, lambda v: v)
    collapses = pigeonhole_check(evens(), 25, lambda v: 2)
    assert collapses
