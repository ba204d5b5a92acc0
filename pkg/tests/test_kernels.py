"""Kernel-level checks: mpmath oracle agreement and backend parity.

The kernels work on scaled integers (man, exp) meaning man * 10**exp.
mpmath is used here purely as a test oracle at elevated precision; the
package itself never imports it.
"""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grossum import _kernels_py as P

try:
    from grossum import _kernels_cy as C
except ImportError:
    C = None

PREC = 48


def to_mpf(man, exp):
    with mpmath.workdps(200):
        return mpmath.mpf(man) * mpmath.mpf(10) ** exp


def agrees(got, want, digits):
    """True when got is within 10**-digits relative of want."""
    with mpmath.workdps(200):
        if want == 0:
            return abs(got) < mpmath.mpf(10) ** (-digits)
        return abs(got - want) <= abs(want) * mpmath.mpf(10) ** (-digits)


def test_pow10_and_digits10():
    assert P.pow10(0) == 1
    assert P.pow10(7) == 10_000_000
    with pytest.raises(ValueError):
        P.pow10(-1)
    assert P.digits10(0) == 1
    assert P.digits10(9) == 1
    assert P.digits10(10) == 2
    assert P.digits10(-999) == 3
    assert P.digits10(10**40) == 41


def test_round_div_half_even():
    assert P.round_div(5, 10) == 0
    assert P.round_div(15, 10) == 2
    assert P.round_div(25, 10) == 2
    assert P.round_div(-5, 10) == 0
    assert P.round_div(-15, 10) == -2
    assert P.round_div(7, 2) == 4
    assert P.round_div(-7, 2) == -4


def test_to_int_nearest():
    assert P.to_int_nearest(25, -1) == 2
    assert P.to_int_nearest(35, -1) == 4
    assert P.to_int_nearest(-25, -1) == -2
    assert P.to_int_nearest(123, 2) == 12300


def test_normalize_idempotent():
    man, exp = P.normalize(123456789, -4, 5)
    assert (man, exp) == P.normalize(man, exp, 5)
    assert P.digits10(man) <= 5


def test_inth_root_bracket():
    for n in (1, 2, 3, 10, 12345, 10**30 + 7):
        for k in (1, 2, 3, 5):
            r = P.inth_root(n, k)
            assert r**k <= n < (r + 1) ** k


def test_sieve_primes_small():
    assert P.sieve_primes(1) == []
    assert P.sieve_primes(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(P.sieve_primes(1000)) == 168


@pytest.mark.parametrize(
    "fn,oracle",
    [
        ("exp_mp", mpmath.exp),
        ("ln_mp", mpmath.log),
        ("atan_mp", mpmath.atan),
        ("sin_mp", mpmath.sin),
        ("cos_mp", mpmath.cos),
        ("sqrt_mp", mpmath.sqrt),
    ],
)
def test_transcendental_oracle(fn, oracle):
    """Each kernel function matches mpmath to nearly full precision."""
    points = [
        (1, 0),
        (5, -1),
        (25, -1),
        (1, -6),
        (123456, -5),
        (7, 0),
    ]
    if fn not in ("ln_mp", "sqrt_mp"):
        points += [(-3, 0), (-17, -1)]
    kern = getattr(P, fn)
    for man, exp in points:
        got_m, got_e = kern(man, exp, PREC)
        with mpmath.workdps(200):
            want = oracle(to_mpf(man, exp))
        assert agrees(to_mpf(got_m, got_e), want, PREC - 2), (fn, man, exp)


def test_exp_large_and_tiny_arguments():
    with mpmath.workdps(200):
        for man, exp in [(50, 0), (-50, 0), (1, -30), (999, -3)]:
            got = to_mpf(*P.exp_mp(man, exp, PREC))
            assert agrees(got, mpmath.exp(to_mpf(man, exp)), PREC - 2)


def test_pi_oracle():
    got = to_mpf(*P.pi_mp(60))
    with mpmath.workdps(120):
        assert agrees(got, mpmath.pi, 58)


def test_trig_argument_reduction():
    """sin/cos stay accurate for arguments many periods from zero."""
    with mpmath.workdps(200):
        for man, exp in [(1000, 0), (-31416, -4), (271828, -2)]:
            s = to_mpf(*P.sin_mp(man, exp, PREC))
            c = to_mpf(*P.cos_mp(man, exp, PREC))
            x = to_mpf(man, exp)
            assert agrees(s, mpmath.sin(x), PREC - 3)
            assert agrees(c, mpmath.cos(x), PREC - 3)


@given(
    m1=st.integers(-(10**20), 10**20),
    e1=st.integers(-25, 25),
    m2=st.integers(-(10**20), 10**20),
    e2=st.integers(-25, 25),
)
@settings(max_examples=150, deadline=None)
def test_field_ops_match_fractions(m1, e1, m2, e2):
    """add/sub/mul/div agree with exact Fraction arithmetic to prec-1."""
    a = Fraction(m1) * Fraction(10) ** e1
    b = Fraction(m2) * Fraction(10) ** e2

    def check(got, want):
        gm, ge = got
        gv = Fraction(gm) * Fraction(10) ** ge
        if want == 0:
            assert gv == 0
        else:
            assert abs(gv - want) <= abs(want) * Fraction(10) ** (-(PREC - 1))

    check(P.add_mp(m1, e1, m2, e2, PREC), a + b)
    check(P.sub_mp(m1, e1, m2, e2, PREC), a - b)
    check(P.mul_mp(m1, e1, m2, e2, PREC), a * b)
    if b != 0:
        check(P.div_mp(m1, e1, m2, e2, PREC), a / b)


@given(m=st.integers(0, 10**30), e=st.integers(-20, 20))
@settings(max_examples=100, deadline=None)
def test_sqrt_squares_back(m, e):
    rm, re = P.sqrt_mp(m, e, PREC)
    sm, se = P.mul_mp(rm, re, rm, re, PREC)
    want = Fraction(m) * Fraction(10) ** e
    got = Fraction(sm) * Fraction(10) ** se
    if want == 0:
        assert got == 0
    else:
        assert abs(got - want) <= want * Fraction(10) ** (-(PREC - 2))


def test_cmp_mp_orders_like_values():
    cases = [(1, 0, 1, 0), (5, -1, 1, 0), (10, -1, 1, 0), (-2, 0, 3, -1)]
    for m1, e1, m2, e2 in cases:
        a = Fraction(m1) * Fraction(10) ** e1
        b = Fraction(m2) * Fraction(10) ** e2
        want = (a > b) - (a < b)
        assert P.cmp_mp(m1, e1, m2, e2) == want


# Backend parity: the compiled module must return bit-identical integers.

pytestmark_parity = pytest.mark.skipif(C is None, reason="compiled backend absent")

UNARY_PREC = ["normalize", "sqrt_mp", "exp_mp", "sin_mp", "cos_mp", "atan_mp"]


def outcome(mod, name, *args):
    """Pair (result, None) or (None, exception type) for one backend call."""
    try:
        return getattr(mod, name)(*args), None
    except (ValueError, ZeroDivisionError) as ex:
        return None, type(ex).__name__


@pytest.mark.skipif(C is None, reason="compiled backend absent")
@given(
    man=st.integers(-(10**25), 10**25),
    exp=st.integers(-30, 30),
    prec=st.integers(16, 80),
)
@settings(max_examples=120, deadline=None)
def test_parity_unary(man, exp, prec):
    """Both backends return the same integers or raise the same error."""
    names = UNARY_PREC + (["ln_mp"] if man > 0 else [])
    for name in names:
        if name == "sqrt_mp" and man < 0:
            continue
        assert outcome(P, name, man, exp, prec) == outcome(
            C, name, man, exp, prec
        ), name


@pytest.mark.skipif(C is None, reason="compiled backend absent")
@given(
    m1=st.integers(-(10**25), 10**25),
    e1=st.integers(-30, 30),
    m2=st.integers(-(10**25), 10**25),
    e2=st.integers(-30, 30),
    prec=st.integers(16, 80),
)
@settings(max_examples=120, deadline=None)
def test_parity_binary(m1, e1, m2, e2, prec):
    for name in ["add_mp", "sub_mp", "mul_mp"]:
        assert getattr(P, name)(m1, e1, m2, e2, prec) == getattr(C, name)(
            m1, e1, m2, e2, prec
        ), name
    if m2 != 0:
        assert P.div_mp(m1, e1, m2, e2, prec) == C.div_mp(m1, e1, m2, e2, prec)
    assert P.cmp_mp(m1, e1, m2, e2) == C.cmp_mp(m1, e1, m2, e2)


@pytest.mark.skipif(C is None, reason="compiled backend absent")
def test_parity_pi_and_helpers():
    for prec in (16, 32, 64, 100):
        assert P.pi_mp(prec) == C.pi_mp(prec)
    for n in (0, 1, 7, 12345, 10**18 + 9):
        assert P.digits10(n) == C.digits10(n)
        if n > 0:
            for k in (1, 2, 3, 7):
                assert P.inth_root(n, k) == C.inth_root(n, k)
    assert P.sieve_primes(10_000) == C.sieve_primes(10_000)
    for a, b in [(7, 2), (-7, 2), (25, 10), (-25, 10), (0, 5)]:
        assert P.round_div(a, b) == C.round_div(a, b)
        assert P.tdiv(a, b) == C.tdiv(a, b)
