"""Analysis-lab checks: generic quadrature, Euler powers, pi formulas."""

from fractions import Fraction

import mpmath
import pytest

import grossum.scalar as S
from grossum.analysis import (
    QuadratureSpec,
    euler_generic,
    generic_integral,
    pi_reference,
    pi_root_formula,
    viete_product,
)
from grossum.errors import EvaluationError
from grossum.expr import Bindings, instantiate
from grossum.parser import parse
from grossum.verdicts import NSchedule, dot_equal


def gap(a, b, prec=80):
    return S.modulus(S.num_sub(a, b), prec)


def below(x, bound):
    return S.is_zero(x) or S.num_cmp_real(x, bound) < 0


def test_pi_reference_against_mpmath():
    for prec in (16, 64, 128, 200, 220):
        got = pi_reference(prec)
        with mpmath.workdps(prec + 10):
            assert abs(
                mpmath.mpf(S.decimal_str(got)) - mpmath.pi
            ) < mpmath.mpf(10) ** (-(prec - 1)), prec


def test_quadrature_spec_shape():
    spec = QuadratureSpec(parse("x^2"), 7)
    assert spec.step == Fraction(1, 7)
    assert spec.node_count == 2 * 49 + 1
    with pytest.raises(ValueError):
        QuadratureSpec(parse("x + y"), 5)
    with pytest.raises(ValueError):
        QuadratureSpec(parse("x"), 0)
    QuadratureSpec(parse("t^3"), 3, var="t")


def test_constant_integrand_exact():
    """Integrating 1 over the node set counts nodes times the step."""
    spec = QuadratureSpec(parse("1"), 10)
    assert generic_integral(spec) == Fraction(201, 10)


def test_polynomial_integrand_exact():
    spec = QuadratureSpec(parse("x"), 8)
    assert generic_integral(spec) == 0
    spec2 = QuadratureSpec(parse("x^3 - 2*x"), 6)
    assert generic_integral(spec2) == 0


def test_odd_integrand_cancels_approximately():
    prec = 32
    spec = QuadratureSpec(parse("sin(x)"), 12)
    out = generic_integral(spec, precision=prec)
    assert below(gap(out, Fraction(0)), Fraction(1, 10 ** (prec - 4)))


def test_gaussian_integral_super_convergent():
    """exp(-x^2/2) summed at N=20 already matches sqrt(2*pi) deeply."""
    spec = QuadratureSpec(parse("exp(0 - x^2/2)"), 20)
    out = generic_integral(spec, precision=32)
    with mpmath.workdps(60):
        want = mpmath.sqrt(2 * mpmath.pi)
        got = mpmath.mpf(S.decimal_str(out))
        assert abs(got - want) < mpmath.mpf(10) ** -25


def test_node_failure_is_located():
    spec = QuadratureSpec(parse("1/x"), 3)
    with pytest.raises(EvaluationError) as ei:
        generic_integral(spec)
    msg = str(ei.value)
    assert "k=0" in msg and "x = 0" in msg


def test_euler_generic_exact_modulus():
    """|(1 + i*t/N)^N|^2 equals (1 + t^2/N^2)^N exactly."""
    t = Fraction(3, 7)
    for n in (2, 4, 16, 64):
        z = euler_generic(t, n)
        assert isinstance(z, S.QComplex)
        mod2 = z.re * z.re + z.im * z.im
        assert mod2 == (1 + t * t / (n * n)) ** n


def test_euler_generic_modulus_decreasing():
    t = Fraction(2)
    prev = None
    for n in (2, 4, 8, 16, 32, 64, 128, 256):
        z = euler_generic(t, n)
        mod2 = z.re * z.re + z.im * z.im
        assert mod2 > 1
        if prev is not None:
            assert mod2 < prev
        prev = mod2


def test_euler_generic_argument_rules():
    assert euler_generic(1, 4) == euler_generic(Fraction(1), 4)
    wrapped = S.QComplex(Fraction(1, 2), Fraction(0))
    assert euler_generic(wrapped, 8) == euler_generic(Fraction(1, 2), 8)
    with pytest.raises(EvaluationError):
        euler_generic(S.QComplex(Fraction(1), Fraction(2)), 8)


def test_euler_generic_matches_expression_family():
    """The function agrees with the (1 + t*sqrt(-1)/G)^G tree."""
    e = parse("(1 + (1/2)*sqrt(-1)/G)^G")
    for n in (3, 10, 50):
        assert euler_generic(Fraction(1, 2), n) == instantiate(
            e, Bindings(grossone=n)
        )


@pytest.mark.parametrize("theta", ["1/2", "1", "2"])
def test_euler_generic_dot_equal_circle(theta):
    """Short ladder on purpose: near G = 2^18 the exact complex power
    sits just under the demotion cap and costs megadigit arithmetic."""
    lhs = parse(f"(1 + ({theta})*sqrt(-1)/G)^G")
    rhs = parse(f"cos({theta}) + sin({theta})*sqrt(-1)")
    v = dot_equal(lhs, rhs, schedule=NSchedule(lo=2**8, hi=2**14, factor=4))
    assert v.outcome == "Holds", theta


def test_pi_root_formula_values():
    assert pi_root_formula(1) == 2
    two_root_two = pi_root_formula(2)
    assert below(
        gap(two_root_two, S.num_mul(Fraction(2), S.num_pow(
            Fraction(2), Fraction(1, 2), 64))),
        Fraction(1, 10**60),
    )
    err = gap(pi_root_formula(20), pi_reference(64))
    assert below(err, Fraction(5, 10**12))
    assert not below(err, Fraction(1, 10**13))


def test_pi_root_formula_deep():
    err = gap(pi_root_formula(64), pi_reference(64))
    assert below(err, Fraction(1, 10**37))


def test_viete_product_values():
    err30 = gap(viete_product(30), pi_reference(64))
    assert below(err30, Fraction(1, 10**15))
    with pytest.raises(ValueError):
        viete_product(0)
    with pytest.raises(ValueError):
        pi_root_formula(0)
    with pytest.raises(ValueError):
        pi_root_formula(65)


def test_cross_formula_agreement():
    """viete(K) and root(K+1) compute the same quantity."""
    prec = 64
    for k in (1, 5, 10, 20):
        d = gap(viete_product(k, prec), pi_root_formula(k + 1, prec))
        assert below(d, Fraction(1, 10 ** (prec - 6))), k


def test_error_quartering():
    ref = pi_reference(80)
    for formula in (pi_root_formula, viete_product):
        errors = {}
        for k in range(10, 20):
            errors[k] = gap(formula(k, 80), ref)
        for k in range(10, 19):
            ratio = S.num_div(errors[k + 1], errors[k])
            assert S.num_cmp_real(ratio, Fraction(2495, 10**4)) > 0
            assert S.num_cmp_real(ratio, Fraction(2505, 10**4)) < 0
