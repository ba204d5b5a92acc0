"""Generic Riemann integration and the two non-circular pi formulas.

The quadrature walks the node layout k/N for k in [-N**2, N**2] with
every weight equal to 1/N, so a symbolic integrand instantiated at a
concrete N produces one big (often exact) Riemann sum.  The pi side
of the module builds the constant from square roots alone: a chain of
principal half-angle roots of -1, and Viete's nested radical product.
Both avoid trigonometric constants, which is what makes them usable
as independent checks on the kernel's own Machin series.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import scalar as S
from .errors import EvaluationError
from .expr import Bindings, GrossExpr, free_vars, instantiate

ROOT_CHAIN_LIMIT = 64

# pi to 210 significant digits, straight from the kernel's Machin
# series at elevated precision; the leading 205 digits were checked
# against the classical published expansion before freezing.  Used as
# the abs-error reference in reports so that error columns do not
# silently depend on the code under test.
PI_REF_DIGITS = (
    "3.14159265358979323846264338327950288419716939937510582097494459"
    "2307816406286208998628034825342117067982148086513282306647093844"
    "6095505822317253594081284811174502841027019385211055596446229489"
    "5493038196442881098"
)


def pi_reference(precision=None):
    """The reference pi as a Real at the requested precision.

    Precisions within the stored 210 digits reuse the frozen constant;
    anything deeper falls back to a fresh Machin evaluation.
    """
    prec = precision or S.DEFAULT_PRECISION
    S._check_precision(prec)
    if prec <= 200:
        return S.to_precision(S.numeric_from_string(PI_REF_DIGITS), prec)
    return S.real_pi(prec)


@dataclass(frozen=True)
class QuadratureSpec:
    """Node and weight layout for one generic Riemann sum.

    Nodes sit at k/N for k from -N**2 to N**2 and every weight is 1/N,
    covering [-N, N] in steps of 1/N with 2*N**2 + 1 nodes in total.
    """

    integrand: GrossExpr
    N: int
    var: str = "x"

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be at least 1, got {self.N}")
        stray = free_vars(self.integrand) - {self.var}
        if stray:
            raise ValueError(
                f"integrand may only use the quadrature variable "
                f"{self.var!r}; found {sorted(stray)}")

    @property
    def step(self):
        return Fraction(1, self.N)

    @property
    def node_count(self):
        return 2 * self.N ** 2 + 1


def generic_integral(spec, precision=None):
    """Evaluate the Riemann sum of a QuadratureSpec, ascending in k.

    Rational integrands stay exact all the way through; anything
    inexact is accumulated with eight guard digits and rounded once at
    the end.  A node failure is reported with the offending k and x.
    """
    prec = precision or S.DEFAULT_PRECISION
    S._check_precision(prec)
    wp = prec + 8
    nsq = spec.N ** 2
    acc = Fraction(0)
    for k in range(-nsq, nsq + 1):
        x = Fraction(k, spec.N)
        binds = Bindings(grossone=spec.N, vars={spec.var: x})
        try:
            value = instantiate(spec.integrand, binds, precision=wp)
        except EvaluationError as ex:
            raise EvaluationError(
                f"integrand failed at node k={k} (x = {x}): {ex}") from ex
        acc = S.num_add(acc, value)
    total = S.num_mul(acc, spec.step)
    return total if S.is_exact(total) else S.to_precision(total, prec)


def euler_generic(theta, N, precision=None):
    """(1 + i*theta/N)**N, the finite stand-in for cos(theta) + i*sin(theta).

    Rational theta goes through binary powering on exact complex
    rationals (num_pow applies its documented size cutoff once the
    result would be astronomically wide); inexact theta is powered at
    working precision from the start.
    """
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    if isinstance(theta, int):
        theta = Fraction(theta)
    if isinstance(theta, S.QComplex) and theta.im == 0:
        theta = theta.re
    if isinstance(theta, Fraction):
        base = S.QComplex(Fraction(1), theta / N)
        return S.num_pow(base, Fraction(N), precision)
    if not S.is_real_kind(theta):
        raise EvaluationError("euler_generic takes a real angle")
    prec = precision or S.precision_of(theta) or S.DEFAULT_PRECISION
    ratio = S.num_div(theta, Fraction(N))
    base = S.Complex(S.Real.from_fraction(Fraction(1), prec),
                     S._as_real(ratio, prec))
    return S.num_pow(base, Fraction(N), prec)


def pi_root_formula(N, precision=None):
    """2**N times the imaginary part of the N-fold principal root of -1.

    The chain r_0 = -1, r_{k+1} = sqrt(r_k) climbs the upper unit
    circle toward 1 on half-angle square roots only, so no
    trigonometric constant enters.  Working precision grows with N:
    the final imaginary part is recovered from 1 - Re(r_N), which
    shrinks like 4**-N, and the lost digits must be paid for up front.
    """
    if not 1 <= N <= ROOT_CHAIN_LIMIT:
        raise ValueError(
            f"N must be between 1 and {ROOT_CHAIN_LIMIT}, got {N}")
    prec = precision or S.DEFAULT_PRECISION
    S._check_precision(prec)
    wp = prec + 8 + (602 * N) // 1000 + 1
    a, b = Fraction(-1), Fraction(0)
    for _ in range(N):
        root = S.sqrt_unit_halfangle(a, b, wp)
        a, b = root.re, root.im
    out = S.num_mul(Fraction(2 ** N), b)
    return out if S.is_exact(out) else S.to_precision(out, prec)


def viete_product(K, precision=None):
    """Viete's nested radical: 2 divided by the K-factor cosine product.

    c_1 = sqrt(1/2), c_{j+1} = sqrt(1/2 + c_j/2); the result is purely
    real and lands about 4**-K away from pi.
    """
    if K < 1:
        raise ValueError(f"K must be at least 1, got {K}")
    prec = precision or S.DEFAULT_PRECISION
    S._check_precision(prec)
    wp = prec + 8
    c = S.principal_nth_root(Fraction(1, 2), 2, wp)
    prod = c
    for _ in range(K - 1):
        inner = S.num_add(Fraction(1, 2), S.num_div(c, Fraction(2)))
        c = S.principal_nth_root(inner, 2, wp)
        prod = S.num_mul(prod, c)
    return S.to_precision(S.num_div(Fraction(2), prod), prec)
