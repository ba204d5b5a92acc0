"""Scalar numeric tower.

Four value kinds flow through the package:

* ``fractions.Fraction``  -- exact rationals (the stdlib type is used
  directly; nothing here reimplements rational arithmetic),
* ``QComplex``            -- exact complex numbers with rational parts,
* ``Real``                -- arbitrary-precision decimal floats backed
  by the integer kernels,
* ``Complex``             -- a pair of Reals.

Exactness is sticky: operations on exact operands stay exact, and a
value only becomes approximate through an explicit ``to_precision`` call
or by meeting an approximate operand (the result then carries the
smaller precision of the two sides).  Hardware floats never appear.
"""

from fractions import Fraction
from math import isqrt

from . import kernels as K
from .errors import (
    DivisionByZero,
    EvaluationError,
    NotUnitModulus,
    UnsupportedExact,
    ZeroInput,
)

DEFAULT_PRECISION = 64
MIN_PRECISION = 16

# Exact integer powers whose printed size would pass this many digits
# fall back to rounded evaluation (see num_pow).
EXACT_POW_DIGIT_CAP = 4_000_000


def _check_precision(prec):
    if prec < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} digits")
    return prec


class Real:
    """A decimal float ``man * 10**exp`` carrying prec significant digits."""

    __slots__ = ("man", "exp", "prec")

    def __init__(self, man, exp=0, prec=DEFAULT_PRECISION):
        _check_precision(prec)
        man, exp = K.normalize(man, exp, prec)
        self.man = man
        self.exp = exp
        self.prec = prec

    @classmethod
    def _raw(cls, man, exp, prec):
        # internal: trusts (man, exp) to be normalized already
        obj = object.__new__(cls)
        obj.man = man
        obj.exp = exp
        obj.prec = prec
        return obj

    @classmethod
    def from_fraction(cls, fr, prec=DEFAULT_PRECISION):
        _check_precision(prec)
        fr = Fraction(fr)
        if fr.denominator == 1:
            return cls(fr.numerator, 0, prec)
        man, exp = K.div_mp(fr.numerator, 0, fr.denominator, 0, prec)
        return cls._raw(man, exp, prec)

    def to_fraction(self):
        """The exact rational value of this float."""
        if self.exp >= 0:
            return Fraction(self.man * K.pow10(self.exp))
        return Fraction(self.man, K.pow10(-self.exp))

    def is_zero(self):
        return self.man == 0

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Real):
            return other
        if isinstance(other, int):
            return Real(other, 0, self.prec)
        if isinstance(other, Fraction):
            return Real.from_fraction(other, self.prec)
        return None

    def __add__(self, other):
        return num_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return num_sub(self, other)

    def __rsub__(self, other):
        return num_sub(other, self)

    def __mul__(self, other):
        return num_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return num_div(self, other)

    def __rtruediv__(self, other):
        return num_div(other, self)

    def __pow__(self, other):
        return num_pow(self, other, self.prec)

    def __rpow__(self, other):
        return num_pow(other, self, self.prec)

    def __neg__(self):
        return Real._raw(-self.man, self.exp, self.prec)

    def __abs__(self):
        return Real._raw(abs(self.man), self.exp, self.prec)

    def _cmp(self, other):
        if isinstance(other, Real):
            return K.cmp_mp(self.man, self.exp, other.man, other.exp)
        if isinstance(other, (int, Fraction)):
            # exact comparison: man*10^exp vs p/q without rounding
            fr = Fraction(other)
            return K.cmp_mp(
                self.man * fr.denominator, self.exp, fr.numerator, 0
            )
        return NotImplemented

    def __eq__(self, other):
        c = self._cmp(other)
        return c == 0 if c is not NotImplemented else NotImplemented

    def __lt__(self, other):
        c = self._cmp(other)
        return c < 0 if c is not NotImplemented else NotImplemented

    def __le__(self, other):
        c = self._cmp(other)
        return c <= 0 if c is not NotImplemented else NotImplemented

    def __gt__(self, other):
        c = self._cmp(other)
        return c > 0 if c is not NotImplemented else NotImplemented

    def __ge__(self, other):
        c = self._cmp(other)
        return c >= 0 if c is not NotImplemented else NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __bool__(self):
        return self.man != 0

    # -- kernel-backed functions ---------------------------------------

    def sqrt(self):
        if self.man < 0:
            raise EvaluationError(
                "sqrt of a negative real; use principal_nth_root for the "
                "complex branch"
            )
        man, exp = K.sqrt_mp(self.man, self.exp, self.prec)
        return Real._raw(man, exp, self.prec)

    def ln(self):
        if self.man <= 0:
            raise EvaluationError("ln needs a positive real")
        man, exp = K.ln_mp(self.man, self.exp, self.prec)
        return Real._raw(man, exp, self.prec)

    def sin(self):
        try:
            man, exp = K.sin_mp(self.man, self.exp, self.prec)
        except ValueError as e:
            raise EvaluationError(str(e)) from None
        return Real._raw(man, exp, self.prec)

    def cos(self):
        try:
            man, exp = K.cos_mp(self.man, self.exp, self.prec)
        except ValueError as e:
            raise EvaluationError(str(e)) from None
        return Real._raw(man, exp, self.prec)

    def atan(self):
        man, exp = K.atan_mp(self.man, self.exp, self.prec)
        return Real._raw(man, exp, self.prec)

    def __str__(self):
        return decimal_str(self)

    def __repr__(self):
        return f"Real('{decimal_str(self)}', prec={self.prec})"


def real_pi(prec=DEFAULT_PRECISION):
    """pi as a Real, computed by the kernel (Machin series)."""
    _check_precision(prec)
    man, exp = K.pi_mp(prec)
    return Real._raw(man, exp, prec)


class QComplex:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_real(self):
        return self.im == 0

    def conjugate(self):
        return QComplex(self.re, -self.im)

    def abs2(self):
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        return num_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return num_sub(self, other)

    def __rsub__(self, other):
        return num_sub(other, self)

    def __mul__(self, other):
        return num_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return num_div(self, other)

    def __rtruediv__(self, other):
        return num_div(other, self)

    def __pow__(self, other):
        return num_pow(self, other)

    def __rpow__(self, other):
        return num_pow(other, self)

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, QComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"QComplex({self.re!r}, {self.im!r})"


class Complex:
    """Approximate complex number: a pair of Reals at a shared precision."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        if not isinstance(re, Real) or not isinstance(im, Real):
            raise TypeError("Complex parts must be Real")
        prec = min(re.prec, im.prec)
        self.re = re if re.prec == prec else Real(re.man, re.exp, prec)
        self.im = im if im.prec == prec else Real(im.man, im.exp, prec)

    @property
    def prec(self):
        return self.re.prec

    @classmethod
    def from_numeric(cls, z, prec):
        z = _promote_to_complex(z, prec)
        return z

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def conjugate(self):
        return Complex(self.re, -self.im)

    def __add__(self, other):
        return num_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return num_sub(self, other)

    def __rsub__(self, other):
        return num_sub(other, self)

    def __mul__(self, other):
        return num_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return num_div(self, other)

    def __rtruediv__(self, other):
        return num_div(other, self)

    def __pow__(self, other):
        return num_pow(self, other, self.prec)

    def __rpow__(self, other):
        return num_pow(other, self, self.prec)

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, QComplex, Real, Complex)):
            return NotImplemented
        other = _promote_to_complex(other, self.prec)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im.is_zero():
            return hash(self.re)
        return hash((self.re.to_fraction(), self.im.to_fraction()))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Complex({self.re!r}, {self.im!r})"


Numeric = (Fraction, QComplex, Real, Complex)


# ----------------------------------------------------------------------
# kind inspection and promotion
# ----------------------------------------------------------------------

def is_exact(x):
    return isinstance(x, (int, Fraction, QComplex))


def is_real_kind(x):
    """True when x carries no imaginary part (by kind or by value)."""
    if isinstance(x, (int, Fraction, Real)):
        return True
    if isinstance(x, QComplex):
        return x.im == 0
    if isinstance(x, Complex):
        return x.im.is_zero()
    return False


def precision_of(x):
    """The precision of an approximate value, None for exact kinds."""
    if isinstance(x, Real):
        return x.prec
    if isinstance(x, Complex):
        return x.prec
    return None


def kind_of(x):
    if isinstance(x, (int, Fraction)):
        return "rational"
    if isinstance(x, QComplex):
        return "complex-rational"
    if isinstance(x, Real):
        return "real"
    if isinstance(x, Complex):
        return "complex"
    raise TypeError(f"not a Numeric: {x!r}")


def is_zero(x):
    if isinstance(x, int):
        return x == 0
    if isinstance(x, Fraction):
        return x == 0
    return x.is_zero()


def _rank(x):
    if isinstance(x, (int, Fraction)):
        return 0
    if isinstance(x, QComplex):
        return 1
    if isinstance(x, Real):
        return 2
    if isinstance(x, Complex):
        return 3
    raise TypeError(f"not a Numeric: {x!r}")


def _promote_to_complex(x, prec):
    if isinstance(x, Complex):
        return x
    if isinstance(x, Real):
        return Complex(x, Real(0, 0, x.prec))
    if isinstance(x, QComplex):
        return Complex(
            Real.from_fraction(x.re, prec), Real.from_fraction(x.im, prec)
        )
    return Complex(Real.from_fraction(Fraction(x), prec), Real(0, 0, prec))


def _promote(a, b):
    """Bring two Numerics to a common kind (the laxer of the two)."""
    ra, rb = _rank(a), _rank(b)
    hi = max(ra, rb)
    if hi == 0:
        return Fraction(a), Fraction(b)
    if hi == 1:
        if ra == 0:
            a = QComplex(a)
        if rb == 0:
            b = QComplex(b)
        return a, b
    if hi == 2 and min(ra, rb) == 1:
        # QComplex meets Real: real-valued demotes, genuinely complex
        # drags the pair up to Complex
        if ra == 1 and a.im == 0:
            a, ra = a.re, 0
        elif rb == 1 and b.im == 0:
            b, rb = b.re, 0
        else:
            hi = 3
    if hi == 2:
        prec = min(p for p in (precision_of(a), precision_of(b)) if p)
        if ra < 2:
            a = Real.from_fraction(Fraction(a), prec)
        if rb < 2:
            b = Real.from_fraction(Fraction(b), prec)
        return a, b
    precs = [p for p in (precision_of(a), precision_of(b)) if p]
    prec = min(precs) if precs else DEFAULT_PRECISION
    return _promote_to_complex(a, prec), _promote_to_complex(b, prec)


# ----------------------------------------------------------------------
# arithmetic dispatch
# ----------------------------------------------------------------------

def num_add(a, b):
    a, b = _promote(a, b)
    if isinstance(a, Fraction):
        return a + b
    if isinstance(a, QComplex):
        return QComplex(a.re + b.re, a.im + b.im)
    if isinstance(a, Real):
        prec = min(a.prec, b.prec)
        return Real._raw(*K.add_mp(a.man, a.exp, b.man, b.exp, prec), prec)
    return Complex(num_add(a.re, b.re), num_add(a.im, b.im))


def num_sub(a, b):
    return num_add(a, num_neg(b))


def num_neg(x):
    if isinstance(x, int):
        return Fraction(-x)
    return -x


def num_mul(a, b):
    a, b = _promote(a, b)
    if isinstance(a, Fraction):
        return a * b
    if isinstance(a, QComplex):
        return QComplex(
            a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re
        )
    if isinstance(a, Real):
        prec = min(a.prec, b.prec)
        return Real._raw(*K.mul_mp(a.man, a.exp, b.man, b.exp, prec), prec)
    return Complex(
        num_sub(num_mul(a.re, b.re), num_mul(a.im, b.im)),
        num_add(num_mul(a.re, b.im), num_mul(a.im, b.re)),
    )


def num_div(a, b):
    a, b = _promote(a, b)
    if is_zero(b):
        raise DivisionByZero("division by zero")
    if isinstance(a, Fraction):
        return a / b
    if isinstance(a, QComplex):
        d = b.abs2()
        n = num_mul(a, b.conjugate())
        return QComplex(n.re / d, n.im / d)
    if isinstance(a, Real):
        prec = min(a.prec, b.prec)
        return Real._raw(*K.div_mp(a.man, a.exp, b.man, b.exp, prec), prec)
    d = num_add(num_mul(b.re, b.re), num_mul(b.im, b.im))
    n = num_mul(a, b.conjugate())
    return Complex(num_div(n.re, d), num_div(n.im, d))


def _exact_digit_size(x):
    if isinstance(x, (int, Fraction)):
        fr = Fraction(x)
        return K.digits10(fr.numerator) + K.digits10(fr.denominator)
    return (
        K.digits10(x.re.numerator)
        + K.digits10(x.re.denominator)
        + K.digits10(x.im.numerator)
        + K.digits10(x.im.denominator)
    )


def _ipow_rounded(base, e):
    """base**e for e >= 1 by binary powering; rounding rides on num_mul."""
    result = None
    cur = base
    while True:
        if e & 1:
            result = cur if result is None else num_mul(result, cur)
        e >>= 1
        if not e:
            return result
        cur = num_mul(cur, cur)


def num_pow(base, exponent, precision=None):
    """base**exponent under principal-branch semantics.

    Integer exponents are exact on exact bases, except that results whose
    printed size would exceed EXACT_POW_DIGIT_CAP digits are evaluated at
    working precision instead (a documented concession: a verdict sweep
    at N = 2**24 cannot carry quarter-gigabyte rationals).  Fractional
    exponents p/q with p == 1, and any fractional exponent on a positive
    real base, go through principal_nth_root; everything else uses
    exp(w * Log z) on the principal logarithm.
    """
    if isinstance(exponent, int):
        exponent = Fraction(exponent)
    if isinstance(exponent, QComplex) and exponent.im == 0:
        exponent = exponent.re
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        e = exponent.numerator
        if e == 0:
            return Fraction(1)  # includes 0**0 == 1 by convention
        if is_zero(base):
            if e < 0:
                raise DivisionByZero("zero base with negative exponent")
            return Fraction(0)
        if isinstance(base, int):
            base = Fraction(base)
        if is_exact(base):
            est = _exact_digit_size(base) * abs(e)
            if est > EXACT_POW_DIGIT_CAP:
                prec = precision or DEFAULT_PRECISION
                if isinstance(base, Fraction):
                    base = Real.from_fraction(base, prec)
                else:
                    base = _promote_to_complex(base, prec)
            elif isinstance(base, Fraction):
                return base ** e
            else:
                inv = e < 0
                r = _ipow_rounded(base, abs(e))
                return num_div(Fraction(1), r) if inv else r
        if e < 0:
            return num_div(Fraction(1), _ipow_rounded(base, -e))
        return _ipow_rounded(base, e)
    prec = precision or precision_of(base) or precision_of(exponent) \
        or DEFAULT_PRECISION
    if is_zero(base):
        if isinstance(exponent, Fraction) and exponent > 0:
            return Fraction(0)
        if isinstance(exponent, Real) and exponent.man > 0:
            return Fraction(0)
        raise DivisionByZero("zero base with nonpositive exponent")
    if isinstance(exponent, Fraction):
        p, q = exponent.numerator, exponent.denominator
        positive_real = is_real_kind(base) and num_cmp_real(base, 0) > 0
        if p == 1 or positive_real:
            t = num_pow(base, Fraction(p), prec)
            return principal_nth_root(t, q, prec)
    w = exponent
    lg = log_principal(base, prec + 4)
    return num_exp(num_mul(w, lg), prec)


def num_cmp_real(a, b):
    """Three-way compare of two real-kind Numerics, exact."""
    if isinstance(a, (QComplex, Complex)):
        a = a.re
    if isinstance(b, (QComplex, Complex)):
        b = b.re
    if isinstance(a, Real) and isinstance(b, Real):
        return K.cmp_mp(a.man, a.exp, b.man, b.exp)
    if isinstance(a, Real):
        fb = Fraction(b)
        return K.cmp_mp(a.man * fb.denominator, a.exp, fb.numerator, 0)
    if isinstance(b, Real):
        fa = Fraction(a)
        return -K.cmp_mp(b.man * fa.denominator, b.exp, fa.numerator, 0)
    fa, fb = Fraction(a), Fraction(b)
    return (fa > fb) - (fa < fb)


# ----------------------------------------------------------------------
# kernel-backed functions on the full tower
# ----------------------------------------------------------------------

def _real_exp(x):
    """e**x for a Real x (kept outside the class: 'exp' is a field name)."""
    try:
        man, exp = K.exp_mp(x.man, x.exp, x.prec)
    except ValueError as e:
        raise EvaluationError(str(e)) from None
    return Real._raw(man, exp, x.prec)


def num_exp(x, prec=DEFAULT_PRECISION):
    if is_zero(x):
        return Fraction(1)
    if is_real_kind(x):
        return _real_exp(_as_real(x, prec))
    z = _promote_to_complex(x, prec)
    mag = _real_exp(z.re)
    return Complex(num_mul(mag, z.im.cos()), num_mul(mag, z.im.sin()))


def num_sin(x, prec=DEFAULT_PRECISION):
    if is_zero(x):
        return Fraction(0)
    if is_real_kind(x):
        return _as_real(x, prec).sin()
    # sin z = (E - 1/E) / 2i with E = exp(iz)
    z = _promote_to_complex(x, prec)
    e = num_exp(Complex(-z.im, z.re), prec)
    d = num_sub(e, num_div(Fraction(1), e))
    return num_div(d, Complex(Real(0, 0, prec), Real(2, 0, prec)))


def num_cos(x, prec=DEFAULT_PRECISION):
    if is_zero(x):
        return Fraction(1)
    if is_real_kind(x):
        return _as_real(x, prec).cos()
    z = _promote_to_complex(x, prec)
    e = num_exp(Complex(-z.im, z.re), prec)
    return num_div(num_add(e, num_div(Fraction(1), e)), 2)


def _as_real(x, prec):
    """Real-kind Numeric -> Real at the given (or inherent) precision."""
    if isinstance(x, Real):
        return x
    if isinstance(x, Complex):
        return x.re
    if isinstance(x, QComplex):
        x = x.re
    return Real.from_fraction(Fraction(x), prec)


def num_re(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, (QComplex, Complex)):
        return x.re
    return x


def num_im(x, prec=DEFAULT_PRECISION):
    if isinstance(x, (int, Fraction)):
        return Fraction(0)
    if isinstance(x, (QComplex, Complex)):
        return x.im
    return Fraction(0)


def exact_sqrt(fr):
    """Square root of a nonnegative Fraction if it is perfect, else None."""
    fr = Fraction(fr)
    if fr < 0:
        raise ValueError("exact_sqrt needs a nonnegative rational")
    rn, rd = isqrt(fr.numerator), isqrt(fr.denominator)
    if rn * rn == fr.numerator and rd * rd == fr.denominator:
        return Fraction(rn, rd)
    return None


def exact_nth_root(fr, n):
    """nth root of a positive Fraction if it is perfect, else None."""
    fr = Fraction(fr)
    if fr <= 0 or n < 1:
        return None
    rn = K.inth_root(fr.numerator, n)
    rd = K.inth_root(fr.denominator, n)
    if rn ** n == fr.numerator and rd ** n == fr.denominator:
        return Fraction(rn, rd)
    return None


def modulus(x, prec=DEFAULT_PRECISION):
    """|x| as an exact Fraction when possible, else a Real."""
    if isinstance(x, int):
        return Fraction(abs(x))
    if isinstance(x, Fraction):
        return abs(x)
    if isinstance(x, QComplex):
        if x.im == 0:
            return abs(x.re)
        a2 = x.abs2()
        r = exact_sqrt(a2)
        if r is not None:
            return r
        return Real.from_fraction(a2, prec).sqrt()
    if isinstance(x, Real):
        return abs(x)
    m2 = num_add(num_mul(x.re, x.re), num_mul(x.im, x.im))
    return m2.sqrt()


def arg_principal(x, prec=DEFAULT_PRECISION):
    """Principal argument in (-pi, pi] as a Real (0 for positive reals)."""
    if is_zero(x):
        raise ZeroInput("argument of zero is undefined")
    if is_real_kind(x):
        if num_cmp_real(x, 0) > 0:
            return Real(0, 0, prec)
        return real_pi(prec)
    z = _promote_to_complex(x, prec)
    prec = z.prec
    xr, yr = z.re, z.im
    if xr.is_zero():
        half = num_div(real_pi(prec), 2)
        return half if yr.man > 0 else -half
    base = num_div(yr, xr).atan()
    if xr.man > 0:
        return base
    pi = real_pi(prec)
    return num_add(base, pi) if yr.man >= 0 else num_sub(base, pi)


def log_principal(x, prec=DEFAULT_PRECISION):
    """Principal logarithm: ln|z| + i arg(z)."""
    if is_zero(x):
        raise ZeroInput("log of zero")
    if is_real_kind(x) and num_cmp_real(x, 0) > 0:
        return _as_real(x, prec).ln()
    m = modulus(x, prec)
    lnm = _as_real(m, prec).ln()
    return Complex(lnm, arg_principal(x, prec))


def sqrt_unit_halfangle(a, b, precision=None):
    """Principal square root of a + bi for a point on the unit circle.

    Uses the half-angle identities sqrt((1+a)/2) and sqrt((1-a)/2) for
    the parts, so no trigonometric call is involved; b < 0 is handled by
    conjugating in and out, which keeps a single code path.  Exact
    rational inputs whose half-angle squares are perfect stay exact.
    """
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    if not is_real_kind(a) or not is_real_kind(b):
        raise EvaluationError("sqrt_unit_halfangle takes real parts")
    if num_cmp_real(b, 0) < 0:
        r = sqrt_unit_halfangle(a, num_neg(b), precision)
        return r.conjugate()
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        if a * a + b * b != 1:
            raise NotUnitModulus(
                f"({a}) + ({b})i does not lie on the unit circle"
            )
        ca = exact_sqrt((1 + a) / 2)
        cb = exact_sqrt((1 - a) / 2)
        if ca is not None and cb is not None:
            return QComplex(ca, cb)
        prec = precision or DEFAULT_PRECISION
        ar = Real.from_fraction(a, prec + 4)
        return Complex(
            _half_sqrt(ar, 1, prec), _half_sqrt(ar, -1, prec)
        )
    prec = precision or precision_of(a) or precision_of(b) \
        or DEFAULT_PRECISION
    ar = _as_real(a, prec + 4)
    br = _as_real(b, prec + 4)
    gap = num_sub(num_add(num_mul(ar, ar), num_mul(br, br)), 1)
    if num_cmp_real(abs(gap), Fraction(1, K.pow10(prec - 4))) > 0:
        raise NotUnitModulus(
            "input is farther than 10^(4-precision) from the unit circle"
        )
    return Complex(_half_sqrt(ar, 1, prec), _half_sqrt(ar, -1, prec))


def _half_sqrt(ar, sign, prec):
    """sqrt((1 + sign*a)/2) at prec digits, clamping tiny negatives."""
    t = num_div(num_add(Fraction(1), ar if sign > 0 else -ar), 2)
    if t.man < 0:
        # a may stray beyond [-1, 1] by a rounding ulp; the true half
        # square is then 0 at this precision
        return Real(0, 0, prec)
    m, e = K.sqrt_mp(t.man, t.exp, prec)
    return Real._raw(m, e, prec)


def principal_nth_root(z, n, precision=None, exact=False):
    """Principal nth root: modulus root at 1/n of the principal argument.

    Exact results come back exact: perfect rational powers, the square
    root of a negative perfect square (e.g. sqrt(-1) = i), and unit-
    circle points whose half-angle chain stays rational.  When n is a
    power of two the root is computed by repeated square roots (on the
    unit circle via sqrt_unit_halfangle), otherwise through exp/ln/arg.
    With exact=True an approximate fallback raises UnsupportedExact.
    """
    if n < 1:
        raise ValueError("root order must be a positive integer")
    if isinstance(z, int):
        z = Fraction(z)
    if is_zero(z):
        raise ZeroInput("root of zero")
    if n == 1:
        return z
    if isinstance(z, QComplex) and z.im == 0:
        z = z.re
    if isinstance(z, Fraction):
        if z > 0:
            r = exact_nth_root(z, n)
            if r is not None:
                return r
        elif n == 2:
            r = exact_sqrt(-z)
            if r is not None:
                return QComplex(0, r)
    pow2 = n & (n - 1) == 0
    if isinstance(z, (Fraction, QComplex)) and pow2:
        zz = z if isinstance(z, QComplex) else QComplex(z)
        if zz.abs2() == 1:
            k = n.bit_length() - 1
            cur = zz
            for _ in range(k):
                cur = sqrt_unit_halfangle(
                    num_re(cur), num_im(cur), precision
                )
            if isinstance(cur, QComplex):
                return cur
            if not exact:
                return cur
    if exact:
        raise UnsupportedExact(
            f"no exact {n}th root exists for this value"
        )
    prec = precision or precision_of(z) or DEFAULT_PRECISION
    wp = prec + 4
    if is_real_kind(z) and num_cmp_real(z, 0) > 0:
        x = _as_real(z, wp)
        if pow2:
            for _ in range(n.bit_length() - 1):
                x = x.sqrt()
            return Real(x.man, x.exp, prec)
        r = num_exp(num_div(x.ln(), n), prec)
        return r if isinstance(r, Real) else _as_real(r, prec)
    zc = _promote_to_complex(z, wp)
    if pow2:
        gap = num_sub(
            num_add(num_mul(zc.re, zc.re), num_mul(zc.im, zc.im)), 1
        )
        if num_cmp_real(abs(gap), Fraction(1, K.pow10(wp - 4))) <= 0:
            cur = zc
            for _ in range(n.bit_length() - 1):
                cur = sqrt_unit_halfangle(cur.re, cur.im, wp)
            return Complex(Real(cur.re.man, cur.re.exp, prec),
                           Real(cur.im.man, cur.im.exp, prec))
    m = modulus(zc, wp)
    rm = num_exp(num_div(_as_real(m, wp).ln(), n), wp)
    th = num_div(arg_principal(zc, wp), n)
    out = Complex(num_mul(rm, th.cos()), num_mul(rm, th.sin()))
    return Complex(Real(out.re.man, out.re.exp, prec),
                   Real(out.im.man, out.im.exp, prec))


def to_precision(x, digits):
    """Round (or losslessly convert) a Numeric to a decimal float kind."""
    _check_precision(digits)
    if isinstance(x, int):
        return Real(x, 0, digits)
    if isinstance(x, Fraction):
        return Real.from_fraction(x, digits)
    if isinstance(x, QComplex):
        return Complex(
            Real.from_fraction(x.re, digits), Real.from_fraction(x.im, digits)
        )
    if isinstance(x, Real):
        return Real(x.man, x.exp, digits)
    if isinstance(x, Complex):
        return Complex(Real(x.re.man, x.re.exp, digits),
                       Real(x.im.man, x.im.exp, digits))
    raise TypeError(f"not a Numeric: {x!r}")


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------

def decimal_str(x):
    """Decimal rendering of a Real with exactly prec significant digits."""
    if x.man == 0:
        return "0"
    digits = str(abs(x.man))
    if len(digits) < x.prec:
        digits += "0" * (x.prec - len(digits))
    pos = K.digits10(x.man) + x.exp  # value = 0.digits * 10**pos
    nd = len(digits)
    sign = "-" if x.man < 0 else ""
    if 0 < pos <= nd:
        if pos == nd:
            return sign + digits
        return sign + digits[:pos] + "." + digits[pos:]
    if -6 < pos <= 0:
        return sign + "0." + "0" * (-pos) + digits
    return sign + digits[0] + "." + digits[1:] + f"e{pos - 1:+d}"


def format_numeric(x):
    """Canonical text form used by the CLI and all JSON/CSV output."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QComplex):
        if x.im == 0:
            return str(x.re)
        sign = "+" if x.im > 0 else "-"
        return f"{x.re}{sign}{abs(x.im)}i"
    if isinstance(x, Real):
        return decimal_str(x)
    if isinstance(x, Complex):
        if x.im.is_zero():
            return decimal_str(x.re)
        sign = "-" if x.im.man < 0 else "+"
        return f"{decimal_str(x.re)}{sign}{decimal_str(abs(x.im))}i"
    raise TypeError(f"not a Numeric: {x!r}")


def numeric_from_string(text):
    """Parse a rational binding value: '3', '-5/7' or '1.25'."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise EvaluationError(f"cannot parse numeric value {text!r}") from e
