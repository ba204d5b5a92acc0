"""Integer-only arithmetic kernels (pure Python backend).

A scaled value ``(man, exp)`` denotes the real number ``man * 10**exp``.
Normalization keeps at most ``prec`` significant decimal digits in the
mantissa; rounding is round-half-to-even throughout.  Everything here is
plain ``int`` arithmetic so the compiled backend in ``_kernels_cy.pyx``
can mirror this file statement for statement and the two can be diffed
against each other in tests.

No hardware floats appear anywhere in this module.
"""

from math import isqrt

BACKEND = "python"

_POW10 = {}

# caches for per-working-precision constants, keyed by digit count
_PI_CACHE = {}
_LN2_CACHE = {}
_LN10_CACHE = {}


def pow10(k):
    """10**k for k >= 0, memoized for small k."""
    if k < 0:
        raise ValueError("pow10 exponent must be nonnegative")
    p = _POW10.get(k)
    if p is None:
        p = 10 ** k
        if k <= 100000:
            _POW10[k] = p
    return p


def digits10(n):
    """Number of decimal digits of abs(n); digits10(0) == 1."""
    if n < 0:
        n = -n
    if n == 0:
        return 1
    # bit_length gives log10 within one digit; correct exactly after.
    d = (n.bit_length() - 1) * 30103 // 100000
    p = pow10(d)
    if p > n:
        d -= 1
        p //= 10
    while 10 * p <= n:
        d += 1
        p *= 10
    return d + 1


def tdiv(a, b):
    """Integer division truncated toward zero."""
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


def round_div(a, b):
    """Nearest-integer division of a by b > 0, ties to even."""
    if a < 0:
        return -round_div(-a, b)
    q, r = divmod(a, b)
    r2 = r * 2
    if r2 > b or (r2 == b and q & 1):
        q += 1
    return q


def round_shift(man, k):
    """Round away the k lowest decimal digits of man (half to even)."""
    if k <= 0:
        return man * pow10(-k)
    return round_div(man, pow10(k))


def normalize(man, exp, prec):
    """Round (man, exp) to at most prec significant digits."""
    if man == 0:
        return 0, 0
    d = digits10(man)
    if d > prec:
        man = round_shift(man, d - prec)
        exp += d - prec
        if digits10(man) > prec:  # rounding carried, e.g. 999 -> 100|0
            man = round_shift(man, 1)
            exp += 1
    return man, exp


def cmp_mp(m1, e1, m2, e2):
    """Exact three-way comparison of two scaled values."""
    s1 = (m1 > 0) - (m1 < 0)
    s2 = (m2 > 0) - (m2 < 0)
    if s1 != s2:
        return 1 if s1 > s2 else -1
    if s1 == 0:
        return 0
    hi1 = digits10(m1) + e1
    hi2 = digits10(m2) + e2
    if hi1 != hi2:
        return s1 if hi1 > hi2 else -s1
    shift = e1 - e2
    if shift >= 0:
        a, b = m1 * pow10(shift), m2
    else:
        a, b = m1, m2 * pow10(-shift)
    return (a > b) - (a < b)


def add_mp(m1, e1, m2, e2, prec):
    """Rounded sum of two scaled values."""
    if m1 == 0:
        return normalize(m2, e2, prec)
    if m2 == 0:
        return normalize(m1, e1, prec)
    hi1 = digits10(m1) + e1
    hi2 = digits10(m2) + e2
    if hi1 < hi2:
        m1, e1, hi1, m2, e2, hi2 = m2, e2, hi2, m1, e1, hi1
    es = hi1 - (prec + 3)
    if hi1 - hi2 > prec + 2 and e1 >= es:
        # The addend sits entirely below the rounding horizon; keep one
        # sticky unit so half-even ties still break toward the truth.
        s = m1 * pow10(e1 - es) + (1 if m2 > 0 else -1)
        return normalize(s, es, prec)
    if e1 >= e2:
        return normalize(m1 * pow10(e1 - e2) + m2, e2, prec)
    return normalize(m1 + m2 * pow10(e2 - e1), e1, prec)


def sub_mp(m1, e1, m2, e2, prec):
    return add_mp(m1, e1, -m2, e2, prec)


def mul_mp(m1, e1, m2, e2, prec):
    return normalize(m1 * m2, e1 + e2, prec)


def div_mp(m1, e1, m2, e2, prec):
    """Rounded quotient; m2 must be nonzero (callers raise their own error)."""
    if m1 == 0:
        return 0, 0
    scale = prec + 3 + digits10(m2) - digits10(m1)
    if scale >= 0:
        num, den = m1 * pow10(scale), m2
    else:
        num, den = m1, m2 * pow10(-scale)
    sign = 1 if (num < 0) == (den < 0) else -1
    num, den = abs(num), abs(den)
    q, r = divmod(num, den)
    if r:
        # Nudge exact mid-point patterns so the final half-even rounding
        # in normalize sees the true side of the tie.
        k = digits10(q) - prec
        if k > 0 and q % pow10(k) == pow10(k) // 2:
            q += 1
    return normalize(sign * q, e1 - e2 - scale, prec)


def sqrt_mp(man, exp, prec):
    """Rounded square root of a nonnegative scaled value."""
    if man < 0:
        raise ValueError("sqrt_mp of negative value")
    if man == 0:
        return 0, 0
    d = digits10(man)
    k = max(0, 2 * (prec + 2) - d)
    if (exp - k) & 1:
        k += 1
    a = man * pow10(k)
    r = isqrt(a)
    if r * r != a:
        j = digits10(r) - prec
        if j > 0 and r % pow10(j) == pow10(j) // 2:
            r += 1
    return normalize(r, (exp - k) // 2, prec)


def to_int_nearest(man, exp):
    """Nearest integer to a scaled value (ties to even)."""
    if exp >= 0:
        return man * pow10(exp)
    return round_shift(man, -exp)


def exp_mp(man, exp, prec):
    """Rounded e**x for x = man*10**exp.

    Argument halving brings x below 1/32, a short Taylor sum runs in
    fixed-point, and the halvings are undone by float-form squaring.
    Arguments beyond 10**9 in magnitude are refused: the answer would
    exist but its mantissa could not be trusted at this precision.
    """
    if man == 0:
        return 1, 0
    order = digits10(man) + exp
    if order > 9:
        raise ValueError("exp argument too large for working precision")
    wp = prec + 14 + max(0, order)
    scale = pow10(wp)
    if exp + wp >= 0:
        x = man * pow10(exp + wp)
    else:
        x = round_shift(man, -(exp + wp))
    if x == 0:
        return 1, 0
    k = (32 * abs(x) // scale).bit_length()
    xh = round_div(x, 1 << k)
    term = scale
    s = scale
    j = 0
    while term:
        j += 1
        term = tdiv(term * xh, scale * j)
        s += term
    rm, re = normalize(s, -wp, wp)
    for _ in range(k):
        rm, re = mul_mp(rm, re, rm, re, wp)
    return normalize(rm, re, prec)


def _atanh_series(t, scale):
    """Scaled atanh(t/scale) for |t| << scale."""
    t2 = tdiv(t * t, scale)
    term = t
    s = t
    j = 1
    while term:
        term = tdiv(term * t2, scale)
        j += 2
        s += tdiv(term, j)
    return s


def _ln_reduced(a, wp):
    """Scaled ln(a/scale) for a/scale in [1, 10); result is scaled too."""
    scale = pow10(wp)
    k = 0
    while a > scale + scale // 20:
        a = isqrt(a * scale)
        k += 1
    t = tdiv((a - scale) * scale, a + scale)
    return _atanh_series(t, scale) * 2 * (1 << k)


def _ln10(wp):
    v = _LN10_CACHE.get(wp)
    if v is None:
        scale = pow10(wp)
        ln2 = _LN2_CACHE.get(wp)
        if ln2 is None:
            ln2 = _ln_reduced(2 * scale, wp)
            _LN2_CACHE[wp] = ln2
        # ln 10 = 3 ln 2 + ln 1.25
        v = 3 * ln2 + _ln_reduced(scale + scale // 4, wp)
        _LN10_CACHE[wp] = v
    return v


def ln_mp(man, exp, prec):
    """Rounded natural log of a positive scaled value."""
    if man <= 0:
        raise ValueError("ln_mp needs a positive value")
    wp = prec + 10
    d = digits10(man)
    h = exp + d - 1
    shift = wp - (d - 1)
    if shift >= 0:
        a = man * pow10(shift)
    else:
        a = round_shift(man, -shift)
    s = _ln_reduced(a, wp)
    if h:
        s += h * _ln10(wp)
    return normalize(s, -wp, prec)


def pi_mp(prec):
    """Rounded pi; Machin's two-term arctangent identity on integers."""
    cached = _PI_CACHE.get(prec)
    if cached is not None:
        return cached
    wp = prec + 10
    scale = pow10(wp)

    def arctan_inv(k):
        k2 = k * k
        t = scale // k
        s = t
        j = 1
        sign = -1
        while t:
            t //= k2
            j += 2
            s += sign * (t // j)
            sign = -sign
        return s

    v = normalize(16 * arctan_inv(5) - 4 * arctan_inv(239), -wp, prec)
    _PI_CACHE[prec] = v
    return v


def atan_mp(man, exp, prec):
    """Rounded arctangent of a scaled value."""
    if man == 0:
        return 0, 0
    if man < 0:
        m, e = atan_mp(-man, exp, prec + 2)
        return normalize(-m, e, prec)
    wp = prec + 10
    if cmp_mp(man, exp, 1, 0) > 0:
        # atan x = pi/2 - atan(1/x)
        im, ie = div_mp(1, 0, man, exp, wp)
        am, ae = atan_mp(im, ie, wp)
        pm, pe = pi_mp(wp)
        hm, he = div_mp(pm, pe, 2, 0, wp)
        rm, re = sub_mp(hm, he, am, ae, wp)
        return normalize(rm, re, prec)
    scale = pow10(wp)
    if exp + wp >= 0:
        x = man * pow10(exp + wp)
    else:
        x = round_shift(man, -(exp + wp))
    # two half-angle reductions: t = x / (1 + sqrt(1 + x^2))
    for _ in range(2):
        root = isqrt(scale * scale + x * x)
        x = tdiv(x * scale, scale + root)
    t2 = tdiv(x * x, scale)
    term = x
    s = x
    j = 1
    while term:
        term = -tdiv(term * t2, scale)
        j += 2
        s += tdiv(term, j)
    return normalize(4 * s, -wp, prec)


def _sincos_reduce(man, exp, prec):
    """Map x into [-pi, pi] modulo 2*pi; returns a scaled pair."""
    if man == 0:
        return 0, 0
    order = digits10(man) + exp
    if order > 7:
        raise ValueError("trig argument too large for working precision")
    wq = prec + 10 + max(0, order)
    pm, pe = pi_mp(wq)
    tm, te = mul_mp(pm, pe, 2, 0, wq)
    qm, qe = div_mp(man, exp, tm, te, wq)
    n = to_int_nearest(qm, qe)
    if n:
        cm, ce = mul_mp(tm, te, n, 0, wq)
        man, exp = sub_mp(man, exp, cm, ce, wq)
    return man, exp


def sin_mp(man, exp, prec):
    """Rounded sine."""
    if man == 0:
        return 0, 0
    wp = prec + 10
    man, exp = _sincos_reduce(man, exp, wp)
    if man == 0:
        return 0, 0
    scale = pow10(wp)
    if exp + wp >= 0:
        x = man * pow10(exp + wp)
    else:
        x = round_shift(man, -(exp + wp))
    x2 = tdiv(x * x, scale)
    term = x
    s = x
    j = 1
    while term:
        term = -tdiv(tdiv(term * x2, scale), (j + 1) * (j + 2))
        j += 2
        s += term
    return normalize(s, -wp, prec)


def cos_mp(man, exp, prec):
    """Rounded cosine."""
    wp = prec + 10
    man, exp = _sincos_reduce(man, exp, wp)
    scale = pow10(wp)
    if exp + wp >= 0:
        x = man * pow10(exp + wp)
    else:
        x = round_shift(man, -(exp + wp))
    x2 = tdiv(x * x, scale)
    term = scale
    s = scale
    j = 0
    while term:
        term = -tdiv(tdiv(term * x2, scale), (j + 1) * (j + 2))
        j += 2
        s += term
    return normalize(s, -wp, prec)


def inth_root(n, k):
    """floor(n ** (1/k)) for n >= 0, k >= 1, by integer Newton steps."""
    if n < 0:
        raise ValueError("inth_root of negative value")
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def sieve_primes(limit):
    """All primes up to and including limit, ascending."""
    if limit < 2:
        return []
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : limit + 1 : p] = b"\x00" * ((limit - start) // p + 1)
    return [i for i in range(2, limit + 1) if sieve[i]]
