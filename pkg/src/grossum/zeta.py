"""Finitized zeta laboratory.

Three computable faces of one object: the Euler product Z(s, M) over
the first M primes, the doubly truncated ZZ(s, M, cap) whose geometric
factors stop at exponent cap, and the brute-force smooth-number set
that makes ZZ checkable by direct summation.

Integer exponents s keep everything in exact Fraction arithmetic (up
to a documented size cutoff); real and complex s go through the
scaled-decimal kernels at working precision.  Factor computations are
independent per prime and the product is reduced in fixed index
order, so exact results are order-independent and approximate results
are reproducible.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import log
from bisect import bisect_left

from . import kernels as K
from . import scalar as S
from .errors import PoleAtOne, TooLarge, UnsupportedExact

PRIME_COUNT_LIMIT = 10 ** 6
SMOOTH_LIMIT = 10 ** 7

# Auto-exact thresholds: integer s stays rational up to this many
# primes unless the caller forces a mode, and a rough digit estimate
# keeps runaway cap/M combinations off the exact path.
AUTO_EXACT_Z = 64
AUTO_EXACT_ZZ = 512
_EXACT_DIGIT_BUDGET = S.EXACT_POW_DIGIT_CAP


def _primes_up_to(n):
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[:2] = b"\x00\x00"
    r = int(n ** 0.5)
    for p in range(2, r + 1):
        if sieve[p]:
            step = p
            start = p * p
            sieve[start: n + 1: step] = b"\x00" * (((n - start) // step) + 1)
    return [i for i in range(2, n + 1) if sieve[i]]


def primes_first(count):
    """Return the first `count` primes as an ascending list.

    The sieve bound starts at the usual p_count overestimate
    count*(ln count + ln ln count) and widens until enough primes fall
    out, so the function never returns short.
    """
    if not 1 <= count <= PRIME_COUNT_LIMIT:
        raise ValueError(
            f"count must be between 1 and {PRIME_COUNT_LIMIT}, got {count}")
    if count < 6:
        return [2, 3, 5, 7, 11][:count]
    bound = int(count * (log(count) + log(log(count)))) + 10
    while True:
        primes = _primes_up_to(bound)
        if len(primes) >= count:
            return primes[:count]
        bound += bound // 2


def _integer_exponent(s):
    """int(s) when s is an exact integer-valued number, else None."""
    if isinstance(s, int):
        return s
    if isinstance(s, Fraction) and s.denominator == 1:
        return s.numerator
    if isinstance(s, S.QComplex) and s.im == 0 and s.re.denominator == 1:
        return s.re.numerator
    return None


def _z_factor_exact(p, n):
    """One Euler factor 1/(1 - p**-n), exact."""
    q = Fraction(p) ** n
    if q == 1:
        raise PoleAtOne(f"factor for prime {p} divides by zero at s = {n}")
    return q / (q - 1)


def euler_product_Z(s, M, precision=None, exact=None):
    """Finite Euler product over the first M primes: prod 1/(1 - p**-s).

    Integer s >= 1 yields an exact Fraction when M <= AUTO_EXACT_Z, or
    for any M when exact=True.  Other exponents (and exact=False) are
    evaluated at `precision` decimal digits.  s = 0 makes every factor
    denominator vanish and raises PoleAtOne.
    """
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    if S.is_zero(s):
        raise PoleAtOne("every factor of Z(0) divides by zero")
    n = _integer_exponent(s)
    if exact is None:
        exact = n is not None and n >= 1 and M <= AUTO_EXACT_Z
    primes = primes_first(M)
    if exact:
        if n is None or n < 1:
            raise UnsupportedExact(
                "exact Euler product needs an integer exponent s >= 1")
        factors = [_z_factor_exact(p, n) for p in primes]
        acc = Fraction(1)
        for fac in factors:
            acc *= fac
        return acc
    prec = precision or S.DEFAULT_PRECISION
    S._check_precision(prec)
    wp = prec + 10
    if n is not None:
        factors = [S.to_precision(_z_factor_exact(p, n), wp) for p in primes]
    else:
        sR = S.to_precision(s, wp) if S.is_exact(s) else s
        neg_s = S.num_neg(sR)
        factors = []
        for p in primes:
            t = S.num_pow(Fraction(p), neg_s, wp)
            den = S.num_sub(Fraction(1), t)
            if S.is_zero(den):
                raise PoleAtOne(
                    f"factor for prime {p} divides by zero at s = "
                    f"{S.decimal_str(sR)}")
            factors.append(S.num_div(Fraction(1), den))
    acc = S.to_precision(Fraction(1), wp)
    for fac in factors:
        acc = S.num_mul(acc, fac)
    return S.to_precision(acc, prec)


@dataclass(frozen=True)
class SmoothSet:
    """All naturals built from the first M primes with exponents <= cap.

    Elements are ascending and pairwise distinct; unique factorization
    guarantees the count is exactly (cap+1)**M.
    """

    M: int
    cap: int
    elements: tuple

    def __post_init__(self):
        expected = (self.cap + 1) ** self.M
        if len(self.elements) != expected:
            raise ValueError(
                f"smooth set should hold {expected} elements, "
                f"got {len(self.elements)}")
        if self.elements[0] != 1:
            raise ValueError("smooth set must contain 1")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, value):
        i = bisect_left(self.elements, value)
        return i < len(self.elements) and self.elements[i] == value

    def recip_power_sum(self, s):
        """Sum of n**-s over the set, exact for integer s."""
        n = _integer_exponent(s)
        if n is not None:
            return sum((Fraction(1, v ** n) if n >= 0 else
                        Fraction(v ** -n)) for v in self.elements)
        total = Fraction(0)
        neg_s = S.num_neg(s)
        for v in self.elements:
            total = S.num_add(total, S.num_pow(Fraction(v), neg_s))
        return total


def enumerate_smooth(M, cap):
    """Enumerate the full exponent box {prod p_k**e_k : 0 <= e_k <= cap}.

    Odometer walk over exponent vectors with incremental multiply and
    exact rollback division, then one sort.  Refuses boxes larger than
    SMOOTH_LIMIT elements up front.
    """
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    if cap < 0:
        raise ValueError(f"cap must be nonnegative, got {cap}")
    size = (cap + 1) ** M
    if size > SMOOTH_LIMIT:
        raise TooLarge(
            f"(cap+1)**M = {size} exceeds the enumeration limit "
            f"{SMOOTH_LIMIT}")
    primes = primes_first(M)
    rollback = [p ** cap for p in primes]
    exps = [0] * M
    val = 1
    values = []
    while True:
        values.append(val)
        i = 0
        while i < M and exps[i] == cap:
            exps[i] = 0
            val //= rollback[i]
            i += 1
        if i == M:
            break
        exps[i] += 1
        val *= primes[i]
    values.sort()
    return SmoothSet(M, cap, tuple(values))


def _zz_factor_exact(p, n, cap):
    """Truncated geometric factor 1 + p**-n + ... + p**-(cap*n), exact.

    Closed form (q**(cap+1) - 1) / (q**cap * (q - 1)) with q = p**n;
    the q = 1 tie (only n = 0, since p >= 2) degenerates to cap + 1.
    """
    q = Fraction(p) ** n
    if q == 1:
        return Fraction(cap + 1)
    return (q ** (cap + 1) - 1) / (q ** cap * (q - 1))


def truncated_zeta_ZZ(s, M, cap, precision=None, exact=None):
    """Doubly truncated zeta: product of cap-truncated geometric factors.

    Equals the sum of n**-s over enumerate_smooth(M, cap) exactly when
    s is an integer; that identity is the module's main oracle.  The
    empty truncation cap = 0 gives 1 for any s, and s = 0 degenerates
    to (cap+1)**M rather than raising.
    """
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    if cap < 0:
        raise ValueError(f"cap must be nonnegative, got {cap}")
    n = _integer_exponent(s)
    primes = primes_first(M)
    if exact is None:
        est = abs(n or 0) * (cap + 1) * K.digits10(primes[-1]) * M
        exact = n is not None and M <= AUTO_EXACT_ZZ \
            and est <= _EXACT_DIGIT_BUDGET
    if exact:
        if n is None:
            raise UnsupportedExact(
                "exact truncated zeta needs an integer exponent s")
        factors = [_zz_factor_exact(p, n, cap) for p in primes]
        acc = Fraction(1)
        for fac in factors:
            acc *= fac
        return acc
    prec = precision or S.DEFAULT_PRECISION
    S._check_precision(prec)
    wp = prec + 10
    if n is not None:
        factors = [S.to_precision(_zz_factor_exact(p, n, cap), wp)
                   for p in primes]
    else:
        sR = S.to_precision(s, wp) if S.is_exact(s) else s
        neg_s = S.num_neg(sR)
        factors = []
        for p in primes:
            t = S.num_pow(Fraction(p), neg_s, wp)
            den = S.num_sub(Fraction(1), t)
            if S.is_zero(den):
                factors.append(S.to_precision(Fraction(cap + 1), wp))
                continue
            num = S.num_sub(Fraction(1), S.num_pow(t, Fraction(cap + 1), wp))
            factors.append(S.num_div(num, den))
    acc = S.to_precision(Fraction(1), wp)
    for fac in factors:
        acc = S.num_mul(acc, fac)
    return S.to_precision(acc, prec)
