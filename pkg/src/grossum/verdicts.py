"""Finite-evidence verdicts about generic-finite expressions.

Nothing here proves a limit.  A claim ``lhs`` ≐ ``rhs`` (equal up to
an infinitesimal, i.e. the gap vanishes as G grows) is judged by
instantiating both sides along a geometric schedule of naturals and
looking at the gaps:

* Holds      — gaps essentially monotone and either already below the
               vanishing tolerance or contracting geometrically;
* Fails      — a persistent, non-improving gap, reported with the
               witness instantiation;
* Inconclusive — anything else, including schedules too short to say.

The transfer checker is falsification-only: it scans an explicit
window of naturals for counterexamples to a comparison and reports the
least threshold beyond which none were seen.  Huge windows are strided
(with both endpoints always included) rather than silently truncated.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import kernels as K
from . import scalar as S
from .errors import EvaluationError
from .expr import Bindings, Parity, instantiate

# gap below VANISH/scale counts as vanished; CONTRACT and SLACK bound
# the step-to-step gap ratios (exact rational comparisons throughout)
_VANISH = Fraction(1, 10**12)
_PERSIST = Fraction(1, 10**6)
_CONTRACT = Fraction(9, 10)
_SLACK = Fraction(11, 10)
_MIN_POINTS = 4


@dataclass(frozen=True)
class NSchedule:
    """Geometric ladder of instantiation points for G."""

    lo: int = 2**8
    hi: int = 2**24
    factor: int = 4
    parity: Parity = Parity.UNSPECIFIED

    def __post_init__(self):
        if self.lo < 2:
            raise ValueError("schedule must start at 2 or above")
        if self.hi < self.lo:
            raise ValueError("schedule upper end below lower end")
        if self.factor < 2:
            raise ValueError("schedule factor must be at least 2")

    def points(self):
        """Instantiation points; an unspecified parity alternates, so a
        claim sensitive to parity cannot slip through on one class."""
        def lo_ok(p):
            return self.lo <= p <= self.hi and p >= 1

        out = []
        n = self.lo
        i = 0
        while n <= self.hi:
            p = n
            if self.parity is Parity.EVEN:
                want = 0
            elif self.parity is Parity.ODD:
                want = 1
            else:
                want = i & 1
            if p % 2 != want:
                p += 1
            if p > self.hi:
                p -= 2  # step back onto the wanted parity inside range
            if lo_ok(p) and (not out or p > out[-1]):
                out.append(p)
            n *= self.factor
            i += 1
        return out

    def point_parity(self):
        return self.parity


def parse_schedule(text, parity=Parity.UNSPECIFIED):
    """Accepts 'lo..hi', 'lo..hi:even' or 'lo..hi:odd'."""
    body = text
    if ":" in text:
        body, tag = text.rsplit(":", 1)
        tag = tag.strip().lower()
        if tag not in ("even", "odd"):
            raise ValueError(f"unknown parity tag {tag!r}")
        parity = Parity.EVEN if tag == "even" else Parity.ODD
    if ".." not in body:
        raise ValueError("schedule must look like lo..hi or lo..hi:parity")
    lo_s, hi_s = body.split("..", 1)
    return NSchedule(lo=int(lo_s), hi=int(hi_s), parity=parity)


def _tame(x, prec):
    """Round a grotesquely large exact value down to working precision.

    Verdicts are finite evidence, not proofs; an exact rational with a
    million digits buys nothing here and makes every comparison and
    rendering drag.  Ordinary exact sums stay exact.
    """
    if S.is_exact(x) and S._exact_digit_size(x) > 64 * prec:
        return S.to_precision(x, prec)
    return x


def _gap_of(a, b, prec):
    """|a - b| as a nonnegative Fraction or Real."""
    return S.modulus(S.num_sub(a, b), prec)


def _mag_of(a, prec):
    return S.modulus(a, prec)


def _le_scaled(a, q, b):
    """a <= q*b, exactly on exact inputs, rounded otherwise."""
    return S.num_cmp_real(a, S.num_mul(q, b)) <= 0


def _ge_scaled(a, q, b):
    return S.num_cmp_real(a, S.num_mul(q, b)) >= 0


def _num_max(seq):
    best = None
    for x in seq:
        if best is None or S.num_cmp_real(x, best) > 0:
            best = x
    return best


def _dec(x, prec):
    """Deterministic decimal rendering for reports."""
    if isinstance(x, Fraction):
        if x.denominator == 1 and K.digits10(abs(x.numerator)) <= 4 * prec:
            return str(x.numerator)
        x = S.Real.from_fraction(x, prec)
    if isinstance(x, S.QComplex):
        if x.im == 0:
            return _dec(x.re, prec)
        return _dec(x.re, prec) + ("+" if x.im >= 0 else "-") + _dec(
            abs(x.im), prec
        ) + "i"
    if isinstance(x, S.Complex):
        neg = x.im.man < 0
        im = S.num_neg(x.im) if neg else x.im
        return _dec(x.re, prec) + ("-" if neg else "+") + _dec(im, prec) + "i"
    return S.decimal_str(x)


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "Holds" | "Fails" | "Inconclusive"
    witness: Optional[dict] = None
    trace: tuple = ()

    def to_json(self):
        return json.dumps(
            {
                "outcome": self.outcome,
                "witness": self.witness,
                "trace": list(self.trace),
            },
            indent=2,
        )


def dot_equal(lhs, rhs, schedule=None, precision=None,
              parity=Parity.UNSPECIFIED):
    """Judge lhs ≐ rhs along a schedule of concrete naturals."""
    if schedule is None:
        schedule = NSchedule(parity=parity)
    prec = precision if precision is not None else S.DEFAULT_PRECISION
    pts = schedule.points()
    trace = []
    gaps = []
    scale = Fraction(1)
    for n in pts:
        b = Bindings(grossone=n, parity=schedule.parity)
        lv = _tame(instantiate(lhs, b, precision=prec), prec)
        rv = _tame(instantiate(rhs, b, precision=prec), prec)
        g = _gap_of(lv, rv, prec)
        gaps.append(g)
        scale = _num_max([scale, _mag_of(lv, prec), _mag_of(rv, prec)])
        trace.append({"n": n, "value": _dec(lv, prec), "gap": _dec(g, prec)})
    trace = tuple(trace)
    if len(pts) < _MIN_POINTS:
        return Verdict("Inconclusive", None, trace)

    vanish = S.num_mul(_VANISH, scale)
    tail = gaps[-_MIN_POINTS:]
    monotone = all(
        _le_scaled(tail[i + 1], _SLACK, tail[i])
        or S.num_cmp_real(tail[i + 1], vanish) <= 0
        for i in range(len(tail) - 1)
    )
    contracting = all(
        (S.is_zero(tail[i]) and S.is_zero(tail[i + 1]))
        or _le_scaled(tail[i + 1], _CONTRACT, tail[i])
        for i in range(len(tail) - 1)
    )
    vanished = S.num_cmp_real(gaps[-1], vanish) <= 0
    if monotone and (vanished or contracting):
        return Verdict("Holds", None, trace)

    head = gaps[:_MIN_POINTS]
    tail_max = _num_max(tail)
    if _ge_scaled(tail_max, _PERSIST, scale) and _ge_scaled(
        tail_max, _CONTRACT, _num_max(head)
    ):
        worst = max(
            range(len(pts) - len(tail), len(pts)),
            key=lambda i: (S.num_cmp_real(gaps[i], tail_max) >= 0, i),
        )
        witness = {"n": pts[worst], "gap": _dec(gaps[worst], prec)}
        return Verdict("Fails", witness, trace)
    return Verdict("Inconclusive", None, trace)


# ----------------------------------------------------------------------
# reference corpus for the ≐ relation
# ----------------------------------------------------------------------

# Each row: (lhs text, rhs text, parity, schedule override, expected).
# Closed-form pairs run the full default ladder; rows whose exact
# evaluation cost grows with G (long exact sums) use a short ladder
# where the gap is already far below the vanishing tolerance.
_SHORT = NSchedule(lo=2**4, hi=2**10, factor=4)
_TALL = NSchedule(lo=2**12, hi=2**24, factor=4)

DOT_EQUAL_CORPUS = (
    ("sum(k, 1, G, k)", "G^2/2 + G/2", Parity.UNSPECIFIED, _SHORT, "Holds"),
    ("(1 + 1/G)^G", "exp(1)", Parity.UNSPECIFIED, _TALL, "Holds"),
    ("sum(k, 0, G, 1/prod(j, 1, k, j))", "exp(1)", Parity.UNSPECIFIED,
     _SHORT, "Holds"),
    ("sum(k, 0, G, (1/2)^k)", "2", Parity.UNSPECIFIED, _SHORT, "Holds"),
    ("sum(k, 1, G, 1/(k*(k + 1)))", "1", Parity.UNSPECIFIED, _SHORT,
     "Holds"),
    ("G/(G + 1)", "1", Parity.UNSPECIFIED, None, "Holds"),
    ("sqrt(G^2 + G) - G", "1/2", Parity.UNSPECIFIED, None, "Holds"),
    ("(1 + (-1)^G)/2", "1", Parity.EVEN, None, "Holds"),
    ("(1 + (-1)^G)/2", "0", Parity.ODD, None, "Holds"),
    ("sum(k, 1, G, 1/2^k)", "1", Parity.UNSPECIFIED, _SHORT, "Holds"),
    ("(G + 1)*(G - 1)/G^2", "1", Parity.UNSPECIFIED, None, "Holds"),
    ("G*sin(1/G)", "1", Parity.UNSPECIFIED, None, "Holds"),
    ("(-1)^G", "0", Parity.UNSPECIFIED, None, "Fails"),
    ("(1 + 1/G)^G", "3", Parity.UNSPECIFIED, _TALL, "Fails"),
)


# ----------------------------------------------------------------------
# transfer checking
# ----------------------------------------------------------------------

_STRIDE_LIMIT = 10**7
_CE_CAP = 32

_COMPARATORS = {
    "<": lambda c: c < 0,
    "<=": lambda c: c <= 0,
    ">": lambda c: c > 0,
    ">=": lambda c: c >= 0,
    "==": lambda c: c == 0,
    "!=": lambda c: c != 0,
}


@dataclass(frozen=True)
class TransferReport:
    predicate: str
    window: tuple
    least_threshold: int
    counterexamples: tuple
    scanned: int = 0
    strided: bool = False

    def to_json(self):
        return json.dumps(
            {
                "least_threshold": self.least_threshold,
                "counterexamples": list(self.counterexamples),
            },
            indent=2,
        )


def split_predicate(text):
    """'lhs OP rhs' with OP one of < <= > >= == != (longest match)."""
    for op in ("<=", ">=", "==", "!=", "<", ">"):
        if op in text:
            l, r = text.split(op, 1)
            return l.strip(), op, r.strip()
    raise ValueError("predicate needs a comparator: < <= > >= == !=")


def transfer_check(lhs, op, rhs, lo, hi, var="n"):
    """Scan [lo, hi] for counterexamples to ``lhs op rhs``.

    Evaluation is exact; values must come out real.  The report's
    least_threshold is the largest failing point (lo - 1 when the
    whole window passes), so the predicate holds on the scanned set
    strictly above it.
    """
    from .expr import to_string

    if hi < lo:
        raise ValueError("empty window")
    test = _COMPARATORS[op]
    width = hi - lo + 1
    strided = width > _STRIDE_LIMIT
    if strided:
        stride = width // _STRIDE_LIMIT + 1
        points = list(range(lo, hi + 1, stride))
        if points[-1] != hi:
            points.append(hi)
    else:
        points = range(lo, hi + 1)
    worst = lo - 1
    ces = []
    total = 0
    for n in points:
        total += 1
        b = Bindings(vars={var: Fraction(n)})
        lv = instantiate(lhs, b)
        rv = instantiate(rhs, b)
        if not (S.is_exact(lv) and S.is_exact(rv)):
            raise EvaluationError(
                "transfer predicates must evaluate exactly"
            )
        if op in ("==", "!="):
            cmpv = 0 if (S.num_cmp_real(S.num_re(lv), S.num_re(rv)) == 0
                         and S.num_cmp_real(S.num_im(lv), S.num_im(rv)) == 0
                         ) else 1
        else:
            if isinstance(lv, S.QComplex) or isinstance(rv, S.QComplex):
                raise EvaluationError(
                    "ordered comparison of non-real values"
                )
            cmpv = S.num_cmp_real(lv, rv)
        if not test(cmpv):
            worst = n
            if len(ces) < _CE_CAP:
                ces.append(n)
    return TransferReport(
        predicate=f"{to_string(lhs)} {op} {to_string(rhs)}",
        window=(lo, hi),
        least_threshold=worst,
        counterexamples=tuple(ces),
        scanned=total,
        strided=strided,
    )


# ----------------------------------------------------------------------
# limit-shape classification
# ----------------------------------------------------------------------

_GROW = Fraction(3, 2)


@dataclass(frozen=True)
class LimitReport:
    classification: str  # Infinitesimal | FiniteLimit | Unbounded | Oscillating
    value: Optional[object]
    trace: tuple = ()

    def to_json(self):
        val = None if self.value is None else _dec(
            self.value, S.DEFAULT_PRECISION
        )
        return json.dumps(
            {
                "classification": self.classification,
                "value": val,
                "trace": list(self.trace),
            },
            indent=2,
        )


def limit_estimate(expr, schedule=None, precision=None):
    """Classify the tail behavior of expr along the schedule.

    Checked in order: values vanishing (Infinitesimal), successive
    differences vanishing or contracting (FiniteLimit, with the mean
    of the last two instantiations as the estimate), magnitudes
    blowing up (Unbounded).  Whatever matches none of these, e.g. a
    parity-dependent expression on an alternating schedule, lands in
    Oscillating.
    """
    if schedule is None:
        schedule = NSchedule()
    prec = precision if precision is not None else S.DEFAULT_PRECISION
    pts = schedule.points()
    vals = []
    mags = []
    trace = []
    for n in pts:
        b = Bindings(grossone=n, parity=schedule.parity)
        v = _tame(instantiate(expr, b, precision=prec), prec)
        vals.append(v)
        mags.append(_mag_of(v, prec))
        trace.append({"n": n, "value": _dec(v, prec)})
    trace = tuple(trace)
    if len(pts) < _MIN_POINTS:
        return LimitReport("Oscillating", None, trace)

    tail_m = mags[-_MIN_POINTS:]
    m_small = S.num_cmp_real(mags[-1], _VANISH) <= 0 and all(
        _le_scaled(tail_m[i + 1], _SLACK, tail_m[i])
        or S.num_cmp_real(tail_m[i + 1], _VANISH) <= 0
        for i in range(len(tail_m) - 1)
    )
    m_contract = all(
        (S.is_zero(tail_m[i]) and S.is_zero(tail_m[i + 1]))
        or _le_scaled(tail_m[i + 1], _CONTRACT, tail_m[i])
        for i in range(len(tail_m) - 1)
    )
    if m_small or m_contract:
        return LimitReport("Infinitesimal", Fraction(0), trace)

    diffs = [
        _gap_of(vals[i + 1], vals[i], prec) for i in range(len(vals) - 1)
    ]
    dt = diffs[-(_MIN_POINTS - 1):]
    scale = _num_max([Fraction(1), mags[-1]])
    d_contract = all(
        (S.is_zero(dt[i]) and S.is_zero(dt[i + 1]))
        or _le_scaled(dt[i + 1], _CONTRACT, dt[i])
        for i in range(len(dt) - 1)
    )
    if S.num_cmp_real(diffs[-1], S.num_mul(_VANISH, scale)) <= 0 or d_contract:
        value = S.num_div(S.num_add(vals[-1], vals[-2]), Fraction(2))
        return LimitReport("FiniteLimit", value, trace)

    if S.num_cmp_real(mags[-1], Fraction(1)) >= 0 and all(
        _ge_scaled(tail_m[i + 1], _GROW, tail_m[i])
        for i in range(len(tail_m) - 1)
    ):
        return LimitReport("Unbounded", None, trace)
    return LimitReport("Oscillating", None, trace)
