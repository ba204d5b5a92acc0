"""Conservative structural simplification.

The rewriter folds constants, strips units (x+0, x*1, x^1), cancels
identical factors and like terms, and resolves (-1)^e when the parity
of the exponent is decidable from the context.  It deliberately leaves
form alone otherwise: (1 + (-1)^G)/2 under an unspecified parity comes
back unchanged, because rewriting it would assert something no finite
check has licensed.

As a last resort, when the conservative pass leaves a non-constant,
the expression is expanded (products over sums, small integer powers)
and recollected; the result is kept only when everything collapses to
a single constant.  That catches telescoping identities such as the
closed form of a geometric sum minus the sum itself, without ever
inflating an expression the caller will read back.
"""

from fractions import Fraction

from . import scalar as S
from .expr import (
    Add,
    Const,
    Div,
    Func,
    Grossone,
    Mul,
    Neg,
    Parity,
    Pow,
    Prod,
    Sub,
    Sum,
    Var,
)

_MAX_PASSES = 40
_EXPAND_POW_CAP = 8


def simplify(e, parity=Parity.UNSPECIFIED):
    """Rewrite to a fixpoint; value at every valid binding is preserved."""
    out = _fixpoint(e, parity, expand=False)
    if not isinstance(out, Const):
        # Alternate expansion with collection a few times: folding terms
        # over a shared denominator manufactures fresh products that need
        # one more distribution pass before they can cancel.
        cur = out
        for _ in range(4):
            nxt = _fixpoint(_expand(cur), parity, expand=True)
            if isinstance(nxt, Const):
                return nxt
            if isinstance(nxt, Div) and nxt.left == Const(Fraction(0)):
                return Const(Fraction(0))
            if nxt == cur:
                break
            cur = nxt
    return out


def _fixpoint(e, parity, expand):
    cur = e
    for _ in range(_MAX_PASSES):
        nxt = _pass(cur, parity, expand)
        if nxt == cur:
            return cur
        cur = nxt
    return cur


def _pass(e, parity, expand):
    if isinstance(e, (Const, Var, Grossone)):
        return e
    if isinstance(e, Neg):
        arg = _pass(e.arg, parity, expand)
        if isinstance(arg, Const) and S.is_exact(arg.value):
            return Const(S.num_neg(arg.value))
        if isinstance(arg, Neg):
            return arg.arg
        return _collect_mul(Neg(arg), parity, expand)
    if isinstance(e, (Add, Sub)):
        node = type(e)(
            _pass(e.left, parity, expand), _pass(e.right, parity, expand)
        )
        return _collect_add(node, parity, expand)
    if isinstance(e, (Mul, Div)):
        node = type(e)(
            _pass(e.left, parity, expand), _pass(e.right, parity, expand)
        )
        return _collect_mul(node, parity, expand)
    if isinstance(e, Pow):
        return _pow_rules(
            _pass(e.base, parity, expand),
            _pass(e.exponent, parity, expand),
            parity,
        )
    if isinstance(e, Func):
        return _func_rules(e.name, _pass(e.arg, parity, expand))
    if isinstance(e, (Sum, Prod)):
        lower = _pass(e.lower, parity, expand)
        upper = _pass(e.upper, parity, expand)
        body = _pass(e.body, parity, expand)
        lo = _const_int(lower)
        hi = _const_int(upper)
        if lo is not None and hi is not None and hi < lo:
            return Const(Fraction(0 if isinstance(e, Sum) else 1))
        return type(e)(e.index, lower, upper, body)
    raise TypeError(f"not an expression: {e!r}")


def _const_int(e):
    if (
        isinstance(e, Const)
        and isinstance(e.value, Fraction)
        and e.value.denominator == 1
    ):
        return e.value.numerator
    return None


def _const_fraction(e):
    if isinstance(e, Const) and isinstance(e.value, Fraction):
        return e.value
    return None


# ----------------------------------------------------------------------
# power and function rules
# ----------------------------------------------------------------------

def _pow_rules(base, exponent, parity):
    bc = isinstance(base, Const) and S.is_exact(base.value)
    ec = _const_fraction(exponent)
    if bc and ec is not None and ec.denominator == 1:
        n = ec.numerator
        if n >= 0 or not S.is_zero(base.value):
            size = S._exact_digit_size(base.value) * max(abs(n), 1)
            if size <= S.EXACT_POW_DIGIT_CAP:
                return Const(S.num_pow(base.value, ec))
    if ec is not None and ec == 1:
        return base
    if ec is not None and ec == 0 and provably_nonzero(base):
        return Const(Fraction(1))
    if bc and base.value == Fraction(-1):
        p = _int_parity(exponent, parity)
        if p == 0:
            return Const(Fraction(1))
        if p == 1:
            return Const(Fraction(-1))
    return Pow(base, exponent)


_INT_UNKNOWN = 2


def _int_parity(e, parity):
    """Parity of an integer-valued exponent.

    Returns 0 (even), 1 (odd), _INT_UNKNOWN (certainly an integer, but
    parity undecided, e.g. G under an unspecified context), or None
    (not provably integer-valued; 2*x could be odd for fractional x).
    """
    v = _const_int(e)
    if v is not None:
        return v & 1
    if isinstance(e, Grossone):
        if parity is Parity.EVEN:
            return 0
        if parity is Parity.ODD:
            return 1
        return _INT_UNKNOWN
    if isinstance(e, Neg):
        return _int_parity(e.arg, parity)
    if isinstance(e, (Add, Sub)):
        a = _int_parity(e.left, parity)
        b = _int_parity(e.right, parity)
        if a is None or b is None:
            return None
        if a == _INT_UNKNOWN or b == _INT_UNKNOWN:
            return _INT_UNKNOWN
        return a ^ b
    if isinstance(e, Mul):
        a = _int_parity(e.left, parity)
        b = _int_parity(e.right, parity)
        if a is None or b is None:
            return None
        if a == 0 or b == 0:
            return 0
        if a == 1 and b == 1:
            return 1
        return _INT_UNKNOWN
    if isinstance(e, Pow):
        base = _int_parity(e.base, parity)
        if base is None:
            return None
        n = _const_int(e.exponent)
        if n is not None and n >= 1:
            return base
        if isinstance(e.exponent, Grossone):
            return base
        return None
    return None


def _func_rules(name, arg):
    if isinstance(arg, Const) and isinstance(arg.value, Fraction):
        v = arg.value
        if name == "exp" and v == 0:
            return Const(Fraction(1))
        if name == "sin" and v == 0:
            return Const(Fraction(0))
        if name == "cos" and v == 0:
            return Const(Fraction(1))
        if name == "sqrt":
            if v == 0:
                return Const(Fraction(0))
            root = S.exact_sqrt(abs(v))
            if root is not None:
                if v > 0:
                    return Const(root)
                return Const(S.QComplex(Fraction(0), root))
    if isinstance(arg, Const) and name in ("re", "im"):
        if S.is_exact(arg.value):
            part = S.num_re(arg.value) if name == "re" else S.num_im(arg.value)
            return Const(part)
    return Func(name, arg)


# ----------------------------------------------------------------------
# ordering and positivity
# ----------------------------------------------------------------------

_ORDER = {
    Var: 0,
    Grossone: 1,
    Func: 2,
    Pow: 3,
    Mul: 4,
    Div: 5,
    Neg: 6,
    Add: 7,
    Sub: 8,
    Sum: 9,
    Prod: 10,
    Const: 11,
}


def sort_key(e):
    """Total deterministic order on trees, constants sorting last."""
    tag = _ORDER[type(e)]
    if isinstance(e, Const):
        v = e.value
        if isinstance(v, Fraction):
            payload = (0, v.numerator, v.denominator)
        elif isinstance(v, S.QComplex):
            payload = (1, v.re.numerator, v.re.denominator,
                       v.im.numerator, v.im.denominator)
        elif isinstance(v, S.Real):
            payload = (2, v.man, v.exp)
        else:
            payload = (3, v.re.man, v.re.exp, v.im.man, v.im.exp)
        return (tag, payload)
    if isinstance(e, Var):
        return (tag, e.name)
    if isinstance(e, Grossone):
        return (tag,)
    if isinstance(e, Neg):
        return (tag, sort_key(e.arg))
    if isinstance(e, (Add, Sub, Mul, Div)):
        return (tag, sort_key(e.left), sort_key(e.right))
    if isinstance(e, Pow):
        return (tag, sort_key(e.base), sort_key(e.exponent))
    if isinstance(e, Func):
        return (tag, e.name, sort_key(e.arg))
    return (tag, e.index, sort_key(e.lower), sort_key(e.upper),
            sort_key(e.body))


def provably_positive(e):
    if isinstance(e, Const):
        return isinstance(e.value, Fraction) and e.value > 0
    if isinstance(e, Grossone):
        return True
    if isinstance(e, (Add, Mul, Div)):
        return provably_positive(e.left) and provably_positive(e.right)
    if isinstance(e, Pow):
        ec = _const_fraction(e.exponent)
        return provably_positive(e.base) and ec is not None
    return False


def provably_nonzero(e):
    """True only when every valid binding keeps the value nonzero."""
    if isinstance(e, Const):
        return not S.is_zero(e.value)
    if isinstance(e, Grossone):
        return True
    if isinstance(e, Neg):
        return provably_nonzero(e.arg)
    if isinstance(e, Mul):
        return provably_nonzero(e.left) and provably_nonzero(e.right)
    if isinstance(e, Div):
        return provably_nonzero(e.left)
    if isinstance(e, Pow):
        return provably_nonzero(e.base)
    if isinstance(e, Func) and e.name == "exp":
        return True
    if isinstance(e, (Add, Sub)):
        return provably_positive(e) or provably_positive(_flip(e))
    return False


def _flip(e):
    if isinstance(e, Sub):
        return Sub(e.right, e.left)
    return Neg(e)


# ----------------------------------------------------------------------
# multiplicative collection
# ----------------------------------------------------------------------

class _MulParts:
    __slots__ = ("coeff", "num", "den", "changed")

    def __init__(self):
        self.coeff = Fraction(1)
        self.num = []   # list of (base, exponent) pairs
        self.den = []
        self.changed = False


def _mul_split(e, parts, into_den):
    if isinstance(e, Mul):
        _mul_split(e.left, parts, into_den)
        _mul_split(e.right, parts, into_den)
        return
    if isinstance(e, Div):
        _mul_split(e.left, parts, into_den)
        _mul_split(e.right, parts, not into_den)
        return
    if isinstance(e, Neg):
        parts.coeff = -parts.coeff
        parts.changed = True
        _mul_split(e.arg, parts, into_den)
        return
    if isinstance(e, Const) and S.is_exact(e.value):
        v = e.value
        side = parts.den if into_den else parts.num
        if S.is_zero(v):
            # leave literal zeros as factors so 0/0 stays an error
            side.append((e, Const(Fraction(1))))
            return
        parts.coeff = S.num_mul(parts.coeff, v) if not into_den else (
            S.num_div(parts.coeff, v)
        )
        side.append(None)  # absorbed marker
        return
    if isinstance(e, Pow):
        side = parts.den if into_den else parts.num
        side.append((e.base, e.exponent))
        return
    side = parts.den if into_den else parts.num
    side.append((e, Const(Fraction(1))))


def _combine_side(pairs, parity, parts):
    """Merge repeated bases on one side of the fraction bar."""
    out = []
    for base, expo in pairs:
        for i, (b2, e2) in enumerate(out):
            if b2 == base:
                merged = _collect_add(Add(e2, expo), parity, False)
                out[i] = (base, merged)
                parts.changed = True
                break
        else:
            out.append((base, expo))
    return out


def _collect_mul(e, parity, expand):
    parts = _MulParts()
    _mul_split(e, parts, False)
    absorbed_num = parts.num.count(None)
    absorbed_den = parts.den.count(None)
    num = [p for p in parts.num if p is not None]
    den = [p for p in parts.den if p is not None]
    if absorbed_num + absorbed_den:
        # dropping a 1 or merging two constants is a real change; a
        # single constant that merely moved into the coefficient is not
        total = absorbed_num + absorbed_den
        if total > 1 or parts.coeff == 1 or not (num or den):
            parts.changed = True
    if any(_is_zero_const(b) for b, _ in num) and not den:
        if parts.coeff != 0:
            return Const(Fraction(0))
    num = _combine_side(num, parity, parts)
    den = _combine_side(den, parity, parts)

    kept_den = []
    for b, x in den:
        hit = None
        for i, (b2, x2) in enumerate(num):
            if b2 == b and x2 == x and provably_nonzero(b):
                hit = i
                break
        if hit is not None:
            num.pop(hit)
            parts.changed = True
        else:
            kept_den.append((b, x))
    den = kept_den

    if S.is_zero(parts.coeff) and not den:
        return Const(Fraction(0))
    if not parts.changed:
        return e
    num.sort(key=lambda p: sort_key(_factor_expr(p)))
    den.sort(key=lambda p: sort_key(_factor_expr(p)))
    return _mul_build(parts.coeff, num, den, parity)


def _is_zero_const(e):
    return isinstance(e, Const) and S.is_exact(e.value) and S.is_zero(e.value)


def _factor_expr(pair):
    base, expo = pair
    expo_f = _const_fraction(expo)
    if expo_f == 1:
        return base
    return _pow_rules(base, expo, Parity.UNSPECIFIED)


def _mul_build(coeff, num, den, parity):
    factors = [_factor_expr(p) for p in num]
    negate = False
    if isinstance(coeff, Fraction) and coeff < 0:
        negate = True
        coeff = -coeff
    num_c = Fraction(coeff.numerator) if isinstance(coeff, Fraction) else coeff
    den_c = Fraction(coeff.denominator) if isinstance(coeff, Fraction) else None

    spine = None
    if isinstance(coeff, S.QComplex):
        spine = Const(coeff)
    elif num_c != 1 or not factors:
        spine = Const(num_c)
    for f in factors:
        spine = f if spine is None else Mul(spine, f)

    den_factors = [_factor_expr(p) for p in den]
    if den_c is not None and den_c != 1:
        den_factors.insert(0, Const(den_c))
    if den_factors:
        dspine = den_factors[0]
        for f in den_factors[1:]:
            dspine = Mul(dspine, f)
        spine = Div(spine, dspine)
    return Neg(spine) if negate else spine


# ----------------------------------------------------------------------
# additive collection
# ----------------------------------------------------------------------

def _add_split(e, sign, terms):
    if isinstance(e, Add):
        _add_split(e.left, sign, terms)
        _add_split(e.right, sign, terms)
        return
    if isinstance(e, Sub):
        _add_split(e.left, sign, terms)
        _add_split(e.right, -sign, terms)
        return
    if isinstance(e, Neg):
        _add_split(e.arg, -sign, terms)
        return
    terms.append((sign, e))


def _term_parts(e):
    """Split a term into (exact coefficient, canonical core or None)."""
    if isinstance(e, Const) and S.is_exact(e.value):
        return e.value, None
    parts = _MulParts()
    _mul_split(e, parts, False)
    num = [p for p in parts.num if p is not None]
    den = [p for p in parts.den if p is not None]
    num.sort(key=lambda p: sort_key(_factor_expr(p)))
    den.sort(key=lambda p: sort_key(_factor_expr(p)))
    if not num and not den:
        return parts.coeff, None
    core = _mul_build(Fraction(1), num, den, Parity.UNSPECIFIED)
    return parts.coeff, core


def _collect_add(e, parity, expand):
    raw = []
    _add_split(e, 1, raw)
    order = []
    groups = {}
    const_acc = Fraction(0)
    const_seen = 0
    changed = False
    for sign, term in raw:
        coeff, core = _term_parts(term)
        if sign < 0:
            coeff = S.num_neg(coeff)
        if core is None:
            const_acc = S.num_add(const_acc, coeff)
            const_seen += 1
            continue
        key = sort_key(core)
        if key in groups:
            old_coeff, _ = groups[key]
            groups[key] = (S.num_add(old_coeff, coeff), core)
            changed = True
        else:
            groups[key] = (coeff, core)
            order.append(key)
    if const_seen > 1:
        changed = True

    kept = []
    for key in order:
        coeff, core = groups[key]
        if S.is_zero(coeff):
            changed = True
            continue
        kept.append((coeff, core))

    if expand:
        kept, const_acc, folded = _fold_over_denominator(kept, const_acc)
        changed = changed or folded

    if const_seen == 1 and S.is_zero(const_acc) and kept:
        changed = True  # a lone +0 dropped
    if not changed:
        return e

    pos = []
    neg = []
    for coeff, core in kept:
        if isinstance(coeff, Fraction) and coeff < 0:
            neg.append(_apply_coeff(S.num_neg(coeff), core))
        else:
            pos.append(_apply_coeff(coeff, core))
    if not S.is_zero(const_acc):
        if isinstance(const_acc, Fraction) and const_acc < 0:
            neg.append(Const(S.num_neg(const_acc)))
        else:
            pos.append(Const(const_acc))

    if not pos and not neg:
        return Const(Fraction(0))
    if pos:
        spine = pos[0]
        for t in pos[1:]:
            spine = Add(spine, t)
        for t in neg:
            spine = Sub(spine, t)
        return spine
    spine = neg[0]
    for t in neg[1:]:
        spine = Add(spine, t)
    return Neg(spine)


def _apply_coeff(coeff, core):
    if coeff == 1:
        return core
    if isinstance(core, Div):
        return Div(_apply_coeff(coeff, core.left), core.right)
    return Mul(Const(coeff), core)


def _fold_over_denominator(kept, const_acc):
    """Put every term over the single shared denominator, if there is one.

    Only used in expand mode: the recombined numerator gets another
    collection pass, which is what lets telescoping differences cancel.
    """
    dens = set()
    for _, core in kept:
        if isinstance(core, Div):
            dens.add(sort_key(core.right))
    if len(dens) != 1:
        return kept, const_acc, False
    den_expr = next(c.right for _, c in kept if isinstance(c, Div))
    plain = [(c, core) for c, core in kept if not isinstance(core, Div)]
    overs = [(c, core) for c, core in kept if isinstance(core, Div)]
    if not overs or (not plain and S.is_zero(const_acc) and len(overs) < 2):
        return kept, const_acc, False
    num_terms = []
    for coeff, core in overs:
        num_terms.append((coeff, core.left))
    for coeff, core in plain:
        num_terms.append((coeff, Mul(core, den_expr)))
    if not S.is_zero(const_acc):
        num_terms.append((const_acc, den_expr))
    spine = None
    for coeff, t in num_terms:
        piece = _apply_coeff(coeff, t) if coeff != 1 else t
        spine = piece if spine is None else Add(spine, piece)
    return [(Fraction(1), Div(spine, den_expr))], Fraction(0), True


# ----------------------------------------------------------------------
# expansion (last resort)
# ----------------------------------------------------------------------

def _expand(e):
    if isinstance(e, (Const, Var, Grossone)):
        return e
    if isinstance(e, Neg):
        return Neg(_expand(e.arg))
    if isinstance(e, (Add, Sub)):
        return type(e)(_expand(e.left), _expand(e.right))
    if isinstance(e, Mul):
        return _distribute(_expand(e.left), _expand(e.right))
    if isinstance(e, Div):
        left = _expand(e.left)
        right = _expand(e.right)
        if isinstance(left, (Add, Sub)):
            return type(left)(
                _expand(Div(left.left, right)), _expand(Div(left.right, right))
            )
        return Div(left, right)
    if isinstance(e, Pow):
        base = _expand(e.base)
        n = _const_int(e.exponent)
        if (
            n is not None
            and 2 <= n <= _EXPAND_POW_CAP
            and isinstance(base, (Add, Sub))
        ):
            out = base
            for _ in range(n - 1):
                out = _distribute(out, base)
            return out
        return Pow(base, e.exponent)
    if isinstance(e, Func):
        return Func(e.name, _expand(e.arg))
    if isinstance(e, (Sum, Prod)):
        return type(e)(e.index, _expand(e.lower), _expand(e.upper),
                       _expand(e.body))
    raise TypeError(f"not an expression: {e!r}")


def _distribute(a, b):
    if isinstance(a, Add):
        return Add(_distribute(a.left, b), _distribute(a.right, b))
    if isinstance(a, Sub):
        return Sub(_distribute(a.left, b), _distribute(a.right, b))
    if isinstance(b, Add):
        return Add(_distribute(a, b.left), _distribute(a, b.right))
    if isinstance(b, Sub):
        return Sub(_distribute(a, b.left), _distribute(a, b.right))
    if isinstance(a, Neg):
        return Neg(_distribute(a.arg, b))
    if isinstance(b, Neg):
        return Neg(_distribute(a, b.arg))
    return Mul(a, b)
