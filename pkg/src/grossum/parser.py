"""Text form of expressions.

Grammar (whitespace free between any two tokens):

    expr    := ["-"] term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := base ["^" factor]
    base    := NUMBER | NAME | "G" | call | "(" expr ")"
    call    := FUNC "(" expr ")"
             | ("sum" | "prod") "(" NAME "," expr "," expr "," expr ")"

NUMBER is a nonnegative integer literal.  Two integer literals joined
by "/" fold to a single rational constant, so "2/3" parses to the
constant 2/3 rather than a division node, and a leading minus in expr
position folds into a literal ("-5" is the constant -5).  Anything
else keeps its structure.
"""

from fractions import Fraction

from .errors import ExprSyntaxError, UnknownFunction, UnboundIndex
from .expr import (
    FUNC_NAMES,
    Add,
    Const,
    Div,
    Func,
    Grossone,
    Mul,
    Neg,
    Pow,
    Prod,
    Sub,
    Sum,
    Var,
    free_vars,
)

_KEYWORDS = ("sum", "prod")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text):
    toks = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            col += 1
            i += 1
            continue
        if ch == "①":  # circled-one rendering of the G token
            toks.append(_Token("name", "G", line, col))
            col += 1
            i += 1
            continue
        if ch in "0123456789":
            j = i
            while j < n and text[j] in "0123456789":
                j += 1
            toks.append(_Token("number", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isascii() and ch.isalpha():
            j = i
            while j < n and text[j].isascii() and text[j].isalpha():
                j += 1
            toks.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^(),":
            toks.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
    toks.append(_Token("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what=None):
        tok = self.peek()
        if tok.kind != kind:
            need = what or f"'{kind}'"
            got = tok.text or "end of input"
            raise ExprSyntaxError(
                f"expected {need}, got {got!r}", tok.line, tok.col
            )
        return self.take()

    # ------------------------------------------------------------------

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(
                f"trailing input starting at {tok.text!r}", tok.line, tok.col
            )
        return node

    def expr(self):
        negated = False
        if self.peek().kind == "-":
            self.take()
            negated = True
        node = self.term()
        if negated:
            if isinstance(node, Const) and isinstance(node.value, Fraction):
                node = Const(-node.value)
            else:
                node = Neg(node)
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            rhs = self.factor()
            if op == "*":
                node = Mul(node, rhs)
            elif (
                isinstance(node, Const)
                and isinstance(node.value, Fraction)
                and node.value.denominator == 1
                and isinstance(rhs, Const)
                and isinstance(rhs.value, Fraction)
                and rhs.value.denominator == 1
                and rhs.value > 0
            ):
                node = Const(node.value / rhs.value)
            else:
                node = Div(node, rhs)
        return node

    def factor(self):
        node = self.base()
        if self.peek().kind == "^":
            self.take()
            exponent = self.factor()  # right associative
            node = Pow(node, exponent)
        return node

    def base(self):
        tok = self.peek()
        if tok.kind == "number":
            self.take()
            return Const(Fraction(int(tok.text)))
        if tok.kind == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "name":
            self.take()
            name = tok.text
            if name == "G":
                return Grossone()
            if name in _KEYWORDS:
                return self.reduction(name, tok)
            if self.peek().kind == "(":
                if name not in FUNC_NAMES:
                    raise UnknownFunction(
                        f"unknown function {name!r}", tok.line, tok.col
                    )
                self.take()
                arg = self.expr()
                self.expect(")")
                return Func(name, arg)
            if name in FUNC_NAMES:
                raise ExprSyntaxError(
                    f"function {name!r} needs an argument list",
                    tok.line,
                    tok.col,
                )
            return Var(name)
        got = tok.text or "end of input"
        raise ExprSyntaxError(
            f"expected an expression, got {got!r}", tok.line, tok.col
        )

    def reduction(self, kw, kw_tok):
        self.expect("(", f"'(' after {kw}")
        idx_tok = self.expect("name", "an index name")
        index = idx_tok.text
        if index == "G" or index in _KEYWORDS or index in FUNC_NAMES:
            raise ExprSyntaxError(
                f"{index!r} cannot be used as an index",
                idx_tok.line,
                idx_tok.col,
            )
        self.expect(",")
        lower = self.expr()
        self.expect(",")
        upper = self.expr()
        self.expect(",")
        body = self.expr()
        self.expect(")")
        if index in free_vars(lower) | free_vars(upper):
            raise UnboundIndex(
                f"index {index!r} may not appear in its own bounds",
                idx_tok.line,
                idx_tok.col,
            )
        cls = Sum if kw == "sum" else Prod
        return cls(index, lower, upper, body)


def parse(text):
    """Parse expression text to a tree; raises ExprSyntaxError family."""
    return _Parser(text).parse()
