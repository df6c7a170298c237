"""Parser for polynomial text and ideal presentations.

Grammar (whitespace insignificant)::

    presentation := "Q" "[" ident ("," ident)* "]" "/" "(" poly ("," poly)* ")"
    poly         := ["-"|"+"] term (("+"|"-") term)*
    term         := [coef "*"] monomial | coef
    monomial     := factor ("*" factor)*
    factor       := ident ["^" natural]
    coef         := integer | integer "/" natural

A leading sign is accepted so that the canonical printed form of any
polynomial parses back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .polyring import Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^\[\](),]))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.message = message
        super().__init__(f"line {self.line}, column {self.column}: {message}")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables=None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables) if variables is not None else None

    def peek(self, value=None, kind=None) -> bool:
        k, v, _ = self.tokens[self.i]
        if kind is not None and k != kind:
            return False
        return value is None or v == value

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message):
        raise ParseError(message, self.text, self.tokens[self.i][2])

    def expect(self, value=None, kind=None):
        if not self.peek(value, kind):
            k, v, _ = self.tokens[self.i]
            want = repr(value) if value else kind
            got = "end of input" if k == "eof" else repr(v)
            self.error(f"expected {want}, got {got}")
        return self.next()

    # poly := [sign] term (sign term)*
    def poly(self) -> Polynomial:
        sign = 1
        if self.peek("-") or self.peek("+"):
            sign = -1 if self.next()[1] == "-" else 1
        result = self.term() * sign
        while self.peek("+") or self.peek("-"):
            op = self.next()[1]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Polynomial:
        if self.peek(kind="num"):
            c = self.coef()
            if self.peek("*"):
                self.next()
                return self.monomial() * c
            return Polynomial.constant(c, self.variables)
        if self.peek(kind="ident"):
            return self.monomial()
        self.error("expected a term")

    def coef(self) -> Fraction:
        num = int(self.next()[1])
        if self.peek("/"):
            self.next()
            _, den, pos = self.expect(kind="num")
            if int(den) == 0:
                raise ParseError("zero denominator", self.text, pos)
            return Fraction(num, int(den))
        return Fraction(num)

    def monomial(self) -> Polynomial:
        result = self.factor()
        while self.peek("*"):
            self.next()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        _, name, pos = self.expect(kind="ident")
        if name not in self.variables:
            raise ParseError(f"unknown variable {name!r}", self.text, pos)
        x = Polynomial.var(name, self.variables)
        if self.peek("^"):
            self.next()
            return x ** int(self.expect(kind="num")[1])
        return x

    def presentation(self):
        from .groebner import IdealPresentation

        _, q, pos = self.expect(kind="ident")
        if q != "Q":
            raise ParseError("presentation must start with 'Q'", self.text, pos)
        self.expect("[")
        names = [self.expect(kind="ident")]
        while self.peek(","):
            self.next()
            names.append(self.expect(kind="ident"))
        seen = set()
        for _, name, p in names:
            if name in seen:
                raise ParseError(f"duplicate variable {name!r}", self.text, p)
            seen.add(name)
        self.variables = tuple(n for _, n, _ in names)
        self.expect("]")
        self.expect("/")
        self.expect("(")
        gens = [self._generator()]
        while self.peek(","):
            self.next()
            gens.append(self._generator())
        self.expect(")")
        self.expect(kind="eof")
        return IdealPresentation(self.variables, tuple(gens))

    def _generator(self) -> Polynomial:
        pos = self.tokens[self.i][2]
        g = self.poly()
        if g.is_zero():
            raise ParseError("zero generator", self.text, pos)
        if g.constant_term():
            raise ParseError(
                f"generator {g} has nonzero constant term; the quotient would not be local",
                self.text, pos)
        return g


def parse_polynomial(text: str, variables) -> Polynomial:
    """Parse ``text`` as a polynomial in the given universe."""
    p = _Parser(text, variables)
    result = p.poly()
    p.expect(kind="eof")
    return result


def parse_presentation(text: str):
    """Parse ``Q[S1,...]/(g1, ...)`` into an :class:`IdealPresentation`."""
    return _Parser(text).presentation()
