"""Tiny recursive-descent parser for element and relation strings.

Grammar (infix ASCII): `+ - * / ^ ( )`, integer literals, names.
`*` is concatenation/multiplication, `^` takes an integer exponent
(negative exponents are accepted only where the value is invertible).
The same grammar serves scalar strings over a valued field and relation
sides over a presented algebra; the environment decides what names mean.
"""

from __future__ import annotations

import re

from .errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class Evaluator:
    """Evaluates an expression in an environment of named ring elements.

    The environment supplies `lookup(name)`, `from_int(n)`, and the ops
    are the elements' own operators.  Division is delegated to
    `divide(a, b)` so algebra contexts can reject it.
    """

    def __init__(self, lookup, from_int, divide=None, power=None):
        self.lookup = lookup
        self.from_int = from_int
        self.divide = divide or (lambda a, b: a / b)
        self.power = power or (lambda a, n: a**n)

    def eval(self, text: str):
        tokens = tokenize(text)
        self._tokens = tokens
        self._i = 0
        value = self._sum()
        kind, tok, pos = self._peek()
        if kind != "end":
            raise ParseError(f"unexpected {tok!r}", pos)
        return value

    def _peek(self):
        return self._tokens[self._i]

    def _next(self):
        tok = self._tokens[self._i]
        self._i += 1
        return tok

    def _sum(self):
        kind, tok, _ = self._peek()
        negate = False
        if kind == "op" and tok in "+-":
            self._next()
            negate = tok == "-"
        value = self._product()
        if negate:
            value = -value
        while True:
            kind, tok, _ = self._peek()
            if kind == "op" and tok == "+":
                self._next()
                value = value + self._product()
            elif kind == "op" and tok == "-":
                self._next()
                value = value - self._product()
            else:
                return value

    def _product(self):
        value = self._power()
        while True:
            kind, tok, _ = self._peek()
            if kind == "op" and tok == "*":
                self._next()
                value = value * self._power()
            elif kind == "op" and tok == "/":
                _, _, pos = self._next()
                try:
                    value = self.divide(value, self._power())
                except ZeroDivisionError:
                    raise ParseError("division by zero", pos) from None
            else:
                return value

    def _power(self):
        value = self._atom()
        kind, tok, _ = self._peek()
        if kind == "op" and tok == "^":
            self._next()
            sign = 1
            kind, tok, pos = self._peek()
            if kind == "op" and tok == "-":
                self._next()
                sign = -1
                kind, tok, pos = self._peek()
            if kind != "int":
                raise ParseError("exponent must be an integer", pos)
            self._next()
            value = self.power(value, sign * tok)
        return value

    def _atom(self):
        kind, tok, pos = self._next()
        if kind == "int":
            return self.from_int(tok)
        if kind == "name":
            try:
                return self.lookup(tok)
            except KeyError:
                raise ParseError(f"unknown name {tok!r}", pos) from None
        if kind == "op" and tok == "(":
            value = self._sum()
            kind, tok, pos = self._next()
            if not (kind == "op" and tok == ")"):
                raise ParseError("expected ')'", pos)
            return value
        if kind == "op" and tok == "-":
            return -self._atom()
        raise ParseError(f"unexpected {tok!r}", pos)
