"""Parser for the operator DSL.

Grammar (whitespace insignificant, '#' starts a comment to end of line):

    expr      := ['+'|'-'] term (('+'|'-') term)*
    term      := factor (('*' | 'ox' | U+2297) factor)*
    factor    := scalar | generator | bracket | 'adj' '(' expr ')' | '(' expr ')'
    bracket   := '[' expr ',' expr ']'
    generator := 'E' '(' int ',' int ')' | 'H' '(' int ')'
    scalar    := decimal literal, optional exponent, optional trailing 'i'

'*' is scalar multiplication and requires a scalar operand; 'ox' is the
tensor product (a scalar operand degenerates to scaling).  Brackets are
legal only between degree-1 arguments and evaluate to the Lie bracket,
re-expanded over the generator catalog.  All errors report a character
position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec, parse_generator_name
from .operators import AbstractOperator, formal_adjoint, scalar_operator


class ParseError(ValueError):
    """Syntax or semantic error in DSL text, with a character position."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        snippet = ""
        if text:
            lo = max(0, pos - 12)
            snippet = f" near {text[lo:pos + 12]!r}"
        super().__init__(f"{message} at position {pos}{snippet}")


@dataclass
class _Token:
    kind: str  # NUMBER, NAME, or a literal punctuation character
    value: object
    pos: int


_NUMBER = re.compile(r"(\d+(?:\.\d*)?|\.\d+)([eE][+-]?\d+)?(i?)")
_NAME = re.compile(r"[A-Za-z]+")
_PUNCT = "()[],+-*"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j + 1
            continue
        if ch.isdigit() or ch == ".":
            m = _NUMBER.match(text, i)
            if not m:
                raise ParseError("malformed number", i, text)
            value = float(m.group(1) + (m.group(2) or ""))
            tokens.append(_Token("NUMBER", value * 1j if m.group(3) else value, i))
            i = m.end()
            continue
        if ch == "⊗":  # otimes
            tokens.append(_Token("NAME", "ox", i))
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        m = _NAME.match(text, i)
        if m:
            tokens.append(_Token("NAME", m.group(0), i))
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(_Token("END", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, spec: AlgebraSpec):
        self.text = text
        self.spec = spec
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}", tok.pos, self.text)
        return tok

    def fail(self, message: str, tok: _Token):
        raise ParseError(message, tok.pos, self.text)

    # -- grammar ----------------------------------------------------------

    def parse(self) -> AbstractOperator:
        op = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            self.fail("unexpected trailing input", tok)
        return op

    def expr(self) -> AbstractOperator:
        sign = 1
        if self.peek().kind in "+-":
            sign = -1 if self.next().kind == "-" else 1
        op = sign * self.term()
        while self.peek().kind in "+-":
            negative = self.next().kind == "-"
            rhs = self.term()
            op = op - rhs if negative else op + rhs
        return op

    def term(self) -> AbstractOperator:
        op = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.next()
                rhs = self.factor()
                if op.degree == 0:
                    op = op.scalar_part * rhs
                elif rhs.degree == 0:
                    op = rhs.scalar_part * op
                else:
                    self.fail("'*' requires a scalar operand; use 'ox' for tensor products", tok)
            elif tok.kind == "NAME" and tok.value == "ox":
                self.next()
                op = op.tensor(self.factor())
            else:
                return op

    def factor(self) -> AbstractOperator:
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.next()
            return scalar_operator(self.spec, tok.value)
        if tok.kind == "(":
            self.next()
            op = self.expr()
            self.expect(")")
            return op
        if tok.kind == "[":
            return self.bracket()
        if tok.kind == "NAME":
            if tok.value == "adj":
                self.next()
                self.expect("(")
                op = self.expr()
                self.expect(")")
                return formal_adjoint(op)
            if tok.value in ("E", "H"):
                return self.generator()
            self.fail(f"unknown generator {tok.value!r}", tok)
        self.fail("expected a scalar, generator, bracket, or parenthesized expression", tok)

    def generator(self) -> AbstractOperator:
        tok = self.next()  # E or H
        self.expect("(")
        first = self.expect("NUMBER")
        indices = [first.value]
        if tok.value == "E":
            self.expect(",")
            indices.append(self.expect("NUMBER").value)
        self.expect(")")
        for v in indices:
            if isinstance(v, complex) or float(v) != int(v):
                self.fail("generator indices must be integers", tok)
        name = f"{tok.value}({','.join(str(int(v)) for v in indices)})"
        try:
            parse_generator_name(name, self.spec.M)
        except KeyError:
            self.fail(f"unknown generator {name!r}", tok)
        except ValueError as err:
            self.fail(str(err), tok)
        return AbstractOperator(self.spec, {(name,): 1.0})

    def bracket(self) -> AbstractOperator:
        open_tok = self.expect("[")
        lhs = self.expr()
        self.expect(",")
        rhs = self.expr()
        self.expect("]")
        for side, label in ((lhs, "left"), (rhs, "right")):
            if side.is_zero or side.degree == 0:
                self.fail(f"bracket {label} argument is a scalar; brackets need degree-1 arguments", open_tok)
            if not side.is_degree_one():
                self.fail(f"bracket {label} argument has degree > 1; brackets need degree-1 arguments", open_tok)
        return _lie_bracket(self.spec, lhs, rhs)


def _degree_one_matrix(spec: AlgebraSpec, op: AbstractOperator) -> np.ndarray:
    x = np.zeros((spec.M, spec.M), dtype=complex)
    for (name,), coeff in op.terms.items():
        x = x + coeff * spec.generator(name)
    return x


def _lie_bracket(spec: AlgebraSpec, a: AbstractOperator, b: AbstractOperator) -> AbstractOperator:
    xa, xb = _degree_one_matrix(spec, a), _degree_one_matrix(spec, b)
    coeffs = spec.decompose(xa @ xb - xb @ xa)
    return AbstractOperator(spec, {(name,): c for name, c in coeffs.items()})


def parse_hamiltonian(text: str, spec: AlgebraSpec) -> AbstractOperator:
    """Parse DSL text to an AbstractOperator over the given algebra."""
    return _Parser(text, spec).parse()
