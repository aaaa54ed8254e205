"""Expression syntax: tokenizer, recursive-descent parser, printer and lowering.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := RATIONAL | 'i' | IDENT | '[' expr ',' expr ']' | '(' expr ')'

``RATIONAL`` is ``INT`` or ``INT/INT`` with no spaces around the slash.
Positions in errors are 1-based; the end of input is ``len(text) + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ExpressionSyntaxError, NonInvertible, UnknownGenerator, UnknownSymbol
from ..symalg import BUILTIN_CONSTANTS, Coefficient, Generator, NCPolynomial, commutator_formal

_GEN_RE = re.compile(r"[PQ][1-9][0-9]*$")
_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>[0-9]+(?:/[0-9]+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^\[\](),])
""", re.VERBOSE)


# AST

@dataclass(frozen=True)
class Rational:
    value: Fraction


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class ConstRef:
    name: str


@dataclass(frozen=True)
class GeneratorRef:
    name: str


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object


@dataclass(frozen=True)
class Negation:
    operand: object


# tokens

@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, end
    text: str
    pos: int   # 1-based


def tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[i]!r}", i + 1,
                                        ("number", "identifier", "operator"))
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), i + 1))
        i = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


_ATOM_START = ("number", "identifier", "i", "[", "(")
_OPERATORS_AFTER_ATOM = ("+", "-", "*", "^")


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text):
        return self.tok.kind == "op" and self.tok.text == text

    def fail(self, expected):
        t = self.tok
        what = "end of input" if t.kind == "end" else f"{t.text!r}"
        raise ExpressionSyntaxError(f"unexpected {what}", t.pos, expected)

    def expect(self, text, also=()):
        if not self.at(text):
            self.fail((text,) + tuple(also))
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self.fail(_OPERATORS_AFTER_ATOM + ("end of input",))
        return node

    def expr(self):
        terms = [self.term()]
        while self.at("+") or self.at("-"):
            op = self.advance().text
            t = self.term()
            terms.append(Negation(t) if op == "-" else t)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.unary()]
        while self.at("*"):
            self.advance()
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def unary(self):
        if self.at("-"):
            self.advance()
            return Negation(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.advance()
            sign = 1
            if self.at("-"):
                self.advance()
                sign = -1
            if self.tok.kind != "num" or "/" in self.tok.text:
                self.fail(("integer",) if sign < 0 else ("integer", "-"))
            return Power(base, sign * int(self.advance().text))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Rational(Fraction(t.text))
        if t.kind == "ident":
            self.advance()
            if t.text == "i":
                return ImaginaryUnit()
            if _GEN_RE.match(t.text):
                return GeneratorRef(t.text)
            return ConstRef(t.text)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")", _OPERATORS_AFTER_ATOM)
            return inner
        if self.at("["):
            self.advance()
            left = self.expr()
            self.expect(",", _OPERATORS_AFTER_ATOM)
            right = self.expr()
            self.expect("]", _OPERATORS_AFTER_ATOM)
            return Bracket(left, right)
        self.fail(_ATOM_START + ("-",))


def parse_expression(text):
    """Parse ``text`` into an AST; raises ExpressionSyntaxError."""
    return _Parser(text).parse()


# printing

def _atomic(node):
    return isinstance(node, (ImaginaryUnit, ConstRef, GeneratorRef, Bracket)) or (
        isinstance(node, Rational) and node.value.denominator == 1 and node.value >= 0)


def to_text(node):
    """Canonical surface text; ``parse_expression(to_text(n)) == n``."""
    if isinstance(node, Rational):
        v = node.value
        text = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return text if v.denominator == 1 and v >= 0 else f"({text})"
    if isinstance(node, ImaginaryUnit):
        return "i"
    if isinstance(node, (ConstRef, GeneratorRef)):
        return node.name
    if isinstance(node, Bracket):
        return f"[{to_text(node.left)},{to_text(node.right)}]"
    if isinstance(node, Power):
        base = to_text(node.base)
        if not _atomic(node.base) and not isinstance(node.base, Rational):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Negation):
        inner = to_text(node.operand)
        if isinstance(node.operand, (Sum, Product)):
            inner = f"({inner})"
        return "-" + inner
    if isinstance(node, Product):
        parts = []
        for f in node.factors:
            s = to_text(f)
            parts.append(f"({s})" if isinstance(f, (Sum, Product)) else s)
        return "*".join(parts)
    if isinstance(node, Sum):
        out = []
        for k, t in enumerate(node.terms):
            if isinstance(t, Sum):
                s = f"({to_text(t)})"
            elif isinstance(t, Negation) and k > 0:
                inner = t.operand
                body = to_text(inner)
                if isinstance(inner, (Sum, Product)) or body.startswith("-"):
                    body = f"({body})"
                out.append(" - " + body)
                continue
            else:
                s = to_text(t)
            out.append(s if k == 0 else " + " + s)
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")


# lowering

def lower(node, algebra=None, epsilon12=None):
    """Evaluate an AST to an NCPolynomial.

    Brackets lower to the formal ``pq - qp``; ``eps12`` becomes the algebra's
    (or the given) epsilon convention.  Constants must be built-in or
    declared by the algebra; generators must belong to it.
    """
    if epsilon12 is None:
        epsilon12 = algebra.epsilon12 if algebra is not None else -1
    known = set(algebra.constants) if algebra is not None else set(BUILTIN_CONSTANTS)
    gens = set(algebra.generators) if algebra is not None else None

    def go(n):
        if isinstance(n, Rational):
            return NCPolynomial.constant(Coefficient.scalar(n.value))
        if isinstance(n, ImaginaryUnit):
            return NCPolynomial.constant(Coefficient.scalar(0, 1))
        if isinstance(n, ConstRef):
            if n.name == "eps12":
                return NCPolynomial.constant(Coefficient.scalar(epsilon12))
            if n.name not in known:
                raise UnknownSymbol(f"unknown constant {n.name!r}")
            return NCPolynomial.constant(Coefficient.const(n.name))
        if isinstance(n, GeneratorRef):
            g = Generator.parse(n.name)
            if gens is not None and g not in gens:
                raise UnknownGenerator(f"{g} is not a generator of this algebra")
            return NCPolynomial.generator(g)
        if isinstance(n, Sum):
            acc = NCPolynomial()
            for t in n.terms:
                acc = acc + go(t)
            return acc
        if isinstance(n, Product):
            acc = NCPolynomial.constant(Coefficient.scalar(1))
            for f in n.factors:
                acc = acc * go(f)
            return acc
        if isinstance(n, Negation):
            return -go(n.operand)
        if isinstance(n, Power):
            base = go(n.base)
            if n.exponent >= 0:
                return base ** n.exponent
            if not base.is_constant():
                raise NonInvertible(f"negative power of a non-constant expression: {to_text(n)}")
            return NCPolynomial.constant(base.constant_term() ** n.exponent)
        if isinstance(n, Bracket):
            return commutator_formal(go(n.left), go(n.right))
        raise TypeError(f"not an expression node: {n!r}")

    return go(node)


def parse_polynomial(text, algebra=None, epsilon12=None):
    return lower(parse_expression(text), algebra, epsilon12)


def parse_coefficient(text, algebra=None, epsilon12=None):
    """Parse text that must lower to a generator-free coefficient."""
    p = parse_polynomial(text, algebra, epsilon12)
    if not p.is_constant():
        return None
    return p.constant_term()
