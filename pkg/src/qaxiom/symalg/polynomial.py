"""Generators, words and noncommutative polynomials with exact coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coefficient import ONE, Coefficient, GaussianRational

_GENERATOR_RE = re.compile(r"^([PQ])([1-9][0-9]*)$")


@dataclass(frozen=True, order=True)
class Generator:
    kind: str  # "P" or "Q"
    index: int

    def __post_init__(self):
        if self.kind not in ("P", "Q"):
            raise ValueError(f"generator kind must be 'P' or 'Q', not {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator index starts at 1")

    @classmethod
    def parse(cls, name):
        m = _GENERATOR_RE.match(name.strip())
        if not m:
            raise ValueError(f"not a generator name: {name!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self):
        return f"{self.kind}{self.index}"

    def __repr__(self):
        return str(self)


def gen(name):
    """Shorthand: ``gen("P1")``."""
    return Generator.parse(name)


def format_word(word):
    if not word:
        return "1"
    out = []
    i = 0
    while i < len(word):
        j = i
        while j + 1 < len(word) and word[j + 1] == word[i]:
            j += 1
        run = j - i + 1
        out.append(str(word[i]) if run == 1 else f"{word[i]}^{run}")
        i = j + 1
    return "*".join(out)


class NCPolynomial:
    """Finite map ``word -> Coefficient``; a word is a tuple of Generators.

    Zero coefficients are never stored, so the empty map is the zero
    polynomial and ``==`` compares canonical forms.  Instances are treated
    as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for word, coef in terms.items():
                coef = Coefficient.coerce(coef)
                if coef:
                    word = tuple(word)
                    clean[word] = clean[word] + coef if word in clean else coef
            clean = {w: c for w, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # caller guarantees canonical input
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def generator(cls, g):
        if isinstance(g, str):
            g = Generator.parse(g)
        return cls._raw({(g,): ONE})

    @classmethod
    def word(cls, word, coef=ONE):
        return cls({tuple(word): coef})

    @classmethod
    def constant(cls, coef):
        return cls({(): coef})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, NCPolynomial):
            return value
        if isinstance(value, Generator):
            return cls.generator(value)
        if isinstance(value, (Coefficient, GaussianRational, int, Fraction)):
            return cls.constant(Coefficient.coerce(value))
        raise TypeError(f"cannot convert {value!r} to NCPolynomial")

    # inspection

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self):
        return max((len(w) for w in self._terms), default=0)

    def generators(self):
        return {g for w in self._terms for g in w}

    def constants(self):
        return set().union(*(c.constants() for c in self._terms.values())) if self._terms else set()

    def is_constant(self):
        return all(not w for w in self._terms)

    def constant_term(self):
        return self._terms.get((), Coefficient())

    def coefficient(self, word):
        return self._terms.get(tuple(word), Coefficient())

    def __eq__(self, other):
        try:
            other = NCPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic

    def __add__(self, other):
        try:
            other = NCPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            if w in acc:
                s = acc[w] + c
                if s:
                    acc[w] = s
                else:
                    del acc[w]
            else:
                acc[w] = c
        return NCPolynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = NCPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return NCPolynomial.coerce(other) - self

    def scale(self, coef):
        coef = Coefficient.coerce(coef)
        if not coef:
            return NCPolynomial()
        return NCPolynomial({w: c * coef for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Coefficient, GaussianRational, int, Fraction)):
            return self.scale(other)
        try:
            other = NCPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        acc = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                c = c1 * c2
                acc[w] = acc[w] + c if w in acc else c
        return NCPolynomial(acc)

    def __rmul__(self, other):
        if isinstance(other, (Coefficient, GaussianRational, int, Fraction)):
            return self.scale(other)
        return NCPolynomial.coerce(other) * self

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomials only take non-negative integer powers")
        result = NCPolynomial.constant(ONE)
        for _ in range(exponent):
            result = result * self
        return result

    def map_coefficients(self, fn):
        return NCPolynomial({w: fn(c) for w, c in self._terms.items()})

    def __repr__(self):
        return f"NCPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for word, coef in sorted(self._terms.items(), key=lambda t: (len(t[0]), [str(g) for g in t[0]])):
            parts.append(_format_term(coef, word))
        out = parts[0]
        for part in parts[1:]:
            out += " - " + part[1:] if part.startswith("-") else " + " + part
        return out


def _format_term(coef, word):
    if not word:
        c = str(coef)
        return c
    w = format_word(word)
    if coef == 1:
        return w
    if coef == -1:
        return "-" + w
    c = str(coef)
    if coef.is_monomial():
        return f"{c}*{w}"
    return f"({c})*{w}"


def commutator_formal(p, q):
    """``p*q - q*p`` without any rewriting."""
    p = NCPolynomial.coerce(p)
    q = NCPolynomial.coerce(q)
    return p * q - q * p
