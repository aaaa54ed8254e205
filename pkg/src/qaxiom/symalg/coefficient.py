"""Exact scalar coefficients.

A :class:`Coefficient` is a finite sum of monomials in positive symbolic
constants (``hbar``, ``e``, ``B``, ...) with integer, possibly negative,
exponents, each weighted by a Gaussian rational ``a + b i``.  All arithmetic
is exact; floats only appear in :meth:`Coefficient.evaluate`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import MissingParam, NonInvertible

BUILTIN_CONSTANTS = ("hbar", "e", "B", "M", "alphadot")

_BUILTIN_RANK = {name: i for i, name in enumerate(BUILTIN_CONSTANTS)}


def _const_key(name):
    # built-ins print in physics order (hbar*e*B), user constants after
    return (0, _BUILTIN_RANK[name], "") if name in _BUILTIN_RANK else (1, 0, name)


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction, Rational)):
            return cls(value)
        raise TypeError(f"cannot convert {value!r} to an exact Gaussian rational")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise NonInvertible("division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return _format_gaussian(self)


def _format_fraction(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_gaussian(z):
    if not z.im:
        return _format_fraction(z.re)
    if not z.re:
        if z.im == 1:
            return "i"
        if z.im == -1:
            return "-i"
        return _format_fraction(z.im) + "*i"
    sign = "+" if z.im > 0 else "-"
    mag = abs(z.im)
    imag = "i" if mag == 1 else _format_fraction(mag) + "*i"
    return f"({_format_fraction(z.re)} {sign} {imag})"


def _monomial(factors):
    """Canonical monomial: sorted tuple of (name, exponent) with exponent != 0."""
    return tuple(sorted(((n, k) for n, k in factors.items() if k), key=lambda f: _const_key(f[0])))


def _mul_monomials(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for name, k in m2:
        acc[name] = acc.get(name, 0) + k
    return _monomial(acc)


class Coefficient:
    """Immutable exact scalar: ``sum_m w_m * prod_c c**k_mc``.

    Equality is structural equality of the canonical form, which makes it
    decidable: two coefficients are equal iff they are the same Laurent
    polynomial.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, weight in terms.items():
                weight = GaussianRational.coerce(weight)
                if weight:
                    clean[mono] = weight
        self._terms = clean
        self._hash = None

    # construction

    @classmethod
    def scalar(cls, re=0, im=0):
        return cls({(): GaussianRational(re, im)})

    @classmethod
    def const(cls, name, exponent=1):
        return cls({_monomial({name: exponent}): GaussianRational(1)})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Coefficient):
            return value
        if isinstance(value, GaussianRational):
            return cls({(): value})
        if isinstance(value, (int, Fraction)):
            return cls.scalar(value)
        raise TypeError(f"cannot convert {value!r} to an exact Coefficient")

    # inspection

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self):
        return len(self._terms) == 1

    def is_scalar(self):
        """True for a pure number (no symbolic constants)."""
        return all(not m for m in self._terms)

    def constants(self):
        return {name for mono in self._terms for name, _ in mono}

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Coefficient.coerce(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic

    def __add__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for mono, w in other._terms.items():
            acc[mono] = acc[mono] + w if mono in acc else w
        return Coefficient(acc)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient({m: -w for m, w in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Coefficient.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        acc = {}
        for m1, w1 in self._terms.items():
            for m2, w2 in other._terms.items():
                mono = _mul_monomials(m1, m2)
                w = w1 * w2
                acc[mono] = acc[mono] + w if mono in acc else w
        return Coefficient(acc)

    __rmul__ = __mul__

    def inverse(self):
        if not self.is_monomial():
            raise NonInvertible(f"cannot invert the non-monomial coefficient {self}")
        (mono, weight), = self._terms.items()
        return Coefficient({tuple((n, -k) for n, k in mono): weight.inverse()})

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an integer")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Coefficient.scalar(1)
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self):
        # constants are real
        return Coefficient({m: w.conjugate() for m, w in self._terms.items()})

    # numeric boundary

    def evaluate(self, params):
        total = 0j
        for mono, weight in self._terms.items():
            value = complex(weight)
            for name, k in mono:
                if name not in params:
                    raise MissingParam(f"no numeric value for constant '{name}'")
                value *= float(params[name]) ** k
            total += value
        return total

    def __repr__(self):
        return f"Coefficient({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, weight in sorted(self._terms.items(), key=_term_sort_key):
            parts.append(_format_term(weight, mono))
        out = parts[0]
        for part in parts[1:]:
            out += " - " + part[1:] if part.startswith("-") else " + " + part
        return out


def _term_sort_key(item):
    mono, _ = item
    return [(_const_key(n), k) for n, k in mono]


def _format_monomial(mono):
    pieces = []
    for name, k in mono:
        pieces.append(name if k == 1 else f"{name}^{k}")
    return "*".join(pieces)


def _format_term(weight, mono):
    if not mono:
        return _format_gaussian(weight)
    body = _format_monomial(mono)
    if weight == 1:
        return body
    if weight == -1:
        return "-" + body
    w = _format_gaussian(weight)
    return f"{w}*{body}"


ZERO = Coefficient()
ONE = Coefficient.scalar(1)
I = Coefficient.scalar(0, 1)
HBAR = Coefficient.const("hbar")
