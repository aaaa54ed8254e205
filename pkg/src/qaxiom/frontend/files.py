"""Algebra and substitution text files, plus preset resolution.

Algebra file, one statement per line, ``#`` starts a comment::

    k = 2
    order = Q1 Q2 P1 P2
    epsilon12 = -1
    const alpha            # extra symbolic constant(s)
    comm P1 Q1 = -i*hbar
    comm Q1 Q2 = -i*eps12*hbar*(e*B)^-1

Substitution file::

    P1 -> -e*B*Q2
    P2 -> e*B*Q1
"""

from __future__ import annotations

import os
import re

from ..errors import (
    DuplicatePair, ExpressionSyntaxError, NonLinearSubstitution, NotCentral, ParseError,
    QAxiomError, UnknownGenerator, UnknownSymbol,
)
from ..symalg import (
    BUILTIN_CONSTANTS, PRESETS, SUBSTITUTION_PRESETS, Algebra, Generator, Substitution, preset,
    substitution_preset,
)
from ..symalg.algebra import default_order
from .parser import lower, parse_expression

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_RESERVED = set(BUILTIN_CONSTANTS) | {"i", "eps12"}


def _strip(line):
    return line.split("#", 1)[0].strip()


def _relabel(exc, lineno):
    """Re-raise a library error with the offending line attached."""
    if isinstance(exc, ExpressionSyntaxError):
        return ExpressionSyntaxError(str(exc).split(" at position")[0], exc.position, exc.expected,
                                     line=lineno)
    if isinstance(exc, ParseError):
        return ParseError(str(exc), line=lineno)
    exc.args = (f"line {lineno}: {exc}",)
    exc.line = lineno
    return exc


def _generator(name, lineno):
    try:
        return Generator.parse(name)
    except (ValueError, QAxiomError):
        raise ParseError(f"{name!r} is not a generator name (P1, Q2, ...)", line=lineno) from None


def parse_algebra_file(text, epsilon12=None, name=None):
    """Build an Algebra from file text.

    ``epsilon12``, when given, overrides the file's own ``epsilon12`` line.
    """
    k = None
    order = None
    eps = None
    constants = []
    comms = []  # (lineno, g, h, rhs text)
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("comm ") or line.startswith("comm\t"):
            lhs, sep, rhs = line[4:].partition("=")
            names = lhs.split()
            if not sep or len(names) != 2 or not rhs.strip():
                raise ParseError("expected 'comm G H = expression'", line=lineno)
            g, h = (_generator(x, lineno) for x in names)
            if g == h:
                raise ParseError(f"[{g},{g}] is always zero and cannot be declared", line=lineno)
            key = frozenset((g, h))
            if key in seen:
                err = DuplicatePair(f"line {lineno}: pair [{g},{h}] already declared on line {seen[key]}")
                err.line = lineno
                raise err
            seen[key] = lineno
            comms.append((lineno, g, h, rhs.strip()))
            continue
        if line.startswith("const ") or line == "const":
            names = line[5:].replace(",", " ").split()
            if not names:
                raise ParseError("expected 'const NAME [NAME ...]'", line=lineno)
            for c in names:
                if not _IDENT.match(c) or c in _RESERVED:
                    raise ParseError(f"{c!r} cannot be declared as a constant", line=lineno)
                constants.append(c)
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ParseError(f"unrecognised statement {line!r}", line=lineno)
        if key == "k":
            if k is not None:
                raise ParseError("k declared twice", line=lineno)
            try:
                k = int(value)
            except ValueError:
                raise ParseError(f"k must be a positive integer, got {value!r}", line=lineno) from None
            if k < 1:
                raise ParseError("k must be at least 1", line=lineno)
        elif key == "order":
            order = (lineno, [_generator(x, lineno) for x in value.split()])
        elif key == "epsilon12":
            if value not in ("1", "+1", "-1"):
                raise ParseError(f"epsilon12 must be +1 or -1, got {value!r}", line=lineno)
            eps = int(value)
        elif key == "name":
            name = name or value
        else:
            raise ParseError(f"unknown setting {key!r}", line=lineno)

    if k is None:
        k = 2
    if epsilon12 is not None:
        eps = epsilon12
    eps = -1 if eps is None else eps
    if order is not None:
        lineno, gens = order
        if sorted(map(str, gens)) != sorted(map(str, default_order(k))) or len(gens) != 2 * k:
            raise ParseError(f"order must list each of the {2 * k} generators exactly once", line=lineno)
        order = gens
    proto = Algebra(k, {}, order, eps, constants)
    table = {}
    for lineno, g, h, rhs in comms:
        try:
            for x in (g, h):
                if x not in proto.rank:
                    raise UnknownGenerator(f"{x} is not a generator of this algebra (k={k})")
            value = lower(parse_expression(rhs), proto)
            if not value.is_constant():
                raise NotCentral(f"[{g},{h}] = {value} is not a multiple of the identity")
        except QAxiomError as exc:
            raise _relabel(exc, lineno) from None
        table[(g, h)] = value.constant_term()
    return Algebra(k, table, order, eps, constants, name=name or "file")


def parse_substitution_file(text, algebra=None, epsilon12=None, name=None):
    mapping = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        lhs, sep, rhs = line.partition("->")
        if not sep or not rhs.strip():
            raise ParseError("expected 'GENERATOR -> expression'", line=lineno)
        g = _generator(lhs.strip(), lineno)
        if g in mapping:
            raise ParseError(f"{g} already mapped on line {lines[g]}", line=lineno)
        try:
            if algebra is not None and g not in algebra.rank:
                raise UnknownGenerator(f"{g} is not a generator of this algebra")
            image = lower(parse_expression(rhs.strip()), algebra, epsilon12)
            if image.degree > 1:
                raise NonLinearSubstitution(f"image of {g} has degree {image.degree}: {image}")
        except QAxiomError as exc:
            raise _relabel(exc, lineno) from None
        mapping[g] = image
        lines[g] = lineno
    return Substitution(mapping, name=name or "file")


def load_algebra(spec, epsilon12=None):
    """Preset name or path to an algebra file."""
    if spec in PRESETS:
        return preset(spec, -1 if epsilon12 is None else epsilon12)
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_algebra_file(fh.read(), epsilon12, name=os.path.basename(spec))
    raise UnknownSymbol(f"{spec!r} is neither a preset ({', '.join(PRESETS)}) nor a readable file")


def load_substitution(spec, algebra=None, epsilon12=None):
    """``preset:NAME`` or a path to a substitution file."""
    if epsilon12 is None:
        epsilon12 = algebra.epsilon12 if algebra is not None else -1
    if spec.startswith("preset:"):
        return substitution_preset(spec[len("preset:"):], epsilon12)
    if spec in SUBSTITUTION_PRESETS:
        return substitution_preset(spec, epsilon12)
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_substitution_file(fh.read(), algebra, epsilon12, name=os.path.basename(spec))
    raise UnknownSymbol(
        f"{spec!r} is neither preset:NAME ({', '.join(SUBSTITUTION_PRESETS)}) nor a readable file")
