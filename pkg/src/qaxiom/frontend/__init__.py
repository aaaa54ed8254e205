"""Parsers, file formats and the ``qaxiom`` command line."""

from .cli import COMMANDS, CommandResult, dispatch, main
from .files import load_algebra, load_substitution, parse_algebra_file, parse_substitution_file
from .parser import (
    Bracket, ConstRef, GeneratorRef, ImaginaryUnit, Negation, Power, Product, Rational, Sum,
    lower, parse_expression, parse_polynomial, to_text, tokenize,
)

__all__ = [
    "COMMANDS", "CommandResult", "dispatch", "main",
    "load_algebra", "load_substitution", "parse_algebra_file", "parse_substitution_file",
    "Bracket", "ConstRef", "GeneratorRef", "ImaginaryUnit", "Negation", "Power", "Product",
    "Rational", "Sum", "lower", "parse_expression", "parse_polynomial", "to_text", "tokenize",
]
