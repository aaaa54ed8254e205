"""Seeded random expression trees for the round-trip tests."""

import random
from fractions import Fraction

from qaxiom.frontend.parser import (
    Bracket, ConstRef, GeneratorRef, ImaginaryUnit, Negation, Power, Product, Rational, Sum,
)

_GENS = ["P1", "P2", "Q1", "Q2"]
_CONSTS = ["hbar", "e", "B", "M", "alphadot", "eps12"]


def _leaf(rng):
    kind = rng.randrange(4)
    if kind == 0:
        return Rational(Fraction(rng.randint(0, 9), rng.randint(1, 4)))
    if kind == 1:
        return ImaginaryUnit()
    if kind == 2:
        return ConstRef(rng.choice(_CONSTS))
    return GeneratorRef(rng.choice(_GENS))


def random_ast(rng, depth=6):
    """Tree of depth at most ``depth``; kept narrow so lowering stays cheap."""
    if depth <= 1 or rng.random() < 0.25:
        return _leaf(rng)
    kind = rng.randrange(5)
    sub = lambda: random_ast(rng, depth - 1)  # noqa: E731
    if kind == 0:
        return Sum(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == 1:
        return Product(tuple(sub() for _ in range(2)))
    if kind == 2:
        if rng.random() < 0.3:
            # negative powers only of invertible constants
            return Power(ConstRef(rng.choice(["hbar", "e", "B", "M"])), -rng.randint(1, 2))
        return Power(_leaf(rng) if rng.random() < 0.5 else sub(), rng.randint(0, 2))
    if kind == 3:
        return Bracket(sub(), sub())
    return Negation(sub())


def random_asts(seed, count, depth=6):
    rng = random.Random(seed)
    return [random_ast(rng, depth) for _ in range(count)]
