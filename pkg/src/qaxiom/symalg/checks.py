"""Consistency audits of a commutator table.

Every check here computes its answer by rewriting; nothing is assumed from
the fact that the table is central.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import epsilon
from .coefficient import HBAR, I, Coefficient
from .polynomial import Generator, NCPolynomial, commutator_formal
from .rewrite import commutator, normal_order
from ..errors import MissingDimension


def _table_text(header, rows):
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*map(str, r)) for r in rows]
    return "\n".join(lines)


# Jacobi

@dataclass(frozen=True)
class JacobiTriple:
    triple: tuple
    residual: NCPolynomial


@dataclass(frozen=True)
class JacobiReport:
    algebra: str
    checked: int
    failures: tuple  # JacobiTriple with nonzero residual

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {
            "kind": "jacobi",
            "algebra": self.algebra,
            "triples_checked": self.checked,
            "nonzero": [{"triple": [str(g) for g in t.triple], "residual": str(t.residual)}
                        for t in self.failures],
            "verdict": "CONSISTENT" if self.ok else "INCONSISTENT",
        }

    def to_text(self):
        head = f"Jacobi identity over {self.checked} generator triples of {self.algebra}"
        if self.ok:
            return head + "\nall residuals identically zero -> CONSISTENT"
        rows = [(" ".join(map(str, t.triple)), str(t.residual)) for t in self.failures]
        return head + "\n" + _table_text(("triple", "residual"), rows) + "\nINCONSISTENT"


def jacobi_residual(g, h, l, a):
    """``[g,[h,l]] + [h,[l,g]] + [l,[g,h]]`` in normal form."""
    g, h, l = (NCPolynomial.coerce(x) for x in (g, h, l))
    total = (commutator(g, commutator(h, l, a), a)
             + commutator(h, commutator(l, g, a), a)
             + commutator(l, commutator(g, h, a), a))
    return normal_order(total, a)


def jacobi_check(a):
    gens = a.generators
    failures = []
    checked = 0
    for triple in itertools.product(gens, repeat=3):
        checked += 1
        r = jacobi_residual(*triple, a)
        if r:
            failures.append(JacobiTriple(triple, r))
    return JacobiReport(a.name or "custom", checked, tuple(failures))


# equivalence under a substitution

@dataclass(frozen=True)
class EquivalenceEntry:
    pair: tuple
    declared: Coefficient
    derived: NCPolynomial
    residual: NCPolynomial

    @property
    def ok(self):
        return self.residual.is_zero()


@dataclass(frozen=True)
class EquivalenceReport:
    algebra: str
    substitution: str
    entries: tuple

    @property
    def consistent(self):
        return all(e.ok for e in self.entries)

    @property
    def verdict(self):
        return "CONSISTENT" if self.consistent else "INCONSISTENT"

    @property
    def ok(self):
        return self.consistent

    def entry(self, g, h):
        for e in self.entries:
            if e.pair == (g, h):
                return e
        raise KeyError((g, h))

    def to_dict(self):
        return {
            "kind": "equivalence",
            "algebra": self.algebra,
            "substitution": self.substitution,
            "pairs": [{"pair": [str(x) for x in e.pair], "declared": str(e.declared),
                       "derived": str(e.derived), "residual": str(e.residual), "ok": e.ok}
                      for e in self.entries],
            "verdict": self.verdict,
        }

    def to_text(self):
        rows = [(f"[{e.pair[0]},{e.pair[1]}]", str(e.declared), str(e.derived), str(e.residual),
                 "ok" if e.ok else "MISMATCH") for e in self.entries]
        return (f"{self.algebra} under substitution {self.substitution}\n"
                + _table_text(("pair", "declared", "derived", "residual", ""), rows)
                + f"\nverdict: {self.verdict}")


def equivalence_check(a, s):
    """Re-derive every declared bracket after substituting, and compare."""
    entries = []
    for (g, h), declared in a.table.items():
        derived = normal_order(commutator_formal(s.image(g), s.image(h)), a)
        residual = derived - NCPolynomial.constant(declared)
        entries.append(EquivalenceEntry((g, h), declared, derived, residual))
    return EquivalenceReport(a.name or "custom", s.name or repr(s), tuple(entries))


# dimensions

GEOMETRIC_UNITS = {"Q": 1, "P": -1, "hbar": 0, "e": 0, "B": -2, "M": -1}


class DimensionMap:
    """Length exponents for generators and constants.

    Keys may be a Generator, a generator name (``"Q1"``), a kind (``"Q"``,
    applying to every index) or a constant name.
    """

    def __init__(self, exponents):
        self._by_kind = {}
        self._by_name = {}
        for key, d in exponents.items():
            if isinstance(key, Generator):
                key = str(key)
            if key in ("P", "Q"):
                self._by_kind[key] = int(d)
            else:
                self._by_name[key] = int(d)

    def lookup(self, symbol):
        if isinstance(symbol, Generator):
            name = str(symbol)
            if name in self._by_name:
                return self._by_name[name]
            return self._by_kind.get(symbol.kind)
        return self._by_name.get(symbol)

    def to_dict(self):
        return {**self._by_kind, **self._by_name}


@dataclass(frozen=True)
class DimensionEntry:
    pair: tuple
    rhs: Coefficient
    lhs_dim: int
    rhs_dims: tuple  # one per monomial of the right-hand side

    @property
    def ok(self):
        return all(d == self.lhs_dim for d in self.rhs_dims)


@dataclass(frozen=True)
class DimensionReport:
    algebra: str
    dims: dict
    entries: tuple

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    def to_dict(self):
        return {
            "kind": "dimensions",
            "algebra": self.algebra,
            "dimensions": dict(sorted(self.dims.items())),
            "entries": [{"pair": [str(x) for x in e.pair], "rhs": str(e.rhs), "lhs_dim": e.lhs_dim,
                         "rhs_dims": list(e.rhs_dims), "ok": e.ok} for e in self.entries],
            "verdict": "PASS" if self.ok else "FAIL",
        }

    def to_text(self):
        rows = [(f"[{e.pair[0]},{e.pair[1]}]", str(e.rhs), f"L^{e.lhs_dim}",
                 ", ".join(f"L^{d}" for d in e.rhs_dims) or "(zero)", "ok" if e.ok else "FAIL")
                for e in self.entries]
        return (f"dimensional homogeneity of {self.algebra}\n"
                + _table_text(("pair", "rhs", "lhs", "rhs", ""), rows)
                + ("\nPASS" if self.ok else "\nFAIL"))


def dimension_check(a, d):
    if not isinstance(d, DimensionMap):
        d = DimensionMap(d)
    missing = set()
    for (g, h), c in a.table.items():
        for x in (g, h):
            if d.lookup(x) is None:
                missing.add(str(x))
        for name in c.constants():
            if d.lookup(name) is None:
                missing.add(name)
    if missing:
        raise MissingDimension(missing)
    entries = []
    for (g, h), c in a.table.items():
        lhs = d.lookup(g) + d.lookup(h)
        rhs = tuple(sum(k * d.lookup(name) for name, k in mono) for mono in c.terms)
        entries.append(DimensionEntry((g, h), c, lhs, rhs))
    return DimensionReport(a.name or "custom", d.to_dict(), tuple(entries))


# bracket of two position-dependent momenta

@dataclass(frozen=True)
class MixedCommutatorResult:
    """``D1(f2 psi) - D2(f1 psi) = scalar_part * psi + s * (f2 d1 - f1 d2) psi``.

    ``s`` is ``-i hbar`` in position mode and ``+i hbar`` in momentum mode;
    ``remainder`` holds ``(f2, f1)``.
    """

    scalar_part: Coefficient
    remainder: tuple
    conventions: dict = field(default_factory=dict)

    @property
    def remainder_is_zero(self):
        return all(f.is_zero() for f in self.remainder)

    def to_dict(self):
        f2, f1 = self.remainder
        return {
            "kind": "mixed",
            "scalar_part": str(self.scalar_part),
            "remainder": {"prefactor": self.conventions.get("prefactor"), "f2": str(f2), "f1": str(f1),
                          "zero": self.remainder_is_zero},
            "conventions": dict(sorted(self.conventions.items())),
        }

    def to_text(self):
        f2, f1 = self.remainder
        var = self.conventions.get("variable", "Q")
        pre = self.conventions.get("prefactor")
        lines = [f"mode: {self.conventions.get('mode')}  (D_m = {pre} d/d{var}_m)",
                 f"scalar part: {self.scalar_part}"]
        if self.remainder_is_zero:
            lines.append("remainder: 0")
        else:
            lines.append(f"remainder: {pre}*(f2*d/d{var}1 - f1*d/d{var}2)")
            lines.append(f"  f1 = {f1}")
            lines.append(f"  f2 = {f2}")
        return "\n".join(lines)


def mixed_commutator(c, mode="position"):
    """Exact product-rule expansion of ``D1(f2 .) - D2(f1 .)``.

    ``c`` is a 2x2 matrix of coefficients and ``f_m = sum_n c[m][n] X_n``
    with ``X = Q`` (``mode="position"``, ``D = -i hbar d/dQ``) or ``X = P``
    (``mode="momentum"``, ``D = +i hbar d/dP``).
    """
    if mode not in ("position", "momentum"):
        raise ValueError("mode must be 'position' or 'momentum'")
    c = [[Coefficient.coerce(x) for x in row] for row in c]
    if len(c) != 2 or any(len(row) != 2 for row in c):
        raise ValueError("coefficient matrix must be 2x2")
    kind = "Q" if mode == "position" else "P"
    prefactor = -I * HBAR if mode == "position" else I * HBAR
    x = [NCPolynomial.generator(Generator(kind, n)) for n in (1, 2)]
    f1 = x[0].scale(c[0][0]) + x[1].scale(c[0][1])
    f2 = x[0].scale(c[1][0]) + x[1].scale(c[1][1])
    # d1 f2 = c21, d2 f1 = c12
    scalar = prefactor * (c[1][0] - c[0][1])
    conventions = {"mode": mode, "variable": kind, "prefactor": str(prefactor)}
    return MixedCommutatorResult(scalar, (f2, f1), conventions)


def bounded_motion_matrix(epsilon12=-1, inverse=False):
    """``c_mn = M alphadot eps_mn``, or its inverse ``-eps_mn (M alphadot)^-1``.

    The inverse expresses positions through momenta, for momentum mode.
    """
    scale = Coefficient.const("M") * Coefficient.const("alphadot")
    if inverse:
        scale = -scale.inverse()
    return [[scale * epsilon(m, n, epsilon12) for n in (1, 2)] for m in (1, 2)]
