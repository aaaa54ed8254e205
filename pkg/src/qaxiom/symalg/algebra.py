"""Commutator tables with central right-hand sides, and linear substitutions."""

from __future__ import annotations

from .coefficient import BUILTIN_CONSTANTS, HBAR, I, ZERO, Coefficient
from .polynomial import Generator, NCPolynomial
from ..errors import DuplicatePair, NonLinearSubstitution, NotCentral, UnknownGenerator, UnknownSymbol


def default_order(k):
    """Positions before momenta: Q1 < ... < Qk < P1 < ... < Pk."""
    return tuple(Generator("Q", i) for i in range(1, k + 1)) + tuple(
        Generator("P", i) for i in range(1, k + 1))


def epsilon(m, n, epsilon12):
    """Two-index Levi-Civita symbol with the sign of eps_12 as a parameter."""
    if m == n:
        return 0
    return epsilon12 if (m, n) == (1, 2) else -epsilon12


def _as_central(value, g, h):
    if isinstance(value, NCPolynomial):
        if not value.is_constant():
            raise NotCentral(f"[{g},{h}] = {value} is not a multiple of the identity")
        return value.constant_term()
    return Coefficient.coerce(value)


class Algebra:
    """Generators ``P1..Pk, Q1..Qk`` with ``[g, h] = c * 1`` for central ``c``.

    ``table`` maps ordered pairs to their right-hand side; the reversed pair
    is implied by antisymmetry and undeclared pairs commute.  ``order`` is
    the total order used for normal forms.
    """

    def __init__(self, k, table, order=None, epsilon12=-1, constants=(), name=None):
        if k < 1:
            raise ValueError("an algebra needs at least one degree of freedom")
        if epsilon12 not in (1, -1):
            raise ValueError("epsilon12 must be +1 or -1")
        self.k = k
        self.epsilon12 = epsilon12
        self.name = name
        order = default_order(k) if order is None else tuple(order)
        expected = set(default_order(k))
        if set(order) != expected or len(order) != len(expected):
            raise ValueError(f"order must list each of {sorted(map(str, expected))} exactly once")
        self.order = order
        self.rank = {g: i for i, g in enumerate(order)}
        self.constants = tuple(dict.fromkeys(BUILTIN_CONSTANTS + tuple(constants)))

        entries = {}
        for (g, h), value in table.items():
            for x in (g, h):
                if x not in self.rank:
                    raise UnknownGenerator(f"{x} is not a generator of this algebra (k={k})")
            if g == h:
                raise ValueError(f"[{g},{g}] is always zero and cannot be declared")
            if (g, h) in entries or (h, g) in entries:
                raise DuplicatePair(f"pair [{g},{h}] declared twice")
            c = _as_central(value, g, h)
            unknown = c.constants() - set(self.constants)
            if unknown:
                raise UnknownSymbol("undeclared constants: " + ", ".join(sorted(unknown)))
            entries[(g, h)] = c
        self._table = entries
        self._brackets = {}
        for (g, h), c in entries.items():
            self._brackets[(g, h)] = c
            self._brackets[(h, g)] = -c
        self._nf_cache = {}

    @property
    def generators(self):
        return self.order

    @property
    def table(self):
        """Declared entries in their stored orientation."""
        return dict(self._table)

    def bracket(self, g, h):
        """Central value of ``[g, h]`` (antisymmetric; zero if undeclared)."""
        return self._brackets.get((g, h), ZERO)

    def with_entry(self, g, h, value):
        """Copy with one declared entry replaced (or added)."""
        table = {pair: c for pair, c in self._table.items() if pair not in ((g, h), (h, g))}
        table[(g, h)] = value
        return Algebra(self.k, table, self.order, self.epsilon12, self.constants, self.name)

    def with_order(self, order):
        return Algebra(self.k, self._table, order, self.epsilon12, self.constants, self.name)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.k, self.order, self.epsilon12, self._table) == (
            other.k, other.order, other.epsilon12, other._table)

    def __hash__(self):
        return hash((self.k, self.order, self.epsilon12, frozenset(self._table.items())))

    def __repr__(self):
        label = self.name or "Algebra"
        return f"<{label} k={self.k} eps12={self.epsilon12:+d} pairs={len(self._table)}>"

    def describe(self):
        lines = [f"k = {self.k}", "order = " + " ".join(map(str, self.order)),
                 f"epsilon12 = {self.epsilon12:+d}"]
        for (g, h), c in self._table.items():
            lines.append(f"comm {g} {h} = {c}")
        return "\n".join(lines)


def _all_pairs(k):
    P = [Generator("P", i) for i in range(1, k + 1)]
    Q = [Generator("Q", i) for i in range(1, k + 1)]
    pq = [(p, q) for p in P for q in Q]
    pp = [(P[i], P[j]) for i in range(k) for j in range(i + 1, k)]
    qq = [(Q[i], Q[j]) for i in range(k) for j in range(i + 1, k)]
    return pq, pp, qq


def heisenberg(k=2, epsilon12=-1):
    """Canonical table ``[P_i,Q_j] = -i hbar delta_ij``, ``[P,P] = [Q,Q] = 0``.

    Zero entries are declared explicitly so every pair shows up in reports.
    """
    pq, pp, qq = _all_pairs(k)
    table = {}
    for p, q in pq:
        table[(p, q)] = -I * HBAR if p.index == q.index else ZERO
    for pair in pp + qq:
        table[pair] = ZERO
    return Algebra(k, table, epsilon12=epsilon12, name=f"heisenberg{k}")


def magnetic2(epsilon12=-1):
    """Magnetic table for k = 2.

    ``[P_m,Q_n] = -i hbar delta_mn``, ``[P_m,P_n] = i eps_mn hbar e B`` and
    ``[Q_m,Q_n] = -i eps_mn hbar (e B)^-1``.
    """
    pq, pp, qq = _all_pairs(2)
    eB = Coefficient.const("e") * Coefficient.const("B")
    table = {}
    for p, q in pq:
        table[(p, q)] = -I * HBAR if p.index == q.index else ZERO
    (p1, p2), = pp
    (q1, q2), = qq
    table[(p1, p2)] = I * epsilon(1, 2, epsilon12) * HBAR * eB
    table[(q1, q2)] = -I * epsilon(1, 2, epsilon12) * HBAR * eB.inverse()
    return Algebra(2, table, epsilon12=epsilon12, name="magnetic2")


PRESETS = {
    "heisenberg2": lambda epsilon12=-1: heisenberg(2, epsilon12),
    "magnetic2": magnetic2,
}


def preset(name, epsilon12=-1):
    try:
        return PRESETS[name](epsilon12=epsilon12)
    except KeyError:
        raise UnknownSymbol(f"no preset algebra named {name!r}; known: {', '.join(PRESETS)}") from None


class Substitution:
    """Simultaneous linear replacement ``g -> s(g)``; unlisted generators stay put."""

    def __init__(self, mapping=None, name=None):
        self.name = name
        clean = {}
        for g, image in (mapping or {}).items():
            if isinstance(g, str):
                g = Generator.parse(g)
            image = NCPolynomial.coerce(image)
            if image.degree > 1:
                raise NonLinearSubstitution(f"image of {g} has degree {image.degree}: {image}")
            clean[g] = image
        self._map = clean

    @property
    def mapping(self):
        return dict(self._map)

    def image(self, g):
        return self._map[g] if g in self._map else NCPolynomial.generator(g)

    def domain(self):
        return set(self._map)

    def is_identity(self):
        return all(img == NCPolynomial.generator(g) for g, img in self._map.items())

    def __repr__(self):
        body = ", ".join(f"{g} -> {img}" for g, img in self._map.items())
        return f"Substitution({body or 'identity'})"


IDENTITY = Substitution(name="identity")


def momentum_from_field(epsilon12=-1, include_e=True):
    """``P_m -> e B eps_mn Q_n`` (``e`` dropped when ``include_e`` is False)."""
    scale = Coefficient.const("B")
    if include_e:
        scale = Coefficient.const("e") * scale
    mapping = {}
    for m in (1, 2):
        image = NCPolynomial()
        for n in (1, 2):
            eps = epsilon(m, n, epsilon12)
            if eps:
                image = image + NCPolynomial.generator(Generator("Q", n)).scale(scale * eps)
        mapping[Generator("P", m)] = image
    return Substitution(mapping, name="eq5" if include_e else "eq5-no-e")


def bounded_motion_momentum(epsilon12=-1):
    """``P_m -> eps_mn M alphadot Q_n`` (classical circular orbit)."""
    scale = Coefficient.const("M") * Coefficient.const("alphadot")
    mapping = {}
    for m in (1, 2):
        image = NCPolynomial()
        for n in (1, 2):
            eps = epsilon(m, n, epsilon12)
            if eps:
                image = image + NCPolynomial.generator(Generator("Q", n)).scale(scale * eps)
        mapping[Generator("P", m)] = image
    return Substitution(mapping, name="bounded")


SUBSTITUTION_PRESETS = {
    "eq5": lambda epsilon12=-1: momentum_from_field(epsilon12, include_e=True),
    "eq5-no-e": lambda epsilon12=-1: momentum_from_field(epsilon12, include_e=False),
    "bounded": bounded_motion_momentum,
    "identity": lambda epsilon12=-1: IDENTITY,
    "zero": lambda epsilon12=-1: Substitution(
        {Generator("P", 1): NCPolynomial(), Generator("P", 2): NCPolynomial()}, name="zero"),
}


def substitution_preset(name, epsilon12=-1):
    try:
        return SUBSTITUTION_PRESETS[name](epsilon12=epsilon12)
    except KeyError:
        raise UnknownSymbol(
            f"no preset substitution named {name!r}; known: {', '.join(SUBSTITUTION_PRESETS)}") from None


__all__ = [
    "Algebra", "Substitution", "IDENTITY", "default_order", "epsilon", "heisenberg", "magnetic2",
    "preset", "PRESETS", "momentum_from_field", "bounded_motion_momentum", "substitution_preset",
]
