"""Finite matrix representations of the generators and truncation-aware residuals.

Two constructions are provided:

* ``landau`` - one truncated harmonic ladder.  Kinetic momenta are built so
  that ``[P1, P2] = i hbar e B``; the coordinates are the guiding-centre
  combinations ``Q1 = -P2/(eB)``, ``Q2 = -eps12 P1/(eB)`` which give
  ``[Q1, Q2] = -i eps12 hbar/(eB)``.
* ``grid`` - a periodic 2D grid with spectral derivatives and an optional
  linear gauge potential.

Residuals are always measured on the range of an isometry ``V`` (the
"projected subspace") that avoids the states damaged by truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGrid, InvalidTruncation, MissingParam, UnknownGenerator
from .symalg import Coefficient, Generator, NCPolynomial, commutator_formal
from .symalg.algebra import epsilon

DEFAULT_PARAMS = {"hbar": 1.0, "e": 1.0, "B": 1.0, "M": 1.0}
DEFAULT_TOLERANCE = {"landau": 1e-10, "grid": 1e-5}
GAUGES = ("none", "paper", "symmetric", "landau")


def _frozen(m):
    m = np.ascontiguousarray(m, dtype=complex)
    m.flags.writeable = False
    return m


@dataclass(frozen=True, eq=False)
class Representation:
    """Dense complex matrices for each generator plus a projected subspace.

    ``subspace`` is a ``dimension x projector_rank`` isometry; for ladder
    representations it is the first ``projector_rank`` basis vectors.
    """

    dimension: int
    assignment: dict
    subspace: np.ndarray
    params: dict
    provenance: str
    convention: str = "standard"
    epsilon12: int = -1
    diagonal: frozenset = frozenset()
    extras: dict = field(default_factory=dict)
    build: dict = field(default_factory=dict)

    @property
    def projector_rank(self):
        return self.subspace.shape[1]

    @property
    def projector(self):
        return self.subspace @ self.subspace.conj().T

    @property
    def generators(self):
        return tuple(self.assignment)

    def matrix(self, g):
        if isinstance(g, str):
            g = Generator.parse(g)
        try:
            return self.assignment[g]
        except KeyError:
            raise UnknownGenerator(f"{g} has no matrix in this representation") from None

    def default_tolerance(self):
        return DEFAULT_TOLERANCE[self.provenance]

    def conjugated(self, U):
        """Same representation in the basis ``U^dagger M U`` (U unitary)."""
        Ud = U.conj().T
        assignment = {g: _frozen(Ud @ m @ U) for g, m in self.assignment.items()}
        extras = {k: _frozen(Ud @ m @ U) for k, m in self.extras.items()}
        return Representation(self.dimension, assignment, _frozen(Ud @ self.subspace), self.params,
                              self.provenance, self.convention, self.epsilon12, frozenset(),
                              extras, self.build)

    def resized(self, size):
        """Rebuild with a different truncation (``ntrunc`` or ``npoints``)."""
        kwargs = dict(self.build)
        if self.provenance == "landau":
            kwargs["ntrunc"] = size
            return landau_representation(**kwargs)
        kwargs["npoints"] = size
        return grid_representation(**kwargs)


def _check_params(params, required=("hbar", "e", "B", "M"), allow_zero=()):
    out = dict(DEFAULT_PARAMS)
    out.update({k: float(v) for k, v in (params or {}).items()})
    for name in required:
        v = out[name]
        if not math.isfinite(v) or v < 0 or (v == 0 and name not in allow_zero):
            raise ValueError(f"parameter {name} must be positive and finite, got {v}")
    return out


def ladder_operators(n):
    """Truncated annihilation operator ``a`` (n x n)."""
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)


def landau_representation(ntrunc, params=None, convention="standard", epsilon12=-1):
    if not isinstance(ntrunc, (int, np.integer)) or ntrunc < 2:
        raise InvalidTruncation(f"ntrunc must be an integer >= 2, got {ntrunc!r}")
    if convention not in ("standard", "paper"):
        raise ValueError("convention must be 'standard' or 'paper'")
    try:
        p = _check_params(params)
    except ValueError as exc:
        raise InvalidTruncation(str(exc)) from None
    # angular velocity of the orbit; only used when alphadot appears in an expression
    p.setdefault("alphadot", p["e"] * p["B"] / (2 * p["M"]))
    hbar, eB = p["hbar"], p["e"] * p["B"]
    a = ladder_operators(ntrunc)
    ad = a.conj().T
    c = math.sqrt(hbar * eB / 2)
    pi1 = c * (a + ad)
    pi2 = 1j * c * (ad - a)
    x1 = -pi2 / eB
    x2 = -epsilon12 * pi1 / eB
    assignment = {
        Generator("P", 1): _frozen(pi1), Generator("P", 2): _frozen(pi2),
        Generator("Q", 1): _frozen(x1), Generator("Q", 2): _frozen(x2),
    }
    subspace = _frozen(np.eye(ntrunc)[:, : ntrunc - 1])
    build = {"ntrunc": ntrunc, "params": dict(params or {}), "convention": convention,
             "epsilon12": epsilon12}
    return Representation(ntrunc, assignment, subspace, p, "landau", convention, epsilon12,
                          build=build)


def spectral_derivative(npoints, boxsize):
    """Hermitian matrix of ``-i d/dx`` on a periodic grid (Fourier differentiation)."""
    n = npoints
    k = 2 * np.pi * np.fft.fftfreq(n, d=boxsize / n)
    F = np.fft.fft(np.eye(n), axis=0)  # F[j, l] = exp(-2 pi i j l / n)
    D = (F.conj().T * k) @ F / n
    return (D + D.conj().T) / 2


def grid_positions(npoints, boxsize):
    return -boxsize / 2 + boxsize * np.arange(npoints) / npoints


def gauge_matrix(gauge, B, epsilon12=-1):
    """``A(q) = G @ q`` for the linear gauges."""
    if gauge == "none":
        return np.zeros((2, 2))
    if gauge == "paper":
        return B * np.array([[0.0, epsilon(1, 2, epsilon12)], [epsilon(2, 1, epsilon12), 0.0]])
    if gauge == "symmetric":
        return B / 2 * np.array([[0.0, -1.0], [1.0, 0.0]])
    if gauge == "landau":
        return B * np.array([[0.0, 0.0], [1.0, 0.0]])
    raise ValueError(f"unknown gauge {gauge!r}; choose from {', '.join(GAUGES)}")


def _grid_subspace(D, x, hbar):
    """Lowest n/2 eigenvectors of a balanced grid oscillator, per axis.

    These are localised away from the box edge and away from the Nyquist
    frequency, which is where the grid fails the canonical relations.
    """
    n = len(x)
    half = (x[-1] - x[0] + (x[1] - x[0])) / 2
    kmax = np.pi * n / (2 * half)
    omega = kmax / half
    K = D / hbar
    H = K @ K + omega ** 2 * np.diag(x ** 2)
    _, U = np.linalg.eigh((H + H.conj().T) / 2)
    return U[:, : n // 2]


def grid_representation(npoints, boxsize, gauge="none", params=None, epsilon12=-1):
    if not isinstance(npoints, (int, np.integer)) or npoints < 16 or npoints & (npoints - 1):
        raise InvalidGrid(f"npoints must be a power of two >= 16, got {npoints!r}")
    if not (boxsize > 0 and math.isfinite(boxsize)):
        raise InvalidGrid(f"boxsize must be positive, got {boxsize!r}")
    if gauge not in GAUGES:
        raise InvalidGrid(f"unknown gauge {gauge!r}; choose from {', '.join(GAUGES)}")
    try:
        p = _check_params(params, allow_zero=("B",))
    except ValueError as exc:
        raise InvalidGrid(str(exc)) from None
    p.setdefault("alphadot", p["e"] * p["B"] / (2 * p["M"]))
    hbar, e, B = p["hbar"], p["e"], p["B"]
    n = npoints
    x = grid_positions(n, boxsize)
    D = hbar * spectral_derivative(n, boxsize)
    eye = np.eye(n)
    d1 = np.kron(x, np.ones(n))
    d2 = np.kron(np.ones(n), x)
    p1 = _frozen(np.kron(D, eye))
    p2 = _frozen(np.kron(eye, D))
    G = gauge_matrix(gauge, B, epsilon12)
    if gauge == "none":
        pi1, pi2 = p1, p2
    else:
        # kinetic momenta P - e A(Q)
        a1 = G[0, 0] * d1 + G[0, 1] * d2
        a2 = G[1, 0] * d1 + G[1, 1] * d2
        pi1 = np.array(p1)
        pi1[np.diag_indices(n * n)] -= e * a1
        pi2 = np.array(p2)
        pi2[np.diag_indices(n * n)] -= e * a2
        pi1, pi2 = _frozen(pi1), _frozen(pi2)
    assignment = {
        Generator("P", 1): pi1, Generator("P", 2): pi2,
        Generator("Q", 1): _frozen(np.diag(d1.astype(complex))),
        Generator("Q", 2): _frozen(np.diag(d2.astype(complex))),
    }
    V1 = _grid_subspace(D, x, hbar)
    subspace = _frozen(np.kron(V1, V1))
    extras = {"canonical_P1": p1, "canonical_P2": p2}
    p["boxsize"] = float(boxsize)
    p["curl"] = float(G[1, 0] - G[0, 1])
    build = {"npoints": npoints, "boxsize": boxsize, "gauge": gauge, "params": dict(params or {}),
             "epsilon12": epsilon12}
    return Representation(n * n, assignment, subspace, p, "grid", "standard", epsilon12,
                          frozenset({Generator("Q", 1), Generator("Q", 2)}), extras, build)


# compilation

def _scalar(coef, rep):
    try:
        return coef.evaluate(rep.params)
    except MissingParam as exc:
        raise MissingParam(f"{exc} (representation params: {sorted(rep.params)})") from None


def compile(p, rep):
    """Dense matrix image of ``p``: words become products in word order."""
    p = NCPolynomial.coerce(p)
    for g in p.generators():
        rep.matrix(g)
    out = np.zeros((rep.dimension, rep.dimension), dtype=complex)
    for word, coef in p.items():
        c = _scalar(coef, rep)
        if not word:
            out += c * np.eye(rep.dimension)
            continue
        m = rep.matrix(word[0])
        for g in word[1:]:
            m = m @ rep.matrix(g)
        out += c * m
    return out


class _Action:
    """Memoised right-to-left action of generator words on a fixed block ``X``."""

    def __init__(self, rep, X):
        self.rep = rep
        self.cache = {(): np.asarray(X, dtype=complex)}
        self.diag = {g: np.diag(rep.matrix(g)) for g in rep.diagonal}
        self.blocks = {}

    def __call__(self, word):
        hit = self.cache.get(word)
        if hit is not None:
            return hit
        inner = self(word[1:])
        g = word[0]
        res = self.diag[g][:, None] * inner if g in self.diag else self.rep.matrix(g) @ inner
        self.cache[word] = res
        return res


def apply(p, rep, X, action=None):
    """``compile(p, rep) @ X`` without forming the full matrix."""
    p = NCPolynomial.coerce(p)
    for g in p.generators():
        rep.matrix(g)
    act = action if action is not None else _Action(rep, X)
    out = np.zeros(act.cache[()].shape, dtype=complex)
    for word, coef in p.items():
        out += _scalar(coef, rep) * act(word)
    return out


def projected_block(p, rep, action=None):
    """``V^dagger compile(p) V``.

    Each word ``w = l r`` is evaluated as ``(l^dagger V)^dagger (r V)``; the
    generator matrices are Hermitian, so ``l^dagger`` is ``l`` reversed and
    only short words ever act on ``V``.
    """
    p = NCPolynomial.coerce(p)
    for g in p.generators():
        rep.matrix(g)
    act = action if action is not None else _Action(rep, rep.subspace)
    r = rep.projector_rank
    out = np.zeros((r, r), dtype=complex)
    for word, coef in p.items():
        half = len(word) // 2
        lkey, rkey = tuple(reversed(word[:half])), word[half:]
        if (lkey, rkey) in act.blocks:
            block = act.blocks[(lkey, rkey)]
        elif (rkey, lkey) in act.blocks:
            block = act.blocks[(rkey, lkey)].conj().T
        else:
            block = act(lkey).conj().T @ act(rkey)
            act.blocks[(lkey, rkey)] = block
        out += _scalar(coef, rep) * block
    return out


def projected_norm(p, rep, action=None):
    """Spectral norm of ``V^dagger compile(p) V``."""
    block = projected_block(p, rep, action)
    return float(np.linalg.norm(block, 2)) if block.size else 0.0


@dataclass(frozen=True)
class ResidualReport:
    pair: tuple
    expected: str
    norm: float
    tolerance: float

    @property
    def passed(self):
        return self.norm < self.tolerance

    def to_dict(self):
        return {"pair": [str(g) for g in self.pair], "expected": self.expected, "norm": self.norm,
                "tolerance": self.tolerance, "pass": self.passed}


@dataclass(frozen=True)
class AuditReport:
    algebra: str
    representation: dict
    residuals: tuple

    @property
    def ok(self):
        return all(r.passed for r in self.residuals)

    def residual(self, g, h):
        if isinstance(g, str):
            g, h = Generator.parse(g), Generator.parse(h)
        for r in self.residuals:
            if r.pair == (g, h):
                return r
        raise KeyError((g, h))

    def to_dict(self):
        return {"kind": "audit", "algebra": self.algebra, "representation": self.representation,
                "residuals": [r.to_dict() for r in self.residuals],
                "verdict": "PASS" if self.ok else "FAIL"}

    def to_text(self):
        lines = [f"audit of {self.algebra} on {self.representation['provenance']} representation "
                 f"(dim {self.representation['dimension']}, projected rank "
                 f"{self.representation['projector_rank']})"]
        w = max(len(r.expected) for r in self.residuals) if self.residuals else 8
        for r in self.residuals:
            lines.append(f"[{r.pair[0]},{r.pair[1]}]  expected {r.expected:<{w}}  "
                         f"residual {r.norm:.3e}  tol {r.tolerance:.0e}  "
                         f"{'pass' if r.passed else 'FAIL'}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)


def describe(rep):
    info = {"provenance": rep.provenance, "dimension": rep.dimension,
            "projector_rank": rep.projector_rank, "epsilon12": rep.epsilon12,
            "convention": rep.convention,
            "params": {k: v for k, v in sorted(rep.params.items())}}
    info.update({k: v for k, v in rep.build.items() if k in ("gauge", "npoints", "boxsize", "ntrunc")})
    return info


def representation_audit(rep, a, tolerance=None):
    """One residual per declared pair: ``||V^dag ([g,h] - c) V||``."""
    missing = [g for g in a.generators if g not in rep.assignment]
    if missing:
        raise UnknownGenerator("representation lacks " + ", ".join(map(str, missing)))
    tol = rep.default_tolerance() if tolerance is None else float(tolerance)
    act = _Action(rep, rep.subspace)
    out = []
    for (g, h), c in a.table.items():
        poly = commutator_formal(g, h) - NCPolynomial.constant(c)
        out.append(ResidualReport((g, h), str(c), projected_norm(poly, rep, act), tol))
    return AuditReport(a.name or "custom", describe(rep), tuple(out))


def commutator_residual(g, h, expected, rep):
    """``||V^dag([g,h] - expected) V||`` with ``expected`` a coefficient."""
    poly = commutator_formal(g, h) - NCPolynomial.constant(Coefficient.coerce(expected))
    return projected_norm(poly, rep)
