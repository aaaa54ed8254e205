"""Linear gauge potentials, loop integrals and flux-quantization detection."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidGrid, InvalidParam, NonLinearSubstitution, NonPositiveQuantum, OpenPath
from .represent import gauge_matrix
from .symalg import Coefficient, Generator
from .symalg.algebra import epsilon

GAUGE_KINDS = ("paper", "symmetric", "landau")


@dataclass(frozen=True)
class GaugeField:
    """Constant-B vector potential ``A(q) = matrix @ q``.

    ``paper``: ``A_m = B eps_mn Q_n`` (curl ``2 B eps_21``);
    ``symmetric``: ``(B/2)(-Q2, Q1)``; ``landau``: ``(0, B Q1)``.
    """

    kind: str
    B: float
    e: float = 1.0
    epsilon12: int = -1

    def __post_init__(self):
        if self.kind not in GAUGE_KINDS:
            raise InvalidParam(f"unknown gauge {self.kind!r}; choose from {', '.join(GAUGE_KINDS)}")

    @property
    def matrix(self):
        return gauge_matrix(self.kind, self.B, self.epsilon12)

    def __call__(self, q):
        return np.asarray(q, dtype=float) @ self.matrix.T

    def field_momentum(self, q):
        """``G = e A``."""
        return self.e * self(q)

    @property
    def curl(self):
        m = self.matrix
        return float(m[1, 0] - m[0, 1])

    @property
    def symbolic_curl(self):
        B = Coefficient.const("B")
        if self.kind == "paper":
            return B * (2 * epsilon(2, 1, self.epsilon12))
        return B


@dataclass(frozen=True, eq=False)
class LoopPath:
    points: np.ndarray  # (n, 2)
    closed: bool = True

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise InvalidParam("path points must be an (n, 2) array")
        if self.closed:
            if len(pts) >= 2 and np.array_equal(pts[0], pts[-1]):
                raise InvalidParam("closed paths must not repeat the first point at the end")
            if len(pts) < 3:
                raise InvalidParam("closed paths need at least 3 points")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @classmethod
    def circle(cls, radius=1.0, n=100000, center=(0.0, 0.0)):
        t = 2 * np.pi * np.arange(n) / n
        return cls(np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)]))

    @classmethod
    def polygon(cls, points):
        return cls(np.asarray(points, dtype=float))

    @classmethod
    def from_csv(cls, text, closed=True):
        rows = []
        for row in csv.reader(io.StringIO(text)):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError):
                raise InvalidParam(f"bad CSV path row: {row!r}") from None
        if rows and closed and rows[0] == rows[-1]:
            rows.pop()
        return cls(np.array(rows, dtype=float).reshape(-1, 2), closed)

    @classmethod
    def parse(cls, spec):
        """``circle:r=1,n=100000[,cx=0,cy=0]``."""
        kind, _, args = spec.partition(":")
        if kind != "circle":
            raise InvalidParam(f"unknown path generator {kind!r}")
        opts = {}
        for item in filter(None, args.split(",")):
            key, _, val = item.partition("=")
            opts[key.strip()] = val.strip()
        try:
            r = float(opts.pop("r", 1))
            n = int(opts.pop("n", 100000))
            center = (float(opts.pop("cx", 0)), float(opts.pop("cy", 0)))
        except ValueError:
            raise InvalidParam(f"bad path spec {spec!r}") from None
        if opts:
            raise InvalidParam(f"unknown path options: {', '.join(opts)}")
        if r <= 0 or n < 3:
            raise InvalidParam("circle needs r > 0 and n >= 3")
        return cls.circle(r, n, center)

    def reversed(self):
        return LoopPath(self.points[::-1].copy(), self.closed)

    def translated(self, offset):
        return LoopPath(self.points + np.asarray(offset, dtype=float), self.closed)

    @property
    def signed_area(self):
        x, y = self.points[:, 0], self.points[:, 1]
        return 0.5 * math.fsum(x * np.roll(y, -1) - np.roll(x, -1) * y)

    @property
    def length(self):
        return float(np.sum(np.linalg.norm(np.roll(self.points, -1, axis=0) - self.points, axis=1)))


def _segments(path):
    if not path.closed:
        raise OpenPath("line integrals here are taken around closed loops")
    p = path.points
    q = np.roll(p, -1, axis=0)
    return (p + q) / 2, q - p


def _midpoint_integral(path, matrix, offset=(0.0, 0.0)):
    # sum over segments of F(midpoint) . dq with F(q) = matrix @ q + offset
    mid, d = _segments(path)
    values = mid @ np.asarray(matrix, dtype=float).T + np.asarray(offset, dtype=float)
    return math.fsum((values * d).ravel())


def loop_integral(path, g):
    """``e * oint A . dQ`` by the midpoint rule on the polyline.

    For a linear A the rule is exact on every segment, so the result is
    ``e * curl * (polygon area)``.
    """
    return _midpoint_integral(path, g.e * g.matrix)


@dataclass(frozen=True)
class FluxReport:
    value: float
    h: float
    nearest_n: int
    residual: float
    tolerance: float

    @property
    def quantized(self):
        return self.residual < self.tolerance

    def to_dict(self):
        return {"kind": "flux", "integral": self.value, "h": self.h, "N": self.nearest_n,
                "residual": self.residual, "tolerance": self.tolerance, "quantized": self.quantized}

    def to_text(self):
        return (f"e*oint A.dQ = {self.value:.15g}\nh = {self.h:.15g}\n"
                f"nearest N = {self.nearest_n}, residual |value - N h|/h = {self.residual:.3e} "
                f"(tol {self.tolerance:.0e}) -> {'QUANTIZED' if self.quantized else 'not quantized'}")


def flux_quantization(value, h, tolerance=1e-6):
    """Nearest integer multiple of ``h`` and the normalised distance to it."""
    if not h > 0:
        raise NonPositiveQuantum(f"the quantum h must be positive, got {h!r}")
    ratio = value / h
    n = math.floor(ratio + 0.5)
    residual = min(abs(ratio - n), 0.5)
    return FluxReport(float(value), float(h), int(n), residual, float(tolerance))


@dataclass(frozen=True)
class PlaquetteReport:
    npoints: int
    spacing: float
    gauge: str
    phases: np.ndarray  # per-plaquette phase in [0, 2 pi)
    per_plaquette: float
    expected: float  # e * curl * a^2 / hbar mod 2 pi
    uniform: bool
    total_phase: float

    def to_dict(self):
        return {"kind": "plaquette", "npoints": self.npoints, "spacing": self.spacing,
                "gauge": self.gauge, "per_plaquette_phase": self.per_plaquette,
                "expected_phase": self.expected, "uniform": self.uniform,
                "total_phase_mod_2pi": self.total_phase,
                "plaquettes": int(self.phases.size)}

    def to_text(self):
        return (f"{self.gauge} gauge, {self.npoints}x{self.npoints} sites, spacing {self.spacing:g}\n"
                f"per-plaquette phase {self.per_plaquette:.15g} (closed form {self.expected:.15g}), "
                f"uniform: {self.uniform}\ntotal phase mod 2pi: {self.total_phase:.15g}")


def _wrap(phase):
    phase = math.fmod(phase, 2 * math.pi)
    if phase < 0:
        phase += 2 * math.pi
    # values a rounding error below 2 pi are 0
    return 0.0 if 2 * math.pi - phase < 1e-12 else phase


def _circular_gap(a, b):
    d = abs(a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def plaquette_phase(npoints, spacing, g, hbar=1.0):
    """Peierls phases ``exp(-i e/hbar int A.dl)`` on a square lattice centred at 0.

    The phase of each plaquette is read off the product of its four link
    factors, taken counter-clockwise.
    """
    if not isinstance(npoints, (int, np.integer)) or npoints < 2:
        raise InvalidGrid(f"npoints must be an integer >= 2, got {npoints!r}")
    if not spacing > 0:
        raise InvalidGrid(f"spacing must be positive, got {spacing!r}")
    a = float(spacing)
    c = (np.arange(npoints) - (npoints - 1) / 2) * a
    X, Y = np.meshgrid(c, c, indexing="ij")
    m = g.matrix
    # exact for linear A: midpoint value times length
    hx = m[0, 0] * (X[:-1, :] + a / 2) + m[0, 1] * Y[:-1, :]
    hy = m[1, 0] * X[:, :-1] + m[1, 1] * (Y[:, :-1] + a / 2)
    Ux = np.exp(-1j * g.e / hbar * hx * a)   # link (i,j) -> (i+1,j)
    Uy = np.exp(-1j * g.e / hbar * hy * a)   # link (i,j) -> (i,j+1)
    loop = Ux[:, :-1] * Uy[1:, :] * np.conj(Ux[:, 1:]) * np.conj(Uy[:-1, :])
    raw = -np.angle(loop)
    phases = np.vectorize(_wrap)(raw) if raw.size else raw
    expected = _wrap(g.e * g.curl * a * a / hbar)
    first = float(phases.flat[0]) if phases.size else expected
    uniform = all(_circular_gap(float(p), first) <= 1e-12 for p in phases.flat)
    total = _wrap(math.fsum(float(p) for p in phases.flat))
    return PlaquetteReport(npoints, a, g.kind, phases, first, expected, uniform, total)


def _linear_rule(rule, params):
    """Momentum rule -> (matrix, offset) with ``P = matrix @ Q + offset``."""
    mat = np.zeros((2, 2))
    off = np.zeros(2)
    for m in (1, 2):
        image = rule.image(Generator("P", m))
        for word, coef in image.items():
            if len(word) > 1 or any(x.kind != "Q" or x.index > 2 for x in word):
                raise NonLinearSubstitution(f"P{m} -> {image} is not linear in Q1, Q2")
            value = coef.evaluate(params)
            if abs(value.imag) > 0:
                raise NonLinearSubstitution(f"P{m} -> {image} has a complex coefficient")
            if word:
                mat[m - 1, word[0].index - 1] += value.real
            else:
                off[m - 1] += value.real
    return mat, off


def canonical_action_integral(path, rule, g, params=None):
    """``oint P . dQ`` with ``P`` given by a linear rule in Q.

    Uses the same midpoint quadrature as :func:`loop_integral`, so the rule
    ``P = e A`` reproduces it to rounding.
    """
    if not path.closed:
        raise OpenPath("line integrals here are taken around closed loops")
    values = {"e": g.e, "B": g.B, "hbar": 1.0, "M": 1.0}
    values["alphadot"] = g.e * g.B / (2 * values["M"])
    values.update(params or {})
    mat, off = _linear_rule(rule, values)
    return _midpoint_integral(path, mat, off)
