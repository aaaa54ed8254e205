"""Spectra, Landau-level comparison, uncertainty products and classical-limit scans."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    InvalidParam, NonHermitian, NonHermitianObservable, TruncationTooSmall, UnnormalizedState,
)
from .represent import _Action, apply, compile, describe, landau_representation, projected_block
from .symalg import Coefficient, Generator, NCPolynomial

CONVENTIONS = ("standard", "paper")
LEVEL_DRIFT = 1e-8


def cyclotron_frequency(params, convention):
    """``eB/M`` (standard) or ``eB/(2M)`` (``paper``, the orbital angular frequency)."""
    w = params["e"] * params["B"] / params["M"]
    if convention == "paper":
        return w / 2
    if convention == "standard":
        return w
    raise ValueError(f"convention must be one of {CONVENTIONS}")


def kinetic_hamiltonian():
    """``(P1^2 + P2^2) / (2M)``."""
    p1 = NCPolynomial.generator(Generator("P", 1))
    p2 = NCPolynomial.generator(Generator("P", 2))
    return (p1 * p1 + p2 * p2).scale(Coefficient.scalar(Fraction(1, 2)) * Coefficient.const("M", -1))


def _hermitian_gap(m):
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    return float(np.max(np.abs(m - m.conj().T))) / scale if m.size else 0.0


def _spectral_matrix(h, rep):
    # ladder reps: diagonalise on the truncation-safe block; grid reps are
    # exact periodic operators, so the whole grid space is used
    if rep.provenance == "grid":
        return compile(h, rep)
    return projected_block(h, rep)


def _lowest(h, rep, nlevels):
    m = _spectral_matrix(h, rep)
    if _hermitian_gap(m) > 1e-9:
        raise NonHermitian(f"Hamiltonian {h} is not Hermitian in this representation")
    m = (m + m.conj().T) / 2
    return np.linalg.eigvalsh(m)[:nlevels]


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple
    params: dict
    convention: str
    omega_c: float
    expected: tuple
    deviations: tuple
    hamiltonian: str = ""
    representation: dict = field(default_factory=dict)

    def to_dict(self):
        return {"kind": "spectrum", "hamiltonian": self.hamiltonian, "convention": self.convention,
                "omega_c": self.omega_c, "params": dict(sorted(self.params.items())),
                "eigenvalues": list(self.eigenvalues), "expected": list(self.expected),
                "deviations": list(self.deviations), "representation": self.representation}

    def to_text(self):
        lines = [f"spectrum of {self.hamiltonian}  ({self.convention} convention, "
                 f"omega_c = {self.omega_c:.12g})",
                 f"{'n':>3}  {'eigenvalue':>20}  {'hbar*w*(n+1/2)':>20}  {'deviation':>12}"]
        for n, (E, x, d) in enumerate(zip(self.eigenvalues, self.expected, self.deviations)):
            lines.append(f"{n:>3}  {E:>20.12f}  {x:>20.12f}  {d:>12.3e}")
        return "\n".join(lines)


def spectrum(rep, h=None, nlevels=5, check_truncation=True):
    """Lowest ``nlevels`` eigenvalues of ``h`` (default: kinetic energy), ascending."""
    h = kinetic_hamiltonian() if h is None else NCPolynomial.coerce(h)
    if nlevels < 0:
        raise InvalidParam("nlevels must be non-negative")
    if nlevels > rep.projector_rank // 4:
        raise TruncationTooSmall(
            f"{nlevels} levels requested but the projected rank {rep.projector_rank} "
            f"supports at most {rep.projector_rank // 4}")
    values = _lowest(h, rep, nlevels)
    if check_truncation and nlevels:
        half = _half_size(rep)
        if half is not None:
            smaller = rep.resized(half)
            if nlevels <= smaller.projector_rank // 4:
                drift = abs(values[-1] - _lowest(h, smaller, nlevels)[-1])
                if drift > LEVEL_DRIFT:
                    raise TruncationTooSmall(
                        f"level {nlevels - 1} moves by {drift:.2e} when the truncation is halved")
    w = cyclotron_frequency(rep.params, rep.convention)
    hbar = rep.params["hbar"]
    expected = tuple(hbar * w * (n + 0.5) for n in range(nlevels))
    values = tuple(float(v) for v in values)
    return SpectrumReport(values, {k: rep.params[k] for k in ("hbar", "e", "B", "M")},
                          rep.convention, w, expected,
                          tuple(v - x for v, x in zip(values, expected)), str(h), describe(rep))


def _half_size(rep):
    if rep.provenance == "landau":
        half = rep.dimension // 2
        return half if half >= 2 else None
    n = rep.build["npoints"] // 2
    return n if n >= 16 else None


@dataclass(frozen=True)
class LevelCheck:
    levels: tuple  # (n, eigenvalue, expected, passed)
    spacing_ratio: float | None
    convention: str
    tolerance: float

    @property
    def ok(self):
        return all(p for *_, p in self.levels)

    def to_dict(self):
        return {"kind": "landau_levels", "convention": self.convention, "tolerance": self.tolerance,
                "levels": [{"n": n, "eigenvalue": E, "expected": x, "pass": p}
                           for n, E, x, p in self.levels],
                "spacing_ratio": self.spacing_ratio, "verdict": "PASS" if self.ok else "FAIL"}

    def to_text(self):
        ratio = "n/a" if self.spacing_ratio is None else f"{self.spacing_ratio:.12f}"
        lines = [f"Landau levels vs hbar*omega_c*(n+1/2), {self.convention} convention"]
        lines += [f"  n={n}: {E:.12f} vs {x:.12f}  {'pass' if p else 'FAIL'}"
                  for n, E, x, p in self.levels]
        lines.append(f"measured spacing / expected spacing = {ratio}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)


def landau_level_check(report, tolerance=1e-9):
    """Per-level comparison with ``hbar omega_c (n + 1/2)`` and the spacing ratio.

    The ratio is reported, not judged: with ``convention="paper"`` it comes
    out as 2 against the ladder representation.
    """
    levels = []
    for n, (E, x) in enumerate(zip(report.eigenvalues, report.expected)):
        levels.append((n, E, x, abs(E - x) <= tolerance * max(1.0, abs(x))))
    ratio = None
    if len(report.eigenvalues) >= 2:
        spacing = (report.eigenvalues[-1] - report.eigenvalues[0]) / (len(report.eigenvalues) - 1)
        ratio = spacing / (report.params["hbar"] * report.omega_c)
    return LevelCheck(tuple(levels), ratio, report.convention, tolerance)


# uncertainty

@dataclass(frozen=True)
class UncertaintyReport:
    observables: tuple
    state: str
    delta_a: float
    delta_b: float
    mean_commutator: complex
    robertson_bound: float
    paper_bound: float

    @property
    def product(self):
        return self.delta_a * self.delta_b

    @property
    def saturation(self):
        return self.product / self.robertson_bound if self.robertson_bound > 0 else None

    @property
    def ok(self):
        return self.product >= self.robertson_bound - 1e-10

    def to_dict(self):
        return {"kind": "uncertainty", "observables": list(self.observables), "state": self.state,
                "delta_a": self.delta_a, "delta_b": self.delta_b, "product": self.product,
                "mean_commutator": [self.mean_commutator.real, self.mean_commutator.imag],
                "robertson_bound": self.robertson_bound, "paper_bound": self.paper_bound,
                "saturation": self.saturation, "robertson_holds": self.ok,
                "paper_bound_holds": self.product >= self.paper_bound - 1e-10}

    def to_text(self):
        a, b = self.observables
        sat = "n/a" if self.saturation is None else f"{self.saturation:.12f}"
        return "\n".join([
            f"state {self.state}",
            f"  Delta({a}) = {self.delta_a:.12g}",
            f"  Delta({b}) = {self.delta_b:.12g}",
            f"  product    = {self.product:.12g}",
            f"  Robertson |<[A,B]>|/2 = {self.robertson_bound:.12g}   (saturation {sat})",
            f"  unnormalised |<[A,B]>| = {self.paper_bound:.12g}   "
            f"({'holds' if self.product >= self.paper_bound - 1e-10 else 'violated'})",
        ])


def _check_observable(a, rep, seed=12345):
    # Hermiticity probed on a few random vectors; avoids forming large matrices
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(rep.dimension, 4)) + 1j * rng.normal(size=(rep.dimension, 4))
    m = X.conj().T @ apply(a, rep, X)
    if np.max(np.abs(m - m.conj().T)) > 1e-9 * max(1.0, float(np.max(np.abs(m)))):
        raise NonHermitianObservable(f"{a} is not Hermitian in this representation")


def resolve_state(rep, spec, hamiltonian=None):
    """State vector from ``ground``, ``basis:n``, ``random:seed`` or an array."""
    V = rep.subspace
    if isinstance(spec, np.ndarray):
        psi = np.asarray(spec, dtype=complex).ravel()
        if psi.shape != (rep.dimension,):
            raise InvalidParam(f"state has length {psi.size}, expected {rep.dimension}")
        norm = np.linalg.norm(psi)
        if abs(norm - 1) > 1e-12:
            raise UnnormalizedState(f"state norm is {norm!r}")
        leak = np.linalg.norm(psi - V @ (V.conj().T @ psi))
        if leak > 1e-10:
            raise InvalidParam(f"state leaves the projected subspace (leak {leak:.2e})")
        return psi, "vector"
    kind, _, arg = str(spec).partition(":")
    if kind == "ground":
        h = kinetic_hamiltonian() if hamiltonian is None else NCPolynomial.coerce(hamiltonian)
        if rep.provenance == "grid":
            m = compile(h, rep)
            _, U = np.linalg.eigh((m + m.conj().T) / 2)
            psi = U[:, 0]
            psi = V @ (V.conj().T @ psi)
            psi /= np.linalg.norm(psi)
        else:
            m = projected_block(h, rep)
            _, U = np.linalg.eigh((m + m.conj().T) / 2)
            psi = V @ U[:, 0]
        return psi, "ground"
    if kind == "basis":
        try:
            n = int(arg)
        except ValueError:
            raise InvalidParam(f"bad state spec {spec!r}") from None
        if not 0 <= n < rep.projector_rank:
            raise InvalidParam(f"basis index {n} outside the projected rank {rep.projector_rank}")
        return np.array(V[:, n]), f"basis:{n}"
    if kind == "random":
        try:
            seed = int(arg) if arg else 0
        except ValueError:
            raise InvalidParam(f"bad state spec {spec!r}") from None
        rng = np.random.default_rng(seed)
        z = rng.normal(size=rep.projector_rank) + 1j * rng.normal(size=rep.projector_rank)
        psi = V @ (z / np.linalg.norm(z))
        return psi, f"random:{seed}"
    raise InvalidParam(f"unknown state spec {spec!r}; use ground, basis:N or random:SEED")


def uncertainty(rep, state, a, b, hamiltonian=None):
    a = NCPolynomial.coerce(a)
    b = NCPolynomial.coerce(b)
    _check_observable(a, rep)
    _check_observable(b, rep)
    psi, label = resolve_state(rep, state, hamiltonian)
    col = psi[:, None]
    act = _Action(rep, col)
    pa = apply(a, rep, col, act)[:, 0]
    pb = apply(b, rep, col, act)[:, 0]
    mean_a = np.vdot(psi, pa).real
    mean_b = np.vdot(psi, pb).real
    da = pa - mean_a * psi
    db = pb - mean_b * psi
    delta_a = float(np.linalg.norm(da))
    delta_b = float(np.linalg.norm(db))
    overlap = np.vdot(pa, pb)
    mean_comm = complex(overlap - overlap.conjugate())
    return UncertaintyReport((str(a), str(b)), label, delta_a, delta_b, mean_comm,
                             abs(mean_comm) / 2, abs(mean_comm))


# classical-limit scan

SCAN_QUANTITIES = ("commutatorScale", "magneticLength", "uncertaintyProduct")
SCAN_PARAMS = ("hbar", "e", "B", "M")


def _exact(value):
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, int):
        q = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidParam(f"value {value!r} is not finite")
        q = Fraction(repr(value))
    else:
        try:
            q = Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidParam(f"cannot read {value!r} as a number") from None
    if q <= 0:
        raise InvalidParam(f"scan values must be positive, got {value!r}")
    return q


@dataclass(frozen=True)
class ScanTable:
    quantity: str
    param: str
    columns: tuple
    rows: tuple  # tuples aligned with columns, first entry the parameter value

    def column(self, name):
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_dict(self):
        return {"kind": "scan", "quantity": self.quantity, "param": self.param,
                "columns": list(self.columns),
                "rows": [[float(x) for x in r] for r in self.rows]}

    def to_text(self):
        w = 22
        lines = [f"{self.quantity} vs {self.param}", "".join(f"{c:>{w}}" for c in self.columns)]
        lines += ["".join(f"{float(x):>{w}.12g}" for x in r) for r in self.rows]
        return "\n".join(lines)


def limit_scan(quantity, param, values, context=None):
    """Tabulate a scale as one parameter varies (B -> 0 is the classical limit).

    ``commutatorScale`` rows are exact rationals: ``hbar/(eB)`` for the
    position sector and ``hbar e B`` for the momentum sector.
    """
    if quantity not in SCAN_QUANTITIES:
        raise InvalidParam(f"unknown quantity {quantity!r}; choose from {', '.join(SCAN_QUANTITIES)}")
    if param not in SCAN_PARAMS:
        raise InvalidParam(f"unknown parameter {param!r}; choose from {', '.join(SCAN_PARAMS)}")
    context = dict(context or {})
    ntrunc = int(context.pop("ntrunc", 64))
    pair = context.pop("pair", ("Q1", "Q2"))
    base = {k: _exact(context.get(k, 1)) for k in SCAN_PARAMS}
    values = [_exact(v) for v in values]
    rows = []
    for v in values:
        p = dict(base)
        p[param] = v
        if quantity == "commutatorScale":
            rows.append((v, p["hbar"] / (p["e"] * p["B"]), p["hbar"] * p["e"] * p["B"]))
        elif quantity == "magneticLength":
            rows.append((v, math.sqrt(p["hbar"] / (p["e"] * p["B"]))))
        else:
            rep = landau_representation(ntrunc, {k: float(x) for k, x in p.items()})
            a, b = (NCPolynomial.generator(Generator.parse(x)) for x in pair)
            rows.append((v, uncertainty(rep, "ground", a, b).product))
    columns = {
        "commutatorScale": (param, "QQ", "PP"),
        "magneticLength": (param, "length"),
        "uncertaintyProduct": (param, "product"),
    }[quantity]
    return ScanTable(quantity, param, columns, tuple(rows))
