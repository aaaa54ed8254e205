"""Command-line dispatch.

Exit codes: 0 success or a passing verdict, 1 a computed failing verdict
(INCONSISTENT, FAIL, not quantized), 2 usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .. import flux as fluxmod
from .. import spectra
from ..errors import ParseError, QAxiomError, UsageError
from ..represent import grid_representation, landau_representation, representation_audit
from ..symalg import (
    GEOMETRIC_UNITS, DimensionMap, bounded_motion_matrix, commutator, dimension_check,
    equivalence_check, jacobi_check, mixed_commutator, normal_order, substitute,
)
from .files import load_algebra, load_substitution
from .parser import lower, parse_expression

COMMANDS = ("commute", "normal-order", "jacobi", "dims", "subst", "equiv", "mixed", "audit",
            "spectrum", "uncertainty", "scan", "flux", "plaquette")


@dataclass
class CommandResult:
    command: str
    exit_code: int
    payload: dict   # JSON document
    text: str       # human-readable rendering

    def render(self, as_json):
        if as_json:
            return json.dumps(self.payload, sort_keys=True, indent=2, default=_json_default)
        return self.text


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if hasattr(x, "tolist"):
        return x.tolist()
    raise TypeError(f"cannot serialise {type(x).__name__}")


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n\n{self.format_help()}")


def _float_pair(text):
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return key.strip(), float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {val!r}") from None


def _epsilon(text):
    if text not in ("1", "+1", "-1"):
        raise argparse.ArgumentTypeError("epsilon12 must be +1 or -1")
    return int(text)


def _common(p, algebra=True):
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--epsilon12", type=_epsilon, default=None, help="+1 or -1 (default -1)")
    if algebra:
        p.add_argument("--algebra", default="magnetic2", help="preset name or algebra file")


def _numeric(p):
    p.add_argument("--rep", choices=("landau", "grid"), default="landau")
    p.add_argument("--ntrunc", type=int, default=256)
    p.add_argument("--npoints", type=int, default=32)
    p.add_argument("--boxsize", type=float, default=20.0)
    p.add_argument("--gauge", choices=("none", "paper", "symmetric", "landau"), default="none")
    p.add_argument("--convention", choices=spectra.CONVENTIONS, default="standard")
    p.add_argument("--param", type=_float_pair, action="append", default=[],
                   metavar="NAME=VALUE", help="hbar, e, B, M or alphadot (repeatable)")


def build_parser():
    root = _ArgParser(prog="qaxiom", description="Operator-algebra workbench.")
    sub = root.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgParser)

    p = sub.add_parser("commute", help="normal-ordered bracket [A,B], or the whole table")
    p.add_argument("a", nargs="?", help="expression, or A when B is given")
    p.add_argument("b", nargs="?")
    _common(p)

    p = sub.add_parser("normal-order", help="normal form of an expression")
    p.add_argument("expr")
    _common(p)

    p = sub.add_parser("jacobi", help="Jacobi identity over all generator triples")
    _common(p)

    p = sub.add_parser("dims", help="dimensional homogeneity of the table")
    p.add_argument("--dims", default=None, help="e.g. Q=1,P=-1,hbar=0,e=0,B=-2,M=-1")
    _common(p)

    p = sub.add_parser("subst", help="apply a substitution and normal-order")
    p.add_argument("expr")
    p.add_argument("--subst", default="preset:eq5")
    _common(p)

    p = sub.add_parser("equiv", help="re-derive the table after a substitution")
    p.add_argument("--subst", default="preset:eq5")
    _common(p)

    p = sub.add_parser("mixed", help="expand D1(f2 .) - D2(f1 .) exactly")
    p.add_argument("--mode", choices=("position", "momentum"), default="position")
    p.add_argument("--matrix", default=None,
                   help="c11,c12;c21,c22 (default: M*alphadot*eps, inverted in momentum mode)")
    _common(p, algebra=False)

    p = sub.add_parser("audit", help="commutator residuals of a matrix representation")
    _numeric(p)
    p.add_argument("--tolerance", type=float, default=None)
    _common(p)

    p = sub.add_parser("spectrum", help="lowest eigenvalues and Landau-level comparison")
    _numeric(p)
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--hamiltonian", default=None, help="default (P1^2 + P2^2)*(1/2)*M^-1")
    p.add_argument("--tolerance", type=float, default=1e-9)
    _common(p, algebra=False)

    p = sub.add_parser("uncertainty", help="Delta A * Delta B against the Robertson bound")
    p.add_argument("a", nargs="?", default="Q1")
    p.add_argument("b", nargs="?", default="Q2")
    _numeric(p)
    p.add_argument("--state", default="ground", help="ground, basis:N or random[:SEED]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hamiltonian", default=None)
    _common(p, algebra=False)

    p = sub.add_parser("scan", help="tabulate a scale as one parameter varies")
    p.add_argument("quantity", choices=spectra.SCAN_QUANTITIES)
    p.add_argument("--over", default="B", choices=spectra.SCAN_PARAMS)
    p.add_argument("--values", default="1,0.1,0.01")
    p.add_argument("--ntrunc", type=int, default=64)
    p.add_argument("--param", type=_float_pair, action="append", default=[], metavar="NAME=VALUE")
    _common(p, algebra=False)

    p = sub.add_parser("flux", help="e * loop integral of A and quantization test")
    p.add_argument("--path", default="circle:r=1,n=100000", help="circle:r=..,n=.. or CSV file")
    p.add_argument("--gauge", choices=fluxmod.GAUGE_KINDS, default="symmetric")
    p.add_argument("--param", type=_float_pair, action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--h", type=float, default=None, help="quantum (default 2 pi hbar)")
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--subst", default=None, help="momentum rule for the canonical action integral")
    _common(p, algebra=False)

    p = sub.add_parser("plaquette", help="Peierls phase per lattice plaquette")
    p.add_argument("--npoints", type=int, default=8)
    p.add_argument("--spacing", type=float, default=1.0)
    p.add_argument("--gauge", choices=fluxmod.GAUGE_KINDS, default="symmetric")
    p.add_argument("--param", type=_float_pair, action="append", default=[], metavar="NAME=VALUE")
    _common(p, algebra=False)
    root.commands = sub.choices
    return root


# handlers: each returns (exit_code, result dict, text)

def _algebra(ns):
    return load_algebra(ns.algebra, ns.epsilon12)


def _expr(text, a):
    return lower(parse_expression(text), a)


def _params(ns):
    return dict(ns.param)


def _cmd_commute(ns):
    a = _algebra(ns)
    if ns.a is None:
        rows = []
        # momenta first so the rows read like the axioms: [P,P], [P,Q], [Q,Q]
        gens = sorted(a.generators, key=lambda g: (g.kind != "P", g.index))
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                rows.append({"pair": [str(g), str(h)], "result": str(commutator(g, h, a))})
        text = "\n".join(f"[{r['pair'][0]},{r['pair'][1]}] = {r['result']}" for r in rows)
        return 0, {"kind": "commute_table", "algebra": a.name, "epsilon12": a.epsilon12,
                   "brackets": rows}, text
    if ns.b is None:
        result = normal_order(_expr(ns.a, a), a)
        label = ns.a
    else:
        result = commutator(_expr(ns.a, a), _expr(ns.b, a), a)
        label = f"[{ns.a},{ns.b}]"
    return 0, {"kind": "commute", "algebra": a.name, "epsilon12": a.epsilon12,
               "expression": label, "result": str(result)}, f"{label} = {result}"


def _cmd_normal_order(ns):
    a = _algebra(ns)
    result = normal_order(_expr(ns.expr, a), a)
    return 0, {"kind": "normal_order", "algebra": a.name, "epsilon12": a.epsilon12,
               "expression": ns.expr, "result": str(result)}, f"{ns.expr} = {result}"


def _cmd_jacobi(ns):
    r = jacobi_check(_algebra(ns))
    return (0 if r.ok else 1), r.to_dict(), r.to_text()


def _parse_dims(text):
    out = {}
    for item in filter(None, (x.strip() for x in text.split(","))):
        key, sep, val = item.partition("=")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise UsageError(f"bad dimension entry {item!r}; expected NAME=INTEGER") from None
        if not sep:
            raise UsageError(f"bad dimension entry {item!r}; expected NAME=INTEGER")
    return out


def _cmd_dims(ns):
    d = GEOMETRIC_UNITS if ns.dims is None else _parse_dims(ns.dims)
    r = dimension_check(_algebra(ns), DimensionMap(d))
    return (0 if r.ok else 1), r.to_dict(), r.to_text()


def _cmd_subst(ns):
    a = _algebra(ns)
    s = load_substitution(ns.subst, a)
    result = substitute(_expr(ns.expr, a), s, a)
    return 0, {"kind": "subst", "algebra": a.name, "substitution": s.name, "expression": ns.expr,
               "result": str(result)}, f"{ns.expr} -> {result}"


def _cmd_equiv(ns):
    a = _algebra(ns)
    r = equivalence_check(a, load_substitution(ns.subst, a))
    return (0 if r.consistent else 1), r.to_dict(), r.to_text()


def _parse_matrix(text, eps):
    rows = [r.split(",") for r in text.split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise UsageError("--matrix needs two rows of two entries: c11,c12;c21,c22")
    out = []
    for row in rows:
        cells = []
        for cell in row:
            p = lower(parse_expression(cell.strip()), None, eps)
            if not p.is_constant():
                raise UsageError(f"matrix entry {cell.strip()!r} must not contain generators")
            cells.append(p.constant_term())
        out.append(cells)
    return out


def _cmd_mixed(ns):
    eps = -1 if ns.epsilon12 is None else ns.epsilon12
    if ns.matrix is None:
        c = bounded_motion_matrix(eps, inverse=(ns.mode == "momentum"))
    else:
        c = _parse_matrix(ns.matrix, eps)
    r = mixed_commutator(c, ns.mode)
    d = r.to_dict()
    d["matrix"] = [[str(x) for x in row] for row in c]
    return 0, d, r.to_text()


def _representation(ns, eps):
    params = _params(ns)
    if ns.rep == "landau":
        return landau_representation(ns.ntrunc, params, ns.convention, eps)
    return grid_representation(ns.npoints, ns.boxsize, ns.gauge, params, eps)


def _cmd_audit(ns):
    a = _algebra(ns)
    rep = _representation(ns, a.epsilon12)
    r = representation_audit(rep, a, ns.tolerance)
    return (0 if r.ok else 1), r.to_dict(), r.to_text()


def _cmd_spectrum(ns):
    eps = -1 if ns.epsilon12 is None else ns.epsilon12
    rep = _representation(ns, eps)
    h = None if ns.hamiltonian is None else lower(parse_expression(ns.hamiltonian), None, eps)
    report = spectra.spectrum(rep, h, ns.levels)
    check = spectra.landau_level_check(report, ns.tolerance)
    d = report.to_dict()
    d["level_check"] = check.to_dict()
    return (0 if check.ok else 1), d, report.to_text() + "\n\n" + check.to_text()


def _cmd_uncertainty(ns):
    eps = -1 if ns.epsilon12 is None else ns.epsilon12
    rep = _representation(ns, eps)
    state = ns.state if ns.state != "random" else f"random:{ns.seed}"
    a = lower(parse_expression(ns.a), None, eps)
    b = lower(parse_expression(ns.b), None, eps)
    h = None if ns.hamiltonian is None else lower(parse_expression(ns.hamiltonian), None, eps)
    r = spectra.uncertainty(rep, state, a, b, h)
    return (0 if r.ok else 1), r.to_dict(), r.to_text()


def _cmd_scan(ns):
    values = [v.strip() for v in ns.values.split(",") if v.strip()]
    context = _params(ns)
    context["ntrunc"] = ns.ntrunc
    t = spectra.limit_scan(ns.quantity, ns.over, values, context)
    return 0, t.to_dict(), t.to_text()


def _gauge(ns):
    p = _params(ns)
    eps = -1 if ns.epsilon12 is None else ns.epsilon12
    return fluxmod.GaugeField(ns.gauge, p.get("B", 1.0), p.get("e", 1.0), eps), p


def _cmd_flux(ns):
    g, p = _gauge(ns)
    if ns.path.startswith("circle:") or ns.path == "circle":
        path = fluxmod.LoopPath.parse(ns.path)
    else:
        try:
            with open(ns.path, encoding="utf-8") as fh:
                path = fluxmod.LoopPath.from_csv(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read path file {ns.path!r}: {exc.strerror}") from None
    value = fluxmod.loop_integral(path, g)
    h = ns.h if ns.h is not None else 2 * math.pi * p.get("hbar", 1.0)
    r = fluxmod.flux_quantization(value, h, ns.tolerance)
    d = r.to_dict()
    d.update({"gauge": g.kind, "curl": g.curl, "symbolic_curl": str(g.symbolic_curl),
              "signed_area": path.signed_area, "segments": len(path.points)})
    text = f"{g.kind} gauge, curl {g.symbolic_curl} = {g.curl:g}, area {path.signed_area:.15g}\n"
    text += r.to_text()
    if ns.subst:
        rule = load_substitution(ns.subst, None, g.epsilon12)
        action = fluxmod.canonical_action_integral(path, rule, g, p)
        d["canonical_action"] = action
        d["canonical_minus_loop"] = action - value
        text += f"\noint P.dQ under {rule.name} = {action:.15g} (difference {action - value:.3e})"
    return (0 if r.quantized else 1), d, text


def _cmd_plaquette(ns):
    g, p = _gauge(ns)
    r = fluxmod.plaquette_phase(ns.npoints, ns.spacing, g, p.get("hbar", 1.0))
    return (0 if r.uniform else 1), r.to_dict(), r.to_text()


HANDLERS = {
    "commute": _cmd_commute, "normal-order": _cmd_normal_order, "jacobi": _cmd_jacobi,
    "dims": _cmd_dims, "subst": _cmd_subst, "equiv": _cmd_equiv, "mixed": _cmd_mixed,
    "audit": _cmd_audit, "spectrum": _cmd_spectrum, "uncertainty": _cmd_uncertainty,
    "scan": _cmd_scan, "flux": _cmd_flux, "plaquette": _cmd_plaquette,
}


def _echo(ns):
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(ns).items())
            if k not in ("command", "json")}


def dispatch(argv):
    """Run one command; never raises for user errors."""
    argv = list(argv)
    parser = build_parser()
    try:
        ns, extra = parser.parse_known_args(argv)
        if extra:
            owner = parser.commands.get(ns.command, parser)
            owner.error("unrecognized arguments: " + " ".join(extra))
        if ns.command is None:
            raise UsageError("no command given\n\n" + parser.format_help())
    except UsageError as exc:
        msg = str(exc)
        return CommandResult(None, 2, {"error": {"type": "UsageError", "message": msg},
                                       "input": {"argv": argv}, "exit_code": 2}, msg)
    try:
        code, result, text = HANDLERS[ns.command](ns)
    except (QAxiomError, ValueError) as exc:
        kind = type(exc).__name__
        payload = {"error": {"type": kind, "message": str(exc)},
                   "input": {"argv": argv, "command": ns.command, "options": _echo(ns)},
                   "exit_code": 2}
        if isinstance(exc, ParseError) and getattr(exc, "position", None) is not None:
            payload["error"].update(position=exc.position, expected=list(exc.expected))
        return CommandResult(ns.command, 2, payload, f"error ({kind}): {exc}")
    payload = {"command": ns.command, "result": result, "exit_code": code,
               "input": {"argv": argv, "command": ns.command, "options": _echo(ns)}}
    return CommandResult(ns.command, code, payload, text)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    result = dispatch(argv)
    as_json = "--json" in argv
    out = result.render(as_json)
    stream = sys.stderr if result.exit_code == 2 and not as_json else sys.stdout
    print(out, file=stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
