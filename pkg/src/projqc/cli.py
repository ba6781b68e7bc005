"""Command-line front end.

Exit status: 0 success, 1 an internal check failed, 2 a hypothesis of the
requested result does not hold, 64 malformed arguments.
"""

from __future__ import annotations

import argparse
import ast
import json
import sys
from typing import Sequence

from .bundle import (HX, BundleSpec, CohClass, basis, classical_relation_poly, format_split_product,
                     int_det, normal_form_classical, pairing_matrix, segre_classes)
from .errors import HypothesisError, InvariantViolation
from .exactpoly import IntPoly, format_terms
from .fano import (CurveClass, anticanonical_degree, classify_hypotheses, extremal_A2)
from .gwinv import GwQuery, catalog, gw_W, lookup, w_query
from .quantum import (HXQ, q_normal_form, relations_conjectural, relations_split, relations_tangent,
                      relations_template_general)
from .schubert import SYM, integrate_g2, sigma_meet
from .sweep import DEFAULT_GRID, MAX_GRID, run_sweep

EXIT_OK, EXIT_FAILURE, EXIT_REFUSED, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}: expected comma-separated integers") from None


_ALIASES = {"ξ": "xi", "x": "xi"}


def parse_poly(text: str, vars: Sequence[str] = HXQ) -> IntPoly:
    """Parse an integer polynomial such as ``(xi - h)^2 + 3*q`` (``·`` and ``ξ`` accepted)."""
    src = text.replace("·", "*").replace("^", "**").replace("ξ", "xi")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError:
        raise UsageError(f"cannot parse polynomial {text!r}") from None

    def ev(node) -> IntPoly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return IntPoly.const(vars, node.value)
        if isinstance(node, ast.Name):
            name = _ALIASES.get(node.id, node.id)
            if name not in vars:
                raise UsageError(f"unknown variable {node.id!r}; allowed: {', '.join(vars)}")
            return IntPoly.gen(vars, name)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and type(e.value) is int and e.value >= 0):
                    raise UsageError(f"exponents must be non-negative integers in {text!r}")
                return ev(node.left) ** e.value
            ops = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
                   ast.Mult: lambda a, b: a * b}
            op = ops.get(type(node.op))
            if op:
                return op(ev(node.left), ev(node.right))
        raise UsageError(f"unsupported syntax in polynomial {text!r}")

    return ev(tree)


def _spec(args) -> BundleSpec:
    if args.n is None:
        raise UsageError("--n is required")
    if args.tangent == (args.split is not None):
        raise UsageError("give exactly one of --split <csv> or --tangent")
    try:
        return BundleSpec.parse(args.n, split=args.split, tangent=args.tangent)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _insertions(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for part in text.split(";"):
        pair = _int_list(part, "insertion")
        if len(pair) != 2:
            raise UsageError(f"insertion {part!r} must be 'i,j' for h^i xi^j")
        out.append((pair[0], pair[1]))
    return tuple(out)


# subcommands return (json payload, text lines, exit status)

def cmd_ring(args):
    spec = _spec(args)
    mat = pairing_matrix(spec)
    det = int_det(mat)
    rel = format_terms(classical_relation_poly(spec).items(), ("h", "ξ"))
    segre = segre_classes(spec, args.order)
    payload = {"spec": spec.to_json(),
               "relations": [f"h^{spec.n + 1} = 0", f"{rel} = 0"],
               "basis": [list(b) for b in basis(spec)],
               "pairing_matrix": [[str(v) for v in row] for row in mat],
               "pairing_det": str(det),
               "segre": [str(s) for s in segre]}
    lines = [spec.label(), f"  h^{spec.n + 1} = 0", f"  {rel} = 0"]
    if spec.is_split:
        lines.append(f"  ({format_split_product(spec.splitting)} = 0)")
    lines.append(f"basis: {len(mat)} monomials h^i ξ^j, i <= {spec.n}, j <= {spec.r - 1}")
    lines.append(f"pairing determinant: {det}")
    lines.append("segre: " + ", ".join(str(s) for s in segre))
    if args.reduce:
        nf = normal_form_classical(parse_poly(args.reduce, HX), spec)
        payload["reduced"] = nf.to_json()
        lines.append(f"{args.reduce} -> {nf.format()}")
    status = EXIT_OK if abs(det) == 1 else EXIT_FAILURE
    return payload, lines, status


def _quantum_relations(spec: BundleSpec, args):
    if spec.tangent:
        if args.template:
            return relations_template_general(spec), None
        return relations_tangent(spec.n), None
    hyp = classify_hypotheses(spec)
    if args.template:
        return relations_template_general(spec), None
    if hyp.split_range:
        return relations_split(spec), None
    if args.conjectural:
        return relations_conjectural(spec), hyp.failed_split_bound(spec)
    bound = hyp.failed_split_bound(spec)
    if not hyp.fano:
        raise HypothesisError(f"outside the proven split range ({bound} fails) and P(V) is "
                              f"not covered by the Fano template", bound)
    return relations_template_general(spec), bound


def cmd_quantum(args):
    spec = _spec(args)
    rel, failed = _quantum_relations(spec, args)
    payload = rel.to_json()
    lines = [f"{spec.label()} [{rel.provenance}]"] + [f"  {x}" for x in rel.format()]
    if failed:
        payload["failed_bound"] = failed
        if rel.provenance == "conjectural":
            tail = "relations are conjectural"
        elif rel.is_numeric:
            tail = f"relations determined by {rel.provenance}"
        else:
            tail = "undetermined coefficients are left as holes"
        lines.append(f"note: {failed} fails; {tail}")
    if args.reduce:
        if not rel.is_numeric:
            raise UsageError(f"cannot reduce: undetermined coefficients {', '.join(rel.holes())}")
        nf = q_normal_form(parse_poly(args.reduce), rel)
        payload["reduced"] = nf.to_json()
        lines.append(f"{args.reduce} -> {nf.format()}")
    return payload, lines, EXIT_OK


def cmd_gw(args):
    spec = _spec(args)
    if args.W is not None:
        value = gw_W(spec, args.W)
        q = w_query(spec, args.W)
        res = lookup(q)
        payload = res.to_json()
        payload["spec"] = spec.to_json()
        ins = ", ".join(format_terms([(e, 1)], ("h", "ξ")) for e in q.insertions)
        return payload, [f"W_{args.W} = Phi_{q.curve}({ins}) = {value}  [{res.provenance}]"], EXIT_OK
    if args.curve is not None or args.insert is not None:
        if args.curve is None or args.insert is None:
            raise UsageError("--curve and --insert go together")
        ab = _int_list(args.curve, "curve class")
        if len(ab) != 2:
            raise UsageError("--curve takes 'a,b'")
        try:
            results = [lookup(GwQuery(spec, CurveClass(*ab), _insertions(args.insert)))]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        results = catalog(spec)
    lines = []
    for res in results:
        ins = ", ".join(format_terms([(e, 1)], ("h", "ξ")) for e in res.query.insertions)
        value = "unknown" if res.value is None else str(res.value)
        lines.append(f"Phi_{res.query.curve}({ins}) = {value}  [{res.provenance}]")
    payload = {"spec": spec.to_json(), "invariants": [r.to_json() for r in results]}
    return payload, lines or ["no catalogued invariants"], EXIT_OK


def cmd_schubert(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n >= 1 is required")
    n = args.n
    ps = _int_list(args.sigma, "sigma list") if args.sigma else [2] * (2 * n - 2)
    if any(p < 1 for p in ps):
        raise UsageError("sigma indices must be >= 1")
    prod = IntPoly.const(SYM, 1)
    for p in ps:
        prod = prod * sigma_meet(p, n)
    value = integrate_g2(prod, n)
    payload = {"n": n, "sigma": ps, "value": str(value)}
    label = "·".join(f"σ_{p}" for p in ps) or "1"
    return payload, [f"∫_G(2,{n + 1}) {label} = {value}"], EXIT_OK


def cmd_check(args):
    spec = _spec(args)
    hyp = classify_hypotheses(spec)
    A2, cert = extremal_A2(spec)
    A1 = CurveClass.fiber_line()
    payload = {"spec": spec.to_json(), "hypotheses": hyp.to_json(),
               "extremal": {"A1": [A1.a, A1.b], "A2": [A2.a, A2.b], "A2_certificate": cert.value},
               "anticanonical_degree": {"A1": str(anticanonical_degree(spec, A1)),
                                        "A2": str(anticanonical_degree(spec, A2))}}
    lines = [spec.label()]
    flags = hyp.to_json()["flags"]
    for name, ok in flags.items():
        mark = "n/a" if ok is None else ("yes" if ok else "no")
        lines.append(f"  {name:<26} {mark:<4} {hyp.to_json()['inequalities'][name]}")
    lines.append(f"  fano template applies: {'yes' if hyp.fano else 'no'}")
    lines.append(f"  A1 = {A1}, -K(A1) = {anticanonical_degree(spec, A1)}")
    lines.append(f"  A2 = {A2}, -K(A2) = {anticanonical_degree(spec, A2)} [{cert.value}]")
    return payload, lines, EXIT_OK


def cmd_sweep(args):
    grid = tuple(_int_list(args.grid, "grid")) if args.grid else DEFAULT_GRID
    if len(grid) != 3:
        raise UsageError("--grid takes nmax,rmax,mmax")
    if not all(1 <= g <= cap for g, cap in zip(grid, MAX_GRID)) or grid[1] < 2:
        raise UsageError(f"grid {grid} outside 1..{MAX_GRID} (rmax >= 2)")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    report = run_sweep(grid, samples=args.samples, seed=args.seed)
    return report.to_json(), report.lines(), EXIT_OK if report.passed else EXIT_FAILURE


COMMANDS = {"ring": cmd_ring, "quantum": cmd_quantum, "gw": cmd_gw, "schubert": cmd_schubert,
            "check": cmd_check, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="projqc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help: str, spec: bool = True):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=("text", "json"), default="text")
        if spec:
            p.add_argument("--split", metavar="CSV", help="splitting degrees, e.g. 1,1,2")
            p.add_argument("--tangent", action="store_true", help="tangent bundle of P^n")
        p.add_argument("--n", type=int, help="base dimension")
        return p

    p = add("ring", "classical presentation, basis and pairing matrix")
    p.add_argument("--order", type=int, default=6, help="number of Segre classes")
    p.add_argument("--reduce", metavar="POLY", help="reduce a polynomial in h, xi")
    p = add("quantum", "quantum relations")
    p.add_argument("--conjectural", action="store_true",
                   help="product formula outside the proven range, marked conjectural")
    p.add_argument("--template", action="store_true", help="show the general template")
    p.add_argument("--reduce", metavar="POLY", help="quantum normal form of a polynomial in h, xi, q")
    p = add("gw", "Gromov-Witten invariants")
    p.add_argument("--W", type=int, metavar="I", help="the invariant W_I")
    p.add_argument("--curve", metavar="A,B", help="curve class a,b")
    p.add_argument("--insert", metavar="I,J;I,J;I,J", help="insertions h^i xi^j")
    p = add("schubert", "integrals of sigma classes on G(2, n+1)", spec=False)
    p.add_argument("--sigma", metavar="CSV", help="indices p of sigma_p (default 2 repeated 2n-2 times)")
    add("check", "hypothesis report")
    p = add("sweep", "acceptance grid", spec=False)
    p.add_argument("--grid", metavar="NMAX,RMAX,MMAX")
    p.add_argument("--samples", type=int, default=200, help="random polynomials per spec")
    p.add_argument("--seed", type=int, default=0)
    return parser


def render(payload, lines: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, lines, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"projqc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisError as exc:
        if args.format == "json":
            print(render({"status": "refused", "reason": str(exc), "bound": exc.bound}, [], "json"))
        else:
            print(f"refused: {exc}")
        return EXIT_REFUSED
    except ValueError as exc:
        print(f"projqc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(render(payload, lines, args.format))
    return status
