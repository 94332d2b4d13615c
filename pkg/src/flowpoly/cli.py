"""Command-line interface.

Machine output is JSON on stdout; errors are JSON objects on stderr.
Exit codes: 0 success, 1 verification failure, 2 usage error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import ctseries, formulas, refine
from .digraph import Multigraph, build_complete, build_Gpq, build_kabc, build_kabc_S
from .dkk import Framing, default_framing, max_cliques, omega, theta_bijection
from .errors import FlowpolyError, InvariantViolation
from .flows import enumerate_flows, ehrhart_volume, kpf
from .verify import SUITES, failures, jsonable, parse_grid, run_suite
from .volumes import lidskii_volume, volume_via_kpf, volume_via_subdivision

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_graph(spec: str) -> Multigraph:
    """Builder spec: kabc:n,a,b,c | kabcS:n,a,b,c,S=1|3 | gpq:p,q | complete:n | @file.json"""
    try:
        if spec.startswith("@"):
            return Multigraph.from_json(Path(spec[1:]).read_text())
        kind, _, rest = spec.partition(":")
        if kind == "kabc":
            n, a, b, c = (int(x) for x in rest.split(","))
            return build_kabc(n, a, b, c)
        if kind == "kabcS":
            parts = rest.split(",")
            n, a, b, c = (int(x) for x in parts[:4])
            S: list[int] = []
            for extra in parts[4:]:
                key, _, val = extra.partition("=")
                if key != "S":
                    raise UsageError(f"unknown graph option {key!r}")
                S = [int(x) for x in val.split("|") if x]
            return build_kabc_S(n, a, b, c, S)
        if kind == "gpq":
            p, q = (int(x) for x in rest.split(","))
            return build_Gpq(p, q)
        if kind == "complete":
            return build_complete(int(rest))
    except (ValueError, OSError) as exc:
        if isinstance(exc, FlowpolyError):
            raise
        raise UsageError(f"bad graph spec {spec!r}: {exc}") from exc
    raise UsageError(f"unknown graph spec {spec!r}")


def parse_netflow(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad net flow {text!r}") from exc


def _load_framing(path: Optional[str], G: Multigraph) -> Framing:
    if not path:
        return default_framing(G)
    fr = Framing.from_json(json.loads(Path(path).read_text()))
    fr.validate(G)
    return fr


def _emit(value, pretty_label: Optional[str], pretty: bool) -> None:
    if pretty and pretty_label is not None:
        print(f"{pretty_label} = {jsonable(value)}")
    else:
        print(json.dumps(jsonable(value)))


def _cmd_kpf(args) -> int:
    G = parse_graph(args.graph)
    a = parse_netflow(args.netflow)
    if args.list:
        flows = enumerate_flows(G, a)
        print(json.dumps({"count": len(flows), "edges": [list(e) for e in G.edges],
                          "flows": [list(f) for f in flows]}))
    else:
        _emit(kpf(G, a), "K", args.pretty)
    return EXIT_OK


def _cmd_volume(args) -> int:
    G = parse_graph(args.graph)
    unit = (1,) + (0,) * G.n + (-1,)
    a = parse_netflow(args.netflow) if args.netflow else unit
    method = args.method
    if method != "ehrhart" and method != "lidskii" and a != unit:
        raise UsageError(f"method {method} only computes the unit net flow volume")
    if method == "kpf":
        v = volume_via_kpf(G)
    elif method == "subdivision":
        v = volume_via_subdivision(G)
    elif method == "ehrhart":
        v = ehrhart_volume(G, a)
    elif method == "lidskii":
        v = lidskii_volume(G, a)
    else:
        v = len(max_cliques(G, _load_framing(args.framing, G)))
    _emit(v, "vol", args.pretty)
    return EXIT_OK


def _value(args) -> Fraction:
    n, a, b, c = args.n, args.a, args.b, args.c
    method = args.method
    what = args.command
    k = args.k
    if what != "morris" and k is None:
        raise UsageError(f"{what} needs --k")
    if method.startswith("special:"):
        case = method.split(":", 1)[1]
        if what == "morris":
            return formulas.morris_special(case, n, a, b, c)
        if what == "psi":
            return formulas.psi_special(case, n, k, a, b, c)
        raise UsageError("phi has no special cases")
    table = {
        ("morris", "formula"): lambda: formulas.morris(n, a, b, c),
        ("morris", "kpf"): lambda: refine.morris_via_kpf(n, a, b, c),
        ("morris", "ct"): lambda: ctseries.ct_morris(n, a, b, c),
        ("psi", "formula"): lambda: formulas.psi_product(n, k, a, b, c),
        ("psi", "kpf"): lambda: refine.psi_via_kpf(n, k, a, b, c),
        ("psi", "volumes"): lambda: refine.psi_via_volumes(n, k, a, b, c),
        ("psi", "ct"): lambda: ctseries.ct_psi(n, k, a, b, c),
        ("phi", "formula"): lambda: formulas.phi_scaled(n, k, a, b, c),
        ("phi", "kpf"): lambda: refine.phi_via_kpf(n, k, a, b, c),
        ("phi", "ct"): lambda: ctseries.ct_phi(n, k, a, b, c),
    }
    try:
        fn = table[(what, method)]
    except KeyError:
        raise UsageError(f"method {method!r} is not available for {what}") from None
    return Fraction(fn())


def _cmd_value(args) -> int:
    v = _value(args)
    label = args.command + (f"_{args.n}({args.k},{args.a},{args.b},{args.c})" if args.k is not None
                            else f"_{args.n}({args.a},{args.b},{args.c})")
    _emit(v, label, args.pretty)
    return EXIT_OK


def _cmd_verify(args) -> int:
    grid = parse_grid(args.grid)
    report = run_suite(args.suite, grid)
    bad = failures(report)
    if args.pretty:
        for e in report:
            print(f"{'PASS' if e['pass'] else 'FAIL'} {e['relation']} {jsonable(e['params'])}")
        print(f"{len(report) - len(bad)}/{len(report)} passed")
    else:
        print(json.dumps(jsonable(report)))
    return EXIT_FAIL if bad else EXIT_OK


def _cmd_triangulate(args) -> int:
    G = parse_graph(args.graph)
    fr = _load_framing(args.framing, G)
    cliques = max_cliques(G, fr)
    print(json.dumps({
        "edges": [list(e) for e in G.edges],
        "framing": fr.to_json(),
        "cliques": [{"routes": [list(r) for r in C], "flow": list(omega(G, C))} for C in cliques],
    }))
    return EXIT_OK


def _cmd_bijection(args) -> int:
    G = parse_graph(args.graph)
    fr = _load_framing(args.framing, G)
    pairs = theta_bijection(G, fr)
    print(json.dumps([{"flow": list(f), "image": list(g)} for f, g in pairs]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flowpoly", description="Flow polytopes, Kostant partition functions and Morris-type constant terms.")
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("kpf", parents=[common], help="count integer flows")
    p.add_argument("--graph", required=True)
    p.add_argument("--netflow", required=True, help="comma-separated, one entry per vertex")
    p.add_argument("--list", action="store_true", help="also list the flows")
    p.set_defaults(func=_cmd_kpf)

    p = sub.add_parser("volume", parents=[common], help="normalized volume of a flow polytope")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", default="kpf", choices=["kpf", "subdivision", "ehrhart", "lidskii", "dkk"])
    p.add_argument("--netflow", help="net flow for ehrhart/lidskii (default unit flow)")
    p.add_argument("--framing", help="framing JSON file for the dkk method")
    p.set_defaults(func=_cmd_volume)

    for name in ("morris", "psi", "phi"):
        p = sub.add_parser(name, parents=[common], help=f"evaluate {name}")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--c", type=int, required=True)
        p.add_argument("--k", type=int)
        p.add_argument("--method", default="formula",
                       help="formula | kpf | volumes | ct | special:<case>")
        p.set_defaults(func=_cmd_value)

    p = sub.add_parser("verify", parents=[common], help="run an identity suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--grid", help="bounds such as n<=2,a<=2,b<=2,c<=1")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("triangulate", help="maximal cliques of a framed graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--framing")
    p.set_defaults(func=_cmd_triangulate)

    p = sub.add_parser("bijection", help="flow bijections")
    p.add_argument("kind", choices=["theta"])
    p.add_argument("--graph", required=True)
    p.add_argument("--framing")
    p.set_defaults(func=_cmd_bijection)
    return parser


def _error(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _error("usage", str(exc), EXIT_USAGE)
    except InvariantViolation as exc:
        return _error("invariant", str(exc), EXIT_INVARIANT)
    except (FlowpolyError, ValueError, OSError, json.JSONDecodeError) as exc:
        return _error("input", str(exc), EXIT_USAGE)


def main() -> None:
    sys.exit(run())
