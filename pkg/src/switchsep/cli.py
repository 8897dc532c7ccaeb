"""Command-line front end.  Every invocation prints one JSON report per input.

Exit status: 0 ok, 1 counterexample found, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .boolean import (
    ExtendedBooleanFunction,
    Gf2Polynomial,
    ebf_from_polynomial,
    ebf_is_separable,
    graph_to_polynomial,
    quadratic_form,
)
from .constructions import CirculantSpec, circulant_gn, verify_gn
from .enumeration import search_conjecture, verify_theorem1
from .graph import switch
from .graph6 import decode, encode
from .quasigroup import QuasigroupTable, ScaleError, is_reducible, kappa, q_lambda
from .separability import is_isolable, is_separable, isolating_switching

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_ERROR = 0, 1, 2
_STATUS_CODE = {"ok": EXIT_OK, "counterexample": EXIT_COUNTEREXAMPLE, "error": EXIT_ERROR}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}")


def _load_table(path: str, stdin) -> QuasigroupTable:
    try:
        text = stdin.read() if path == "-" else Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read table {path}: {exc}") from None
    # accept the report printed by `qg from-bool` as well as a bare table
    if isinstance(data, dict) and "payload" in data:
        data = data["payload"]
    return QuasigroupTable.from_json(data)


def cmd_check_one(text: str) -> tuple[str, dict]:
    g = decode(text)
    wit = is_separable(g)
    payload = {"graph6": encode(g), "order": g.order, "separable": wit is not None}
    if wit is not None:
        payload["witness"] = wit.to_json()
    return "ok", payload


def cmd_isolable(args) -> tuple[str, dict]:
    g = decode(args.graph6)
    ok = is_isolable(g, args.set)
    payload = {"set": sorted(set(args.set)), "isolable": ok}
    if ok:
        payload["switching_set"] = sorted(isolating_switching(g, args.set))
    return "ok", payload


def cmd_switch(args) -> tuple[str, dict]:
    g = decode(args.graph6)
    return "ok", {"set": sorted(set(args.set)), "graph6": encode(switch(g, args.set))}


def cmd_gen(args) -> tuple[str, dict]:
    spec = CirculantSpec.for_order(args.n)
    return "ok", {"n": spec.n, "m": spec.m, "width": spec.width, "graph6": encode(circulant_gn(args.n))}


def cmd_verify_gn(args) -> tuple[str, dict]:
    report = verify_gn(args.n)
    return ("ok" if report.ok else "counterexample"), report.to_json()


def _search_status(report) -> tuple[str, dict, dict]:
    payload = report.to_json()
    # run-dependent fields go to the timing block so --jobs never alters the payload
    extra = {"wall_time": payload.pop("wall_time"), "worker_count": payload.pop("worker_count")}
    return ("counterexample" if report.counterexample_counters else "ok"), payload, extra


def cmd_theorem1(args) -> tuple[str, dict, dict]:
    return _search_status(verify_theorem1(args.order, jobs=args.jobs, checkpoint=args.resume))


def cmd_conjecture(args) -> tuple[str, dict, dict]:
    if args.order % 2:
        raise ValueError(
            f"odd order {args.order} is rejected; `gen gn {args.order}` gives a graph "
            "that is non-separable with every one-vertex deletion separable"
        )
    return _search_status(search_conjecture(args.order, jobs=args.jobs, checkpoint=args.resume))


def cmd_bool_from_graph(args) -> tuple[str, dict]:
    g = decode(args.graph6)
    linear = Gf2Polynomial.parse(args.linear, g.order) if args.linear else None
    p = graph_to_polynomial(g, linear)
    f = ebf_from_polynomial(p)
    payload = {
        "arity": g.order,
        "polynomial": str(p),
        "table": f.to_hex(),
        "q": str(quadratic_form(f)[1]),
    }
    if g.order >= 4:
        split = ebf_is_separable(f)
        payload["separable"] = split is not None
        payload["bipartition"] = None if split is None else [list(split[0]), list(split[1])]
    return "ok", payload


def cmd_bool_separable(args) -> tuple[str, dict]:
    f = ExtendedBooleanFunction.from_hex(args.table, args.arity)
    split = ebf_is_separable(f)
    quadratic, q = quadratic_form(f)
    return "ok", {
        "arity": f.arity,
        "table": f.to_hex(),
        "quadratic": quadratic,
        "q": str(q),
        "separable": split is not None,
        "bipartition": None if split is None else [list(split[0]), list(split[1])],
    }


def cmd_qg_from_bool(args) -> tuple[str, dict]:
    return "ok", q_lambda(ExtendedBooleanFunction.from_hex(args.table, args.arity)).to_json()


def cmd_qg_reducible(args) -> tuple[str, dict]:
    dec = is_reducible(_load_table(args.table, args.stdin))
    if dec is None:
        return "ok", {"reducible": False}
    return "ok", {
        "reducible": True,
        "block": list(dec.block),
        "rest": list(dec.rest),
        "inner": dec.inner.to_json(),
        "outer": dec.outer.to_json(),
    }


def cmd_qg_kappa(args) -> tuple[str, dict]:
    qg = _load_table(args.table, args.stdin)
    return "ok", {"order": qg.order, "arity": qg.arity, "kappa": kappa(qg)}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="switchsep", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="decide separability of graph6 input ('-' reads stdin lines)")
    c.add_argument("graph6")
    c.set_defaults(func=None)

    for name, func in (("isolable", cmd_isolable), ("switch", cmd_switch)):
        c = sub.add_parser(name)
        c.add_argument("graph6")
        c.add_argument("--set", type=_vertex_list, required=True)
        c.set_defaults(func=func)

    gen = sub.add_parser("gen").add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = gen.add_parser("gn")
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify").add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = ver.add_parser("gn")
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_verify_gn)
    c = ver.add_parser("theorem1")
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--jobs", type=int)
    c.add_argument("--resume", metavar="FILE")
    c.set_defaults(func=cmd_theorem1)

    srch = sub.add_parser("search").add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = srch.add_parser("conjecture")
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--jobs", type=int)
    c.add_argument("--resume", metavar="FILE")
    c.set_defaults(func=cmd_conjecture)

    bl = sub.add_parser("bool").add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = bl.add_parser("from-graph")
    c.add_argument("graph6")
    c.add_argument("--linear", help="linear part, e.g. 'x0 + x2 + 1'")
    c.set_defaults(func=cmd_bool_from_graph)
    c = bl.add_parser("separable")
    c.add_argument("table", help="hex table, low index = least significant bit")
    c.add_argument("--arity", type=int, required=True)
    c.set_defaults(func=cmd_bool_separable)

    qg = sub.add_parser("qg").add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = qg.add_parser("from-bool")
    c.add_argument("table")
    c.add_argument("--arity", type=int, required=True, help="arity of the Boolean function")
    c.set_defaults(func=cmd_qg_from_bool)
    for name, func in (("reducible", cmd_qg_reducible), ("kappa", cmd_qg_kappa)):
        c = qg.add_parser(name)
        c.add_argument("table", help="JSON file {order, arity, values}, or '-'")
        c.set_defaults(func=func)
    return p


def _emit(argv, status, payload, elapsed, out, extra=None) -> int:
    report = {
        "command": argv,
        "status": status,
        "payload": payload,
        "version": __version__,
        "timing": {"elapsed_seconds": round(elapsed, 6), **(extra or {})},
    }
    out.write(json.dumps(report, sort_keys=True) + "\n")
    return _STATUS_CODE[status]


def run(argv: list[str] | None = None, stdin=None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _emit(argv, "error", {"error": f"usage: {exc}"}, time.perf_counter() - t0, stdout)

    args.stdin = stdin
    if args.command == "check":
        lines = [args.graph6] if args.graph6 != "-" else [l for l in stdin if l.strip()]
        code = EXIT_OK
        for line in lines:
            t0 = time.perf_counter()
            try:
                status, payload = cmd_check_one(line)
            except ValueError as exc:
                status, payload = "error", {"error": str(exc), "input": line.strip()}
            code = max(code, _emit(argv, status, payload, time.perf_counter() - t0, stdout))
        return code

    extra = None
    try:
        status, payload, *rest = args.func(args)
        if rest:
            extra = rest[0]
    except (ValueError, ScaleError) as exc:
        status, payload = "error", {"error": str(exc)}
    return _emit(argv, status, payload, time.perf_counter() - t0, stdout, extra)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
