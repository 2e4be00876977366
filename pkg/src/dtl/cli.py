"""Command line entry point: ``dtl <command> [options]``.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 size guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from math import comb, factorial
from typing import List, Optional

from .algebra import Algebra, AlgebraError, AlgElem, trace
from .axioms import check_axioms, check_basic_construction, check_coherence
from .branching import BranchingError, label_text, label_to_json, parse_vertex
from .cellbasis import CellError, build_path_cellular_basis, verify_cell_net
from .diagram import DiagramError, DiagramParseError, parse_diagram
from .tower import TOWER_FAMILIES, TowerError, TowerSpec

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

# largest algebra dimension each command may touch without --allow-large
GUARDS = {"enumerate": 200_000, "multiply": 200_000, "trace": 200_000,
          "axioms": 1000, "cellbasis": 250, "basic": 1000, "coherence": 1000,
          "branching": 40}

SUITES = ("axioms", "cellbasis", "basic", "coherence")


class InputError(Exception):
    pass


class GuardError(Exception):
    pass


# ---------------------------------------------------------------------------
# dimensions without enumeration

def _bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def dim_estimate(spec: TowerSpec, level: int) -> int:
    """Exact dimension of A_level, or an upper bound for contour towers."""
    f = spec.family
    if f == "brauer":
        out = 1
        for k in range(1, 2 * level, 2):
            out *= k
        return out
    if f == "tl":
        return comb(2 * level, level) // (level + 1)
    if f == "partition":
        return _bell(level)
    if f == "walled":
        return factorial(level + spec.t)
    return (comb(2 * level, level) // (level + 1)) * spec.m ** level


def guard_allows(args) -> bool:
    env = os.environ.get("DTL_GUARD_OVERRIDE", "").strip().lower()
    return args.allow_large or env not in ("", "0", "false", "no")


def check_guard(args, what: str, size: int):
    if size > GUARDS[what] and not guard_allows(args):
        raise GuardError(f"{what}: size {size} exceeds the guard {GUARDS[what]} "
                         "(use --allow-large or DTL_GUARD_OVERRIDE=1)")


# ---------------------------------------------------------------------------
# argument helpers

def tower_of(args) -> TowerSpec:
    try:
        return TowerSpec(args.family, t=args.t, m=args.m, d=args.d)
    except TowerError as exc:
        raise InputError(str(exc))


def algebra_of(args) -> Algebra:
    """brauer/tl/contour: rank n; partition: tower level n (A_n);
    walled: B_{r,s} from --r/--s, else tower level n with --t."""
    f = args.family
    if args.n is None and not (f == "walled" and args.r is not None):
        raise InputError("--n is required")
    try:
        if f == "walled" and args.r is not None:
            s = args.s if args.s is not None else args.r + args.t
            return Algebra("walled", args.r, s)
        spec = tower_of(args)
        check_guard(args, args.command, dim_estimate(spec, args.n))
        return spec.algebra(args.n)
    except (AlgebraError, TowerError, ValueError) as exc:
        raise InputError(str(exc))


def parse_element(alg: Algebra, token: str) -> AlgElem:
    t = token.strip()
    try:
        if t[:1] in "[{":
            x = parse_diagram(t, alg.family, alg.n, getattr(alg, "m", 2))
            if not alg.contains_diagram(x):
                raise InputError(f"{t!r} is not a basis diagram of {alg.name}")
            return alg.elem(x)
        return alg.named(t)
    except DiagramParseError as exc:
        raise InputError(f"cannot parse {t!r}: {exc.args[0]}")
    except (AlgebraError, DiagramError) as exc:
        raise InputError(f"cannot parse {t!r} at position 0: {exc}")


def element_text(a: AlgElem) -> str:
    """Text form that prefers generator names for single diagrams."""
    names = {x: name for name, x in a.alg.generators()}
    names[a.alg.identity_diagram()] = "id"
    if not a.terms:
        return "0"
    parts = []
    for x, c in a.sorted_terms():
        body = names.get(x, x.text())
        parts.append(body if c == 1 else f"({c})*{body}")
    return " + ".join(parts)


def emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# commands

def cmd_enumerate(args) -> int:
    alg = algebra_of(args)
    basis = alg.basis()
    if args.format == "json":
        emit(args, _dump({"algebra": alg.name, "dim": len(basis),
                          "diagrams": [x.text() for x in basis]}))
    else:
        emit(args, "\n".join([f"# {alg.name}: {len(basis)} diagrams"] + [x.text() for x in basis]))
    return EXIT_OK


def cmd_multiply(args) -> int:
    alg = algebra_of(args)
    if not args.elements:
        raise InputError("multiply needs at least one element")
    out = alg.one()
    for tok in args.elements:
        out = out * parse_element(alg, tok)
    if args.format == "json":
        emit(args, _dump({"algebra": alg.name, "product": out.serialize()}))
    else:
        emit(args, element_text(out))
    return EXIT_OK


def cmd_trace(args) -> int:
    alg = algebra_of(args)
    if len(args.elements) != 1:
        raise InputError("trace takes exactly one element")
    a = parse_element(alg, args.elements[0])
    value = trace(a)
    if args.format == "json":
        emit(args, _dump({"algebra": alg.name, "element": a.serialize(), "trace": str(value)}))
    else:
        emit(args, str(value))
    return EXIT_OK


def cmd_branching(args) -> int:
    spec = tower_of(args)
    levels = args.levels if args.levels is not None else args.n
    if levels is None:
        raise InputError("--levels is required")
    check_guard(args, "branching", levels)
    try:
        bd = spec.branching(levels)
    except BranchingError as exc:
        raise InputError(str(exc))
    rows = [spec.labels(k) for k in range(levels + 1)]
    if args.format == "json":
        data = bd.to_json()
        data["tower_levels"] = [[label_to_json(x) for x in r] for r in rows]
        emit(args, _dump(data))
    else:
        lines = []
        for k, r in enumerate(rows):
            cells = ", ".join(f"{label_text(x)}[{spec.count_paths(k, x)}]" for x in r)
            lines.append(f"level {k}: {cells}")
        emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_paths(args) -> int:
    spec = tower_of(args)
    if not args.vertex:
        raise InputError("--vertex is required")
    try:
        label, level = parse_vertex(args.vertex)
    except BranchingError as exc:
        raise InputError(str(exc))
    check_guard(args, "branching", level)
    if label not in spec.labels(level):
        raise InputError(f"{args.vertex!r} is not a vertex of the {spec.family} diagram")
    paths = spec.paths(level, label)
    if args.format == "json":
        emit(args, _dump({"vertex": [label_to_json(label), level], "count": len(paths),
                          "paths": [[label_to_json(x) for x in p] for p in paths]}))
    else:
        lines = [f"# {len(paths)} paths to {label_text(label)}@{level}"]
        lines += [" -> ".join(label_text(x) for x in p) for p in paths]
        emit(args, "\n".join(lines))
    return EXIT_OK


# verify ----------------------------------------------------------------------

def _run_task(task):
    """Worker for one verification task; returns a JSON-ready dict."""
    suite, spec_kw, level = task
    spec = TowerSpec(**spec_kw)
    t0 = time.perf_counter()
    if suite == "axioms":
        rep = check_axioms(spec, level)
        out = rep.to_json()
        out["status"] = "pass" if rep.passed else "fail"
        fail = rep.first_failure()
        if fail:
            out["first_failure"] = fail.to_json()
    elif suite == "cellbasis":
        try:
            datum = build_path_cellular_basis(spec, level)
            out = datum.verify()
            net = verify_cell_net(datum)
            out["cell_net"] = net
            out["status"] = net["status"]
        except CellError as exc:
            out = {"status": "fail", "reason": exc.args[0], "witness": repr(exc.witness)}
    elif suite == "basic":
        out = check_basic_construction(spec, level)
    else:
        out = check_coherence(spec, level)
    out.update({"suite": suite, "level": level,
                "seconds": round(time.perf_counter() - t0, 4)})
    return out


def _tasks(args, spec: TowerSpec, suites, levels: int):
    kw = {"family": spec.family, "t": spec.t, "m": spec.m, "d": spec.d}
    out = []
    for suite in suites:
        if suite == "axioms":
            check_guard(args, suite, dim_estimate(spec, levels + 1))
            out.append((suite, kw, levels))
            continue
        if spec.family == "contour":
            continue   # cell modules are not built for contour towers
        lo = 1 if suite == "basic" else 0
        for n in range(lo, levels + 1):
            top = n if suite == "cellbasis" else n + 1
            check_guard(args, suite, dim_estimate(spec, top))
            out.append((suite, kw, n))
    return out


def cmd_verify(args) -> int:
    spec = tower_of(args)
    levels = args.levels if args.levels is not None else args.n
    if levels is None or levels < 0:
        raise InputError("--levels must be a non-negative integer")
    suites = SUITES if args.suite == "all" else (args.suite,)
    tasks = _tasks(args, spec, suites, levels)
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    ok = all(r["status"] == "pass" for r in results)
    report = {"tower": spec.describe(), "levels": levels, "suite": args.suite,
              "status": "pass" if ok else "fail", "results": results}
    if args.format == "json":
        emit(args, _dump(report))
    else:
        emit(args, _verify_text(report))
    return EXIT_OK if ok else EXIT_FAIL


def _verify_text(report) -> str:
    desc = report["tower"]
    head = desc["family"] + "".join(f" {k}={v}" for k, v in desc.items()
                                    if k not in ("family", "note"))
    lines = [f"tower {head}, levels <= {report['levels']}"]
    if "note" in desc:
        lines.append(f"note: {desc['note']}")
    for r in report["results"]:
        tag = "PASS" if r["status"] == "pass" else "FAIL"
        if r["suite"] == "axioms":
            for a in r["axioms"]:
                mark = "PASS" if a["status"] == "pass" else "FAIL"
                extra = f"  {a['witness']}" if a.get("witness") else ""
                lines.append(f"[{mark}] axiom {a['id']} at level {a['level']}{extra}")
        else:
            why = ""
            if r["status"] != "pass":
                why = "  " + str(r.get("reason") or r.get("cell_net", {}).get("reason") or "")
            lines.append(f"[{tag}] {r['suite']} at level {r['level']} ({r['seconds']}s){why}")
    lines.append(f"overall: {report['status'].upper()}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=TOWER_FAMILIES, required=True)
    common.add_argument("--n", type=int)
    common.add_argument("--levels", type=int)
    common.add_argument("--t", type=int, default=0, help="walled tower offset")
    common.add_argument("--r", type=int, help="walled: strands left of the wall")
    common.add_argument("--s", type=int, help="walled: strands right of the wall")
    common.add_argument("--m", type=int, default=2, help="contour label group Z_m")
    common.add_argument("--d", type=int, default=1, help="contour depth bound")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--allow-large", action="store_true",
                        help="lift the size guards (same as DTL_GUARD_OVERRIDE=1)")

    p = argparse.ArgumentParser(prog="dtl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="list the diagram basis")
    for name, hlp in (("multiply", "multiply elements left to right"),
                      ("trace", "normalized trace of an element")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("elements", nargs="*",
                        help="generator names (e1, s2, p3, a1:1, id) or diagram text")
    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sub.add_parser("branching", parents=[common], help="print the branching diagram")
    sp = sub.add_parser("paths", parents=[common], help="list paths to a vertex")
    sp.add_argument("--vertex", help="label@level, e.g. '(2,1)@3' or '0@2'")
    return p


COMMANDS = {"enumerate": cmd_enumerate, "multiply": cmd_multiply, "trace": cmd_trace,
            "verify": cmd_verify, "branching": cmd_branching, "paths": cmd_paths}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
