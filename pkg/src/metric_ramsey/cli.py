"""Command-line front end.

Every command reads JSON (files or ``-`` for standard input), runs one
library operation and prints a report.  Reports are deterministic: the
same inputs and flags give byte-identical output.  Wall time is only
included with ``--timing``.

Exit codes: 0 success, 1 semantic input error, 2 parse error,
3 instance too large for exhaustive search.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .linf_embeddings import intertwine_count, unbounded_colour_witness
from .lipschitz_order import isometric, leq
from .oscillation import GENERATOR, NetColouring, run_oscillation
from .pumpkin import pp_colour, pumpkin_dist, pumpkin_valid
from .ramsey_harness import (
    DEFAULT_MAX_COLOURINGS,
    GuardExceeded,
    enumerate_rigid_surjections,
    hj_line_check,
    min_colours_over_subcopies,
    stirling2,
)
from .serialization import (
    ParseError,
    embedding_to_json,
    parse_copy_system,
    parse_metric,
    parse_pumpkin,
    parse_rat,
    parse_tuple,
    parse_vector,
    pumpkin_to_json,
    rat,
    rat_report,
    vector_to_json,
)

EXIT_OK, EXIT_SEMANTIC, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3


class _Inputs:
    """Reads inputs once and keeps a digest of everything read."""

    def __init__(self):
        self.digest = hashlib.sha256()

    def load(self, path: str) -> Any:
        if path == "-":
            raw = sys.stdin.buffer.read()
        else:
            try:
                with open(path, "rb") as fh:
                    raw = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read {path}: {exc.strerror}") from None
        self.digest.update(len(raw).to_bytes(8, "big"))
        self.digest.update(raw)
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ParseError(f"{path}: invalid JSON ({exc})") from None


def _pumpkin_or_tuple(doc: Any):
    if isinstance(doc, dict) and "entries" in doc:
        return pp_colour(parse_tuple(doc))
    return parse_pumpkin(doc)


def cmd_pp(args, inputs: _Inputs) -> dict:
    x = parse_tuple(inputs.load(args.tuple))
    P = pp_colour(x)
    diag = pumpkin_valid(P)
    return {"pumpkin": pumpkin_to_json(P), "diagnosis": {"status": diag.status, "reason": diag.reason}}


def cmd_dist(args, inputs: _Inputs) -> dict:
    P = _pumpkin_or_tuple(inputs.load(args.first))
    Q = _pumpkin_or_tuple(inputs.load(args.second))
    value = pumpkin_dist(P, Q, args.eps)
    return {"distance": rat_report(value), "upper_bound": rat_report(value + args.eps)}


def cmd_order(args, inputs: _Inputs) -> dict:
    K = parse_metric(inputs.load(args.smaller), "K")
    L = parse_metric(inputs.load(args.larger), "L")
    w = leq(K, L)
    return {
        "leq": w is not None,
        "witness": "none" if w is None else list(w.table),
        "isometric": isometric(K, L),
    }


def _parse_net_colouring(doc: Any) -> NetColouring:
    if not isinstance(doc, dict) or any(k not in doc for k in ("net", "target", "table")):
        raise ParseError("colouring: expected an object with keys net, target, table")
    if not isinstance(doc["net"], list) or not isinstance(doc["table"], list):
        raise ParseError("colouring: net and table must be lists")
    net = [parse_tuple(t) for t in doc["net"]]
    target = parse_metric(doc["target"], "target")
    table = []
    for i, c in enumerate(doc["table"]):
        if isinstance(c, bool) or not isinstance(c, int):
            raise ParseError(f"table[{i}]: expected an integer")
        table.append(c)
    return NetColouring.build(net, target, table)


def cmd_oscillation(args, inputs: _Inputs) -> dict:
    nc = _parse_net_colouring(inputs.load(args.colouring))
    res = run_oscillation(nc, args.count, args.seed)
    return {
        "count": args.count,
        "net_size": len(nc.net),
        "initial_diameter": rat_report(res.initial_diameter),
        "min_diameter": rat_report(res.min_diameter),
        "within_two_eps": res.min_diameter <= 2 * args.eps,
        "best_sample": res.best_sample,
        "best_embedding": None if res.best_embedding is None else embedding_to_json(res.best_embedding),
        "diameters": [rat(v) for v in res.diameters],
    }


def cmd_ramsey(args, inputs: _Inputs) -> dict:
    system, k = parse_copy_system(inputs.load(args.system))
    t = min_colours_over_subcopies(system, k, max_colourings=args.max_colourings)
    return {"k": k, "objects": len(system.objects), "subcopies": len(system.subcopies), "min_colours": t}


def cmd_hj(args, inputs: _Inputs) -> dict:
    ok = hj_line_check(args.a, args.k, args.n, max_colourings=args.max_colourings)
    return {"a": args.a, "k": args.k, "n": args.n, "every_colouring_has_mono_line": ok}


def cmd_rigid(args, inputs: _Inputs) -> dict:
    if not 1 <= args.n <= args.m:
        raise ValueError(f"need 1 <= n <= m, got m={args.m}, n={args.n}")
    expected = stirling2(args.m, args.n)
    if expected > args.max_colourings:
        raise GuardExceeded(f"instance too large: {expected} surjections exceed the guard {args.max_colourings}")
    tables = ["".join(map(str, s.table)) if args.n <= 10 else list(s.table)
              for s in enumerate_rigid_surjections(args.m, args.n)]
    return {"m": args.m, "n": args.n, "count": len(tables), "tables": tables}


def cmd_intertwine(args, inputs: _Inputs) -> dict:
    doc = inputs.load(args.vectors)
    if isinstance(doc, dict) and "blocks" in doc:
        if not isinstance(doc["blocks"], list):
            raise ParseError("blocks must be a list")
        blocks = [parse_vector(b, f"blocks[{i}]") for i, b in enumerate(doc["blocks"])]
        N = doc.get("N")
        if isinstance(N, bool) or not isinstance(N, int):
            raise ParseError("N must be an integer")
        pairs = unbounded_colour_witness(blocks, N)
        return {"pairs": [{"x": vector_to_json(x), "y": vector_to_json(y), "count": intertwine_count(x, y)}
                          for x, y in pairs]}
    if not isinstance(doc, dict) or "x" not in doc or "y" not in doc:
        raise ParseError("expected either {x, y} or {blocks, N}")
    x, y = parse_vector(doc["x"], "x"), parse_vector(doc["y"], "y")
    return {"count": intertwine_count(x, y)}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps", default="1/1000", help="approximation tolerance (rational, default 1/1000)")
    p.add_argument("--seed", type=int, default=0, help="seed of the random stream (default 0)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--max-colourings", type=int, default=DEFAULT_MAX_COLOURINGS,
                   help="guard on the size of exhaustive searches")
    p.add_argument("--out", default="-", help="output file (default: standard output)")
    p.add_argument("--timing", action="store_true", help="add wall time to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metric-ramsey", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        _add_common(p)
        return p

    add("pp", cmd_pp, "pumpkin of a sphere tuple").add_argument("tuple")
    p = add("dist", cmd_dist, "distance between two pumpkins (or tuples)")
    p.add_argument("first")
    p.add_argument("second")
    p = add("order", cmd_order, "is K <= L ? (1-Lipschitz surjection L -> K)")
    p.add_argument("smaller", metavar="K")
    p.add_argument("larger", metavar="L")
    p = add("oscillation", cmd_oscillation, "oscillation experiment on a net colouring")
    p.add_argument("colouring")
    p.add_argument("--count", type=int, default=50, help="number of sampled embeddings")
    add("ramsey", cmd_ramsey, "min colours over subcopies of a copy system").add_argument("system")
    p = add("hj", cmd_hj, "monochromatic combinatorial line check")
    for name in ("a", "k", "n"):
        p.add_argument(name, type=int)
    p = add("rigid", cmd_rigid, "list rigid surjections [m] -> [n]")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    add("intertwine", cmd_intertwine, "intertwining count or witness pairs").add_argument("vectors")
    return parser


def _flatten(prefix: str, value: Any, out: list) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, (list, tuple)):
        out.append((prefix, json.dumps(value, sort_keys=True, separators=(",", ":"))))
    elif isinstance(value, str):
        out.append((prefix, value))
    else:
        out.append((prefix, json.dumps(value)))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows: list = []
    _flatten("", report, rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))
    w.writerows(rows)
    return buf.getvalue()


def _arguments_echo(args) -> dict:
    skip = {"func", "out", "format", "timing"}
    echo = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        echo[k] = rat(v) if isinstance(v, Fraction) else v
    return echo


@dataclass(frozen=True)
class Outcome:
    code: int
    text: str = ""
    error: str = ""
    out: str = "-"


def run(argv: list[str] | None = None) -> Outcome:
    """Run the CLI without touching stdout; the caller decides where text goes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return Outcome(int(exc.code or 0))
    try:
        args.eps = parse_rat(args.eps, "--eps")
    except ParseError as exc:
        return Outcome(EXIT_PARSE, error=f"error: {exc}\n")
    if args.eps <= 0:
        return Outcome(EXIT_SEMANTIC, error="error: --eps must be positive\n")
    inputs = _Inputs()
    start = time.perf_counter()
    try:
        result = args.func(args, inputs)
    except ParseError as exc:
        return Outcome(EXIT_PARSE, error=f"parse error: {exc}\n")
    except GuardExceeded as exc:
        return Outcome(EXIT_GUARD, error=f"guard: {exc}\n")
    except ValueError as exc:
        return Outcome(EXIT_SEMANTIC, error=f"error: {exc}\n")
    report = {
        "command": args.command,
        "arguments": _arguments_echo(args),
        "inputs_sha256": inputs.digest.hexdigest(),
        "result": result,
        "library_version": __version__,
        "generator": GENERATOR,
    }
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - start, 6)
    return Outcome(EXIT_OK, render(report, args.format), out=args.out)


def main(argv: list[str] | None = None) -> int:
    res = run(argv)
    if res.error:
        sys.stderr.write(res.error)
    if res.text:
        if res.out == "-":
            sys.stdout.write(res.text)
        else:
            with open(res.out, "w", encoding="utf-8") as fh:
                fh.write(res.text)
    return res.code


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
