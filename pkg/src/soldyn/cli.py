"""Command-line front end.

Exit codes: 0 success, 2 parse error or unknown example, 3 singular
matrix, 4 group not nilpotent, 5 group not ergodic, 6 search caps
exhausted. Set SOLDYN_LOG=DEBUG (or INFO, ...) for progress on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .autdyn import analyze_auto, ergodic_distal_split
from .cyclo import order_set
from .ergfind import find_ergodic_nilpotent
from .errors import CapsExhausted, NotErgodicGroup, NotInvertible, NotNilpotent, ParseError
from .examples import EXAMPLE_NAMES, build_example
from .groupdyn import distal_series_group
from .schema import (
    auto_report,
    envelope,
    genset_to_doc,
    group_report,
    load_genset,
    render_vec,
    search_report,
    split_report,
    word_report,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SINGULAR = 3
EXIT_NOT_NILPOTENT = 4
EXIT_NOT_ERGODIC = 5
EXIT_CAPS = 6

log = logging.getLogger("soldyn")


def _error(kind: str, message: str, **extra) -> dict:
    return {"error": kind, "message": message, **extra}


def _single_generator(g):
    if len(g.gens) != 1:
        raise ParseError(f"expected exactly one generator, got {len(g.gens)}")
    return g.gens[0]


def run_file(command: str, opts: dict, path: str):
    """Analyse one input file; returns ``(exit_code, report)``."""
    caps = {}
    try:
        g = load_genset(path)
        if command == "analyze-auto":
            m = _single_generator(g)
            report = auto_report(m, analyze_auto(m))
        elif command == "split":
            report = split_report(ergodic_distal_split(_single_generator(g)))
        elif command in ("analyze-group", "series"):
            cap = opts.get("orbit_cap")
            caps["orbit_cap"] = cap if cap is not None else order_set(g.dim).minkowski_B
            report = group_report(distal_series_group(g, cap))
            if command == "series":
                report = {"distal": report["distal"], "series": report["series"]}
        elif command == "find-ergodic":
            caps.update(word_cap=opts["word_cap"], power_cap=opts["power_cap"])
            result = find_ergodic_nilpotent(g, opts["word_cap"], opts["power_cap"])
            report = search_report(result, g)
        else:
            raise ValueError(f"unknown command {command}")
    except ParseError as exc:
        return EXIT_PARSE, {**envelope(command, caps), "file": path, **_error("ParseError", str(exc))}
    except NotInvertible as exc:
        return EXIT_SINGULAR, {**envelope(command, caps), "file": path, **_error("NotInvertible", str(exc))}
    except NotNilpotent as exc:
        extra = {"witness": word_report(exc.witness, g)} if exc.witness is not None else {}
        return EXIT_NOT_NILPOTENT, {**envelope(command, caps), "file": path, **_error("NotNilpotent", str(exc), **extra)}
    except NotErgodicGroup as exc:
        extra = {"character": render_vec(exc.character)} if exc.character is not None else {}
        return EXIT_NOT_ERGODIC, {**envelope(command, caps), "file": path, **_error("NotErgodicGroup", str(exc), **extra)}
    except CapsExhausted as exc:
        return EXIT_CAPS, {
            **envelope(command, caps),
            "file": path,
            **_error("CapsExhausted", str(exc), diagnostics=exc.diagnostics),
        }
    return EXIT_OK, {**envelope(command, caps), "file": path, **report}


def format_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(format_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            f"{pad}-\n{format_text(v, indent + 1)}" if isinstance(v, dict) else f"{pad}- {_flat(v)}"
            for v in obj
        )
    return f"{pad}{_flat(obj)}"


def _is_flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, dict) for x in v) and len(json.dumps(v)) <= 72
    return False


def _flat(v) -> str:
    if isinstance(v, list):
        return json.dumps(v)
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def emit(report, as_text: bool) -> None:
    if as_text:
        if isinstance(report, list):
            print("\n\n".join(format_text(r) for r in report))
        else:
            print(format_text(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=False))


def _add_output_flags(p) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
    group.add_argument("--text", dest="text", action="store_true", help="human-readable output")
    p.set_defaults(text=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soldyn",
        description="Ergodicity and distality of automorphism groups of tori and solenoids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in [
        ("analyze-auto", "verdicts and split for a single automorphism"),
        ("split", "ergodic/distal splitting of a single automorphism"),
        ("analyze-group", "group ergodicity, distality and structure series"),
        ("series", "distal structure series of a group"),
        ("find-ergodic", "ergodic element of an ergodic nilpotent group"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("files", nargs="+", help="input JSON documents ('-' for stdin)")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers across files")
        _add_output_flags(p)
        if name in ("analyze-group", "series"):
            p.add_argument("--orbit-cap", type=int, default=None, help="closure cap (default: Minkowski bound)")
        if name == "find-ergodic":
            p.add_argument("--word-cap", type=int, default=4)
            p.add_argument("--power-cap", type=int, default=8)

    p = sub.add_parser("example", help="emit a built-in generating set")
    p.add_argument("name", help=f"one of {', '.join(EXAMPLE_NAMES)}")
    p.add_argument("--k", type=int, default=3, help="size for 'tower'")
    p.add_argument("--base", default="golden", help="base group for 'gamma-plus'")
    p.add_argument("--translations", default="e1,e2", help="comma-separated, e.g. e1,e2")
    _add_output_flags(p)

    p = sub.add_parser("simulate", help="floating-point orbit statistics on the torus")
    p.add_argument("file")
    p.add_argument("--iters", type=int, default=100_000)
    p.add_argument("--x0", default=None, help="comma-separated start point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None, help="write the orbit to this CSV file")
    _add_output_flags(p)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("SOLDYN_LOG")
    if level:
        logging.basicConfig(level=level.upper(), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _cmd_example(args) -> int:
    try:
        g = build_example(args.name, k=args.k, base=args.base, translations=args.translations)
    except (ParseError, ValueError) as exc:
        print(f"soldyn: {exc}", file=sys.stderr)
        return EXIT_PARSE
    emit(genset_to_doc(g), args.text)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    from .autdyn import torus_validate
    from .simulate import torus_orbit_stats

    try:
        g = load_genset(args.file)
        m = _single_generator(g)
        if not torus_validate(m):
            raise ParseError("simulation needs an integer unimodular matrix")
        x0 = None
        if args.x0 is not None:
            x0 = [float(t) for t in args.x0.split(",")]
            if len(x0) != m.dim:
                raise ParseError(f"start point needs {m.dim} coordinates")
    except ParseError as exc:
        print(f"soldyn: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotInvertible as exc:
        print(f"soldyn: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    stats, pts = torus_orbit_stats(m, x0, args.iters, args.seed, return_orbit=True)
    if args.csv:
        import numpy as np

        header = ",".join(f"x{i + 1}" for i in range(m.dim))
        np.savetxt(args.csv, pts, delimiter=",", header=header, comments="")
    report = {**envelope("simulate", {"iters": args.iters, "seed": args.seed}), "file": args.file, **stats.to_dict()}
    report["heuristic"] = True
    emit(report, args.text)
    return EXIT_OK


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    if args.command == "example":
        return _cmd_example(args)
    if args.command == "simulate":
        return _cmd_simulate(args)
    opts = {
        "orbit_cap": getattr(args, "orbit_cap", None),
        "word_cap": getattr(args, "word_cap", 4),
        "power_cap": getattr(args, "power_cap", 8),
    }
    work = partial(run_file, args.command, opts)
    if args.jobs > 1 and len(args.files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(work, args.files))
    else:
        results = [work(f) for f in args.files]
    reports = [r for _, r in results]
    emit(reports[0] if len(reports) == 1 else reports, args.text)
    return max(code for code, _ in results)


if __name__ == "__main__":
    sys.exit(main())
