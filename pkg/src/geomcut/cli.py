"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 infeasible request (for example an
exhaustive search over its budget), 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import errors
from .arrangement import build_arrangement, locate_object_faces
from .cut_solvers import METHODS, oracle_budget, solve
from .dual_graph import build_dual
from .fence import export_svg, validate_fence
from .generators import GeneratorParams, generate
from .geom import validate_instance
from .io import parse_fence, parse_instance, serialize_fence, serialize_instance
from .steiner_dp import TREE_FORMAT_HELP, min_duplication, parse_tree
from .visibility import corner_index, free_segments

log = logging.getLogger("geomcut")

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_INTERNAL = 0, 1, 2, 3


class UnsupportedMethod(errors.GeomCutError):
    pass


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    method: str = "auto"
    svg: Optional[str] = None
    oracle_budget: int = field(default_factory=oracle_budget)
    fence: Optional[str] = None
    gen_params: Optional[GeneratorParams] = None
    tree: Optional[str] = None


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: Optional[str], data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _cmd_solve(cfg: RunConfig) -> int:
    inst = parse_instance(_read(cfg.input))
    if cfg.method == "exact2" and inst.num_colors != 2:
        raise UnsupportedMethod(f"method exact2 needs k=2, instance has k={inst.num_colors}")
    fence = solve(inst, cfg.method, cfg.oracle_budget)
    if cfg.output:
        _write(cfg.output, serialize_fence(fence))
    if cfg.svg:
        export_svg(inst, fence, cfg.svg)
    print(f"{fence.total_length:.9f}")
    return EXIT_OK


def _cmd_validate(cfg: RunConfig) -> int:
    inst = parse_instance(_read(cfg.input))
    report = validate_instance(inst)
    print(f"instance: {report}")
    if not report.valid:
        return EXIT_INVALID
    if cfg.fence:
        sep = validate_fence(inst, parse_fence(_read(cfg.fence)))
        print(f"fence: {sep}")
        if not sep.valid:
            return EXIT_INVALID
    return EXIT_OK


def _cmd_gen(cfg: RunConfig) -> int:
    _write(cfg.output, serialize_instance(generate(cfg.gen_params)))
    return EXIT_OK


def _cmd_steiner(cfg: RunConfig) -> int:
    src = cfg.tree
    if src == "-":
        text = sys.stdin.read()
    elif os.path.isfile(src):
        text = Path(src).read_text()
    else:
        text = src
    tree = parse_tree(text)
    res = min_duplication(tree)

    def name(v):
        return tree.labels[v] if tree.labels and tree.labels[v] else str(v)

    print(f"cost: {res.cost:.9f}")
    print(f"total: {tree.total_length():.9f}")
    dup = " ".join(f"{name(u)}-{name(v)}" for u, v in sorted(res.duplicated))
    print(f"duplicated: {dup}")
    return EXIT_OK


def _cmd_stats(cfg: RunConfig) -> int:
    inst = parse_instance(_read(cfg.input))
    report = validate_instance(inst)
    if not report.valid:
        raise errors.InvalidInstanceError(report)
    index = corner_index(inst)
    print(f"objects: {len(inst.objects)}")
    print(f"colors: {inst.num_colors}")
    print(f"corners: {len(index)}")
    print(f"corner incidences: {sum(len(v) for v in index.values())}")
    if not inst.objects:
        return EXIT_OK
    S = free_segments(inst)
    arr = locate_object_faces(build_arrangement(S), inst)
    g = build_dual(arr, inst)
    print(f"free segments: {len(S)}")
    print(f"arrangement: V={len(arr.vertices)} E={len(arr.edges)} F={len(arr.faces)} C={arr.num_components}")
    print(f"dual: nodes={g.num_nodes} edges={len(g.edges)} terminals={sum(len(t) for t in g.terminals.values())}")
    return EXIT_OK


COMMANDS = {
    "solve": _cmd_solve,
    "validate": _cmd_validate,
    "gen": _cmd_gen,
    "steiner-dp": _cmd_steiner,
    "stats": _cmd_stats,
}


def run(cfg: RunConfig) -> int:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", errors.EmptyColorClassWarning)
            return COMMANDS[cfg.command](cfg)
    except (errors.TooLarge, errors.GenerationTimeout, UnsupportedMethod,
            errors.NoSeparationNeeded) as exc:
        log.error("%s", exc)
        return EXIT_INFEASIBLE
    except (errors.InvariantViolation, errors.ObjectFaceNotFound, errors.ProvenanceMismatch) as exc:
        log.error("internal error: %s", exc)
        return EXIT_INTERNAL
    except (errors.GeomCutError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geomcut", description="Minimum-length fences separating colored polygons.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="compute a fence and print its length")
    s.add_argument("input", help="instance JSON ('-' for stdin)")
    s.add_argument("-o", "--output", help="write the fence JSON here")
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("--svg", help="also render an SVG picture")
    s.add_argument("--oracle-budget", type=int, default=None,
                   help="labeling budget for --method bruteforce (default 2^25 or $GEOMCUT_ORACLE_BUDGET)")

    v = sub.add_parser("validate", help="check an instance, and optionally a fence for it")
    v.add_argument("input")
    v.add_argument("--fence")

    g = sub.add_parser("gen", help="generate an instance")
    gsub = g.add_subparsers(dest="kind", required=True)
    lb = gsub.add_parser("lower-bound", help="triangle grid of thin rectangles")
    lb.add_argument("--k", type=int, default=1, dest="grid_k")
    lb.add_argument("--thickness", default="0.01")
    lb.add_argument("-o", "--output")
    rnd = gsub.add_parser("random", help="seeded random rectangles and convex polygons")
    rnd.add_argument("--seed", type=int, default=0)
    rnd.add_argument("--objects", type=int, default=2)
    rnd.add_argument("--colors", type=int, default=2)
    rnd.add_argument("--range", type=int, default=8, dest="coordinate_range")
    rnd.add_argument("-o", "--output")

    t = sub.add_parser("steiner-dp", help="minimum edge duplication on a degree-3 tree",
                       epilog=TREE_FORMAT_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    t.add_argument("tree", help="tree expression, a file holding one, or '-' for stdin")

    st = sub.add_parser("stats", help="sizes of corners, free segments, arrangement and dual graph")
    st.add_argument("input")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    if ns.command in ("solve", "validate", "stats"):
        cfg.input = ns.input
    if ns.command == "solve":
        cfg.output, cfg.method, cfg.svg = ns.output, ns.method, ns.svg
        if ns.oracle_budget is not None:
            cfg.oracle_budget = ns.oracle_budget
    elif ns.command == "validate":
        cfg.fence = ns.fence
    elif ns.command == "gen":
        cfg.output = ns.output
        if ns.kind == "lower-bound":
            cfg.gen_params = GeneratorParams(kind="lower_bound", grid_k=ns.grid_k, thickness=ns.thickness)
        else:
            cfg.gen_params = GeneratorParams(kind="random", seed=ns.seed, num_objects=ns.objects,
                                             num_colors=ns.colors, coordinate_range=ns.coordinate_range)
    elif ns.command == "steiner-dp":
        cfg.tree = ns.tree
    return cfg


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="geomcut: %(message)s")
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (ValueError, errors.GeomCutError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
