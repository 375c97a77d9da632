"""Command-line interface.

Every subcommand reads a document from a file argument or stdin (``-`` or
omitted) and writes documents to stdout.  Reports go to stderr.  Exit codes:
0 property holds / success, 1 property fails, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import attachments, extension, solver
from .constructions import CATALOG_NAMES, catalog
from .document import format_label, parse, serialize
from .errors import CoherentLabellingError, MissingLabelError
from .labelling import is_coherent, is_vertex_coherent
from .surface import Polyhedron, dual

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class _Failure(Exception):
    """Raised for errors that are not library errors (bad arguments, IO)."""


def _read(path: str | None) -> tuple[Polyhedron, object]:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _Failure(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _labelled(path: str | None):
    p, l = _read(path)
    if l is None:
        raise MissingLabelError("document has no labels")
    return p, l


def _edge_arg(text: str):
    """Accept an edge id ``3`` or an endpoint pair ``0-5``."""
    if "-" in text:
        u, _, v = text.partition("-")
        return (int(u), int(v))
    return int(text)


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _note(text: str) -> None:
    print(text, file=sys.stderr)


def cmd_build(args) -> int:
    p, l = catalog(args.name)
    text = serialize(p, l)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise _Failure(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        _emit(text)
    return EXIT_OK


def cmd_check(args) -> int:
    p, l = _labelled(args.file)
    report = is_vertex_coherent(p, l) if args.vertex else is_coherent(p, l)
    _note(report.summary())
    return EXIT_OK if report.coherent else EXIT_FAIL


def cmd_solve(args) -> int:
    p, _ = _read(args.file)
    if args.engine == "rotation":
        result = solver.solve_by_rotation_selection(p)
        _note(f"selections checked: {result.selections_checked}")
    else:
        result = solver.solve_backtracking(p)
        _note(f"nodes explored: {result.nodes_explored}")
    _emit(serialize(p, result.witness) if result.feasible else "INFEASIBLE\n")
    return EXIT_OK


def cmd_count(args) -> int:
    p, _ = _read(args.file)
    if args.engine == "rotation":
        n = solver.count_by_rotation_selection(p)
    else:
        n = solver.count_labellings(p, cap=args.cap)
    _emit(f"{n}\n")
    return EXIT_OK


def cmd_attach(args) -> int:
    p, l = _labelled(args.file)
    faces = args.face or []
    mode = args.mode

    def need(count: int) -> None:
        if len(faces) != count:
            raise _Failure(f"mode {mode} needs exactly {count} --face argument(s)")

    if mode == "a5":
        need(2)
        q, m, spec = attachments.attach_a5(p, l, faces[0], faces[1])
    else:
        need(1)
        if mode == "a1":
            q, m, spec = attachments.attach_a1(p, l, faces[0])
        elif mode == "a2":
            if args.edge is None:
                raise _Failure("mode a2 needs --edge")
            q, m, spec = attachments.attach_a2(p, l, faces[0], _edge_arg(args.edge))
        elif mode == "a3":
            if args.vertex is None:
                raise _Failure("mode a3 needs --vertex")
            q, m, spec = attachments.attach_a3(p, l, faces[0], args.vertex)
        else:
            q, m, spec = attachments.cap_triangle(p, l, faces[0])
    _note(json.dumps({
        "mode": spec.mode,
        "faces": list(spec.faces),
        "new_labels": {k: format_label(v) for k, v in spec.new_labels.items()},
        "shift": spec.shift,
    }, sort_keys=True))
    _emit(serialize(q, m))
    return EXIT_OK


def cmd_pyramidalize(args) -> int:
    p, l = _labelled(args.file)
    q, m = extension.pyramidalize(p, l)
    _emit(serialize(q, m))
    return EXIT_OK


def cmd_dual(args) -> int:
    p, l = _read(args.file)
    d = dual(p)
    _emit(serialize(d.dual, None if l is None else d.transport(l)))
    return EXIT_OK


def cmd_truncate(args) -> int:
    p, l = _labelled(args.file)
    if args.all:
        q, m = extension.truncate_all(p, l)
    else:
        q, m = extension.truncate_vertex(p, l, args.vertex)
    _emit(serialize(q, m))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    p, _ = _read(args.file)
    found = solver.enumerate_with_fixed_minimum(p, _edge_arg(args.fix_min_edge))
    for l in found:
        _emit(serialize(p, l, compact=True) + "\n")
    _note(f"{len(found)} labelling(s)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coherent-labelling", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str, with_file: bool = True):
        sp = sub.add_parser(name, help=help_text)
        if with_file:
            sp.add_argument("file", nargs="?", default="-", help="document path, '-' for stdin")
        sp.set_defaults(func=func)
        return sp

    sp = add("build", cmd_build, "write a catalog polyhedron", with_file=False)
    sp.add_argument("name", help=f"one of {', '.join(CATALOG_NAMES)}")
    sp.add_argument("-o", "--output", help="write to a file instead of stdout")

    sp = add("check", cmd_check, "exit 0 if coherent, 1 if not")
    sp.add_argument("--vertex", action="store_true", help="test vertex coherence instead")

    sp = add("solve", cmd_solve, "print a coherent labelling or INFEASIBLE")
    sp.add_argument("--engine", choices=("backtrack", "rotation"), default="backtrack")

    sp = add("count", cmd_count, "count coherent labellings with values 1..E")
    sp.add_argument("--engine", choices=("backtrack", "rotation"), default="backtrack")
    sp.add_argument("--cap", type=int, default=solver.DEFAULT_EDGE_CAP,
                    help="largest edge count the backtracking counter accepts")

    sp = add("attach", cmd_attach, "glue a tetrahedron onto a triangular face")
    sp.add_argument("--mode", required=True, choices=("a1", "a2", "a3", "a4", "a5"))
    sp.add_argument("--face", type=int, action="append", help="face id (twice for a5)")
    sp.add_argument("--edge", help="vanishing edge for a2, as an id or 'i-j'")
    sp.add_argument("--vertex", type=int, help="vanishing vertex for a3")

    add("pyramidalize", cmd_pyramidalize, "erect a pyramid over every face")
    add("dual", cmd_dual, "dual polyhedron, labels carried across edges")

    sp = add("truncate", cmd_truncate, "cut off one vertex or all vertices")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--vertex", type=int)
    group.add_argument("--all", action="store_true")

    sp = add("enumerate", cmd_enumerate, "all labellings whose least label is on one edge")
    sp.add_argument("--fix-min-edge", required=True, help="edge id or 'i-j'")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CoherentLabellingError as exc:
        _note(f"error: {type(exc).__name__}: {exc}")
    except _Failure as exc:
        _note(f"error: UsageError: {exc}")
    except ValueError as exc:
        _note(f"error: ValueError: {exc}")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
