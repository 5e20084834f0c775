"""Command-line front end.

Subcommands: validate, invariants, replay, render.  Exit codes: 0 success,
1 validation failure, 2 parse error, 3 move precondition failure, 4 replay
assertion failure.  All output is deterministic and files are written
atomically (temp file + rename), so a failing command leaves no partial
output behind.
"""

import argparse
import os
import sys
import tempfile

from trisections import invariants, moves, render, scriptlang
from trisections.diagram import (
    ArcedRelativeDiagram,
    DoublyPointedDiagram,
    RelativeTrisectionDiagram,
    TrisectionDiagram,
    validate_relative,
    validate_trisection,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_MOVE = 3
EXIT_ASSERT = 4


def _base_of(d):
    if isinstance(d, (ArcedRelativeDiagram, DoublyPointedDiagram)):
        return d.base
    return d


def _load(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise scriptlang.ParseError(str(e), 0)
    return scriptlang.load_diagram_file(text)


def _atomic_write(path, text):
    dirname = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=dirname, suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _validate_report(d, depth):
    base = _base_of(d)
    if isinstance(base, TrisectionDiagram):
        return validate_trisection(base, depth=depth)
    return validate_relative(base, depth=depth)


def cmd_validate(args):
    d = _load(args.file).diagram
    report = _validate_report(d, args.depth)
    for line in report.lines():
        print(line)
    bad = report.status == "failed" or (
        args.strict and report.status != "certified")
    if bad:
        print("validation failed: %s" % report.status, file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_invariants(args):
    d = _load(args.file).diagram
    base = _base_of(d)
    p = base.params
    if isinstance(base, TrisectionDiagram):
        print("kind: trisection")
        print("genus: %d" % p.g)
        print("k: %d %d %d" % (p.k1, p.k2, p.k3))
        print("chi: %d" % invariants.euler_char_4manifold(p))
    else:
        print("kind: relative")
        print("genus: %d" % p.g)
        print("k: %d  p: %d  b: %d" % (p.k, p.p, p.b))
    factors = invariants.h1(base)
    print("h1: %s" % ("trivial" if not factors
                      else " ".join(str(f) for f in factors)))
    for fa, fb in (("alpha", "beta"), ("beta", "gamma"), ("gamma", "alpha")):
        m = invariants.intersection_matrix(base, fa, fb)
        snf = invariants.invariant_factors(m)
        print("snf %s/%s: %s" % (fa, fb,
                                 " ".join(str(x) for x in snf) or "-"))
    print("digest: %s" % scriptlang.diagram_digest(d))
    return EXIT_OK


def cmd_replay(args):
    start = _load(args.diagram).diagram
    with open(args.script, "r", encoding="utf-8") as fh:
        script = scriptlang.parse_script(fh.read())
    base_dir = os.path.dirname(os.path.abspath(args.diagram))
    try:
        final, trace = scriptlang.replay(script, start, base_dir=base_dir,
                                         validate_depth=args.depth)
    except scriptlang.ReplayAssertError as e:
        print("assertion failed at step %d: %s" % (e.step, e.args[0]),
              file=sys.stderr)
        if e.trace is not None:
            for line in e.trace.lines():
                print(line, file=sys.stderr)
        return EXIT_ASSERT
    except scriptlang.ReplayMoveError as e:
        print("move failed at step %d: %s" % (e.step, e.args[0]),
              file=sys.stderr)
        return EXIT_MOVE
    for line in trace.lines():
        print(line)
    if args.out:
        _atomic_write(args.out, scriptlang.serialize_diagram(final))
    if args.trace:
        _atomic_write(args.trace, "\n".join(trace.lines()) + "\n")
    print("final digest: %s" % scriptlang.diagram_digest(final))
    return EXIT_OK


def cmd_render(args):
    d = _load(args.file).diagram
    text = render.render_svg(d, size=args.size)
    if args.svg:
        _atomic_write(args.svg, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="trisections",
        description="validate, measure, rewrite and draw trisection diagrams")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="run the diagram validator")
    v.add_argument("file")
    v.add_argument("--depth", type=int, default=8,
                   help="bounded-search certifier depth (default 8)")
    v.add_argument("--strict", action="store_true",
                   help="treat homologically-consistent as a failure")
    v.set_defaults(fn=cmd_validate)

    i = sub.add_parser("invariants", help="print parameters, chi, h1, SNFs")
    i.add_argument("file")
    i.set_defaults(fn=cmd_invariants)

    r = sub.add_parser("replay", help="apply a move script to a diagram")
    r.add_argument("diagram")
    r.add_argument("script")
    r.add_argument("--out", help="write the canonical final diagram here")
    r.add_argument("--trace", help="write the replay trace here")
    r.add_argument("--depth", type=int, default=2,
                   help="validator depth used for the per-step trace")
    r.set_defaults(fn=cmd_replay)

    g = sub.add_parser("render", help="draw a diagram as SVG")
    g.add_argument("file")
    g.add_argument("--svg", help="output file (default: stdout)")
    g.add_argument("--size", type=int, default=640)
    g.set_defaults(fn=cmd_render)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except scriptlang.ParseError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    except moves.MoveError as e:
        print("move error: %s" % e, file=sys.stderr)
        return EXIT_MOVE


if __name__ == "__main__":
    sys.exit(main())
