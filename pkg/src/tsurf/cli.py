"""``tsurf`` command line.

Exit codes: 0 ok, 2 invalid input or parameters, 3 verification mismatch,
4 development budget exceeded.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import os
import sys

from . import construct, render, saddle, tsf, verify
from .construct import Expectation
from .errors import BudgetExceeded, ParseError, TsurfError, ValidationFailed
from .graph import load_graph

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_BUDGET = 0, 2, 3, 4


def sidecar_path(path: str) -> str:
    root = path[:-4] if path.endswith(".tsf") else path
    return root + ".expect.json"


def _load_valid(path: str):
    s = tsf.read(path)
    out = s.validate()
    if not out.ok:
        raise ValidationFailed(out.violations)
    return s


def cmd_construct(a) -> int:
    surf, exp = construct.build(a.literal, s=a.s, h=a.h, h_plus=a.h_plus)
    text = tsf.dumps(surf, comment=f"construct {a.literal}")
    if a.output in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    with open(a.output, "w") as fh:
        fh.write(text)
    if exp is not None:
        with open(sidecar_path(a.output), "w") as fh:
            fh.write(exp.dumps())
    print(f"wrote {a.output}" + (f" and {sidecar_path(a.output)}" if exp is not None else ""), file=sys.stderr)
    return EXIT_OK


def cmd_validate(a) -> int:
    s = tsf.read(a.file)
    out = s.validate()
    if not out.ok:
        for v in out.violations:
            print(f"violation\t{v.kind}\t{v.detail}")
        return EXIT_INVALID
    print(f"ok\tpolygons={len(s.polygons)}\tpairs={len(s.pairs())}\tgenus={s.genus()}")
    for cp in s.cone_points:
        print(f"cone\t{cp.id}\t{cp.kind}\t{cp.multiple}\t{cp.total_angle:.15g}\t{len(cp.corners)}")
    return EXIT_OK


def _tsv(conns) -> str:
    lines = ["index\tstart\tend\thx\thy\tlength"]
    for i, c in enumerate(conns):
        lines.append(f"{i}\t{c.start}\t{c.end}\t{c.holonomy.x:.15g}\t{c.holonomy.y:.15g}\t{c.length:.15g}")
    return "\n".join(lines) + "\n"


def cmd_systoles(a) -> int:
    s = _load_valid(a.file)
    if a.length is not None:
        conns = saddle.enumerate_connections(s, a.length)
    else:
        _, conns = saddle.systole(s)
    sys.stdout.write(_tsv(conns))
    return EXIT_OK


def _compare(exp: Expectation, rep: verify.EmbeddingReport, tol: float = 1e-9) -> list:
    bad = []
    if exp.genus != rep.genus:
        bad.append(f"genus {rep.genus} != expected {exp.genus}")
    if exp.cone_spectrum != rep.cone_spectrum:
        bad.append(f"cone spectrum {rep.cone_spectrum} != expected {exp.cone_spectrum}")
    if not math.isclose(exp.systole, rep.systole, rel_tol=tol, abs_tol=tol):
        bad.append(f"systole {rep.systole!r} != expected {exp.systole!r}")
    if exp.systolic_count != rep.systolic_count:
        bad.append(f"systolic count {rep.systolic_count} != expected {exp.systolic_count}")
    if exp.kind != rep.verdict:
        bad.append(f"verdict {rep.verdict} != expected {exp.kind}")
    return bad


def cmd_verify(a) -> int:
    s = _load_valid(a.file)
    target = load_graph(a.target)
    exp = None
    if a.expect:
        with open(a.expect) as fh:
            exp = Expectation.loads(fh.read())
    sg = saddle.systolic_graph(s)
    rep = verify.classify(s, sg, target)
    if a.length_bound:
        verify.check_length_bound(s, rep)
    data = rep.to_dict()
    data["target"] = a.target
    problems = []
    if rep.iso is None:
        problems.append("systolic graph is not isomorphic to the target")
    if not all(b["ok"] for b in rep.bounds.values()):
        problems.append("bound violated")
    if exp is not None:
        mism = _compare(exp, rep)
        data["expectation"] = {"ok": not mism, "mismatches": mism}
        problems += mism
    data["ok"] = not problems
    if not a.no_timestamp:
        data["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if a.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(a.output, "w") as fh:
            fh.write(text)
    if a.figures:
        os.makedirs(a.figures, exist_ok=True)
        render.write_svg(s, os.path.join(a.figures, "net.svg"), sg.realization,
                         title=f"{os.path.basename(a.file)}: {rep.verdict}, systole {rep.systole:.6g}")
        with open(os.path.join(a.figures, "connections.tsv"), "w") as fh:
            fh.write(_tsv(sg.realization))
    for p in problems:
        print(f"mismatch: {p}", file=sys.stderr)
    return EXIT_OK if not problems else EXIT_MISMATCH


def cmd_export_svg(a) -> int:
    s = _load_valid(a.file)
    conns = saddle.systole(s)[1] if a.systoles else ()
    data = render.svg_bytes(s, conns)
    if a.output in (None, "-"):
        sys.stdout.buffer.write(data)
    else:
        with open(a.output, "wb") as fh:
            fh.write(data)
    return EXIT_OK


def _positive(x: str) -> float:
    v = float(x)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {x}")
    return v


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tsurf", description="Translation surfaces and their systolic graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a catalogued surface")
    c.add_argument("literal", help="kn:5, kn:5/-0-1, wedge-max:7, wedge-min:10, wedge:9@g=3, p:4,1, q:4,2, table:NAME")
    c.add_argument("-o", "--output", help=".tsf path (an .expect.json sidecar is written next to it)")
    c.add_argument("--s", type=_positive, help="polygon side length for kn constructions")
    c.add_argument("--h", type=_positive, help="flap height for kn constructions")
    c.add_argument("--h-plus", dest="h_plus", type=_positive, help="raised flap height for deleted edges")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("validate", help="check a .tsf file")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    y = sub.add_parser("systoles", help="list systolic connections as TSV")
    y.add_argument("file")
    y.add_argument("--length", type=_positive, help="list every connection up to this length instead")
    y.set_defaults(func=cmd_systoles)

    r = sub.add_parser("verify", help="run the verification pipeline")
    r.add_argument("file")
    r.add_argument("--target", required=True, help="graph literal or edge-list file")
    r.add_argument("--expect", help="expectation sidecar written by construct")
    r.add_argument("-o", "--output", help="report path (default stdout)")
    r.add_argument("--figures", metavar="DIR", help="also write net.svg and connections.tsv here")
    r.add_argument("--no-timestamp", action="store_true")
    r.add_argument("--length-bound", action="store_true", help="check the systole length bound at unit area")
    r.set_defaults(func=cmd_verify)

    e = sub.add_parser("export-svg", help="draw the polygon net")
    e.add_argument("file")
    e.add_argument("-o", "--output")
    e.add_argument("--systoles", action="store_true", help="overlay systolic connections")
    e.set_defaults(func=cmd_export_svg)
    return p


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc} ({len(exc.partial)} connections found before stopping)", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationFailed, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TsurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
