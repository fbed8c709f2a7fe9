"""``logk3`` command line.

Exit codes: 0 success, 1 input error, 2 inconsistent boundary type,
3 a surgery step failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .boundary import LogSurfacePair, format_shape
from .classify import INCONSISTENT, NOT_INFINITE, a1_abundance, enumerate_types, normalize
from .documents import (
    DocumentError,
    emit_document,
    load_json,
    pair_to_document,
    parse_pair,
    parse_script,
    step_to_document,
    to_dot,
)
from .grouparith import FiniteGroupModel, find_marked_point
from .iitaka import (
    IitakaError,
    IitakaType,
    build_counterexample,
    build_model,
    cyclic_quotient_invariants,
    iitaka_classes_for,
)
from .lattice import kernel_dim
from .surgery import SurgeryError, run_script

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_STEP = 0, 1, 2, 3


def _color(text: str, code: str, stream=sys.stdout) -> str:
    if os.environ.get("LOGK3_COLOR", "1") == "0" or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def _err(msg: str) -> None:
    print(f"logk3: {msg}", file=sys.stderr)


def _read_json(path: str):
    if path == "-":
        return load_json(sys.stdin.read(), "<stdin>")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return load_json(text, path)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


def _int_csv(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def format_shape_tuple(t) -> str:
    return "(" + ", ".join(str(x) for x in t) + ")"


# -- commands --------------------------------------------------------------------


def cmd_classify(args) -> int:
    name, S = parse_pair(_read_json(args.input))
    cls, normal, trace = normalize(S)
    verdict = a1_abundance(S)
    if args.dot:
        _write(args.dot, to_dot(S, name))

    if args.json:
        report = {
            "name": name,
            "class": cls.label,
            "verdict": verdict.kind,
            "normal_type": format_shape(normal.shape),
            "reason": cls.reason,
            "trace": [
                {
                    "step": step_to_document(t.step),
                    "before": format_shape(t.before),
                    "after": format_shape(t.after),
                }
                for t in trace.steps
            ],
        }
        if verdict.b2_witness_model is not None:
            report["b2_witness"] = format_shape(verdict.b2_witness_model.shape)
            report["b2_fails"] = verdict.b2_check.fails
        print(json.dumps(report, ensure_ascii=False))
    elif not cls.consistent:
        print(f"{_color(INCONSISTENT, '31')}: {cls.reason}")
    else:
        print(f"{_color(cls.label, '1')} / {verdict.describe()}")
        print(f"normal type: {format_shape(normal.shape)}")
        if verdict.kind == NOT_INFINITE:
            print(
                f"B2 witness: {format_shape(verdict.b2_witness_model.shape)} "
                f"(B2 {'fails' if verdict.b2_check.fails else 'holds'})"
            )
    return EXIT_OK if cls.consistent else EXIT_INCONSISTENT


def cmd_apply(args) -> int:
    name, S = parse_pair(_read_json(args.input))
    steps = parse_script(_read_json(args.script)) if args.script else []
    try:
        out, trace = run_script(S, steps)
    except SurgeryError as exc:
        _err(str(exc))
        return EXIT_STEP
    doc = emit_document(pair_to_document(name, out))
    if args.trace:
        lines = [format_shape(S.shape)] + [format_shape(t.after) for t in trace.steps]
        sys.stdout.write("\n".join(lines) + "\n")
        if args.out:
            _write(args.out, doc)
    else:
        _write(args.out, doc)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    rows = enumerate_types(args.max_n, args.min_lambda, args.max_lambda)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["type", "class", "verdict", "normal_type", "trace_len"])
    for row in rows:
        nt = row.canonical_class.normal_type
        normal = "(" + ", ".join(map(str, nt)) + ")" if nt is not None else ""
        writer.writerow(
            [format_shape_tuple(row.type), row.canonical_class.label, row.verdict.kind, normal, row.trace_len]
        )
    try:
        _write(args.out, buf.getvalue())
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc.strerror}")
        return EXIT_INPUT
    return EXIT_OK


def _describe_pair(S: LogSurfacePair) -> list[str]:
    real = S.realization
    q = kernel_dim(real.lattice, real.boundary_classes)
    kd = all(x == 0 for x in real.k_plus_d())
    return [
        f"boundary: {format_shape(S.shape)}",
        f"boundary classes: {', '.join(format_shape_tuple(c) for c in real.boundary_classes)}",
        f"K + D = 0: {'yes' if kd else 'no'}",
        f"q = {q}",
    ]


def cmd_iitaka(args) -> int:
    t = IitakaType(args.type, args.beta)
    if not args.counterexample:
        S = build_model(t)
        lines = [f"Iitaka type {t}", f"lattice gram: {S.realization.lattice.gram}"]
        lines += _describe_pair(S)
        cls, normal, _ = normalize(S)
        lines.append(f"class: {cls.label}" + (f" ({cls.reason})" if cls.reason else ""))
        if cls.consistent:
            allowed = t.tag in iitaka_classes_for(cls)
            lines.append(f"type allowed for {cls.label}: {'yes' if allowed else 'no'}")
        print("\n".join(lines))
        return EXIT_OK

    rep = build_counterexample(t)
    lines = [f"Iitaka type {t} counterexample", "initial model:"]
    lines += ["  " + x for x in _describe_pair(rep.initial)]
    for step in rep.attachments:
        lines.append(f"attach half point on D{step.component + 1}")
    for step in rep.extra_pivots:
        lines.append(f"pivot at D{step.component + 1} ({step.direction})")
    lines.append("final model:")
    lines += ["  " + x for x in _describe_pair(rep.pair)]
    if rep.b2_model is not rep.pair:
        lines.append(f"B2 evaluated on two-node blowup: {format_shape(rep.b2_model.shape)}")
    for (i, j), nd in rep.b2_check.witnessing_pairs:
        lines.append(f"  drop D{i + 1}, D{j + 1}: remainder negative definite: {'yes' if nd else 'no'}")
    lines.append(
        "B2: FAILS — at most finitely many A¹ curves"
        if rep.b2_check.fails
        else "B2: holds on this model"
    )
    print("\n".join(lines))
    return EXIT_OK


def cmd_singularity(args) -> int:
    a, b = cyclic_quotient_invariants(args.chain)
    print(f"a/b = {a}/{b} (a={a}, b={b})")
    return EXIT_OK


def cmd_lemma33(args) -> int:
    model = FiniteGroupModel(args.modulus, tuple(args.gens))
    found = find_marked_point(model, args.a, args.target)
    print("none" if found is None else f"p = {found.p}")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logk3", description="Exact surgery and classification for log K3 surfaces of type II."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="normal form and A^1 verdict for a pair document")
    p.add_argument("input", help="pair document (JSON), or - for stdin")
    p.add_argument("--json", action="store_true", help="machine-readable report with trace")
    p.add_argument("--dot", metavar="FILE", help="write the boundary dual graph in DOT format")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("apply", help="run a surgery script on a pair document")
    p.add_argument("input")
    p.add_argument("--script", metavar="FILE", help="script document (JSON); omitted = empty script")
    p.add_argument("--trace", action="store_true", help="print every intermediate type, one per line")
    p.add_argument("--out", metavar="FILE", help="write the resulting pair document here")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("enumerate", help="CSV atlas of circular types in a box")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--min-lambda", type=int, required=True)
    p.add_argument("--max-lambda", type=int, required=True)
    p.add_argument("--out", metavar="FILE", default="-")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("iitaka", help="build an Iitaka model or its counterexample")
    p.add_argument("--type", required=True, help="a-i ... b-xiii")
    p.add_argument("--beta", type=int)
    p.add_argument("--counterexample", action="store_true")
    p.set_defaults(func=cmd_iitaka)

    p = sub.add_parser("singularity", help="cyclic quotient invariants of a chain")
    p.add_argument("--chain", type=_int_csv, required=True, help="e.g. -2,-2")
    p.set_defaults(func=cmd_singularity)

    p = sub.add_parser("lemma33", help="marked point in a finite cyclic model")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--gens", type=_int_csv, default=[])
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--target", type=int, default=0)
    p.set_defaults(func=cmd_lemma33)
    return parser


def _glue_negative_lists(argv: list[str]) -> list[str]:
    # argparse reads "-2,-2" as an option; glue it to its flag
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--chain", "--gens"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _glue_negative_lists(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, IitakaError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except OSError as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
