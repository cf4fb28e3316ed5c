"""Command-line front end.

Exit status is 0 when every check passes, 1 when a check fails (the report
is still written) and 2 for unreadable input or bad usage.

Graph arguments are JSON files; a standard space name such as ``circle`` or
``chain3`` is accepted in their place. Presheaf specifiers follow the small
grammar ``rep:FILE``, ``rep:NAME``, ``tang01``, ``psi11``, ``wd:FILE`` and
``prod(SPEC,SPEC)``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from .dagger import FreeMorphism, Labelling, load_dagger, roundtrip_check, validate_dagger, whitney_category_of
from .errors import InvalidArgument
from .equiv import tangle_hypothesis_report
from .models import SignWords, circle_maps, psi11_circle, tang01
from .morphism import PMorphism, enumerate_homs, identity, word_to_str
from .presheaf import Presheaf, Representable, omega1, product
from .site import closure_cover, pullback_cover, sheaf_check
from .stratgraph import StratifiedGraph, chain, circle, interval, point, points, standard_space

__all__ = ["main", "run", "parse_spec", "load_graph"]


class UsageError(Exception):
    pass


# -- inputs --------------------------------------------------------------


def _load_dagger_file(path: str):
    try:
        D = load_dagger(_read_json(path, "dagger"))
    except InvalidArgument as exc:
        raise UsageError(f"{path}: {exc}") from None
    D.name = os.path.splitext(os.path.basename(path))[0]
    return D


def _read_json(path: str, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {what} file {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None


def load_graph(arg: str) -> StratifiedGraph:
    """A graph from a JSON file, or a standard space by name."""
    if os.path.exists(arg) or arg.endswith(".json"):
        doc = _read_json(arg, "graph")
        try:
            return StratifiedGraph.from_json(doc)
        except InvalidArgument as exc:
            raise UsageError(f"{arg}: {exc}") from None
    try:
        return standard_space(arg)
    except InvalidArgument:
        raise UsageError(f"{arg!r} is neither a graph file nor a standard space name") from None


def _split_args(body: str) -> list[str]:
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return [p.strip() for p in parts]


def parse_spec(spec: str) -> Presheaf:
    """Build a presheaf from a specifier string."""
    spec = spec.strip()
    if spec == "tang01":
        return tang01()
    if spec == "psi11":
        return psi11_circle()
    if spec.startswith("rep:"):
        target = load_graph(spec[4:])
        if target == circle():
            return circle_maps()
        return Representable(target, f"rep({spec[4:]})")
    if spec.startswith("wd:"):
        return whitney_category_of(_load_dagger_file(spec[3:]))
    if spec.startswith("prod(") and spec.endswith(")"):
        parts = _split_args(spec[5:-1])
        if len(parts) != 2:
            raise UsageError(f"prod(...) takes two specifiers, got {len(parts)}")
        return product(parse_spec(parts[0]), parse_spec(parts[1]))
    raise UsageError(f"unknown presheaf specifier {spec!r}")


# -- rendering ------------------------------------------------------------


def to_jsonable(a):
    """JSON form of any element produced by the built-in presheaves."""
    if isinstance(a, PMorphism):
        doc = a.to_json()
        return {"vertex_map": doc["vertex_map"], "edge_words": doc["edge_words"]}
    if isinstance(a, SignWords):
        return {"words": dict(zip(a.space.edge_names, a.words))}
    if isinstance(a, Labelling):
        return {
            "objects": {v: to_jsonable(o) for v, o in zip(a.space.vertices, a.objects)},
            "morphisms": {x: to_jsonable(m) for x, m in zip(a.space.edge_names, a.morphisms)},
        }
    if isinstance(a, FreeMorphism):
        return {"src": a.src, "dst": a.dst, "word": word_to_str(a.word)}
    if isinstance(a, tuple):
        return [to_jsonable(x) for x in a]
    return a


def short(a) -> str:
    """A compact one-line label for an element."""
    if isinstance(a, PMorphism):
        vs = ",".join(f"{v}>{a.vertex_map[v]}" for v in a.source.vertices)
        ws = " ".join(f"{x}:{word_to_str(a.edge_words[x])}" for x in a.source.edge_names)
        if a.target.vertices == ("v",) or not a.source.vertices:
            return ws or "()"
        return f"[{vs}] {ws}".rstrip()
    if isinstance(a, SignWords):
        return " ".join(f"{x}:{w or '()'}" for x, w in zip(a.space.edge_names, a.words)) or "()"
    if isinstance(a, Labelling):
        obs = ",".join(f"{v}={short(o)}" for v, o in zip(a.space.vertices, a.objects))
        mors = " ".join(f"{x}={short(m)}" for x, m in zip(a.space.edge_names, a.morphisms))
        return f"[{obs}] {mors}".rstrip()
    if isinstance(a, FreeMorphism):
        return f"{a.src}:{word_to_str(a.word)}:{a.dst}"
    if isinstance(a, tuple):
        return "(" + ", ".join(short(x) for x in a) + ")"
    return str(a)


def _emit(args, text: str, doc) -> None:
    out = json.dumps(doc, indent=2, ensure_ascii=False) if args.json else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        args.stdout.write(out + "\n")


# -- commands -------------------------------------------------------------


def cmd_validate_graph(args) -> int:
    X = load_graph(args.graph)
    text = f"OK {X}: {len(X.vertices)} vertices, {len(X.edges)} edges, dimension {X.dimension}"
    _emit(args, text, {"valid": True, "graph": X.to_json()})
    return 0


def cmd_validate_dagger(args) -> int:
    D = _load_dagger_file(args.file)
    bound = args.bound
    if bound is None and D.kind == "free":
        bound = 3
    report = validate_dagger(D, bound)
    _emit(args, report.summary(), report.to_json())
    return 0 if report.passed else 1


def cmd_hom(args) -> int:
    X, Y = load_graph(args.source), load_graph(args.target)
    homs = enumerate_homs(X, Y, args.word_bound)
    lines = [f"{len(homs)} morphisms {X} -> {Y} with words of length <= {args.word_bound}"]
    lines += [f"  {f!r}" for f in homs]
    doc = {
        "source": X.to_json(),
        "target": Y.to_json(),
        "word_bound": args.word_bound,
        "count": len(homs),
        "morphisms": [to_jsonable(f) for f in homs],
    }
    _emit(args, "\n".join(lines), doc)
    return 0


def cmd_eval(args) -> int:
    P, X = parse_spec(args.spec), load_graph(args.graph)
    elems = P.evaluate(X, args.bound)
    lines = [f"{P.name} on {X} at bound {args.bound}: {len(elems)} elements"]
    lines += [f"  {short(a)}" for a in elems]
    doc = {
        "presheaf": P.name,
        "space": X.to_json(),
        "bound": args.bound,
        "count": len(elems),
        "elements": [to_jsonable(a) for a in elems],
    }
    _emit(args, "\n".join(lines), doc)
    return 0


def cmd_sheaf_check(args) -> int:
    P, X = parse_spec(args.spec), load_graph(args.graph)
    covers = [closure_cover(X)]
    base = closure_cover(X)
    for g in enumerate_homs(X, X, 1):
        if len(covers) - 1 >= args.max_covers:
            break
        if g != identity(X):
            covers.append(pullback_cover(base, g))
    reports = [sheaf_check(P, X, C, args.bound) for C in covers]
    ok = all(r.passed for r in reports)
    text = "\n".join(r.summary() for r in reports)
    _emit(args, text, {"passed": ok, "reports": [r.to_json() for r in reports]})
    return 0 if ok else 1


def cmd_dagger_roundtrip(args) -> int:
    D = _load_dagger_file(args.file)
    report = roundtrip_check(D, bound=args.bound)
    _emit(args, report.summary(), report.to_json())
    return 0 if report.passed else 1


def cmd_whitney_roundtrip(args) -> int:
    P = parse_spec(args.spec)
    spaces = [point(), points(2), interval(), chain(2), chain(3), circle()]
    report = roundtrip_check(P, spaces, args.bound, args.word_bound)
    _emit(args, report.summary(), report.to_json())
    return 0 if report.passed else 1


def cmd_omega1(args) -> int:
    P = parse_spec(args.spec)
    try:
        M = omega1(P, args.bound)
    except InvalidArgument as exc:
        raise UsageError(str(exc)) from None
    carrier = M.carrier
    idx = {a: i for i, a in enumerate(carrier)}
    table = M.table()
    lines = [f"loop monoid of {P.name} at bound {args.bound}: {len(carrier)} elements, unit {short(M.unit)}"]
    lines.append("elements (index: element | involution):")
    for i, a in enumerate(carrier):
        lines.append(f"  {i}: {short(a)} | {short(M.involution(a))}")
    lines.append("products defined within the bound (a * b = c):")
    for (a, b), c in table.items():
        lines.append(f"  {idx[a]} * {idx[b]} = {idx.get(c, short(c))}")
    doc = {
        "presheaf": P.name,
        "bound": args.bound,
        "elements": [to_jsonable(a) for a in carrier],
        "unit": idx.get(M.unit),
        "involution": [idx.get(M.involution(a)) for a in carrier],
        "products": [[idx[a], idx[b], idx.get(c)] for (a, b), c in table.items()],
    }
    _emit(args, "\n".join(lines), doc)
    return 0


def cmd_tangle_hypothesis(args) -> int:
    try:
        report = tangle_hypothesis_report(args.max_vertices, args.max_edges, args.word_bound, args.bound)
    except InvalidArgument as exc:
        raise UsageError(str(exc)) from None
    _emit(args, report.summary(), report.to_json())
    return 0 if report.passed else 1


# -- parser --------------------------------------------------------------


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    common.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="whitney", description="Bounded checks on Whitney categories of graphs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(func=func)
        return p

    p = add("validate-graph", cmd_validate_graph, "check a stratified graph document")
    p.add_argument("graph")
    p = add("validate-dagger", cmd_validate_dagger, "check the dagger category axioms")
    p.add_argument("file")
    p.add_argument("--bound", type=_nonneg, default=None, help="word bound for free categories (default 3)")
    p = add("hom", cmd_hom, "list morphisms between two graphs")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--word-bound", type=_nonneg, required=True)
    p = add("eval", cmd_eval, "list the elements of a presheaf on a graph")
    p.add_argument("spec")
    p.add_argument("graph")
    p.add_argument("--bound", type=_nonneg, required=True)
    p = add("sheaf-check", cmd_sheaf_check, "check the sheaf condition on a graph")
    p.add_argument("spec")
    p.add_argument("graph")
    p.add_argument("--bound", type=_nonneg, required=True)
    p.add_argument("--max-covers", type=_nonneg, default=10, help="pullback covers to try besides the closure cover")
    p = add("dagger-roundtrip", cmd_dagger_roundtrip, "compare a dagger category with D(W(D))")
    p.add_argument("file")
    p.add_argument("--bound", type=_nonneg, required=True)
    p = add("whitney-roundtrip", cmd_whitney_roundtrip, "compare a presheaf with W(D(P))")
    p.add_argument("spec")
    p.add_argument("--bound", type=_nonneg, required=True)
    p.add_argument("--word-bound", type=_nonneg, default=None)
    p = add("omega1", cmd_omega1, "print the loop monoid table and involution")
    p.add_argument("spec")
    p.add_argument("--bound", type=_nonneg, required=True)
    p = add("tangle-hypothesis", cmd_tangle_hypothesis, "compare tangles with maps to the circle")
    p.add_argument("--max-vertices", type=_nonneg, required=True)
    p.add_argument("--max-edges", type=_nonneg, required=True)
    p.add_argument("--word-bound", type=_nonneg, required=True)
    p.add_argument("--bound", type=_nonneg, required=True)
    return parser


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.stdout = stdout
    try:
        return args.func(args)
    except UsageError as exc:
        stderr.write(f"whitney {args.command}: error: {exc}\n")
        return 2
    except InvalidArgument as exc:
        stderr.write(f"whitney {args.command}: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
