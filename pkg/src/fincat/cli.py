"""Command-line interface: one executable, subcommand style, flags only.

Exit codes: 0 success, 1 semantic failure (axiom violation, contradiction,
unmet precondition, resource bound), 2 parse error, 3 usage error. Results
go to stdout or ``--output``; every diagnostic goes to stderr.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .category import Category, validate_category
from .constructions import (
    DEFAULT_SPACE_LIMIT,
    FnMap,
    TieBreak,
    function_space,
    sections,
)
from .domain import (
    DEFAULT_POWERSET_LIMIT,
    FiniteCollection,
    LogicalDomain,
    make_domain,
    powerset,
)
from .emit import emit as emit_text
from .emit import emit_witness
from .errors import FincatError, ValidationFailed
from .functorcat import (
    DEFAULT_NODE_BUDGET,
    enumerate_functors,
    functor_category,
    nat_equiv_classes,
)
from .parser import ParseError, parse_path
from .sizecalc import SizeScript, eval_size
from .skeleton import build_skeleton, iso_classes

USAGE_ERROR = 3
PARSE_ERROR = 2
SEMANTIC_ERROR = 1


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="fincat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *, output=False, limit=False):
        p = sub.add_parser(name, help=help_)
        if output:
            p.add_argument("--output", help="write the result to this path")
        if limit:
            p.add_argument("--limit", type=int, default=None,
                           help="resource bound for enumerations and searches")
        return p

    p = add("validate", "check the category axioms of a .cat file")
    p.add_argument("file")

    p = add("quotient", "emit the domain of equivalence classes", output=True)
    p.add_argument("file")

    p = add("powerset", "list every member of a domain's powerset",
            output=True, limit=True)
    p.add_argument("file")

    p = add("sections", "enumerate the sections of a surjection",
            output=True)
    p.add_argument("file")
    p.add_argument("--domain", action="append", default=[],
                   help="domain file giving context for the map (repeatable)")

    p = add("functions", "enumerate all maps between two domains",
            output=True, limit=True)
    p.add_argument("source")
    p.add_argument("target")

    p = add("iso-classes", "isomorphism classes of a category's objects",
            output=True)
    p.add_argument("file")

    p = add("skeleton", "extract a skeleton with its witnesses", output=True)
    p.add_argument("file")
    p.add_argument("--tie-break", default="lex",
                   help="lex or seed:<N>; how choices are resolved")
    p.add_argument("--emit-witnesses", metavar="PATH",
                   help="also write the section/retraction/component data here")

    p = add("functors", "enumerate all functors between two categories",
            output=True, limit=True)
    p.add_argument("source")
    p.add_argument("target")

    p = add("functor-cat", "emit the functor category as a .cat file",
            output=True, limit=True)
    p.add_argument("source")
    p.add_argument("target")

    p = add("nat-classes", "natural-equivalence classes of functors",
            output=True, limit=True)
    p.add_argument("source")
    p.add_argument("target")

    p = add("size", "evaluate the size tags a script queries", output=True)
    p.add_argument("file")
    p.add_argument("--trace", action="store_true",
                   help="print the rule trace under each result")

    return parser


def _load(path: str, expected: type, context=None):
    try:
        value = parse_path(path, context=context)
    except FileNotFoundError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if not isinstance(value, expected):
        raise _UsageError(
            f"{path}: expected a {expected.__name__} description, "
            f"found {type(value).__name__}")
    return value


def _load_context(paths: list[str]) -> dict[str, LogicalDomain]:
    context: dict[str, LogicalDomain] = {}
    for path in paths:
        d = _load(path, LogicalDomain)
        if d.name in context:
            raise _UsageError(f"domain {d.name!r} is given twice")
        context[d.name] = d
    return context


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _member_line(index: int, ids: tuple[str, ...]) -> str:
    return f"{index}: " + (" ".join(ids) if ids else "-")


def _run(args) -> int:
    if args.command == "validate":
        cat = _load(args.file, Category)
        report = validate_category(cat)
        if not report.ok:
            sys.stderr.write(report.render() + "\n")
            return SEMANTIC_ERROR
        print(f"category {cat.name}: valid ({len(cat.objects)} objects, "
              f"{len(cat.morphisms)} morphisms)")
        return 0

    if args.command == "quotient":
        d = _load(args.file, LogicalDomain)
        classes = make_domain(FiniteCollection(d.representatives),
                              name=f"{d.name}_classes")
        _write(emit_text(classes), args.output)
        return 0

    if args.command == "powerset":
        d = _load(args.file, LogicalDomain)
        p = powerset(d, limit=args.limit or DEFAULT_POWERSET_LIMIT)
        lines = [f"powerset {d.name}: {p.size} members"]
        lines.extend(_member_line(i, member.yes_elements())
                     for i, member in enumerate(p))
        _write("\n".join(lines) + "\n", args.output)
        return 0

    if args.command == "sections":
        context = _load_context(args.domain)
        f = _load(args.file, FnMap, context=context)
        found = sections(f)
        lines = [f"sections {f.name}: {found.count}"]
        targets = f.target.representatives
        for i, s in enumerate(found):
            pairs = " ".join(f"{t}->{s.assignment[t]}" for t in targets)
            lines.append(f"section {i}: {pairs}")
        _write("\n".join(lines) + "\n", args.output)
        return 0

    if args.command == "functions":
        a = _load(args.source, LogicalDomain)
        b = _load(args.target, LogicalDomain)
        space = function_space(a, b, limit=args.limit or DEFAULT_SPACE_LIMIT)
        lines = [f"functions {a.name} -> {b.name}: {space.count}"]
        for i, g in enumerate(space):
            pairs = " ".join(f"{r}->{g.assignment[r]}" for r in a.representatives)
            lines.append(f"fn {i}: {pairs}" if pairs else f"fn {i}: -")
        _write("\n".join(lines) + "\n", args.output)
        return 0

    if args.command == "iso-classes":
        cat = _load(args.file, Category)
        _, classes = iso_classes(cat)
        lines = [f"classes {len(classes.representatives)}"]
        for rep in classes.representatives:
            members = " ".join(classes.domain.class_members(rep))
            lines.append(f"class {rep}: {members}")
        _write("\n".join(lines) + "\n", args.output)
        return 0

    if args.command == "skeleton":
        cat = _load(args.file, Category)
        try:
            tie_break = TieBreak.parse(getattr(args, "tie_break"))
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
        result = build_skeleton(cat, tie_break)
        _write(emit_text(result.skeletal), args.output)
        if args.emit_witnesses:
            Path(args.emit_witnesses).write_text(
                emit_witness(result), encoding="utf-8")
        return 0

    if args.command == "functors":
        a = _load(args.source, Category)
        b = _load(args.target, Category)
        budget = args.limit or DEFAULT_NODE_BUDGET
        found = enumerate_functors(a, b, node_budget=budget)
        lines = [f"functors {len(found)}"]
        for i, F in enumerate(found):
            objs = " ".join(f"{o}->{F.object_map[o]}" for o in a.objects)
            morphs = " ".join(f"{m}->{F.morph_map[m]}" for m in a.morphism_names)
            lines.append(f"F{i}: obj {objs or '-'} ; morph {morphs or '-'}")
        _write("\n".join(lines) + "\n", args.output)
        return 0

    if args.command == "functor-cat":
        a = _load(args.source, Category)
        b = _load(args.target, Category)
        budget = args.limit or DEFAULT_NODE_BUDGET
        fc = functor_category(a, b, node_budget=budget)
        _write(emit_text(fc.category), args.output)
        return 0

    if args.command == "nat-classes":
        a = _load(args.source, Category)
        b = _load(args.target, Category)
        budget = args.limit or DEFAULT_NODE_BUDGET
        classes = nat_equiv_classes(a, b, node_budget=budget)
        lines = [f"classes {len(classes.representatives)}"]
        for rep in classes.representatives:
            members = " ".join(classes.domain.class_members(rep))
            lines.append(f"class {rep}: {members}")
        _write("\n".join(lines) + "\n", args.output)
        return 0

    if args.command == "size":
        script = _load(args.file, SizeScript)
        lines = []
        for name in script.queries:
            result = eval_size(name, script)
            lines.append(f"{name} = {result.display()}")
            if args.trace:
                lines.extend("  " + step.render() for step in result.trace)
        _write("\n".join(lines) + "\n", args.output)
        return 0

    raise _UsageError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return USAGE_ERROR
    except ParseError as exc:
        sys.stderr.write(f"{exc}\n")
        return PARSE_ERROR
    except ValidationFailed as exc:
        sys.stderr.write(exc.report.render() + "\n")
        return SEMANTIC_ERROR
    except FincatError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return SEMANTIC_ERROR


if __name__ == "__main__":
    sys.exit(main())
