"""Line-oriented parsers for the domain, map, category, size-script and
witness file formats.

``#`` starts a comment anywhere; blank lines are ignored; the first header
keyword picks the format. Names must be declared before use, and every
error carries a 1-based source position.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from . import sizecalc
from .category import Category, Morphism
from .constructions import FnMap
from .domain import (
    EqualityPairing,
    FiniteCollection,
    LogicalDomain,
    is_user_id,
    make_domain,
)
from .errors import FincatError
from .report import SourceSpan


class ParseError(FincatError):
    def __init__(self, span: SourceSpan, reason: str):
        super().__init__(f"{span}: {reason}")
        self.span = span
        self.reason = reason


@dataclass(frozen=True)
class SkeletonWitness:
    """The comparison data a skeleton extraction emits alongside the result:
    the object section, the retraction on objects and morphisms, and the
    natural-equivalence component at every object."""

    name: str
    section: tuple[tuple[str, str], ...]
    retraction_objects: tuple[tuple[str, str], ...]
    retraction_morphisms: tuple[tuple[str, str], ...]
    components: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class _Token:
    text: str
    column: int


class _Line:
    def __init__(self, filename: str, number: int, raw: str):
        self.filename = filename
        self.number = number
        code = raw.split("#", 1)[0]
        self.tokens: list[_Token] = []
        col = 0
        for part in code.split():
            col = code.index(part, col)
            self.tokens.append(_Token(part, col + 1))
            col += len(part)

    def span(self, token_index: int = 0) -> SourceSpan:
        if self.tokens and token_index < len(self.tokens):
            return SourceSpan(self.filename, self.number,
                              self.tokens[token_index].column)
        return SourceSpan(self.filename, self.number, 1)

    def fail(self, reason: str, token_index: int = 0) -> ParseError:
        return ParseError(self.span(token_index), reason)

    @property
    def words(self) -> list[str]:
        return [t.text for t in self.tokens]


def _lines(text: str, filename: str) -> list[_Line]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = _Line(filename, i, raw)
        if line.tokens:
            out.append(line)
    return out


def _require_user_id(line: _Line, token_index: int, what: str) -> str:
    word = line.tokens[token_index].text
    if not is_user_id(word):
        if "." in word:
            raise line.fail(f"reserved character '.' in {what} {word!r}", token_index)
        raise line.fail(f"malformed {what} {word!r}", token_index)
    return word


def parse_text(text: str, filename: str = "<input>",
               context: Mapping[str, LogicalDomain] | None = None):
    """Parse one source file; the first header keyword selects the format.

    Returns a LogicalDomain, Category, FnMap, SizeScript or
    SkeletonWitness. Map files need ``context`` to resolve the domains
    they name.
    """
    lines = _lines(text, filename)
    if not lines:
        raise ParseError(SourceSpan(filename, 1, 1), "empty input")
    head = lines[0].words[0]
    if head == "domain":
        return _parse_domain(lines)
    if head == "category":
        return _parse_category(lines)
    if head == "map":
        return _parse_map(lines, context or {})
    if head == "witness":
        return _parse_witness(lines)
    if head in ("let", "inject", "size"):
        return _parse_size_script(lines)
    raise lines[0].fail(f"unknown header keyword {head!r}")


def parse_path(path: str | Path,
               context: Mapping[str, LogicalDomain] | None = None):
    p = Path(path)
    return parse_text(p.read_text(encoding="utf-8"), filename=str(p),
                      context=context)


def _parse_domain(lines: list[_Line]) -> LogicalDomain:
    if len(lines[0].words) != 2:
        raise lines[0].fail("expected: domain <name>")
    name = _require_user_id(lines[0], 1, "domain name")
    elements: list[str] = []
    declared: set[str] = set()
    relations: list[tuple[str, str]] = []
    for line in lines[1:]:
        words = line.words
        if words[0] == "domain":
            raise line.fail("duplicate 'domain' header")
        if words[0] == "elements:":
            if len(words) < 2:
                raise line.fail("expected: elements: <id> ...")
            for i in range(1, len(words)):
                e = _require_user_id(line, i, "element id")
                if e in declared:
                    raise line.fail(f"duplicate element {e!r}", i)
                declared.add(e)
                elements.append(e)
        elif words[0] == "relate":
            if len(words) != 3:
                raise line.fail("expected: relate <id> <id>")
            a = _require_user_id(line, 1, "element id")
            b = _require_user_id(line, 2, "element id")
            if a not in declared:
                raise line.fail(f"unknown element {a!r}", 1)
            if b not in declared:
                raise line.fail(f"unknown element {b!r}", 2)
            relations.append((a, b))
        else:
            raise line.fail(f"unknown directive {words[0]!r}")
    carrier = FiniteCollection(elements)
    pairing = EqualityPairing.from_relation_pairs(carrier, relations)
    return make_domain(carrier, pairing, name=name)


def _parse_category(lines: list[_Line]) -> Category:
    if len(lines[0].words) != 2:
        raise lines[0].fail("expected: category <name>")
    name = _require_user_id(lines[0], 1, "category name")
    objects: list[str] = []
    object_set: set[str] = set()
    morphisms: list[Morphism] = []
    morph_names: set[str] = set()
    identities: dict[str, str] = {}
    compose_lines: list[tuple[_Line, str, str, str]] = []
    for line in lines[1:]:
        words = line.words
        if words[0] == "category":
            raise line.fail("duplicate 'category' header")
        if words[0] == "objects:":
            if len(words) < 2:
                raise line.fail("expected: objects: <id> ...")
            for i in range(1, len(words)):
                o = _require_user_id(line, i, "object id")
                if o in object_set:
                    raise line.fail(f"duplicate object {o!r}", i)
                object_set.add(o)
                objects.append(o)
        elif words[0] == "morph":
            # morph <id> : <obj> -> <obj>
            if len(words) != 6 or words[2] != ":" or words[4] != "->":
                raise line.fail("expected: morph <id> : <obj> -> <obj>")
            m = _require_user_id(line, 1, "morphism id")
            dom = _require_user_id(line, 3, "object id")
            cod = _require_user_id(line, 5, "object id")
            if m in morph_names:
                raise line.fail(f"duplicate morphism {m!r}", 1)
            if dom not in object_set:
                raise line.fail(f"unknown object {dom!r}", 3)
            if cod not in object_set:
                raise line.fail(f"unknown object {cod!r}", 5)
            morph_names.add(m)
            morphisms.append(Morphism(m, dom, cod))
        elif words[0] == "id":
            # id <obj> = <morphId>
            if len(words) != 4 or words[2] != "=":
                raise line.fail("expected: id <obj> = <morphId>")
            obj = _require_user_id(line, 1, "object id")
            m = _require_user_id(line, 3, "morphism id")
            if obj not in object_set:
                raise line.fail(f"unknown object {obj!r}", 1)
            if m not in morph_names:
                raise line.fail(f"unknown morphism {m!r}", 3)
            if obj in identities:
                raise line.fail(f"duplicate identity for {obj!r}", 1)
            identities[obj] = m
        elif words[0] == "compose":
            # compose <f> * <g> = <h>  (checked after all declarations so
            # it may reference identities that will be auto-generated)
            if len(words) != 6 or words[2] != "*" or words[4] != "=":
                raise line.fail("expected: compose <f> * <g> = <h>")
            f = _require_user_id(line, 1, "morphism id")
            g = _require_user_id(line, 3, "morphism id")
            h = _require_user_id(line, 5, "morphism id")
            compose_lines.append((line, f, g, h))
        else:
            raise line.fail(f"unknown directive {words[0]!r}")

    known = set(morph_names)
    known.update(f"id_{obj}" for obj in objects if obj not in identities)
    composition: dict[tuple[str, str], str] = {}
    for line, f, g, h in compose_lines:
        for idx, mid in ((1, f), (3, g), (5, h)):
            if mid not in known:
                raise line.fail(f"unknown morphism {mid!r}", idx)
        if (f, g) in composition:
            raise line.fail(f"duplicate composite for ({f!r}, {g!r})", 1)
        composition[(f, g)] = h
    try:
        return Category.build(name, objects, morphisms, identities, composition)
    except FincatError as exc:
        raise ParseError(lines[0].span(), str(exc)) from exc


def _parse_map(lines: list[_Line], context: Mapping[str, LogicalDomain]) -> FnMap:
    words = lines[0].words
    # map <name> : <domainA> -> <domainB>
    if len(words) != 6 or words[2] != ":" or words[4] != "->":
        raise lines[0].fail("expected: map <name> : <domain> -> <domain>")
    name = _require_user_id(lines[0], 1, "map name")
    src_name = _require_user_id(lines[0], 3, "domain name")
    dst_name = _require_user_id(lines[0], 5, "domain name")
    if src_name not in context:
        raise lines[0].fail(f"unknown domain {src_name!r}", 3)
    if dst_name not in context:
        raise lines[0].fail(f"unknown domain {dst_name!r}", 5)
    source, target = context[src_name], context[dst_name]
    assignment: dict[str, str] = {}
    for line in lines[1:]:
        words = line.words
        if words[0] == "map":
            raise line.fail("duplicate 'map' header")
        if words[0] != "send" or len(words) != 4 or words[2] != "->":
            raise line.fail("expected: send <id> -> <id>")
        a = _require_user_id(line, 1, "element id")
        b = _require_user_id(line, 3, "element id")
        if a not in source.carrier:
            raise line.fail(f"unknown element {a!r}", 1)
        if a not in source.rep_collection:
            raise line.fail(f"{a!r} is not a canonical representative", 1)
        if b not in target.carrier:
            raise line.fail(f"unknown element {b!r}", 3)
        if a in assignment:
            raise line.fail(f"duplicate assignment for {a!r}", 1)
        assignment[a] = b
    for rep in source.representatives:
        if rep not in assignment:
            raise lines[0].fail(f"map is missing an assignment for {rep!r}")
    return FnMap(source, target, assignment, name=name)


def _parse_witness(lines: list[_Line]) -> SkeletonWitness:
    if len(lines[0].words) != 2:
        raise lines[0].fail("expected: witness <name>")
    name = _require_user_id(lines[0], 1, "witness name")
    section: list[tuple[str, str]] = []
    r_objects: list[tuple[str, str]] = []
    r_morphisms: list[tuple[str, str]] = []
    components: list[tuple[str, str]] = []
    shapes = {"s": ("->", section), "q": ("->", r_objects),
              "qmorph": ("->", r_morphisms), "theta2": ("=", components)}
    for line in lines[1:]:
        words = line.words
        if words[0] not in shapes:
            raise line.fail(f"unknown directive {words[0]!r}")
        separator, bucket = shapes[words[0]]
        if len(words) != 4 or words[2] != separator:
            raise line.fail(
                f"expected: {words[0]} <id> {separator} <id>")
        bucket.append((words[1], words[3]))
    return SkeletonWitness(name, tuple(section), tuple(r_objects),
                           tuple(r_morphisms), tuple(components))


_SIZE_FORMS = {"product", "union", "fnspace", "powerset", "subdomain", "quotient"}


class _ExprScanner:
    """Character-level scanner for size expressions on one line."""

    def __init__(self, line: _Line, text: str, offset: int):
        self.line = line
        self.text = text
        self.pos = 0
        self.offset = offset  # column of text[0] in the raw line

    def fail(self, reason: str) -> ParseError:
        span = SourceSpan(self.line.filename, self.line.number,
                          self.offset + self.pos)
        return ParseError(span, reason)

    def skip_spaces(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_spaces()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.fail(f"expected {ch!r}")
        self.pos += 1

    def ident(self) -> str:
        self.skip_spaces()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            raise self.fail("expected a name")
        return self.text[start:self.pos]

    def done(self) -> bool:
        self.skip_spaces()
        return self.pos >= len(self.text)


def _parse_size_expr(scanner: _ExprScanner, declared: set[str],
                     top_level: bool) -> sizecalc.SizeNode:
    word = scanner.ident()
    if word in _SIZE_FORMS:
        scanner.expect("(")
        if word in ("product", "fnspace", "union"):
            first = _parse_size_expr(scanner, declared, False)
            scanner.expect(";" if word == "union" else ",")
            second = _parse_size_expr(scanner, declared, False)
            scanner.expect(")")
            if word == "product":
                return sizecalc.Product(first, second)
            if word == "union":
                return sizecalc.DisjointUnionOf(first, second)
            return sizecalc.FnSpace(first, second)
        child = _parse_size_expr(scanner, declared, False)
        scanner.expect(")")
        if word == "powerset":
            return sizecalc.PowersetOf(child)
        if word == "quotient":
            return sizecalc.QuotientOf(child)
        evidence = None
        if top_level and not scanner.done():
            evidence = scanner.ident()
            if evidence not in ("bounded", "cofinal"):
                raise scanner.fail(
                    f"unknown evidence {evidence!r} (expected bounded or cofinal)")
        return sizecalc.SubdomainOf(child, evidence)
    if word not in declared:
        raise scanner.fail(f"unknown name {word!r}")
    return sizecalc.Ref(word)


def _parse_size_script(lines: list[_Line]) -> sizecalc.SizeScript:
    statements: list[sizecalc.Statement] = []
    declared: set[str] = set()
    leaves: set[str] = set()
    for line in lines:
        words = line.words
        if words[0] == "let":
            if len(words) < 4 or words[2] != "=":
                raise line.fail("expected: let <name> = <expression>")
            name = _require_user_id(line, 1, "name")
            if name in declared:
                raise line.fail(f"duplicate declaration of {name!r}", 1)
            body_token = line.tokens[3]
            if len(words) == 4 and words[3] in ("set", "W", "unknown"):
                tag = {"set": sizecalc.SizeTag.SET, "W": sizecalc.SizeTag.W,
                       "unknown": sizecalc.SizeTag.UNKNOWN}[words[3]]
                statements.append(sizecalc.LetTag(name, tag))
                leaves.add(name)
            else:
                body = " ".join(words[3:])
                scanner = _ExprScanner(line, body, body_token.column)
                node = _parse_size_expr(scanner, declared, True)
                if not scanner.done():
                    raise scanner.fail("trailing text after expression")
                statements.append(sizecalc.LetExpr(name, node))
            declared.add(name)
        elif words[0] == "inject":
            if len(words) != 4 or words[2] != "->":
                raise line.fail("expected: inject <name> -> <name>")
            a = _require_user_id(line, 1, "name")
            b = _require_user_id(line, 3, "name")
            for idx, n in ((1, a), (3, b)):
                if n not in declared:
                    raise line.fail(f"unknown name {n!r}", idx)
                if n not in leaves:
                    raise line.fail(
                        f"injection endpoint {n!r} must be a declared leaf", idx)
            statements.append(sizecalc.Injection(a, b))
        elif words[0] == "size":
            if len(words) != 2:
                raise line.fail("expected: size <name>")
            name = _require_user_id(line, 1, "name")
            if name not in declared:
                raise line.fail(f"unknown name {name!r}", 1)
            statements.append(sizecalc.Query(name))
        else:
            raise line.fail(f"unknown directive {words[0]!r}")
    return sizecalc.SizeScript(tuple(statements))
